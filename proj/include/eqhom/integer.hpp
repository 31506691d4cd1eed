#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace eqhom {

/// Exact integer used for every matrix entry and invariant factor.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/**
 * Element of the field with two elements.
 *
 * Kept as a distinct scalar so that chain complexes with mod-2 coefficients
 * run through the same normal-form code as the integral ones without paying
 * for arbitrary precision.
 */
class Mod2 {
 public:
  constexpr Mod2() = default;
  constexpr Mod2(int value) : bit_(static_cast<std::uint8_t>(value & 1)) {}
  explicit Mod2(const Integer& value)
      : bit_(boost::multiprecision::bit_test(boost::multiprecision::abs(value), 0) ? 1 : 0) {}

  constexpr bool is_zero() const { return bit_ == 0; }
  constexpr int value() const { return bit_; }

  constexpr Mod2& operator+=(Mod2 other) {
    bit_ ^= other.bit_;
    return *this;
  }
  constexpr Mod2& operator-=(Mod2 other) { return *this += other; }
  constexpr Mod2& operator*=(Mod2 other) {
    bit_ &= other.bit_;
    return *this;
  }
  friend constexpr Mod2 operator+(Mod2 a, Mod2 b) { return a += b; }
  friend constexpr Mod2 operator-(Mod2 a, Mod2 b) { return a -= b; }
  friend constexpr Mod2 operator*(Mod2 a, Mod2 b) { return a *= b; }
  friend constexpr Mod2 operator-(Mod2 a) { return a; }
  friend constexpr bool operator==(Mod2 a, Mod2 b) = default;

  friend std::ostream& operator<<(std::ostream& os, Mod2 x) { return os << int(x.bit_); }

 private:
  std::uint8_t bit_ = 0;
};

/**
 * Euclidean-ring operations needed by the Smith normal form.
 *
 * `quotient(a, b)` must return q with |a - q*b| < |b| (or a - q*b == 0).
 */
template <class R>
struct RingTraits;

template <>
struct RingTraits<Integer> {
  static bool is_zero(const Integer& a) { return a.is_zero(); }
  static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
  static bool is_negative(const Integer& a) { return a.sign() < 0; }
  static bool smaller_magnitude(const Integer& a, const Integer& b) {
    return boost::multiprecision::abs(a) < boost::multiprecision::abs(b);
  }
  static Integer quotient(const Integer& a, const Integer& b) { return a / b; }
  static bool divides(const Integer& d, const Integer& a) { return (a % d).is_zero(); }
  static Integer to_integer(const Integer& a) { return a; }
  static Integer from_integer(const Integer& a) { return a; }
};

template <>
struct RingTraits<Mod2> {
  static bool is_zero(Mod2 a) { return a.is_zero(); }
  static bool is_unit(Mod2 a) { return !a.is_zero(); }
  static bool is_negative(Mod2) { return false; }
  static bool smaller_magnitude(Mod2, Mod2) { return false; }
  static Mod2 quotient(Mod2 a, Mod2) { return a; }
  static bool divides(Mod2, Mod2) { return true; }
  static Integer to_integer(Mod2 a) { return Integer(a.value()); }
  static Mod2 from_integer(const Integer& a) { return Mod2(a); }
};

/// Nonnegative residue of `a` modulo `m` (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r.sign() < 0) r += m;
  return r;
}

/// True when `a` fits into a signed 64-bit value.
inline bool fits_int64(const Integer& a) {
  return a >= Integer(std::numeric_limits<std::int64_t>::min()) &&
         a <= Integer(std::numeric_limits<std::int64_t>::max());
}

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace eqhom

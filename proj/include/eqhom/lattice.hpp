#pragma once

#include "eqhom/abelian_group.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eqhom {

/**
 * Submodule of R^n with a basis and an exact coordinate map.
 *
 * A vector x lies in the lattice iff `guard * x == 0` and every entry of
 * `coord * x` is divisible by the matching divisor; the quotients are then
 * the coordinates of x in `basis`.
 */
template <class R>
class Lattice {
 public:
  Lattice() = default;

  /// {x : A x = 0}
  static Lattice kernel_of(const Matrix<R>& a) {
    auto snf = smith_normal_form(a, {false, true});
    const std::size_t n = a.cols(), r = snf.rank;
    Lattice l;
    l.ambient_ = n;
    l.basis_ = snf.V.block(0, r, n, n - r);
    l.coord_ = snf.V_inverse.block(r, 0, n - r, n);
    l.guard_ = snf.V_inverse.block(0, 0, r, n);
    l.divisors_.assign(n - r, R(1));
    return l;
  }

  /// Submodule generated by the columns of `generators` (ambient dimension = rows).
  static Lattice span_of(const Matrix<R>& generators) {
    auto snf = smith_normal_form(generators, {true, false});
    const std::size_t m = generators.rows(), r = snf.rank;
    Lattice l;
    l.ambient_ = m;
    l.basis_ = Matrix<R>(m, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < m; ++k) l.basis_(k, i) = snf.U_inverse(k, i) * snf.D(i, i);
    l.coord_ = snf.U.block(0, 0, r, m);
    l.guard_ = snf.U.block(r, 0, m - r, m);
    l.divisors_ = snf.divisors();
    return l;
  }

  static Lattice whole(std::size_t n) { return span_of(Matrix<R>::identity(n)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const Matrix<R>& basis() const { return basis_; }

  std::optional<Vector<R>> coordinates(const Vector<R>& x) const {
    if (x.size() != ambient_) throw std::invalid_argument("Lattice::coordinates: dimension mismatch");
    if (!is_zero_vector(guard_.apply(x))) return std::nullopt;
    Vector<R> y = coord_.apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!RingTraits<R>::divides(divisors_[i], y[i])) return std::nullopt;
      y[i] = RingTraits<R>::quotient(y[i], divisors_[i]);
    }
    return y;
  }

  bool contains(const Vector<R>& x) const { return coordinates(x).has_value(); }

  /// other ⊆ this
  bool contains(const Lattice& other) const {
    for (std::size_t j = 0; j < other.rank(); ++j)
      if (!contains(other.basis_.column(j))) return false;
    return true;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.rank() == b.rank() && a.contains(b) && b.contains(a);
  }

 private:
  std::size_t ambient_ = 0;
  Matrix<R> basis_;
  Matrix<R> coord_;
  Matrix<R> guard_;
  Vector<R> divisors_;
};

/**
 * Quotient Z / B of a lattice Z by a sublattice B given by generators.
 *
 * This is the workhorse behind every homology group: Z = cycles,
 * B = boundaries. The quotient is diagonalized once; afterwards any element
 * of Z can be converted into normalized coordinates of `group()`.
 */
template <class R>
class Subquotient {
 public:
  Subquotient() = default;

  Subquotient(Lattice<R> cycles, Matrix<R> boundary_generators)
      : cycles_(std::move(cycles)), boundaries_(std::move(boundary_generators)) {
    const std::size_t z = cycles_.rank();
    if (boundaries_.rows() != cycles_.ambient_dim())
      throw std::invalid_argument("Subquotient: boundary generators live in a different ambient space");
    Matrix<R> rel(z, boundaries_.cols());
    for (std::size_t j = 0; j < boundaries_.cols(); ++j) {
      auto c = cycles_.coordinates(boundaries_.column(j));
      if (!c) throw std::invalid_argument("Subquotient: boundary generator is not contained in the cycle lattice");
      for (std::size_t i = 0; i < z; ++i) rel(i, j) = (*c)[i];
    }
    auto snf = smith_normal_form(std::move(rel), {true, false});
    P_ = std::move(snf.U);
    std::vector<Integer> torsion;
    std::vector<std::size_t> free_rows;
    for (std::size_t i = 0; i < z; ++i) {
      if (i < snf.rank) {
        if (RingTraits<R>::is_unit(snf.D(i, i))) continue;
        torsion.push_back(RingTraits<R>::to_integer(snf.D(i, i)));
        rows_.push_back(i);
      } else if constexpr (std::is_same_v<R, Mod2>) {
        torsion.push_back(2);
        rows_.push_back(i);
      } else {
        free_rows.push_back(i);
      }
    }
    rows_.insert(rows_.end(), free_rows.begin(), free_rows.end());
    group_ = FGAbelianGroup(free_rows.size(), std::move(torsion));

    Matrix<R> basis = cycles_.basis() * snf.U_inverse;
    std::vector<ChainVector> lifts;
    lifts.reserve(rows_.size());
    for (std::size_t r : rows_) lifts.push_back(convert<Integer>(basis.column(r)));
    generators_ = std::move(lifts);
  }

  const FGAbelianGroup& group() const { return group_; }
  std::size_t ambient_dim() const { return cycles_.ambient_dim(); }
  const Lattice<R>& cycles() const { return cycles_; }
  const Matrix<R>& boundary_generators() const { return boundaries_; }

  /// Ambient lift of the i-th coordinate generator.
  const ChainVector& generator(std::size_t i) const { return generators_.at(i); }
  const std::vector<ChainVector>& generators() const { return generators_; }

  /// Normalized coordinates, or nullopt when x is not in the cycle lattice.
  std::optional<std::vector<Integer>> coordinates(const Vector<R>& x) const {
    auto c = cycles_.coordinates(x);
    if (!c) return std::nullopt;
    Vector<R> y = P_.apply(*c);
    std::vector<Integer> out(rows_.size());
    for (std::size_t t = 0; t < rows_.size(); ++t) out[t] = RingTraits<R>::to_integer(y[rows_[t]]);
    return group_.normalize(std::move(out));
  }

  bool is_boundary(const Vector<R>& x) const {
    auto c = coordinates(x);
    if (!c) return false;
    return is_zero_vector(*c);
  }

 private:
  Lattice<R> cycles_;
  Matrix<R> boundaries_;
  Matrix<R> P_;
  std::vector<std::size_t> rows_;
  FGAbelianGroup group_;
  std::vector<ChainVector> generators_;
};

/// Lattice spanned by the union of the columns of a and b.
template <class R>
Lattice<R> lattice_sum(const Matrix<R>& a, const Matrix<R>& b) {
  return Lattice<R>::span_of(hstack(a, b));
}

}  // namespace eqhom

#pragma once

#include "eqhom/abelian_group.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace eqhom::enriques {

/// A closed surface: sphere or torus when orientable, N_g (g cross-caps) otherwise.
struct SurfaceComponent {
  bool orientable = true;
  int genus = 0;

  long euler_characteristic() const { return orientable ? 2 - 2L * genus : 2L - genus; }
  /// Dimension of H_1 with Z/2 coefficients.
  int h1_dimension() const { return orientable ? 2 * genus : genus; }

  static SurfaceComponent sphere() { return {true, 0}; }
  static SurfaceComponent torus() { return {true, 1}; }
  static SurfaceComponent nonorientable(int g) { return {false, g}; }

  /// "S", "T", "N3", ...
  std::string to_string() const {
    if (orientable) return genus == 0 ? "S" : (genus == 1 ? "T" : "O" + std::to_string(genus));
    return "N" + std::to_string(genus);
  }

  /// S < T < N1 < N2 < ...
  friend bool operator<(const SurfaceComponent& a, const SurfaceComponent& b) {
    return std::make_tuple(!a.orientable, a.genus) < std::make_tuple(!b.orientable, b.genus);
  }
  friend bool operator==(const SurfaceComponent& a, const SurfaceComponent& b) {
    return a.orientable == b.orientable && a.genus == b.genus;
  }
};

inline constexpr int kMaxNonorientableGenus = 11;

/// The real part split into the two halves; both empty means no real points.
struct EnriquesType {
  std::vector<SurfaceComponent> half1, half2;

  std::size_t component_count() const { return half1.size() + half2.size(); }
  bool empty() const { return half1.empty() && half2.empty(); }
  bool orientable() const {
    for (const auto* h : {&half1, &half2})
      for (const auto& c : *h)
        if (!c.orientable) return false;
    return true;
  }
  bool both_halves_nonempty() const { return !half1.empty() && !half2.empty(); }

  /// Sorted halves, the half with more components (then the smaller list) first.
  EnriquesType canonical() const {
    EnriquesType t = *this;
    std::sort(t.half1.begin(), t.half1.end());
    std::sort(t.half2.begin(), t.half2.end());
    if (t.half1.size() < t.half2.size() || (t.half1.size() == t.half2.size() && t.half2 < t.half1))
      std::swap(t.half1, t.half2);
    return t;
  }

  EnriquesType swapped() const { return {half2, half1}; }

  /// "S,N3|T"; an empty half is written "-".
  std::string to_string() const {
    auto half = [](const std::vector<SurfaceComponent>& h) {
      if (h.empty()) return std::string("-");
      std::string s;
      for (const auto& c : h) s += (s.empty() ? "" : ",") + c.to_string();
      return s;
    };
    return half(half1) + "|" + half(half2);
  }
  std::string canonical_string() const { return canonical().to_string(); }

  friend bool operator==(const EnriquesType& a, const EnriquesType& b) {
    return a.half1 == b.half1 && a.half2 == b.half2;
  }
};

struct TypeViolation {
  std::string half;  ///< "half1" or "half2"
  std::size_t index = 0;
  std::string message;
};

/// First component violating the allowed shapes, if any.
inline std::optional<TypeViolation> validate_type(const EnriquesType& t) {
  for (const auto& [name, h] : {std::pair{"half1", &t.half1}, std::pair{"half2", &t.half2}})
    for (std::size_t i = 0; i < h->size(); ++i) {
      const auto& c = (*h)[i];
      if (c.orientable && (c.genus < 0 || c.genus > 1))
        return TypeViolation{name, i, "orientable component of genus " + std::to_string(c.genus) + " (must be a sphere or a torus)"};
      if (!c.orientable && (c.genus < 1 || c.genus > kMaxNonorientableGenus))
        return TypeViolation{name, i,
                             "nonorientable component of genus " + std::to_string(c.genus) + " (must be 1.." +
                                 std::to_string(kMaxNonorientableGenus) + ")"};
    }
  return std::nullopt;
}

struct H1Dims {
  int dim_h1 = 0;
  int dim_h1_alg = 0;
};

/// dim H_1(Y(R), Z/2) and the dimension of its algebraic part.
inline H1Dims h1_dims(const EnriquesType& t) {
  H1Dims d;
  for (const auto* h : {&t.half1, &t.half2})
    for (const auto& c : *h) d.dim_h1 += c.h1_dimension();
  d.dim_h1_alg = t.orientable() ? d.dim_h1 : d.dim_h1 - 1;
  return d;
}

struct GMStatus {
  bool is_GM = false;
  bool is_ZGM = false;
  bool empty_real_part = false;  ///< no real points: answer derived from e_1 = 0, not from the halves rule
  std::string rule;
};

inline bool has_odd_euler_component(const EnriquesType& t) {
  for (const auto* h : {&t.half1, &t.half2})
    for (const auto& c : *h)
      if (!c.orientable && c.genus % 2 == 1) return true;
  return false;
}

inline GMStatus gm_status(const EnriquesType& t) {
  GMStatus s;
  if (t.empty()) {
    s.empty_real_part = true;
    s.rule = "empty real part: e_1 = 0";
    return s;
  }
  if (t.both_halves_nonempty()) {
    s.is_GM = true;
    s.is_ZGM = !t.orientable();
    s.rule = "both halves nonempty: GM; Z-GM iff nonorientable";
  } else {
    s.is_GM = !t.orientable();
    s.is_ZGM = has_odd_euler_component(t);
    s.rule = "one half empty: GM iff nonorientable; Z-GM iff a component has odd Euler characteristic";
  }
  return s;
}

struct BrauerResult {
  FGAbelianGroup group;
  std::string rule;
};

/**
 * (Z/2)^{2s-1} if nonorientable; (Z/2)^{2s-2} + Z/4 if orientable with both
 * halves nonempty; (Z/2)^{2s} if orientable with one half empty; Z/2 if empty.
 */
inline BrauerResult brauer_group(const EnriquesType& t) {
  const std::size_t s = t.component_count();
  auto cyclic = [](std::size_t twos, bool four) {
    std::vector<Integer> orders(twos, Integer(2));
    if (four) orders.push_back(4);
    return FGAbelianGroup::from_cyclic_orders(orders);
  };
  if (t.empty()) return {cyclic(1, false), "empty real part"};
  if (!t.orientable()) return {cyclic(2 * s - 1, false), "nonorientable"};
  if (t.both_halves_nonempty()) return {cyclic(2 * s - 2, true), "orientable, both halves nonempty"};
  return {cyclic(2 * s, false), "orientable, one half empty"};
}

struct ClassifierOutput {
  EnriquesType type;
  H1Dims h1;
  GMStatus gm;
  BrauerResult brauer;
};

/// Throws std::invalid_argument on an invalid type.
inline ClassifierOutput classify(const EnriquesType& t) {
  if (auto v = validate_type(t)) throw std::invalid_argument(v->half + "[" + std::to_string(v->index) + "]: " + v->message);
  return {t, h1_dims(t), gm_status(t), brauer_group(t)};
}

inline std::vector<SurfaceComponent> all_components() {
  std::vector<SurfaceComponent> out = {SurfaceComponent::sphere(), SurfaceComponent::torus()};
  for (int g = 1; g <= kMaxNonorientableGenus; ++g) out.push_back(SurfaceComponent::nonorientable(g));
  return out;
}

inline constexpr std::size_t kMaxEnumeratedComponents = 4;

namespace detail {

inline void multisets(const std::vector<SurfaceComponent>& kinds, std::size_t size, std::size_t from,
                      std::vector<SurfaceComponent>& cur, std::vector<std::vector<SurfaceComponent>>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < kinds.size(); ++i) {
    cur.push_back(kinds[i]);
    multisets(kinds, size, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/**
 * Every valid type with at most max_components components, one per class
 * under reordering inside a half and exchanging the halves. Ordered by
 * component count, then by the canonical halves.
 */
inline std::vector<ClassifierOutput> enumerate_types(std::size_t max_components) {
  if (max_components > kMaxEnumeratedComponents)
    throw std::invalid_argument("enumerate_types: at most " + std::to_string(kMaxEnumeratedComponents) + " components");
  const auto kinds = all_components();
  std::vector<std::vector<std::vector<SurfaceComponent>>> by_size(max_components + 1);
  for (std::size_t n = 0; n <= max_components; ++n) {
    std::vector<SurfaceComponent> cur;
    detail::multisets(kinds, n, 0, cur, by_size[n]);
  }
  std::vector<ClassifierOutput> out;
  for (std::size_t s = 0; s <= max_components; ++s) {
    std::vector<EnriquesType> level;
    std::set<std::string> seen;
    for (std::size_t b = 0; 2 * b <= s; ++b)
      for (const auto& h1 : by_size[s - b])
        for (const auto& h2 : by_size[b]) {
          EnriquesType t = EnriquesType{h1, h2}.canonical();
          if (seen.insert(t.to_string()).second) level.push_back(t);
        }
    std::sort(level.begin(), level.end(), [](const EnriquesType& x, const EnriquesType& y) {
      return std::tie(x.half1, x.half2) < std::tie(y.half1, y.half2);
    });
    for (const auto& t : level) out.push_back(classify(t));
  }
  return out;
}

}  // namespace eqhom::enriques

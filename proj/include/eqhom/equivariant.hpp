#pragma once

#include "eqhom/total_complex.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace eqhom {

/**
 * A validated G-complex with its six total complexes (three coefficient
 * systems, homology and cohomology side) and a cache of the groups computed
 * so far. The cache is guarded by a mutex, so a shared instance may be
 * queried from several threads.
 */
class EqSpace : public std::enable_shared_from_this<EqSpace> {
  struct Token {};

 public:
  EqSpace(Token, GComplex x) : x_(std::move(x)) {
    for (std::size_t i = 0; i < 3; ++i) {
      total_[i] = TotalComplex(x_, coeff_of(i), Variance::homology);
      cototal_[i] = TotalComplex(total_[i].chains(), Variance::cohomology);
    }
  }

  /// Throws std::invalid_argument when X fails validation.
  static std::shared_ptr<const EqSpace> create(GComplex x) {
    auto report = validate(x);
    if (!report.ok) throw std::invalid_argument("invalid G-complex: " + report.message);
    return std::make_shared<const EqSpace>(Token{}, std::move(x));
  }

  const GComplex& complex() const { return x_; }
  int dimension() const { return x_.dimension(); }

  const TotalComplex& total(const CoeffSystem& a, Variance v = Variance::homology) const {
    return v == Variance::homology ? total_[index_of(a)] : cototal_[index_of(a)];
  }
  const GChainComplex& chains(const CoeffSystem& a) const { return total_[index_of(a)].chains(); }

  /// H_p(X; G, A(k))
  const HomologyGroup& homology(const CoeffSystem& a, int p) const {
    return cached(Kind::equivariant_homology, a, p, [&] { return total(a).homology(p); });
  }
  /// H^n(X; G, A(k))
  const HomologyGroup& cohomology(const CoeffSystem& a, int n) const {
    return cached(Kind::equivariant_cohomology, a, n, [&] { return total(a, Variance::cohomology).homology(n); });
  }
  /// H_q(X, A); the twist only changes the involution, not the group.
  const HomologyGroup& ordinary_homology(const CoeffSystem& a, int q) const {
    return cached(Kind::ordinary_homology, a, q, [&] {
      const auto& c = chains(a);
      return homology_at(c.d(q + 1), c.d(q), a.ring());
    });
  }
  /// H^q(X, A)
  const HomologyGroup& ordinary_cohomology(const CoeffSystem& a, int q) const {
    return cached(Kind::ordinary_cohomology, a, q, [&] {
      const auto& c = chains(a);
      return homology_at(c.d(q).transpose(), c.d(q + 1).transpose(), a.ring());
    });
  }

  /// σ_* on H_q(X, A(k)).
  GroupHom sigma_on_homology(const CoeffSystem& a, int q) const {
    const auto& h = ordinary_homology(a, q);
    return induced_hom(chains(a).s(q), h, h);
  }
  /// σ^* on H^q(X, A(k)).
  GroupHom sigma_on_cohomology(const CoeffSystem& a, int q) const {
    const auto& h = ordinary_cohomology(a, q);
    return induced_hom(chains(a).s(q).transpose(), h, h);
  }

  /// X^G as a space with trivial action, and its inclusion into X.
  std::shared_ptr<const EqSpace> fixed() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!fixed_) {
      inclusion_ = fixed_inclusion(x_);
      fixed_ = x_.has_trivial_action() ? shared_from_this() : create(inclusion_.source());
    }
    return fixed_;
  }
  const GMap& inclusion() const {
    fixed();
    return inclusion_;
  }

  bool fixed_set_empty() const { return fixed()->complex().is_empty(); }

  static std::size_t index_of(const CoeffSystem& a) { return a.is_z2() ? 0 : (a.twist() == 0 ? 1 : 2); }
  static CoeffSystem coeff_of(std::size_t i) {
    return i == 0 ? CoeffSystem::z2() : CoeffSystem::integral(static_cast<int>(i) - 1);
  }

 private:
  enum class Kind { equivariant_homology, equivariant_cohomology, ordinary_homology, ordinary_cohomology };

  template <class F>
  const HomologyGroup& cached(Kind kind, const CoeffSystem& a, int degree, F&& compute) const {
    auto key = std::make_tuple(static_cast<int>(kind), index_of(a), degree);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    HomologyGroup h = compute();
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(key, std::move(h)).first->second;
  }

  GComplex x_;
  std::array<TotalComplex, 3> total_, cototal_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, std::size_t, int>, HomologyGroup> cache_;
  mutable std::shared_ptr<const EqSpace> fixed_;
  mutable GMap inclusion_;
};

using EqSpacePtr = std::shared_ptr<const EqSpace>;

/// An element of H_p(X; G, A(k)) (or of H^p on the cohomology side), carried as a total cycle.
struct EqClass {
  EqSpacePtr space;
  CoeffSystem coeff;
  int degree = 0;
  Variance variance = Variance::homology;
  ChainVector chain;

  const HomologyGroup& group() const {
    return variance == Variance::homology ? space->homology(coeff, degree) : space->cohomology(coeff, degree);
  }
  std::vector<Integer> coordinates() const { return group().coordinates_or_throw(chain, "EqClass"); }
  bool is_zero() const { return group().is_boundary(chain); }
};

inline EqClass class_from_coordinates(const EqSpacePtr& space, const CoeffSystem& a, int degree,
                                      const std::vector<Integer>& coords, Variance v = Variance::homology) {
  const auto& h = v == Variance::homology ? space->homology(a, degree) : space->cohomology(a, degree);
  return EqClass{space, a, degree, v, h.chain_from_coordinates(coords)};
}

// ---------------------------------------------------------------------------
// Group cohomology of G = Z/2

/// A G-module: a finitely generated abelian group with an involution given on its coordinates.
struct GModule {
  FGAbelianGroup group;
  IntMatrix sigma;

  static GModule trivial(const FGAbelianGroup& g) { return {g, IntMatrix::identity(g.generator_count())}; }
  /// Z(k)
  static GModule integers(int twist) {
    return {FGAbelianGroup::free_abelian(1), IntMatrix::identity(1).scaled(twist % 2 == 0 ? 1 : -1)};
  }
  static GModule z2() { return trivial(FGAbelianGroup::elementary(1)); }
  /// M(1): the same group with σ replaced by -σ.
  GModule twisted() const { return {group, sigma.scaled(-1)}; }
};

namespace detail {

inline GroupHom module_map(const GModule& m, int sign) {
  IntMatrix id = IntMatrix::identity(m.group.generator_count());
  return GroupHom(m.group, m.group, sign > 0 ? id + m.sigma : id - m.sigma);
}

inline void check_module(const GModule& m) {
  GroupHom s(m.group, m.group, m.sigma);
  if (!(s.after(s) == GroupHom::identity(m.group)))
    throw std::invalid_argument("group_cohomology: the action does not square to the identity");
}

}  // namespace detail

/// Lattice of invariants ker(1 - σ) in the coordinates of M (contains the relations).
inline Lattice<Integer> invariant_lattice(const GModule& m) { return detail::module_map(m, -1).kernel_lattice(); }
/// Lattice of norms (1 + σ) M in the coordinates of M (contains the relations).
inline Lattice<Integer> norm_lattice(const GModule& m) { return detail::module_map(m, +1).image_lattice(); }

/**
 * H^p(G, M): invariants for p = 0, ker(1+σ)/im(1-σ) for odd p and
 * ker(1-σ)/im(1+σ) for even p >= 2.
 */
inline FGAbelianGroup group_cohomology(const GModule& m, int p) {
  if (p < 0) throw std::invalid_argument("group_cohomology: negative degree");
  detail::check_module(m);
  const auto rel = m.group.relations();
  if (p == 0) return Subquotient<Integer>(invariant_lattice(m), rel).group();
  GroupHom kernel_side = detail::module_map(m, p % 2 == 1 ? +1 : -1);
  GroupHom image_side = detail::module_map(m, p % 2 == 1 ? -1 : +1);
  return Subquotient<Integer>(kernel_side.kernel_lattice(), image_side.image_lattice().basis()).group();
}

/// H_q(X, A(k)) with its involution.
inline GModule homology_module(const EqSpace& x, const CoeffSystem& a, int q) {
  return {x.ordinary_homology(a, q).group(), x.sigma_on_homology(a, q).matrix()};
}
inline GModule cohomology_module(const EqSpace& x, const CoeffSystem& a, int q) {
  return {x.ordinary_cohomology(a, q).group(), x.sigma_on_cohomology(a, q).matrix()};
}

// ---------------------------------------------------------------------------
// Equivariant groups and the basic maps

inline const FGAbelianGroup& eq_homology(const EqSpace& x, const CoeffSystem& a, int p) {
  return x.homology(a, p).group();
}
inline const FGAbelianGroup& eq_cohomology(const EqSpace& x, const CoeffSystem& a, int n) {
  return x.cohomology(a, n).group();
}

/// e_p : H_p(X; G, A(k)) -> H_p(X, A(k)), the column-0 component of a total cycle.
inline GroupHom edge_morphism(const EqSpace& x, const CoeffSystem& a, int p) {
  const auto& src = x.homology(a, p);
  const auto& tgt = x.ordinary_homology(a, p);
  const auto& t = x.total(a);
  return hom_from_cycle_map(
      src, tgt, [&](const ChainVector& c) { return p < 0 ? ChainVector{} : t.column_part(c, p, 0); }, "edge_morphism");
}

/// e^n : H^n(X; G, A(k)) -> H^n(X, A(k)).
inline GroupHom cohomology_edge_morphism(const EqSpace& x, const CoeffSystem& a, int n) {
  const auto& src = x.cohomology(a, n);
  const auto& tgt = x.ordinary_cohomology(a, n);
  const auto& t = x.total(a, Variance::cohomology);
  return hom_from_cycle_map(
      src, tgt, [&](const ChainVector& c) { return n < 0 ? ChainVector{} : t.column_part(c, n, 0); },
      "cohomology_edge_morphism");
}

/// Whether im(f) is contained in, resp. equal to, the σ-invariants of the target module.
struct InvariantImage {
  bool inside = false;
  bool surjective = false;
};

inline InvariantImage compare_with_invariants(const GroupHom& f, const GModule& target) {
  auto inv = invariant_lattice(target);
  auto img = f.image_lattice();
  InvariantImage r;
  r.inside = inv.contains(img);
  r.surjective = r.inside && img.contains(inv);
  return r;
}

/// e_p is surjective onto H_p(X, A(k))^G. Throws if the image leaves the invariants.
inline bool edge_surjective(const EqSpace& x, const CoeffSystem& a, int p) {
  if (p < 0 || p > x.dimension()) return true;
  auto r = compare_with_invariants(edge_morphism(x, a, p), homology_module(x, a, p));
  if (!r.inside) throw std::logic_error("edge_morphism: image is not contained in the invariants");
  return r.surjective;
}

inline bool cohomology_edge_surjective(const EqSpace& x, const CoeffSystem& a, int n) {
  if (n < 0 || n > x.dimension()) return true;
  auto r = compare_with_invariants(cohomology_edge_morphism(x, a, n), cohomology_module(x, a, n));
  if (!r.inside) throw std::logic_error("cohomology_edge_morphism: image is not contained in the invariants");
  return r.surjective;
}

/// s_p : H_p(X; G, A(k)) -> H_{p-1}(X; G, A(k+1)), cap product with η (shift by `power` columns for η^power).
inline GroupHom s_map(const EqSpace& x, const CoeffSystem& a, int p, int power = 1) {
  const CoeffSystem b = a.shifted(power);
  const auto& src = x.homology(a, p);
  const auto& tgt = x.homology(b, p - power);
  const auto& ts = x.total(a);
  const auto& tt = x.total(b);
  return hom_from_cycle_map(
      src, tgt, [&](const ChainVector& c) { return shift_columns(ts, tt, p, c, power); }, "s_map");
}

/// Reduction H_p(X; G, A(k)) -> H_p(X; G, Z/2); the identity for A = Z/2.
inline GroupHom mod2_map(const EqSpace& x, const CoeffSystem& a, int p) {
  const CoeffSystem z2 = CoeffSystem::z2();
  return hom_from_cycle_map(
      x.homology(a, p), x.homology(z2, p), [](const ChainVector& c) { return reduce_mod2(c); }, "mod2_map");
}

// ---------------------------------------------------------------------------
// Long exact sequences

struct SequenceNode {
  std::string label;
  FGAbelianGroup group;
  bool checked = false;  ///< both neighbouring maps present
  bool exact = true;
};

/// nodes[i] --maps[i]--> nodes[i+1]
struct ExactSequenceReport {
  std::string name;
  std::vector<SequenceNode> nodes;
  std::vector<GroupHom> maps;
  std::vector<std::string> map_labels;

  bool exact() const {
    for (const auto& n : nodes)
      if (n.checked && !n.exact) return false;
    return true;
  }
  std::size_t checked_nodes() const {
    std::size_t c = 0;
    for (const auto& n : nodes) c += n.checked ? 1 : 0;
    return c;
  }
};

/// Raised when a node of a long exact sequence fails to be exact.
class ExactnessFailure : public std::logic_error {
 public:
  ExactnessFailure(const std::string& what, ExactSequenceReport report)
      : std::logic_error(what), report_(std::move(report)) {}
  const ExactSequenceReport& report() const { return report_; }

 private:
  ExactSequenceReport report_;
};

namespace detail {

class SequenceBuilder {
 public:
  explicit SequenceBuilder(std::string name) { report_.name = std::move(name); }

  void node(std::string label, const FGAbelianGroup& g) { report_.nodes.push_back({std::move(label), g, false, true}); }
  void map(std::string label, GroupHom f) {
    report_.maps.push_back(std::move(f));
    report_.map_labels.push_back(std::move(label));
  }

  ExactSequenceReport finish(bool throw_on_failure) {
    auto& nodes = report_.nodes;
    std::string first_failure;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
      nodes[i].checked = true;
      nodes[i].exact = is_exact_at(report_.maps[i - 1], report_.maps[i]);
      if (!nodes[i].exact && first_failure.empty()) first_failure = nodes[i].label;
    }
    if (throw_on_failure && !first_failure.empty())
      throw ExactnessFailure(report_.name + ": not exact at " + first_failure, report_);
    return std::move(report_);
  }

 private:
  ExactSequenceReport report_;
};

inline std::string eq_label(const char* h, int p, const CoeffSystem& a) {
  return std::string(h) + "_" + std::to_string(p) + "(X;G," + a.name() + ")";
}

}  // namespace detail

/**
 * Connecting map H_p(X, A) -> H_p(X; G, A(k-1)) of the sequence relating e
 * and s: a cycle c goes to (1 - σ_k) c placed in column 0.
 */
inline GroupHom edge_connecting_map(const EqSpace& x, const CoeffSystem& a, int p) {
  const CoeffSystem prev = a.shifted(-1);
  const auto& src = x.ordinary_homology(a, p);
  const auto& tgt = x.homology(prev, p);
  const auto& tt = x.total(prev);
  const auto& c = x.chains(a);
  return hom_from_cycle_map(
      src, tgt,
      [&](const ChainVector& z) {
        if (p < 0) return ChainVector(tt.rank(p));
        IntMatrix h = IntMatrix::identity(c.rank(p)) - c.s(p);
        ChainVector y = tt.embed_column(h.apply(z), p, 0);
        return a.is_z2() ? reduce_mod2(std::move(y)) : y;
      },
      "edge_connecting_map");
}

/**
 * ... -> H_p(X;G,A(k)) -e-> H_p(X,A) -> H_p(X;G,A(k-1)) -s-> H_{p-1}(X;G,A(k)) -> ...
 * for p from p_max down to p_min, padded by one node on each side so that
 * every node belonging to the range is checked.
 */
inline ExactSequenceReport les_edge(const EqSpace& x, const CoeffSystem& a, int p_min, int p_max,
                                    bool throw_on_failure = true) {
  const CoeffSystem prev = a.shifted(-1);
  detail::SequenceBuilder b("les_edge(" + a.name() + ")");
  b.node(detail::eq_label("H", p_max + 1, prev), eq_homology(x, prev, p_max + 1));
  b.map("s_" + std::to_string(p_max + 1), s_map(x, prev, p_max + 1));
  for (int p = p_max; p >= p_min; --p) {
    b.node(detail::eq_label("H", p, a), eq_homology(x, a, p));
    b.map("e_" + std::to_string(p), edge_morphism(x, a, p));
    b.node("H_" + std::to_string(p) + "(X," + a.name() + ")", x.ordinary_homology(a, p).group());
    b.map("c_" + std::to_string(p), edge_connecting_map(x, a, p));
    b.node(detail::eq_label("H", p, prev), eq_homology(x, prev, p));
    b.map("s_" + std::to_string(p), s_map(x, prev, p));
  }
  b.node(detail::eq_label("H", p_min - 1, a), eq_homology(x, a, p_min - 1));
  return b.finish(throw_on_failure);
}

/// Multiplication by 2 on H_p(X; G, Z(k)).
inline GroupHom times_two_map(const EqSpace& x, const CoeffSystem& a, int p) {
  const auto& h = x.homology(a, p);
  return hom_from_cycle_map(
      h, h,
      [](const ChainVector& c) {
        ChainVector y = c;
        for (auto& v : y) v *= 2;
        return y;
      },
      "times_two");
}

/// Bockstein H_p(X; G, Z/2) -> H_{p-1}(X; G, Z(k)): lift, apply D, divide by 2.
inline GroupHom bockstein_map(const EqSpace& x, int twist, int p) {
  const CoeffSystem a = CoeffSystem::integral(twist);
  const auto& t = x.total(a);
  IntMatrix d = t.differential(p);
  return hom_from_cycle_map(
      x.homology(CoeffSystem::z2(), p), x.homology(a, p - 1),
      [&](const ChainVector& c) {
        ChainVector y = d.apply(c);
        for (auto& v : y) {
          if (!(v % 2).is_zero()) throw std::logic_error("bockstein_map: boundary of a mod 2 cycle is not even");
          v /= 2;
        }
        return y;
      },
      "bockstein");
}

/// ... -> H_p(Z(k)) -x2-> H_p(Z(k)) -> H_p(Z/2) -δ-> H_{p-1}(Z(k)) -> ...
inline ExactSequenceReport les_coeff(const EqSpace& x, int twist, int p_min, int p_max, bool throw_on_failure = true) {
  const CoeffSystem a = CoeffSystem::integral(twist), z2 = CoeffSystem::z2();
  detail::SequenceBuilder b("les_coeff(" + a.name() + ")");
  b.node(detail::eq_label("H", p_max + 1, z2), eq_homology(x, z2, p_max + 1));
  b.map("delta_" + std::to_string(p_max + 1), bockstein_map(x, twist, p_max + 1));
  for (int p = p_max; p >= p_min; --p) {
    b.node(detail::eq_label("H", p, a), eq_homology(x, a, p));
    b.map("x2_" + std::to_string(p), times_two_map(x, a, p));
    b.node(detail::eq_label("H", p, a), eq_homology(x, a, p));
    b.map("mod2_" + std::to_string(p), mod2_map(x, a, p));
    b.node(detail::eq_label("H", p, z2), eq_homology(x, z2, p));
    b.map("delta_" + std::to_string(p), bockstein_map(x, twist, p));
  }
  b.node(detail::eq_label("H", p_min - 1, a), eq_homology(x, a, p_min - 1));
  return b.finish(throw_on_failure);
}

// ---------------------------------------------------------------------------
// Graded Z/2 (co)homology of the fixed set and the localization maps

/**
 * ⊕_q H_q(X^G, Z/2) (or ⊕_q H^q) as one elementary 2-group, with the
 * coordinate range of each degree.
 */
struct GradedTarget {
  std::vector<const HomologyGroup*> parts;  ///< index = degree q
  std::vector<std::size_t> offsets;         ///< offsets[q] .. offsets[q+1]
  FGAbelianGroup group;

  std::size_t dim(int q) const {
    if (q < 0 || static_cast<std::size_t>(q) >= parts.size()) return 0;
    return offsets[static_cast<std::size_t>(q) + 1] - offsets[static_cast<std::size_t>(q)];
  }
  int top_degree() const { return static_cast<int>(parts.size()) - 1; }

  /// Coordinate projection onto the degrees selected by `keep`.
  GroupHom projection(const std::function<bool(int)>& keep) const {
    std::vector<std::size_t> rows;
    for (int q = 0; q <= top_degree(); ++q)
      if (keep(q))
        for (std::size_t i = offsets[static_cast<std::size_t>(q)]; i < offsets[static_cast<std::size_t>(q) + 1]; ++i)
          rows.push_back(i);
    IntMatrix m(rows.size(), group.generator_count());
    for (std::size_t r = 0; r < rows.size(); ++r) m(r, rows[r]) = 1;
    return GroupHom(group, FGAbelianGroup::elementary(rows.size()), std::move(m));
  }
  GroupHom projection(int q) const { return projection([q](int d) { return d == q; }); }
  GroupHom even() const { return projection([](int d) { return d % 2 == 0; }); }
  GroupHom odd() const { return projection([](int d) { return d % 2 != 0; }); }
};

inline GradedTarget fixed_homology_z2(const EqSpace& x) {
  auto f = x.fixed();
  GradedTarget t;
  t.offsets.push_back(0);
  for (int q = 0; q <= f->dimension(); ++q) {
    t.parts.push_back(&f->ordinary_homology(CoeffSystem::z2(), q));
    t.offsets.push_back(t.offsets.back() + t.parts.back()->group().generator_count());
  }
  t.group = FGAbelianGroup::elementary(t.offsets.back());
  return t;
}

inline GradedTarget fixed_cohomology_z2(const EqSpace& x) {
  auto f = x.fixed();
  GradedTarget t;
  t.offsets.push_back(0);
  for (int q = 0; q <= f->dimension(); ++q) {
    t.parts.push_back(&f->ordinary_cohomology(CoeffSystem::z2(), q));
    t.offsets.push_back(t.offsets.back() + t.parts.back()->group().generator_count());
  }
  t.group = FGAbelianGroup::elementary(t.offsets.back());
  return t;
}

/// Element of ⊕_q H_q(X^G, Z/2), one coordinate vector per degree.
struct GradedClassVector {
  std::vector<std::vector<Integer>> by_degree;

  bool is_zero() const {
    for (const auto& v : by_degree)
      if (!is_zero_vector(v)) return false;
    return true;
  }
  friend bool operator==(const GradedClassVector& a, const GradedClassVector& b) { return a.by_degree == b.by_degree; }
};

inline GradedClassVector split_graded(const GradedTarget& t, const std::vector<Integer>& coords) {
  GradedClassVector v;
  for (int q = 0; q <= t.top_degree(); ++q)
    v.by_degree.emplace_back(coords.begin() + static_cast<std::ptrdiff_t>(t.offsets[static_cast<std::size_t>(q)]),
                             coords.begin() + static_cast<std::ptrdiff_t>(t.offsets[static_cast<std::size_t>(q) + 1]));
  return v;
}

namespace detail {

/// Homomorphism into a graded target given by the per-degree chains of an image.
inline GroupHom hom_to_graded(const HomologyGroup& src, const GradedTarget& tgt,
                              const std::function<std::vector<ChainVector>(const ChainVector&)>& parts, const char* what) {
  auto coords_of = [&](const ChainVector& c) {
    auto chains = parts(c);
    std::vector<Integer> out;
    for (int q = 0; q <= tgt.top_degree(); ++q) {
      const auto& h = *tgt.parts[static_cast<std::size_t>(q)];
      auto cq = h.coordinates_or_throw(chains[static_cast<std::size_t>(q)], what);
      out.insert(out.end(), cq.begin(), cq.end());
    }
    return out;
  };
  IntMatrix m(tgt.group.generator_count(), src.group().generator_count());
  for (std::size_t j = 0; j < src.group().generator_count(); ++j) {
    auto c = coords_of(src.generator(j));
    for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
  }
  for (const auto& b : src.boundary_generators())
    if (!is_zero_vector(tgt.group.normalize(coords_of(b))))
      throw std::logic_error(std::string(what) + ": a boundary is not mapped to zero");
  return GroupHom(src.group(), tgt.group, std::move(m));
}

}  // namespace detail

/// i_* : H_p(X^G; G, A) -> H_p(X; G, A).
inline GroupHom fixed_inclusion_map(const EqSpace& x, const CoeffSystem& a, int p) {
  auto f = x.fixed();
  const auto& i = x.inclusion();
  const auto& ts = f->total(a);
  const auto& tt = x.total(a);
  return hom_from_cycle_map(
      f->homology(a, p), x.homology(a, p),
      [&](const ChainVector& c) { return map_columnwise(ts, tt, p, c, [&](int q) { return i.chain_map(q); }); },
      "fixed_inclusion_map");
}

/// Inverse of an isomorphism, one preimage per target generator.
inline GroupHom inverse_of(const GroupHom& f) {
  if (!f.is_isomorphism()) throw std::logic_error("inverse_of: map is not an isomorphism");
  const auto& t = f.target();
  IntMatrix m(f.source().generator_count(), t.generator_count());
  for (std::size_t j = 0; j < t.generator_count(); ++j) {
    std::vector<Integer> e(t.generator_count());
    e[j] = 1;
    auto pre = f.preimage(e);
    for (std::size_t i = 0; i < pre->size(); ++i) m(i, j) = (*pre)[i];
  }
  return GroupHom(t, f.source(), std::move(m));
}

/**
 * ρ on H_n(X; G, A(k)): reduce mod 2, cap with η^N (N = dim X + 1), pull back
 * along the isomorphism i_* in negative degrees, and send η to 1 by reading
 * the column-j component of a total cycle of X^G as a class of degree m + j.
 */
struct RhoMap {
  int n = 0;
  CoeffSystem coeff;
  GradedTarget target;
  GroupHom map;

  GroupHom component(int p) const { return target.projection(p).after(map); }
  GroupHom even() const { return target.even().after(map); }
  GroupHom odd() const { return target.odd().after(map); }
  GradedClassVector apply(const std::vector<Integer>& coords) const { return split_graded(target, map.apply(coords)); }
};

inline RhoMap rho(const EqSpace& x, const CoeffSystem& a, int n) {
  RhoMap r;
  r.n = n;
  r.coeff = a;
  r.target = fixed_homology_z2(x);
  const auto& src = x.homology(a, n);
  if (x.fixed_set_empty()) {
    r.map = GroupHom::zero(src.group(), r.target.group);
    return r;
  }
  const CoeffSystem z2 = CoeffSystem::z2();
  const int N = std::max(x.dimension(), 0) + 1;
  const int m = n - N;
  auto f = x.fixed();
  GroupHom reduce = mod2_map(x, a, n);
  GroupHom cap = s_map(x, z2, n, N);
  GroupHom pull = inverse_of(fixed_inclusion_map(x, z2, m));
  const auto& tf = f->total(z2);
  GroupHom unit = detail::hom_to_graded(
      f->homology(z2, m), r.target,
      [&](const ChainVector& c) {
        std::vector<ChainVector> parts;
        for (int q = 0; q <= r.target.top_degree(); ++q) parts.push_back(tf.column_part(c, m, q - m));
        return parts;
      },
      "rho");
  r.map = unit.after(pull).after(cap).after(reduce);
  return r;
}

/// ρ of a single class.
inline GradedClassVector rho_of(const EqClass& c) {
  return rho(*c.space, c.coeff, c.degree).apply(c.coordinates());
}

/**
 * β on H^n(X; G, A(k)): restrict to X^G, reduce mod 2 and send η to 1, i.e.
 * read column j of the restricted cocycle as a class in H^{n-j}(X^G, Z/2).
 */
struct BetaMap {
  int n = 0;
  CoeffSystem coeff;
  GradedTarget target;
  GroupHom map;

  GroupHom component(int p) const { return target.projection(p).after(map); }
  GradedClassVector apply(const std::vector<Integer>& coords) const { return split_graded(target, map.apply(coords)); }
};

inline BetaMap beta(const EqSpace& x, const CoeffSystem& a, int n) {
  BetaMap b;
  b.n = n;
  b.coeff = a;
  b.target = fixed_cohomology_z2(x);
  const auto& src = x.cohomology(a, n);
  if (x.fixed_set_empty()) {
    b.map = GroupHom::zero(src.group(), b.target.group);
    return b;
  }
  const auto& i = x.inclusion();
  const auto& t = x.total(a, Variance::cohomology);
  b.map = detail::hom_to_graded(
      src, b.target,
      [&](const ChainVector& c) {
        std::vector<ChainVector> parts;
        for (int q = 0; q <= b.target.top_degree(); ++q) {
          auto part = t.column_part(c, n, n - q);
          if (part.empty()) {
            parts.emplace_back(b.target.parts[static_cast<std::size_t>(q)]->ambient_dim());
            continue;
          }
          parts.push_back(reduce_mod2(i.chain_map(q).transpose().apply(part)));
        }
        return parts;
      },
      "beta");
  return b;
}

/// Mod 2 Bockstein H_{q+1}(Y, Z/2) -> H_q(Y, Z/2) of 0 -> Z/2 -> Z/4 -> Z/2 -> 0.
inline GroupHom z2_bockstein(const EqSpace& y, int q) {
  const auto& c = y.chains(CoeffSystem::integral(0));
  IntMatrix d = c.d(q + 1);
  return hom_from_cycle_map(
      y.ordinary_homology(CoeffSystem::z2(), q + 1), y.ordinary_homology(CoeffSystem::z2(), q),
      [&](const ChainVector& z) {
        ChainVector b = d.apply(z);
        for (auto& v : b) v /= 2;
        return reduce_mod2(std::move(b));
      },
      "z2_bockstein");
}

/// The Bockstein on the graded target, degree -1, as an endomorphism.
inline GroupHom graded_bockstein(const EqSpace& x) {
  auto t = fixed_homology_z2(x);
  auto f = x.fixed();
  IntMatrix m(t.group.generator_count(), t.group.generator_count());
  for (int q = 0; q + 1 <= t.top_degree(); ++q) {
    auto b = z2_bockstein(*f, q).matrix();
    m.set_block(t.offsets[static_cast<std::size_t>(q)], t.offsets[static_cast<std::size_t>(q) + 1], b);
  }
  return GroupHom(t.group, t.group, std::move(m));
}

// ---------------------------------------------------------------------------
// Degrees, fundamental classes, pushforward

inline FGAbelianGroup coefficient_group(Ring r) {
  return r == Ring::Z ? FGAbelianGroup::free_abelian(1) : FGAbelianGroup::elementary(1);
}

namespace detail {
inline void require_degree_zero_untwisted(const CoeffSystem& a, int p, const char* what) {
  if (p != 0) throw std::invalid_argument(std::string(what) + ": degree maps live in degree 0");
  if (a.twist() != 0) throw std::invalid_argument(std::string(what) + ": degree needs untwisted coefficients");
}
inline Integer vertex_sum(const ChainVector& v, Ring r) {
  Integer s = 0;
  for (const auto& x : v) s += x;
  return r == Ring::Z2 ? mod_floor(s, 2) : s;
}
}  // namespace detail

/// deg_G : H_0(X; G, A) -> A (pushforward to a point).
inline GroupHom equivariant_degree_map(const EqSpace& x, const CoeffSystem& a) {
  detail::require_degree_zero_untwisted(a, 0, "equivariant_degree_map");
  const auto& src = x.homology(a, 0);
  IntMatrix m(1, src.group().generator_count());
  for (std::size_t j = 0; j < src.group().generator_count(); ++j)
    m(0, j) = detail::vertex_sum(x.total(a).column_part(src.generator(j), 0, 0), a.ring());
  return GroupHom(src.group(), coefficient_group(a.ring()), std::move(m));
}

/// deg : H_0(X, A) -> A.
inline GroupHom degree_map(const EqSpace& x, const CoeffSystem& a) {
  detail::require_degree_zero_untwisted(a, 0, "degree_map");
  const auto& src = x.ordinary_homology(a, 0);
  IntMatrix m(1, src.group().generator_count());
  for (std::size_t j = 0; j < src.group().generator_count(); ++j) m(0, j) = detail::vertex_sum(src.generator(j), a.ring());
  return GroupHom(src.group(), coefficient_group(a.ring()), std::move(m));
}

inline Integer equivariant_degree(const EqClass& c) {
  detail::require_degree_zero_untwisted(c.coeff, c.degree, "equivariant_degree");
  if (c.variance != Variance::homology) throw std::invalid_argument("equivariant_degree: homology class expected");
  return equivariant_degree_map(*c.space, c.coeff).apply(c.coordinates())[0];
}

/// deg on ⊕_q H_q(X^G, Z/2): the vertex sum mod 2 in degree 0, zero elsewhere.
inline GroupHom fixed_degree_map(const EqSpace& x) {
  auto t = fixed_homology_z2(x);
  IntMatrix m(1, t.group.generator_count());
  if (t.top_degree() >= 0) {
    const auto& h0 = *t.parts[0];
    for (std::size_t j = 0; j < h0.group().generator_count(); ++j) m(0, j) = detail::vertex_sum(h0.generator(j), Ring::Z2);
  }
  return GroupHom(t.group, FGAbelianGroup::elementary(1), std::move(m));
}

/// Induced map f_* : H_p(X; G, A) -> H_p(Y; G, A) of an equivariant simplicial map.
inline GroupHom pushforward_map(const GMap& f, const EqSpace& src, const EqSpace& tgt, const CoeffSystem& a, int p) {
  if (f.source().simplex_count() != src.complex().simplex_count() ||
      f.target().simplex_count() != tgt.complex().simplex_count())
    throw std::invalid_argument("pushforward: map does not match the given spaces");
  const auto& ts = src.total(a);
  const auto& tt = tgt.total(a);
  return hom_from_cycle_map(
      src.homology(a, p), tgt.homology(a, p),
      [&](const ChainVector& c) { return map_columnwise(ts, tt, p, c, [&](int q) { return f.chain_map(q); }); },
      "pushforward");
}

/// Nonequivariant f_* : H_p(X, A) -> H_p(Y, A).
inline GroupHom ordinary_pushforward_map(const GMap& f, const EqSpace& src, const EqSpace& tgt, const CoeffSystem& a, int p) {
  IntMatrix m = f.chain_map(p);
  if (a.is_z2()) m = reduce_mod2(std::move(m));
  return induced_hom(m, src.ordinary_homology(a, p), tgt.ordinary_homology(a, p));
}

inline EqClass pushforward(const GMap& f, const EqClass& c, const EqSpacePtr& target) {
  if (c.variance != Variance::homology) throw std::invalid_argument("pushforward: homology class expected");
  const auto& ts = c.space->total(c.coeff);
  const auto& tt = target->total(c.coeff);
  ChainVector y = map_columnwise(ts, tt, c.degree, c.chain, [&](int q) { return f.chain_map(q); });
  EqClass out{target, c.coeff, c.degree, Variance::homology, std::move(y)};
  out.coordinates();
  return out;
}

/// Restriction of an equivariant map to the fixed sets, X^G -> Y^G.
inline GMap fixed_restriction(const GMap& f) {
  const auto& xs = f.source();
  const auto& ys = f.target();
  std::vector<int> new_y(ys.vertex_count(), -1);
  int m = 0;
  for (std::size_t v = 0; v < ys.vertex_count(); ++v)
    if (ys.involution()[v] == static_cast<int>(v)) new_y[v] = m++;
  std::vector<int> map;
  for (std::size_t v = 0; v < xs.vertex_count(); ++v)
    if (xs.involution()[v] == static_cast<int>(v)) map.push_back(new_y[static_cast<std::size_t>(f.vertex_map()[v])]);
  return GMap(fixed_subcomplex(xs), fixed_subcomplex(ys), std::move(map), f.name() + "^G");
}

/// (f^G)_* on ⊕_q H_q(-, Z/2) of the fixed sets, as a map of graded targets.
inline GroupHom fixed_pushforward_graded(const GMap& f, const EqSpace& src, const EqSpace& tgt) {
  auto s = fixed_homology_z2(src), t = fixed_homology_z2(tgt);
  GMap fg = fixed_restriction(f);
  auto fs = src.fixed(), ft = tgt.fixed();
  IntMatrix m(t.group.generator_count(), s.group.generator_count());
  for (int q = 0; q <= std::min(s.top_degree(), t.top_degree()); ++q) {
    auto b = ordinary_pushforward_map(fg, *fs, *ft, CoeffSystem::z2(), q).matrix();
    m.set_block(t.offsets[static_cast<std::size_t>(q)], s.offsets[static_cast<std::size_t>(q)], b);
  }
  return GroupHom(s.group, t.group, reduce_mod2(std::move(m)));
}

/// Fundamental class μ_X in H_d(X; G, A(k)), k detected from the action on H_d(X, A).
struct FundamentalClass {
  int dimension = 0;
  CoeffSystem coeff;
  bool orientation_preserving = true;
  EqClass mu;
};

inline FundamentalClass fundamental_class(const EqSpacePtr& x, Ring ring, int d) {
  const CoeffSystem base = ring == Ring::Z2 ? CoeffSystem::z2() : CoeffSystem::integral(0);
  const auto& hd = x->ordinary_homology(base, d);
  if (!(hd.group() == coefficient_group(ring)))
    throw std::domain_error("fundamental_class: H_" + std::to_string(d) + "(X, " + base.name() + ") is " +
                            hd.group().to_string() + ", not the coefficient group");
  FundamentalClass fc;
  fc.dimension = d;
  auto s = x->sigma_on_homology(base, d).matrix();
  fc.orientation_preserving = ring == Ring::Z2 || s(0, 0) == 1;
  if (ring == Ring::Z && s(0, 0) != 1 && s(0, 0) != -1) throw std::logic_error("fundamental_class: σ acts by neither +1 nor -1");
  fc.coeff = ring == Ring::Z2 ? base : CoeffSystem::integral(fc.orientation_preserving ? 0 : 1);
  GroupHom e = edge_morphism(*x, fc.coeff, d);
  auto pre = e.preimage({Integer(1)});
  if (!pre) throw std::logic_error("fundamental_class: the top class is not in the image of the edge morphism");
  fc.mu = class_from_coordinates(x, fc.coeff, d, *pre);
  return fc;
}

/// The class represented by a closed sub-G-manifold: j_* μ.
inline EqClass represented_class(const GMap& j, const EqSpacePtr& sub, const EqSpacePtr& ambient, Ring ring, int d) {
  return pushforward(j, fundamental_class(sub, ring, d).mu, ambient);
}

/// Connected components of a complex, each as a sorted vertex list.
inline std::vector<std::vector<int>> connected_components(const GComplex& x) {
  std::vector<int> parent(x.vertex_count());
  for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = static_cast<int>(v);
  std::function<int(int)> find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    return v;
  };
  for (const auto& e : x.simplices(1)) parent[static_cast<std::size_t>(find(e[0]))] = find(e[1]);
  std::map<int, std::vector<int>> groups;
  for (std::size_t v = 0; v < parent.size(); ++v) groups[find(static_cast<int>(v))].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : groups) out.push_back(std::move(vs));
  std::sort(out.begin(), out.end());
  return out;
}

/// For one component V of X^G: ρ_{d,d0}(μ_X) restricted to V, and whether it is μ_V.
struct ComponentRestriction {
  std::vector<int> vertices;  ///< fixed-set vertex ids
  int dimension = 0;
  std::vector<Integer> restricted;  ///< coordinates in H_{d0}(V, Z/2)
  bool equals_fundamental_class = false;
};

inline std::vector<ComponentRestriction> restrict_rho_of_fundamental_class(const FundamentalClass& fc) {
  const auto& x = *fc.mu.space;
  auto r = rho(x, fc.coeff, fc.dimension);
  auto graded = r.apply(fc.mu.coordinates());
  auto f = x.fixed();
  const GComplex& fg = f->complex();
  std::vector<ComponentRestriction> out;
  for (const auto& comp : connected_components(fg)) {
    ComponentRestriction cr;
    cr.vertices = comp;
    std::vector<int> new_id(fg.vertex_count(), -1);
    for (std::size_t i = 0; i < comp.size(); ++i) new_id[static_cast<std::size_t>(comp[i])] = static_cast<int>(i);
    std::vector<std::vector<int>> simplices;
    int d0 = 0;
    for (int q = 1; q <= fg.dimension(); ++q)
      for (const auto& s : fg.simplices(q))
        if (new_id[static_cast<std::size_t>(s[0])] >= 0) {
          std::vector<int> t;
          for (int v : s) t.push_back(new_id[static_cast<std::size_t>(v)]);
          simplices.push_back(std::move(t));
          d0 = std::max(d0, q);
        }
    cr.dimension = d0;
    GComplex v = GComplex::with_trivial_action(comp.size(), simplices);
    auto cv = chain_complex(v, CoeffSystem::z2());
    HomologyGroup hv = homology_at(cv.d(d0 + 1), cv.d(d0), Ring::Z2);
    // Chain of ρ_{d,d0}(μ) on X^G, then keep the simplices of V.
    ChainVector full = f->ordinary_homology(CoeffSystem::z2(), d0).chain_from_coordinates(graded.by_degree[static_cast<std::size_t>(d0)]);
    ChainVector part(v.count(d0));
    const auto& cells = fg.simplices(d0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (new_id[static_cast<std::size_t>(cells[i][0])] < 0) continue;
      std::vector<int> t;
      for (int w : cells[i]) t.push_back(new_id[static_cast<std::size_t>(w)]);
      part[*v.index_of(t)] = full[i];
    }
    cr.restricted = hv.coordinates_or_throw(part, "restrict_rho_of_fundamental_class");
    cr.equals_fundamental_class = hv.group() == FGAbelianGroup::elementary(1) && cr.restricted == std::vector<Integer>{1};
    out.push_back(std::move(cr));
  }
  return out;
}

}  // namespace eqhom

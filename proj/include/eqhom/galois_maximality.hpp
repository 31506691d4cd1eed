#pragma once

#include "eqhom/spectral.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqhom {

/// Both sides of one inequality lhs <= rhs.
struct Inequality {
  std::size_t lhs = 0;
  std::size_t rhs = 0;

  bool holds() const { return lhs <= rhs; }
  bool equality() const { return lhs == rhs; }
};

/**
 * The three inequalities bounding the mod 2 homology of X^G.
 * gm1: dim H_*(X^G) <= sum_r dim H^1(G, H_r(X, Z/2)).
 * gm2: dim H_even(X^G) <= sum_{r even} dim H^2(G, H_r(X, Z)) + sum_{r odd} dim H^1(G, H_r(X, Z)).
 * gm3: dim H_odd(X^G) with the roles of H^1 and H^2 exchanged.
 * The plain column sums over all r are kept in the *_column_sum fields.
 */
struct GMInequalities {
  Inequality gm1, gm2, gm3;
  std::size_t gm2_column_sum = 0;
  std::size_t gm3_column_sum = 0;

  bool hold() const { return gm1.holds() && gm2.holds() && gm3.holds(); }
};

/// Only ordinary homology of X and X^G is needed here.
inline GMInequalities gm_inequalities(const EqSpace& x) {
  GMInequalities r;
  const CoeffSystem z2 = CoeffSystem::z2(), z = CoeffSystem::integral(0);
  auto f = x.fixed();
  for (int q = 0; q <= f->dimension(); ++q) {
    std::size_t b = f->ordinary_homology(z2, q).group().f2_dimension();
    r.gm1.lhs += b;
    (q % 2 == 0 ? r.gm2.lhs : r.gm3.lhs) += b;
  }
  for (int q = 0; q <= x.dimension(); ++q) {
    r.gm1.rhs += group_cohomology(homology_module(x, z2, q), 1).f2_dimension();
    GModule m = homology_module(x, z, q);
    std::size_t h1 = group_cohomology(m, 1).f2_dimension(), h2 = group_cohomology(m, 2).f2_dimension();
    r.gm2.rhs += q % 2 == 0 ? h2 : h1;
    r.gm3.rhs += q % 2 == 0 ? h1 : h2;
    r.gm2_column_sum += h2;
    r.gm3_column_sum += h1;
  }
  return r;
}

/// Surjectivity of e_p onto the invariants for Z/2, Z and Z(1).
struct EdgeRow {
  int degree = 0;
  bool z2 = false;
  bool plus = false;
  bool minus = false;
};

struct GMReport {
  GMInequalities inequalities;
  std::vector<EdgeRow> edges;
  bool is_GM = false;
  bool is_ZGM = false;

  /// is_GM agrees with equality in gm1, is_ZGM with equality in gm2 and gm3.
  bool gm_consistent() const { return is_GM == inequalities.gm1.equality(); }
  bool zgm_consistent() const { return is_ZGM == (inequalities.gm2.equality() && inequalities.gm3.equality()); }
};

inline GMReport gm_report(const EqSpace& x) {
  GMReport r;
  r.inequalities = gm_inequalities(x);
  r.is_GM = r.is_ZGM = true;
  for (int p = 0; p <= x.dimension(); ++p) {
    EdgeRow e;
    e.degree = p;
    e.z2 = edge_surjective(x, CoeffSystem::z2(), p);
    e.plus = edge_surjective(x, CoeffSystem::integral(0), p);
    e.minus = edge_surjective(x, CoeffSystem::integral(1), p);
    r.is_GM = r.is_GM && e.z2;
    r.is_ZGM = r.is_ZGM && e.plus && e.minus;
    r.edges.push_back(e);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Surjectivity of ρ_2 versus vanishing of e_1 followed by η^2

enum class RhoVariant { zz, even_z, odd_z };

inline std::string to_string(RhoVariant v) {
  switch (v) {
    case RhoVariant::zz: return "zz";
    case RhoVariant::even_z: return "even-z";
    case RhoVariant::odd_z: return "odd-z";
  }
  return "?";
}

inline RhoVariant parse_rho_variant(const std::string& s) {
  if (s == "zz") return RhoVariant::zz;
  if (s == "even-z") return RhoVariant::even_z;
  if (s == "odd-z") return RhoVariant::odd_z;
  throw std::invalid_argument("unknown variant '" + s + "' (expected zz, even-z or odd-z)");
}

/**
 * zz:     ρ_2 on H_2(X;G,Z/2) onto H_*(X^G,Z/2)^0  vs  e_1 (Z/2) then η^2.
 * even-z: ρ_{2,even} on H_2(X;G,Z) onto H_even(X^G,Z/2)^0  vs  e_1 (Z(1)) then η^2.
 * odd-z:  ρ_{2,odd} on H_2(X;G,Z(1)) onto H_odd(X^G,Z/2)  vs  e_1 (Z) then η^2.
 * The superscript 0 is the kernel of the degree map.
 */
struct RhoCriteria {
  RhoVariant variant = RhoVariant::zz;
  bool criterion_zero = false;
  bool rho_surjective = false;

  bool agree() const { return criterion_zero == rho_surjective; }
};

inline bool is_connected(const EqSpace& x) {
  return x.ordinary_homology(CoeffSystem::integral(0), 0).group() == FGAbelianGroup::free_abelian(1);
}

/// Whether e_1 followed by the map to H^2(G, H_1) = H_1^G / (1 + σ)H_1 vanishes.
inline bool edge_eta_square_zero(const EqSpace& x, const CoeffSystem& a) {
  if (x.dimension() < 1) return true;
  return norm_lattice(homology_module(x, a, 1)).contains(edge_morphism(x, a, 1).image_lattice());
}

inline RhoCriteria rho_surjectivity_criteria(const EqSpace& x, RhoVariant v) {
  if (!is_connected(x)) throw std::invalid_argument("rho_surjectivity_criteria: X is not connected");
  if (v != RhoVariant::even_z && x.fixed_set_empty())
    throw std::invalid_argument("rho_surjectivity_criteria: variant " + to_string(v) + " needs a nonempty fixed set");
  RhoCriteria r;
  r.variant = v;
  const CoeffSystem rho_coeff = v == RhoVariant::zz ? CoeffSystem::z2() : CoeffSystem::integral(v == RhoVariant::even_z ? 0 : 1);
  const CoeffSystem edge_coeff = v == RhoVariant::zz ? CoeffSystem::z2() : CoeffSystem::integral(v == RhoVariant::even_z ? 1 : 0);
  r.criterion_zero = edge_eta_square_zero(x, edge_coeff);

  auto rh = rho(x, rho_coeff, 2);
  GroupHom deg = fixed_degree_map(x);
  switch (v) {
    case RhoVariant::zz:
      r.rho_surjective = rh.map.image_lattice().contains(deg.kernel_lattice());
      break;
    case RhoVariant::even_z: {
      GroupHom even = rh.target.even();
      GroupHom deg_even(even.target(), deg.target(), deg.matrix() * even.matrix().transpose());
      r.rho_surjective = rh.even().image_lattice().contains(deg_even.kernel_lattice());
      break;
    }
    case RhoVariant::odd_z:
      r.rho_surjective = rh.odd().is_surjective();
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Witness search in H^1(X; G, Z/2)

struct WitnessSearch {
  bool connected = false;  ///< the contract is asserted for connected X only
  bool e2_surjective = false;
  std::size_t search_dimension = 0;  ///< dim H^1(X; G, Z/2)
  std::uint64_t tried = 0;
  std::optional<std::vector<Integer>> witness;  ///< coordinates of ω

  /// Either e^2 is surjective onto the invariants, or a witness was found.
  bool contract_holds() const { return e2_surjective || witness.has_value(); }
  bool exhaustive() const { return witness.has_value() || tried + 1 == (std::uint64_t{1} << search_dimension); }
};

inline constexpr std::size_t kMaxWitnessSearchDimension = 24;

/**
 * If e^2 (Z/2) is not surjective onto H^2(X, Z/2)^G, look for ω in
 * H^1(X; G, Z/2) with e^1(ω) != 0 and β(ω) = 0, trying coordinate vectors
 * in increasing binary order.
 */
inline WitnessSearch witness_search(const EqSpace& x) {
  if (x.fixed_set_empty()) throw std::invalid_argument("witness_search: the fixed set is empty");
  const CoeffSystem z2 = CoeffSystem::z2();
  WitnessSearch r;
  r.connected = is_connected(x);
  r.e2_surjective = cohomology_edge_surjective(x, z2, 2);
  if (r.e2_surjective) return r;
  const auto& h1 = eq_cohomology(x, z2, 1);
  r.search_dimension = h1.generator_count();
  if (r.search_dimension > kMaxWitnessSearchDimension)
    throw std::length_error("witness_search: search space 2^" + std::to_string(r.search_dimension) + " is too large");
  GroupHom e1 = cohomology_edge_morphism(x, z2, 1);
  GroupHom b = beta(x, z2, 1).map;
  const std::uint64_t n = std::uint64_t{1} << r.search_dimension;
  std::vector<Integer> w(r.search_dimension);
  for (std::uint64_t bits = 1; bits < n; ++bits) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (bits >> i) & 1U;
    ++r.tried;
    if (!is_zero_vector(e1.target().normalize(e1.apply(w))) && is_zero_vector(b.target().normalize(b.apply(w)))) {
      r.witness = w;
      break;
    }
  }
  return r;
}

}  // namespace eqhom

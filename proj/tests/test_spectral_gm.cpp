#include <catch_amalgamated.hpp>

#include "eqhom/builtins.hpp"
#include "eqhom/duality.hpp"
#include "eqhom/galois_maximality.hpp"

using namespace eqhom;

namespace {

EqSpacePtr space(const std::string& name) { return EqSpace::create(builtin(name)); }

const FGAbelianGroup kZ = FGAbelianGroup::free_abelian(1);
const FGAbelianGroup kZ2 = FGAbelianGroup::elementary(1);

}  // namespace

TEST_CASE("e2 page: examples", "[spectral]") {
  auto pt = e2_page(*space("point"), CoeffSystem::z2());
  CHECK(pt.nonzero_rows() == std::vector<int>{0});
  for (int p = 0; p >= -pt.depth(); --p) CHECK(pt.at(p, 0) == kZ2);

  auto cr = e2_page(*space("circle-reflection"), CoeffSystem::z2());
  CHECK(cr.depth() == 3);
  for (int p = 0; p >= -3; --p)
    for (int q = 0; q <= 1; ++q) CHECK(cr.at(p, q) == kZ2);

  // H_2 of the antipodal sphere is Z with σ = -1.
  auto sa = e2_page(*space("sphere-octahedron-antipodal"), CoeffSystem::integral(0));
  CHECK(sa.nonzero_rows() == std::vector<int>{0, 2});
  CHECK(sa.at(0, 0) == kZ);
  CHECK(sa.at(-1, 0).is_trivial());
  CHECK(sa.at(-2, 0) == kZ2);
  CHECK(sa.at(0, 2).is_trivial());
  CHECK(sa.at(-1, 2) == kZ2);
  CHECK(sa.at(-2, 2).is_trivial());
}

TEST_CASE("e2 page: periodicity", "[spectral][property]") {
  for (const auto& name : builtin_names()) {
    auto x = space(name);
    for (const auto& a : {CoeffSystem::z2(), CoeffSystem::integral(0), CoeffSystem::integral(1)}) {
      INFO(name << " " << a.name());
      CHECK(e2_page(*x, a, 6).periodic());
    }
  }
}

TEST_CASE("gm report: examples", "[gm]") {
  auto cr = gm_report(*space("circle-reflection"));
  CHECK(cr.inequalities.gm1.lhs == 2);
  CHECK(cr.inequalities.gm1.rhs == 2);
  CHECK(cr.is_GM);

  auto sa = gm_report(*space("sphere-octahedron-antipodal"));
  CHECK(sa.inequalities.gm1.lhs == 0);
  CHECK(sa.inequalities.gm1.rhs == 2);
  CHECK_FALSE(sa.is_GM);

  auto tr = gm_report(*space("torus-reflection"));
  CHECK(tr.inequalities.gm1.lhs == 4);
  CHECK(tr.inequalities.gm1.rhs == 4);
  CHECK(tr.is_GM);
}

TEST_CASE("gm report: inequalities and consistency on builtins", "[gm][property]") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto r = gm_report(*space(name));
    CHECK(r.inequalities.hold());
    CHECK(r.gm_consistent());
    CHECK(r.zgm_consistent());
  }
}

TEST_CASE("gm inequalities survive subdivision", "[gm][property]") {
  for (const auto& name : {"circle-reflection", "sphere-octahedron-reflection", "rp2-trivial", "circle-antipodal"}) {
    INFO(name);
    auto x = EqSpace::create(barycentric_subdivide(builtin(name)));
    auto a = gm_inequalities(*x);
    auto b = gm_inequalities(*space(name));
    CHECK(a.hold());
    CHECK(a.gm1.lhs == b.gm1.lhs);
    CHECK(a.gm1.rhs == b.gm1.rhs);
    CHECK(a.gm2.rhs == b.gm2.rhs);
  }
}

TEST_CASE("rho criteria agree", "[gm][property]") {
  // e_1 is onto H_1 = Z/2 and η^2 is the periodicity isomorphism; H_2 vanishes so ρ_2 = 0.
  auto cr = rho_surjectivity_criteria(*space("circle-reflection"), RhoVariant::zz);
  CHECK_FALSE(cr.criterion_zero);
  CHECK_FALSE(cr.rho_surjective);

  for (const auto& name : builtin_names()) {
    auto x = space(name);
    for (auto v : {RhoVariant::zz, RhoVariant::even_z, RhoVariant::odd_z}) {
      INFO(name << " " << to_string(v));
      const bool valid = is_connected(*x) && (v == RhoVariant::even_z || !x->fixed_set_empty());
      if (!valid) {
        CHECK_THROWS_AS(rho_surjectivity_criteria(*x, v), std::invalid_argument);
        continue;
      }
      CHECK(rho_surjectivity_criteria(*x, v).agree());
    }
  }
}

TEST_CASE("witness search contract", "[gm]") {
  CHECK(witness_search(*space("circle-reflection")).e2_surjective);
  CHECK_THROWS_AS(witness_search(*space("circle-antipodal")), std::invalid_argument);
  for (const auto& name : builtin_names()) {
    auto x = space(name);
    if (x->fixed_set_empty()) continue;
    INFO(name);
    auto r = witness_search(*x);
    CHECK(r.contract_holds());
    if (r.witness) {
      auto w = *r.witness;
      CHECK_FALSE(is_zero_vector(reduce_mod2(cohomology_edge_morphism(*x, CoeffSystem::z2(), 1).apply(w))));
      CHECK(is_zero_vector(reduce_mod2(beta(*x, CoeffSystem::z2(), 1).map.apply(w))));
    }
  }
  auto u = EqSpace::create(builtin("circle-reflection+free-pair"));
  CHECK(witness_search(*u).contract_holds());
}

TEST_CASE("witness search: connected example finds a witness", "[gm]") {
  // The sphere class does not lift: on the free sphere the map factors through the degree 2 cover.
  auto r = witness_search(*space("sphere-antipodal-arcs"));
  CHECK(r.connected);
  CHECK_FALSE(r.e2_surjective);
  CHECK(r.search_dimension == 2);
  REQUIRE(r.witness);
  CHECK(r.contract_holds());
}

TEST_CASE("witness search: disconnected input without a witness", "[gm]") {
  // H^1(X) = 0, so e^1 vanishes and no witness can exist.
  auto r = witness_search(*space("sphere-octahedron-antipodal+point"));
  CHECK_FALSE(r.connected);
  CHECK_FALSE(r.e2_surjective);
  CHECK_FALSE(r.witness);
  CHECK(r.exhaustive());
  CHECK_FALSE(r.contract_holds());
}

TEST_CASE("poincare check", "[duality]") {
  for (const auto& name : builtin_names()) {
    auto info = builtin_info(name);
    if (info.manifold_dimension < 0) continue;
    auto x = EqSpace::create(info.complex);
    const int d = info.manifold_dimension;
    INFO(name);
    auto z2 = poincare_check(x, Ring::Z2, d);
    CHECK(z2.ok());
    if (x->ordinary_homology(CoeffSystem::integral(0), d).group() == kZ) CHECK(poincare_check(x, Ring::Z, d).ok());
  }
  CHECK(poincare_check(space("circle-antipodal"), Ring::Z, 1).twist == 0);
  CHECK(poincare_check(space("sphere-octahedron-reflection"), Ring::Z, 2).twist == 1);
  CHECK_THROWS_AS(poincare_check(space("free-pair"), Ring::Z, 0), std::domain_error);
}

#include <catch_amalgamated.hpp>

#include "eqhom/builtins.hpp"

using namespace eqhom;

namespace {

std::vector<std::size_t> betti_z2(const GComplex& x) {
  auto c = chain_complex(x, CoeffSystem::z2());
  std::vector<std::size_t> out;
  for (int q = 0; q <= x.dimension(); ++q) out.push_back(ordinary_homology(c, q).group().f2_dimension());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

const std::vector<CoeffSystem> kCoeffs = {CoeffSystem::z2(), CoeffSystem::integral(0), CoeffSystem::integral(1)};

}  // namespace

TEST_CASE("validate: examples", "[gcomplex]") {
  CHECK(validate(point_complex()).ok);

  auto swapped_edge = GComplex(2, {{0, 1}}, {1, 0});
  auto r = validate(swapped_edge);
  CHECK_FALSE(r.ok);
  CHECK(r.regularity_only);
  REQUIRE(r.simplex);
  CHECK(*r.simplex == Simplex{0, 1});

  // Half-turn on the 4-gon: 4 vertices + 4 edges, none fixed setwise, images all present.
  auto square = builtin("circle-antipodal");
  CHECK(square.simplex_count() == 8);
  CHECK(validate(square).ok);
}

TEST_CASE("validate: structural violations name the failure", "[gcomplex]") {
  CHECK_FALSE(validate(GComplex(2, {{0, 1}}, {0})).ok);
  CHECK_FALSE(validate(GComplex(3, {{0, 1}}, {1, 2, 0})).ok);
  auto not_simplicial = GComplex(3, {{0, 1}}, {0, 2, 1});
  auto r = validate(not_simplicial);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.regularity_only);
  CHECK(r.message.find("{0,1}") != std::string::npos);
  CHECK_FALSE(validate(GComplex(2, {{0, 5}}, {0, 1})).ok);
}

TEST_CASE("barycentric_subdivide: examples", "[gcomplex]") {
  SECTION("swapped edge becomes a path with a fixed midpoint") {
    auto sd = barycentric_subdivide(GComplex(2, {{0, 1}}, {1, 0}));
    CHECK(validate(sd).ok);
    CHECK(sd.vertex_count() == 3);
    CHECK(sd.count(1) == 2);
    CHECK(sd.involution()[2] == 2);
  }
  SECTION("point") {
    auto sd = barycentric_subdivide(point_complex());
    CHECK(sd.vertex_count() == 1);
    CHECK(sd.dimension() == 0);
  }
  SECTION("triangle with a reflection") {
    auto tri = GComplex(3, {{0, 1, 2}}, {1, 0, 2});
    auto sd = barycentric_subdivide(tri);
    CHECK(validate(sd).ok);
    CHECK(sd.count(2) == 6);
    // The fixed set is the median from vertex 2 to the midpoint of {0,1}: 3 vertices, 2 edges.
    auto fixed = fixed_subcomplex(sd);
    CHECK(fixed.vertex_count() == 3);
    CHECK(fixed.count(1) == 2);
    CHECK(fixed.count(2) == 0);
    // Every triangle goes to a triangle, none is fixed.
    for (const auto& t : sd.simplices(2)) CHECK(sd.image(t) != t);
  }
}

TEST_CASE("fixed_subcomplex: examples", "[gcomplex]") {
  auto klein = builtin("klein-bottle-trivial");
  auto f = fixed_subcomplex(klein);
  CHECK(f.simplex_count() == klein.simplex_count());
  CHECK(fixed_subcomplex(builtin("circle-antipodal")).is_empty());
  auto equator = fixed_subcomplex(builtin("sphere-octahedron-reflection"));
  CHECK(equator.vertex_count() == 4);
  CHECK(equator.count(1) == 4);
  CHECK(betti_z2(equator) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("chain_complex: examples", "[gcomplex]") {
  auto pt = point_complex();
  auto c = chain_complex(pt, CoeffSystem::integral(0));
  CHECK(c.s(0)(0, 0) == 1);
  CHECK(c.d(0).rows() == 0);
  CHECK(chain_complex(pt, CoeffSystem::integral(1)).s(0)(0, 0) == -1);

  // Half-turn on the oriented edges {0,1},{0,3},{1,2},{2,3}:
  // {0,1} -> {2,3}, {0,3} -> [2,1] = -{1,2}, {1,2} -> [3,0] = -{0,3}, {2,3} -> {0,1}.
  auto sq = chain_complex(builtin("circle-antipodal"), CoeffSystem::integral(0));
  IntMatrix expected(4, 4);
  expected(3, 0) = 1;
  expected(2, 1) = -1;
  expected(1, 2) = -1;
  expected(0, 3) = 1;
  CHECK(sq.s(1) == expected);
  CHECK(sq.d(1) * sq.s(1) == sq.s(0) * sq.d(1));
}

TEST_CASE("builtin catalog matches its documentation", "[gcomplex][property]") {
  for (const auto& name : builtin_names()) {
    auto info = builtin_info(name);
    const auto& x = info.complex;
    INFO(name);
    REQUIRE(validate(x).ok);
    CHECK(x.euler_characteristic() == info.euler_characteristic);
    CHECK(betti_z2(fixed_subcomplex(x)) == info.fixed_betti_z2);
    for (const auto& a : kCoeffs) {
      auto c = chain_complex(x, a);
      for (int q = 0; q <= x.dimension(); ++q) {
        INFO("q = " << q << ", A = " << a.name());
        CHECK((c.s(q) * c.s(q)) == IntMatrix::identity(c.rank(q)));
        if (q >= 1) {
          IntMatrix lhs = c.d(q) * c.s(q), rhs = c.s(q - 1) * c.d(q);
          if (a.is_z2()) lhs = reduce_mod2(lhs), rhs = reduce_mod2(rhs);
          CHECK(lhs == rhs);
        }
        if (q >= 2) CHECK(reduce_mod2(c.d(q - 1) * c.d(q)).is_zero());
        if (q >= 2 && !a.is_z2()) CHECK((c.d(q - 1) * c.d(q)).is_zero());
      }
    }
  }
}

TEST_CASE("builtin: named examples and unions", "[gcomplex]") {
  CHECK(builtin("point").vertex_count() == 1);
  auto cr = fixed_subcomplex(builtin("circle-reflection"));
  CHECK(cr.vertex_count() == 2);
  CHECK(cr.count(1) == 0);
  CHECK(fixed_subcomplex(builtin("sphere-octahedron-antipodal")).is_empty());
  CHECK_THROWS_AS(builtin("no-such-space"), std::invalid_argument);

  auto u = builtin_info("circle-reflection+free-pair");
  CHECK(validate(u.complex).ok);
  CHECK(u.complex.vertex_count() == 6);
  CHECK(betti_z2(fixed_subcomplex(u.complex)) == std::vector<std::size_t>{2});

  // Integral homology of the trivial-action surfaces.
  auto kc = chain_complex(builtin("klein-bottle-trivial"), CoeffSystem::integral(0));
  CHECK(ordinary_homology(kc, 1).group() == FGAbelianGroup(1, {2}));
  CHECK(ordinary_homology(kc, 2).group().is_trivial());
  auto rc = chain_complex(builtin("rp2-trivial"), CoeffSystem::integral(0));
  CHECK(ordinary_homology(rc, 1).group() == FGAbelianGroup(0, {2}));
}

TEST_CASE("subdivision preserves the homology of the fixed set", "[gcomplex][property]") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto x = builtin(name);
    auto sd = barycentric_subdivide(x);
    REQUIRE(validate(sd).ok);
    CHECK(sd.euler_characteristic() == x.euler_characteristic());
    auto f = fixed_subcomplex(x), g = fixed_subcomplex(sd);
    auto cf = chain_complex(f, CoeffSystem::integral(0)), cg = chain_complex(g, CoeffSystem::integral(0));
    for (int q = 0; q <= std::max(f.dimension(), g.dimension()); ++q)
      CHECK(ordinary_homology(cf, q).group() == ordinary_homology(cg, q).group());
  }
}

TEST_CASE("GMap chain maps commute with boundaries", "[gcomplex]") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto x = builtin(name);
    for (const auto& f : {fixed_inclusion(x), constant_map(x), identity_map(x)})
      for (int q = 1; q <= f.source().dimension(); ++q)
        CHECK(boundary_matrix(f.target(), q) * f.chain_map(q) == f.chain_map(q - 1) * boundary_matrix(f.source(), q));
  }
  CHECK_THROWS_AS(GMap(builtin("free-pair"), point_complex(), {0, 1}), std::invalid_argument);
  // Swap of the free pair onto itself is not equivariant-compatible with the identity target involution.
  CHECK_THROWS_AS(GMap(builtin("free-pair"), GComplex::with_trivial_action(2, {}), {0, 1}), std::invalid_argument);
}

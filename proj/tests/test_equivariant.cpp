#include <catch_amalgamated.hpp>

#include "eqhom/builtins.hpp"
#include "eqhom/equivariant.hpp"

using namespace eqhom;

namespace {

const std::vector<CoeffSystem> kCoeffs = {CoeffSystem::z2(), CoeffSystem::integral(0), CoeffSystem::integral(1)};

EqSpacePtr space(const std::string& name) { return EqSpace::create(builtin(name)); }

FGAbelianGroup Z() { return FGAbelianGroup::free_abelian(1); }
FGAbelianGroup Z2() { return FGAbelianGroup::elementary(1); }
FGAbelianGroup zero() { return FGAbelianGroup(); }

const std::vector<std::string> kSmall = {"point",
                                         "free-pair",
                                         "circle-antipodal",
                                         "circle-reflection",
                                         "sphere-octahedron-antipodal",
                                         "sphere-octahedron-reflection",
                                         "rp2-trivial"};

}  // namespace

TEST_CASE("total complex: point", "[equivariant]") {
  auto pt = point_complex();
  TotalComplex t(pt, CoeffSystem::integral(0));
  CHECK(t.rank(1) == 0);
  for (int p = 0; p >= -4; --p) CHECK(t.rank(p) == 1);
  // Horizontal maps 1 - σ, 1 + σ, ... on a fixed point: 0, 2, 0, 2.
  CHECK(t.differential(0)(0, 0) == 0);
  CHECK(t.differential(-1)(0, 0) == 2);
  CHECK(t.differential(-2)(0, 0) == 0);

  TotalComplex c(t.chains(), Variance::cohomology);
  CHECK(c.rank(-1) == 0);
  CHECK(c.differential(0)(0, 0) == 0);
  CHECK(c.differential(1)(0, 0) == 2);
  CHECK(c.differential(2)(0, 0) == 0);
}

TEST_CASE("total complex: D squares to zero", "[equivariant][property]") {
  for (const auto& name : builtin_names()) {
    auto x = builtin(name);
    for (const auto& a : kCoeffs)
      for (auto v : {Variance::homology, Variance::cohomology}) {
        TotalComplex t(x, a, v);
        const int lo = v == Variance::homology ? -4 : 0;
        const int hi = v == Variance::homology ? x.dimension() : x.dimension() + 4;
        for (int p = lo; p <= hi; ++p) {
          INFO(name << " " << a.name() << " p = " << p);
          IntMatrix dd = t.differential(t.next(p)) * t.differential(p);
          if (a.is_z2()) dd = reduce_mod2(dd);
          CHECK(dd.is_zero());
        }
      }
  }
}

TEST_CASE("equivariant homology of a point", "[equivariant]") {
  auto pt = space("point");
  for (int p = 0; p >= -6; --p) {
    INFO("p = " << p);
    CHECK(eq_homology(*pt, CoeffSystem::z2(), p) == Z2());
    CHECK(eq_homology(*pt, CoeffSystem::integral(0), p) == (p == 0 ? Z() : (p % 2 == 0 ? Z2() : zero())));
    CHECK(eq_homology(*pt, CoeffSystem::integral(1), p) == (p % 2 != 0 ? Z2() : zero()));
  }
  CHECK(eq_homology(*pt, CoeffSystem::integral(0), 1) == zero());
  for (int n = 0; n <= 6; ++n) {
    INFO("n = " << n);
    CHECK(eq_cohomology(*pt, CoeffSystem::z2(), n) == Z2());
    CHECK(eq_cohomology(*pt, CoeffSystem::integral(0), n) == group_cohomology(GModule::integers(0), n));
    CHECK(eq_cohomology(*pt, CoeffSystem::integral(1), n) == group_cohomology(GModule::integers(1), n));
  }
}

TEST_CASE("group cohomology: examples", "[equivariant]") {
  CHECK(group_cohomology(GModule::integers(0), 0) == Z());
  CHECK(group_cohomology(GModule::integers(0), 1) == zero());
  CHECK(group_cohomology(GModule::integers(0), 2) == Z2());
  CHECK(group_cohomology(GModule::integers(1), 0) == zero());
  CHECK(group_cohomology(GModule::integers(1), 1) == Z2());
  CHECK(group_cohomology(GModule::integers(1), 2) == zero());
  CHECK(group_cohomology(GModule::z2(), 3) == Z2());

  // Z[G]: cohomologically trivial.
  IntMatrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  GModule regular{FGAbelianGroup::free_abelian(2), swap};
  CHECK(group_cohomology(regular, 0) == Z());
  for (int p = 1; p <= 4; ++p) CHECK(group_cohomology(regular, p) == zero());

  // Z/4 with σ = -1: invariants {0, 2}; H^1 = ker(1+σ)/im(1-σ) = Z/4 / 2Z/4.
  GModule z4{FGAbelianGroup::elementary(1, 4), IntMatrix::identity(1).scaled(-1)};
  CHECK(group_cohomology(z4, 0) == Z2());
  CHECK(group_cohomology(z4, 1) == Z2());
  CHECK(group_cohomology(z4, 2) == Z2());

  IntMatrix bad = IntMatrix::identity(1).scaled(2);
  CHECK_THROWS_AS(group_cohomology(GModule{Z(), bad}, 0), std::invalid_argument);
}

TEST_CASE("equivariant homology: free and reflection examples", "[equivariant]") {
  auto fp = space("free-pair");
  for (const auto& a : kCoeffs) {
    CHECK(eq_homology(*fp, a, 0) == (a.is_z2() ? Z2() : Z()));
    for (int p = -1; p >= -4; --p) CHECK(eq_homology(*fp, a, p).is_trivial());
  }

  // Free action: H_p(X; G, Z/2) = H_p(X/G, Z/2) = H_p(RP^2, Z/2).
  auto sa = space("sphere-octahedron-antipodal");
  for (int p = 0; p <= 2; ++p) CHECK(eq_homology(*sa, CoeffSystem::z2(), p) == Z2());
  CHECK(eq_homology(*sa, CoeffSystem::z2(), -1).is_trivial());

  auto cr = space("circle-reflection");
  CHECK(eq_homology(*cr, CoeffSystem::z2(), 1).f2_dimension() == 1);
  CHECK(eq_homology(*cr, CoeffSystem::z2(), 0).f2_dimension() == 2);
  for (int p = -1; p >= -4; --p) CHECK(eq_homology(*cr, CoeffSystem::z2(), p).f2_dimension() == 2);
}

TEST_CASE("cache returns the same object", "[equivariant]") {
  auto x = space("circle-reflection");
  const auto& a = x->homology(CoeffSystem::integral(1), -2);
  const auto& b = x->homology(CoeffSystem::integral(1), -2);
  CHECK(&a == &b);
  CHECK(x->fixed()->complex().vertex_count() == 2);
  CHECK(x->fixed() == x->fixed());
  CHECK_THROWS_AS(EqSpace::create(GComplex(2, {{0, 1}}, {1, 0})), std::invalid_argument);
}

TEST_CASE("edge morphisms land in the invariants", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    for (const auto& a : kCoeffs)
      for (int p = 0; p <= x->dimension(); ++p) {
        INFO(name << " " << a.name() << " p = " << p);
        CHECK(compare_with_invariants(edge_morphism(*x, a, p), homology_module(*x, a, p)).inside);
        CHECK(compare_with_invariants(cohomology_edge_morphism(*x, a, p), cohomology_module(*x, a, p)).inside);
      }
  }
  // Top edge of the free circle over Z: the fundamental class lifts, H_1(X)^G = Z.
  auto ca = space("circle-antipodal");
  CHECK(edge_surjective(*ca, CoeffSystem::integral(0), 1));
}

TEST_CASE("long exact sequences are exact", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    for (const auto& a : kCoeffs) {
      INFO(name << " " << a.name());
      auto r = les_edge(*x, a, -3, x->dimension(), false);
      CHECK(r.exact());
      CHECK(r.checked_nodes() == r.nodes.size() - 2);
    }
    for (int k : {0, 1}) {
      INFO(name << " k = " << k);
      CHECK(les_coeff(*x, k, -3, x->dimension(), false).exact());
    }
  }
}

TEST_CASE("les: failure names the node", "[equivariant]") {
  ExactSequenceReport r;
  try {
    detail::SequenceBuilder b("demo");
    b.node("A", Z());
    b.map("zero", GroupHom::zero(Z(), Z()));
    b.node("B", Z());
    b.map("zero", GroupHom::zero(Z(), Z()));
    b.node("C", Z());
    b.finish(true);
    FAIL("no exception");
  } catch (const ExactnessFailure& e) {
    CHECK(std::string(e.what()).find("at B") != std::string::npos);
    CHECK_FALSE(e.report().exact());
  }
}

TEST_CASE("s is an isomorphism below the fixed-set range", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    for (const auto& a : kCoeffs)
      for (int p = -1; p >= -3; --p) {
        INFO(name << " " << a.name() << " p = " << p);
        CHECK(s_map(*x, a, p).is_isomorphism());
      }
  }
}

TEST_CASE("parity: H_p(Z(k)) = H_{p-2}(Z(k)) below zero, and Z/2 groups agree with the fixed set", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    auto t = fixed_homology_z2(*x);
    for (int p = -1; p >= -3; --p) {
      INFO(name << " p = " << p);
      CHECK(eq_homology(*x, CoeffSystem::z2(), p).f2_dimension() == t.group.generator_count());
      for (int k : {0, 1})
        CHECK(eq_homology(*x, CoeffSystem::integral(k), p) == eq_homology(*x, CoeffSystem::integral(k), p - 2));
    }
  }
}

TEST_CASE("rho: localization and compatibility with s", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    const CoeffSystem z2 = CoeffSystem::z2();
    for (int n = x->dimension(); n >= -2; --n) {
      INFO(name << " n = " << n);
      auto r = rho(*x, z2, n);
      if (n < 0) CHECK(r.map.is_isomorphism());
      CHECK(rho(*x, z2, n - 1).map.after(s_map(*x, z2, n)) == r.map);
      for (int k : {0, 1}) {
        const CoeffSystem a = CoeffSystem::integral(k);
        CHECK(rho(*x, a, n).map == r.map.after(mod2_map(*x, a, n)));
      }
    }
  }
  // On a point ρ sends the generator of H_0(pt; G, Z/2) to the point class.
  auto pt = space("point");
  CHECK(rho(*pt, CoeffSystem::z2(), 0).map.matrix() == IntMatrix::identity(1));
}

TEST_CASE("beta: trivial action and point", "[equivariant]") {
  auto pt = space("point");
  for (int n = 0; n <= 3; ++n) CHECK(beta(*pt, CoeffSystem::z2(), n).map.matrix() == IntMatrix::identity(1));
  auto fp = space("free-pair");
  CHECK(beta(*fp, CoeffSystem::z2(), 0).map.target().is_trivial());
}

TEST_CASE("degree maps", "[equivariant]") {
  auto pt = space("point");
  CHECK(equivariant_degree_map(*pt, CoeffSystem::integral(0)).matrix() == IntMatrix::identity(1));
  auto fp = space("free-pair");
  auto d = equivariant_degree_map(*fp, CoeffSystem::integral(0));
  CHECK(d.matrix()(0, 0) == 2);
  CHECK(degree_map(*fp, CoeffSystem::integral(0)).is_surjective());
  CHECK_THROWS_AS(equivariant_degree_map(*fp, CoeffSystem::integral(1)), std::invalid_argument);
  auto cr = space("circle-reflection");
  CHECK(fixed_degree_map(*cr).matrix() == IntMatrix::from_rows({{1, 1}}, 2));
}

TEST_CASE("pushforward commutes with the edge morphism", "[equivariant][property]") {
  auto pt = space("point");
  for (const auto& name : kSmall) {
    auto x = space(name);
    auto c = constant_map(x->complex());
    auto id = identity_map(x->complex());
    for (const auto& a : kCoeffs)
      for (int p = 0; p >= -2; --p) {
        INFO(name << " " << a.name() << " p = " << p);
        CHECK(pushforward_map(id, *x, *x, a, p) == GroupHom::identity(eq_homology(*x, a, p)));
        auto f = pushforward_map(c, *x, *pt, a, p);
        if (p == 0)
          CHECK(edge_morphism(*pt, a, 0).after(f) == ordinary_pushforward_map(c, *x, *pt, a, 0).after(edge_morphism(*x, a, 0)));
        CHECK(s_map(*pt, a, p).after(f) == pushforward_map(c, *x, *pt, a.shifted(1), p - 1).after(s_map(*x, a, p)));
      }
  }
}

TEST_CASE("fundamental classes", "[equivariant]") {
  SECTION("free circle: orientation preserving") {
    auto fc = fundamental_class(space("circle-antipodal"), Ring::Z, 1);
    CHECK(fc.orientation_preserving);
    CHECK(fc.coeff == CoeffSystem::integral(0));
    CHECK(edge_morphism(*fc.mu.space, fc.coeff, 1).apply(fc.mu.coordinates()) == std::vector<Integer>{1});
  }
  SECTION("sphere with a reflection: orientation reversing, restricts to the equator") {
    auto fc = fundamental_class(space("sphere-octahedron-reflection"), Ring::Z, 2);
    CHECK_FALSE(fc.orientation_preserving);
    CHECK(fc.coeff == CoeffSystem::integral(1));
    auto parts = restrict_rho_of_fundamental_class(fc);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].dimension == 1);
    CHECK(parts[0].equals_fundamental_class);
  }
  SECTION("circle reflection: each fixed point is hit") {
    auto fc = fundamental_class(space("circle-reflection"), Ring::Z, 1);
    auto parts = restrict_rho_of_fundamental_class(fc);
    REQUIRE(parts.size() == 2);
    for (const auto& c : parts) CHECK(c.equals_fundamental_class);
  }
  SECTION("projective plane over Z/2") {
    auto x = space("rp2-trivial");
    CHECK_THROWS_AS(fundamental_class(x, Ring::Z, 2), std::domain_error);
    auto fc = fundamental_class(x, Ring::Z2, 2);
    CHECK(fc.coeff.is_z2());
    auto parts = restrict_rho_of_fundamental_class(fc);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].equals_fundamental_class);
  }
}

TEST_CASE("bockstein on the fixed set", "[equivariant]") {
  // RP^2: Sq^1 : H_2 -> H_1 is nonzero, H_1 -> H_0 is zero.
  auto x = space("rp2-trivial");
  CHECK_FALSE(z2_bockstein(*x, 1).is_zero());
  CHECK(z2_bockstein(*x, 0).is_zero());
  auto b = graded_bockstein(*x);
  CHECK(b.after(b).is_zero());
}

TEST_CASE("rho: parity isomorphisms in negative degrees", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    if (x->fixed_set_empty()) continue;
    for (int k : {0, 1})
      for (int n = -1; n >= -4; --n) {
        INFO(name << " k = " << k << " n = " << n);
        auto r = rho(*x, CoeffSystem::integral(k), n);
        auto part = (n + k) % 2 == 0 ? r.even() : r.odd();
        CHECK(part.is_isomorphism());
      }
  }
}

TEST_CASE("rho: compatibility with the Bockstein", "[equivariant][property]") {
  for (const auto& name : kSmall) {
    auto x = space(name);
    if (x->fixed_set_empty()) continue;
    auto t = fixed_homology_z2(*x);
    const std::size_t g = t.group.generator_count();
    IntMatrix b = graded_bockstein(*x).matrix();
    for (int k : {0, 1})
      for (int n = x->dimension() - 1; n >= -3; --n) {
        INFO(name << " k = " << k << " n = " << n);
        const bool even = (n + k) % 2 == 0;
        auto keep = [&](int q) { return (q % 2 == 0) == even; };
        IntMatrix other(g, g);
        for (int q = 0; q <= t.top_degree(); ++q)
          if (!keep(q))
            for (std::size_t i = t.offsets[static_cast<std::size_t>(q)]; i < t.offsets[static_cast<std::size_t>(q) + 1]; ++i)
              other(i, i) = 1;
        IntMatrix proj = t.projection(keep).matrix();
        IntMatrix upper = rho(*x, CoeffSystem::z2(), n + 1).map.matrix();
        IntMatrix lhs = proj * rho(*x, CoeffSystem::integral(k), n).map.matrix() * bockstein_map(*x, k, n + 1).matrix();
        IntMatrix rhs = proj * (IntMatrix::identity(g) + b * other) * upper;
        CHECK(reduce_mod2(lhs) == reduce_mod2(rhs));
      }
  }
}

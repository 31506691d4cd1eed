#include <catch_amalgamated.hpp>

#include "eqhom/homology.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

using namespace eqhom;

namespace {

IntMatrix make(std::vector<std::vector<long>> rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

// Cofactor determinant; only used on tiny matrices.
Integer det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(i - 1, cc++) = a(i, c);
    Integer term = a(0, j) * det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

// Oracle: d_1 ... d_k = gcd of all k x k minors.
std::vector<Integer> invariant_factors_by_minors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer previous = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(a.rows(), k, rs);
    subsets(a.cols(), k, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(r[i], c[j]);
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(det(sub)));
      }
    if (g.is_zero()) break;
    out.push_back(g / previous);
    previous = g;
  }
  return out;
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix w = IntMatrix::identity(n);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> idx(0, n ? n - 1 : 0);
  for (int step = 0; step < 12 && n > 1; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i != j) w.add_row_multiple(i, j, coef(rng));
  }
  return w;
}

// Rational rank by fraction-free elimination, independent of the SNF code.
std::size_t rational_rank(IntMatrix a) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(piv, rank);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      Integer f = a(i, col), p = a(rank, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) * p - a(rank, j) * f;
    }
    ++rank;
  }
  return rank;
}

// Boundary of the 4-gon with vertices 0..3 and edges {0,1},{0,3},{1,2},{2,3} (ascending orientation).
IntMatrix square_boundary() {
  return make({{-1, -1, 0, 0}, {1, 0, -1, 0}, {0, 0, 1, -1}, {0, 1, 0, 1}});
}

}  // namespace

TEST_CASE("smith normal form: frozen examples", "[exact-linalg]") {
  SECTION("zero 1x1") {
    auto snf = smith_normal_form(make({{0}}));
    CHECK(snf.D == make({{0}}));
    CHECK(snf.rank == 0);
  }
  SECTION("identity") {
    auto snf = smith_normal_form(IntMatrix::identity(3));
    CHECK(snf.D == IntMatrix::identity(3));
  }
  SECTION("[[2,4],[0,6]] -> diag(2,6), matching the gcd-of-minors oracle") {
    IntMatrix m = make({{2, 4}, {0, 6}});
    auto oracle = invariant_factors_by_minors(m);
    REQUIRE(oracle == std::vector<Integer>{2, 6});
    auto snf = smith_normal_form(m);
    CHECK(snf.D == make({{2, 0}, {0, 6}}));
  }
  SECTION("empty matrices") {
    auto snf = smith_normal_form(IntMatrix(0, 3));
    CHECK(snf.rank == 0);
    CHECK(snf.V.rows() == 3);
    auto snf2 = smith_normal_form(IntMatrix(2, 0));
    CHECK(snf2.U == IntMatrix::identity(2));
  }
}

TEST_CASE("smith normal form: decomposition invariants on random matrices", "[exact-linalg][property]") {
  std::mt19937 rng(20261018);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IntMatrix m = random_matrix(rng, r, c, -6, 6);
    auto snf = smith_normal_form(m);
    INFO("M = " << m);
    CHECK(snf.U * m * snf.V == snf.D);
    CHECK(snf.U * snf.U_inverse == IntMatrix::identity(r));
    CHECK(snf.V * snf.V_inverse == IntMatrix::identity(c));
    // Reconstruction U^{-1} D V^{-1} == M.
    CHECK(snf.U_inverse * snf.D * snf.V_inverse == m);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(snf.D(i, j).is_zero());
    auto d = snf.divisors();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] > 0);
      if (i > 0) CHECK((d[i] % d[i - 1]).is_zero());
    }
    CHECK(d == invariant_factors_by_minors(m));
  }
}

TEST_CASE("smith normal form is deterministic", "[exact-linalg]") {
  IntMatrix m = make({{3, 5, 7}, {2, 4, 6}, {9, 1, 4}});
  auto a = smith_normal_form(m), b = smith_normal_form(m);
  CHECK(a.U == b.U);
  CHECK(a.V == b.V);
}

TEST_CASE("smith normal form copes with entries beyond 64 bits", "[exact-linalg]") {
  IntMatrix m(2, 2);
  Integer big = Integer(1) << 80;
  m(0, 0) = big * 3;
  m(0, 1) = big * 5;
  m(1, 0) = big * 7;
  m(1, 1) = big * 11;
  auto snf = smith_normal_form(m);
  CHECK(snf.D(0, 0) == big);
  CHECK(snf.D(1, 1) == big * 2);
  CHECK(snf.U * m * snf.V == snf.D);
}

TEST_CASE("homology_at: frozen examples", "[exact-linalg]") {
  SECTION("zero differentials on Z^2") {
    auto h = homology_at<Integer>(IntMatrix(2, 0), IntMatrix(0, 2));
    CHECK(h.group() == FGAbelianGroup::free_abelian(2));
  }
  SECTION("Z --2--> Z") {
    auto h = homology_at<Integer>(make({{2}}), IntMatrix(0, 1));
    CHECK(h.group() == FGAbelianGroup(0, {2}));
  }
  SECTION("4-gon circle in degree 1") {
    auto h = homology_at<Integer>(IntMatrix(4, 0), square_boundary());
    CHECK(h.group() == FGAbelianGroup::free_abelian(1));
    // The generator is a fundamental cycle: every edge with coefficient +-1.
    for (const auto& x : h.generator(0)) CHECK(boost::multiprecision::abs(x) == 1);
    auto h0 = homology_at<Integer>(square_boundary(), IntMatrix(0, 4));
    CHECK(h0.group() == FGAbelianGroup::free_abelian(1));
  }
  SECTION("mod 2") {
    auto h = homology_at(make({{2}}), IntMatrix(0, 1), Ring::Z2);
    CHECK(h.group() == FGAbelianGroup::elementary(1));
  }
  SECTION("rejects a non-complex") {
    CHECK_THROWS_AS(homology_at<Integer>(make({{1}}), make({{1}})), std::invalid_argument);
  }
}

TEST_CASE("homology_at: invariance under unimodular change of basis", "[exact-linalg][property]") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    // Build d_out * d_in = 0 as d_in = K * X with K a kernel basis of d_out.
    IntMatrix d_out = random_matrix(rng, 2, 4, -3, 3);
    auto ker = Lattice<Integer>::kernel_of(d_out);
    IntMatrix d_in = ker.basis() * random_matrix(rng, ker.rank(), 3, -3, 3);
    auto h = homology_at<Integer>(d_in, d_out);

    IntMatrix w = random_unimodular(rng, 4);
    auto wsnf = smith_normal_form(w);  // W^{-1} = V * U for diagonal +-1
    IntMatrix w_inv = wsnf.V * wsnf.U;
    REQUIRE(w * w_inv == IntMatrix::identity(4));
    auto h2 = homology_at<Integer>(w * d_in, d_out * w_inv);
    CHECK(h.group() == h2.group());

    // Rank-nullity over Q.
    std::size_t rk_out = rational_rank(d_out), rk_in = rational_rank(d_in);
    CHECK(h.group().free_rank() == (4 - rk_out) - rk_in);
  }
}

TEST_CASE("induced_hom on the 4-gon circle", "[exact-linalg]") {
  auto h = HomologyGroup(homology_at<Integer>(IntMatrix(4, 0), square_boundary()));
  SECTION("identity") { CHECK(induced_hom(IntMatrix::identity(4), h, h) == GroupHom::identity(h.group())); }
  SECTION("zero") { CHECK(induced_hom(IntMatrix(4, 4), h, h).is_zero()); }
  SECTION("multiplication by two") {
    auto f = induced_hom(IntMatrix::identity(4).scaled(2), h, h);
    CHECK(f.matrix() == make({{2}}));
    CHECK(f.is_injective());
    CHECK_FALSE(f.is_surjective());
    CHECK(f.cokernel() == FGAbelianGroup(0, {2}));
  }
  SECTION("rejects a map that is not a chain map on cycles") {
    IntMatrix bad(4, 4);
    bad(0, 0) = 1;
    CHECK_THROWS_AS(induced_hom(bad, h, h), std::logic_error);
  }
}

TEST_CASE("induced_hom respects composition", "[exact-linalg][property]") {
  // Chain automorphisms of the 4-gon from its dihedral symmetries, scaled.
  // Vertex permutation -> signed edge permutation, computed by hand.
  auto h1 = HomologyGroup(homology_at<Integer>(IntMatrix(4, 0), square_boundary()));
  auto h0 = HomologyGroup(homology_at<Integer>(square_boundary(), IntMatrix(0, 4)));
  // Reflection fixing 0 and 2 (swap 1,3): edges {0,1}<->{0,3}, {1,2}<->{2,3} reversed: ({1,2}->{3,2} = -{2,3}).
  IntMatrix refl1 = make({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, -1, 0}});
  IntMatrix refl0 = make({{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}});
  REQUIRE(square_boundary() * refl1 == refl0 * square_boundary());
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> s(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    int a = s(rng), b = s(rng);
    IntMatrix f = refl1.scaled(a), g = (refl1 + IntMatrix::identity(4)).scaled(b);
    auto lhs = induced_hom(g * f, h1, h1);
    auto rhs = induced_hom(g, h1, h1).after(induced_hom(f, h1, h1));
    CHECK(lhs == rhs);
    IntMatrix f0 = refl0.scaled(a), g0 = (refl0 + IntMatrix::identity(4)).scaled(b);
    CHECK(induced_hom(g0 * f0, h0, h0) == induced_hom(g0, h0, h0).after(induced_hom(f0, h0, h0)));
  }
}

TEST_CASE("group homomorphisms: exactness and torsion", "[exact-linalg]") {
  FGAbelianGroup z = FGAbelianGroup::free_abelian(1), z2(0, {2});
  GroupHom times2(z, z, make({{2}}));
  GroupHom reduce(z, z2, make({{1}}));
  CHECK(is_exact_at(times2, reduce));
  CHECK_FALSE(is_exact_at(GroupHom::zero(z, z), reduce));
  CHECK_THROWS_AS(GroupHom(z2, z, make({{1}})), std::invalid_argument);
  CHECK(FGAbelianGroup::from_cyclic_orders({4, 6, 0, 1}) == FGAbelianGroup(1, {2, 12}));
  CHECK(FGAbelianGroup(2, {2, 2, 4}).to_string() == "Z^2 + Z/2^2 + Z/4");
}

#pragma once

#include "eqhom/builtins.hpp"
#include "eqhom/duality.hpp"
#include "eqhom/enriques.hpp"
#include "eqhom/galois_maximality.hpp"
#include "eqhom/io.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace eqhom::verify {

struct CheckResult {
  std::string module;
  std::string property;
  std::string input;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
  }
  std::size_t failed() const { return checks.size() - passed(); }

  Json to_json() const {
    Json j;
    j["suite"] = suite;
    j["total"] = checks.size();
    j["passed"] = passed();
    j["failed"] = failed();
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json o;
      o["module"] = c.module;
      o["property"] = c.property;
      o["input"] = c.input;
      o["passed"] = c.passed;
      if (!c.detail.empty()) o["detail"] = c.detail;
      arr.push_back(std::move(o));
    }
    j["checks"] = std::move(arr);
    return j;
  }
};

/// A unit of work producing checks; cases run in parallel, results keep case order.
struct Case {
  std::string module;
  std::string property;
  std::string input;
  std::function<void(std::vector<CheckResult>&)> run;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"core", "exactness", "gm", "duality", "all"};
  return names;
}

namespace detail {

class Recorder {
 public:
  Recorder(std::string module, std::string property, std::string input, std::vector<CheckResult>& out)
      : module_(std::move(module)), property_(std::move(property)), input_(std::move(input)), out_(out) {}

  void check(bool ok, const std::string& property, const std::string& detail = "") {
    out_.push_back({module_, property, input_, ok, ok ? "" : detail});
  }
  void check(bool ok) { check(ok, property_); }

 private:
  std::string module_, property_, input_;
  std::vector<CheckResult>& out_;
};

inline std::vector<CheckResult> run_cases(const std::vector<Case>& cases, unsigned jobs) {
  std::vector<std::vector<CheckResult>> slots(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        cases[i].run(slots[i]);
      } catch (const std::exception& e) {
        slots[i].push_back({cases[i].module, cases[i].property, cases[i].input, false, std::string("exception: ") + e.what()});
      }
    }
  };
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CheckResult> out;
  for (auto& s : slots) out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  return out;
}

inline const std::vector<CoeffSystem>& all_coeffs() {
  static const std::vector<CoeffSystem> c = {CoeffSystem::z2(), CoeffSystem::integral(0), CoeffSystem::integral(1)};
  return c;
}

inline std::string group_list(const std::vector<FGAbelianGroup>& gs) {
  std::string s;
  for (const auto& g : gs) s += (s.empty() ? "" : ", ") + g.to_string();
  return s;
}

// Fisher-Yates on a 64-bit engine; std distributions are implementation-defined.
inline std::vector<int> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng() % i]);
  return p;
}

inline GComplex relabel(const GComplex& x, const std::vector<int>& p) {
  std::vector<std::vector<int>> simplices;
  for (const auto& s : x.maximal_simplices()) {
    std::vector<int> t;
    for (int v : s) t.push_back(p[static_cast<std::size_t>(v)]);
    simplices.push_back(std::move(t));
  }
  std::vector<int> inv(x.vertex_count());
  for (std::size_t v = 0; v < x.vertex_count(); ++v)
    inv[static_cast<std::size_t>(p[v])] = p[static_cast<std::size_t>(x.involution()[v])];
  return GComplex(x.vertex_count(), std::move(simplices), std::move(inv));
}

}  // namespace detail

struct FuzzCase {
  std::string label;
  GComplex complex;
};

inline constexpr std::uint64_t kFuzzSeed = 0x5eed2024ULL;

/// Deterministic: a builtin (or a union of two) subdivided once with randomly relabeled vertices.
inline std::vector<FuzzCase> fuzz_cases(std::size_t count, std::uint64_t seed = kFuzzSeed) {
  std::mt19937_64 rng(seed);
  auto names = builtin_names();
  std::vector<FuzzCase> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = names[rng() % names.size()];
    if (rng() % 4 == 0) name += "+" + names[rng() % names.size()];
    GComplex sd = barycentric_subdivide(builtin(name));
    auto p = detail::random_permutation(sd.vertex_count(), rng);
    out.push_back({"fuzz#" + std::to_string(i) + ":" + name, detail::relabel(sd, p)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

inline void add_core_cases(std::vector<Case>& cases) {
  using detail::Recorder;
  cases.push_back({"exact-linalg", "snf decomposition", "seeded random 5x5", [](std::vector<CheckResult>& out) {
                     Recorder r("exact-linalg", "snf decomposition", "seeded random 5x5", out);
                     std::mt19937_64 rng(17);
                     bool ok = true;
                     for (int t = 0; t < 40 && ok; ++t) {
                       IntMatrix m(1 + rng() % 5, 1 + rng() % 5);
                       for (std::size_t i = 0; i < m.rows(); ++i)
                         for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = static_cast<long>(rng() % 19) - 9;
                       auto s = smith_normal_form(m);
                       ok = s.U * m * s.V == s.D && s.U_inverse * s.D * s.V_inverse == m;
                       auto d = s.divisors();
                       for (std::size_t i = 0; i + 1 < d.size(); ++i) ok = ok && (d[i + 1] % d[i]).is_zero() && d[i] > 0;
                     }
                     r.check(ok);
                   }});
  cases.push_back({"equivariant", "point axiom", "point", [](std::vector<CheckResult>& out) {
                     Recorder r("equivariant", "point axiom", "point", out);
                     auto pt = EqSpace::create(point_complex());
                     for (const auto& a : detail::all_coeffs()) {
                       GModule m = a.is_z2() ? GModule::z2() : GModule::integers(a.twist());
                       for (int p = 0; p >= -6; --p) {
                         const auto& h = eq_homology(*pt, a, p);
                         auto g = group_cohomology(m, -p);
                         r.check(h == g, "point axiom " + a.name() + " p=" + std::to_string(p), h.to_string() + " vs " + g.to_string());
                       }
                     }
                   }});
  for (const auto& name : builtin_names()) {
    cases.push_back({"gcomplex", "catalog", name, [name](std::vector<CheckResult>& out) {
                       Recorder r("gcomplex", "catalog", name, out);
                       auto info = builtin_info(name);
                       const auto& x = info.complex;
                       r.check(validate(x).ok, "validates");
                       r.check(x.euler_characteristic() == info.euler_characteristic, "euler characteristic");
                       auto f = EqSpace::create(fixed_subcomplex(x));
                       std::vector<std::size_t> betti;
                       for (int q = 0; q <= f->dimension(); ++q) betti.push_back(f->ordinary_homology(CoeffSystem::z2(), q).group().f2_dimension());
                       while (!betti.empty() && betti.back() == 0) betti.pop_back();
                       r.check(betti == info.fixed_betti_z2, "documented fixed set");
                       for (const auto& a : detail::all_coeffs()) {
                         auto c = chain_complex(x, a);
                         bool ok = true;
                         for (int q = 1; q <= x.dimension(); ++q) {
                           IntMatrix lhs = c.d(q) * c.s(q), rhs = c.s(q - 1) * c.d(q);
                           ok = ok && reduce_mod2(lhs - rhs).is_zero() && (a.is_z2() || lhs == rhs);
                           if (q >= 2) ok = ok && reduce_mod2(c.d(q - 1) * c.d(q)).is_zero() && (a.is_z2() || (c.d(q - 1) * c.d(q)).is_zero());
                         }
                         r.check(ok, "boundary squares to zero and commutes with the involution, " + a.name());
                       }
                       auto sd = barycentric_subdivide(x);
                       auto g = EqSpace::create(fixed_subcomplex(sd));
                       bool same = validate(sd).ok && sd.euler_characteristic() == x.euler_characteristic();
                       for (int q = 0; q <= std::max(f->dimension(), g->dimension()); ++q)
                         same = same && f->ordinary_homology(CoeffSystem::integral(0), q).group() ==
                                            g->ordinary_homology(CoeffSystem::integral(0), q).group();
                       r.check(same, "subdivision preserves the fixed set");
                     }});
    cases.push_back({"equivariant", "properties", name, [name](std::vector<CheckResult>& out) {
                       Recorder r("equivariant", "properties", name, out);
                       auto x = EqSpace::create(builtin(name));
                       const int dim = x->dimension();
                       for (const auto& a : detail::all_coeffs()) {
                         bool dd = true, inside = true;
                         for (int p = -4; p <= dim; ++p) {
                           const auto& t = x->total(a);
                           IntMatrix m = t.differential(t.next(p)) * t.differential(p);
                           dd = dd && (a.is_z2() ? reduce_mod2(m) : m).is_zero();
                         }
                         for (int p = 0; p <= dim; ++p)
                           inside = inside && compare_with_invariants(edge_morphism(*x, a, p), homology_module(*x, a, p)).inside;
                         r.check(dd, "total differential squares to zero, " + a.name());
                         r.check(inside, "edge image lies in the invariants, " + a.name());
                       }
                       const CoeffSystem z2 = CoeffSystem::z2();
                       bool rs = true;
                       for (int n = dim; n >= -2; --n) rs = rs && rho(*x, z2, n - 1).map.after(s_map(*x, z2, n)) == rho(*x, z2, n).map;
                       r.check(rs, "rho after s equals rho");
                       if (!x->fixed_set_empty()) {
                         for (int k : {0, 1})
                           for (int n = -1; n >= -4; --n) {
                             auto rh = rho(*x, CoeffSystem::integral(k), n);
                             auto part = (n + k) % 2 == 0 ? rh.even() : rh.odd();
                             r.check(part.is_isomorphism(),
                                     "parity isomorphism k=" + std::to_string(k) + " n=" + std::to_string(n));
                           }
                         auto t = fixed_homology_z2(*x);
                         const std::size_t g = t.group.generator_count();
                         IntMatrix b = graded_bockstein(*x).matrix();
                         bool ok = true;
                         for (int k : {0, 1})
                           for (int n = dim - 1; n >= -3; --n) {
                             const bool even = (n + k) % 2 == 0;
                             auto keep = [&](int q) { return (q % 2 == 0) == even; };
                             IntMatrix other(g, g);
                             for (int q = 0; q <= t.top_degree(); ++q)
                               if (!keep(q))
                                 for (std::size_t i = t.offsets[static_cast<std::size_t>(q)]; i < t.offsets[static_cast<std::size_t>(q) + 1]; ++i)
                                   other(i, i) = 1;
                             IntMatrix proj = t.projection(keep).matrix();
                             IntMatrix lhs = proj * rho(*x, CoeffSystem::integral(k), n).map.matrix() * bockstein_map(*x, k, n + 1).matrix();
                             IntMatrix rhs = proj * (IntMatrix::identity(g) + b * other) * rho(*x, z2, n + 1).map.matrix();
                             ok = ok && reduce_mod2(lhs) == reduce_mod2(rhs);
                           }
                         r.check(ok, "rho commutes with the Bockstein");
                       }
                       auto pt = EqSpace::create(point_complex());
                       auto c = constant_map(x->complex());
                       auto inc = x->inclusion();
                       bool nat = true;
                       for (const auto& a : detail::all_coeffs()) {
                         nat = nat && edge_morphism(*pt, a, 0).after(pushforward_map(c, *x, *pt, a, 0)) ==
                                          ordinary_pushforward_map(c, *x, *pt, a, 0).after(edge_morphism(*x, a, 0));
                         for (int p = dim; p >= -2; --p) {
                           nat = nat && rho(*pt, a, p).map.after(pushforward_map(c, *x, *pt, a, p)) ==
                                            fixed_pushforward_graded(c, *x, *pt).after(rho(*x, a, p).map);
                           if (!x->fixed_set_empty())
                             nat = nat && rho(*x, a, p).map.after(pushforward_map(inc, *x->fixed(), *x, a, p)) ==
                                              fixed_pushforward_graded(inc, *x->fixed(), *x).after(rho(*x->fixed(), a, p).map);
                         }
                       }
                       r.check(nat, "naturality of edge and rho");
                       if (x->dimension() >= 0 && name != "free-pair") {
                         const auto info = builtin_info(name);
                         if (info.manifold_dimension >= 0) {
                           const int d = info.manifold_dimension;
                           for (Ring ring : {Ring::Z2, Ring::Z}) {
                             if (ring == Ring::Z && !(x->ordinary_homology(CoeffSystem::integral(0), d).group() == FGAbelianGroup::free_abelian(1)))
                               continue;
                             auto fc = fundamental_class(x, ring, d);
                             auto e = edge_morphism(*x, fc.coeff, d);
                             auto cmp = compare_with_invariants(e, homology_module(*x, fc.coeff, d));
                             r.check(cmp.surjective && e.is_injective(),
                                     std::string("top edge is an isomorphism onto the invariants, ") + (ring == Ring::Z ? "Z" : "Z2"));
                             if (!x->fixed_set_empty()) {
                               bool all = true;
                               for (const auto& cr : restrict_rho_of_fundamental_class(fc)) all = all && cr.equals_fundamental_class;
                               r.check(all, std::string("rho of the fundamental class restricts to each fixed component, ") +
                                                (ring == Ring::Z ? "Z" : "Z2"));
                             }
                           }
                         }
                       }
                     }});
  }
  cases.push_back({"enriques", "classifier properties", "enumerate 3", [](std::vector<CheckResult>& out) {
                     Recorder r("enriques", "classifier properties", "enumerate 3", out);
                     bool alg = true, zgm = true, order = true, swap = true;
                     for (const auto& c : enriques::enumerate_types(3)) {
                       const auto& t = c.type;
                       alg = alg && ((c.h1.dim_h1_alg == c.h1.dim_h1) == t.orientable());
                       if (!t.empty() && c.gm.is_ZGM) zgm = zgm && c.gm.is_GM;
                       std::size_t l = 0;
                       for (const auto& d : c.brauer.group.torsion()) l += d == 4 ? 2 : 1;
                       const std::size_t s = t.component_count();
                       order = order && l == (t.empty() ? 1 : (t.orientable() ? 2 * s : 2 * s - 1));
                       auto sw = enriques::classify(t.swapped());
                       swap = swap && sw.gm.is_GM == c.gm.is_GM && sw.gm.is_ZGM == c.gm.is_ZGM && sw.brauer.group == c.brauer.group;
                     }
                     r.check(alg, "algebraic H1 equals H1 iff orientable");
                     r.check(zgm, "Z-GM implies GM");
                     r.check(order, "Brauer group order");
                     r.check(swap, "half swap symmetry");
                   }});
}

inline void add_exactness_cases(std::vector<Case>& cases) {
  for (const auto& name : builtin_names())
    cases.push_back({"equivariant", "long exact sequences", name, [name](std::vector<CheckResult>& out) {
                       detail::Recorder r("equivariant", "long exact sequences", name, out);
                       auto x = EqSpace::create(builtin(name));
                       const int hi = x->dimension() + 1;
                       for (const auto& a : detail::all_coeffs()) {
                         auto rep = les_edge(*x, a, -4, hi, false);
                         std::string bad;
                         for (const auto& n : rep.nodes)
                           if (n.checked && !n.exact) bad += (bad.empty() ? "" : ", ") + n.label;
                         r.check(rep.exact(), "edge sequence exact, " + a.name() + " (" + std::to_string(rep.checked_nodes()) + " nodes)",
                                 "not exact at " + bad);
                       }
                       for (int k : {0, 1}) {
                         auto rep = les_coeff(*x, k, -4, hi, false);
                         std::string bad;
                         for (const auto& n : rep.nodes)
                           if (n.checked && !n.exact) bad += (bad.empty() ? "" : ", ") + n.label;
                         r.check(rep.exact(), "coefficient sequence exact, k=" + std::to_string(k) + " (" +
                                                  std::to_string(rep.checked_nodes()) + " nodes)",
                                 "not exact at " + bad);
                       }
                     }});
}

inline constexpr std::size_t kFuzzCount = 100;

inline void add_gm_cases(std::vector<Case>& cases) {
  for (const auto& name : builtin_names())
    cases.push_back({"spectral-gm", "gm", name, [name](std::vector<CheckResult>& out) {
                       detail::Recorder r("spectral-gm", "gm", name, out);
                       auto x = EqSpace::create(builtin(name));
                       auto g = gm_report(*x);
                       const auto& q = g.inequalities;
                       auto sides = [](const Inequality& i) { return std::to_string(i.lhs) + " <= " + std::to_string(i.rhs); };
                       r.check(q.gm1.holds(), "GM1 " + sides(q.gm1));
                       r.check(q.gm2.holds(), "GM2 " + sides(q.gm2));
                       r.check(q.gm3.holds(), "GM3 " + sides(q.gm3));
                       r.check(g.gm_consistent(), std::string("is_GM=") + (g.is_GM ? "true" : "false") + " agrees with GM1 equality");
                       r.check(g.zgm_consistent(), std::string("is_ZGM=") + (g.is_ZGM ? "true" : "false") + " agrees with GM2 and GM3 equality");
                       if (name == "circle-reflection" || name == "torus-reflection") r.check(g.is_GM, "expected GM");
                       if (name == "sphere-octahedron-antipodal") r.check(!g.is_GM, "expected not GM");
                       bool periodic = true;
                       for (const auto& a : detail::all_coeffs()) periodic = periodic && e2_page(*x, a).periodic();
                       r.check(periodic, "E2 periodicity");
                       if (is_connected(*x))
                         for (auto v : {RhoVariant::zz, RhoVariant::even_z, RhoVariant::odd_z}) {
                           if (v != RhoVariant::even_z && x->fixed_set_empty()) continue;
                           auto c = rho_surjectivity_criteria(*x, v);
                           r.check(c.agree(), "rho criteria agree, " + to_string(v),
                                   std::string("criterion_zero=") + (c.criterion_zero ? "true" : "false") +
                                       " rho_surjective=" + (c.rho_surjective ? "true" : "false"));
                         }
                       if (!x->fixed_set_empty() && is_connected(*x)) {
                         auto w = witness_search(*x);
                         r.check(w.contract_holds(), std::string("witness contract (e2 ") + (w.e2_surjective ? "surjective" : "not surjective") + ")");
                       }
                     }});
  cases.push_back({"spectral-gm", "witness contract", "circle-reflection+free-pair", [](std::vector<CheckResult>& out) {
                     detail::Recorder r("spectral-gm", "witness contract", "circle-reflection+free-pair", out);
                     r.check(witness_search(*EqSpace::create(builtin("circle-reflection+free-pair"))).contract_holds());
                   }});
  cases.push_back({"spectral-gm", "witness search", "sphere-octahedron-antipodal+point", [](std::vector<CheckResult>& out) {
                     detail::Recorder r("spectral-gm", "witness search", "sphere-octahedron-antipodal+point", out);
                     auto w = witness_search(*EqSpace::create(builtin("sphere-octahedron-antipodal+point")));
                     r.check(!w.connected && !w.e2_surjective && !w.witness && w.exhaustive(),
                             "disconnected: exhaustive search finds no witness");
                   }});
  for (auto& fc : fuzz_cases(kFuzzCount))
    cases.push_back({"spectral-gm", "gm inequalities", fc.label, [fc](std::vector<CheckResult>& out) {
                       detail::Recorder r("spectral-gm", "gm inequalities", fc.label, out);
                       auto x = EqSpace::create(fc.complex);
                       auto q = gm_inequalities(*x);
                       r.check(q.hold(), "GM1-GM3 hold");
                       bool surj = true;
                       for (int p = 0; p <= x->dimension(); ++p) surj = surj && edge_surjective(*x, CoeffSystem::z2(), p);
                       r.check(surj == q.gm1.equality(), "edge surjectivity agrees with GM1 equality");
                     }});
}

inline void add_duality_cases(std::vector<Case>& cases) {
  for (const auto& name : builtin_names()) {
    const auto info = builtin_info(name);
    if (info.manifold_dimension < 0) continue;
    cases.push_back({"spectral-gm", "poincare", name, [name](std::vector<CheckResult>& out) {
                       detail::Recorder r("spectral-gm", "poincare", name, out);
                       const auto info = builtin_info(name);
                       auto x = EqSpace::create(info.complex);
                       const int d = info.manifold_dimension;
                       for (Ring ring : {Ring::Z2, Ring::Z}) {
                         if (ring == Ring::Z && !(x->ordinary_homology(CoeffSystem::integral(0), d).group() == FGAbelianGroup::free_abelian(1)))
                           continue;
                         auto rep = poincare_check(x, ring, d);
                         std::string bad;
                         for (const auto& e : rep.entries)
                           if (!e.match())
                             bad += "(i=" + std::to_string(e.i) + ",l=" + std::to_string(e.l) + ": " + e.cohomology.to_string() + " vs " +
                                    e.homology.to_string() + ")";
                         r.check(rep.ok(), std::string("duality types match, ") + (ring == Ring::Z ? "Z, k=" + std::to_string(rep.twist) : "Z2"), bad);
                       }
                     }});
  }
}

inline std::vector<Case> suite_cases(const std::string& suite) {
  std::vector<Case> cases;
  const bool all = suite == "all";
  if (all || suite == "core") add_core_cases(cases);
  if (all || suite == "exactness") add_exactness_cases(cases);
  if (all || suite == "gm") add_gm_cases(cases);
  if (all || suite == "duality") add_duality_cases(cases);
  if (cases.empty()) throw std::invalid_argument("unknown suite '" + suite + "' (expected core, exactness, gm, duality or all)");
  return cases;
}

/// jobs = 0 uses every hardware thread; the report does not depend on it.
inline SuiteReport run_suite(const std::string& suite, unsigned jobs = 0) {
  SuiteReport rep;
  rep.suite = suite;
  rep.checks = detail::run_cases(suite_cases(suite), jobs);
  return rep;
}

}  // namespace eqhom::verify

#include "eqhom.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace eqhom;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct Output {
  bool json = false;
};

struct Source {
  std::string path;
  std::string builtin;
};

struct Loaded {
  std::string label;
  EqSpacePtr space;
  std::string note;
};

Loaded load(const Source& s) {
  if (!s.builtin.empty() && !s.path.empty()) throw InputError("give either a complex file or --builtin, not both");
  if (!s.builtin.empty()) {
    try {
      return {s.builtin, EqSpace::create(builtin(s.builtin)), ""};
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (s.path.empty()) throw InputError("no input: give a complex file or --builtin NAME");
  auto l = load_complex(s.path);
  return {s.path, EqSpace::create(std::move(l.complex)), l.note};
}

CoeffSystem parse_coeff(const std::string& s) {
  if (s == "Z2") return CoeffSystem::z2();
  if (s == "Z") return CoeffSystem::integral(0);
  if (s == "Z1") return CoeffSystem::integral(1);
  throw InputError("--coeff: expected Z2, Z or Z1, got '" + s + "'");
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  auto bad = [&] { return InputError("--range: expected a..b with integers a <= b, got '" + s + "'"); };
  if (dots == std::string::npos) throw bad();
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    int lo = std::stoi(a, &used_a), hi = std::stoi(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || lo > hi) throw bad();
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

std::string echo(int argc, char** argv) {
  std::string s;
  for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
  return s;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// compute

struct ComputeArgs {
  Source source;
  std::string coeff = "Z2";
  std::string range;
  bool cohomology = false;
  bool gm = false;
};

Json gm_to_json(const EqSpace& x) {
  auto g = gm_report(x);
  const auto& q = g.inequalities;
  auto ineq = [](const Inequality& i) { return Json{{"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds()}, {"equality", i.equality()}}; };
  Json j;
  j["gm1"] = ineq(q.gm1);
  j["gm2"] = ineq(q.gm2);
  j["gm3"] = ineq(q.gm3);
  j["gm2_column_sum"] = q.gm2_column_sum;
  j["gm3_column_sum"] = q.gm3_column_sum;
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json{{"p", e.degree}, {"Z2", e.z2}, {"Z", e.plus}, {"Z1", e.minus}});
  j["edge_surjective"] = edges;
  j["is_GM"] = g.is_GM;
  j["is_ZGM"] = g.is_ZGM;
  if (is_connected(x)) {
    Json c = Json::object();
    for (auto v : {RhoVariant::zz, RhoVariant::even_z, RhoVariant::odd_z}) {
      if (v != RhoVariant::even_z && x.fixed_set_empty()) continue;
      auto r = rho_surjectivity_criteria(x, v);
      c[to_string(v)] = Json{{"criterion_zero", r.criterion_zero}, {"rho_surjective", r.rho_surjective}};
    }
    j["rho_criteria"] = c;
  }
  if (!x.fixed_set_empty()) {
    auto w = witness_search(x);
    Json wj{{"e2_surjective", w.e2_surjective}, {"search_dimension", w.search_dimension}, {"tried", w.tried}};
    wj["witness"] = w.witness ? vector_to_json(*w.witness) : Json(nullptr);
    j["witness_search"] = wj;
  }
  return j;
}

int cmd_compute(const ComputeArgs& a, const Output& out, const std::string& command) {
  auto [lo, hi] = parse_range(a.range);
  CoeffSystem coeff = parse_coeff(a.coeff);
  Loaded in = load(a.source);
  const EqSpace& x = *in.space;
  if (a.cohomology && lo < 0) throw InputError("--range: cohomology degrees start at 0");

  Json rows = Json::array();
  std::vector<std::vector<std::string>> table;
  for (int p = lo; p <= hi; ++p) {
    const auto& g = a.cohomology ? eq_cohomology(x, coeff, p) : eq_homology(x, coeff, p);
    Json row{{"degree", p}, {"group", group_to_json(g)}, {"group_string", g.to_string()}};
    std::string edge = "-";
    if (p >= 0 && p <= x.dimension()) {
      GroupHom e = a.cohomology ? cohomology_edge_morphism(x, coeff, p) : edge_morphism(x, coeff, p);
      GModule m = a.cohomology ? cohomology_module(x, coeff, p) : homology_module(x, coeff, p);
      auto cmp = compare_with_invariants(e, m);
      auto target = a.cohomology ? x.ordinary_cohomology(coeff, p).group() : x.ordinary_homology(coeff, p).group();
      row["edge"] = Json{{"target", group_to_json(target)},
                         {"target_string", target.to_string()},
                         {"image_in_invariants", cmp.inside},
                         {"onto_invariants", cmp.surjective}};
      edge = std::string(cmp.surjective ? "onto" : "not onto") + " invariants of " + target.to_string();
    } else {
      row["edge"] = nullptr;
    }
    rows.push_back(row);
    table.push_back({std::to_string(p), g.to_string(), edge});
  }

  if (out.json) {
    Json j;
    j["command"] = command;
    j["input"] = in.label;
    if (!in.note.empty()) j["note"] = in.note;
    j["coeff"] = coeff.name();
    j["kind"] = a.cohomology ? "cohomology" : "homology";
    j["degrees"] = rows;
    if (a.gm) j["gm"] = gm_to_json(x);
    print_json(j);
    return kOk;
  }
  if (!in.note.empty()) std::cout << "# " << in.note << "\n";
  std::cout << "# " << in.label << " " << (a.cohomology ? "H^p(X; G, " : "H_p(X; G, ") << coeff.name() << ")\n";
  std::size_t w = 5;
  for (const auto& r : table) w = std::max(w, r[1].size());
  std::cout << "p\t" << std::left << std::setw(static_cast<int>(w)) << "group" << "\tedge\n";
  for (const auto& r : table) std::cout << r[0] << "\t" << std::setw(static_cast<int>(w)) << r[1] << "\t" << r[2] << "\n";
  if (a.gm) {
    Json g = gm_to_json(x);
    for (const char* k : {"gm1", "gm2", "gm3"})
      std::cout << k << "\t" << g[k]["lhs"] << " <= " << g[k]["rhs"] << (g[k]["equality"].get<bool>() ? "\tequality" : "") << "\n";
    std::cout << "is_GM\t" << g["is_GM"] << "\nis_ZGM\t" << g["is_ZGM"] << "\n";
    if (g.contains("rho_criteria"))
      for (const auto& [k, v] : g["rho_criteria"].items())
        std::cout << "rho " << k << "\tcriterion_zero=" << v["criterion_zero"] << "\trho_surjective=" << v["rho_surjective"] << "\n";
    if (g.contains("witness_search"))
      std::cout << "witness\te2_surjective=" << g["witness_search"]["e2_surjective"] << "\twitness=" << g["witness_search"]["witness"].dump() << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  std::string path;
  std::optional<std::size_t> enumerate;
};

std::vector<std::string> classifier_row(const enriques::ClassifierOutput& c) {
  return {c.type.to_string(),
          std::to_string(c.h1.dim_h1),
          std::to_string(c.h1.dim_h1_alg),
          c.gm.empty_real_part ? "n/a" : (c.gm.is_GM ? "true" : "false"),
          c.gm.empty_real_part ? "n/a" : (c.gm.is_ZGM ? "true" : "false"),
          c.brauer.group.to_string()};
}

void print_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::cout << std::left << std::setw(static_cast<int>(i + 1 < r.size() ? w[i] : 0)) << r[i];
      if (i + 1 < r.size()) std::cout << "  ";
    }
    std::cout << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

int cmd_classify(const ClassifyArgs& a, const Output& out, const std::string& command) {
  const std::vector<std::string> header = {"type", "dim_h1", "dim_h1_alg", "is_GM", "is_ZGM", "brauer"};
  if (a.enumerate) {
    if (!a.path.empty()) throw InputError("give either a type file or --enumerate, not both");
    if (*a.enumerate > enriques::kMaxEnumeratedComponents)
      throw InputError("--enumerate: at most " + std::to_string(enriques::kMaxEnumeratedComponents) + " components");
    auto all = enriques::enumerate_types(*a.enumerate);
    if (out.json) {
      Json j;
      j["command"] = command;
      j["max_components"] = *a.enumerate;
      Json table = Json::object();
      for (const auto& c : all) table[c.type.canonical_string()] = classifier_to_json(c);
      j["types"] = table;
      print_json(j);
      return kOk;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : all) rows.push_back(classifier_row(c));
    print_table(header, rows);
    return kOk;
  }
  if (a.path.empty()) throw InputError("no input: give a type file or --enumerate S");
  auto c = enriques::classify(load_type(a.path));
  if (out.json) {
    Json j;
    j["command"] = command;
    j["input"] = a.path;
    j["canonical"] = c.type.canonical_string();
    j["result"] = classifier_to_json(c);
    print_json(j);
    return kOk;
  }
  print_table(header, {classifier_row(c)});
  std::cout << "gm rule: " << c.gm.rule << "\nbrauer rule: " << c.brauer.rule << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  unsigned jobs = 0;
};

int cmd_verify(const VerifyArgs& a, const Output& out, const std::string& command) {
  const auto& names = verify::suite_names();
  if (std::find(names.begin(), names.end(), a.suite) == names.end())
    throw InputError("unknown suite '" + a.suite + "' (expected core, exactness, gm, duality or all)");
  auto rep = verify::run_suite(a.suite, a.jobs);
  if (out.json) {
    Json j;
    j["command"] = command;
    Json body = rep.to_json();
    for (const auto& [k, v] : body.items()) j[k] = v;
    print_json(j);
  } else {
    for (const auto& c : rep.checks)
      if (!c.passed) std::cout << "FAIL " << c.module << " | " << c.property << " | " << c.input << (c.detail.empty() ? "" : " | " + c.detail) << "\n";
    std::cout << rep.suite << ": " << rep.passed() << "/" << rep.checks.size() << " checks passed, " << rep.failed() << " failed\n";
  }
  return rep.failed() == 0 ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// e2

struct E2Args {
  Source source;
  std::string coeff = "Z2";
  int depth = -1;
};

int cmd_e2(const E2Args& a, const Output& out, const std::string& command) {
  CoeffSystem coeff = parse_coeff(a.coeff);
  Loaded in = load(a.source);
  auto page = e2_page(*in.space, coeff, a.depth);
  if (out.json) {
    Json j;
    j["command"] = command;
    j["input"] = in.label;
    if (!in.note.empty()) j["note"] = in.note;
    j["coeff"] = coeff.name();
    j["depth"] = page.depth();
    j["dimension"] = page.dimension();
    Json entries = Json::array();
    for (int q = 0; q <= page.dimension(); ++q)
      for (int p = 0; p >= -page.depth(); --p)
        entries.push_back(Json{{"p", p}, {"q", q}, {"group", group_to_json(page.at(p, q))}, {"group_string", page.at(p, q).to_string()}});
    j["entries"] = entries;
    j["periodic"] = page.periodic();
    print_json(j);
    return kOk;
  }
  if (!in.note.empty()) std::cout << "# " << in.note << "\n";
  std::cout << "# E2 page of " << in.label << " with " << coeff.name() << " coefficients, rows q, columns p\n";
  std::vector<std::string> header = {"q\\p"};
  for (int p = 0; p >= -page.depth(); --p) header.push_back(std::to_string(p));
  std::vector<std::vector<std::string>> rows;
  for (int q = page.dimension(); q >= 0; --q) {
    std::vector<std::string> r = {std::to_string(q)};
    for (int p = 0; p >= -page.depth(); --p) r.push_back(page.at(p, q).to_string());
    rows.push_back(r);
  }
  print_table(header, rows);
  return kOk;
}

void add_output_flags(CLI::App* sub, Output& out) {
  auto* j = sub->add_flag("--json", out.json, "JSON report");
  auto* t = sub->add_flag_callback("--text", [&out] { out.json = false; }, "aligned text report (default)");
  j->excludes(t);
}

void add_source(CLI::App* sub, Source& s) {
  sub->add_option("complex", s.path, "G-complex JSON file");
  sub->add_option("--builtin", s.builtin, "catalogued complex, e.g. torus-reflection or point+free-pair");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Z/2-equivariant homology of finite simplicial G-complexes"};
  app.require_subcommand(1);
  Output out;

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "equivariant groups over a degree range");
  add_source(compute, ca.source);
  compute->add_option("--coeff", ca.coeff, "Z2, Z or Z1")->capture_default_str();
  compute->add_option("--range", ca.range, "degrees a..b")->required()->allow_extra_args(false);
  compute->add_flag("--cohomology", ca.cohomology, "equivariant cohomology instead of homology");
  compute->add_flag("--gm", ca.gm, "append the GM report, rho criteria and witness search");
  add_output_flags(compute, out);

  ClassifyArgs cl;
  auto* classify = app.add_subcommand("classify", "real Enriques surface classifier");
  classify->add_option("type", cl.path, "type JSON file");
  classify->add_option("--enumerate", cl.enumerate, "tabulate every type with at most this many components");
  add_output_flags(classify, out);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", va.suite, "core, exactness, gm, duality or all")->capture_default_str();
  verify_cmd->add_option("--jobs", va.jobs, "worker threads, 0 for all cores")->capture_default_str();
  add_output_flags(verify_cmd, out);

  E2Args ea;
  auto* e2 = app.add_subcommand("e2", "render the E2 page");
  add_source(e2, ea.source);
  e2->add_option("--coeff", ea.coeff, "Z2, Z or Z1")->capture_default_str();
  e2->add_option("--depth", ea.depth, "number of columns left of p = 0 (default dim + 2)");
  add_output_flags(e2, out);

  // "--range -3..0": keep a negative range value attached to its option.
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  for (std::size_t i = args.size(); i-- > 1;)
    if (args[i] == "--range" && !args[i - 1].empty() && args[i - 1][0] == '-') {
      args[i] = "--range=" + args[i - 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) - 1);
      --i;
    }
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const std::string command = echo(argc, argv);
  try {
    if (*compute) return cmd_compute(ca, out, command);
    if (*classify) return cmd_classify(cl, out, command);
    if (*verify_cmd) return cmd_verify(va, out, command);
    if (*e2) return cmd_e2(ea, out, command);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kOk;
}

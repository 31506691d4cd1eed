#pragma once

#include "eqhom/enriques.hpp"
#include "eqhom/gcomplex.hpp"

#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqhom {

/// Malformed or invalid user input; the message names the source and the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON");
  }
}

inline const Json& field(const Json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) throw InputError(where + ": missing field '" + name + "'");
  return *it;
}

inline long long integer_value(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError(where + ": expected an integer");
  return v.get<long long>();
}

inline const Json& array_value(const Json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  return v;
}

}  // namespace detail

struct LoadedComplex {
  GComplex complex;
  bool subdivided = false;  ///< the input broke only the regularity condition and was subdivided once
  std::string note;
};

/**
 * {"vertices": n, "simplices": [[ids...], ...], "involution": [images of 0..n-1]}.
 * Inputs that only break regularity are subdivided once; anything else
 * raises InputError.
 */
inline LoadedComplex parse_complex(const std::string& text, const std::string& source = "<input>") {
  using namespace detail;
  Json j = parse_json(text, source);
  if (!j.is_object()) throw InputError(source + ": top level must be an object");
  long long n = integer_value(field(j, "vertices", source), source + ": vertices");
  if (n < 0) throw InputError(source + ": vertices: must be nonnegative");
  std::vector<std::vector<int>> simplices;
  const Json& sj = array_value(field(j, "simplices", source), source + ": simplices");
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string where = source + ": simplices[" + std::to_string(i) + "]";
    const Json& s = array_value(sj[i], where);
    if (s.empty()) throw InputError(where + ": empty simplex");
    std::vector<int> verts;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const std::string w = where + "[" + std::to_string(k) + "]";
      long long v = integer_value(s[k], w);
      if (v < 0 || v >= n) throw InputError(w + ": vertex " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
      verts.push_back(static_cast<int>(v));
    }
    auto sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError(where + ": repeated vertex");
    simplices.push_back(std::move(verts));
  }
  const Json& ij = array_value(field(j, "involution", source), source + ": involution");
  if (static_cast<long long>(ij.size()) != n)
    throw InputError(source + ": involution: has " + std::to_string(ij.size()) + " entries, expected " + std::to_string(n));
  std::vector<int> inv;
  for (std::size_t v = 0; v < ij.size(); ++v) {
    const std::string w = source + ": involution[" + std::to_string(v) + "]";
    long long x = integer_value(ij[v], w);
    if (x < 0 || x >= n) throw InputError(w + ": image " + std::to_string(x) + " out of range");
    inv.push_back(static_cast<int>(x));
  }

  LoadedComplex out;
  try {
    out.complex = GComplex(static_cast<std::size_t>(n), std::move(simplices), std::move(inv));
  } catch (const std::exception& e) {
    throw InputError(source + ": " + e.what());
  }
  auto report = validate(out.complex);
  if (report.ok) return out;
  if (!report.regularity_only) throw InputError(source + ": invalid G-complex: " + report.message);
  out.complex = barycentric_subdivide(out.complex);
  out.subdivided = true;
  out.note = "subdivided once: " + report.message;
  auto again = validate(out.complex);
  if (!again.ok) throw InputError(source + ": invalid after subdivision: " + again.message);
  return out;
}

inline LoadedComplex load_complex(const std::string& path) { return parse_complex(read_text_file(path), path); }

inline Json complex_to_json(const GComplex& x) {
  Json j;
  j["vertices"] = x.vertex_count();
  j["simplices"] = x.maximal_simplices();
  j["involution"] = x.involution();
  return j;
}

/// {"half1": [{"orientable": bool, "genus": int}, ...], "half2": [...]}
inline enriques::EnriquesType parse_type(const std::string& text, const std::string& source = "<input>") {
  using namespace detail;
  Json j = parse_json(text, source);
  if (!j.is_object()) throw InputError(source + ": top level must be an object");
  enriques::EnriquesType t;
  for (const char* name : {"half1", "half2"}) {
    const std::string where = source + ": " + name;
    const Json& h = array_value(field(j, name, source), where);
    auto& half = std::string(name) == "half1" ? t.half1 : t.half2;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const std::string w = where + "[" + std::to_string(i) + "]";
      const Json& o = field(h[i], "orientable", w);
      if (!o.is_boolean()) throw InputError(w + ": orientable: expected a boolean");
      long long g = integer_value(field(h[i], "genus", w), w + ": genus");
      half.push_back({o.get<bool>(), static_cast<int>(g)});
    }
  }
  if (auto v = enriques::validate_type(t))
    throw InputError(source + ": " + v->half + "[" + std::to_string(v->index) + "]: " + v->message);
  return t;
}

inline enriques::EnriquesType load_type(const std::string& path) { return parse_type(read_text_file(path), path); }

// ---------------------------------------------------------------------------
// Serialization of results

inline Json integer_to_json(const Integer& v) {
  if (fits_int64(v)) return v.convert_to<std::int64_t>();
  return to_string(v);
}

inline Json group_to_json(const FGAbelianGroup& g) {
  Json j;
  j["free_rank"] = g.free_rank();
  Json t = Json::array();
  for (const auto& d : g.torsion()) t.push_back(integer_to_json(d));
  j["torsion"] = t;
  return j;
}

inline FGAbelianGroup group_from_json(const Json& j) {
  std::vector<Integer> torsion;
  for (const auto& d : j.at("torsion")) torsion.push_back(d.is_string() ? Integer(d.get<std::string>()) : Integer(d.get<std::int64_t>()));
  return FGAbelianGroup(j.at("free_rank").get<std::size_t>(), std::move(torsion));
}

inline Json vector_to_json(const std::vector<Integer>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(integer_to_json(x));
  return j;
}

inline Json type_to_json(const enriques::EnriquesType& t) {
  Json j;
  for (const auto& [name, h] : {std::pair{"half1", &t.half1}, std::pair{"half2", &t.half2}}) {
    Json a = Json::array();
    for (const auto& c : *h) a.push_back(Json{{"orientable", c.orientable}, {"genus", c.genus}});
    j[name] = a;
  }
  return j;
}

inline Json classifier_to_json(const enriques::ClassifierOutput& c) {
  Json j;
  j["type"] = c.type.to_string();
  j["components"] = c.type.component_count();
  j["dim_h1"] = c.h1.dim_h1;
  j["dim_h1_alg"] = c.h1.dim_h1_alg;
  j["is_GM"] = c.gm.is_GM;
  j["is_ZGM"] = c.gm.is_ZGM;
  j["empty_real_part"] = c.gm.empty_real_part;
  j["gm_rule"] = c.gm.rule;
  j["brauer"] = group_to_json(c.brauer.group);
  j["brauer_string"] = c.brauer.group.to_string();
  j["brauer_rule"] = c.brauer.rule;
  return j;
}

}  // namespace eqhom

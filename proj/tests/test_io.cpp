#include <catch_amalgamated.hpp>

#include "eqhom/builtins.hpp"
#include "eqhom/io.hpp"

using namespace eqhom;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_complex(text, "in.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

std::string type_error_of(const std::string& text) {
  try {
    parse_type(text, "t.json");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_complex: valid input", "[io]") {
  auto c = parse_complex(R"({"vertices": 4, "simplices": [[0,1],[1,2],[2,3],[0,3]], "involution": [2,3,0,1]})");
  CHECK_FALSE(c.subdivided);
  CHECK(c.complex.simplex_count() == 8);
}

TEST_CASE("parse_complex: regularity breach is subdivided once", "[io]") {
  auto c = parse_complex(R"({"vertices": 2, "simplices": [[0,1]], "involution": [1,0]})");
  CHECK(c.subdivided);
  CHECK(c.complex.vertex_count() == 3);
  CHECK(validate(c.complex).ok);
  CHECK(c.note.find("subdivided") != std::string::npos);
}

TEST_CASE("parse_complex: errors name the field", "[io]") {
  CHECK(error_of("{\"vertices\": 2,\n \"simplices\": [[0,1]\n") .find("in.json:3") != std::string::npos);
  CHECK(error_of(R"({"simplices": [], "involution": []})").find("missing field 'vertices'") != std::string::npos);
  CHECK(error_of(R"({"vertices": "2", "simplices": [], "involution": [0,1]})").find("vertices: expected an integer") != std::string::npos);
  CHECK(error_of(R"({"vertices": 2, "simplices": [[0,5]], "involution": [0,1]})").find("simplices[0][1]") != std::string::npos);
  CHECK(error_of(R"({"vertices": 2, "simplices": [[0,0]], "involution": [0,1]})").find("repeated vertex") != std::string::npos);
  CHECK(error_of(R"({"vertices": 2, "simplices": [], "involution": [0]})").find("involution") != std::string::npos);
  CHECK(error_of(R"({"vertices": 3, "simplices": [[0,1]], "involution": [1,2,0]})").find("invalid G-complex") != std::string::npos);
  CHECK(error_of("[]").find("top level") != std::string::npos);
}

TEST_CASE("complex JSON round trip", "[io]") {
  for (const auto& name : builtin_names()) {
    auto x = builtin(name);
    auto y = parse_complex(complex_to_json(x).dump()).complex;
    CHECK(y.simplex_count() == x.simplex_count());
    CHECK(y.involution() == x.involution());
  }
}

TEST_CASE("parse_type", "[io]") {
  auto t = parse_type(R"({"half1": [{"orientable": false, "genus": 3}], "half2": [{"orientable": true, "genus": 0}]})");
  CHECK(t.to_string() == "N3|S");
  CHECK(type_error_of(R"({"half1": [{"orientable": false, "genus": 12}], "half2": []})").find("half1[0]") != std::string::npos);
  CHECK(type_error_of(R"({"half1": [{"orientable": 1, "genus": 1}], "half2": []})").find("orientable: expected a boolean") != std::string::npos);
  CHECK(type_error_of(R"({"half1": []})").find("missing field 'half2'") != std::string::npos);
}

TEST_CASE("group JSON round trip", "[io]") {
  FGAbelianGroup g(2, {Integer(2), Integer(4)});
  CHECK(group_from_json(group_to_json(g)) == g);
  Integer big = 1;
  for (int i = 0; i < 80; ++i) big *= 2;
  FGAbelianGroup h(0, {big});
  CHECK(group_to_json(h)["torsion"][0].is_string());
  CHECK(group_from_json(group_to_json(h)) == h);
}

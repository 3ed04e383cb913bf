#include <cstring>
#include <string>

#include "doctest.h"
#include "pretrans.h"

namespace {
std::string take(char* s) {
  std::string out = s ? s : "";
  pt_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("formulas through the C interface") {
  pt_formula* f = nullptr;
  REQUIRE(pt_formula_parse("p0 -> [0]<0> p0", 1, &f) == PT_OK);
  char* s = nullptr;
  REQUIRE(pt_formula_render(f, 1, &s) == PT_OK);
  CHECK(take(s) == "p0 -> [0] <0> p0");
  REQUIRE(pt_formula_info(f, &s) == PT_OK);
  CHECK(take(s).find("\"modal_depth\":2") != std::string::npos);
  pt_formula_free(f);

  pt_formula* g = nullptr;
  CHECK(pt_formula_parse("<2> p0", 2, &g) == PT_ERR_RANGE);
  CHECK(g == nullptr);
  CHECK(std::strstr(pt_last_error(), "out of range") != nullptr);
  CHECK(pt_formula_parse("p0 &", 1, &g) == PT_ERR_PARSE);
  CHECK(pt_formula_parse(nullptr, 1, &g) == PT_ERR_INVALID_ARGUMENT);
  CHECK(std::string(pt_status_name(PT_ERR_BUDGET)) == "budget exceeded");
  CHECK(pt_version()[0] != '\0');
}

TEST_CASE("frames and logics") {
  pt_frames* fs = nullptr;
  REQUIRE(pt_frames_load(PRETRANS_TEST_DATA "/cluster_chain_and_irreflexive.json", &fs) == PT_OK);
  CHECK(pt_frames_count(fs) == 2);
  char* s = nullptr;
  REQUIRE(pt_frames_info(fs, &s) == PT_OK);
  CHECK(take(s).find("\"height\":2") != std::string::npos);
  REQUIRE(pt_frames_to_dot(fs, 0, &s) == PT_OK);
  CHECK(take(s).find("digraph") != std::string::npos);
  CHECK(pt_frames_to_dot(fs, 5, &s) == PT_ERR_RANGE);

  pt_logic* l = nullptr;
  REQUIRE(pt_logic_frames(fs, &l) == PT_OK);
  int n = 0;
  REQUIRE(pt_logic_modalities(l, &n) == PT_OK);
  CHECK(n == 1);
  char* json = nullptr;
  char* dot = nullptr;
  REQUIRE(pt_canonical(l, 1, &json, &dot) == PT_OK);
  CHECK(take(json).find("\"atoms\"") != std::string::npos);
  CHECK(take(dot).find("digraph") != std::string::npos);

  pt_formula* f = nullptr;
  REQUIRE(pt_formula_parse("p0 -> box dia p0", 1, &f) == PT_OK);
  int valid = -1;
  REQUIRE(pt_decide(l, f, &valid, &json) == PT_OK);
  CHECK(valid == 0);
  CHECK(take(json).find("countermodel") != std::string::npos);
  REQUIRE(pt_logic_set_height(l, 1) == PT_OK);
  REQUIRE(pt_decide(l, f, &valid, nullptr) == PT_OK);
  CHECK(valid == 1);
  CHECK(pt_logic_set_height(l, 0) == PT_ERR_INVALID_ARGUMENT);

  pt_formula* t = nullptr;
  REQUIRE(pt_translate(l, "main", 1, 1, f, &t) == PT_OK);
  pt_logic_free(l);
  REQUIRE(pt_logic_frames(fs, &l) == PT_OK);
  REQUIRE(pt_decide(l, t, &valid, nullptr) == PT_OK);
  CHECK(valid == 0);  // f fails at height 2 in this class
  CHECK(pt_translate(l, "bogus", 1, 1, f, &t) == PT_ERR_INVALID_ARGUMENT);
  pt_formula_free(t);
  pt_formula_free(f);
  pt_logic_free(l);
  pt_frames_free(fs);

  CHECK(pt_frames_load("/nonexistent.json", &fs) == PT_ERR_IO);
  CHECK(pt_frames_from_json("{", &fs) == PT_ERR_PARSE);
}

TEST_CASE("named logics") {
  pt_logic* l = nullptr;
  REQUIRE(pt_logic_named("S4", &l) == PT_OK);
  pt_formula* f = nullptr;
  REQUIRE(pt_formula_parse("p0 -> dia p0", 1, &f) == PT_OK);
  int valid = 0;
  REQUIRE(pt_decide(l, f, &valid, nullptr) == PT_OK);
  CHECK(valid == 1);
  char* json = nullptr;
  CHECK(pt_canonical(l, 1, &json, nullptr) == PT_ERR_UNSUPPORTED);
  pt_formula* g = nullptr;
  REQUIRE(pt_translate(l, "h1", 0, 1, f, &g) == PT_OK);
  REQUIRE(pt_decide(l, g, &valid, nullptr) == PT_OK);
  CHECK(valid == 1);
  pt_formula_free(g);
  pt_formula_free(f);
  pt_logic_free(l);
  CHECK(pt_logic_named("gl", &l) == PT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("suites and generators") {
  int passed = 0;
  char* report = nullptr;
  REQUIRE(pt_verify("section5", "{\"n_min\":4,\"n_max\":6}", &passed, &report) == PT_OK);
  CHECK(passed == 1);
  CHECK(take(report).find("\"suite\":\"section5\"") != std::string::npos);
  REQUIRE(pt_verify("s4s5", "{\"count\":10,\"seed\":5}", &passed, &report) == PT_OK);
  CHECK(passed == 1);
  CHECK(take(report).find("\"seed\":5") != std::string::npos);
  CHECK(pt_verify("nope", "{}", &passed, &report) == PT_ERR_INVALID_ARGUMENT);
  CHECK(pt_verify("bh", "not json", &passed, &report) == PT_ERR_INVALID_ARGUMENT);
  char* json = nullptr;
  REQUIRE(pt_generate("formulas", "{\"count\":5,\"seed\":2}", &json) == PT_OK);
  std::string a = take(json);
  REQUIRE(pt_generate("formulas", "{\"count\":5,\"seed\":2}", &json) == PT_OK);
  CHECK(take(json) == a);
  REQUIRE(pt_generate("frames", "{\"count\":3,\"kind\":\"euclidean\"}", &json) == PT_OK);
  CHECK(take(json).front() == '[');
}

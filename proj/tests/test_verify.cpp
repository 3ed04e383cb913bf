#include "json.hpp"

#include "doctest.h"
#include "pretrans/frame_analysis.hpp"
#include "pretrans/verify.hpp"

using namespace pretrans;

TEST_CASE("bh suite") {
  auto r = verify_bh({reflexive_point(), chain_preorder(3), omega_top_frame(5)}, 3);
  CHECK(r.passed());
  CHECK(r.cases == 12);
  CHECK(all_frames(2, 1).size() == 2 + 16);
}

TEST_CASE("algebra, topheavy and heavy suites on small logics") {
  for (const auto& frames : std::vector<std::vector<Frame>>{
           {chain_preorder(3)}, {reflexive_point()}, {chain_preorder(2), cluster_frame(2), irreflexive_point()}}) {
    FrameClassLogic L(frames);
    auto a = verify_algebra(L, 1);
    CHECK_MESSAGE(a.passed(), a.to_json());
    auto t = verify_topheavy(L, 1, 1);
    CHECK_MESSAGE(t.passed(), t.to_json());
    auto h = verify_heavy(L, 1);
    CHECK_MESSAGE(h.passed(), h.to_json());
  }
}

TEST_CASE("main suite, 2-chain, h = 0 and h = 1") {
  FrameClassLogic L({chain_preorder(2)});
  EnumOptions eo;
  eo.min_count = 400;
  auto fs = enumerate_formulas(eo);
  for (int h : {0, 1}) {
    auto r = verify_main(L, 1, h, fs);
    CHECK_MESSAGE(r.passed(), r.to_json());
    CHECK(r.cases == fs.size());
  }
}

TEST_CASE("s4s5 and embedd suites") {
  auto r = verify_s4s5(3, 40);
  CHECK_MESSAGE(r.passed(), r.to_json());
  FrameClassLogic L({chain_preorder(2)});
  Rng rng(4);
  RandomFormulaOptions ro;
  ro.k = 1;
  ro.max_modal_depth = 2;
  std::vector<std::pair<Formula, Formula>> pairs;
  for (int i = 0; i < 60; ++i) pairs.emplace_back(random_formula(rng, ro), random_formula(rng, ro));
  auto e = verify_embedd(L, pairs);
  CHECK_MESSAGE(e.passed(), e.to_json());
}

TEST_CASE("alpha isolation and subalgebra probe suite") {
  auto alpha = isolating_formulas(3);
  REQUIRE(alpha.size() == 3);
  Frame ne = neighbor_exclusion_frame(8);
  Bits p(9);
  p.set(0);
  p.set(8);
  Model m(ne, {p});
  CHECK(truth_set(m, alpha[0]).indices() == std::vector<std::size_t>{0});
  CHECK(truth_set(m, alpha[1]).indices() == std::vector<std::size_t>{1});
  CHECK(truth_set(m, alpha[2]).indices() == std::vector<std::size_t>{2});
  auto r = verify_section5(6, 7, 4, 6);
  CHECK_MESSAGE(r.passed(), r.to_json());
  auto metrics = nlohmann::json::parse(r.metrics);
  CHECK(!metrics.empty());
}

TEST_CASE("fmp suite") {
  EnumOptions eo;
  eo.min_count = 200;
  auto r = verify_fmp(FrameClassLogic({chain_preorder(2)}), enumerate_formulas(eo));
  CHECK_MESSAGE(r.passed(), r.to_json());
}

TEST_CASE("report json round-trips") {
  VerificationReport r;
  r.suite = "x";
  r.cases = 3;
  r.seed = 42;
  r.failures.push_back({"p0", "valid", "refuted"});
  auto once = r.to_json();
  auto j = nlohmann::json::parse(once);
  CHECK(j["passed"] == false);
  CHECK(j["seed"] == 42);
  CHECK(j["failures"][0]["input"] == "p0");
  CHECK(j.dump() == once);
}

TEST_CASE("suites are deterministic given the seed") {
  auto a = verify_s4s5(77, 20), b = verify_s4s5(77, 20);
  CHECK(a.cases == b.cases);
  CHECK(a.seed == 77);
}

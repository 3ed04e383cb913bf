#include <future>
#include <thread>

#include "doctest.h"
#include "pretrans/decision.hpp"
#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"
#include "pretrans/gen.hpp"
#include "pretrans/schemes.hpp"
#include "pretrans/verify.hpp"

using namespace pretrans;

namespace {
const Signature one(1);

bool reflexive(const Frame& f) {
  for (World x = 0; x < f.size(); ++x)
    if (!f.has(0, x, x)) return false;
  return true;
}
bool transitive(const Frame& f) {
  for (World x = 0; x < f.size(); ++x)
    for (World y = 0; y < f.size(); ++y)
      for (World z = 0; z < f.size(); ++z)
        if (f.has(0, x, y) && f.has(0, y, z) && !f.has(0, x, z)) return false;
  return true;
}
bool symmetric(const Frame& f) {
  for (World x = 0; x < f.size(); ++x)
    for (World y = 0; y < f.size(); ++y)
      if (f.has(0, x, y) != f.has(0, y, x)) return false;
  return true;
}
bool in_class(NamedLogic l, const Frame& f) {
  switch (l) {
    case NamedLogic::K:
      return true;
    case NamedLogic::T:
      return reflexive(f);
    case NamedLogic::K4:
      return transitive(f);
    case NamedLogic::S4:
      return reflexive(f) && transitive(f);
    case NamedLogic::S5:
      return reflexive(f) && transitive(f) && symmetric(f);
  }
  return false;
}

std::vector<Frame> frames_up_to(std::size_t max_points) {
  std::vector<Frame> out;
  for (std::size_t N = 1; N <= max_points; ++N)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (N * N)); ++mask) out.push_back(frame_from_mask(N, 1, mask));
  return out;
}

void check_against_frames(NamedLogic l, const std::vector<Formula>& formulas, const std::vector<Frame>& corpus) {
  std::vector<const Frame*> cls;
  for (const Frame& f : corpus)
    if (in_class(l, f)) cls.push_back(&f);
  for (const Formula& f : formulas) {
    TableauResult r = tableau_decide(l, f);
    if (r.valid) {
      for (const Frame* fr : cls) REQUIRE_MESSAGE(frame_validates(*fr, f), to_string(l), " ", render_pretty(f));
    } else {
      REQUIRE(r.countermodel.has_value());
      REQUIRE_MESSAGE(!true_at(*r.countermodel, f, r.world), to_string(l), " ", render_pretty(f));
      REQUIRE(in_class(l, r.countermodel->frame));
    }
  }
}
}  // namespace

TEST_CASE("logic names") {
  CHECK(named_logic_from_string("S4") == NamedLogic::S4);
  CHECK(named_logic_from_string("k4") == NamedLogic::K4);
  CHECK(to_string(NamedLogic::S5) == "S5");
  CHECK_THROWS_AS(named_logic_from_string("gl"), error);
}

TEST_CASE("tableau examples") {
  CHECK(decide(LogicSpec::of(NamedLogic::S4), parse("p0 -> dia p0")).valid);
  Verdict v = decide(LogicSpec::of(NamedLogic::S4), parse("p0 -> box dia p0"));
  REQUIRE(!v.valid);
  REQUIRE(v.countermodel.has_value());
  CHECK(v.countermodel->frame.size() <= 3);
  CHECK(!true_at(*v.countermodel, parse("p0 -> box dia p0"), v.world));
  CHECK(decide(LogicSpec::of(NamedLogic::S5), parse("p0 -> box dia p0")).valid);
  CHECK(decide(LogicSpec::of(NamedLogic::S4), parse("dia box (p0 -> box dia p0)")).valid);
  CHECK(decide(LogicSpec::of(NamedLogic::K4), parse("dia dia p0 -> dia p0")).valid);
  CHECK(!decide(LogicSpec::of(NamedLogic::K), parse("dia dia p0 -> dia p0")).valid);
  CHECK(!decide(LogicSpec::of(NamedLogic::K), parse("p0 -> dia p0")).valid);
  CHECK(decide(LogicSpec::of(NamedLogic::T), parse("p0 -> dia p0")).valid);
  CHECK(decide(LogicSpec::of(NamedLogic::K), parse("box (p0 -> p1) -> box p0 -> box p1")).valid);
  CHECK(!decide(LogicSpec::of(NamedLogic::S5), Formula::falsum()).valid);
  CHECK_THROWS_AS(decide(LogicSpec::of(NamedLogic::S4), parse("<1> p0", Signature(2))), error);
}

TEST_CASE("tableau agrees with frames: one variable, exhaustive enumeration") {
  EnumOptions eo;
  auto formulas = enumerate_formulas(eo);
  REQUIRE(formulas.size() >= 2000);
  auto corpus = frames_up_to(3);
  for (NamedLogic l : {NamedLogic::K, NamedLogic::T, NamedLogic::K4, NamedLogic::S4, NamedLogic::S5})
    check_against_frames(l, formulas, corpus);
}

TEST_CASE("tableau agrees with frames: two variables, four points") {
  EnumOptions eo;
  eo.k = 2;
  eo.min_count = 1500;
  auto formulas = enumerate_formulas(eo);
  std::vector<Frame> corpus = frames_up_to(2);
  Rng rng(41);
  for (int i = 0; i < 60; ++i) corpus.push_back(frame_from_mask(3, 1, rng() % 512));
  for (int i = 0; i < 30; ++i) corpus.push_back(frame_from_mask(4, 1, rng() % 65536));
  for (int i = 0; i < 10; ++i) corpus.push_back(random_preorder(rng, 4));
  for (NamedLogic l : {NamedLogic::K, NamedLogic::T, NamedLogic::K4, NamedLogic::S4, NamedLogic::S5})
    check_against_frames(l, formulas, corpus);
}

TEST_CASE("tableau budget") {
  TableauOptions tiny;
  tiny.max_steps = 2;
  CHECK_THROWS_AS(tableau_decide(NamedLogic::S4, parse("dia box (p0 -> box dia p0) & dia p1 -> box dia p0"), tiny),
                  budget_error);
}

TEST_CASE("height bounds on named logics") {
  LogicSpec s4 = LogicSpec::of(NamedLogic::S4);
  s4.height = 1;
  CHECK(decide(s4, parse("p0 -> box dia p0")).valid);
  s4.height = 2;
  CHECK_THROWS_AS(decide(s4, parse("p0")), error);
  LogicSpec s5 = LogicSpec::of(NamedLogic::S5);
  s5.height = 3;
  CHECK(decide(s5, parse("dia box p0 -> box p0")).valid);
  LogicSpec k = LogicSpec::of(NamedLogic::K);
  k.height = 1;
  CHECK_THROWS_AS(decide(k, parse("p0")), error);
}

TEST_CASE("frame-class decisions") {
  FrameClassLogic chain3({chain_preorder(3)});
  CHECK(decide_frames(chain3, parse("dia dia p0 -> dia p0")).valid);
  Verdict v = decide_frames(chain3, parse("p0 -> box dia p0"));
  REQUIRE(!v.valid);
  CHECK(!true_at(*v.countermodel, parse("p0 -> box dia p0"), v.world));
  // Star form with m = 1 is the plain modality on preorders.
  const Formula f = parse("p0 -> box dia p0");
  CHECK(decide_height_bounded(chain3, 1, f).valid);
  CHECK(!decide_height_bounded(chain3, 2, f).valid);
  CHECK(decide_height_bounded(chain3, 10, f).valid == decide_frames(chain3, f).valid);
  LogicSpec spec = LogicSpec::of(chain3);
  spec.height = 1;
  CHECK(decide(spec, f).valid);
  CHECK_THROWS_AS(decide_height_bounded(chain3, 0, f), error);
  CHECK(verdict_to_json(v).find("\"valid\":false") != std::string::npos);
}

TEST_CASE("height 1 against the glivenko translation") {
  for (const auto& frames : std::vector<std::vector<Frame>>{{chain_preorder(2)}, {chain_preorder(3)},
                                                            {neighbor_exclusion_frame(3)}}) {
    FrameClassLogic L(frames);
    EnumOptions eo;
    eo.min_count = 500;
    for (const Formula& f : enumerate_formulas(eo))
      REQUIRE(decide_height_bounded(L, 1, f).valid == decide_frames(L, glivenko_h1(f, L.m(), one)).valid);
  }
}

TEST_CASE("fmp witnesses") {
  FrameClassLogic chain2({chain_preorder(2)});
  for (const Formula& f : {Formula::falsum(), Formula::var(0), Formula::neg(Formula::var(0))}) {
    FmpWitness w = fmp_transfer_witness(chain2, f);
    CHECK(height(w.model.frame) == 1);
    CHECK(!true_at(w.model, f, w.world));
    CHECK(frame_validates(w.model.frame, bh_fresh(1, transitivity_degree(w.model.frame), one)));
  }
  CHECK_THROWS_AS(fmp_transfer_witness(chain2, parse("p0 -> p0")), error);
}

TEST_CASE("canonical cache builds once per key") {
  clear_canonical_cache();
  FrameClassLogic L({chain_preorder(3), cluster_frame(2)});
  std::vector<std::future<std::shared_ptr<const Canonical>>> fs;
  for (int i = 0; i < 8; ++i) fs.push_back(std::async(std::launch::async, [&] { return canonical(L, 1); }));
  std::shared_ptr<const Canonical> first = fs[0].get();
  for (std::size_t i = 1; i < fs.size(); ++i) CHECK(fs[i].get().get() == first.get());
  CHECK(canonical_cache_size() == 1);
  CHECK(canonical(FrameClassLogic({chain_preorder(3), cluster_frame(2)}), 1).get() == first.get());
  canonical(L, 0);
  CHECK(canonical_cache_size() == 2);
  AlgebraOptions tiny;
  tiny.cap = 2;
  CHECK_THROWS_AS(canonical(FrameClassLogic({cluster_frame(3)}), 1, tiny), budget_error);
  CHECK(canonical_cache_size() == 2);
  CHECK_THROWS_AS(canonical(L, 1, tiny), budget_error);
  clear_canonical_cache();
  CHECK(canonical_cache_size() == 0);
}

TEST_CASE("S5 frame class agrees with the S5 tableau") {
  RandomFormulaOptions ro;
  Rng rng(9);
  FrameClassLogic s5 = s5_frame_class(2);
  const AlgebraOptions wide = SuiteOptions{}.algebra;
  for (int i = 0; i < 150; ++i) {
    Formula f = random_formula(rng, ro);
    REQUIRE(decide_frames(s5, f, wide).valid == tableau_decide(NamedLogic::S5, f).valid);
  }
}

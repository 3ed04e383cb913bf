// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pretrans/decision.hpp"
#include "pretrans/frame_analysis.hpp"
#include "pretrans/gen.hpp"
#include "pretrans/schemes.hpp"
#include "pretrans/verify.hpp"

using namespace pretrans;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failed = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) {
    o.ok = false;
    o.detail += " [over time limit]";
  }
  if (!o.ok) ++failed;
  std::printf("%s  %2d  %-44s %8.2fs / %4.0fs  %s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), s, limit_s,
              o.detail.c_str());
  std::fflush(stdout);
}

// Folds a report into an outcome; the first failure is shown.
void absorb(Outcome& o, const VerificationReport& r, std::uint64_t& cases) {
  cases += r.cases;
  if (!r.passed()) {
    if (o.ok) o.detail += r.suite + ": " + r.failures.front().input + " expected " + r.failures.front().expected +
                          ", got " + r.failures.front().actual + "; ";
    o.ok = false;
  }
}

std::vector<Frame> data(const std::string& name) { return load_frames(std::string(PRETRANS_TEST_DATA) + "/" + name); }

struct SuiteLogic {
  std::string name;
  FrameClassLogic logic;
  int k;
};

std::vector<SuiteLogic> suite_logics() {
  std::vector<SuiteLogic> out;
  for (int k : {1, 2}) {
    out.push_back({"3-chain", FrameClassLogic(data("chain3.json")), k});
    out.push_back({"2-chain", FrameClassLogic(data("chain2.json")), k});
    out.push_back({"2-cluster", FrameClassLogic(data("cluster2.json")), k});
    out.push_back({"S5", s5_frame_class(k), k});
  }
  out.push_back({"reflexive point", FrameClassLogic(data("reflexive_point.json")), 1});
  out.push_back({"2-cluster chain + irreflexive", FrameClassLogic(data("cluster_chain_and_irreflexive.json")), 1});
  out.push_back({"2-chain + 2-cluster", FrameClassLogic(data("chain2_and_cluster2.json")), 1});
  out.push_back({"3-chain + loop", FrameClassLogic(data("chain3_and_loop.json")), 1});
  return out;
}

std::vector<std::vector<Frame>> curated_pairs() {
  return {data("cluster_chain_and_irreflexive.json"), data("chain2_and_cluster2.json"), data("chain3_and_loop.json")};
}

std::string count_note(std::uint64_t cases) { return std::to_string(cases) + " cases"; }

}  // namespace

int main() {
  std::printf("acceptance run\n");

  criterion(1, "B_h holds iff height <= h", 120, [] {
    std::vector<Frame> corpus = all_frames(4, 1);
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      const int n = 1 + static_cast<int>(rng() % 2);
      corpus.push_back(random_frame(rng, 1 + rng() % 6, n, 0.3));
    }
    Outcome o;
    std::uint64_t cases = 0;
    absorb(o, verify_bh(corpus, 3), cases);
    o.detail += count_note(cases);
    return o;
  });

  criterion(2, "Euclidean frames: 2-transitive, height <= 2", 30, [] {
    Rng rng(2);
    Outcome o;
    const Formula p = Formula::var(0);
    const Signature one(1);
    const Formula pretrans2 =
        Formula::implies(Formula::diamond(0, Formula::diamond(0, Formula::diamond(0, p))), dia_le(2, p, one));
    for (int i = 0; i < 200; ++i) {
      Frame fr = random_euclidean(rng, 1 + rng() % 6);
      const int m = transitivity_degree(fr), h = height(fr);
      if (m > 2 || h > 2 || !frame_validates(fr, pretrans2)) {
        o.ok = false;
        o.detail = frame_to_json(fr) + " degree " + std::to_string(m) + " height " + std::to_string(h) + "; ";
        break;
      }
    }
    o.detail += "200 frames";
    return o;
  });

  criterion(3, "truth lemma and label soundness", 300, [] {
    Outcome o;
    std::uint64_t cases = 0, algebras = 0;
    for (const Frame& fr : all_frames(3, 1))
      for (int k : {0, 1}) {
        absorb(o, verify_algebra(FrameClassLogic({fr}), k), cases);
        ++algebras;
      }
    for (const auto& frames : curated_pairs())
      for (int k : {0, 1}) {
        absorb(o, verify_algebra(FrameClassLogic(frames), k), cases);
        ++algebras;
      }
    o.detail += std::to_string(algebras) + " algebras, " + count_note(cases);
    return o;
  });

  criterion(4, "depth formulas, beta, gamma, heaviness", 300, [] {
    Outcome o;
    std::uint64_t cases = 0;
    for (const auto& s : suite_logics()) {
      const int H = height(canonical(s.logic, s.k, SuiteOptions{}.algebra)->model.model.frame);
      for (int h = 1; h <= H; ++h) absorb(o, verify_topheavy(s.logic, s.k, h), cases);
    }
    o.detail += count_note(cases);
    return o;
  });

  criterion(5, "height-bounded decision equals translation", 600, [] {
    Outcome o;
    std::uint64_t cases = 0;
    EnumOptions eo;
    const auto exhaustive = enumerate_formulas(eo);
    Rng rng(5);
    RandomFormulaOptions ro;
    std::vector<Formula> random;
    for (int i = 0; i < 300; ++i) random.push_back(random_formula(rng, ro));
    for (const char* file : {"chain3.json", "chain2.json"}) {
      FrameClassLogic L(data(file));
      absorb(o, verify_main(L, 1, 1, exhaustive), cases);
      absorb(o, verify_main(L, 2, 1, random), cases);
    }
    o.detail += std::to_string(exhaustive.size()) + " enumerated + 300 random formulas per logic, " + count_note(cases);
    return o;
  });

  criterion(6, "S5 verdict equals S4 on <>[]f", 300, [] {
    Outcome o;
    std::uint64_t cases = 0;
    absorb(o, verify_s4s5(6, 300), cases);
    o.detail += count_note(cases);
    return o;
  });

  criterion(7, "fmp witnesses for refuted translations", 60, [] {
    Outcome o;
    std::uint64_t cases = 0, refuted = 0;
    Rng rng(7);
    RandomFormulaOptions ro;
    ro.max_modal_depth = 2;
    // Two variables on the chains; the larger classes stay at one variable,
    // where their free algebras are of manageable size.
    const std::vector<int> vars = {2, 2, 1, 1};
    const std::vector<std::vector<Frame>> logics = {data("chain2.json"), data("chain3.json"),
                                                    data("cluster_chain_and_irreflexive.json"),
                                                    data("chain3_and_loop.json")};
    std::vector<std::vector<Formula>> picked(logics.size());
    for (std::size_t i = 0; refuted < 100; i = (i + 1) % logics.size()) {
      FrameClassLogic L(logics[i]);
      ro.k = vars[i];
      Formula f = random_formula(rng, ro);
      if (decide_frames(L, glivenko_h1(f, L.m(), L.sig()), SuiteOptions{}.algebra).valid) continue;
      picked[i].push_back(f);
      ++refuted;
    }
    for (std::size_t i = 0; i < logics.size(); ++i) absorb(o, verify_fmp(FrameClassLogic(logics[i]), picked[i]), cases);
    o.detail += std::to_string(refuted) + " refuted translations, " + count_note(cases);
    return o;
  });

  criterion(8, "R* via <>* on atoms; canonical frames heavy", 60, [] {
    Outcome o;
    std::uint64_t cases = 0, models = 0;
    for (const Frame& fr : all_frames(3, 1))
      for (int k : {0, 1}) {
        absorb(o, verify_heavy(FrameClassLogic({fr}), k), cases);
        ++models;
      }
    for (const auto& frames : curated_pairs())
      for (int k : {0, 1}) {
        absorb(o, verify_heavy(FrameClassLogic(frames), k), cases);
        ++models;
      }
    for (const auto& s : suite_logics()) {
      absorb(o, verify_heavy(s.logic, s.k), cases);
      ++models;
    }
    o.detail += std::to_string(models) + " canonical models, " + count_note(cases);
    return o;
  });

  criterion(9, "alpha isolation; 1-generated subalgebras <= 8", 600, [] {
    Outcome o;
    std::uint64_t cases = 0;
    VerificationReport r = verify_section5(6, 10, 4, 10, 8);
    absorb(o, r, cases);
    o.detail += count_note(cases) + ", " + r.metrics;
    return o;
  });

  criterion(10, "S4 proves translation => valid on height-2 S4 frames", 300, [] {
    Outcome o;
    auto s5 = canonical(s5_frame_class(1), 1);
    DepthFormulaSet B = depth_formulas(s5->model, 1);
    EnumOptions eo;
    eo.min_count = 300;
    auto formulas = enumerate_formulas(eo);
    formulas.resize(300);
    Rng rng(10);
    std::vector<Frame> frames;
    for (int i = 0; i < 200; ++i) frames.push_back(random_preorder_height2(rng, 1 + rng() % 6));
    std::uint64_t proved = 0, violations = 0;
    for (const Formula& f : formulas) {
      if (!tableau_decide(NamedLogic::S4, main_translation(f, B)).valid) continue;
      ++proved;
      for (const Frame& fr : frames)
        if (!frame_validates(fr, f)) {
          if (violations++ == 0) o.detail += render_pretty(f) + " fails on " + frame_to_json(fr) + "; ";
        }
    }
    o.ok = violations == 0;
    o.detail += std::to_string(proved) + " of 300 proved, " + std::to_string(violations) + " violations (sound direction only)";
    return o;
  });

  std::printf("%s: %d criteria failed\n", failed ? "FAILED" : "ALL PASSED", failed);
  return failed ? 1 : 0;
}

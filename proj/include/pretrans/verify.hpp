#ifndef PRETRANS_VERIFY_HPP
#define PRETRANS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pretrans/decision.hpp"
#include "pretrans/gen.hpp"
#include "pretrans/schemes.hpp"

namespace pretrans {

struct Failure {
  std::string input;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::vector<Failure> failures;  // sorted by input
  std::uint64_t seed = 0;
  double wall_seconds = 0;
  // Free-form measurements (e.g. the largest subalgebra seen), as JSON text.
  std::string metrics = "{}";

  bool passed() const noexcept { return failures.empty(); }
  std::string to_json() const;
};

// Frame F validates B_h (fresh variables, F's own transitivity degree) iff
// height(F) <= h, for every frame in the corpus and h in 0..h_max.
VerificationReport verify_bh(const std::vector<Frame>& corpus, int h_max);
// All frames with 1..max_points points and n relations (exhaustive).
std::vector<Frame> all_frames(std::size_t max_points, int n);

struct SuiteOptions {
  // Suites address algebra elements through atoms, so the element cap is
  // raised by default; the coordinate budget still applies.
  AlgebraOptions algebra{std::uint64_t{1} << 62, std::uint64_t{1} << 20};
  SchemeOptions schemes;
};

// Truth lemma on the dual for every element (exhaustive up to
// `exhaustive_atoms` atoms, atoms plus `samples` random elements beyond),
// label soundness against the source coordinates, and atom isolation.
VerificationReport verify_algebra(const FrameClassLogic& L, int k, SuiteOptions opt = {},
                                  std::size_t exhaustive_atoms = 22, std::size_t samples = 200,
                                  std::uint64_t seed = 1);

// Depth formulas characterize depth <= i on the whole canonical frame, beta(a)
// isolates a (in the canonical frame and in its top part), gamma is
// R_i-persistent, and the canonical frame is (h+1)-heavy when tall enough.
VerificationReport verify_topheavy(const FrameClassLogic& L, int k, int h, SuiteOptions opt = {});

// decide_height_bounded(L, h+1, f) == decide(L, main_translation(f, B)) for
// every formula (each of which must use at most k variables).
VerificationReport verify_main(const FrameClassLogic& L, int k, int h, const std::vector<Formula>& formulas,
                               SuiteOptions opt = {});

// L[1] |- []*psi -> []*f iff L |- <>*[]*psi -> <>*[]*f, and the single-formula
// form, over the given pairs.
VerificationReport verify_embedd(const FrameClassLogic& L, const std::vector<std::pair<Formula, Formula>>& pairs,
                                 SuiteOptions opt = {});

// S5 (tableau and clusters-of-size-1..2^k backends, which must agree) versus
// the S4 tableau on <>[]f, plus the pair form, over `count` random formulas.
VerificationReport verify_s4s5(std::uint64_t seed, std::size_t count, SuiteOptions opt = {});
// Log(clusters of sizes 1..2^k): S5 for k-variable formulas.
FrameClassLogic s5_frame_class(int k);

// Canonical frames: 1-heavy, h-heavy for every h < height, and R* agrees with
// the algebraic <>^{<=m} characterization on every atom pair.
VerificationReport verify_heavy(const FrameClassLogic& L, int k, SuiteOptions opt = {});

// Point-isolating formulas on neighbor_exclusion_frame(N), and the largest
// 1-generated subalgebra of the complex algebra of omega_top_frame(N).
VerificationReport verify_section5(std::size_t alpha_min, std::size_t alpha_max, std::size_t probe_min,
                                   std::size_t probe_max, std::uint64_t bound = 8);
// alpha_0 .. alpha_count-1 of the neighbor-exclusion example.
std::vector<Formula> isolating_formulas(std::size_t count);

// Witness clusters for refuted translations: height 1, validate B_1, refute f.
VerificationReport verify_fmp(const FrameClassLogic& L, const std::vector<Formula>& formulas, SuiteOptions opt = {});

}  // namespace pretrans

#endif  // PRETRANS_VERIFY_HPP

#ifndef PRETRANS_DECISION_HPP
#define PRETRANS_DECISION_HPP

#include <memory>
#include <optional>
#include <string>

#include "pretrans/algebra.hpp"
#include "pretrans/tableau.hpp"

namespace pretrans {

// A named axiomatic logic or Log(F_1..F_r), optionally with a height bound
// (L[h] = L + B_h).
struct LogicSpec {
  std::optional<NamedLogic> named;
  std::shared_ptr<const FrameClassLogic> frames;
  std::optional<int> height;
  AlgebraOptions algebra;
  TableauOptions tableau;

  static LogicSpec of(NamedLogic l);
  static LogicSpec of(FrameClassLogic l);
  bool is_named() const noexcept { return named.has_value(); }
  std::string describe() const;
};

struct Verdict {
  bool valid = false;
  // Present iff !valid; the formula is false at `world`.
  std::optional<Model> countermodel;
  World world = 0;
};

// Free algebra and its dual, shared through the cache.
struct Canonical {
  FreeAlgebra algebra;
  CanonicalModel model;
};

// Get-or-build keyed by (fingerprint, k); concurrent callers for the same key
// wait for a single build. Failed builds are not cached.
std::shared_ptr<const Canonical> canonical(const FrameClassLogic& L, int k, AlgebraOptions opt = {});
void clear_canonical_cache();
std::size_t canonical_cache_size();

Verdict decide(const LogicSpec& L, const Formula& f);
Verdict decide_frames(const FrameClassLogic& L, const Formula& f, AlgebraOptions opt = {});
// Truth on top_restriction(canonical(L, k), h).
Verdict decide_height_bounded(const FrameClassLogic& L, int h, const Formula& f, AlgebraOptions opt = {});

struct FmpWitness {
  Model model;  // a single maximal cluster of a refuting L-model
  World world;  // refutes f
};
// Requires the h=1 translation of f to be refuted in L; throws otherwise.
FmpWitness fmp_transfer_witness(const FrameClassLogic& L, const Formula& f, AlgebraOptions opt = {});

std::string verdict_to_json(const Verdict& v);

}  // namespace pretrans

#endif  // PRETRANS_DECISION_HPP

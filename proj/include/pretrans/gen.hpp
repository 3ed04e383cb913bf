#ifndef PRETRANS_GEN_HPP
#define PRETRANS_GEN_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "pretrans/kripke.hpp"

namespace pretrans {

using Rng = std::mt19937_64;

// Exhaustive enumeration over the surface constructors
//   p0..p{k-1}, false, true, ~, <i>, [i], &, |, ->
// ordered by surface size (number of constructors), then lexicographically by
// (constructor, children's positions in the enumeration). Kernel duplicates
// are dropped (first occurrence wins). Whole size layers are emitted until at
// least `min_count` formulas exist or `max_size` is reached.
struct EnumOptions {
  int k = 1;
  int max_modal_depth = 2;
  int max_size = 6;
  std::size_t min_count = 2000;
  Signature sig = Signature(1);
};
std::vector<Formula> enumerate_formulas(const EnumOptions& opt);

struct RandomFormulaOptions {
  int k = 2;
  int max_modal_depth = 3;
  int max_size = 12;
  Signature sig = Signature(1);
};
Formula random_formula(Rng& rng, const RandomFormulaOptions& opt);

// Frame number `mask` among the 2^(n*N*N) frames on N points: bit
// (i*N + u)*N + v of mask says u R_i v.
Frame frame_from_mask(std::size_t N, int n, std::uint64_t mask);

// Reflexive-transitive closure of a random relation.
Frame random_preorder(Rng& rng, std::size_t N, double density = 0.3);
// Preorder built from clusters at depth 1 and 2; height <= 2 by construction.
Frame random_preorder_height2(Rng& rng, std::size_t N);
// Euclidean closure (uRv, uRw => vRw) of a random relation.
Frame random_euclidean(Rng& rng, std::size_t N, double density = 0.3);
Frame random_frame(Rng& rng, std::size_t N, int n, double density);

}  // namespace pretrans

#endif  // PRETRANS_GEN_HPP

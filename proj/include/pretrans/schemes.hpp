#ifndef PRETRANS_SCHEMES_HPP
#define PRETRANS_SCHEMES_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "pretrans/algebra.hpp"
#include "pretrans/formula.hpp"

namespace pretrans {

// B_0 = false, B_{i+1} = psi_{i+1} -> []*(<>*psi_{i+1} | B_i), with
// <>* = dia_le(m, .) and []* = box_le(m, .). psis[i] plays p_{i+1}.
Formula bh_instance(int h, const std::vector<Formula>& psis, int m, Signature sig);
// bh_instance with the fresh variables p_1..p_h.
Formula bh_fresh(int h, int m, Signature sig);

// <>*[]* f
Formula glivenko_h1(const Formula& f, int m, Signature sig);

// ([]*psi -> []*f, <>*[]*psi -> <>*[]*f)
std::pair<Formula, Formula> embedd_pair(const Formula& psi, const Formula& f, int m, Signature sig);

struct SchemeOptions {
  // Distinct DAG nodes allowed in a constructed formula.
  std::size_t max_nodes = 1'000'000;
};

// gamma for a finite model M playing the canonical model of L[h]:
// []*(AND alpha(b1) -> <i>alpha(b2) over b1 R_i b2)
//   & []*(AND alpha(b1) -> ~<i>alpha(b2) over not b1 R_i b2)
//   & []*(OR alpha(b)).
// Conjuncts are ordered by modality, then b1, then b2 (atom order).
Formula jankov_fine_gamma(const CanonicalModel& M, SchemeOptions opt = {});
// alpha(a) & gamma
Formula jankov_fine_beta(const CanonicalModel& M, World a, SchemeOptions opt = {});

struct DepthFormulaSet {
  std::vector<Formula> B;  // B[0..h]
  int k;
  int m;
  int h;
  Signature sig;
};

// Depth formulas for the canonical model of L. The Jankov-Fine formulas are
// taken against top_restriction(M, h), whose atoms keep their labels; B[i]
// is the disjunction of beta(a) over the atoms of depth <= i.
DepthFormulaSet depth_formulas(const CanonicalModel& M, int h, SchemeOptions opt = {});

// AND_{i<=h} ([]*([]*f -> B[i]) -> B[i])
Formula main_translation(const Formula& f, const DepthFormulaSet& B);

// top_restriction(M, h) carried to the canonical-model level: the restricted
// model together with the inherited atom labels.
CanonicalModel top_part(const CanonicalModel& M, int h, std::vector<long>* index_map = nullptr);

}  // namespace pretrans

#endif  // PRETRANS_SCHEMES_HPP

#include "pretrans/schemes.hpp"

#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"

namespace pretrans {

Formula bh_instance(int h, const std::vector<Formula>& psis, int m, Signature sig) {
  if (h < 0) throw error(errc::invalid_argument, "bh_instance: negative h");
  if (psis.size() != static_cast<std::size_t>(h))
    throw error(errc::invalid_argument, "bh_instance: expected " + std::to_string(h) + " formulas, got " +
                                            std::to_string(psis.size()));
  Formula b = Formula::falsum();
  for (int i = 0; i < h; ++i) {
    const Formula& psi = psis[static_cast<std::size_t>(i)];
    b = Formula::implies(psi, box_le(m, Formula::disj(dia_le(m, psi, sig), b), sig));
  }
  return b;
}

Formula bh_fresh(int h, int m, Signature sig) {
  std::vector<Formula> ps;
  for (int i = 1; i <= h; ++i) ps.push_back(Formula::var(i));
  return bh_instance(h, ps, m, sig);
}

Formula glivenko_h1(const Formula& f, int m, Signature sig) { return dia_le(m, box_le(m, f, sig), sig); }

std::pair<Formula, Formula> embedd_pair(const Formula& psi, const Formula& f, int m, Signature sig) {
  Formula lhs = Formula::implies(box_le(m, psi, sig), box_le(m, f, sig));
  Formula rhs = Formula::implies(glivenko_h1(psi, m, sig), glivenko_h1(f, m, sig));
  return {lhs, rhs};
}

namespace {
void guard(const Formula& f, const SchemeOptions& opt, const char* what) {
  std::size_t n = dag_size(f);
  if (n > opt.max_nodes)
    throw budget_error(std::string(what) + ": " + std::to_string(n) + " formula nodes exceed the limit of " +
                           std::to_string(opt.max_nodes),
                       n);
}
}  // namespace

Formula jankov_fine_gamma(const CanonicalModel& M, SchemeOptions opt) {
  const std::size_t n = M.size();
  const Signature sig = M.sig();
  std::vector<Formula> alpha;
  alpha.reserve(n);
  for (World a = 0; a < n; ++a) alpha.push_back(atom_formula(M, a));

  std::vector<Formula> present, absent;
  for (int i = 0; i < sig.n(); ++i)
    for (World b1 = 0; b1 < n; ++b1)
      for (World b2 = 0; b2 < n; ++b2) {
        Formula d = Formula::diamond(i, alpha[b2]);
        if (M.model.frame.has(i, b1, b2))
          present.push_back(Formula::implies(alpha[b1], d));
        else
          absent.push_back(Formula::implies(alpha[b1], Formula::neg(d)));
      }
  Formula gamma = Formula::conj_all({box_le(M.m, Formula::conj_all(present), sig),
                                     box_le(M.m, Formula::conj_all(absent), sig),
                                     box_le(M.m, Formula::disj_all(alpha), sig)});
  guard(gamma, opt, "jankov_fine_gamma");
  return gamma;
}

Formula jankov_fine_beta(const CanonicalModel& M, World a, SchemeOptions opt) {
  Formula beta = Formula::conj(atom_formula(M, a), jankov_fine_gamma(M, opt));
  guard(beta, opt, "jankov_fine_beta");
  return beta;
}

CanonicalModel top_part(const CanonicalModel& M, int h, std::vector<long>* index_map) {
  Restriction r = top_restriction(M.model.frame, h);
  const std::size_t n = r.frame.size();
  std::vector<Bits> val(M.model.valuation.size(), Bits(n));
  std::vector<Formula> labels(n);
  for (World x = 0; x < M.size(); ++x) {
    long y = r.index_map[x];
    if (y < 0) continue;
    labels[static_cast<std::size_t>(y)] = M.atom_labels[x];
    for (std::size_t j = 0; j < val.size(); ++j)
      if (M.model.valuation[j].test(x)) val[j].set(static_cast<std::size_t>(y));
  }
  if (index_map) *index_map = r.index_map;
  return CanonicalModel{Model(std::move(r.frame), std::move(val)), std::move(labels), M.k, M.m};
}

DepthFormulaSet depth_formulas(const CanonicalModel& M, int h, SchemeOptions opt) {
  if (h < 0) throw error(errc::invalid_argument, "depth_formulas: negative h");
  if (h > height(M.model.frame))
    throw error(errc::invalid_argument, "depth_formulas: h exceeds the height of the canonical frame");
  DepthFormulaSet out{{Formula::falsum()}, M.k, M.m, h, M.sig()};
  if (h == 0) return out;

  CanonicalModel top = top_part(M, h);
  const auto d = depths(top.model.frame);
  const Formula gamma = jankov_fine_gamma(top, opt);
  std::vector<Formula> beta;
  for (World a = 0; a < top.size(); ++a) beta.push_back(Formula::conj(atom_formula(top, a), gamma));
  for (int i = 1; i <= h; ++i) {
    std::vector<Formula> parts;
    for (World a = 0; a < top.size(); ++a)
      if (d[a] <= i) parts.push_back(beta[a]);
    Formula b = Formula::disj_all(parts);
    guard(b, opt, "depth_formulas");
    out.B.push_back(b);
  }
  return out;
}

Formula main_translation(const Formula& f, const DepthFormulaSet& B) {
  if (f.var_bound() > B.k)
    throw error(errc::range, "main_translation: formula uses a variable outside p0..p" + std::to_string(B.k - 1));
  check_signature(f, B.sig);
  const Formula boxed = box_le(B.m, f, B.sig);
  std::vector<Formula> parts;
  for (const Formula& b : B.B)
    parts.push_back(Formula::implies(box_le(B.m, Formula::implies(boxed, b), B.sig), b));
  return Formula::conj_all(parts);
}

}  // namespace pretrans

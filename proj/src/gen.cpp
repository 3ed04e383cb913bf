#include "pretrans/gen.hpp"

#include <algorithm>
#include <unordered_set>

#include "pretrans/error.hpp"

namespace pretrans {

namespace {

struct Entry {
  Formula f;
  int depth;
};

}  // namespace

std::vector<Formula> enumerate_formulas(const EnumOptions& opt) {
  if (opt.k < 0 || opt.max_size < 1 || opt.max_modal_depth < 0)
    throw error(errc::invalid_argument, "enumerate_formulas: bad options");
  std::vector<std::vector<Entry>> by_size(static_cast<std::size_t>(opt.max_size) + 1);
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> out;
  auto emit = [&](int size, const Formula& f) {
    if (f.modal_depth() > opt.max_modal_depth || !seen.insert(f).second) return;
    by_size[static_cast<std::size_t>(size)].push_back({f, f.modal_depth()});
    out.push_back(f);
  };
  for (int size = 1; size <= opt.max_size; ++size) {
    if (size == 1) {
      for (int j = 0; j < opt.k; ++j) emit(1, Formula::var(j));
      emit(1, Formula::falsum());
      emit(1, Formula::top());
    } else {
      for (const Entry& e : by_size[static_cast<std::size_t>(size - 1)]) emit(size, Formula::neg(e.f));
      for (int i = 0; i < opt.sig.n(); ++i) {
        for (const Entry& e : by_size[static_cast<std::size_t>(size - 1)]) emit(size, Formula::diamond(i, e.f));
        for (const Entry& e : by_size[static_cast<std::size_t>(size - 1)]) emit(size, Formula::box(i, e.f));
      }
      for (int op = 0; op < 3; ++op)
        for (int ls = 1; ls <= size - 2; ++ls)
          for (const Entry& a : by_size[static_cast<std::size_t>(ls)])
            for (const Entry& b : by_size[static_cast<std::size_t>(size - 1 - ls)]) {
              Formula f = op == 0 ? Formula::conj(a.f, b.f) : op == 1 ? Formula::disj(a.f, b.f) : Formula::implies(a.f, b.f);
              emit(size, f);
            }
    }
    if (out.size() >= opt.min_count) break;
  }
  return out;
}

namespace {

Formula grow(Rng& rng, const RandomFormulaOptions& opt, int depth, int budget) {
  std::uniform_int_distribution<int> pick(0, 99);
  auto atom = [&]() {
    int r = pick(rng);
    if (opt.k == 0 || r < 8) return r < 4 || opt.k == 0 ? Formula::falsum() : Formula::top();
    return Formula::var(std::uniform_int_distribution<int>(0, opt.k - 1)(rng));
  };
  if (budget <= 1 || pick(rng) < 20) return atom();
  const int r = pick(rng);
  std::uniform_int_distribution<int> modality(0, opt.sig.n() - 1);
  if (r < 15) return Formula::neg(grow(rng, opt, depth, budget - 1));
  if (r < 45 && depth < opt.max_modal_depth) {
    Formula body = grow(rng, opt, depth + 1, budget - 1);
    return r < 30 ? Formula::diamond(modality(rng), body) : Formula::box(modality(rng), body);
  }
  if (budget < 3) return atom();
  const int left = std::uniform_int_distribution<int>(1, budget - 2)(rng);
  Formula a = grow(rng, opt, depth, left);
  Formula b = grow(rng, opt, depth, budget - 1 - left);
  const int op = pick(rng) % 3;
  return op == 0 ? Formula::conj(a, b) : op == 1 ? Formula::disj(a, b) : Formula::implies(a, b);
}

}  // namespace

Formula random_formula(Rng& rng, const RandomFormulaOptions& opt) {
  if (opt.k < 0 || opt.max_size < 1) throw error(errc::invalid_argument, "random_formula: bad options");
  return grow(rng, opt, 0, opt.max_size);
}

Frame frame_from_mask(std::size_t N, int n, std::uint64_t mask) {
  if (static_cast<std::size_t>(n) * N * N > 64) throw error(errc::range, "frame_from_mask: too many pairs");
  Frame f(Signature(n), N);
  for (int i = 0; i < n; ++i)
    for (World u = 0; u < N; ++u)
      for (World v = 0; v < N; ++v)
        if ((mask >> ((static_cast<std::size_t>(i) * N + u) * N + v)) & 1u) f.add(i, u, v);
  return f;
}

Frame random_frame(Rng& rng, std::size_t N, int n, double density) {
  std::bernoulli_distribution coin(density);
  Frame f(Signature(n), N);
  for (int i = 0; i < n; ++i)
    for (World u = 0; u < N; ++u)
      for (World v = 0; v < N; ++v)
        if (coin(rng)) f.add(i, u, v);
  return f;
}

Frame random_preorder(Rng& rng, std::size_t N, double density) {
  Frame base = random_frame(rng, N, 1, density);
  Relation star = reach_star(base);
  Frame f(Signature(1), N);
  for (World u = 0; u < N; ++u) star[u].for_each([&](std::size_t v) { f.add(0, u, v); });
  return f;
}

Frame random_preorder_height2(Rng& rng, std::size_t N) {
  if (N < 1) throw error(errc::invalid_argument, "random_preorder_height2: N must be >= 1");
  // Assign worlds to clusters, then split clusters into an upper and a lower layer.
  std::uniform_int_distribution<std::size_t> which(0, N - 1);
  std::vector<std::size_t> cluster(N);
  for (World x = 0; x < N; ++x) cluster[x] = which(rng);
  std::vector<std::size_t> ids;
  for (std::size_t c : cluster)
    if (std::find(ids.begin(), ids.end(), c) == ids.end()) ids.push_back(c);
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> upper(N, true);
  bool any_upper = false;
  for (std::size_t c : ids) {
    upper[c] = coin(rng);
    any_upper = any_upper || upper[c];
  }
  if (!any_upper) upper[ids.front()] = true;
  std::vector<std::size_t> uppers;
  for (std::size_t c : ids)
    if (upper[c]) uppers.push_back(c);
  // Each lower cluster sees a nonempty set of upper clusters.
  std::vector<std::vector<bool>> sees(N, std::vector<bool>(N, false));
  for (std::size_t c : ids) {
    sees[c][c] = true;
    if (upper[c]) continue;
    bool any = false;
    for (std::size_t u : uppers) {
      if (coin(rng)) {
        sees[c][u] = true;
        any = true;
      }
    }
    if (!any) sees[c][uppers[std::uniform_int_distribution<std::size_t>(0, uppers.size() - 1)(rng)]] = true;
  }
  Frame f(Signature(1), N);
  for (World x = 0; x < N; ++x)
    for (World y = 0; y < N; ++y)
      if (sees[cluster[x]][cluster[y]]) f.add(0, x, y);
  return f;
}

Frame random_euclidean(Rng& rng, std::size_t N, double density) {
  Frame base = random_frame(rng, N, 1, density);
  Relation r(N, Bits(N));
  for (World u = 0; u < N; ++u) r[u] = base.succ(0, u);
  bool changed = true;
  while (changed) {
    changed = false;
    for (World u = 0; u < N; ++u)
      r[u].for_each([&](std::size_t v) {
        if (!r[u].subset_of(r[v])) {
          r[v] |= r[u];
          changed = true;
        }
      });
  }
  Frame f(Signature(1), N);
  for (World u = 0; u < N; ++u) r[u].for_each([&](std::size_t v) { f.add(0, u, v); });
  return f;
}

}  // namespace pretrans

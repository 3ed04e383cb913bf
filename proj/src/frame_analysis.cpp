#include "pretrans/frame_analysis.hpp"

#include <algorithm>
#include <random>

#include "pretrans/error.hpp"

namespace pretrans {

std::vector<std::pair<int, int>> Skeleton::strict_edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t c = 0; c < order.size(); ++c)
    order[c].for_each([&](std::size_t d) {
      if (d != c) out.emplace_back(static_cast<int>(c), static_cast<int>(d));
    });
  return out;
}

Skeleton skeleton(const Frame& fr) {
  const std::size_t n = fr.size();
  const Relation star = reach_star(fr);
  Skeleton sk;
  sk.cluster_of.assign(n, -1);
  for (World x = 0; x < n; ++x) {
    if (sk.cluster_of[x] >= 0) continue;
    int c = static_cast<int>(sk.clusters.size());
    auto& members = sk.clusters.emplace_back();
    star[x].for_each([&](std::size_t y) {
      if (star[y].test(x)) {
        sk.cluster_of[y] = c;
        members.push_back(y);
      }
    });
  }
  const std::size_t nc = sk.clusters.size();
  sk.order.assign(nc, Bits(nc));
  for (std::size_t c = 0; c < nc; ++c)
    star[sk.clusters[c].front()].for_each(
        [&](std::size_t y) { sk.order[c].set(static_cast<std::size_t>(sk.cluster_of[y])); });

  // Depth by decreasing number of clusters above: a cluster strictly above
  // another has a strictly smaller up-set.
  std::vector<std::size_t> by_up(nc);
  for (std::size_t c = 0; c < nc; ++c) by_up[c] = c;
  std::sort(by_up.begin(), by_up.end(),
            [&](std::size_t a, std::size_t b) { return sk.order[a].count() < sk.order[b].count(); });
  sk.depth.assign(nc, 1);
  for (std::size_t c : by_up) {
    int best = 0;
    sk.order[c].for_each([&](std::size_t d) {
      if (d != c) best = std::max(best, sk.depth[d]);
    });
    sk.depth[c] = best + 1;
  }
  return sk;
}

int transitivity_degree(const Frame& fr) {
  const Relation star = reach_star(fr);
  for (int m = 0;; ++m) {
    if (reach_le(fr, m) == star) return m;
    if (static_cast<std::size_t>(m) > fr.size()) throw error(errc::internal, "transitivity degree did not converge");
  }
}

int height(const Frame& fr) {
  Skeleton sk = skeleton(fr);
  return *std::max_element(sk.depth.begin(), sk.depth.end());
}

std::vector<int> depths(const Frame& fr) {
  Skeleton sk = skeleton(fr);
  std::vector<int> out(fr.size());
  for (World x = 0; x < fr.size(); ++x) out[x] = sk.depth[static_cast<std::size_t>(sk.cluster_of[x])];
  return out;
}

int depth(const Frame& fr, World x) {
  if (x >= fr.size()) throw error(errc::range, "world out of range");
  return depths(fr)[x];
}

Restriction top_restriction(const Frame& fr, int h) {
  if (h < 1) throw error(errc::invalid_argument, "top_restriction: h must be >= 1");
  auto d = depths(fr);
  Bits keep(fr.size());
  for (World x = 0; x < fr.size(); ++x)
    if (d[x] <= h) keep.set(x);
  std::vector<long> map;
  Frame top = fr.restrict(keep, &map);
  return Restriction{std::move(top), std::move(map)};
}

bool is_h_heavy(const Frame& fr, int h) {
  if (h < 1) throw error(errc::invalid_argument, "is_h_heavy: h must be >= 1");
  const Relation star = reach_star(fr);
  auto d = depths(fr);
  for (World x = 0; x < fr.size(); ++x) {
    if (d[x] <= h) continue;
    bool found = false;
    star[x].for_each([&](std::size_t y) { found = found || d[y] == h; });
    if (!found) return false;
  }
  return true;
}

Bits maximal_elements(const Frame& fr, const Bits& subset) {
  if (subset.size() != fr.size()) throw error(errc::invalid_argument, "maximal_elements: subset size mismatch");
  if (subset.none()) throw error(errc::invalid_argument, "maximal_elements: empty subset");
  const Relation star = reach_star(fr);
  Bits out(fr.size());
  subset.for_each([&](std::size_t x) {
    bool maximal = true;
    (star[x] & subset).for_each([&](std::size_t y) { maximal = maximal && star[y].test(x); });
    if (maximal) out.set(x);
  });
  return out;
}

Frame omega_top_frame(std::size_t N) {
  if (N < 1) throw error(errc::invalid_argument, "omega_top_frame: N must be >= 1");
  Frame f(Signature(1), N + 1);
  for (World x = 0; x <= N; ++x)
    for (World y = 0; y <= N; ++y)
      if (x <= y || x == N) f.add(0, x, y);
  return f;
}

Frame neighbor_exclusion_frame(std::size_t N) {
  if (N < 1) throw error(errc::invalid_argument, "neighbor_exclusion_frame: N must be >= 1");
  Frame f(Signature(1), N + 1);
  for (World x = 0; x <= N; ++x)
    for (World y = 0; y <= N; ++y) {
      bool base = x < N && y < N && x != y + 1 && y != x + 1;
      if (base || y == N) f.add(0, x, y);
    }
  return f;
}

Frame random_frame(std::size_t N, int n, double density, std::uint64_t seed) {
  if (N < 1) throw error(errc::invalid_argument, "random_frame: N must be >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(std::clamp(density, 0.0, 1.0));
  Frame f(Signature(n), N);
  for (int i = 0; i < n; ++i)
    for (World x = 0; x < N; ++x)
      for (World y = 0; y < N; ++y)
        if (coin(rng)) f.add(i, x, y);
  return f;
}

Frame chain_preorder(std::size_t N) {
  Frame f(Signature(1), N);
  for (World x = 0; x < N; ++x)
    for (World y = x; y < N; ++y) f.add(0, x, y);
  return f;
}

Frame cluster_frame(std::size_t N) {
  Frame f(Signature(1), N);
  for (World x = 0; x < N; ++x)
    for (World y = 0; y < N; ++y) f.add(0, x, y);
  return f;
}

Frame reflexive_point() { return cluster_frame(1); }

Frame irreflexive_point() { return Frame(Signature(1), 1); }

}  // namespace pretrans

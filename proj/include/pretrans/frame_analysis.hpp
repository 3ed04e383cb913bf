#ifndef PRETRANS_FRAME_ANALYSIS_HPP
#define PRETRANS_FRAME_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "pretrans/kripke.hpp"

namespace pretrans {

// Clusters of a frame (classes of R* ∩ R*^-1) and the order they inherit.
struct Skeleton {
  // cluster_of[x] = index of x's cluster. Clusters are numbered by their
  // smallest world.
  std::vector<int> cluster_of;
  std::vector<std::vector<World>> clusters;
  // order[c] = clusters d with c <= d (reflexive).
  std::vector<Bits> order;
  // Height of the sub-skeleton above each cluster (the cluster's depth).
  std::vector<int> depth;

  std::size_t size() const noexcept { return clusters.size(); }
  // Strict order pairs c < d.
  std::vector<std::pair<int, int>> strict_edges() const;
};

Skeleton skeleton(const Frame& fr);

// Least m with R^{<=m} = R^*.
int transitivity_degree(const Frame& fr);

// Number of clusters in a longest chain of the skeleton.
int height(const Frame& fr);
int depth(const Frame& fr, World x);
std::vector<int> depths(const Frame& fr);

struct Restriction {
  Frame frame;
  std::vector<long> index_map;  // old -> new, -1 if dropped
};

// F restricted to the points of depth <= h. Requires h >= 1.
Restriction top_restriction(const Frame& fr, int h);

bool is_h_heavy(const Frame& fr, int h);

// R*-maximal elements of a nonempty subset.
Bits maximal_elements(const Frame& fr, const Bits& subset);

// Worlds 0..N with N playing omega: x R y iff x <= y or x = N.
Frame omega_top_frame(std::size_t N);
// Worlds 0..N with N playing omega: x R y iff (x,y < N, x != y+1, y != x+1)
// or y = N.
Frame neighbor_exclusion_frame(std::size_t N);
// Each pair lands in each relation independently with the given density.
Frame random_frame(std::size_t N, int n, double density, std::uint64_t seed);

// Small named frames used by the suites.
Frame chain_preorder(std::size_t N);       // x R y iff x <= y
Frame cluster_frame(std::size_t N);         // total relation
Frame reflexive_point();
Frame irreflexive_point();

}  // namespace pretrans

#endif  // PRETRANS_FRAME_ANALYSIS_HPP

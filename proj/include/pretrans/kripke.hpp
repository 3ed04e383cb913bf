#ifndef PRETRANS_KRIPKE_HPP
#define PRETRANS_KRIPKE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pretrans/bits.hpp"
#include "pretrans/formula.hpp"

namespace pretrans {

using World = std::size_t;
using Edge = std::pair<World, World>;

// A binary relation on 0..N-1 as successor rows.
using Relation = std::vector<Bits>;

// Finite polymodal Kripke frame (W, R_0..R_{n-1}), W = {0..N-1}.
class Frame {
 public:
  Frame(Signature sig, std::size_t worlds);
  // Throws on out-of-range endpoints or duplicate pairs.
  static Frame from_pairs(Signature sig, std::size_t worlds, const std::vector<std::vector<Edge>>& relations);

  Signature sig() const noexcept { return sig_; }
  std::size_t size() const noexcept { return n_; }

  void add(int modality, World u, World v);
  bool has(int modality, World u, World v) const { return succ_[idx(modality)][u].test(v); }
  const Bits& succ(int modality, World u) const { return succ_[idx(modality)][u]; }
  const Bits& pred(int modality, World v) const { return pred_[idx(modality)][v]; }
  // Successors under the union relation R_F.
  const Bits& succ_any(World u) const { return any_[u]; }

  std::vector<std::vector<Edge>> pairs() const;
  // Union relation R_F as rows.
  Relation union_relation() const { return any_; }

  // F restricted to `subset`; map_out[old] = new index or -1.
  Frame restrict(const Bits& subset, std::vector<long>* map_out = nullptr) const;

  // <i> S as a world set.
  Bits diamond(int modality, const Bits& s) const;

  friend bool operator==(const Frame& a, const Frame& b) { return a.sig_ == b.sig_ && a.n_ == b.n_ && a.succ_ == b.succ_; }

 private:
  std::size_t idx(int modality) const;
  Signature sig_;
  std::size_t n_;
  std::vector<std::vector<Bits>> succ_;
  std::vector<std::vector<Bits>> pred_;
  std::vector<Bits> any_;
};

// Model on a frame; valuation[j] is the truth set of p_j for j < k.
struct Model {
  Frame frame;
  std::vector<Bits> valuation;

  Model(Frame f, std::vector<Bits> v);
  std::size_t k() const noexcept { return valuation.size(); }
};

// Repeated evaluation of one formula on one frame under varying
// valuations. Buffers are reused between calls.
class Evaluator {
 public:
  Evaluator(const Frame& frame, const Formula& f);
  // valuation must cover every variable of f.
  const Bits& eval(const std::vector<Bits>& valuation);
  // Word-level variant for frames of at most 64 worlds; bit w of
  // valuation[j] says p_j holds at w.
  std::uint64_t eval_small(const std::vector<std::uint64_t>& valuation);
  // Variable indices occurring in f, ascending.
  const std::vector<int>& vars() const noexcept { return vars_; }

 private:
  struct Op {
    Kind kind;
    int index;
    int a;
    int b;
  };
  const Frame& frame_;
  std::vector<Op> ops_;
  std::vector<Bits> buf_;
  std::vector<int> vars_;
  std::vector<std::vector<std::uint64_t>> pred_small_;  // [modality][world]
  std::vector<std::uint64_t> buf_small_;
};

// {x : M, x |= f}. Throws error(range) on a variable >= k or a modality >= n.
Bits truth_set(const Model& m, const Formula& f);
bool true_at(const Model& m, const Formula& f, World x);

struct ValidityOptions {
  // Upper bound on |vars(f)| * N for valuation enumeration.
  std::size_t max_bits = 24;
};

// A valuation (indexed by variable, covering vars(f)) and a world refuting f.
struct Refutation {
  std::vector<Bits> valuation;
  World world;
};

// Exhaustive search over valuations of vars(f). Throws budget_error past the
// size guard.
std::optional<Refutation> refute_on_frame(const Frame& fr, const Formula& f, ValidityOptions opt = {});
bool frame_validates(const Frame& fr, const Formula& f, ValidityOptions opt = {});

// R_F^{<=m} and R_F^* as relations (R^0 = identity).
Relation reach_le(const Frame& fr, int m);
Relation reach_star(const Frame& fr);
bool relation_subset(const Relation& a, const Relation& b);

// Frame file I/O: {"n": .., "worlds": .., "relations": [[[u,v],...],...]}.
Frame frame_from_json(const std::string& text);
std::string frame_to_json(const Frame& fr);
// A file may hold one frame object or an array of them.
// {"frame": ..., "valuation": [[worlds where p_j holds], ...]}
std::string model_to_json(const Model& m);
std::vector<Frame> frames_from_json(const std::string& text);
std::vector<Frame> load_frames(const std::string& path);

std::string frame_to_dot(const Frame& fr, const std::string& name = "F");
// Points are annotated with the variables true there.
std::string model_to_dot(const Model& m, const std::string& name = "M");

}  // namespace pretrans

#endif  // PRETRANS_KRIPKE_HPP

#ifndef PRETRANS_ALGEBRA_HPP
#define PRETRANS_ALGEBRA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pretrans/kripke.hpp"

namespace pretrans {

// Log(F_1, ..., F_r) for finite frames over a shared signature.
class FrameClassLogic {
 public:
  explicit FrameClassLogic(std::vector<Frame> frames);

  const std::vector<Frame>& frames() const noexcept { return frames_; }
  Signature sig() const noexcept { return frames_.front().sig(); }
  // Max transitivity degree over the frames: the least m with
  // <>^{m+1}p -> <>^{<=m}p in the logic.
  int m() const noexcept { return m_; }
  // JSON array of the frames in file format; identifies the logic.
  const std::string& canonical_json() const noexcept { return json_; }
  // 64-bit FNV-1a of canonical_json(), hex.
  std::string fingerprint() const;

 private:
  std::vector<Frame> frames_;
  int m_;
  std::string json_;
};

struct AlgebraOptions {
  std::uint64_t cap = 100000;                  // max element count
  std::uint64_t bit_budget = std::uint64_t{1} << 20;  // max coordinates
};

// The k-generated free algebra of a frame-class logic, realized inside the
// product of the complex algebras Cm(F) over all frames F and all
// valuations V of p_0..p_{k-1} on F. A coordinate is a triple (F, V, w).
//
// The algebra is finite and atomic; elements are unions of atoms and are
// addressed by atom sets. Every atom carries a defining k-formula.
class FreeAlgebra {
 public:
  struct Block {
    std::size_t frame;       // index into the logic's frames
    std::uint64_t valuation;  // bit j*|W|+w set iff w in V(p_j)
    std::size_t offset;      // first coordinate of the block
    std::size_t worlds;
  };

  int k() const noexcept { return k_; }
  Signature sig() const noexcept { return logic_.sig(); }
  int m() const noexcept { return logic_.m(); }
  const FrameClassLogic& logic() const noexcept { return logic_; }

  std::size_t coordinates() const noexcept { return coords_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const std::vector<Bits>& generators() const noexcept { return generators_; }

  // Atoms in lexicographic order of their coordinate vectors.
  const std::vector<Bits>& atoms() const noexcept { return atoms_; }
  const std::vector<Formula>& atom_labels() const noexcept { return labels_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  // 2^atoms, saturating at UINT64_MAX.
  std::uint64_t size() const noexcept;

  // Coordinate-level operations of the ambient product algebra.
  Bits diamond(int modality, const Bits& e) const;
  Bits universe() const { return Bits::full(coords_); }
  // Truth vector of f at every coordinate.
  Bits eval(const Formula& f) const;

  // Element <-> atom-set conversions. element_atoms() requires e to be an
  // element (a union of atoms).
  Bits element_bits(const Bits& atom_set) const;
  Bits element_atoms(const Bits& e) const;
  // Label of an element: falsum, top, or the disjunction of atom labels.
  Formula element_label(const Bits& atom_set) const;

  // Model (F, V) of a block, for re-checking labels against source frames.
  Model block_model(const Block& b) const;

 private:
  friend FreeAlgebra build_free_algebra(const FrameClassLogic&, int, AlgebraOptions);
  explicit FreeAlgebra(FrameClassLogic logic) : logic_(std::move(logic)) {}

  FrameClassLogic logic_;
  int k_ = 0;
  std::size_t coords_ = 0;
  std::vector<Block> blocks_;
  std::vector<Bits> generators_;
  std::vector<Bits> atoms_;
  std::vector<Formula> labels_;
  std::vector<int> atom_of_;  // coordinate -> atom index
};

// Closure of the generators under complement, intersection and every
// diamond, computed as the coarsest partition of the coordinates that
// refines the generator profile and is stable under each diamond. Throws
// budget_error when the coordinate count exceeds bit_budget or the element
// count exceeds cap.
FreeAlgebra build_free_algebra(const FrameClassLogic& logic, int k, AlgebraOptions opt = {});

// Atom dual of a free algebra: the finite k-canonical model.
struct CanonicalModel {
  Model model;
  std::vector<Formula> atom_labels;
  int k;
  int m;

  Signature sig() const noexcept { return model.frame.sig(); }
  std::size_t size() const noexcept { return model.frame.size(); }
};

CanonicalModel dual_canonical_model(const FreeAlgebra& a);

// p_0^± & ... & p_{k-1}^± & label(a): true exactly at a.
Formula atom_formula(const CanonicalModel& m, World a);

// Size of the subalgebra of Cm(fr) generated by the given world sets.
// Throws budget_error when it exceeds cap.
std::uint64_t subalgebra_size_probe(const Frame& fr, const std::vector<Bits>& generators,
                                    std::uint64_t cap = 100000);

}  // namespace pretrans

#endif  // PRETRANS_ALGEBRA_HPP

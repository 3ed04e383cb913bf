#include "pretrans/algebra.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"

namespace pretrans {

FrameClassLogic::FrameClassLogic(std::vector<Frame> frames) : frames_(std::move(frames)), m_(0) {
  if (frames_.empty()) throw error(errc::invalid_argument, "a frame-class logic needs at least one frame");
  json_ = "[";
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    if (frames_[i].sig() != frames_.front().sig())
      throw error(errc::invalid_argument, "frames disagree on the number of modalities");
    m_ = std::max(m_, transitivity_degree(frames_[i]));
    if (i) json_ += ",";
    json_ += frame_to_json(frames_[i]);
  }
  json_ += "]";
}

std::string FrameClassLogic::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : json_) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::uint64_t pow2_sat(std::size_t e) { return e >= 64 ? UINT64_MAX : std::uint64_t{1} << e; }

// Coarsest partition refining `classes` that is stable under every diamond:
// for each class a and modality i, <i>a is a union of classes. When labels
// are tracked, a class split by <i>a inherits label & <i>label(a) or
// label & ~<i>label(a).
struct Refiner {
  std::function<Bits(int, const Bits&)> diamond;
  int modalities;
  std::uint64_t cap;
  bool track_labels;

  void run(std::vector<Bits>& classes, std::vector<Formula>& labels) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < classes.size(); ++a) {
        for (int i = 0; i < modalities; ++i) {
          Bits image = diamond(i, classes[a]);
          Formula image_label = track_labels ? Formula::diamond(i, labels[a]) : Formula();
          const std::size_t before = classes.size();
          for (std::size_t c = 0; c < before; ++c) {
            if (!classes[c].intersects(image) || classes[c].subset_of(image)) continue;
            Bits outside = classes[c] - image;
            classes[c] &= image;
            classes.push_back(std::move(outside));
            if (track_labels) {
              Formula base = labels[c];
              labels[c] = Formula::conj(base, image_label);
              labels.push_back(Formula::conj(base, Formula::neg(image_label)));
            }
            changed = true;
            if (pow2_sat(classes.size()) > cap)
              throw budget_error("algebra cap exceeded: more than " + std::to_string(cap) + " elements (at least 2^" +
                                     std::to_string(classes.size()) + ")",
                                 static_cast<std::size_t>(pow2_sat(classes.size())));
          }
        }
      }
    }
  }
};

}  // namespace

std::uint64_t FreeAlgebra::size() const noexcept { return pow2_sat(atoms_.size()); }

Bits FreeAlgebra::diamond(int modality, const Bits& e) const {
  Bits out(coords_);
  for (const auto& b : blocks_) {
    const Frame& fr = logic_.frames()[b.frame];
    for (std::size_t w = 0; w < b.worlds; ++w) {
      if (!e.test(b.offset + w)) continue;
      fr.pred(modality, w).for_each([&](std::size_t u) { out.set(b.offset + u); });
    }
  }
  return out;
}

Model FreeAlgebra::block_model(const Block& b) const {
  const Frame& fr = logic_.frames()[b.frame];
  std::vector<Bits> val(static_cast<std::size_t>(k_), Bits(b.worlds));
  for (int j = 0; j < k_; ++j)
    for (std::size_t w = 0; w < b.worlds; ++w)
      if ((b.valuation >> (static_cast<std::size_t>(j) * b.worlds + w)) & 1u) val[static_cast<std::size_t>(j)].set(w);
  return Model(fr, std::move(val));
}

Bits FreeAlgebra::eval(const Formula& f) const {
  if (f.var_bound() > k_) throw error(errc::range, "formula uses a variable outside p0..p" + std::to_string(k_ - 1));
  Bits out(coords_);
  std::size_t bi = 0;
  while (bi < blocks_.size()) {
    // One evaluator per frame, reused across its valuations.
    const std::size_t frame = blocks_[bi].frame;
    Evaluator ev(logic_.frames()[frame], f);
    for (; bi < blocks_.size() && blocks_[bi].frame == frame; ++bi) {
      const Block& b = blocks_[bi];
      Model m = block_model(b);
      const Bits& t = ev.eval(m.valuation);
      t.for_each([&](std::size_t w) { out.set(b.offset + w); });
    }
  }
  return out;
}

Bits FreeAlgebra::element_bits(const Bits& atom_set) const {
  Bits out(coords_);
  atom_set.for_each([&](std::size_t a) { out |= atoms_[a]; });
  return out;
}

Bits FreeAlgebra::element_atoms(const Bits& e) const {
  Bits out(atoms_.size());
  e.for_each([&](std::size_t c) { out.set(static_cast<std::size_t>(atom_of_[c])); });
  if (!(element_bits(out) == e)) throw error(errc::invalid_argument, "bit vector is not an element of the algebra");
  return out;
}

Formula FreeAlgebra::element_label(const Bits& atom_set) const {
  if (atom_set.none()) return Formula::falsum();
  if (atom_set.all()) return Formula::top();
  std::vector<Formula> parts;
  atom_set.for_each([&](std::size_t a) { parts.push_back(labels_[a]); });
  return Formula::disj_all(parts);
}

FreeAlgebra build_free_algebra(const FrameClassLogic& logic, int k, AlgebraOptions opt) {
  if (k < 0) throw error(errc::invalid_argument, "k must be >= 0");
  FreeAlgebra A(logic);
  A.k_ = k;
  std::uint64_t coords = 0;
  for (const auto& fr : logic.frames()) {
    const std::size_t bits = static_cast<std::size_t>(k) * fr.size();
    if (bits >= 40) throw budget_error("algebra bit budget exceeded: 2^" + std::to_string(bits) + " valuations");
    coords += fr.size() << bits;
    if (coords > opt.bit_budget)
      throw budget_error("algebra bit budget exceeded: more than " + std::to_string(opt.bit_budget) + " coordinates");
  }
  A.coords_ = static_cast<std::size_t>(coords);

  std::size_t offset = 0;
  for (std::size_t f = 0; f < logic.frames().size(); ++f) {
    const std::size_t worlds = logic.frames()[f].size();
    const std::uint64_t vals = std::uint64_t{1} << (static_cast<std::size_t>(k) * worlds);
    for (std::uint64_t v = 0; v < vals; ++v) {
      A.blocks_.push_back({f, v, offset, worlds});
      offset += worlds;
    }
  }

  A.generators_.assign(static_cast<std::size_t>(k), Bits(A.coords_));
  for (const auto& b : A.blocks_)
    for (int j = 0; j < k; ++j)
      for (std::size_t w = 0; w < b.worlds; ++w)
        if ((b.valuation >> (static_cast<std::size_t>(j) * b.worlds + w)) & 1u)
          A.generators_[static_cast<std::size_t>(j)].set(b.offset + w);

  // Initial partition: the literal profile over p_0..p_{k-1}.
  std::map<std::uint64_t, std::size_t> by_profile;
  std::vector<Bits> classes;
  std::vector<Formula> labels;
  for (std::size_t c = 0; c < A.coords_; ++c) {
    std::uint64_t profile = 0;
    for (int j = 0; j < k; ++j)
      if (A.generators_[static_cast<std::size_t>(j)].test(c)) profile |= std::uint64_t{1} << j;
    auto [it, fresh] = by_profile.emplace(profile, classes.size());
    if (fresh) {
      classes.emplace_back(A.coords_);
      std::vector<Formula> lits;
      for (int j = 0; j < k; ++j) {
        Formula p = Formula::var(j);
        lits.push_back((profile >> j) & 1u ? p : Formula::neg(p));
      }
      labels.push_back(Formula::conj_all(lits));
    }
    classes[it->second].set(c);
  }
  if (pow2_sat(classes.size()) > opt.cap)
    throw budget_error("algebra cap exceeded: more than " + std::to_string(opt.cap) + " elements",
                       static_cast<std::size_t>(pow2_sat(classes.size())));

  Refiner refiner{[&A](int i, const Bits& e) { return A.diamond(i, e); }, logic.sig().n(), opt.cap, true};
  refiner.run(classes, labels);

  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(classes[a], classes[b]); });
  A.atom_of_.assign(A.coords_, -1);
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    A.atoms_.push_back(classes[order[idx]]);
    A.labels_.push_back(labels[order[idx]]);
    A.atoms_.back().for_each([&](std::size_t c) { A.atom_of_[c] = static_cast<int>(idx); });
  }
  return A;
}

CanonicalModel dual_canonical_model(const FreeAlgebra& A) {
  const std::size_t n = A.atom_count();
  Frame fr(A.sig(), n);
  for (int i = 0; i < A.sig().n(); ++i)
    for (std::size_t b = 0; b < n; ++b) {
      Bits image = A.diamond(i, A.atoms()[b]);
      for (std::size_t a = 0; a < n; ++a)
        if (A.atoms()[a].subset_of(image)) fr.add(i, a, b);
    }
  std::vector<Bits> val(static_cast<std::size_t>(A.k()), Bits(n));
  for (int j = 0; j < A.k(); ++j)
    for (std::size_t a = 0; a < n; ++a)
      if (A.atoms()[a].subset_of(A.generators()[static_cast<std::size_t>(j)])) val[static_cast<std::size_t>(j)].set(a);
  return CanonicalModel{Model(std::move(fr), std::move(val)), A.atom_labels(), A.k(), A.m()};
}

Formula atom_formula(const CanonicalModel& m, World a) {
  if (a >= m.size()) throw error(errc::range, "atom index out of range");
  std::vector<Formula> parts;
  for (int j = 0; j < m.k; ++j) {
    Formula p = Formula::var(j);
    parts.push_back(m.model.valuation[static_cast<std::size_t>(j)].test(a) ? p : Formula::neg(p));
  }
  parts.push_back(m.atom_labels[a]);
  return Formula::conj_all(parts);
}

std::uint64_t subalgebra_size_probe(const Frame& fr, const std::vector<Bits>& generators, std::uint64_t cap) {
  const std::size_t n = fr.size();
  std::map<std::vector<bool>, std::size_t> by_profile;
  std::vector<Bits> classes;
  for (World x = 0; x < n; ++x) {
    std::vector<bool> profile;
    for (const auto& g : generators) {
      if (g.size() != n) throw error(errc::invalid_argument, "generator size does not match the frame");
      profile.push_back(g.test(x));
    }
    auto [it, fresh] = by_profile.emplace(profile, classes.size());
    if (fresh) classes.emplace_back(n);
    classes[it->second].set(x);
  }
  if (pow2_sat(classes.size()) > cap)
    throw budget_error("subalgebra cap exceeded: more than " + std::to_string(cap) + " elements", classes.size());
  std::vector<Formula> unused;
  Refiner refiner{[&fr](int i, const Bits& e) { return fr.diamond(i, e); }, fr.sig().n(), cap, false};
  refiner.run(classes, unused);
  return pow2_sat(classes.size());
}

}  // namespace pretrans

#ifndef PRETRANS_BITS_HPP
#define PRETRANS_BITS_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace pretrans {

// Fixed-width dynamic bitset. Used for world sets, adjacency rows and
// free-algebra coordinate vectors.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static Bits full(std::size_t n) {
    Bits b(n);
    b.set_all();
    return b;
  }

  std::size_t size() const noexcept { return n_; }
  bool empty_domain() const noexcept { return n_ == 0; }

  bool test(std::size_t i) const noexcept { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

  void clear() noexcept { std::fill(w_.begin(), w_.end(), 0); }
  void set_all() noexcept {
    std::fill(w_.begin(), w_.end(), ~std::uint64_t{0});
    trim();
  }

  bool none() const noexcept {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }
  bool all() const noexcept {
    Bits f = full(n_);
    return *this == f;
  }
  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

  bool intersects(const Bits& o) const noexcept {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const Bits& o) const noexcept {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  // Set difference.
  Bits& operator-=(const Bits& o) noexcept {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }
  void flip() noexcept {
    for (auto& x : w_) x = ~x;
    trim();
  }

  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator-(Bits a, const Bits& b) { return a -= b; }
  friend Bits operator~(Bits a) {
    a.flip();
    return a;
  }

  friend bool operator==(const Bits& a, const Bits& b) noexcept { return a.n_ == b.n_ && a.w_ == b.w_; }

  // Lexicographic order on the bit string b_0 b_1 ...: at the first
  // differing index, the vector holding a 1 sorts first.
  friend bool lex_less(const Bits& a, const Bits& b) noexcept {
    for (std::size_t i = 0; i < a.w_.size() && i < b.w_.size(); ++i) {
      std::uint64_t d = a.w_[i] ^ b.w_[i];
      if (d) return (a.w_[i] >> std::countr_zero(d)) & 1u;
    }
    return a.n_ < b.n_;
  }

  // Index of the lowest set bit, or size() if none.
  std::size_t first() const noexcept { return next(0); }
  std::size_t next(std::size_t from) const noexcept {
    if (from >= n_) return n_;
    std::size_t wi = from >> 6;
    std::uint64_t cur = w_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (cur) return std::min(n_, wi * 64 + static_cast<std::size_t>(std::countr_zero(cur)));
      if (++wi >= w_.size()) return n_;
      cur = w_[wi];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t cur = w_[wi];
      while (cur) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(cur)));
        cur &= cur - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return w_; }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(n_);
    for (auto x : w_) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() noexcept {
    if (n_ & 63) w_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

}  // namespace pretrans

#endif  // PRETRANS_BITS_HPP

#ifndef PRETRANS_FORMULA_HPP
#define PRETRANS_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pretrans {

// Number of modalities <0>..<n-1>.
class Signature {
 public:
  explicit Signature(int n = 1);
  int n() const noexcept { return n_; }
  friend bool operator==(Signature, Signature) = default;

 private:
  int n_;
};

enum class Kind : std::uint8_t { Var, Falsum, Implies, Diamond };

class Formula;

namespace detail {
struct Node;
}

// Immutable, hash-consed polymodal formula over the kernel
// {Var, Falsum, Implies, Diamond}. Structurally equal formulas share one
// node, so equality and hashing are pointer operations.
class Formula {
 public:
  // Defaults to falsum.
  Formula();

  static Formula var(int index);
  static Formula falsum();
  static Formula implies(const Formula& a, const Formula& b);
  static Formula diamond(int modality, const Formula& a);

  // Sugar, expanded on construction.
  static Formula top();
  static Formula neg(const Formula& a);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula iff(const Formula& a, const Formula& b);
  static Formula box(int modality, const Formula& a);
  // Left folds; conj_all({}) = top, disj_all({}) = falsum.
  static Formula conj_all(const std::vector<Formula>& xs);
  static Formula disj_all(const std::vector<Formula>& xs);

  Kind kind() const noexcept;
  // Variable index for Var, modality for Diamond.
  int index() const noexcept;
  const Formula& lhs() const noexcept;  // Implies antecedent, Diamond body
  const Formula& rhs() const noexcept;  // Implies consequent

  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_falsum() const noexcept { return kind() == Kind::Falsum; }
  bool is_implies() const noexcept { return kind() == Kind::Implies; }
  bool is_diamond() const noexcept { return kind() == Kind::Diamond; }

  int modal_depth() const noexcept;
  // Highest modality index used, -1 if none.
  int max_modality() const noexcept;
  // One past the highest variable index, 0 if variable-free.
  int var_bound() const noexcept;
  // Tree size (saturating).
  std::uint64_t tree_size() const noexcept;

  const void* id() const noexcept { return node_.get(); }
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept { return a.node_ == b.node_; }
  // Arbitrary but process-stable order (by pointer); only for containers.
  friend bool operator<(const Formula& a, const Formula& b) noexcept { return a.node_ < b.node_; }

 private:
  explicit Formula(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  explicit Formula(std::nullptr_t) {}
  friend struct detail::Node;
  static Formula make(Kind kind, int index, const Formula* a, const Formula* b);
  std::shared_ptr<const detail::Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using Substitution = std::map<int, Formula>;

// Parses the textual grammar; throws parse_error (syntax) or error(range)
// when a modality index is >= sig.n().
Formula parse(std::string_view text, Signature sig = Signature(1));

// Canonical kernel rendering; parse(render(f)) == f.
std::string render(const Formula& f);
// Rendering that folds the sugar patterns (~, &, |, [i], true) back.
// Re-parses to the same kernel formula.
std::string render_pretty(const Formula& f);

Formula substitute(const Formula& f, const Substitution& s);

// <>^{<=m} and []^{<=m} over all modalities of sig.
Formula dia_le(int m, const Formula& f, Signature sig);
Formula box_le(int m, const Formula& f, Signature sig);
// D f = <0>f | ... | <n-1>f
Formula dia_any(const Formula& f, Signature sig);

// Replaces every <0> by dia_le(m, . , sig). Throws on non-unimodal input.
Formula star_expand(const Formula& f, int m, Signature sig);

std::vector<Formula> subformulas(const Formula& f);
std::set<int> variables(const Formula& f);
// Distinct DAG nodes reachable from f.
std::size_t dag_size(const Formula& f);

// Throws error(range) if f uses a modality >= sig.n().
void check_signature(const Formula& f, Signature sig);

}  // namespace pretrans

#endif  // PRETRANS_FORMULA_HPP

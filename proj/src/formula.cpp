#include "pretrans/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "pretrans/error.hpp"

namespace pretrans {

Signature::Signature(int n) : n_(n) {
  if (n < 1) throw error(errc::invalid_argument, "signature needs at least one modality");
}

namespace detail {

struct Node {
  Node() : lhs(nullptr), rhs(nullptr) {}
  Kind kind;
  int index;
  Formula lhs;
  Formula rhs;
  std::size_t hash;
  int depth;
  int max_mod;
  int var_bound;
  std::uint64_t size;
};

namespace {

struct Key {
  Kind kind;
  int index;
  const void* a;
  const void* b;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = std::hash<int>{}(static_cast<int>(k.kind) * 1000003 + k.index);
    h ^= std::hash<const void*>{}(k.a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<const void*>{}(k.b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct InternTable {
  std::mutex mu;
  std::unordered_map<Key, std::weak_ptr<const Node>, KeyHash> map;
  std::size_t sweep_at = 1 << 16;
};

InternTable& table() {
  static auto* t = new InternTable;  // leaked on purpose: outlives static formulas
  return *t;
}

}  // namespace
}  // namespace detail

namespace {
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? UINT64_MAX : s;
}
}  // namespace

Formula Formula::make(Kind kind, int index, const Formula* a, const Formula* b) {
  using detail::Key;
  Key key{kind, index, a ? a->id() : nullptr, b ? b->id() : nullptr};
  auto& t = detail::table();
  std::lock_guard lock(t.mu);
  if (auto it = t.map.find(key); it != t.map.end()) {
    if (auto sp = it->second.lock()) return Formula(std::move(sp));
  }
  auto n = std::make_shared<detail::Node>();
  n->kind = kind;
  n->index = index;
  if (a) n->lhs = *a;
  if (b) n->rhs = *b;
  n->hash = detail::KeyHash{}(key);
  switch (kind) {
    case Kind::Var:
      n->depth = 0;
      n->max_mod = -1;
      n->var_bound = index + 1;
      n->size = 1;
      break;
    case Kind::Falsum:
      n->depth = 0;
      n->max_mod = -1;
      n->var_bound = 0;
      n->size = 1;
      break;
    case Kind::Implies:
      n->depth = std::max(a->modal_depth(), b->modal_depth());
      n->max_mod = std::max(a->max_modality(), b->max_modality());
      n->var_bound = std::max(a->var_bound(), b->var_bound());
      n->size = sat_add(1, sat_add(a->tree_size(), b->tree_size()));
      break;
    case Kind::Diamond:
      n->depth = a->modal_depth() + 1;
      n->max_mod = std::max(index, a->max_modality());
      n->var_bound = a->var_bound();
      n->size = sat_add(1, a->tree_size());
      break;
  }
  std::shared_ptr<const detail::Node> sp = std::move(n);
  t.map[key] = sp;
  if (t.map.size() > t.sweep_at) {
    std::erase_if(t.map, [](const auto& kv) { return kv.second.expired(); });
    t.sweep_at = std::max<std::size_t>(1 << 16, 2 * t.map.size());
  }
  return Formula(std::move(sp));
}

Formula::Formula() : Formula(falsum()) {}

Formula Formula::var(int index) {
  if (index < 0) throw error(errc::range, "negative variable index");
  return make(Kind::Var, index, nullptr, nullptr);
}

Formula Formula::falsum() {
  static const Formula f = make(Kind::Falsum, 0, nullptr, nullptr);
  return f;
}

Formula Formula::implies(const Formula& a, const Formula& b) { return make(Kind::Implies, 0, &a, &b); }

Formula Formula::diamond(int modality, const Formula& a) {
  if (modality < 0) throw error(errc::range, "negative modality index");
  return make(Kind::Diamond, modality, &a, nullptr);
}

Formula Formula::top() { return neg(falsum()); }
Formula Formula::neg(const Formula& a) { return implies(a, falsum()); }
Formula Formula::conj(const Formula& a, const Formula& b) { return neg(implies(a, neg(b))); }
Formula Formula::disj(const Formula& a, const Formula& b) { return implies(neg(a), b); }
Formula Formula::iff(const Formula& a, const Formula& b) { return conj(implies(a, b), implies(b, a)); }
Formula Formula::box(int modality, const Formula& a) { return neg(diamond(modality, neg(a))); }

Formula Formula::conj_all(const std::vector<Formula>& xs) {
  if (xs.empty()) return top();
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = conj(acc, xs[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& xs) {
  if (xs.empty()) return falsum();
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = disj(acc, xs[i]);
  return acc;
}

Kind Formula::kind() const noexcept { return node_->kind; }
int Formula::index() const noexcept { return node_->index; }
const Formula& Formula::lhs() const noexcept { return node_->lhs; }
const Formula& Formula::rhs() const noexcept { return node_->rhs; }
int Formula::modal_depth() const noexcept { return node_->depth; }
int Formula::max_modality() const noexcept { return node_->max_mod; }
int Formula::var_bound() const noexcept { return node_->var_bound; }
std::uint64_t Formula::tree_size() const noexcept { return node_->size; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Var, True, False, LParen, RParen, Not, And, Or, Imp, Iff, Dia, Box };

struct Token {
  Tok tok;
  int value;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::size_t at = i_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, 0, at});
        return out;
      }
      char c = s_[i_];
      if (starts("<->")) {
        i_ += 3;
        out.push_back({Tok::Iff, 0, at});
      } else if (starts("->")) {
        i_ += 2;
        out.push_back({Tok::Imp, 0, at});
      } else if (c == '<' || c == '[') {
        char close = c == '<' ? '>' : ']';
        ++i_;
        skip_ws();
        int v = integer(at);
        skip_ws();
        if (i_ >= s_.size() || s_[i_] != close) throw parse_error(std::string("expected '") + close + "'", i_);
        ++i_;
        out.push_back({c == '<' ? Tok::Dia : Tok::Box, v, at});
      } else if (c == '(') {
        ++i_;
        out.push_back({Tok::LParen, 0, at});
      } else if (c == ')') {
        ++i_;
        out.push_back({Tok::RParen, 0, at});
      } else if (c == '~') {
        ++i_;
        out.push_back({Tok::Not, 0, at});
      } else if (c == '&') {
        ++i_;
        out.push_back({Tok::And, 0, at});
      } else if (c == '|') {
        ++i_;
        out.push_back({Tok::Or, 0, at});
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t j = i_;
        while (j < s_.size() && std::isalpha(static_cast<unsigned char>(s_[j]))) ++j;
        std::string_view word = s_.substr(i_, j - i_);
        if (word == "p" && j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
          i_ = j;
          out.push_back({Tok::Var, integer(at), at});
        } else if (word == "true") {
          i_ = j;
          out.push_back({Tok::True, 0, at});
        } else if (word == "false") {
          i_ = j;
          out.push_back({Tok::False, 0, at});
        } else if (word == "dia") {
          i_ = j;
          out.push_back({Tok::Dia, 0, at});
        } else if (word == "box") {
          i_ = j;
          out.push_back({Tok::Box, 0, at});
        } else {
          throw parse_error("unknown identifier '" + std::string(word) + "'", at);
        }
      } else {
        throw parse_error(std::string("unexpected character '") + c + "'", at);
      }
    }
  }

 private:
  bool starts(std::string_view lit) const { return s_.substr(i_, lit.size()) == lit; }
  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  int integer(std::size_t at) {
    std::size_t j = i_;
    long long v = 0;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
      v = v * 10 + (s_[j] - '0');
      if (v > 1'000'000) throw parse_error("index too large", at);
      ++j;
    }
    if (j == i_) throw parse_error("expected integer", i_);
    i_ = j;
    return static_cast<int>(v);
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Signature sig) : t_(std::move(toks)), sig_(sig) {}

  Formula run() {
    Formula f = iff();
    if (peek().tok != Tok::End) throw parse_error("unexpected trailing input", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return t_[i_]; }
  Token take() { return t_[i_++]; }

  Formula iff() {
    Formula f = imp();
    while (peek().tok == Tok::Iff) {
      take();
      f = Formula::iff(f, imp());
    }
    return f;
  }
  Formula imp() {
    Formula f = disj();
    if (peek().tok == Tok::Imp) {
      take();
      return Formula::implies(f, imp());
    }
    return f;
  }
  Formula disj() {
    Formula f = conj();
    while (peek().tok == Tok::Or) {
      take();
      f = Formula::disj(f, conj());
    }
    return f;
  }
  Formula conj() {
    Formula f = unary();
    while (peek().tok == Tok::And) {
      take();
      f = Formula::conj(f, unary());
    }
    return f;
  }
  Formula unary() {
    Token t = take();
    switch (t.tok) {
      case Tok::Not:
        return Formula::neg(unary());
      case Tok::Dia:
        check_mod(t);
        return Formula::diamond(t.value, unary());
      case Tok::Box:
        check_mod(t);
        return Formula::box(t.value, unary());
      case Tok::Var:
        return Formula::var(t.value);
      case Tok::True:
        return Formula::top();
      case Tok::False:
        return Formula::falsum();
      case Tok::LParen: {
        Formula f = iff();
        if (peek().tok != Tok::RParen) throw parse_error("expected ')'", peek().pos);
        take();
        return f;
      }
      case Tok::End:
        throw parse_error("unexpected end of input", t.pos);
      default:
        throw parse_error("unexpected token", t.pos);
    }
  }
  void check_mod(const Token& t) const {
    if (t.value >= sig_.n())
      throw error(errc::range, "modality index " + std::to_string(t.value) + " out of range (n=" +
                                   std::to_string(sig_.n()) + ") at position " + std::to_string(t.pos));
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  Signature sig_;
};

}  // namespace

Formula parse(std::string_view text, Signature sig) { return Parser(Lexer(text).run(), sig).run(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Kind::Var:
      out += 'p';
      out += std::to_string(f.index());
      break;
    case Kind::Falsum:
      out += "false";
      break;
    case Kind::Implies:
      out += '(';
      render_into(f.lhs(), out);
      out += " -> ";
      render_into(f.rhs(), out);
      out += ')';
      break;
    case Kind::Diamond:
      out += '<';
      out += std::to_string(f.index());
      out += "> ";
      render_into(f.lhs(), out);
      break;
  }
}

// Precedence levels of the grammar: 1 imp, 2 or, 3 and, 4 unary.
struct Pretty {
  std::string text;
  int level;
};

bool is_neg(const Formula& f) { return f.is_implies() && f.rhs().is_falsum(); }

Pretty pretty(const Formula& f);

std::string at_least(const Formula& f, int level) {
  Pretty p = pretty(f);
  return p.level >= level ? p.text : "(" + p.text + ")";
}

Pretty pretty(const Formula& f) {
  switch (f.kind()) {
    case Kind::Var:
      return {"p" + std::to_string(f.index()), 4};
    case Kind::Falsum:
      return {"false", 4};
    case Kind::Diamond:
      return {"<" + std::to_string(f.index()) + "> " + at_least(f.lhs(), 4), 4};
    case Kind::Implies:
      break;
  }
  const Formula& a = f.lhs();
  const Formula& b = f.rhs();
  if (b.is_falsum()) {
    if (a.is_falsum()) return {"true", 4};
    // ~(x -> ~y) == x & y
    if (a.is_implies() && is_neg(a.rhs()))
      return {at_least(a.lhs(), 3) + " & " + at_least(a.rhs().lhs(), 4), 3};
    // ~<i>~x == [i] x
    if (a.is_diamond() && is_neg(a.lhs()))
      return {"[" + std::to_string(a.index()) + "] " + at_least(a.lhs().lhs(), 4), 4};
    return {"~" + at_least(a, 4), 4};
  }
  // ~x -> y == x | y
  if (is_neg(a)) return {at_least(a.lhs(), 2) + " | " + at_least(b, 3), 2};
  return {at_least(a, 2) + " -> " + at_least(b, 1), 1};
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::string render_pretty(const Formula& f) { return pretty(f).text; }

// ---------------------------------------------------------------------------
// Syntactic operators

Formula substitute(const Formula& f, const Substitution& s) {
  std::unordered_map<Formula, Formula, FormulaHash> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Formula r;
    switch (g.kind()) {
      case Kind::Var: {
        auto it = s.find(g.index());
        r = it == s.end() ? g : it->second;
        break;
      }
      case Kind::Falsum:
        r = g;
        break;
      case Kind::Implies:
        r = Formula::implies(go(g.lhs()), go(g.rhs()));
        break;
      case Kind::Diamond:
        r = Formula::diamond(g.index(), go(g.lhs()));
        break;
    }
    memo.emplace(g, r);
    return r;
  };
  return go(f);
}

Formula dia_any(const Formula& f, Signature sig) {
  std::vector<Formula> parts;
  parts.reserve(static_cast<std::size_t>(sig.n()));
  for (int i = 0; i < sig.n(); ++i) parts.push_back(Formula::diamond(i, f));
  return Formula::disj_all(parts);
}

Formula dia_le(int m, const Formula& f, Signature sig) {
  if (m < 0) throw error(errc::invalid_argument, "dia_le: negative bound");
  std::vector<Formula> powers{f};
  for (int i = 1; i <= m; ++i) powers.push_back(dia_any(powers.back(), sig));
  return Formula::disj_all(powers);
}

Formula box_le(int m, const Formula& f, Signature sig) { return Formula::neg(dia_le(m, Formula::neg(f), sig)); }

Formula star_expand(const Formula& f, int m, Signature sig) {
  if (f.max_modality() > 0) throw error(errc::invalid_argument, "star_expand: formula is not unimodal");
  std::unordered_map<Formula, Formula, FormulaHash> memo;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    Formula r;
    switch (g.kind()) {
      case Kind::Var:
      case Kind::Falsum:
        r = g;
        break;
      case Kind::Implies:
        r = Formula::implies(go(g.lhs()), go(g.rhs()));
        break;
      case Kind::Diamond:
        r = dia_le(m, go(g.lhs()), sig);
        break;
    }
    memo.emplace(g, r);
    return r;
  };
  return go(f);
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    out.push_back(g);
    if (g.is_implies()) {
      stack.push_back(g.rhs());
      stack.push_back(g.lhs());
    } else if (g.is_diamond()) {
      stack.push_back(g.lhs());
    }
  }
  return out;
}

std::set<int> variables(const Formula& f) {
  std::set<int> out;
  for (const auto& g : subformulas(f))
    if (g.is_var()) out.insert(g.index());
  return out;
}

std::size_t dag_size(const Formula& f) { return subformulas(f).size(); }

void check_signature(const Formula& f, Signature sig) {
  if (f.max_modality() >= sig.n())
    throw error(errc::range, "modality index " + std::to_string(f.max_modality()) + " out of range (n=" +
                                 std::to_string(sig.n()) + ")");
}

}  // namespace pretrans

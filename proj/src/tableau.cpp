#include "pretrans/tableau.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "pretrans/error.hpp"

namespace pretrans {

std::string to_string(NamedLogic l) {
  switch (l) {
    case NamedLogic::K:
      return "K";
    case NamedLogic::T:
      return "T";
    case NamedLogic::K4:
      return "K4";
    case NamedLogic::S4:
      return "S4";
    case NamedLogic::S5:
      return "S5";
  }
  return "?";
}

NamedLogic named_logic_from_string(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "k") return NamedLogic::K;
  if (l == "t") return NamedLogic::T;
  if (l == "k4") return NamedLogic::K4;
  if (l == "s4") return NamedLogic::S4;
  if (l == "s5") return NamedLogic::S5;
  throw error(errc::invalid_argument, "unknown logic '" + s + "'");
}

namespace {

// Subformula closure in post-order (children before parents).
struct Closure {
  std::vector<Formula> nodes;
  std::vector<Kind> kind;
  std::vector<int> index;  // var index / modality
  std::vector<int> a, b;   // child ids
  std::unordered_map<Formula, int, FormulaHash> id;

  explicit Closure(const Formula& root) {
    std::vector<std::pair<Formula, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [g, expanded] = stack.back();
      stack.pop_back();
      if (id.count(g)) continue;
      if (!expanded && (g.is_implies() || g.is_diamond())) {
        stack.push_back({g, true});
        if (g.is_implies()) stack.push_back({g.rhs(), false});
        stack.push_back({g.lhs(), false});
        continue;
      }
      int i = static_cast<int>(nodes.size());
      id.emplace(g, i);
      nodes.push_back(g);
      kind.push_back(g.kind());
      index.push_back(g.index());
      a.push_back(g.is_implies() || g.is_diamond() ? id.at(g.lhs()) : -1);
      b.push_back(g.is_implies() ? id.at(g.rhs()) : -1);
    }
  }
  std::size_t size() const { return nodes.size(); }
};

// Signed formula s = 2*id + (true ? 1 : 0).
inline std::size_t T(int id) { return 2 * static_cast<std::size_t>(id) + 1; }
inline std::size_t F(int id) { return 2 * static_cast<std::size_t>(id); }

class Prover {
 public:
  Prover(NamedLogic logic, const Formula& f, TableauOptions opt)
      : logic_(logic), c_(f), opt_(opt), reflexive_(logic == NamedLogic::T || logic == NamedLogic::S4),
        transitive_(logic == NamedLogic::K4 || logic == NamedLogic::S4) {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_.kind[i] == Kind::Implies) implies_.push_back(static_cast<int>(i));
      if (c_.kind[i] == Kind::Diamond) diamonds_.push_back(static_cast<int>(i));
    }
  }

  TableauResult run(const Formula& f) {
    Bits root(2 * c_.size());
    root.set(F(c_.id.at(f)));
    std::vector<Ancestor> anc;
    TableauResult r;
    bool sat = solve(root, anc);
    r.steps = steps_;
    r.valid = !sat;
    if (sat) {
      r.countermodel = build_model(f.var_bound());
      r.world = 0;
    }
    return r;
  }

 private:
  struct Ancestor {
    Bits init;
    int node;
  };
  struct Node {
    Bits sat;
    std::vector<int> succ;
  };

  // Deterministic expansion; false on a clash.
  bool propagate(Bits& s) {
    bool changed = true;
    while (changed) {
      changed = false;
      if (++steps_ > opt_.max_steps) throw budget_error("tableau step budget exceeded", steps_);
      for (std::size_t i = 0; i < c_.size(); ++i) {
        const int id = static_cast<int>(i);
        const bool t = s.test(T(id)), f = s.test(F(id));
        if (t && f) return false;
        if (!t && !f) continue;
        switch (c_.kind[i]) {
          case Kind::Falsum:
            if (t) return false;
            break;
          case Kind::Implies: {
            const int a = c_.a[i], b = c_.b[i];
            if (f) {
              changed |= add(s, T(a));
              changed |= add(s, F(b));
            } else if (s.test(T(a))) {
              changed |= add(s, T(b));
            } else if (s.test(F(b))) {
              changed |= add(s, F(a));
            }
            break;
          }
          case Kind::Diamond:
            if (f && reflexive_) changed |= add(s, F(c_.a[i]));
            break;
          case Kind::Var:
            break;
        }
      }
    }
    return true;
  }

  static bool add(Bits& s, std::size_t lit) {
    if (s.test(lit)) return false;
    s.set(lit);
    return true;
  }

  bool solve(Bits s, std::vector<Ancestor>& anc) {
    Bits init = s;
    if (unsat_.count(init)) return false;
    bool ok = saturate(std::move(s), init, anc);
    if (!ok) unsat_.insert(init);
    return ok;
  }

  bool saturate(Bits s, const Bits& init, std::vector<Ancestor>& anc) {
    if (!propagate(s)) return false;
    for (int id : implies_) {
      if (!s.test(T(id))) continue;
      const int a = c_.a[static_cast<std::size_t>(id)], b = c_.b[static_cast<std::size_t>(id)];
      if (s.test(F(a)) || s.test(T(b))) continue;
      Bits left = s;
      left.set(F(a));
      const std::size_t mark = nodes_.size();
      if (saturate(std::move(left), init, anc)) return true;
      nodes_.resize(mark);
      s.set(T(a));
      s.set(T(b));
      return saturate(std::move(s), init, anc);
    }
    return modal_step(s, init, anc);
  }

  bool modal_step(const Bits& s, const Bits& init, std::vector<Ancestor>& anc) {
    const int me = static_cast<int>(nodes_.size());
    nodes_.push_back({s, {}});
    anc.push_back({init, me});
    bool ok = true;
    for (int d : diamonds_) {
      if (!s.test(T(d))) continue;
      Bits child(2 * c_.size());
      child.set(T(c_.a[static_cast<std::size_t>(d)]));
      for (int e : diamonds_) {
        if (!s.test(F(e))) continue;
        child.set(F(c_.a[static_cast<std::size_t>(e)]));
        if (transitive_) child.set(F(e));
      }
      if (transitive_) {
        auto hit = std::find_if(anc.begin(), anc.end(), [&](const Ancestor& x) { return x.init == child; });
        if (hit != anc.end()) {
          nodes_[static_cast<std::size_t>(me)].succ.push_back(hit->node);
          continue;
        }
      }
      const int child_id = static_cast<int>(nodes_.size());
      if (!solve(std::move(child), anc)) {
        ok = false;
        break;
      }
      nodes_[static_cast<std::size_t>(me)].succ.push_back(child_id);
    }
    anc.pop_back();
    return ok;
  }

  Model build_model(int k) const {
    const std::size_t n = nodes_.size();
    Frame fr(Signature(1), n);
    Relation r(n, Bits(n));
    for (std::size_t u = 0; u < n; ++u)
      for (int v : nodes_[u].succ) r[u].set(static_cast<std::size_t>(v));
    if (reflexive_)
      for (std::size_t u = 0; u < n; ++u) r[u].set(u);
    if (transitive_) {
      // Warshall
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t u = 0; u < n; ++u)
          if (r[u].test(m)) r[u] |= r[m];
    }
    for (std::size_t u = 0; u < n; ++u) r[u].for_each([&](std::size_t v) { fr.add(0, u, v); });
    std::vector<Bits> val(static_cast<std::size_t>(k), Bits(n));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_.kind[i] != Kind::Var) continue;
      for (std::size_t u = 0; u < n; ++u)
        if (nodes_[u].sat.test(T(static_cast<int>(i)))) val[static_cast<std::size_t>(c_.index[i])].set(u);
    }
    return Model(std::move(fr), std::move(val));
  }

  NamedLogic logic_;
  Closure c_;
  TableauOptions opt_;
  bool reflexive_;
  bool transitive_;
  std::vector<int> implies_;
  std::vector<int> diamonds_;
  std::vector<Node> nodes_;
  std::unordered_set<Bits, BitsHash> unsat_;
  std::uint64_t steps_ = 0;
};

// S5: f is refutable iff some cluster refutes it. In a cluster every
// <>-subformula has one global truth value g; given g, the admissible
// valuations are those satisfying ~chi for every <>chi that g makes false,
// and g must agree with what the admissible valuations realize.
TableauResult decide_s5(const Formula& f, TableauOptions opt) {
  Closure c(f);
  const int k = f.var_bound();
  if (k > 16) throw budget_error("S5 search: too many variables");
  std::vector<int> dias;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.kind[i] == Kind::Diamond) dias.push_back(static_cast<int>(i));
  if (dias.size() > 24) throw budget_error("S5 search: too many modal subformulas");

  const std::size_t nv = std::size_t{1} << k;
  std::vector<Bits> val(c.size(), Bits(nv));
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.kind[i] == Kind::Var)
      for (std::size_t v = 0; v < nv; ++v)
        if ((v >> c.index[i]) & 1u) val[i].set(v);

  TableauResult r;
  const std::uint64_t guesses = std::uint64_t{1} << dias.size();
  std::vector<int> dia_slot(c.size(), -1);
  for (std::size_t j = 0; j < dias.size(); ++j) dia_slot[static_cast<std::size_t>(dias[j])] = static_cast<int>(j);
  const int root = c.id.at(f);

  for (std::uint64_t g = 0; g < guesses; ++g) {
    if (++r.steps > opt.max_steps) throw budget_error("S5 search budget exceeded", r.steps);
    for (std::size_t i = 0; i < c.size(); ++i) {
      switch (c.kind[i]) {
        case Kind::Var:
          break;
        case Kind::Falsum:
          val[i].clear();
          break;
        case Kind::Implies:
          val[i] = ~val[static_cast<std::size_t>(c.a[i])] | val[static_cast<std::size_t>(c.b[i])];
          break;
        case Kind::Diamond:
          if ((g >> dia_slot[i]) & 1u)
            val[i].set_all();
          else
            val[i].clear();
          break;
      }
    }
    Bits ok = Bits::full(nv);
    for (std::size_t j = 0; j < dias.size(); ++j)
      if (!((g >> j) & 1u)) ok -= val[static_cast<std::size_t>(c.a[static_cast<std::size_t>(dias[j])])];
    bool consistent = true;
    for (std::size_t j = 0; j < dias.size() && consistent; ++j) {
      bool realized = val[static_cast<std::size_t>(c.a[static_cast<std::size_t>(dias[j])])].intersects(ok);
      consistent = realized == static_cast<bool>((g >> j) & 1u);
    }
    if (!consistent) continue;
    Bits refuting = ok - val[static_cast<std::size_t>(root)];
    if (refuting.none()) continue;

    std::vector<std::size_t> worlds = ok.indices();
    Frame fr(Signature(1), worlds.size());
    for (std::size_t u = 0; u < worlds.size(); ++u)
      for (std::size_t v = 0; v < worlds.size(); ++v) fr.add(0, u, v);
    std::vector<Bits> vs(static_cast<std::size_t>(k), Bits(worlds.size()));
    for (std::size_t u = 0; u < worlds.size(); ++u) {
      for (int j = 0; j < k; ++j)
        if ((worlds[u] >> j) & 1u) vs[static_cast<std::size_t>(j)].set(u);
      if (worlds[u] == refuting.first()) r.world = u;
    }
    r.valid = false;
    r.countermodel = Model(std::move(fr), std::move(vs));
    return r;
  }
  r.valid = true;
  return r;
}

}  // namespace

TableauResult tableau_decide(NamedLogic logic, const Formula& f, TableauOptions opt) {
  if (f.max_modality() > 0) throw error(errc::unsupported, "named logics are unimodal; formula uses <" +
                                                              std::to_string(f.max_modality()) + ">");
  if (logic == NamedLogic::S5) return decide_s5(f, opt);
  Prover p(logic, f, opt);
  return p.run(f);
}

}  // namespace pretrans

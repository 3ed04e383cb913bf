#include "pretrans/kripke.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "pretrans/error.hpp"

namespace pretrans {

using json = nlohmann::json;

Frame::Frame(Signature sig, std::size_t worlds)
    : sig_(sig),
      n_(worlds),
      succ_(static_cast<std::size_t>(sig.n()), std::vector<Bits>(worlds, Bits(worlds))),
      pred_(static_cast<std::size_t>(sig.n()), std::vector<Bits>(worlds, Bits(worlds))),
      any_(worlds, Bits(worlds)) {
  if (worlds == 0) throw error(errc::invalid_argument, "a frame needs at least one world");
}

std::size_t Frame::idx(int modality) const {
  if (modality < 0 || modality >= sig_.n())
    throw error(errc::range, "modality index " + std::to_string(modality) + " out of range");
  return static_cast<std::size_t>(modality);
}

void Frame::add(int modality, World u, World v) {
  std::size_t i = idx(modality);
  if (u >= n_ || v >= n_) throw error(errc::range, "edge endpoint out of range");
  succ_[i][u].set(v);
  pred_[i][v].set(u);
  any_[u].set(v);
}

Frame Frame::from_pairs(Signature sig, std::size_t worlds, const std::vector<std::vector<Edge>>& relations) {
  if (relations.size() != static_cast<std::size_t>(sig.n()))
    throw error(errc::invalid_argument, "expected " + std::to_string(sig.n()) + " relations, got " +
                                            std::to_string(relations.size()));
  Frame f(sig, worlds);
  for (int i = 0; i < sig.n(); ++i) {
    for (auto [u, v] : relations[static_cast<std::size_t>(i)]) {
      if (u >= worlds || v >= worlds) throw error(errc::range, "edge endpoint out of range");
      if (f.has(i, u, v))
        throw error(errc::invalid_argument, "duplicate pair (" + std::to_string(u) + "," + std::to_string(v) +
                                                ") in relation " + std::to_string(i));
      f.add(i, u, v);
    }
  }
  return f;
}

std::vector<std::vector<Edge>> Frame::pairs() const {
  std::vector<std::vector<Edge>> out(succ_.size());
  for (std::size_t i = 0; i < succ_.size(); ++i)
    for (World u = 0; u < n_; ++u) succ_[i][u].for_each([&](std::size_t v) { out[i].emplace_back(u, v); });
  return out;
}

Frame Frame::restrict(const Bits& subset, std::vector<long>* map_out) const {
  std::vector<long> map(n_, -1);
  std::size_t next = 0;
  subset.for_each([&](std::size_t x) { map[x] = static_cast<long>(next++); });
  Frame r(sig_, next);
  for (int i = 0; i < sig_.n(); ++i)
    for (World u = 0; u < n_; ++u) {
      if (map[u] < 0) continue;
      succ_[static_cast<std::size_t>(i)][u].for_each([&](std::size_t v) {
        if (map[v] >= 0) r.add(i, static_cast<World>(map[u]), static_cast<World>(map[v]));
      });
    }
  if (map_out) *map_out = std::move(map);
  return r;
}

Bits Frame::diamond(int modality, const Bits& s) const {
  const auto& pred = pred_[idx(modality)];
  Bits out(n_);
  s.for_each([&](std::size_t y) { out |= pred[y]; });
  return out;
}

Model::Model(Frame f, std::vector<Bits> v) : frame(std::move(f)), valuation(std::move(v)) {
  for (const auto& b : valuation)
    if (b.size() != frame.size()) throw error(errc::invalid_argument, "valuation size does not match the frame");
}

// ---------------------------------------------------------------------------

Evaluator::Evaluator(const Frame& frame, const Formula& f) : frame_(frame) {
  check_signature(f, frame.sig());
  // Post-order over the DAG so children precede parents.
  std::unordered_map<Formula, int, FormulaHash> slot;
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (slot.count(g)) continue;
    if (!expanded && (g.is_implies() || g.is_diamond())) {
      stack.push_back({g, true});
      if (g.is_implies()) stack.push_back({g.rhs(), false});
      stack.push_back({g.lhs(), false});
      continue;
    }
    Op op{g.kind(), g.index(), -1, -1};
    if (g.is_implies()) {
      op.a = slot.at(g.lhs());
      op.b = slot.at(g.rhs());
    } else if (g.is_diamond()) {
      op.a = slot.at(g.lhs());
    } else if (g.is_var()) {
      vars_.push_back(g.index());
    }
    slot.emplace(g, static_cast<int>(ops_.size()));
    ops_.push_back(op);
  }
  std::sort(vars_.begin(), vars_.end());
  buf_.assign(ops_.size(), Bits(frame.size()));
  if (frame.size() <= 64) {
    pred_small_.assign(static_cast<std::size_t>(frame.sig().n()), std::vector<std::uint64_t>(frame.size(), 0));
    for (int i = 0; i < frame.sig().n(); ++i)
      for (World y = 0; y < frame.size(); ++y)
        frame.pred(i, y).for_each([&](std::size_t x) {
          pred_small_[static_cast<std::size_t>(i)][y] |= std::uint64_t{1} << x;
        });
    buf_small_.assign(ops_.size(), 0);
  }
}

std::uint64_t Evaluator::eval_small(const std::vector<std::uint64_t>& valuation) {
  if (pred_small_.empty()) throw error(errc::invalid_argument, "eval_small: frame has more than 64 worlds");
  const std::uint64_t all = frame_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << frame_.size()) - 1;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    std::uint64_t& out = buf_small_[i];
    switch (op.kind) {
      case Kind::Var:
        if (static_cast<std::size_t>(op.index) >= valuation.size())
          throw error(errc::range, "variable p" + std::to_string(op.index) + " not covered by the valuation");
        out = valuation[static_cast<std::size_t>(op.index)] & all;
        break;
      case Kind::Falsum:
        out = 0;
        break;
      case Kind::Implies:
        out = (~buf_small_[static_cast<std::size_t>(op.a)] | buf_small_[static_cast<std::size_t>(op.b)]) & all;
        break;
      case Kind::Diamond: {
        out = 0;
        const auto& pred = pred_small_[static_cast<std::size_t>(op.index)];
        for (std::uint64_t s = buf_small_[static_cast<std::size_t>(op.a)]; s; s &= s - 1)
          out |= pred[static_cast<std::size_t>(std::countr_zero(s))];
        break;
      }
    }
  }
  return buf_small_.back();
}

const Bits& Evaluator::eval(const std::vector<Bits>& valuation) {
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    Bits& out = buf_[i];
    switch (op.kind) {
      case Kind::Var:
        if (static_cast<std::size_t>(op.index) >= valuation.size())
          throw error(errc::range, "variable p" + std::to_string(op.index) + " not covered by the valuation");
        out = valuation[static_cast<std::size_t>(op.index)];
        break;
      case Kind::Falsum:
        out.clear();
        break;
      case Kind::Implies:
        out = buf_[static_cast<std::size_t>(op.a)];
        out.flip();
        out |= buf_[static_cast<std::size_t>(op.b)];
        break;
      case Kind::Diamond: {
        out.clear();
        buf_[static_cast<std::size_t>(op.a)].for_each([&](std::size_t y) { out |= frame_.pred(op.index, y); });
        break;
      }
    }
  }
  return buf_.back();
}

Bits truth_set(const Model& m, const Formula& f) {
  Evaluator ev(m.frame, f);
  return ev.eval(m.valuation);
}

bool true_at(const Model& m, const Formula& f, World x) { return truth_set(m, f).test(x); }

std::optional<Refutation> refute_on_frame(const Frame& fr, const Formula& f, ValidityOptions opt) {
  Evaluator ev(fr, f);
  const auto& vars = ev.vars();
  const std::size_t n = fr.size();
  const std::size_t bits = vars.size() * n;
  if (bits > opt.max_bits || bits >= 63)
    throw budget_error("frame validity: " + std::to_string(bits) + " valuation bits exceed the limit of " +
                       std::to_string(opt.max_bits));
  const std::uint64_t total = std::uint64_t{1} << bits;
  if (n <= 64) {
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::uint64_t world_mask = all;
    std::vector<std::uint64_t> small(static_cast<std::size_t>(f.var_bound()), 0);
    for (std::uint64_t a = 0; a < total; ++a) {
      for (std::size_t j = 0; j < vars.size(); ++j)
        small[static_cast<std::size_t>(vars[j])] = (a >> (j * n)) & world_mask;
      const std::uint64_t t = ev.eval_small(small);
      if (t != all) {
        std::vector<Bits> val(static_cast<std::size_t>(f.var_bound()), Bits(n));
        for (std::size_t j = 0; j < val.size(); ++j)
          for (std::size_t w = 0; w < n; ++w) val[j].assign(w, (small[j] >> w) & 1u);
        return Refutation{std::move(val), static_cast<World>(std::countr_zero(~t & all))};
      }
    }
    return std::nullopt;
  }
  std::vector<Bits> val(static_cast<std::size_t>(f.var_bound()), Bits(n));
  for (std::uint64_t a = 0; a < total; ++a) {
    for (std::size_t j = 0; j < vars.size(); ++j) {
      Bits& b = val[static_cast<std::size_t>(vars[j])];
      for (std::size_t w = 0; w < n; ++w) b.assign(w, (a >> (j * n + w)) & 1u);
    }
    const Bits& t = ev.eval(val);
    if (!t.all()) {
      Bits miss = ~t;
      return Refutation{val, miss.first()};
    }
  }
  return std::nullopt;
}

bool frame_validates(const Frame& fr, const Formula& f, ValidityOptions opt) {
  return !refute_on_frame(fr, f, opt).has_value();
}

// ---------------------------------------------------------------------------

namespace {
Relation identity(std::size_t n) {
  Relation r(n, Bits(n));
  for (std::size_t i = 0; i < n; ++i) r[i].set(i);
  return r;
}

// Composition: (x,z) iff x a y and y b z.
Relation compose(const Relation& a, const Relation& b) {
  Relation out(a.size(), Bits(a.size()));
  for (std::size_t x = 0; x < a.size(); ++x) a[x].for_each([&](std::size_t y) { out[x] |= b[y]; });
  return out;
}
}  // namespace

Relation reach_le(const Frame& fr, int m) {
  if (m < 0) throw error(errc::invalid_argument, "reach: negative bound");
  Relation acc = identity(fr.size());
  Relation power = acc;
  const Relation r = fr.union_relation();
  for (int i = 1; i <= m; ++i) {
    power = compose(power, r);
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] |= power[x];
  }
  return acc;
}

Relation reach_star(const Frame& fr) {
  const std::size_t n = fr.size();
  Relation out(n, Bits(n));
  for (World x = 0; x < n; ++x) {
    Bits seen(n);
    seen.set(x);
    std::vector<World> stack{x};
    while (!stack.empty()) {
      World u = stack.back();
      stack.pop_back();
      fr.succ_any(u).for_each([&](std::size_t v) {
        if (!seen.test(v)) {
          seen.set(v);
          stack.push_back(v);
        }
      });
    }
    out[x] = std::move(seen);
  }
  return out;
}

bool relation_subset(const Relation& a, const Relation& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].subset_of(b[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

Frame frame_from(const json& j) {
  if (!j.is_object()) throw error(errc::invalid_argument, "frame: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "n" && it.key() != "worlds" && it.key() != "relations")
      throw error(errc::invalid_argument, "frame: unexpected key '" + it.key() + "'");
  if (!j.contains("n") || !j.contains("worlds") || !j.contains("relations"))
    throw error(errc::invalid_argument, "frame: keys n, worlds, relations are required");
  if (!j["n"].is_number_integer() || !j["worlds"].is_number_integer())
    throw error(errc::invalid_argument, "frame: n and worlds must be integers");
  long long n = j["n"].get<long long>();
  long long worlds = j["worlds"].get<long long>();
  if (n < 1) throw error(errc::invalid_argument, "frame: n must be >= 1");
  if (worlds < 1) throw error(errc::invalid_argument, "frame: worlds must be >= 1");
  const json& rels = j["relations"];
  if (!rels.is_array()) throw error(errc::invalid_argument, "frame: relations must be an array");
  std::vector<std::vector<Edge>> pairs;
  for (const auto& rel : rels) {
    if (!rel.is_array()) throw error(errc::invalid_argument, "frame: each relation must be an array of pairs");
    auto& out = pairs.emplace_back();
    for (const auto& p : rel) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        throw error(errc::invalid_argument, "frame: pairs must be [u, v] integer arrays");
      long long u = p[0].get<long long>(), v = p[1].get<long long>();
      if (u < 0 || v < 0 || u >= worlds || v >= worlds) throw error(errc::range, "frame: pair endpoint out of range");
      out.emplace_back(static_cast<World>(u), static_cast<World>(v));
    }
  }
  return Frame::from_pairs(Signature(static_cast<int>(n)), static_cast<std::size_t>(worlds), pairs);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw error(errc::parse, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

Frame frame_from_json(const std::string& text) { return frame_from(parse_json(text)); }

std::string frame_to_json(const Frame& fr) {
  json rels = json::array();
  for (const auto& rel : fr.pairs()) {
    json r = json::array();
    for (auto [u, v] : rel) r.push_back({u, v});
    rels.push_back(std::move(r));
  }
  json j = {{"n", fr.sig().n()}, {"worlds", fr.size()}, {"relations", std::move(rels)}};
  return j.dump();
}

std::string model_to_json(const Model& m) {
  json val = json::array();
  for (const auto& v : m.valuation) val.push_back(v.indices());
  json j = {{"frame", json::parse(frame_to_json(m.frame))}, {"valuation", std::move(val)}};
  return j.dump();
}

std::vector<Frame> frames_from_json(const std::string& text) {
  json j = parse_json(text);
  std::vector<Frame> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(frame_from(x));
  } else {
    out.push_back(frame_from(j));
  }
  if (out.empty()) throw error(errc::invalid_argument, "frame file holds no frames");
  for (const auto& f : out)
    if (f.sig() != out.front().sig()) throw error(errc::invalid_argument, "frames disagree on the number of modalities");
  return out;
}

std::vector<Frame> load_frames(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return frames_from_json(ss.str());
}

std::string frame_to_dot(const Frame& fr, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (World x = 0; x < fr.size(); ++x) os << "  " << x << ";\n";
  auto rels = fr.pairs();
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (auto [u, v] : rels[i]) os << "  " << u << " -> " << v << " [label=\"" << i << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string model_to_dot(const Model& m, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (World x = 0; x < m.frame.size(); ++x) {
    os << "  " << x << " [label=\"" << x << ":";
    bool first = true;
    for (std::size_t j = 0; j < m.k(); ++j) {
      os << (first ? " " : ",") << (m.valuation[j].test(x) ? "" : "~") << "p" << j;
      first = false;
    }
    os << "\"];\n";
  }
  auto rels = m.frame.pairs();
  for (std::size_t i = 0; i < rels.size(); ++i)
    for (auto [u, v] : rels[i]) os << "  " << u << " -> " << v << " [label=\"" << i << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace pretrans

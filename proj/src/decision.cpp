#include "pretrans/decision.hpp"

#include <future>
#include <map>
#include <mutex>

#include "json.hpp"
#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"
#include "pretrans/schemes.hpp"

namespace pretrans {

LogicSpec LogicSpec::of(NamedLogic l) {
  LogicSpec s;
  s.named = l;
  return s;
}

LogicSpec LogicSpec::of(FrameClassLogic l) {
  LogicSpec s;
  s.frames = std::make_shared<const FrameClassLogic>(std::move(l));
  return s;
}

std::string LogicSpec::describe() const {
  std::string base = named ? to_string(*named) : "Log(" + std::to_string(frames->frames().size()) + " frames)";
  return height ? base + "[" + std::to_string(*height) + "]" : base;
}

namespace {

struct CacheEntry {
  std::string json;
  std::shared_future<std::shared_ptr<const Canonical>> value;
};

struct Cache {
  std::mutex mu;
  std::map<std::pair<std::string, int>, CacheEntry> entries;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

std::shared_ptr<const Canonical> canonical(const FrameClassLogic& L, int k, AlgebraOptions opt) {
  Cache& c = cache();
  const auto key = std::make_pair(L.fingerprint(), k);
  std::promise<std::shared_ptr<const Canonical>> promise;
  std::shared_future<std::shared_ptr<const Canonical>> fut;
  bool builder = false;
  {
    std::lock_guard lock(c.mu);
    auto it = c.entries.find(key);
    if (it != c.entries.end() && it->second.json == L.canonical_json()) {
      fut = it->second.value;
    } else {
      // A fingerprint collision simply replaces the entry.
      fut = promise.get_future().share();
      c.entries[key] = CacheEntry{L.canonical_json(), fut};
      builder = true;
    }
  }
  if (builder) {
    try {
      FreeAlgebra A = build_free_algebra(L, k, opt);
      CanonicalModel M = dual_canonical_model(A);
      promise.set_value(std::make_shared<const Canonical>(Canonical{std::move(A), std::move(M)}));
    } catch (...) {
      promise.set_exception(std::current_exception());
      std::lock_guard lock(c.mu);
      auto it = c.entries.find(key);
      if (it != c.entries.end() && it->second.value.valid() &&
          it->second.value.wait_for(std::chrono::seconds(0)) == std::future_status::ready)
        c.entries.erase(it);
      throw;
    }
  }
  auto out = fut.get();
  // A cached build under a larger cap must still honour this caller's limits.
  if (out->algebra.size() > opt.cap)
    throw budget_error("algebra cap exceeded: more than " + std::to_string(opt.cap) + " elements",
                       static_cast<std::size_t>(out->algebra.size()));
  if (out->algebra.coordinates() > opt.bit_budget)
    throw budget_error("algebra bit budget exceeded: more than " + std::to_string(opt.bit_budget) + " coordinates");
  return out;
}

void clear_canonical_cache() {
  std::lock_guard lock(cache().mu);
  cache().entries.clear();
}

std::size_t canonical_cache_size() {
  std::lock_guard lock(cache().mu);
  return cache().entries.size();
}

namespace {

Verdict verdict_on(const Model& m, const Formula& f) {
  Bits t = truth_set(m, f);
  Verdict v;
  v.valid = t.all();
  if (!v.valid) {
    v.countermodel = m;
    v.world = (~t).first();
  }
  return v;
}

}  // namespace

Verdict decide_frames(const FrameClassLogic& L, const Formula& f, AlgebraOptions opt) {
  check_signature(f, L.sig());
  auto C = canonical(L, f.var_bound(), opt);
  return verdict_on(C->model.model, f);
}

Verdict decide_height_bounded(const FrameClassLogic& L, int h, const Formula& f, AlgebraOptions opt) {
  if (h < 1) throw error(errc::invalid_argument, "height bound must be >= 1");
  check_signature(f, L.sig());
  auto C = canonical(L, f.var_bound(), opt);
  return verdict_on(top_part(C->model, h).model, f);
}

Verdict decide(const LogicSpec& L, const Formula& f) {
  if (L.height && *L.height < 1) throw error(errc::invalid_argument, "height bound must be >= 1");
  if (L.frames) {
    if (L.height) return decide_height_bounded(*L.frames, *L.height, f, L.algebra);
    return decide_frames(*L.frames, f, L.algebra);
  }
  if (!L.named) throw error(errc::invalid_argument, "empty logic specification");
  NamedLogic base = *L.named;
  if (L.height) {
    if (base == NamedLogic::S4 && *L.height == 1)
      base = NamedLogic::S5;
    else if (!(base == NamedLogic::S5))
      throw error(errc::unsupported, "height bound on " + to_string(base) + " is only supported as S4[1] = S5");
  }
  TableauResult r = tableau_decide(base, f, L.tableau);
  Verdict v;
  v.valid = r.valid;
  v.countermodel = std::move(r.countermodel);
  v.world = r.world;
  return v;
}

FmpWitness fmp_transfer_witness(const FrameClassLogic& L, const Formula& f, AlgebraOptions opt) {
  check_signature(f, L.sig());
  const Formula t = glivenko_h1(f, L.m(), L.sig());
  Verdict v = decide_frames(L, t, opt);
  if (v.valid) throw error(errc::invalid_argument, "fmp_transfer_witness: the translation is valid, nothing to transfer");
  const Model& M = *v.countermodel;

  // Every point R*-above the refuting point falsifies []*f; a maximal cluster
  // above it therefore contains a point refuting f.
  const Relation star = reach_star(M.frame);
  const Bits up = star[v.world];
  const Bits top = maximal_elements(M.frame, up);
  const World c = top.first();
  Bits cluster(M.frame.size());
  star[c].for_each([&](std::size_t y) {
    if (star[y].test(c)) cluster.set(y);
  });
  std::vector<long> map;
  Frame sub = M.frame.restrict(cluster, &map);
  std::vector<Bits> val(M.valuation.size(), Bits(sub.size()));
  for (World x = 0; x < M.frame.size(); ++x)
    if (map[x] >= 0)
      for (std::size_t j = 0; j < val.size(); ++j)
        if (M.valuation[j].test(x)) val[j].set(static_cast<std::size_t>(map[x]));
  Model w(std::move(sub), std::move(val));
  Bits t_f = truth_set(w, f);
  if (t_f.all()) throw error(errc::internal, "fmp_transfer_witness: maximal cluster does not refute the formula");
  return FmpWitness{std::move(w), (~t_f).first()};
}

std::string verdict_to_json(const Verdict& v) {
  nlohmann::json j = {{"valid", v.valid}};
  if (v.countermodel) {
    j["countermodel"] = nlohmann::json::parse(model_to_json(*v.countermodel));
    j["world"] = v.world;
  }
  return j.dump();
}

}  // namespace pretrans

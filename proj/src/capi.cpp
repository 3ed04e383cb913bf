#include "pretrans.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pretrans/decision.hpp"
#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"
#include "pretrans/gen.hpp"
#include "pretrans/schemes.hpp"
#include "pretrans/verify.hpp"

using json = nlohmann::json;
using namespace pretrans;

struct pt_formula {
  Formula f;
};

struct pt_frames {
  std::vector<Frame> frames;
};

struct pt_logic {
  LogicSpec spec;
};

namespace {

thread_local std::string last_error;

pt_status to_status(errc c) {
  switch (c) {
    case errc::ok:
      return PT_OK;
    case errc::parse:
      return PT_ERR_PARSE;
    case errc::range:
      return PT_ERR_RANGE;
    case errc::budget:
      return PT_ERR_BUDGET;
    case errc::unsupported:
      return PT_ERR_UNSUPPORTED;
    case errc::io:
      return PT_ERR_IO;
    case errc::invalid_argument:
      return PT_ERR_INVALID_ARGUMENT;
    case errc::internal:
      return PT_ERR_INTERNAL;
  }
  return PT_ERR_INTERNAL;
}

template <class F>
pt_status guarded(F&& body) {
  try {
    body();
    return PT_OK;
  } catch (const error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("bad JSON parameters: ") + e.what();
    return PT_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PT_ERR_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw error(errc::invalid_argument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json params_of(const char* text) {
  if (!text || !*text) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw error(errc::invalid_argument, "parameters must be a JSON object");
  return j;
}

template <class T>
T get(const json& p, const char* key, T fallback) {
  return p.contains(key) ? p.at(key).get<T>() : fallback;
}

std::vector<Frame> frames_param(const json& p) {
  if (p.contains("frames_json")) return frames_from_json(p.at("frames_json").get<std::string>());
  if (p.contains("frames")) return load_frames(p.at("frames").get<std::string>());
  throw error(errc::invalid_argument, "this suite needs a frame file (\"frames\")");
}

SuiteOptions suite_options(const json& p) {
  SuiteOptions o;
  if (p.contains("cap")) o.algebra.cap = p.at("cap").get<std::uint64_t>();
  if (p.contains("bit_budget")) o.algebra.bit_budget = p.at("bit_budget").get<std::uint64_t>();
  if (p.contains("max_nodes")) o.schemes.max_nodes = p.at("max_nodes").get<std::size_t>();
  return o;
}

int pretransitivity(const LogicSpec& s) {
  if (s.frames) return s.frames->m();
  switch (*s.named) {
    case NamedLogic::K4:
    case NamedLogic::S4:
    case NamedLogic::S5:
      return 1;
    default:
      throw error(errc::unsupported, to_string(*s.named) + " is not pretransitive");
  }
}

json pairs_json(const Frame& fr) {
  json rels = json::array();
  for (const auto& rel : fr.pairs()) {
    json r = json::array();
    for (auto [u, v] : rel) r.push_back({u, v});
    rels.push_back(std::move(r));
  }
  return rels;
}

}  // namespace

extern "C" {

const char* pt_version(void) { return "1.0.0"; }

const char* pt_status_name(pt_status s) {
  switch (s) {
    case PT_OK:
      return "ok";
    case PT_ERR_PARSE:
      return "parse error";
    case PT_ERR_RANGE:
      return "out of range";
    case PT_ERR_BUDGET:
      return "budget exceeded";
    case PT_ERR_UNSUPPORTED:
      return "unsupported";
    case PT_ERR_IO:
      return "i/o error";
    case PT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case PT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

const char* pt_last_error(void) { return last_error.c_str(); }

void pt_string_free(char* s) { std::free(s); }

pt_status pt_formula_parse(const char* text, int modalities, pt_formula** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new pt_formula{parse(text, Signature(modalities))};
  });
}

pt_status pt_formula_render(const pt_formula* f, int pretty, char** out) {
  return guarded([&] {
    need(f, "formula");
    need(out, "out");
    *out = dup(pretty ? render_pretty(f->f) : render(f->f));
  });
}

pt_status pt_formula_info(const pt_formula* f, char** out) {
  return guarded([&] {
    need(f, "formula");
    need(out, "out");
    json j = {{"modal_depth", f->f.modal_depth()},
              {"variables", variables(f->f)},
              {"dag_size", dag_size(f->f)},
              {"max_modality", f->f.max_modality()}};
    *out = dup(j.dump());
  });
}

void pt_formula_free(pt_formula* f) { delete f; }

pt_status pt_frames_from_json(const char* text, pt_frames** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    *out = new pt_frames{frames_from_json(text)};
  });
}

pt_status pt_frames_load(const char* path, pt_frames** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new pt_frames{load_frames(path)};
  });
}

size_t pt_frames_count(const pt_frames* fs) { return fs ? fs->frames.size() : 0; }

pt_status pt_frames_info(const pt_frames* fs, char** out) {
  return guarded([&] {
    need(fs, "frames");
    need(out, "out");
    json arr = json::array();
    for (const Frame& fr : fs->frames) {
      Skeleton sk = skeleton(fr);
      json clusters = json::array();
      for (const auto& c : sk.clusters) clusters.push_back(c);
      arr.push_back({{"worlds", fr.size()},
                     {"modalities", fr.sig().n()},
                     {"transitivity_degree", transitivity_degree(fr)},
                     {"height", height(fr)},
                     {"clusters", std::move(clusters)},
                     {"depths", depths(fr)},
                     {"skeleton_edges", sk.strict_edges()}});
    }
    *out = dup(arr.dump());
  });
}

pt_status pt_frames_to_dot(const pt_frames* fs, size_t index, char** out) {
  return guarded([&] {
    need(fs, "frames");
    need(out, "out");
    if (index >= fs->frames.size()) throw error(errc::range, "frame index out of range");
    *out = dup(frame_to_dot(fs->frames[index], "F" + std::to_string(index)));
  });
}

void pt_frames_free(pt_frames* fs) { delete fs; }

pt_status pt_logic_named(const char* name, pt_logic** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new pt_logic{LogicSpec::of(named_logic_from_string(name))};
  });
}

pt_status pt_logic_frames(const pt_frames* fs, pt_logic** out) {
  return guarded([&] {
    need(fs, "frames");
    need(out, "out");
    *out = new pt_logic{LogicSpec::of(FrameClassLogic(fs->frames))};
  });
}

pt_status pt_logic_set_height(pt_logic* l, int h) {
  return guarded([&] {
    need(l, "logic");
    if (h < 1) throw error(errc::invalid_argument, "height bound must be >= 1");
    l->spec.height = h;
  });
}

pt_status pt_logic_set_cap(pt_logic* l, uint64_t cap) {
  return guarded([&] {
    need(l, "logic");
    if (cap == 0) throw error(errc::invalid_argument, "cap must be positive");
    l->spec.algebra.cap = cap;
  });
}

pt_status pt_logic_modalities(const pt_logic* l, int* n) {
  return guarded([&] {
    need(l, "logic");
    need(n, "n");
    *n = l->spec.frames ? l->spec.frames->sig().n() : 1;
  });
}

void pt_logic_free(pt_logic* l) { delete l; }

pt_status pt_decide(const pt_logic* l, const pt_formula* f, int* valid, char** out) {
  return guarded([&] {
    need(l, "logic");
    need(f, "formula");
    Verdict v = decide(l->spec, f->f);
    if (valid) *valid = v.valid ? 1 : 0;
    if (out) *out = dup(verdict_to_json(v));
  });
}

pt_status pt_canonical(const pt_logic* l, int k, char** out, char** dot) {
  return guarded([&] {
    need(l, "logic");
    if (!l->spec.frames) throw error(errc::unsupported, "canonical models are built for frame-class logics only");
    if (k < 0) throw error(errc::invalid_argument, "k must be >= 0");
    auto C = canonical(*l->spec.frames, k, l->spec.algebra);
    CanonicalModel M = C->model;
    if (l->spec.height) M = top_part(M, *l->spec.height);
    const Frame& fr = M.model.frame;
    const Relation star = reach_star(fr);
    json labels = json::array(), val = json::array(), heights = json::array();
    for (const Formula& a : M.atom_labels) labels.push_back(render_pretty(a));
    for (const Bits& v : M.model.valuation) val.push_back(v.indices());
    for (World x = 0; x < fr.size(); ++x) heights.push_back(height(fr.restrict(star[x])));
    json j = {{"algebra_size", C->algebra.size()},
              {"atoms", M.size()},
              {"k", M.k},
              {"m", M.m},
              {"relations", pairs_json(fr)},
              {"valuation", std::move(val)},
              {"atom_labels", std::move(labels)},
              {"height", height(fr)},
              {"heights", std::move(heights)},
              {"depths", depths(fr)}};
    if (out) *out = dup(j.dump());
    if (dot) *dot = dup(model_to_dot(M.model, "canonical"));
  });
}

pt_status pt_translate(const pt_logic* l, const char* mode, int k, int h, const pt_formula* f, pt_formula** out) {
  return guarded([&] {
    need(l, "logic");
    need(mode, "mode");
    need(f, "formula");
    need(out, "out");
    const std::string md = mode;
    const int m = pretransitivity(l->spec);
    const Signature sig = l->spec.frames ? l->spec.frames->sig() : Signature(1);
    if (md == "h1") {
      *out = new pt_formula{glivenko_h1(f->f, m, sig)};
      return;
    }
    if (md != "main") throw error(errc::invalid_argument, "mode must be h1 or main");
    if (h < 0) throw error(errc::invalid_argument, "h must be >= 0");
    if (k == 0) k = f->f.var_bound();
    if (f->f.var_bound() > k) throw error(errc::range, "formula uses more than k variables");
    SuiteOptions so;
    so.algebra = l->spec.algebra;
    std::shared_ptr<const Canonical> C;
    if (l->spec.frames) {
      C = canonical(*l->spec.frames, k, so.algebra);
    } else if (*l->spec.named == NamedLogic::S4 && h <= 1) {
      // S4[1] = S5, whose k-canonical model is that of clusters of size <= 2^k.
      so.algebra.cap = std::max<std::uint64_t>(so.algebra.cap, std::uint64_t{1} << 62);
      C = canonical(s5_frame_class(k), k, so.algebra);
    } else {
      throw error(errc::unsupported, "main translation for named logics is available for S4 with h <= 1 only");
    }
    CanonicalModel source = C->model;
    if (!l->spec.frames) h = std::min(h, 1);
    *out = new pt_formula{main_translation(f->f, depth_formulas(source, h))};
  });
}

pt_status pt_verify(const char* suite, const char* params_json, int* passed, char** report_json) {
  return guarded([&] {
    need(suite, "suite");
    const std::string s = suite;
    const json p = params_of(params_json);
    const SuiteOptions opt = suite_options(p);
    const std::uint64_t seed = get<std::uint64_t>(p, "seed", 1);
    const int k = get<int>(p, "vars", 1);
    const int h = get<int>(p, "height", 1);
    VerificationReport r;
    if (s == "bh") {
      std::vector<Frame> corpus;
      if (p.contains("frames") || p.contains("frames_json")) {
        corpus = frames_param(p);
      } else {
        corpus = all_frames(get<std::size_t>(p, "max_points", 3), 1);
        Rng rng(seed);
        const std::size_t count = get<std::size_t>(p, "count", 200);
        for (std::size_t i = 0; i < count; ++i) {
          const std::size_t N = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
          const int n = std::uniform_int_distribution<int>(1, 2)(rng);
          const double d = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
          corpus.push_back(random_frame(rng, N, n, d));
        }
      }
      r = verify_bh(corpus, get<int>(p, "height", 3));
      r.seed = seed;
    } else if (s == "algebra") {
      r = verify_algebra(FrameClassLogic(frames_param(p)), k, opt, get<std::size_t>(p, "exhaustive_atoms", 22),
                         get<std::size_t>(p, "count", 200), seed);
    } else if (s == "topheavy") {
      r = verify_topheavy(FrameClassLogic(frames_param(p)), k, h, opt);
    } else if (s == "main") {
      FrameClassLogic L(frames_param(p));
      std::vector<Formula> fs;
      const std::size_t budget = get<std::size_t>(p, "budget", 2000);
      if (budget > 0) {
        EnumOptions eo;
        eo.k = k;
        eo.sig = L.sig();
        eo.min_count = budget;
        eo.max_modal_depth = get<int>(p, "depth", 2);
        fs = enumerate_formulas(eo);
      }
      Rng rng(seed);
      RandomFormulaOptions ro;
      ro.k = k;
      ro.sig = L.sig();
      ro.max_modal_depth = get<int>(p, "depth", 2);
      for (std::size_t i = 0, n = get<std::size_t>(p, "count", 300); i < n; ++i) fs.push_back(random_formula(rng, ro));
      r = verify_main(L, k, h, fs, opt);
      r.seed = seed;
    } else if (s == "embedd") {
      FrameClassLogic L(frames_param(p));
      Rng rng(seed);
      RandomFormulaOptions ro;
      ro.k = k;
      ro.sig = L.sig();
      ro.max_modal_depth = get<int>(p, "depth", 2);
      std::vector<std::pair<Formula, Formula>> pairs;
      for (std::size_t i = 0, n = get<std::size_t>(p, "count", 300); i < n; ++i) {
        Formula psi = random_formula(rng, ro);
        pairs.emplace_back(psi, random_formula(rng, ro));
      }
      r = verify_embedd(L, pairs, opt);
      r.seed = seed;
    } else if (s == "s4s5") {
      r = verify_s4s5(seed, get<std::size_t>(p, "count", 300), opt);
    } else if (s == "heavy") {
      r = verify_heavy(FrameClassLogic(frames_param(p)), k, opt);
    } else if (s == "fmp") {
      FrameClassLogic L(frames_param(p));
      Rng rng(seed);
      RandomFormulaOptions ro;
      ro.k = k;
      ro.sig = L.sig();
      ro.max_modal_depth = get<int>(p, "depth", 2);
      std::vector<Formula> fs;
      for (std::size_t i = 0, n = get<std::size_t>(p, "count", 100); i < n; ++i) fs.push_back(random_formula(rng, ro));
      r = verify_fmp(L, fs, opt);
      r.seed = seed;
    } else if (s == "section5") {
      const std::size_t lo = get<std::size_t>(p, "n_min", 0), hi = get<std::size_t>(p, "n_max", 0);
      r = lo || hi ? verify_section5(std::max<std::size_t>(lo, 3), hi ? hi : 10, lo ? lo : 4, hi ? hi : 10,
                                     get<std::uint64_t>(p, "bound", 8))
                   : verify_section5(6, 10, 4, 10, get<std::uint64_t>(p, "bound", 8));
    } else {
      throw error(errc::invalid_argument, "unknown suite '" + s + "'");
    }
    if (passed) *passed = r.passed() ? 1 : 0;
    if (report_json) *report_json = dup(r.to_json());
  });
}

pt_status pt_generate(const char* what, const char* params_json, char** out) {
  return guarded([&] {
    need(what, "what");
    need(out, "out");
    const std::string w = what;
    const json p = params_of(params_json);
    const std::uint64_t seed = get<std::uint64_t>(p, "seed", 1);
    const std::size_t count = get<std::size_t>(p, "count", 10);
    Rng rng(seed);
    json arr = json::array();
    if (w == "formulas") {
      const int n = get<int>(p, "modalities", 1);
      if (get<bool>(p, "exhaustive", false)) {
        EnumOptions eo;
        eo.k = get<int>(p, "vars", 1);
        eo.sig = Signature(n);
        eo.max_modal_depth = get<int>(p, "depth", 2);
        eo.min_count = count;
        eo.max_size = get<int>(p, "size", 6);
        for (const Formula& f : enumerate_formulas(eo)) arr.push_back(render(f));
      } else {
        RandomFormulaOptions ro;
        ro.k = get<int>(p, "vars", 2);
        ro.sig = Signature(n);
        ro.max_modal_depth = get<int>(p, "depth", 3);
        ro.max_size = get<int>(p, "size", 12);
        for (std::size_t i = 0; i < count; ++i) arr.push_back(render(random_formula(rng, ro)));
      }
    } else if (w == "frames") {
      const std::string kind = get<std::string>(p, "kind", "random");
      const std::size_t worlds = get<std::size_t>(p, "worlds", 4);
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t N = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(worlds, 1))(rng);
        Frame fr(Signature(1), 1);
        if (kind == "random")
          fr = random_frame(rng, N, get<int>(p, "modalities", 1), get<double>(p, "density", 0.3));
        else if (kind == "preorder")
          fr = random_preorder(rng, N, get<double>(p, "density", 0.3));
        else if (kind == "preorder2")
          fr = random_preorder_height2(rng, N);
        else if (kind == "euclidean")
          fr = random_euclidean(rng, N, get<double>(p, "density", 0.3));
        else if (kind == "omega_top")
          fr = omega_top_frame(worlds);
        else if (kind == "neighbor_exclusion")
          fr = neighbor_exclusion_frame(worlds);
        else if (kind == "chain")
          fr = chain_preorder(worlds);
        else if (kind == "cluster")
          fr = cluster_frame(worlds);
        else
          throw error(errc::invalid_argument, "unknown frame kind '" + kind + "'");
        arr.push_back(json::parse(frame_to_json(fr)));
        if (kind != "random" && kind != "preorder" && kind != "preorder2" && kind != "euclidean") break;
      }
    } else {
      throw error(errc::invalid_argument, "generate: expected 'formulas' or 'frames'");
    }
    *out = dup(arr.dump());
  });
}

}  // extern "C"

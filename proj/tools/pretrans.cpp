// Command-line front end over the C interface.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pretrans.h"

using json = nlohmann::json;

namespace {

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(pt_status s) {
  if (s != PT_OK) throw failure(std::string(pt_status_name(s)) + ": " + pt_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  pt_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct handle {
  T* p = nullptr;
  ~handle() { Free(p); }
};
using formula_h = handle<pt_formula, pt_formula_free>;
using frames_h = handle<pt_frames, pt_frames_free>;
using logic_h = handle<pt_logic, pt_logic_free>;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw failure("i/o error: cannot write '" + out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

struct Options {
  std::string frames, formula, logic = "s4", mode = "h1", out, dot, kind = "random";
  int vars = 1, height = 0, depth = -1, size = -1, index = 0, worlds = 4, max_points = 3, n_min = 0, n_max = 0;
  std::uint64_t seed = 1, cap = 0;
  std::size_t count = 0, budget = 2000;
  bool as_json = false, verify = false, pretty = false, exhaustive = false;
};

void load_logic(const Options& o, logic_h& l) {
  const std::string spec = o.frames.empty() ? o.logic : "frames:" + o.frames;
  if (spec.rfind("frames:", 0) == 0) {
    frames_h fs;
    check(pt_frames_load(spec.substr(7).c_str(), &fs.p));
    check(pt_logic_frames(fs.p, &l.p));
  } else {
    check(pt_logic_named(spec.c_str(), &l.p));
  }
  if (o.cap) check(pt_logic_set_cap(l.p, o.cap));
}

void parse_formula(const logic_h& l, const std::string& text, formula_h& f) {
  int n = 1;
  check(pt_logic_modalities(l.p, &n));
  check(pt_formula_parse(text.c_str(), n, &f.p));
}

std::string render(const formula_h& f, bool pretty) {
  char* s = nullptr;
  check(pt_formula_render(f.p, pretty ? 1 : 0, &s));
  return take(s);
}

std::string verdict_text(const std::string& j) {
  json v = json::parse(j);
  std::string s = v["valid"].get<bool>() ? "valid" : "not valid";
  if (v.contains("countermodel"))
    s += " (countermodel: " + std::to_string(v["countermodel"]["frame"]["worlds"].get<std::size_t>()) +
         " worlds, refuted at " + std::to_string(v["world"].get<std::size_t>()) + ")";
  return s;
}

int cmd_frame(const std::string& sub, const Options& o) {
  frames_h fs;
  check(pt_frames_load(o.frames.c_str(), &fs.p));
  if (sub == "render") {
    char* dot = nullptr;
    check(pt_frames_to_dot(fs.p, static_cast<std::size_t>(o.index), &dot));
    emit(take(dot), o.out);
    return 0;
  }
  char* info = nullptr;
  check(pt_frames_info(fs.p, &info));
  const std::string j = take(info);
  if (o.as_json) {
    emit(j, o.out);
    return 0;
  }
  std::string text;
  std::size_t i = 0;
  for (const auto& f : json::parse(j)) {
    text += "frame " + std::to_string(i++) + ": " + std::to_string(f["worlds"].get<std::size_t>()) + " worlds, " +
            std::to_string(f["modalities"].get<int>()) + " modalities, transitivity degree " +
            std::to_string(f["transitivity_degree"].get<int>()) + ", height " + std::to_string(f["height"].get<int>()) +
            ", " + std::to_string(f["clusters"].size()) + " clusters\n";
  }
  emit(text, o.out);
  return 0;
}

int cmd_canonical(const Options& o) {
  logic_h l;
  if (o.frames.empty()) throw failure("invalid argument: --frames is required");
  load_logic(o, l);
  if (o.height > 0) check(pt_logic_set_height(l.p, o.height));
  char* j = nullptr;
  char* dot = nullptr;
  check(pt_canonical(l.p, o.vars, &j, o.dot.empty() ? nullptr : &dot));
  const std::string text = take(j);
  if (!o.dot.empty()) emit(take(dot), o.dot);
  if (o.as_json) {
    emit(text, o.out);
    return 0;
  }
  json c = json::parse(text);
  std::string s = "atoms: " + std::to_string(c["atoms"].get<std::size_t>()) +
                  "\nalgebra size: " + std::to_string(c["algebra_size"].get<std::uint64_t>()) +
                  "\nheight: " + std::to_string(c["height"].get<int>()) + "\n";
  for (std::size_t a = 0; a < c["atom_labels"].size(); ++a)
    s += "  " + std::to_string(a) + " [depth " + std::to_string(c["depths"][a].get<int>()) +
         "]: " + c["atom_labels"][a].get<std::string>() + "\n";
  emit(s, o.out);
  return 0;
}

int cmd_decide(const Options& o) {
  logic_h l;
  load_logic(o, l);
  if (o.height > 0) check(pt_logic_set_height(l.p, o.height));
  formula_h f;
  parse_formula(l, o.formula, f);
  int valid = 0;
  char* j = nullptr;
  check(pt_decide(l.p, f.p, &valid, &j));
  const std::string text = take(j);
  emit(o.as_json ? text : verdict_text(text), o.out);
  return 0;
}

int cmd_translate(const Options& o) {
  logic_h l;
  load_logic(o, l);
  formula_h f, t;
  parse_formula(l, o.formula, f);
  check(pt_translate(l.p, o.mode.c_str(), o.mode == "main" ? o.vars : 0, o.height, f.p, &t.p));
  std::string s = render(t, o.pretty);
  if (o.verify) {
    // L[h+1] |- f versus L |- translation.
    const int lifted = o.mode == "main" ? o.height + 1 : 1;
    auto verdict = [&](const formula_h& g, int h) -> std::string {
      logic_h l2;
      load_logic(o, l2);
      if (h > 0) check(pt_logic_set_height(l2.p, h));
      int valid = 0;
      pt_status st = pt_decide(l2.p, g.p, &valid, nullptr);
      if (st == PT_ERR_UNSUPPORTED) return std::string("unsupported (") + pt_last_error() + ")";
      check(st);
      return valid ? "valid" : "not valid";
    };
    s += "\nL[" + std::to_string(lifted) + "] on the formula: " + verdict(f, lifted);
    s += "\nL on the translation: " + verdict(t, 0);
  }
  emit(s, o.out);
  return 0;
}

int cmd_verify(const std::string& suite, const Options& o) {
  json p = json::object();
  if (!o.frames.empty()) p["frames"] = o.frames;
  p["vars"] = o.vars;
  p["height"] = o.height > 0 ? o.height : (suite == "bh" ? 3 : 1);
  p["seed"] = o.seed;
  if (o.count) p["count"] = o.count;
  if (o.cap) p["cap"] = o.cap;
  p["budget"] = o.budget;
  if (o.depth >= 0) p["depth"] = o.depth;
  if (o.n_min) p["n_min"] = o.n_min;
  if (o.n_max) p["n_max"] = o.n_max;
  p["max_points"] = o.max_points;
  int passed = 0;
  char* report = nullptr;
  check(pt_verify(suite.c_str(), p.dump().c_str(), &passed, &report));
  const std::string text = take(report);
  if (o.as_json) {
    emit(text, o.out);
  } else {
    json r = json::parse(text);
    std::string s = r["suite"].get<std::string>() + ": " + (passed ? "PASS" : "FAIL") + " (" +
                    std::to_string(r["cases"].get<std::uint64_t>()) + " cases, " +
                    std::to_string(r["failures"].size()) + " failures, seed " +
                    std::to_string(r["seed"].get<std::uint64_t>()) + ", " + r["wall_seconds"].dump() + " s)\n";
    if (!r["metrics"].empty()) s += "metrics: " + r["metrics"].dump() + "\n";
    std::size_t shown = 0;
    for (const auto& f : r["failures"]) {
      if (shown++ == 20) {
        s += "  ...\n";
        break;
      }
      s += "  " + f["input"].get<std::string>() + ": expected " + f["expected"].get<std::string>() + ", got " +
           f["actual"].get<std::string>() + "\n";
    }
    emit(s, o.out);
  }
  return passed ? 0 : 2;
}

int cmd_gen(const std::string& what, const Options& o) {
  json p = json::object();
  p["seed"] = o.seed;
  p["count"] = o.count ? o.count : 10;
  p["vars"] = o.vars;
  if (o.depth >= 0) p["depth"] = o.depth;
  if (o.size >= 0) p["size"] = o.size;
  p["exhaustive"] = o.exhaustive;
  p["kind"] = o.kind;
  p["worlds"] = o.worlds;
  char* out = nullptr;
  check(pt_generate(what.c_str(), p.dump().c_str(), &out));
  std::string text = take(out);
  if (!o.as_json && what == "formulas") {
    std::string lines;
    for (const auto& f : json::parse(text)) lines += f.get<std::string>() + "\n";
    text = lines;
  }
  emit(text, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pretrans: Glivenko-type translations for pretransitive modal logics"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* c) {
    c->add_flag("--json", o.as_json, "Emit JSON");
    c->add_option("--out", o.out, "Write output to a file");
  };

  auto* frame = app.add_subcommand("frame", "Inspect frames");
  frame->require_subcommand(1);
  std::string frame_cmd;
  for (const char* name : {"info", "render"}) {
    auto* c = frame->add_subcommand(name, name == std::string("info") ? "Height, clusters, transitivity degree"
                                                                       : "DOT rendering of one frame");
    c->add_option("--frames", o.frames, "Frame file (JSON)")->required();
    c->add_option("--index", o.index, "Frame index for render");
    add_out(c);
    c->callback([&, name] { frame_cmd = name; });
  }

  auto* logic = app.add_subcommand("logic", "Frame-class logics");
  logic->require_subcommand(1);
  auto* canon = logic->add_subcommand("canonical", "k-canonical model of Log(frames)");
  canon->add_option("--frames", o.frames, "Frame file (JSON)")->required();
  canon->add_option("--vars", o.vars, "Number of variables k");
  canon->add_option("--height", o.height, "Restrict to the top part of this height");
  canon->add_option("--cap", o.cap, "Element cap for the free algebra");
  canon->add_option("--dot", o.dot, "Also write the dual frame as DOT to this file");
  add_out(canon);

  auto* dec = app.add_subcommand("decide", "Decide validity");
  dec->add_option("--logic", o.logic, "k|t|k4|s4|s5|frames:<file>");
  dec->add_option("--frames", o.frames, "Frame file (same as --logic frames:<file>)");
  dec->add_option("--height", o.height, "Height bound h (L[h])");
  dec->add_option("--formula", o.formula, "Formula text")->required();
  dec->add_option("--cap", o.cap, "Element cap for the free algebra");
  add_out(dec);

  auto* tr = app.add_subcommand("translate", "Glivenko-type translations");
  tr->add_option("--mode", o.mode, "h1 or main")->check(CLI::IsMember({"h1", "main"}));
  tr->add_option("--logic", o.logic, "k4|s4|s5|frames:<file>");
  tr->add_option("--frames", o.frames, "Frame file (same as --logic frames:<file>)");
  tr->add_option("--vars", o.vars, "Number of variables k (main)");
  tr->add_option("--height", o.height, "h: translate L[h+1] into L (main)");
  tr->add_option("--formula", o.formula, "Formula text")->required();
  tr->add_option("--cap", o.cap, "Element cap for the free algebra");
  tr->add_flag("--verify", o.verify, "Also print both decision verdicts");
  tr->add_flag("--pretty", o.pretty, "Render with derived connectives");
  tr->add_option("--out", o.out, "Write output to a file");

  auto* ver = app.add_subcommand("verify", "Verification suites (exit 0 pass, 2 failures, 1 error)");
  ver->require_subcommand(1);
  std::string suite;
  for (const char* name : {"bh", "algebra", "topheavy", "main", "s4s5", "embedd", "heavy", "fmp", "section5"}) {
    auto* c = ver->add_subcommand(name, std::string("Run the ") + name + " suite");
    c->add_option("--frames", o.frames, "Frame file (JSON)");
    c->add_option("--vars", o.vars, "Number of variables k");
    c->add_option("--height", o.height, "h (bh: maximal h checked)");
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--count", o.count, "Number of random cases");
    c->add_option("--cap", o.cap, "Element cap for free algebras");
    c->add_option("--budget", o.budget, "Minimum size of the exhaustive formula enumeration (main)");
    c->add_option("--depth", o.depth, "Maximal modal depth of generated formulas");
    c->add_option("--n-min", o.n_min, "Smallest N (section5)");
    c->add_option("--n-max", o.n_max, "Largest N (section5)");
    c->add_option("--max-points", o.max_points, "Exhaustive frame size bound (bh)");
    add_out(c);
    c->callback([&, name] { suite = name; });
  }

  auto* gen = app.add_subcommand("gen", "Generate formulas or frames");
  gen->require_subcommand(1);
  std::string gen_what;
  for (const char* name : {"formulas", "frames"}) {
    auto* c = gen->add_subcommand(name, std::string("Generate ") + name);
    c->add_option("--vars", o.vars, "Number of variables");
    c->add_option("--count", o.count, "How many");
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--depth", o.depth, "Maximal modal depth");
    c->add_option("--size", o.size, "Maximal formula size");
    c->add_flag("--exhaustive", o.exhaustive, "Enumerate by size instead of sampling");
    c->add_option("--kind", o.kind,
                  "random|preorder|preorder2|euclidean|omega_top|neighbor_exclusion|chain|cluster");
    c->add_option("--worlds", o.worlds, "Maximal number of worlds");
    add_out(c);
    c->callback([&, name] { gen_what = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    if (frame->parsed()) return cmd_frame(frame_cmd, o);
    if (canon->parsed()) return cmd_canonical(o);
    if (dec->parsed()) return cmd_decide(o);
    if (tr->parsed()) return cmd_translate(o);
    if (ver->parsed()) return cmd_verify(suite, o);
    if (gen->parsed()) return cmd_gen(gen_what, o);
  } catch (const failure& e) {
    std::cerr << "pretrans: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "pretrans: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

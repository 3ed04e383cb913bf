#include "pretrans/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "json.hpp"
#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"

namespace pretrans {

using json = nlohmann::json;

std::string VerificationReport::to_json() const {
  json fs = json::array();
  for (const auto& f : failures) fs.push_back({{"input", f.input}, {"expected", f.expected}, {"actual", f.actual}});
  json j = {{"suite", suite},     {"cases", cases},
            {"passed", passed()}, {"failures", std::move(fs)},
            {"seed", seed},       {"wall_seconds", wall_seconds},
            {"metrics", json::parse(metrics)}};
  return j.dump();
}

namespace {

// Runs body(report) and stamps suite name, timing and failure order.
VerificationReport run_suite(const std::string& name, std::uint64_t seed,
                             const std::function<void(VerificationReport&)>& body) {
  VerificationReport r;
  r.suite = name;
  r.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::stable_sort(r.failures.begin(), r.failures.end(),
                   [](const Failure& a, const Failure& b) { return a.input < b.input; });
  return r;
}

std::string set_text(const Bits& b) {
  std::string s = "{";
  bool first = true;
  b.for_each([&](std::size_t i) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  });
  return s + "}";
}

std::string yes_no(bool v) { return v ? "valid" : "not valid"; }

void expect(VerificationReport& r, bool ok, const std::string& input, const std::string& expected,
            const std::string& actual) {
  ++r.cases;
  if (!ok) r.failures.push_back({input, expected, actual});
}

void expect_set(VerificationReport& r, const Bits& got, const Bits& want, const std::string& input) {
  ++r.cases;
  if (!(got == want)) r.failures.push_back({input, set_text(want), set_text(got)});
}

}  // namespace

std::vector<Frame> all_frames(std::size_t max_points, int n) {
  std::vector<Frame> out;
  for (std::size_t N = 1; N <= max_points; ++N) {
    const std::size_t bits = static_cast<std::size_t>(n) * N * N;
    if (bits > 24) throw budget_error("all_frames: 2^" + std::to_string(bits) + " frames is too many");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) out.push_back(frame_from_mask(N, n, mask));
  }
  return out;
}

VerificationReport verify_bh(const std::vector<Frame>& corpus, int h_max) {
  return run_suite("bh", 0, [&](VerificationReport& r) {
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
      const Frame& fr = corpus[idx];
      const int ht = height(fr);
      const int m = transitivity_degree(fr);
      for (int h = 0; h <= h_max; ++h) {
        const bool valid = frame_validates(fr, bh_fresh(h, m, fr.sig()));
        const bool want = ht <= h;
        if (valid != want || r.failures.size() < 1000)
          expect(r, valid == want, "frame " + frame_to_json(fr) + " h=" + std::to_string(h),
                 yes_no(want) + " (height " + std::to_string(ht) + ")", yes_no(valid));
        else
          ++r.cases;
      }
    }
  });
}

VerificationReport verify_algebra(const FrameClassLogic& L, int k, SuiteOptions opt, std::size_t exhaustive_atoms,
                                  std::size_t samples, std::uint64_t seed) {
  return run_suite("algebra", seed, [&](VerificationReport& r) {
    auto C = canonical(L, k, opt.algebra);
    const FreeAlgebra& A = C->algebra;
    const Model& M = C->model.model;
    const std::size_t n = A.atom_count();
    json metrics = {{"atoms", n}, {"coordinates", A.coordinates()}, {"exhaustive", n <= exhaustive_atoms}};

    // Atom labels and atom formulas.
    std::vector<Bits> atom_truth;
    for (std::size_t a = 0; a < n; ++a) {
      Bits want(n);
      want.set(a);
      atom_truth.push_back(truth_set(M, A.atom_labels()[a]));
      expect_set(r, atom_truth.back(), want, "atom label " + std::to_string(a) + ": " + render(A.atom_labels()[a]));
      expect_set(r, truth_set(M, atom_formula(C->model, a)), want, "atom formula " + std::to_string(a));
      expect(r, A.eval(A.atom_labels()[a]) == A.atoms()[a], "label soundness of atom " + std::to_string(a),
             "label true exactly on the atom's coordinates", "mismatch");
    }
    expect_set(r, truth_set(M, A.element_label(Bits(n))), Bits(n), "label of the bottom element");
    expect_set(r, truth_set(M, A.element_label(Bits::full(n))), Bits::full(n), "label of the top element");

    if (n <= exhaustive_atoms) {
      // Every proper nonempty element's label is the left-folded disjunction
      // of its atom labels; evaluate those folds along a depth-first walk so
      // each shared prefix is model-checked once.
      std::uint64_t checked = 0, bad = 0;
      std::string first_bad;
      Bits members(n);
      std::function<void(std::size_t, const Bits&)> walk = [&](std::size_t from, const Bits& acc) {
        for (std::size_t a = from; a < n; ++a) {
          members.set(a);
          Bits t = acc.size() == 0 ? atom_truth[a] : (~(~acc)) | atom_truth[a];
          if (members.count() < n) {
            ++checked;
            if (!(t == members)) {
              ++bad;
              if (first_bad.empty()) first_bad = set_text(members);
            }
          }
          walk(a + 1, t);
          members.reset(a);
        }
      };
      walk(0, Bits());
      r.cases += checked;
      if (bad)
        r.failures.push_back({"element " + first_bad + " (+" + std::to_string(bad - 1) + " more)",
                              "truth set equals the element", "differs"});
      metrics["elements_checked"] = checked + 2;
    }

    // Full labels on sampled elements: dual truth lemma and coordinate soundness.
    Rng rng(seed);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < samples && n > 0; ++s) {
      Bits e(n);
      for (std::size_t a = 0; a < n; ++a)
        if (coin(rng)) e.set(a);
      Formula label = A.element_label(e);
      expect_set(r, truth_set(M, label), e, "sampled element " + set_text(e));
      expect(r, A.eval(label) == A.element_bits(e), "label soundness of element " + set_text(e),
             "label true exactly on the element's coordinates", "mismatch");
    }
    r.metrics = metrics.dump();
  });
}

VerificationReport verify_topheavy(const FrameClassLogic& L, int k, int h, SuiteOptions opt) {
  return run_suite("topheavy", 0, [&](VerificationReport& r) {
    auto C = canonical(L, k, opt.algebra);
    const CanonicalModel& M = C->model;
    const int H = height(M.model.frame);
    if (h < 0 || h > H)
      throw error(errc::invalid_argument, "topheavy: h must lie in 0.." + std::to_string(H) + " (canonical height)");
    const auto d = depths(M.model.frame);
    const std::size_t n = M.size();
    const DepthFormulaSet B = depth_formulas(M, h, opt.schemes);
    for (int i = 0; i <= h; ++i) {
      Bits want(n);
      for (World x = 0; x < n; ++x)
        if (d[x] <= i) want.set(x);
      expect_set(r, truth_set(M.model, B.B[static_cast<std::size_t>(i)]), want, "B[" + std::to_string(i) + "]");
    }
    if (h >= 1) {
      std::vector<long> map;
      CanonicalModel top = top_part(M, h, &map);
      const Formula gamma = jankov_fine_gamma(top, opt.schemes);
      for (World x = 0; x < n; ++x) {
        if (map[x] < 0) continue;
        const World y = static_cast<World>(map[x]);
        const Formula beta = Formula::conj(atom_formula(top, y), gamma);
        Bits want(n), want_top(top.size());
        want.set(x);
        want_top.set(y);
        expect_set(r, truth_set(M.model, beta), want, "beta(" + std::to_string(x) + ") in the canonical model");
        expect_set(r, truth_set(top.model, beta), want_top, "beta(" + std::to_string(x) + ") in the top part");
      }
      for (const Model* mod : std::initializer_list<const Model*>{&M.model, &top.model}) {
        const Bits g = truth_set(*mod, gamma);
        const std::string where = mod == &M.model ? "canonical model" : "top part";
        for (int i = 0; i < mod->frame.sig().n(); ++i)
          g.for_each([&](std::size_t x) {
            expect(r, mod->frame.succ(i, x).subset_of(g),
                   "gamma persistence along R_" + std::to_string(i) + " from " + std::to_string(x) + " in the " + where,
                   "successors satisfy gamma", "successor " + set_text(mod->frame.succ(i, x) - g) + " does not");
          });
      }
    }
    if (h + 1 <= H)
      expect(r, is_h_heavy(M.model.frame, h + 1), "canonical frame (h+1)-heavy, h=" + std::to_string(h), "heavy",
             "not heavy");
    r.metrics = json{{"atoms", n}, {"height", H}}.dump();
  });
}

VerificationReport verify_main(const FrameClassLogic& L, int k, int h, const std::vector<Formula>& formulas,
                               SuiteOptions opt) {
  return run_suite("main", 0, [&](VerificationReport& r) {
    auto C = canonical(L, k, opt.algebra);
    const int H = height(C->model.model.frame);
    if (h < 0 || h + 1 > H)
      throw error(errc::invalid_argument, "main: need 0 <= h and h+1 <= " + std::to_string(H) + " (canonical height)");
    const DepthFormulaSet B = depth_formulas(C->model, h, opt.schemes);
    std::uint64_t valid = 0;
    for (const Formula& f : formulas) {
      if (f.var_bound() > k) throw error(errc::range, "main: formula " + render(f) + " uses more than k variables");
      const bool lhs = decide_height_bounded(L, h + 1, f, opt.algebra).valid;
      const bool rhs = decide_frames(L, main_translation(f, B), opt.algebra).valid;
      valid += lhs;
      expect(r, lhs == rhs, render(f), "L[h+1]: " + yes_no(lhs), "translation in L: " + yes_no(rhs));
    }
    r.metrics = json{{"formulas", formulas.size()}, {"valid_in_extension", valid}}.dump();
  });
}

VerificationReport verify_embedd(const FrameClassLogic& L, const std::vector<std::pair<Formula, Formula>>& pairs,
                                 SuiteOptions opt) {
  return run_suite("embedd", 0, [&](VerificationReport& r) {
    const int m = L.m();
    for (const auto& [psi, f] : pairs) {
      auto [lhs, rhs] = embedd_pair(psi, f, m, L.sig());
      const bool a = decide_height_bounded(L, 1, lhs, opt.algebra).valid;
      const bool b = decide_frames(L, rhs, opt.algebra).valid;
      expect(r, a == b, render(psi) + " ; " + render(f), "L[1]: " + yes_no(a), "L: " + yes_no(b));
      const bool c = decide_height_bounded(L, 1, f, opt.algebra).valid;
      const bool d = decide_frames(L, glivenko_h1(f, m, L.sig()), opt.algebra).valid;
      expect(r, c == d, render(f), "L[1]: " + yes_no(c), "L: " + yes_no(d));
    }
  });
}

FrameClassLogic s5_frame_class(int k) {
  if (k < 0 || k > 3) throw error(errc::range, "s5_frame_class: k must lie in 0..3");
  std::vector<Frame> fs;
  for (std::size_t s = 1; s <= (std::size_t{1} << k); ++s) fs.push_back(cluster_frame(s));
  return FrameClassLogic(std::move(fs));
}

VerificationReport verify_s4s5(std::uint64_t seed, std::size_t count, SuiteOptions opt) {
  return run_suite("s4s5", seed, [&](VerificationReport& r) {
    const Signature sig(1);
    auto s5_tab = [&](const Formula& f) { return tableau_decide(NamedLogic::S5, f).valid; };
    auto s4_tab = [&](const Formula& f) { return tableau_decide(NamedLogic::S4, f).valid; };
    auto s5_frames = [&](const Formula& f) { return decide_frames(s5_frame_class(f.var_bound()), f, opt.algebra).valid; };
    auto check = [&](const Formula& f) {
      const bool a = s5_tab(f), b = s5_frames(f);
      expect(r, a == b, render(f), "S5 tableau: " + yes_no(a), "S5 clusters: " + yes_no(b));
      const bool c = s4_tab(glivenko_h1(f, 1, sig));
      expect(r, a == c, render(f), "S5: " + yes_no(a), "S4 on <>[]f: " + yes_no(c));
      return a;
    };
    expect(r, check(parse("p0 -> box dia p0")), "p0 -> box dia p0 (fixed)", "valid", "not valid");
    expect(r, !check(Formula::falsum()), "false (fixed)", "not valid", "valid");

    Rng rng(seed);
    RandomFormulaOptions ro;
    ro.k = 2;
    ro.max_modal_depth = 3;
    ro.max_size = 12;
    std::uint64_t valid = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const Formula f = random_formula(rng, ro);
      valid += check(f);
      const Formula psi = random_formula(rng, ro);
      auto [lhs, rhs] = embedd_pair(psi, f, 1, sig);
      const bool a = s5_tab(lhs), b = s4_tab(rhs);
      expect(r, a == b, render(psi) + " ; " + render(f), "S5: " + yes_no(a), "S4 pair form: " + yes_no(b));
    }
    r.metrics = json{{"random", count}, {"s5_valid", valid}}.dump();
  });
}

VerificationReport verify_heavy(const FrameClassLogic& L, int k, SuiteOptions opt) {
  return run_suite("heavy", 0, [&](VerificationReport& r) {
    auto C = canonical(L, k, opt.algebra);
    const FreeAlgebra& A = C->algebra;
    const Frame& F = C->model.model.frame;
    const int H = height(F);
    for (int h = 1; h <= H; ++h)
      expect(r, is_h_heavy(F, h), "canonical frame " + std::to_string(h) + "-heavy", "heavy", "not heavy");

    // x R* y iff every element containing y lies below <>^{<=m} of itself at x.
    const std::size_t n = A.atom_count();
    auto dia_star = [&](const Bits& e) {
      Bits acc = e, cur = e;
      for (int s = 0; s < A.m(); ++s) {
        Bits next(A.coordinates());
        for (int i = 0; i < A.sig().n(); ++i) next |= A.diamond(i, cur);
        cur = std::move(next);
        acc |= cur;
      }
      return acc;
    };
    const Relation star = reach_star(F);
    const bool exhaustive = n <= 12;
    Rng rng(7);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t b = 0; b < n; ++b) {
      // Elements above atom b: every superset when small, else b itself plus samples.
      std::vector<Bits> above;
      if (exhaustive) {
        const std::uint64_t rest = std::uint64_t{1} << (n - 1);
        for (std::uint64_t mask = 0; mask < rest; ++mask) {
          Bits e(n);
          e.set(b);
          for (std::size_t j = 0, bit = 0; j < n; ++j) {
            if (j == b) continue;
            if ((mask >> bit++) & 1u) e.set(j);
          }
          above.push_back(std::move(e));
        }
      } else {
        Bits e(n);
        e.set(b);
        above.push_back(e);
        for (int s = 0; s < 64; ++s) {
          Bits x = e;
          for (std::size_t j = 0; j < n; ++j)
            if (coin(rng)) x.set(j);
          above.push_back(std::move(x));
        }
      }
      std::vector<Bits> images;
      for (const Bits& e : above) images.push_back(dia_star(A.element_bits(e)));
      for (std::size_t a = 0; a < n; ++a) {
        bool all = true;
        for (const Bits& img : images) all = all && A.atoms()[a].subset_of(img);
        const bool rs = star[a].test(b);
        expect(r, rs == all, "atoms " + std::to_string(a) + "," + std::to_string(b),
               std::string("R*: ") + (rs ? "yes" : "no"), std::string("algebraic: ") + (all ? "yes" : "no"));
      }
    }
    r.metrics = json{{"atoms", n}, {"height", H}, {"exhaustive_elements", exhaustive}}.dump();
  });
}

std::vector<Formula> isolating_formulas(std::size_t count) {
  const Formula p0 = Formula::var(0);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0)
      out.push_back(Formula::conj(p0, Formula::diamond(0, Formula::neg(p0))));
    else if (i == 1)
      out.push_back(Formula::conj(Formula::neg(Formula::diamond(0, out[0])), Formula::neg(p0)));
    else
      out.push_back(Formula::conj(Formula::neg(Formula::disj(Formula::diamond(0, out[i - 1]), out[i - 2])),
                                  Formula::neg(p0)));
  }
  return out;
}

VerificationReport verify_section5(std::size_t alpha_min, std::size_t alpha_max, std::size_t probe_min,
                                   std::size_t probe_max, std::uint64_t bound) {
  return run_suite("section5", 0, [&](VerificationReport& r) {
    for (std::size_t N = alpha_min; N <= alpha_max; ++N) {
      if (N < 3) throw error(errc::invalid_argument, "section5: neighbor-exclusion checks need N >= 3");
      Frame fr = neighbor_exclusion_frame(N);
      Bits p0(N + 1);
      p0.set(0);
      p0.set(N);
      Model m(fr, {p0});
      const auto alphas = isolating_formulas(N - 2);
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        Bits want(N + 1);
        want.set(i);
        expect_set(r, truth_set(m, alphas[i]), want, "N=" + std::to_string(N) + " alpha_" + std::to_string(i));
      }
    }
    json sizes = json::object();
    for (std::size_t N = probe_min; N <= probe_max; ++N) {
      Frame fr = omega_top_frame(N);
      const std::size_t w = fr.size();
      if (w > 20) throw budget_error("section5: probe frame too large");
      std::uint64_t best = 0;
      std::uint64_t arg = 0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
        Bits g(w);
        for (std::size_t x = 0; x < w; ++x)
          if ((mask >> x) & 1u) g.set(x);
        const std::uint64_t s = subalgebra_size_probe(fr, {g}, std::uint64_t{1} << 40);
        if (s > best) {
          best = s;
          arg = mask;
        }
      }
      sizes[std::to_string(N)] = best;
      expect(r, best <= bound, "omega_top_frame(" + std::to_string(N) + ") generator mask " + std::to_string(arg),
             "at most " + std::to_string(bound) + " elements", std::to_string(best) + " elements");
    }
    r.metrics = json{{"max_subalgebra", sizes}}.dump();
  });
}

VerificationReport verify_fmp(const FrameClassLogic& L, const std::vector<Formula>& formulas, SuiteOptions opt) {
  return run_suite("fmp", 0, [&](VerificationReport& r) {
    std::uint64_t refuted = 0;
    for (const Formula& f : formulas) {
      if (decide_frames(L, glivenko_h1(f, L.m(), L.sig()), opt.algebra).valid) continue;
      ++refuted;
      FmpWitness w = fmp_transfer_witness(L, f, opt.algebra);
      const Frame& fr = w.model.frame;
      expect(r, height(fr) == 1, render(f) + " (height)", "1", std::to_string(height(fr)));
      expect(r, frame_validates(fr, bh_fresh(1, L.m(), L.sig())), render(f) + " (B_1)", "valid", "not valid");
      expect(r, !true_at(w.model, f, w.world), render(f) + " (refutes)", "false at witness", "true");
    }
    r.metrics = json{{"formulas", formulas.size()}, {"refuted", refuted}}.dump();
  });
}

}  // namespace pretrans

#include <functional>
#include <set>

#include "doctest.h"
#include "pretrans/algebra.hpp"
#include "pretrans/decision.hpp"
#include "pretrans/error.hpp"
#include "pretrans/frame_analysis.hpp"
#include "pretrans/gen.hpp"

using namespace pretrans;

namespace {

using Set = std::vector<bool>;

// Closure of `gens` under complement, intersection and the given diamonds,
// as an explicit set of sets. Exponential; small inputs only.
std::size_t naive_closure(std::size_t width, const std::vector<Set>& gens,
                          const std::vector<std::function<Set(const Set&)>>& dias) {
  std::set<Set> seen;
  std::vector<Set> todo{Set(width, false)};
  for (const auto& g : gens) todo.push_back(g);
  while (!todo.empty()) {
    Set s = todo.back();
    todo.pop_back();
    if (!seen.insert(s).second) continue;
    Set c(width);
    for (std::size_t i = 0; i < width; ++i) c[i] = !s[i];
    todo.push_back(c);
    for (const auto& d : dias) todo.push_back(d(s));
    for (const Set& t : std::vector<Set>(seen.begin(), seen.end())) {
      Set x(width);
      for (std::size_t i = 0; i < width; ++i) x[i] = s[i] && t[i];
      todo.push_back(x);
    }
  }
  return seen.size();
}

// The product over all frames and all valuations of p_0..p_{k-1}.
std::size_t naive_free_algebra_size(const std::vector<Frame>& frames, int k) {
  struct Coord {
    std::size_t frame, start, worlds;
  };
  std::vector<Coord> blocks;
  std::vector<Set> gens(static_cast<std::size_t>(k));
  std::size_t width = 0;
  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    const std::size_t n = frames[fi].size();
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << (k * n)); ++v) {
      blocks.push_back({fi, width, n});
      for (int j = 0; j < k; ++j)
        for (World w = 0; w < n; ++w) gens[j].push_back((v >> (j * n + w)) & 1u);
      width += n;
    }
  }
  std::vector<std::function<Set(const Set&)>> dias;
  for (int i = 0; i < frames.front().sig().n(); ++i)
    dias.push_back([&, i](const Set& s) {
      Set out(width, false);
      for (const auto& b : blocks)
        for (World x = 0; x < b.worlds; ++x)
          for (World y = 0; y < b.worlds; ++y)
            if (frames[b.frame].has(i, x, y) && s[b.start + y]) out[b.start + x] = true;
      return out;
    });
  return naive_closure(width, gens, dias);
}

std::size_t naive_probe(const Frame& fr, const std::vector<Bits>& gens) {
  const std::size_t n = fr.size();
  std::vector<Set> g;
  for (const auto& b : gens) {
    Set s(n);
    for (World w = 0; w < n; ++w) s[w] = b.test(w);
    g.push_back(s);
  }
  std::function<Set(const Set&)> dia = [&](const Set& s) {
    Set out(n, false);
    for (World x = 0; x < n; ++x)
      for (World y = 0; y < n; ++y)
        if (fr.has(0, x, y) && s[y]) out[x] = true;
    return out;
  };
  return naive_closure(n, g, {dia});
}

FrameClassLogic single(Frame f) { return FrameClassLogic({std::move(f)}); }

}  // namespace

TEST_CASE("reflexive singleton, one variable") {
  FreeAlgebra a = build_free_algebra(single(reflexive_point()), 1);
  CHECK(a.size() == 4);
  CHECK(a.atom_count() == 2);
  CHECK(a.coordinates() == 2);
  CanonicalModel m = dual_canonical_model(a);
  REQUIRE(m.size() == 2);
  CHECK(m.model.frame.has(0, 0, 0));
  CHECK(m.model.frame.has(0, 1, 1));
  CHECK(!m.model.frame.has(0, 0, 1));
  CHECK(!m.model.frame.has(0, 1, 0));
  CHECK(m.model.valuation[0].count() == 1);
  for (World x = 0; x < 2; ++x) {
    Bits t = truth_set(m.model, atom_formula(m, x));
    CHECK(t.indices() == std::vector<std::size_t>{x});
  }
}

TEST_CASE("irreflexive singleton, no variables") {
  FreeAlgebra a = build_free_algebra(single(irreflexive_point()), 0);
  CHECK(a.size() == 2);
  CHECK(a.atom_count() == 1);
  CHECK(a.diamond(0, a.universe()).none());
  CHECK(a.eval(parse("dia true")).none());
  CanonicalModel m = dual_canonical_model(a);
  REQUIRE(m.size() == 1);
  CHECK(!m.model.frame.has(0, 0, 0));
  CHECK(truth_set(m.model, atom_formula(m, 0)).all());
}

TEST_CASE("element count agrees with a naive set-of-sets closure") {
  std::vector<std::vector<Frame>> classes = {
      {cluster_frame(2)},
      {chain_preorder(2)},
      {irreflexive_point(), reflexive_point()},
      {Frame::from_pairs(Signature(1), 2, {{{0, 1}}})},
      {Frame::from_pairs(Signature(1), 2, {{{0, 1}, {1, 0}}})},
      {Frame::from_pairs(Signature(2), 2, {{{0, 1}}, {{1, 1}}})},
  };
  for (const auto& frames : classes)
    for (int k = 0; k <= 1; ++k) {
      FreeAlgebra a = build_free_algebra(FrameClassLogic(frames), k);
      REQUIRE(a.size() == naive_free_algebra_size(frames, k));
    }
  CHECK(naive_free_algebra_size({cluster_frame(2)}, 1) == build_free_algebra(single(cluster_frame(2)), 1).size());
}

TEST_CASE("atoms partition the coordinates and are sorted") {
  FreeAlgebra a = build_free_algebra(FrameClassLogic({chain_preorder(3)}), 1);
  Bits all(a.coordinates());
  for (std::size_t i = 0; i < a.atom_count(); ++i) {
    CHECK(!a.atoms()[i].intersects(all));
    all |= a.atoms()[i];
    if (i) CHECK(lex_less(a.atoms()[i - 1], a.atoms()[i]));
  }
  CHECK(all.all());
  // Elements round-trip through atom sets.
  Bits some(a.atom_count());
  some.set(0);
  some.set(a.atom_count() - 1);
  CHECK(a.element_atoms(a.element_bits(some)) == some);
  CHECK(a.eval(a.element_label(some)) == a.element_bits(some));
  CHECK(a.element_label(Bits(a.atom_count())) == Formula::falsum());
  CHECK(a.element_label(Bits::full(a.atom_count())) == Formula::top());
}

TEST_CASE("S5 as clusters of size 1 and 2, one variable") {
  FrameClassLogic s5({cluster_frame(1), cluster_frame(2)});
  CanonicalModel m = dual_canonical_model(build_free_algebra(s5, 1));
  REQUIRE(m.size() == 4);
  Skeleton sk = skeleton(m.model.frame);
  REQUIRE(sk.size() == 3);
  std::multiset<std::size_t> sizes;
  for (const auto& c : sk.clusters) {
    sizes.insert(c.size());
    if (c.size() == 2) CHECK(m.model.valuation[0].test(c[0]) != m.model.valuation[0].test(c[1]));
  }
  CHECK(sizes == std::multiset<std::size_t>{1, 1, 2});
  CHECK(height(m.model.frame) == 1);
}

TEST_CASE("atom formulas isolate atoms") {
  for (const auto& frames : std::vector<std::vector<Frame>>{
           {chain_preorder(3)}, {cluster_frame(2), chain_preorder(2)}, {neighbor_exclusion_frame(3)}}) {
    CanonicalModel m = dual_canonical_model(build_free_algebra(FrameClassLogic(frames), 1));
    for (World a = 0; a < m.size(); ++a) REQUIRE(truth_set(m.model, atom_formula(m, a)).indices() == std::vector<std::size_t>{a});
  }
}

TEST_CASE("budgets are reported, never truncated") {
  FrameClassLogic L({chain_preorder(3)});
  AlgebraOptions small;
  small.cap = 8;
  CHECK_THROWS_AS(build_free_algebra(L, 1, small), budget_error);
  AlgebraOptions narrow;
  narrow.bit_budget = 10;
  CHECK_THROWS_AS(build_free_algebra(L, 1, narrow), budget_error);
  CHECK_THROWS_AS(subalgebra_size_probe(omega_top_frame(8), {Bits(9)}, 1), budget_error);
}

TEST_CASE("canonical model decides Log(F) like brute force on F") {
  EnumOptions eo;
  eo.min_count = 800;
  auto formulas = enumerate_formulas(eo);
  std::vector<Frame> frames;
  for (std::uint64_t mask = 0; mask < 2; ++mask) frames.push_back(frame_from_mask(1, 1, mask));
  for (std::uint64_t mask = 0; mask < 16; ++mask) frames.push_back(frame_from_mask(2, 1, mask));
  Rng rng(23);
  for (int i = 0; i < 24; ++i) frames.push_back(frame_from_mask(3, 1, rng() % 512));
  // Implicit elements: the default element cap would stop at 16 atoms.
  AlgebraOptions wide;
  wide.cap = std::uint64_t{1} << 62;
  for (const Frame& fr : frames) {
    FrameClassLogic L({fr});
    for (const Formula& f : formulas) {
      Verdict v = decide_frames(L, f, wide);
      REQUIRE_MESSAGE(v.valid == frame_validates(fr, f), render_pretty(f), " on ", frame_to_json(fr));
      if (!v.valid) REQUIRE(!true_at(*v.countermodel, f, v.world));
    }
  }
}

TEST_CASE("subalgebra probe agrees with naive closure") {
  for (std::size_t N : {3, 4, 5}) {
    Frame fr = omega_top_frame(N);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (N + 1)); ++mask) {
      Bits g(N + 1);
      for (World w = 0; w <= N; ++w)
        if ((mask >> w) & 1u) g.set(w);
      REQUIRE(subalgebra_size_probe(fr, {g}) == naive_probe(fr, {g}));
    }
  }
  CHECK(subalgebra_size_probe(omega_top_frame(8), {Bits(9)}) == 2);
  Bits zero(9);
  zero.set(0);
  CHECK(subalgebra_size_probe(omega_top_frame(8), {zero}) <= 8);
  CHECK(subalgebra_size_probe(chain_preorder(3), {}) == 2);
}

TEST_CASE("logic fingerprint identifies the frame list") {
  FrameClassLogic a({chain_preorder(2)}), b({chain_preorder(2)}), c({cluster_frame(2)});
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
  CHECK(a.m() == 1);
  CHECK(FrameClassLogic({omega_top_frame(3)}).m() == 2);
  CHECK_THROWS_AS(FrameClassLogic({chain_preorder(2), Frame(Signature(2), 1)}), error);
  CHECK_THROWS_AS(FrameClassLogic(std::vector<Frame>{}), error);
}

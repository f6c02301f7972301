#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"

using namespace vasreach;

namespace {

Instance example() { return parse_instance("dim 2 / action a 1 1 / action b -1 -2 / init 0 2 / target 1 0"); }

}  // namespace

TEST(Omega, OrderAndProjection) {
  OmegaVec u{1, omega, 0}, v{2, omega, 0};
  EXPECT_TRUE(omega_leq(u, v));
  EXPECT_FALSE(omega_leq(v, u));
  EXPECT_TRUE(omega_leq(OmegaVec{5, 5, 5}, OmegaVec::all_omega(3)));
  EXPECT_EQ(project(Config{1, 2, 3}, IndexSet{0, 2}), (OmegaVec{1, omega, 3}));
  EXPECT_EQ(u.finite_set(), (IndexSet{0, 2}));
  EXPECT_EQ(to_string(u), "(1,w,0)");
  EXPECT_THROW(omega_leq(OmegaVec{1}, OmegaVec{1, 2}), DimensionMismatch);
  EXPECT_EQ(omega_shift(u, IntVec{-1, -5, 2}), (OmegaVec{0, omega, 2}));
}

TEST(Vas, ParseAndFormat) {
  auto inst = example();
  EXPECT_EQ(inst.vas.dim(), 2u);
  EXPECT_EQ(inst.vas.size(), 2u);
  EXPECT_EQ(inst.source, (Config{0, 2}));
  auto again = parse_instance(format_instance(inst));
  EXPECT_EQ(again.vas.actions().size(), 2u);
  EXPECT_EQ(again.target, inst.target);
}

TEST(Vas, ParseErrorsCarryLineNumbers) {
  try {
    parse_instance("dim 2\naction a 1\ninit 0 0\ntarget 0 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_instance("dim 2\ninit 0 -1\ntarget 0 0\n"), ParseError);
  EXPECT_THROW(parse_instance("dim 1\naction a 1\naction a 2\ninit 0\ntarget 0\n"), ParseError);
  EXPECT_THROW(parse_instance("action a 1\n"), ParseError);
}

TEST(Vas, RunsAreValidated) {
  auto inst = example();
  vasreach::Run r = run_from_actions(inst.vas, inst.source, {0, 0, 0, 0, 1, 1, 1});
  EXPECT_TRUE(validate_run(r, inst.vas));
  EXPECT_EQ(r.target, inst.target);
  EXPECT_EQ(label_string(r, inst.vas), "a a a a b b b");
  EXPECT_FALSE(try_run_from_actions(inst.vas, inst.source, {1}).has_value());
  EXPECT_THROW(run_from_actions(inst.vas, inst.source, {1}), NegativeComponent);
  vasreach::Run broken = r;
  broken.word[2].src[0] += 1;
  EXPECT_FALSE(validate_run(broken, inst.vas));
}

TEST(Embedding, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(7);
  Vas vas(1, {{"a", {1}}, {"b", {-1}}});
  auto rand_prerun = [&](std::size_t len) {
    Prerun p{Config{static_cast<std::int64_t>(rng() % 3)}, {}, Config{static_cast<std::int64_t>(rng() % 3)}};
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t a = rng() % 2;
      std::int64_t u = static_cast<std::int64_t>(rng() % 3) + (a == 1 ? 1 : 0);
      p.word.push_back(Step{Config{u}, a, Config{u + vas.delta(a)[0]}});
    }
    return p;
  };
  for (int t = 0; t < 2000; ++t) {
    auto p1 = rand_prerun(rng() % 4), p2 = rand_prerun(rng() % 7);
    auto w = embeds(p1, p2);
    EXPECT_EQ(w.has_value(), brute::prerun_embeds(p1, p2));
    if (w) {
      EXPECT_TRUE(is_embedding(p1, p2, *w));
    }
  }
}

TEST(Embedding, AmalgamationIsARunAboveBoth) {
  Vas vas(2, {{"a", {1, 1}}, {"b", {-1, -2}}, {"c", {0, 1}}});
  vasreach::Run r0 = run_from_actions(vas, Config{1, 2}, {0, 1});
  vasreach::Run r1 = run_from_actions(vas, Config{2, 2}, {0, 0, 1});
  vasreach::Run r2 = run_from_actions(vas, Config{1, 3}, {2, 0, 1});
  auto w1 = embeds(r0, r1), w2 = embeds(r0, r2);
  ASSERT_TRUE(w1 && w2);
  vasreach::Run m = amalgamate(vas, r0, r1, r2, *w1, *w2);
  EXPECT_TRUE(validate_run(m, vas));
  // Source and target are offset by both surpluses.
  EXPECT_EQ(m.source, (Config{2, 3}));
  EXPECT_EQ(m.target, (Config{r1.target[0] + r2.target[0] - r0.target[0], r1.target[1] + r2.target[1] - r0.target[1]}));
  EXPECT_TRUE(embeds(r1, m).has_value());
  EXPECT_TRUE(embeds(r2, m).has_value());
  EXPECT_THROW(amalgamate(vas, r0, r1, r2, *w2, *w1), PreconditionError);
}

TEST(Oracle, MatchesEnumeration) {
  for (std::uint64_t s = 1; s <= 60; ++s) {
    auto inst = brute::random_instance(s);
    auto r = bfs_oracle(inst, 6, 8);
    auto runs = brute::all_runs(inst, 8, 6, 1);
    if (r.verdict == OracleVerdict::Reachable) {
      ASSERT_TRUE(r.run);
      EXPECT_TRUE(validate_run(*r.run, inst.vas));
      EXPECT_EQ(r.run->target, inst.target);
      EXPECT_FALSE(runs.empty());
    } else {
      EXPECT_TRUE(runs.empty()) << format_instance(inst);
    }
  }
}

TEST(Oracle, ExampleRunIsShortest) {
  auto r = bfs_oracle(example(), 12, 20);
  ASSERT_EQ(r.verdict, OracleVerdict::Reachable);
  EXPECT_EQ(label_string(*r.run, example().vas), "a a a a b b b");
  auto inf = parse_instance("dim 2 / action a 1 1 / action b -1 -2 / init 0 0 / target 0 1");
  EXPECT_EQ(bfs_oracle(inf, 12, 20).verdict, OracleVerdict::Unknown);
  auto closed = parse_instance("dim 1 / action a -1 / init 3 / target 5");
  EXPECT_EQ(bfs_oracle(closed, 12, 20).verdict, OracleVerdict::UnreachableCertified);
  EXPECT_THROW(bfs_oracle(closed, 4, 20), PreconditionError);
}

TEST(Oracle, LocalExploration) {
  Vas vas(3, {{"a", {1, 1, -1}}, {"b", {-1, 0, 1}}});
  auto s = explore_local(vas, Config{1, 0, 1}, {{Config{0, 0, 0}, Config{0, 1, 0}}}, {});
  EXPECT_EQ(s.F_gamma, (IndexSet{0, 2}));
  EXPECT_EQ(s.s_gamma, (OmegaVec{1, omega, 1}));
  EXPECT_EQ(s.s_in, (OmegaVec{1, 0, 1}));
  EXPECT_EQ(s.s_out, (OmegaVec{1, omega, 1}));
  EXPECT_EQ(s.states.size(), 3u);
  EXPECT_EQ(s.edges.size(), 4u);
}

TEST(Graph, SccMatchesMutualReachability) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    graph::Digraph g{1 + rng() % 6, {}};
    std::size_t ne = rng() % 10;
    for (std::size_t e = 0; e < ne; ++e) g.edges.emplace_back(rng() % g.n, rng() % g.n);
    std::vector<std::vector<char>> reach(g.n, std::vector<char>(g.n, 0));
    for (std::size_t v = 0; v < g.n; ++v) reach[v][v] = 1;
    for (auto [a, b] : g.edges) reach[a][b] = 1;
    for (std::size_t k = 0; k < g.n; ++k)
      for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = 0; j < g.n; ++j)
          if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
    auto comp = graph::scc(g);
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < g.n; ++j) EXPECT_EQ(comp[i] == comp[j], reach[i][j] && reach[j][i]);
  }
}

TEST(Graph, EulerCircuitUsesMultiplicities) {
  graph::Digraph g{3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 0}}};
  auto c = graph::euler_circuit(g, {2, 2, 1, 1, 3}, 0);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 9u);
  std::size_t at = 0;
  std::vector<std::size_t> used(5, 0);
  for (auto e : *c) {
    EXPECT_EQ(g.edges[e].first, at);
    at = g.edges[e].second;
    ++used[e];
  }
  EXPECT_EQ(at, 0u);
  EXPECT_EQ(used, (std::vector<std::size_t>{2, 2, 1, 1, 3}));
  EXPECT_FALSE(graph::euler_circuit(g, {1, 0, 0, 0, 0}, 0));
}

TEST(Graph, SimplePathsKeepParallelEdges) {
  graph::Digraph g{3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}}};
  std::size_t n = 0;
  graph::simple_paths(g, {0}, {0, 0, 1}, [&](const auto&, const auto&) { ++n; }, 100);
  EXPECT_EQ(n, 3u);
  EXPECT_THROW(graph::simple_paths(g, {0}, {0, 0, 1}, [](const auto&, const auto&) {}, 2), ResourceExhausted);
}

#include <gtest/gtest.h>

#include "brute.hpp"

using namespace vasreach;

namespace {

Instance example() { return parse_instance("dim 2 / action a 1 1 / action b -1 -2 / init 0 2 / target 1 0"); }

Instance infeasible() { return parse_instance("dim 2 / action a 1 1 / action b -1 -2 / init 0 0 / target 0 1"); }

BigVec parikh_solution(const MwgSequence& xi, const LLayout& lay, std::size_t cols, const vasreach::Run& r) {
  // Only valid for the one-graph initial sequence.
  BigVec z(cols, 0);
  for (std::size_t i = 0; i < r.source.size(); ++i) {
    z[lay.x(0, i)] = r.source[i];
    z[lay.y(0, i)] = r.target[i];
  }
  for (const auto& s : r.word) {
    const auto& edges = xi.graphs[0].graph.edges;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].action == s.action) z[lay.psi(0, e)] += 1;
  }
  return z;
}

}  // namespace

TEST(Sequence, InitialSequenceAndRank) {
  auto inst = example();
  auto xi = initial_sequence(inst);
  EXPECT_TRUE(validate_sequence(xi, inst.vas));
  EXPECT_EQ(to_string(rank_sequence(xi)), "w^(w^2*2+w*2)");
  auto r = run_from_actions(inst.vas, inst.source, {0, 0, 0, 0, 1, 1, 1});
  EXPECT_TRUE(run_in_sequence(r, xi));
  EXPECT_TRUE(prerun_ideal_contains(sequence_ideal(xi, inst.vas), r));
}

TEST(Sequence, SystemAcceptsParikhImagesOfRuns) {
  auto inst = example();
  auto xi = initial_sequence(inst);
  auto [sys, lay] = build_L(xi, inst.vas);
  for (const auto& r : brute::all_runs(inst, 7, 8)) EXPECT_TRUE(sys.satisfied_by(parikh_solution(xi, lay, sys.cols(), r)));
  EXPECT_EQ(sys.var_names[lay.x(0, 0)], "x0[1]");
  EXPECT_EQ(sys.var_names[lay.psi(0, 1)], "psi0[1]");
}

TEST(Perfectness, FirstDefectOfTheExample) {
  auto inst = example();
  auto xi = initial_sequence(inst);
  auto rep = is_perfect(xi, inst.vas);
  ASSERT_TRUE(rep.defect);
  EXPECT_EQ(rep.defect->kind, Defect::Kind::EdgeBounded);
  EXPECT_EQ(rep.defect->c, 4);
  auto children = dec(xi, *rep.defect, inst.vas);
  EXPECT_EQ(children.size(), 5u);
  auto parent = rank_sequence(xi);
  for (const auto& ch : children) {
    EXPECT_TRUE(validate_sequence(ch, inst.vas));
    EXPECT_TRUE(ord_cmp(rank_sequence(ch), parent) < 0);
  }
  for (const auto& r : brute::all_runs(inst, 7, 8))
    EXPECT_TRUE(std::any_of(children.begin(), children.end(), [&](const MwgSequence& c) { return run_in_sequence(r, c); }));
}

TEST(Perfectness, InfeasibleSystemIsTheFirstDefect) {
  auto inst = infeasible();
  auto rep = is_perfect(initial_sequence(inst), inst.vas);
  ASSERT_TRUE(rep.defect);
  EXPECT_EQ(rep.defect->kind, Defect::Kind::Infeasible);
  EXPECT_TRUE(dec(initial_sequence(inst), *rep.defect, inst.vas).empty());
}

TEST(Perfectness, ExchangeGraphIsPerfect) {
  Vas vas(3, {{"a", {1, 1, -1}}, {"b", {-1, 0, 1}}});
  WitnessGraph g;
  g.nodes = {OmegaVec{2, omega, 0}, OmegaVec{1, omega, 1}, OmegaVec{0, omega, 2}};
  g.edges = {{1, 0, 0}, {0, 1, 1}, {1, 1, 2}, {2, 0, 1}};
  g.root = 1;
  MwgSequence xi{{MarkedWitnessGraph{OmegaVec{1, 0, 1}, g, OmegaVec{1, omega, 1}}}, {}};
  auto rep = is_perfect(xi, vas);
  EXPECT_FALSE(rep.defect) << to_string(*rep.defect);
  auto r = extract_witness(xi, vas, Config{1, 0, 1});
  EXPECT_TRUE(validate_run(r, vas));
  EXPECT_TRUE(run_in_sequence(r, xi));
  EXPECT_EQ(r.source, (Config{1, 0, 1}));
}

TEST(Solve, ExampleIsReachable) {
  auto inst = example();
  auto out = klmst_solve(inst);
  auto* r = std::get_if<Reachable>(&out.result);
  ASSERT_TRUE(r);
  EXPECT_TRUE(validate_run(r->run, inst.vas));
  EXPECT_EQ(r->run.source, inst.source);
  EXPECT_EQ(r->run.target, inst.target);
  EXPECT_LT(out.steps, 10'000u);
  EXPECT_FALSE(out.perfect.empty());
  ASSERT_FALSE(out.trace.steps.empty());
  ASSERT_TRUE(out.trace.steps[0].defect);
  EXPECT_EQ(out.trace.steps[0].defect->kind, Defect::Kind::EdgeBounded);
}

TEST(Solve, InfeasibleStopsAfterOneStep) {
  auto out = klmst_solve(infeasible());
  EXPECT_TRUE(std::holds_alternative<Unreachable>(out.result));
  EXPECT_EQ(out.steps, 1u);
  ASSERT_EQ(out.trace.steps.size(), 1u);
  EXPECT_EQ(out.trace.steps[0].defect->kind, Defect::Kind::Infeasible);
}

TEST(Solve, SourceEqualsTarget) {
  auto none = parse_instance("dim 1 / init 2 / target 2");
  auto out = klmst_solve(none);
  auto* r = std::get_if<Reachable>(&out.result);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->run.word.empty());
  auto stuck = parse_instance("dim 1 / init 2 / target 3");
  EXPECT_TRUE(std::holds_alternative<Unreachable>(klmst_solve(stuck).result));
}

TEST(Solve, EarlyExitGivesTheSameVerdict) {
  std::size_t compared = 0, reachable = 0;
  for (std::uint64_t s = 1; s <= 25; ++s) {
    auto inst = brute::random_instance(s);
    Limits full, quick;
    full.max_steps = quick.max_steps = 3000;
    quick.stop_at_first_witness = true;
    auto a = klmst_solve(inst, full), b = klmst_solve(inst, quick);
    if (std::holds_alternative<Exhausted>(a.result) || std::holds_alternative<Exhausted>(b.result)) continue;
    ++compared;
    EXPECT_EQ(a.result.index(), b.result.index()) << format_instance(inst);
    EXPECT_LE(b.steps, a.steps);
    if (auto* r = std::get_if<Reachable>(&b.result)) {
      ++reachable;
      EXPECT_TRUE(validate_run(r->run, inst.vas));
      EXPECT_EQ(r->run.target, inst.target);
    }
  }
  EXPECT_GT(compared, 15u);
  EXPECT_GT(reachable, 3u);
}

TEST(Solve, StepLimitIsExhaustion) {
  Limits lim;
  lim.max_steps = 2;
  auto out = klmst_solve(example(), lim);
  ASSERT_TRUE(std::holds_alternative<Exhausted>(out.result));
  EXPECT_EQ(out.steps, 2u);
}

TEST(Solve, SmallRandomInstancesAgreeWithTheOracle) {
  std::size_t decided = 0;
  for (std::uint64_t s = 100; s < 130; ++s) {
    auto inst = brute::random_instance(s);
    Limits lim;
    lim.max_steps = 3000;
    auto out = klmst_solve(inst, lim);
    auto o = bfs_oracle(inst, 12, 20);
    if (std::holds_alternative<Exhausted>(out.result) || o.verdict == OracleVerdict::Unknown) continue;
    ++decided;
    EXPECT_EQ(std::holds_alternative<Reachable>(out.result), o.verdict == OracleVerdict::Reachable)
        << format_instance(inst);
  }
  EXPECT_GT(decided, 10u);
}

TEST(Family, MinimizeKeepsOnlyMaximalIdeals) {
  auto inst = example();
  auto out = klmst_solve(inst);
  auto fam = minimize(out.perfect, inst.vas);
  EXPECT_LE(fam.size(), out.perfect.size());
  EXPECT_FALSE(fam.empty());
  for (const auto& r : brute::all_runs(inst, 7, 8))
    EXPECT_TRUE(std::any_of(fam.begin(), fam.end(), [&](const MwgSequence& xi) {
      return prerun_ideal_contains(sequence_ideal(xi, inst.vas), r);
    }));
}

#include <gtest/gtest.h>

#include "brute.hpp"

using namespace vasreach;

namespace {

// Three-state cycle around (1,w,1) moving one token between the outer counters.
MarkedWitnessGraph exchange_graph() {
  WitnessGraph g;
  g.nodes = {OmegaVec{2, omega, 0}, OmegaVec{1, omega, 1}, OmegaVec{0, omega, 2}};
  g.edges = {{1, 0, 0}, {0, 1, 1}, {1, 1, 2}, {2, 0, 1}};
  g.root = 1;
  return MarkedWitnessGraph{OmegaVec{1, 0, 1}, g, OmegaVec{1, omega, 1}};
}

const Vas kExchange(3, {{"a", {1, 1, -1}}, {"b", {-1, 0, 1}}});

MarkedWitnessGraph loop_graph(std::vector<std::size_t> actions, OmegaVec in, OmegaVec out) {
  WitnessGraph g;
  g.nodes = {OmegaVec{omega}};
  for (auto a : actions) g.edges.push_back({0, a, 0});
  return MarkedWitnessGraph{std::move(in), g, std::move(out)};
}

const Vas kCounter(1, {{"inc", {1}}, {"dec", {-1}}});

bool replay(const StateVas& g, std::size_t q0, Config c, const PathWitness& w, std::size_t q1, const Config& target) {
  std::size_t q = q0;
  for (std::size_t e : w.edges) {
    if (g.edges[e].src != q) return false;
    auto n = try_apply(c, g.edges[e].delta);
    if (!n) return false;
    c = *n;
    q = g.edges[e].dst;
  }
  return q == q1 && config_leq(target, c);
}

}  // namespace

TEST(KarpMiller, CoverMatchesBoundedReachability) {
  std::size_t covered = 0, uncovered = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto g = brute::random_state_vas(seed, 3, 2);
    std::mt19937_64 rng(seed * 31);
    Config init(g.dim);
    for (auto& v : init) v = static_cast<std::int64_t>(rng() % 5);
    auto cover = km_cover(g, 0, OmegaVec::from(init));
    auto reach = brute::reach_set(g, 0, init, 24);
    std::vector<Config> box{Config{}};
    for (std::size_t i = 0; i < g.dim; ++i) {
      std::vector<Config> next;
      for (const auto& c : box)
        for (std::int64_t v = 0; v <= 4; ++v) {
          auto e = c;
          e.push_back(v);
          next.push_back(e);
        }
      box = next;
    }
    for (std::size_t q = 0; q < g.states; ++q)
      for (const auto& c : box) {
        bool km = std::any_of(cover[q].begin(), cover[q].end(), [&](const OmegaVec& v) { return config_leq(c, v); });
        bool bf = std::any_of(reach.begin(), reach.end(),
                              [&](const auto& r) { return r.first == q && config_leq(c, r.second); });
        ASSERT_EQ(km, bf) << "seed " << seed << " state " << q << " " << to_string(c);
        (km ? covered : uncovered)++;
        if (!km) continue;
        auto w = coverable(g, 0, OmegaVec::from(init), q, OmegaVec::from(c));
        ASSERT_TRUE(w);
        EXPECT_TRUE(replay(g, 0, init, *w, q, c));
      }
  }
  EXPECT_GT(covered, 100u);
  EXPECT_GT(uncovered, 100u);
}

TEST(KarpMiller, TreeLinksAreConsistent) {
  auto g = brute::random_state_vas(99, 3, 2);
  auto t = km_tree(g, 0, OmegaVec{1, 1});
  for (std::size_t v = 1; v < t.nodes.size(); ++v) {
    const auto& n = t.nodes[v];
    ASSERT_NE(n.parent, no_node);
    EXPECT_EQ(g.edges[n.via_edge].dst, n.state);
    if (n.repeat_of != no_node) {
      EXPECT_EQ(t.nodes[n.repeat_of].state, n.state);
      EXPECT_TRUE(omega_leq(n.value, t.nodes[n.repeat_of].value));
      EXPECT_TRUE(t.children[v].empty());
    }
  }
}

TEST(KarpMiller, BudgetIsReported) {
  StateVas g{1, {{0, {1, 0}, 0, 0}, {0, {-1, 1}, 0, 1}, {0, {0, -1}, 0, 2}}, {0, 1}, 2};
  EXPECT_THROW(km_tree(g, 0, OmegaVec{3, 3}, KmOptions{3}), ResourceExhausted);
}

TEST(KarpMiller, Acceleration) {
  StateVas g{2, {{0, {1, -1}, 1, 0}, {1, {0, 1}, 0, 1}}, {0, 1}, 2};
  auto cover = km_cover(g, 0, OmegaVec{0, 1});
  ASSERT_EQ(cover[0].size(), 1u);
  EXPECT_EQ(cover[0][0], (OmegaVec{omega, 1}));
}

TEST(Pump, ForwardPumpOnExchangeGraph) {
  auto m = exchange_graph();
  ASSERT_TRUE(validate_graph(m, kExchange));
  auto p = pumpable_forward(m, kExchange);
  ASSERT_TRUE(p);
  EXPECT_GT(p->effect[1], 0);
  EXPECT_EQ(p->effect[0], 0);
  auto run = try_run_from_actions(kExchange, Config{1, 0, 1}, p->actions);
  ASSERT_TRUE(run);
  EXPECT_GE(run->target[1], 1);
  auto b = pumpable_backward(m, kExchange);
  ASSERT_TRUE(b);
  EXPECT_TRUE(b->actions.empty());
}

TEST(Pump, BackwardPumpRunsIntoTheOutMark) {
  auto m = loop_graph({0, 1}, OmegaVec{omega}, OmegaVec{2});
  auto b = pumpable_backward(m, kCounter);
  ASSERT_TRUE(b);
  // Read forwards, the word ends in 2 from something larger.
  EXPECT_LT(b->effect[0], 0);
  Config start{2 - b->effect[0]};
  auto run = try_run_from_actions(kCounter, start, b->actions);
  ASSERT_TRUE(run);
  EXPECT_EQ(run->target, (Config{2}));
}

TEST(Pump, CertificateForAnUnpumpableMark) {
  auto m = loop_graph({1}, OmegaVec{3}, OmegaVec{omega});
  EXPECT_FALSE(pumpable_forward(m, kCounter));
  auto c = bounded_component_certificate(m, kCounter);
  EXPECT_EQ(c.index, 0u);
  EXPECT_EQ(c.bound, 3);
  auto pumped = loop_graph({0, 1}, OmegaVec{3}, OmegaVec{omega});
  EXPECT_TRUE(pumpable_forward(pumped, kCounter));
  EXPECT_THROW(bounded_component_certificate(pumped, kCounter), CertificateNotFound);
}

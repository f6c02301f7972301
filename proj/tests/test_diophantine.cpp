#include <gtest/gtest.h>

#include "brute.hpp"

using namespace vasreach;

namespace {

bool leq(const BigVec& a, const BigVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void expect_antichain(const std::vector<BigVec>& vs) {
  for (std::size_t k = 0; k < vs.size(); ++k)
    for (std::size_t l = 0; l < vs.size(); ++l)
      if (k != l) {
        EXPECT_FALSE(leq(vs[k], vs[l]));
      }
}

}  // namespace

TEST(Hilbert, RandomSystemsAgainstEnumeration) {
  std::size_t feasible_systems = 0, maxima_checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    auto sys = brute::random_system(seed);
    auto hb = hilbert(sys);
    for (const auto& h : hb.hom) EXPECT_TRUE(sys.satisfied_by(h, true));
    for (const auto& p : hb.part) EXPECT_TRUE(sys.satisfied_by(p));
    for (const auto& h : hb.hom) EXPECT_TRUE(std::any_of(h.begin(), h.end(), [](const BigInt& v) { return v > 0; }));
    expect_antichain(hb.hom);
    expect_antichain(hb.part);

    auto sols = brute::solutions(sys, 10);
    brute::Decomposer dec(hb);
    for (const auto& s : sols) ASSERT_TRUE(dec(s)) << "seed " << seed;
    EXPECT_EQ(feasible(hb).has_value(), feasible(sys).has_value());
    if (hb.part.empty()) {
      EXPECT_TRUE(sols.empty());
      continue;
    }
    ++feasible_systems;
    // A bounded coordinate peaks at a particular element; the box sees it when they all fit.
    bool parts_fit = std::all_of(hb.part.begin(), hb.part.end(), [](const BigVec& p) {
      return std::all_of(p.begin(), p.end(), [](const BigInt& v) { return v <= 10; });
    });
    for (std::size_t i = 0; i < sys.cols(); ++i) {
      if (coord_unbounded(hb, i)) {
        EXPECT_THROW(coord_max(hb, i), PreconditionError);
        continue;
      }
      if (!parts_fit) continue;
      std::int64_t best = 0;
      for (const auto& s : sols) best = std::max(best, s[i]);
      EXPECT_EQ(coord_max(hb, i), best) << "seed " << seed << " coordinate " << i;
      ++maxima_checked;
    }
  }
  EXPECT_GT(feasible_systems, 30u);
  EXPECT_GT(maxima_checked, 30u);
}

TEST(Hilbert, KnownBasis) {
  auto sys = parse_system("1 1 -1 | 0\n1 -2 0 | 1\n");
  auto hb = hilbert(sys);
  ASSERT_EQ(hb.hom.size(), 1u);
  ASSERT_EQ(hb.part.size(), 1u);
  EXPECT_EQ(hb.hom[0], (BigVec{2, 1, 3}));
  EXPECT_EQ(hb.part[0], (BigVec{1, 0, 1}));
  EXPECT_TRUE(coord_unbounded(hb, 1));
}

TEST(Hilbert, InfeasibleKeepsHomogeneousPart) {
  auto sys = parse_system("2 -2 | 1\n");
  auto hb = hilbert(sys);
  EXPECT_TRUE(hb.part.empty());
  ASSERT_EQ(hb.hom.size(), 1u);
  EXPECT_EQ(hb.hom[0], (BigVec{1, 1}));
  EXPECT_FALSE(feasible(sys));
  EXPECT_THROW(coord_max(hb, 0), PreconditionError);
}

TEST(Hilbert, HomogeneousSystemHasZeroParticular) {
  auto sys = parse_system("1 -1 0 | 0\n");
  auto hb = hilbert(sys);
  ASSERT_EQ(hb.part.size(), 1u);
  EXPECT_EQ(hb.part[0], (BigVec{0, 0, 0}));
  EXPECT_EQ(hb.hom.size(), 2u);
}

TEST(Hilbert, LargeCoefficientsStayExact) {
  auto sys = parse_system("1 -1000000000000 | 0\n");
  auto hb = hilbert(sys);
  ASSERT_EQ(hb.hom.size(), 1u);
  EXPECT_EQ(hb.hom[0][0], BigInt("1000000000000"));
}

TEST(Hilbert, BudgetIsReported) {
  auto sys = parse_system("3 5 -7 -11 2 | 1\n1 -1 1 -1 1 | 2\n");
  HilbertOptions tiny;
  tiny.node_budget = 5;
  EXPECT_THROW(hilbert(sys, tiny), ResourceExhausted);
}

TEST(Hilbert, PositiveSupport) {
  auto sys = parse_system("1 -1 0 | 0\n0 0 1 | 2\n");
  auto hb = hilbert(sys);
  auto z = positive_support_solution(hb, {0, 1, 2});
  ASSERT_TRUE(z);
  EXPECT_TRUE(sys.satisfied_by(*z));
  EXPECT_GT((*z)[0], 0);
  auto none = parse_system("1 1 | 0\n");
  EXPECT_FALSE(positive_support_solution(hilbert(none), {0}));
}

TEST(Hilbert, ParseErrors) {
  EXPECT_THROW(parse_system("1 2 3\n"), ParseError);
  EXPECT_THROW(parse_system("1 2 | 3\n1 | 0\n"), ParseError);
  EXPECT_THROW(parse_system("1 x | 0\n"), ParseError);
  EXPECT_THROW(parse_system("# nothing\n"), ParseError);
}

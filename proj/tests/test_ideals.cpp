#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"

using namespace vasreach;

namespace {

// One counter, a = +1, b = -1.
const Vas kVas(1, {{"a", {1}}, {"b", {-1}}});

std::vector<Step> alphabet() {
  std::vector<Step> out;
  for (std::int64_t u = 0; u <= 3; ++u) out.push_back(Step{Config{u}, 0, Config{u + 1}});
  for (std::int64_t u = 1; u <= 3; ++u) out.push_back(Step{Config{u}, 1, Config{u - 1}});
  return out;
}

PartialTransition random_pt(std::mt19937_64& rng) {
  for (;;) {
    std::size_t a = rng() % 2;
    std::int64_t u = static_cast<std::int64_t>(rng() % 4);
    OmegaVec src{u == 3 ? omega : u};
    auto t = make_partial(src, a, kVas);
    if (is_partial_transition(t, kVas)) return t;
  }
}

Atom random_atom(std::mt19937_64& rng) {
  if (rng() % 2) return Single{random_pt(rng)};
  DownSet s;
  for (std::size_t k = rng() % 3; k > 0; --k) s.insert(random_pt(rng));
  return Star{s};
}

Product random_product(std::mt19937_64& rng, std::size_t max_len) {
  Product p;
  for (std::size_t k = rng() % (max_len + 1); k > 0; --k) p.push_back(random_atom(rng));
  return p;
}

PartialTransition pt(std::int64_t u, std::size_t a) {
  return make_partial(OmegaVec{u}, a, kVas);
}

}  // namespace

TEST(CuVec, ExactOnSmallBoxes) {
  const std::int64_t W = 5;  // values standing in for omega
  std::vector<std::int64_t> vals{0, 1, 2, omega};
  for (auto v0 : vals)
    for (auto v1 : vals)
      for (std::int64_t x0 = 0; x0 <= 3; ++x0)
        for (std::int64_t x1 = 0; x1 <= 3; ++x1) {
          OmegaVec v{v0, v1};
          Config x{x0, x1};
          auto parts = cu_vec(v, x);
          for (std::size_t k = 0; k < parts.size(); ++k)
            for (std::size_t l = 0; l < parts.size(); ++l)
              if (k != l) {
                EXPECT_FALSE(omega_leq(parts[k], parts[l]));
              }
          for (std::int64_t c0 = 0; c0 <= W; ++c0)
            for (std::int64_t c1 = 0; c1 <= W; ++c1) {
              Config c{c0, c1};
              bool expect = config_leq(c, v) && !config_leq(x, c);
              bool got = std::any_of(parts.begin(), parts.end(), [&](const OmegaVec& p) { return config_leq(c, p); });
              EXPECT_EQ(got, expect) << to_string(v) << " " << to_string(x) << " " << to_string(c);
            }
        }
}

TEST(DownSet, KeepsAnAntichain) {
  DownSet s;
  EXPECT_TRUE(s.insert(pt(1, 0)));
  EXPECT_FALSE(s.insert(pt(0, 0)));
  EXPECT_TRUE(s.insert(pt(omega, 0)));
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.insert(pt(2, 1)));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(Step{Config{7}, 0, Config{8}}));
  EXPECT_FALSE(s.contains(Step{Config{3}, 1, Config{2}}));
}

TEST(Product, MembershipMatchesRegex) {
  std::mt19937_64 rng(11);
  brute::ProductRegex rx(alphabet());
  auto words = rx.words(4);
  for (int t = 0; t < 150; ++t) {
    auto p = random_product(rng, 4);
    auto re = rx.compile(p);
    for (const auto& w : words) ASSERT_EQ(word_in_product(w, p), rx.member(w, re));
  }
}

TEST(Product, InclusionIsSound) {
  std::mt19937_64 rng(12);
  brute::ProductRegex rx(alphabet());
  auto words = rx.words(3);
  std::size_t positives = 0;
  for (int t = 0; t < 400; ++t) {
    auto p1 = random_product(rng, 3), p2 = random_product(rng, 3);
    EXPECT_TRUE(product_leq(p1, p1));
    if (!product_leq(p1, p2)) continue;
    ++positives;
    auto r1 = rx.compile(p1), r2 = rx.compile(p2);
    for (const auto& w : words)
      if (rx.member(w, r1)) {
        ASSERT_TRUE(rx.member(w, r2));
      }
  }
  EXPECT_GT(positives, 20u);
}

TEST(Product, InclusionFindsKnownCases) {
  Atom ab = Star{DownSet{pt(omega, 0), pt(omega, 1)}};
  Atom b = Star{DownSet{pt(omega, 1)}};
  Atom a1 = Single{pt(1, 0)};
  EXPECT_TRUE(product_leq({a1, b}, {ab}));
  EXPECT_FALSE(product_leq({ab}, {a1, b}));
  EXPECT_TRUE(product_leq({b, a1}, {b, Single{pt(2, 0)}, b}));
  EXPECT_FALSE(product_leq({a1, a1}, {a1}));
  EXPECT_TRUE(product_leq({Star{}}, {}));
}

TEST(Product, ReductionPreservesDenotation) {
  std::mt19937_64 rng(13);
  brute::ProductRegex rx(alphabet());
  auto words = rx.words(3);
  for (int t = 0; t < 200; ++t) {
    auto p = random_product(rng, 5);
    auto q = reduce_product(p);
    EXPECT_LE(q.size(), p.size());
    EXPECT_TRUE(product_leq(p, q));
    EXPECT_TRUE(product_leq(q, p));
    auto rp = rx.compile(p), rq = rx.compile(q);
    for (const auto& w : words) ASSERT_EQ(rx.member(w, rp), rx.member(w, rq));
  }
}

TEST(Product, StarAbsorbsSmallerStar) {
  Atom ab = Star{DownSet{pt(omega, 0), pt(omega, 1)}};
  Atom b = Star{DownSet{pt(omega, 1)}};
  Product p{ab, b}, q{ab};
  EXPECT_TRUE(product_leq(p, q));
  EXPECT_TRUE(product_leq(q, p));
  auto r = reduce_product(p);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_TRUE(atom_equal(r[0], ab));
}

TEST(Product, MembershipIsDownwardClosed) {
  std::mt19937_64 rng(14);
  auto letters = alphabet();
  std::size_t checked = 0;
  for (int t = 0; t < 300; ++t) {
    auto p = random_product(rng, 4);
    std::vector<Step> big;
    for (std::size_t k = rng() % 6; k > 0; --k) big.push_back(letters[rng() % letters.size()]);
    if (!word_in_product(big, p)) continue;
    // Random subword with each letter lowered where the action allows.
    std::vector<Step> small;
    for (const auto& x : big) {
      if (rng() % 3 == 0) continue;
      Step y = x;
      std::int64_t lo = x.action == 1 ? 1 : 0;
      if (y.src[0] > lo && rng() % 2) {
        y.src[0] -= 1;
        y.dst[0] -= 1;
      }
      small.push_back(y);
    }
    ASSERT_TRUE(brute::word_embeds(small, big));
    EXPECT_TRUE(word_in_product(small, p));
    ++checked;
  }
  EXPECT_GT(checked, 50u);
}

TEST(PrerunIdeal, SamplesStayInside) {
  PrerunIdealRep ideal{OmegaVec{2}, {Star{DownSet{pt(omega, 0)}}, Single{pt(2, 1)}}, OmegaVec{omega}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto r = sample_prerun(ideal, kVas, 5, seed);
    EXPECT_TRUE(prerun_ideal_contains(ideal, r));
    EXPECT_LE(r.word.size(), 5u);
  }
  EXPECT_THROW(prerun_ideal_contains(ideal, Prerun{Config{0, 0}, {}, Config{0}}), DimensionMismatch);
}

#include "avasskit/machine.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "avasskit/errors.hpp"
#include "avasskit/frontend.hpp"
#include "corpus.hpp"

using namespace avasskit;

namespace {

Machine m1() { return parseMachine(testcorpus::read("m1.cm")); }

Configuration at(std::size_t state, std::vector<long> counters) {
  return {state, {counters.begin(), counters.end()}};
}

Machine affine1(std::vector<std::pair<long, long>> maps) {
  Machine m;
  m.name = "t";
  m.addState("q");
  m.initialState = 0;
  for (auto [a, b] : maps) {
    m.transitions.push_back({0, 0, AffineMap1{a, b, std::nullopt}});
  }
  return m;
}

}  // namespace

TEST(Classify, M1IsAvassButNotVass) {
  Classification c = classify(m1());
  EXPECT_TRUE(c.isAVASS);
  EXPECT_FALSE(c.isVASS);
  EXPECT_FALSE(c.isPositiveAVASS);
  EXPECT_TRUE(c.isFunctionalSyntactically);
}

TEST(Classify, UnitSlopesAreVass) {
  Classification c = classify(affine1({{1, 3}, {1, -2}, {1, 0}}));
  EXPECT_TRUE(c.isVASS);
  EXPECT_TRUE(c.isPositiveAVASS);
  EXPECT_FALSE(c.isTotallyPositiveAVASS);
}

TEST(Classify, DoublingIsTotallyPositive) {
  Machine m;
  m.dim = 2;
  m.flavor = Flavor::AffineD;
  m.addState("q");
  m.transitions.push_back({0, 0, AffineMapD{{{2, 0}, {0, 2}}, {1, 1}}});
  Classification c = classify(m);
  EXPECT_TRUE(c.isTotallyPositiveAVASS);
  EXPECT_FALSE(c.isVASS);
}

TEST(Classify, MinskyWithZeroTest) {
  Classification c = classify(parseMachine(testcorpus::read("minsky2.cm")));
  EXPECT_TRUE(c.isMinsky);
  EXPECT_FALSE(c.isVASS);
  EXPECT_FALSE(c.isPositiveAVASS);
}

TEST(Classify, UserGuardsLeaveAvass) {
  Classification c = classify(parseMachine(testcorpus::read("vass1.cm")));
  EXPECT_TRUE(c.hasUserGuards);
  EXPECT_FALSE(c.isAVASS);
}

TEST(Classify, StableUnderReorderingAndRenaming) {
  std::mt19937 rng(31);
  for (const char* file : {"m1.cm", "doubling2.cm", "minsky2.cm", "vass1.cm", "half.cm"}) {
    Machine m = parseMachine(testcorpus::read(file));
    Classification base = classify(m);
    for (int round = 0; round < 20; ++round) {
      Machine shuffled = m;
      std::shuffle(shuffled.transitions.begin(), shuffled.transitions.end(), rng);
      for (auto& s : shuffled.states) {
        s += "_r" + std::to_string(round);
      }
      Classification c = classify(shuffled);
      EXPECT_EQ(c.isVASS, base.isVASS) << file;
      EXPECT_EQ(c.isAVASS, base.isAVASS) << file;
      EXPECT_EQ(c.isPositiveAVASS, base.isPositiveAVASS) << file;
      EXPECT_EQ(c.isTotallyPositiveAVASS, base.isTotallyPositiveAVASS) << file;
      EXPECT_EQ(c.isMinsky, base.isMinsky) << file;
      EXPECT_EQ(c.isFunctionalSyntactically, base.isFunctionalSyntactically) << file;
    }
  }
}

TEST(Apply, M1Steps) {
  Machine m = m1();
  EXPECT_EQ(apply(m, m.transitions[1], at(0, {0})), at(0, {19}));
  EXPECT_FALSE(apply(m, m.transitions[0], at(0, {10})));
  Machine id = affine1({{1, 0}});
  EXPECT_EQ(apply(id, id.transitions[0], at(0, {5})), at(0, {5}));
}

TEST(Apply, Errors) {
  Machine m = m1();
  EXPECT_THROW(apply(m, m.transitions[2], at(0, {1})), InputError);
  EXPECT_THROW(apply(m, m.transitions[0], at(0, {1, 2})), InputError);
  Machine half = parseMachine(testcorpus::read("half.cm"));
  EXPECT_THROW(apply(half, half.transitions[0], at(0, {4})), InputError);
}

TEST(Apply, DefinedIffImageIsNatural) {
  std::mt19937 rng(32);
  auto uniform = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  for (int i = 0; i < 2000; ++i) {
    const long a = uniform(-4, 4);
    const long b = uniform(-20, 20);
    const long n = uniform(0, 30);
    Machine m = affine1({{a, b}});
    auto next = apply(m, m.transitions[0], at(0, {n}));
    ASSERT_EQ(next.has_value(), a * n + b >= 0);
    if (next) {
      ASSERT_EQ(next->counters[0], a * n + b);
    }
  }
}

TEST(Apply, NeverNegativeForMinskyAndMatrices) {
  std::mt19937 rng(33);
  auto uniform = [&](long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  };
  for (int i = 0; i < 2000; ++i) {
    Machine m;
    m.dim = 2;
    m.addState("q");
    if (i % 2 == 0) {
      m.flavor = Flavor::Minsky;
      m.transitions.push_back(
          {0, 0, MinskyOp::translate({uniform(-3, 3), uniform(-3, 3)}, {0, 0})});
    } else {
      m.flavor = Flavor::AffineD;
      m.transitions.push_back({0, 0, AffineMapD{{{uniform(-2, 2), uniform(-2, 2)},
                                                  {uniform(-2, 2), uniform(-2, 2)}},
                                                 {uniform(-5, 5), uniform(-5, 5)}}});
    }
    auto next = apply(m, m.transitions[0], at(0, {uniform(0, 6), uniform(0, 6)}));
    if (next) {
      for (const Integer& v : next->counters) {
        ASSERT_GE(v, 0);
      }
    }
  }
}

TEST(Minsky, Semantics) {
  MinskyOp dec = MinskyOp::dec(2, 0);
  EXPECT_TRUE(dec.hasMinimalGuard());
  EXPECT_FALSE(dec.apply({0, 4}));
  EXPECT_EQ(*dec.apply({2, 4}), (std::vector<Integer>{1, 4}));
  MinskyOp zero = MinskyOp::zeroTest(2, 1);
  EXPECT_TRUE(zero.apply({3, 0}));
  EXPECT_FALSE(zero.apply({3, 1}));
  MinskyOp guarded = MinskyOp::translate({0, -1}, {0, 2});
  EXPECT_FALSE(guarded.hasMinimalGuard());
  EXPECT_FALSE(guarded.apply({0, 1}));
  EXPECT_TRUE(guarded.apply({0, 2}));
}

TEST(NegativeTransitions, M1HasOne) {
  Machine m = m1();
  EXPECT_EQ(negativeTransitions(m), (std::vector<std::size_t>{1}));
  EXPECT_EQ(describe(m, 1), "(q1, x' = -1x + 19, q1)");
}

TEST(NegativeTransitions, VassAndEmptyDomains) {
  EXPECT_TRUE(negativeTransitions(affine1({{1, 2}, {1, -1}})).empty());
  EXPECT_TRUE(negativeTransitions(affine1({{-1, -5}})).empty());
  EXPECT_EQ(negativeTransitions(affine1({{-1, 0}})).size(), 1u);
  Machine d2 = parseMachine(testcorpus::read("doubling2.cm"));
  EXPECT_THROW(negativeTransitions(d2), InputError);
}

TEST(AsAffine, ZeroTestReadsAsNegatedCoordinate) {
  Machine m = parseMachine(testcorpus::read("minsky2.cm"));
  auto zero = asAffine(m, m.transitions[1]);
  ASSERT_TRUE(zero);
  EXPECT_EQ(zero->matrix, (std::vector<std::vector<Integer>>{{-1, 0}, {0, 1}}));
  auto guarded = asAffine(m, m.transitions[3]);
  EXPECT_FALSE(guarded);
}

TEST(Machine, ValidateRejectsBadShapes) {
  Machine m = m1();
  m.transitions.push_back({0, 7, AffineMap1{}});
  EXPECT_THROW(m.validate(), InputError);
  Machine mixed = m1();
  mixed.transitions.push_back({0, 0, MinskyOp::nop(1)});
  EXPECT_THROW(mixed.validate(), InputError);
  EXPECT_EQ(m1().freshStateName("q1"), "q1_1");
}

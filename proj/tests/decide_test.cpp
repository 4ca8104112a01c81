#include "avasskit/decide.hpp"

#include <gtest/gtest.h>

#include "avasskit/errors.hpp"
#include "avasskit/frontend.hpp"
#include "avasskit/simulator.hpp"
#include "corpus.hpp"
#include "random_machine.hpp"

using namespace avasskit;

namespace {

Machine load(const char* name) { return parseMachine(testcorpus::read(name)); }

Configuration at(std::size_t state, long n) { return {state, {Integer(n)}}; }

}  // namespace

TEST(Reachable, M1) {
  Machine m = load("m1.cm");
  EXPECT_TRUE(reachable(m, at(0, 0), at(0, 19)));
  EXPECT_FALSE(reachable(m, at(0, 9), at(0, 19)));
  EXPECT_TRUE(reachable(m, at(1, 7), at(1, 7)));
  SimBudget budget;
  budget.maxValue = 100;
  EXPECT_FALSE(findPath(m, at(0, 9), Goal{at(0, 19), false}, budget));
}

TEST(Coverable, Examples) {
  Machine m1 = load("m1.cm");
  EXPECT_FALSE(coverable(m1, at(0, 10), at(0, 19)));
  EXPECT_TRUE(coverable(m1, at(1, 8), at(1, 7)));
  Machine m2 = load("m2.cm");
  EXPECT_TRUE(coverable(m2, at(0, 1), at(0, 19)));
  auto run = findPath(m2, at(0, 1), Goal{at(0, 19), true});
  ASSERT_TRUE(run);
  EXPECT_TRUE(replays(m2, *run));
}

TEST(Coverable, ReductionAgreesOnM1AndM2) {
  for (const char* file : {"m1.cm", "m2.cm"}) {
    Machine m = load(file);
    for (long target : {19L, 0L}) {
      for (long n = 0; n <= 50; ++n) {
        EXPECT_EQ(coverable(m, at(0, n), at(0, target)),
                  coverableViaReduction(m, at(0, n), at(0, target)))
            << file << " " << n << " " << target;
      }
    }
  }
}

TEST(Coverable, ReductionRenamesFreshStates) {
  Machine m = parseMachine("machine t\nstate q3\nstate q4\ntrans q3 -> q4 : x' = 1x + 2\n");
  CoverReduction r = coverReduction(m, at(1, 5));
  EXPECT_EQ(r.machine.states[r.sub], "q3_1");
  EXPECT_EQ(r.machine.states[r.zero], "q4_1");
  EXPECT_TRUE(coverableViaReduction(m, at(0, 4), at(1, 5)));
  EXPECT_FALSE(coverableViaReduction(m, at(0, 2), at(1, 5)));
}

TEST(Coverable, RandomMachinesAgreeAcrossRoutesAndOracle) {
  testgen::RandomAvass gen(71);
  SimBudget budget;
  budget.maxValue = 2000;
  for (int i = 0; i < 60; ++i) {
    Machine m = gen.next();
    Configuration target = at(gen.uniform(0, m.states.size() - 1), gen.uniform(0, 15));
    PreStarResult up = computePreStarUpward(m, target);
    for (long n = 0; n <= 30; ++n) {
      const bool direct = up.sets[0].contains(n);
      ASSERT_EQ(direct, coverable(m, at(0, n), target));
      ASSERT_EQ(direct, coverableViaReduction(m, at(0, n), target));
      auto run = findPath(m, at(0, n), Goal{target, true}, budget);
      if (run) {
        ASSERT_TRUE(direct);
      }
      if (reachable(m, at(0, n), target)) {
        ASSERT_TRUE(direct);
      }
    }
  }
}

TEST(ControlState, Examples) {
  Machine m = load("m1.cm");
  EXPECT_TRUE(controlStateReachable(m, at(0, 13), 1));
  EXPECT_TRUE(controlStateReachable(m, at(0, 0), 1));
  Machine lonely = parseMachine("machine t\nstate a\nstate b\n");
  EXPECT_FALSE(controlStateReachable(lonely, at(0, 3), 1));
}

TEST(Wsts, M1AndM2) {
  Machine m1 = load("m1.cm");
  TransitionVerdict v = isWellStructured(m1);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.transition);
  EXPECT_EQ(describe(m1, *v.transition), "(q1, x' = -1x + 19, q1)");
  ASSERT_TRUE(v.counterexample);
  EXPECT_EQ(*v.counterexample, 1);
  SimBudget budget;
  budget.maxValue = 100;
  Exploration post = postStar(m1, at(0, 1), budget);
  for (const auto& c : post.configs) {
    EXPECT_LE(c.counters[0], 18);
  }
  EXPECT_TRUE(isWellStructured(load("m2.cm")).holds);
}

TEST(Wsts, VassNeedsNoPreStar) {
  TransitionVerdict v = isWellStructured(
      parseMachine("machine t\nstate a\nstate b\ntrans a -> b : x' = 1x + -4\n"
                   "trans b -> a : x' = 1x + 7\n"));
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.preStarRuns, 0u);
}

TEST(Wsts, RejectsGuardsAndFlavors) {
  EXPECT_THROW(isWellStructured(load("vass1.cm")), InputError);
  EXPECT_THROW(isWellStructured(load("doubling2.cm")), InputError);
}

TEST(Wsts, YesImpliesSampledMonotony) {
  testgen::RandomAvass gen(72);
  SimBudget budget;
  budget.maxValue = 3000;
  budget.maxConfigs = 200000;
  int checked = 0;
  for (int i = 0; i < 300 && checked < 1000; ++i) {
    Machine m = gen.next();
    if (!isWellStructured(m).holds) {
      continue;
    }
    for (int k = 0; k < 20; ++k, ++checked) {
      const std::size_t ti = gen.uniform(0, m.transitions.size() - 1);
      const Transition& t = m.transitions[ti];
      const long s = gen.uniform(0, 40);
      auto next = apply(m, t, at(t.source, s));
      if (!next) {
        continue;
      }
      const long bigger = s + gen.uniform(0, 40);
      auto run = findPath(m, at(t.source, bigger), Goal{*next, true}, budget);
      ASSERT_TRUE(run) << serializeMachine(m) << " from " << bigger;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(StrongMonotony, Examples) {
  Machine m1 = load("m1.cm");
  TransitionVerdict v = isStronglyMonotone(m1);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.transition);
  EXPECT_EQ(*v.transition, 1u);
  EXPECT_TRUE(isStronglyMonotone(
                  parseMachine("machine t\nstate q\ntrans q -> q : x' = -1x + -5\n"))
                  .holds);
  EXPECT_FALSE(isStronglyMonotone(load("zero_test2.cm")).holds);
  EXPECT_TRUE(isStronglyMonotone(load("doubling2.cm")).holds);
  EXPECT_FALSE(isStronglyMonotone(load("minsky2.cm")).holds);
  EXPECT_THROW(isStronglyMonotone(load("half.cm")), InputError);
}

TEST(StrongMonotony, YesImpliesOneStepDomination) {
  testgen::RandomAvass gen(73);
  int checked = 0;
  for (int i = 0; i < 2000 && checked < 1000; ++i) {
    Machine m = gen.next();
    if (!isStronglyMonotone(m).holds) {
      continue;
    }
    EXPECT_TRUE(isWellStructured(m).holds) << serializeMachine(m);
    const Transition& t = m.transitions[gen.uniform(0, m.transitions.size() - 1)];
    const long s = gen.uniform(0, 50);
    auto next = apply(m, t, at(t.source, s));
    if (!next) {
      continue;
    }
    ++checked;
    auto bigger = apply(m, t, at(t.source, s + gen.uniform(0, 50)));
    ASSERT_TRUE(bigger);
    ASSERT_GE(bigger->counters[0], next->counters[0]);
  }
  EXPECT_GT(checked, 100);
}

TEST(Functional, MachineLevel) {
  auto verdicts = isFunctional(load("half.cm"));
  ASSERT_EQ(verdicts.size(), 1u);
  EXPECT_TRUE(verdicts[0].functional);
  Machine loose = parseMachine("machine t\nstate q\ntrans q -> q : { x <= x' }\n");
  EXPECT_FALSE(isFunctional(loose)[0].functional);
  for (const auto& v : isFunctional(load("m1.cm"))) {
    EXPECT_TRUE(v.functional);
  }
}

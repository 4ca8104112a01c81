#include "avasskit/omega.hpp"

#include <gtest/gtest.h>

#include "avasskit/errors.hpp"
#include "avasskit/frontend.hpp"
#include "corpus.hpp"
#include "oracles.hpp"
#include "random_machine.hpp"

using namespace avasskit;

namespace {

std::vector<Integer> vec(std::initializer_list<long> xs) {
  return std::vector<Integer>(xs.begin(), xs.end());
}

const Machine& doublingMachine() {
  static const Machine m = parseMachine(
      "machine d\ndim 2\nstate q init 0,0\ntrans q -> q : A = [[2,0],[0,1]] ; b = [1,1]\n");
  return m;
}

}  // namespace

TEST(OmegaVector, Abstract) {
  EXPECT_EQ(abstract(vec({5, 0}), 1).str(), "(ω,0)");
  EXPECT_EQ(abstract(vec({3, 4}), 3).str(), "(3,ω)");
  OmegaVector exact = abstract(vec({2, 0, 4}), 4);
  EXPECT_FALSE(exact.hasOmega());
  EXPECT_EQ(exact.entries[2], Integer(4));
}

TEST(OmegaVector, ArithmeticRules) {
  const OmegaVector v = abstract(vec({9, 2}), 3);
  // 0·ω = 0.
  EXPECT_EQ(applyOmega(AffineMapD{{{0, 1}, {0, 0}}, vec({0, 1})}, v).str(), "(2,1)");
  // k·ω = ω and ω + k = ω.
  EXPECT_EQ(applyOmega(AffineMapD{{{1, 0}, {2, 0}}, vec({0, 0})}, v).str(), "(ω,ω)");
  // Finite sums past N collapse.
  EXPECT_EQ(applyOmega(AffineMapD{{{0, 1}, {0, 2}}, vec({1, 0})}, v).str(), "(3,ω)");
  EXPECT_THROW(applyOmega(AffineMapD{{{-1, 0}, {0, 1}}, vec({0, 0})}, v), InputError);
}

TEST(OmegaReach, Examples) {
  const Machine& m = doublingMachine();
  const Configuration origin{0, vec({0, 0})};
  EXPECT_TRUE(reachableTotallyPositive(m, origin, {0, vec({1, 1})}));
  EXPECT_FALSE(reachableTotallyPositive(m, origin, {0, vec({2, 1})}));
  SCOPED_TRACE("forward values are (2^k - 1, k)");
  for (int k = 0; k <= 10; ++k) {
    Configuration c{0, {(Integer(1) << k) - 1, Integer(k)}};
    EXPECT_TRUE(reachableTotallyPositive(m, origin, c));
  }
  Machine reset = parseMachine(
      "machine r\ndim 2\nstate q\ntrans q -> q : A = [[0,0],[0,0]] ; b = [0,0]\n");
  EXPECT_TRUE(reachableTotallyPositive(reset, {0, vec({7, 9})}, {0, vec({0, 0})}));
  EXPECT_TRUE(reachableTotallyPositive(reset, {0, vec({7, 9})}, {0, vec({7, 9})}));
  EXPECT_FALSE(reachableTotallyPositive(reset, {0, vec({7, 9})}, {0, vec({0, 9})}));
}

TEST(OmegaReach, RejectsOtherMachines) {
  EXPECT_THROW(reachableTotallyPositive(parseMachine(testcorpus::read("m1.cm")),
                                        {0, vec({0})}, {0, vec({19})}),
               InputError);
  EXPECT_THROW(reachableTotallyPositive(parseMachine(testcorpus::read("zero_test2.cm")),
                                        {0, vec({0, 0})}, {0, vec({0, 0})}),
               InputError);
}

TEST(OmegaReach, OneDimensionalAndMinskyFlavors) {
  Machine grow = parseMachine("machine g\nstate a\nstate b\ntrans a -> b : x' = 3x + 2\n");
  EXPECT_TRUE(reachableTotallyPositive(grow, {0, vec({4})}, {1, vec({14})}));
  EXPECT_FALSE(reachableTotallyPositive(grow, {0, vec({4})}, {1, vec({13})}));
  Machine inc = parseMachine("machine i\ndim 2\nstate a\ntrans a -> a : inc 1\n");
  EXPECT_TRUE(reachableTotallyPositive(inc, {0, vec({0, 3})}, {0, vec({5, 3})}));
  EXPECT_FALSE(reachableTotallyPositive(inc, {0, vec({6, 3})}, {0, vec({5, 3})}));
}

TEST(OmegaReach, CommutesWithTransitions) {
  testgen::RandomTotallyPositive gen(81);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t dim = gen.uniform(1, 3);
    AffineMapD f = gen.map(dim);
    std::vector<Integer> v;
    for (std::size_t k = 0; k < dim; ++k) {
      v.push_back(gen.uniform(0, 12));
    }
    const Integer cutoff = gen.uniform(1, 6);
    auto image = f.apply(v);
    ASSERT_TRUE(image);
    ASSERT_EQ(abstract(*image, cutoff), applyOmega(f, abstract(v, cutoff)));
  }
}

TEST(OmegaReach, AgreesWithConcreteSearch) {
  testgen::RandomTotallyPositive gen(82);
  int yes = 0, confirmedByOracle = 0;
  for (int i = 0; i < 500; ++i) {
    Machine m = gen.next();
    Configuration from{static_cast<std::size_t>(gen.uniform(0, m.states.size() - 1)), {}};
    Configuration to{static_cast<std::size_t>(gen.uniform(0, m.states.size() - 1)), {}};
    Integer cutoff = 1;
    for (std::size_t k = 0; k < m.dim; ++k) {
      from.counters.push_back(gen.uniform(0, 4));
      to.counters.push_back(gen.uniform(0, 4));
      cutoff = std::max(cutoff, to.counters.back());
    }
    auto witness = omegaWitness(m, from, to);
    const bool oracle = oracle::reachWithin(m, from, to, 10 * (cutoff + 1));
    if (oracle) {
      ASSERT_TRUE(witness) << serializeMachine(m);
      ++confirmedByOracle;
    }
    if (witness) {
      ++yes;
      ASSERT_EQ(oracle::replay(m, from, *witness), to) << serializeMachine(m);
    }
  }
  EXPECT_GT(yes, 50);
  EXPECT_GT(confirmedByOracle, 50);
}

#include "avasskit/formula.hpp"

#include <gtest/gtest.h>

#include "avasskit/errors.hpp"
#include "random_formula.hpp"

using namespace avasskit;

namespace {

Atom atom(std::vector<long> coeffs, Rel rel, long bound, long modulus = 1) {
  Atom a;
  for (long c : coeffs) {
    a.coeffs.emplace_back(c);
  }
  a.rel = rel;
  a.bound = bound;
  a.modulus = modulus;
  return a;
}

// Independent arithmetic for one atom, written against long.
bool oracleAtom(const Atom& a, const std::vector<long>& env) {
  long t = 0;
  for (std::size_t i = 0; i < env.size(); ++i) {
    t += a.coeffs[i].convert_to<long>() * env[i];
  }
  const long b = a.bound.convert_to<long>();
  const long m = a.modulus.convert_to<long>();
  const auto congruent = [&] { return (((t - b) % m) + m) % m == 0; };
  switch (a.rel) {
    case Rel::Le: return t <= b;
    case Rel::Lt: return t < b;
    case Rel::Eq: return t == b;
    case Rel::Ne: return t != b;
    case Rel::Ge: return t >= b;
    case Rel::Gt: return t > b;
    case Rel::Cong: return congruent();
    case Rel::NotCong: return !congruent();
  }
  return false;
}

bool oracle(const Formula& f, const std::vector<long>& env) {
  switch (f.kind) {
    case Formula::Kind::Const: return f.value;
    case Formula::Kind::Atom: return oracleAtom(f.atom, env);
    case Formula::Kind::And:
      for (const auto& c : f.children) {
        if (!oracle(c, env)) return false;
      }
      return true;
    case Formula::Kind::Or:
      for (const auto& c : f.children) {
        if (oracle(c, env)) return true;
      }
      return false;
    case Formula::Kind::Not: return !oracle(f.children.front(), env);
  }
  return false;
}

std::vector<Integer> big(const std::vector<long>& env) {
  return {env.begin(), env.end()};
}

}  // namespace

TEST(Formula, EvaluateExamples) {
  QFFormula le{{"x", "y"}, Formula::of(atom({1, -1}, Rel::Le, 0))};
  EXPECT_TRUE(le.evaluate(std::map<std::string, Integer>{{"x", 3}, {"y", 5}}));
  QFFormula cong{{"x", "y"}, Formula::of(atom({1, -1}, Rel::Cong, 0, 2))};
  EXPECT_TRUE(cong.evaluate(std::map<std::string, Integer>{{"x", 3}, {"y", 5}}));
  QFFormula half{{"x", "x'"}, Formula::of(atom({-1, 2}, Rel::Eq, 0))};
  EXPECT_FALSE(half.evaluate(std::map<std::string, Integer>{{"x", 5}, {"x'", 2}}));
  EXPECT_THROW(half.evaluate(std::map<std::string, Integer>{{"x", 5}}), InputError);
}

TEST(Formula, NegatedAtomIsComplement) {
  testgen::RandomFormulas gen(2, 11);
  for (int i = 0; i < 2000; ++i) {
    Atom a = gen.atom();
    Atom n = a.negated();
    for (long x = 0; x < 6; ++x) {
      for (long y = 0; y < 6; ++y) {
        EXPECT_NE(a.holds(big({x, y})), n.holds(big({x, y})));
      }
    }
  }
}

TEST(Formula, EvaluateAgreesWithArithmeticOracle) {
  testgen::RandomFormulas gen(3, 12);
  for (int i = 0; i < 100000; ++i) {
    Formula f = gen.formula(3);
    std::vector<long> env{gen.uniform(0, 20), gen.uniform(0, 20), gen.uniform(0, 20)};
    ASSERT_EQ(evaluate(f, big(env)), oracle(f, env));
  }
}

TEST(Formula, NnfAndDnfPreserveSemantics) {
  testgen::RandomFormulas gen(2, 13);
  for (int i = 0; i < 500; ++i) {
    Formula f = gen.formula(4);
    Formula nnf = toNnf(f, true);
    std::vector<Conjunction> dnf = toDnf(f);
    for (long x = 0; x < 8; ++x) {
      for (long y = 0; y < 8; ++y) {
        const bool expected = oracle(f, {x, y});
        ASSERT_EQ(evaluate(nnf, big({x, y})), expected);
        bool any = false;
        for (const auto& clause : dnf) {
          bool all = true;
          for (const Atom& a : clause) {
            EXPECT_NE(a.rel, Rel::Ne);
            all = all && oracleAtom(a, {x, y});
          }
          any = any || all;
        }
        ASSERT_EQ(any, expected);
      }
    }
  }
}

TEST(Formula, DnfBudget) {
  std::vector<Formula> parts;
  for (int i = 0; i < 14; ++i) {
    parts.push_back(Formula::disj({Formula::of(atom({1}, Rel::Le, i)),
                                   Formula::of(atom({1}, Rel::Ge, i + 3))}));
  }
  EXPECT_THROW(toDnf(Formula::conj(parts), 4096), BudgetExceeded);
}

TEST(Formula, RemapMovesCoefficients) {
  Atom a = atom({2, -1}, Rel::Le, 4);
  Atom r = remap(a, {2, 0}, 3);
  EXPECT_EQ(r.coeffs, (std::vector<Integer>{-1, 0, 2}));
  EXPECT_EQ(r.bound, 4);
}

TEST(Formula, Rendering) {
  std::vector<std::string> vars{"x", "y"};
  EXPECT_EQ(str(atom({1, -1}, Rel::Le, 0), vars), "x - y <= 0");
  EXPECT_EQ(str(atom({1, -1}, Rel::Cong, 0, 2), vars), "x - y = 0 mod 2");
  Formula f = Formula::disj(
      {Formula::conj({Formula::of(atom({1, 0}, Rel::Ge, 1)),
                      Formula::of(atom({0, 1}, Rel::Le, 3))}),
       Formula::negation(Formula::of(atom({1, -1}, Rel::Eq, 0)))});
  const std::string text = str(f, vars);
  EXPECT_NE(text.find(" or "), std::string::npos);
  EXPECT_NE(text.find("not"), std::string::npos);
}

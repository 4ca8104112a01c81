#include "avasskit/semiset.hpp"

#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "avasskit/errors.hpp"

using avasskit::Clause;
using avasskit::Integer;
using avasskit::SemilinearSet;

namespace {

Clause clause(long lo, std::optional<long> hi, long mod = 1, long res = 0) {
  std::optional<Integer> h;
  if (hi) {
    h = Integer(*hi);
  }
  return *Clause::make(lo, h, mod, res);
}

Clause from(long lo, long mod = 1, long res = 0) {
  return clause(lo, std::nullopt, mod, res);
}

// Brute-force oracle: membership straight from the clause definition.
bool oracleMember(const std::vector<Clause>& clauses, long n) {
  for (const Clause& c : clauses) {
    bool inRange = n >= c.lo() && (!c.hi() || n <= *c.hi());
    if (inRange && ((n - c.residue()) % c.modulus()) == 0) {
      return true;
    }
  }
  return false;
}

struct RandomSets {
  std::mt19937 rng{20240611};

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  }

  SemilinearSet next() {
    std::vector<Clause> clauses;
    const long count = uniform(0, 4);
    for (long i = 0; i < count; ++i) {
      long lo = uniform(0, 30);
      long mod = uniform(1, 6);
      long res = uniform(0, mod - 1);
      std::optional<Integer> hi;
      if (uniform(0, 1) == 1) {
        hi = Integer(lo + uniform(0, 40));
      }
      if (auto c = Clause::make(lo, hi, mod, res)) {
        clauses.push_back(*c);
      }
    }
    return SemilinearSet(clauses);
  }
};

long horizon(const SemilinearSet& a, const SemilinearSet& b) {
  const auto& fa = a.normalForm();
  const auto& fb = b.normalForm();
  long period = std::lcm(static_cast<long>(fa.period), static_cast<long>(fb.period));
  return 3 * period + 80;
}

}  // namespace

TEST(Clause, EmptyRangeResidueIntersectionIsDropped) {
  EXPECT_FALSE(Clause::make(4, Integer(5), 7, 2).has_value());
  EXPECT_TRUE(Clause::make(4, Integer(9), 7, 2).has_value());
  EXPECT_THROW(Clause::make(0, std::nullopt, 0, 0), avasskit::InputError);
}

TEST(Clause, BoundsAreTightenedToMembers) {
  Clause c = from(13, 3, 2);
  EXPECT_EQ(c.lo(), 14);
  EXPECT_EQ(c.str(), "[14..] mod 3 = 2");
  EXPECT_EQ(clause(3, 10, 4, 1).str(), "[5..9] mod 4 = 1");
}

TEST(SemilinearSet, MemberExamples) {
  SemilinearSet s{from(19, 3, 1)};
  EXPECT_TRUE(s.contains(19));
  EXPECT_FALSE(s.contains(20));
  EXPECT_FALSE(SemilinearSet::empty().contains(0));
}

TEST(SemilinearSet, BooleanOperationExamples) {
  SemilinearSet a{clause(0, 5)};
  SemilinearSet b{clause(3, 9)};
  EXPECT_TRUE(a.unite(b).contains(7));

  SemilinearSet evens{from(0, 2, 0)};
  SemilinearSet threes{from(0, 3, 0)};
  SemilinearSet both = evens.intersect(threes);
  EXPECT_TRUE(both.contains(6));
  EXPECT_FALSE(both.contains(4));
  for (long n = 0; n <= 100; ++n) {
    EXPECT_EQ(both.contains(n), n % 2 == 0 && n % 3 == 0) << n;
  }

  EXPECT_TRUE(SemilinearSet::naturals().complement().isEmpty());
}

TEST(SemilinearSet, EqualityAndInclusionExamples) {
  SemilinearSet all = SemilinearSet::naturals();
  SemilinearSet split{from(0, 2, 0), from(0, 2, 1)};
  EXPECT_TRUE(all.equals(split));
  EXPECT_TRUE(SemilinearSet{from(13, 3, 1)}.subsetOf(all));
  EXPECT_FALSE(all.subsetOf(SemilinearSet{from(13, 3, 1)}));
}

TEST(SemilinearSet, UpwardClosureExamples) {
  EXPECT_TRUE(SemilinearSet{clause(19, 19)}.upwardClosure().equals(
      SemilinearSet::atLeast(19)));
  EXPECT_TRUE(SemilinearSet::empty().upwardClosure().isEmpty());
  SemilinearSet up = SemilinearSet{from(13, 3, 1)}.upwardClosure();
  for (long n = 0; n <= 50; ++n) {
    EXPECT_EQ(up.contains(n), n >= 13) << n;
  }
  ASSERT_EQ(up.clauses().size(), 1u);
  EXPECT_EQ(up.str(), "[13..] mod 1 = 0");
}

TEST(SemilinearSet, IsFullNExamples) {
  EXPECT_TRUE(SemilinearSet::naturals().isFullN());
  EXPECT_FALSE(SemilinearSet{from(0, 2, 0)}.isFullN());
  EXPECT_TRUE((SemilinearSet{from(0, 2, 0), from(1, 2, 1), clause(0, 0)}).isFullN());
  EXPECT_FALSE((SemilinearSet{from(2, 2, 0), from(1, 2, 1)}).isFullN());
}

TEST(SemilinearSet, MinElementExamples) {
  EXPECT_FALSE(SemilinearSet::empty().minElement().has_value());
  EXPECT_EQ(*SemilinearSet{from(19, 3, 1)}.minElement(), 19);
  EXPECT_EQ(*SemilinearSet{from(13, 3, 2)}.minElement(), 14);
}

TEST(SemilinearSet, Rendering) {
  EXPECT_EQ(SemilinearSet::empty().str(), "empty");
  SemilinearSet s{from(13, 3, 1), clause(0, 0)};
  EXPECT_EQ(s.str(), "[13..] mod 3 = 1 ∪ [0..0] mod 1 = 0");
  nlohmann::json j = s;
  EXPECT_EQ(j.dump(),
            R"([{"hi":null,"lo":13,"mod":3,"res":1},{"hi":0,"lo":0,"mod":1,"res":0}])");
}

TEST(SemilinearSet, SimplifiedUsesCoarserPeriod) {
  // q2 component of Pre*(q1, 19) for M1, written redundantly.
  SemilinearSet raw{from(0, 3, 0), clause(19, 19), from(19, 3, 1), from(22, 3, 1),
                    from(32, 3, 2), clause(6, 12, 3, 0)};
  SemilinearSet s = raw.simplified();
  EXPECT_EQ(s.str(), "[0..] mod 3 = 0 ∪ [19..] mod 3 = 1 ∪ [32..] mod 3 = 2");
  EXPECT_TRUE(s.equals(raw));
}

TEST(SemilinearSetProperty, BooleanOperationsArePointwise) {
  RandomSets gen;
  for (int trial = 0; trial < 400; ++trial) {
    SemilinearSet a = gen.next();
    SemilinearSet b = gen.next();
    SemilinearSet u = a.unite(b);
    SemilinearSet i = a.intersect(b);
    SemilinearSet c = a.complement();
    const long end = horizon(a, b);
    for (long n = 0; n <= end; ++n) {
      bool inA = oracleMember(a.clauses(), n);
      bool inB = oracleMember(b.clauses(), n);
      ASSERT_EQ(u.contains(n), inA || inB) << a.str() << " | " << b.str() << " @" << n;
      ASSERT_EQ(i.contains(n), inA && inB) << a.str() << " & " << b.str() << " @" << n;
      ASSERT_EQ(c.contains(n), !inA) << a.str() << " @" << n;
    }
  }
}

TEST(SemilinearSetProperty, EqualityAgreesWithExhaustiveComparison) {
  RandomSets gen;
  for (int trial = 0; trial < 400; ++trial) {
    SemilinearSet a = gen.next();
    // Half the trials compare against a re-expression of the same set.
    SemilinearSet b = trial % 2 == 0 ? gen.next() : a.complement().complement();
    const auto& fa = a.normalForm();
    const auto& fb = b.normalForm();
    long period = std::lcm(static_cast<long>(fa.period), static_cast<long>(fb.period));
    long end = 10 * period + static_cast<long>(std::max(fa.threshold, fb.threshold));
    bool same = true;
    bool sub = true;
    for (long n = 0; n <= end; ++n) {
      bool inA = oracleMember(a.clauses(), n);
      bool inB = oracleMember(b.clauses(), n);
      same = same && inA == inB;
      sub = sub && (!inA || inB);
    }
    ASSERT_EQ(a.equals(b), same) << a.str() << " vs " << b.str();
    ASSERT_EQ(a.subsetOf(b), sub) << a.str() << " vs " << b.str();
  }
}

TEST(SemilinearSetProperty, UpwardClosureIsExtensiveAndIdempotent) {
  RandomSets gen;
  for (int trial = 0; trial < 300; ++trial) {
    SemilinearSet a = gen.next();
    SemilinearSet up = a.upwardClosure();
    EXPECT_TRUE(a.subsetOf(up));
    EXPECT_TRUE(up.upwardClosure().equals(up));
    EXPECT_LE(up.clauses().size(), 1u);
  }
}

TEST(SemilinearSetProperty, NormalFormPreservesMembership) {
  RandomSets gen;
  for (int trial = 0; trial < 300; ++trial) {
    SemilinearSet a = gen.next();
    const auto& form = a.normalForm();
    SemilinearSet rebuilt = a.simplified();
    const long end = static_cast<long>(form.threshold + 2 * form.period);
    for (long n = 0; n <= end; ++n) {
      bool expected = oracleMember(a.clauses(), n);
      ASSERT_EQ(form.contains(static_cast<std::size_t>(n)), expected);
      ASSERT_EQ(rebuilt.contains(n), expected) << a.str() << " -> " << rebuilt.str();
    }
  }
}

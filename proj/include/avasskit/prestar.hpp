#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "avasskit/machine.hpp"
#include "avasskit/semiset.hpp"

namespace avasskit {

struct PreStarOptions {
  std::size_t maxCycles = 100'000;
  std::size_t maxSweeps = 10'000;
  /// Largest number of values handled one by one inside a cycle
  /// acceleration.
  std::size_t maxExplicit = 10'000'000;
};

/// A simple cycle of a 1-dim affine machine, read from its root.
struct SimpleCycle {
  std::size_t root = 0;
  std::vector<std::size_t> transitions;
  /// Composition of the step maps, without guard.
  AffineMap1 meta;
  /// Values from which the whole cycle can be taken.
  Clause guard = Clause::atLeast(0);
};

/// {n : alpha * n + beta in clause}, or nullopt when empty.
std::optional<Clause> preimageClause(const Integer& alpha, const Integer& beta,
                                     const Clause& clause);

/// Domain of a 1-dim map as a clause, or nullopt when empty.
std::optional<Clause> domainClause(const AffineMap1& f);

/// Every simple cycle once per state on it; cycles with empty guards are
/// dropped. Throws BudgetExceeded past maxCycles.
std::vector<SimpleCycle> enumerateSimpleCycles(const Machine& m,
                                               std::size_t maxCycles = 100'000);

/// {n in domain(f) : f(n) in s}.
SemilinearSet preTransition(const AffineMap1& f, const SemilinearSet& s);

/// Values from which some number of turns of the cycle, each inside the
/// guard, lands in s.
SemilinearSet preCycleStar(const SimpleCycle& c, const SemilinearSet& s,
                           const PreStarOptions& options = {});

struct PreStarResult {
  /// One set per state, indexed like Machine::states.
  std::vector<SemilinearSet> sets;
  Configuration target;
  bool upward = false;
  std::size_t sweeps = 0;
  std::size_t cycles = 0;
};

/// Pre* of a configuration of a 1-dim affine machine.
PreStarResult computePreStar(const Machine& m, const Configuration& target,
                             const PreStarOptions& options = {});

/// Pre* of every configuration at the target state with a counter at least
/// the target value.
PreStarResult computePreStarUpward(const Machine& m, const Configuration& target,
                                   const PreStarOptions& options = {});

}  // namespace avasskit

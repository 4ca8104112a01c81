#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <unordered_set>
#include <vector>

#include "avasskit/machine.hpp"

namespace avasskit {

/// Bounds for explicit exploration. Configurations with a counter above
/// `maxValue` are never stored.
struct SimBudget {
  Integer maxValue = 1000;
  std::size_t maxConfigs = 2'000'000;
  std::size_t maxDepth = std::numeric_limits<std::size_t>::max();
};

/// An exact configuration, or with `upward` every configuration at the same
/// state whose counters dominate it.
struct Goal {
  Configuration config;
  bool upward = false;

  bool matches(const Configuration& c) const;
};

using ConfigurationSet = std::unordered_set<Configuration, ConfigurationHash>;

struct Exploration {
  ConfigurationSet configs;
  /// Some bound was hit, so configs may miss members.
  bool truncated = false;
};

/// One-step successors of `c`, dropping those above `maxValue`.
/// Relational payloads are enumerated by scanning candidates; `truncated`
/// is set when a successor above the bound exists.
std::vector<std::pair<std::size_t, Configuration>> successors(
    const Machine& m, const Configuration& c, const Integer& maxValue,
    bool* truncated = nullptr);

Exploration postStar(const Machine& m, const Configuration& from,
                     const SimBudget& budget = {});

/// Backward closure inside the box of counters <= maxValue.
Exploration preStarBounded(const Machine& m, const Goal& goal,
                           const SimBudget& budget = {});

/// A run: configs[i] --transitions[i]--> configs[i + 1].
struct Run {
  std::vector<std::size_t> transitions;
  std::vector<Configuration> configs;
};

/// Shortest run from `from` to the goal within the budget. `truncated`
/// reports whether a bound cut the search short.
std::optional<Run> findPath(const Machine& m, const Configuration& from,
                            const Goal& goal, const SimBudget& budget = {},
                            bool* truncated = nullptr);

/// Every step of the run is a valid transition of `m`.
bool replays(const Machine& m, const Run& run);

}  // namespace avasskit

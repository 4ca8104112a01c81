#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "avasskit/machine.hpp"
#include "avasskit/prestar.hpp"
#include "avasskit/presburger.hpp"

namespace avasskit {

/// from ->* to in a 1-dim affine machine.
bool reachable(const Machine& m, const Configuration& from, const Configuration& to,
               const PreStarOptions& options = {});

/// from ->* some configuration at to.state with a counter >= to's.
bool coverable(const Machine& m, const Configuration& from, const Configuration& to,
               const PreStarOptions& options = {});

/// `m` extended with (q, x' = x - n, sub) and (sub, x' = 0, zero) for the
/// target (q, n); `to` covers from iff (zero, 0) is reachable.
struct CoverReduction {
  Machine machine;
  std::size_t sub = 0;
  std::size_t zero = 0;
};
CoverReduction coverReduction(const Machine& m, const Configuration& to);

bool coverableViaReduction(const Machine& m, const Configuration& from,
                           const Configuration& to, const PreStarOptions& options = {});

/// Some configuration at `state` is reachable from `from`.
bool controlStateReachable(const Machine& m, const Configuration& from,
                           std::size_t state, const PreStarOptions& options = {});

/// A yes/no answer with the offending transition for "no".
struct TransitionVerdict {
  bool holds = true;
  std::optional<std::size_t> transition;
  /// For the WSTS check: a source value outside Pre*(up(target, b)).
  std::optional<Integer> counterexample;
  /// Number of Pre* computations performed.
  std::size_t preStarRuns = 0;
};

/// Well-structuredness of a 1-dim affine machine without user guards: for
/// every transition (q1, x' = ax + b, q2) with a < 0 and b >= 0, every value
/// at q1 must cover (q2, b). Throws InputError for other flavors or guards.
TransitionVerdict isWellStructured(const Machine& m, const PreStarOptions& options = {});

/// Per-transition strong monotony: each affine transition has an empty
/// domain, or a nonnegative matrix and an upward-closed domain.
TransitionVerdict isStronglyMonotone(const Machine& m, const SolverOptions& options = {});

/// Functionality of every transition; relational payloads go through the
/// solver, other flavors are functional by construction.
std::vector<FunctionalityVerdict> isFunctional(const Machine& m,
                                               const SolverOptions& options = {});

}  // namespace avasskit

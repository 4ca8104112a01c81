#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "avasskit/machine.hpp"

namespace avasskit {

/// Vector over {0..N} ∪ {ω}; a missing entry is ω.
struct OmegaVector {
  Integer cutoff = 1;
  std::vector<std::optional<Integer>> entries;

  std::size_t dim() const { return entries.size(); }
  /// Some component is ω.
  bool hasOmega() const;
  /// `(3,ω)`.
  std::string str() const;

  friend bool operator==(const OmegaVector&, const OmegaVector&) = default;
  friend auto operator<=>(const OmegaVector& x, const OmegaVector& y) {
    return x.entries <=> y.entries;
  }
};

/// Componentwise f_N: identity up to N, ω above.
OmegaVector abstract(const std::vector<Integer>& v, const Integer& cutoff);

/// A x + b under 0·ω = 0, k·ω = ω for k >= 1, ω + k = ω; finite values
/// above N become ω. Needs a nonnegative matrix and offset.
OmegaVector applyOmega(const AffineMapD& f, const OmegaVector& v);

/// Abstract image of a transition of a totally-positive machine.
OmegaVector applyOmega(const Machine& m, const Transition& t, const OmegaVector& v);

/// Transition sequence from `from` to exactly `to` found by BFS over
/// Q × {0..N, ω}^d with N = max(target components, 1). The abstraction
/// commutes with every transition, so the sequence is a concrete run too.
/// Throws InputError unless the machine is a totally-positive AVASS.
std::optional<std::vector<std::size_t>> omegaWitness(const Machine& m,
                                                     const Configuration& from,
                                                     const Configuration& to);

bool reachableTotallyPositive(const Machine& m, const Configuration& from,
                              const Configuration& to);

}  // namespace avasskit

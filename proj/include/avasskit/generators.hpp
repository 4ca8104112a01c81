#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avasskit/machine.hpp"
#include "avasskit/simulator.hpp"

namespace avasskit {

/// Functional 1-dim relational machine simulating the 2-counter Minsky
/// machine `m`: (q, n) stands for (q; v2(n), v3(n)). Transition i < |T| of
/// the result simulates transition i of `m`; then come one reset
/// (q, x' = 6x + 1, q0) per state and (q0, x = 0 ∧ x' = 0, q1). Initial
/// configuration (q0, 1).
Machine buildN1(const Machine& m, std::size_t q1);

/// 4-counter Minsky machine where (q; c1, c2, c3, c4) stands for
/// (q; c1 - c3, c2 - c3). States of `m` keep their indices. Guards on the
/// simulated counters run through a circuit that parks c3 in c4; a shared
/// reset circuit ("reset", "pump") reaches (q0; n, n, n, 0) for every
/// n >= 1 from any state; a zero-test chain leads (q0; 0,0,0,0) to q1.
/// Initial configuration (q0; 1, 1, 1, 0).
Machine buildN2(const Machine& m, std::size_t q1);

/// Valuations v2 and v3 of a positive integer.
std::pair<Integer, Integer> decodeN1(const Integer& n);

struct PcpInstance {
  std::vector<std::pair<std::string, std::string>> tiles;

  /// Throws InputError unless k >= 1 and every string is binary.
  void validate() const;
  /// `1:101,10:00,011:11`.
  std::string str() const;
};

/// Parses `a1:b1,a2:b2,...`.
PcpInstance parsePcp(const std::string& text);

/// Positive 2-AVASS over q0, q1, q2: q0 -> q1 sets both counters to 1, one
/// self-loop per tile at q1 appends the tile in binary, q1 -> q2 is the
/// identity and q2 decrements both counters. Tile i is transition i + 1.
Machine buildPcpMachine(const PcpInstance& p);

/// Searches (q0; 0,0) ->* (q2; 0,0) through at least one tile loop. Returns
/// the tile indices (0-based) of the first run found, nullopt when none
/// exists within `budget`; `truncated` reports whether the budget was hit.
std::optional<std::vector<std::size_t>> solvePcpViaMachine(const PcpInstance& p,
                                                           const SimBudget& budget,
                                                           bool* truncated = nullptr);

/// M1, M2 and the 2-dim zero-test gadget.
std::vector<Machine> builtinExamples();

}  // namespace avasskit

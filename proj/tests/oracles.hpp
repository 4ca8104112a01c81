#pragma once

// Brute-force oracles shared by unit tests and the acceptance binary. They
// only use single-step `apply`, never the analyses under test.

#include <deque>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "avasskit/machine.hpp"

namespace oracle {

using avasskit::Configuration;
using avasskit::Integer;
using avasskit::Machine;

using Step = std::pair<std::size_t, Configuration>;

struct StepLess {
  bool operator()(const Step& x, const Step& y) const {
    return std::tie(x.first, x.second.state, x.second.counters) <
           std::tie(y.first, y.second.state, y.second.counters);
  }
};
using StepSet = std::set<Step, StepLess>;
using Snapshot = std::pair<std::size_t, std::vector<Integer>>;

// (transition, successor) pairs of a functional machine.
inline StepSet steps(const Machine& m, const Configuration& c) {
  StepSet out;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    if (m.transitions[i].source == c.state) {
      if (auto next = avasskit::apply(m, m.transitions[i], c)) {
        out.insert({i, *next});
      }
    }
  }
  return out;
}

// Concrete BFS with every counter capped at `bound`.
inline bool reachWithin(const Machine& m, const Configuration& from, const Configuration& to,
                        const Integer& bound) {
  std::set<Snapshot> seen{{from.state, from.counters}};
  std::deque<Configuration> queue{from};
  while (!queue.empty()) {
    Configuration c = queue.front();
    queue.pop_front();
    if (c == to) {
      return true;
    }
    for (const auto& [index, next] : steps(m, c)) {
      bool inside = true;
      for (const Integer& v : next.counters) {
        inside = inside && v <= bound;
      }
      if (inside && seen.insert({next.state, next.counters}).second) {
        queue.push_back(next);
      }
    }
  }
  return false;
}

inline Configuration replay(const Machine& m, Configuration c,
                            const std::vector<std::size_t>& path) {
  for (std::size_t i : path) {
    auto next = avasskit::apply(m, m.transitions.at(i), c);
    if (!next) {
      throw std::logic_error("run leaves the domain");
    }
    c = *next;
  }
  return c;
}

inline Integer pow23(const Integer& a, const Integer& b) {
  Integer v = 1;
  for (Integer i = 0; i < a; ++i) v *= 2;
  for (Integer i = 0; i < b; ++i) v *= 3;
  return v;
}

// Configurations at states below `original` reached from `from` through
// other states only, never entering `avoid`.
inline std::set<Snapshot> firstOriginalHits(const Machine& m, const Configuration& from,
                                            std::size_t original, std::size_t avoid) {
  std::set<Snapshot> seen{{from.state, from.counters}};
  std::set<Snapshot> hits;
  std::deque<Configuration> queue{from};
  while (!queue.empty()) {
    Configuration c = queue.front();
    queue.pop_front();
    for (const auto& [index, next] : steps(m, c)) {
      if (m.transitions[index].target == avoid) {
        continue;
      }
      if (next.state < original) {
        hits.insert({next.state, next.counters});
      } else if (seen.insert({next.state, next.counters}).second) {
        queue.push_back(next);
      }
    }
  }
  return hits;
}

// Some i < j with before(seq[i], seq[j]).
template <typename Pred>
bool hasAscendingPair(const std::vector<Integer>& seq, Pred before) {
  for (std::size_t j = 0; j < seq.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (before(seq[i], seq[j])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace oracle

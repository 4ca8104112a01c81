#include "avasskit/prestar.hpp"

#include <algorithm>
#include <functional>
#include <variant>

#include "avasskit/errors.hpp"

namespace avasskit {

std::optional<Clause> preimageClause(const Integer& alpha, const Integer& beta,
                                     const Clause& clause) {
  if (alpha == 0) {
    if (clause.contains(beta)) {
      return Clause::atLeast(0);
    }
    return std::nullopt;
  }
  auto cong = solveLinearCongruence(alpha, clause.residue() - beta, clause.modulus());
  if (!cong) {
    return std::nullopt;
  }
  Integer lo = 0;
  std::optional<Integer> hi;
  if (alpha > 0) {
    lo = std::max(lo, ceilDiv(clause.lo() - beta, alpha));
    if (clause.hi()) {
      hi = floorDiv(*clause.hi() - beta, alpha);
    }
  } else {
    const Integer size = -alpha;
    hi = floorDiv(beta - clause.lo(), size);
    if (clause.hi()) {
      lo = std::max(lo, ceilDiv(beta - *clause.hi(), size));
    }
  }
  if (hi && *hi < lo) {
    return std::nullopt;
  }
  return Clause::make(lo, hi, cong->modulus, cong->residue);
}

std::optional<Clause> domainClause(const AffineMap1& f) {
  auto dom = preimageClause(f.a, f.b, Clause::atLeast(0));
  if (dom && f.guard) {
    return dom->intersect(*f.guard);
  }
  return dom;
}

namespace {

// Elementary circuits of a digraph given by adjacency lists (Johnson).
class CircuitFinder {
 public:
  CircuitFinder(std::vector<std::vector<std::size_t>> adjacency, std::size_t cap)
      : adj_(std::move(adjacency)), cap_(cap) {}

  std::vector<std::vector<std::size_t>> run() {
    const std::size_t n = adj_.size();
    for (start_ = 0; start_ < n; ++start_) {
      component_ = componentOf(start_);
      blocked_.assign(n, false);
      blockedBy_.assign(n, {});
      circuit(start_);
    }
    return std::move(out_);
  }

 private:
  // States >= start in the strongly connected component of start within the
  // subgraph induced by states >= start.
  std::vector<bool> componentOf(std::size_t s) const {
    const std::size_t n = adj_.size();
    std::vector<bool> forward(n, false);
    std::vector<bool> backward(n, false);
    std::vector<std::size_t> stack{s};
    forward[s] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj_[v]) {
        if (w >= s && !forward[w]) {
          forward[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::vector<std::vector<std::size_t>> reverse(n);
    for (std::size_t v = s; v < n; ++v) {
      for (std::size_t w : adj_[v]) {
        if (w >= s) {
          reverse[w].push_back(v);
        }
      }
    }
    stack.push_back(s);
    backward[s] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : reverse[v]) {
        if (!backward[w]) {
          backward[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::vector<bool> both(n);
    for (std::size_t v = 0; v < n; ++v) {
      both[v] = forward[v] && backward[v];
    }
    return both;
  }

  void unblock(std::size_t v) {
    blocked_[v] = false;
    while (!blockedBy_[v].empty()) {
      std::size_t w = blockedBy_[v].back();
      blockedBy_[v].pop_back();
      if (blocked_[w]) {
        unblock(w);
      }
    }
  }

  bool circuit(std::size_t v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (std::size_t w : adj_[v]) {
      if (!component_[w]) {
        continue;
      }
      if (w == start_) {
        if (out_.size() >= cap_) {
          throw BudgetExceeded("more than " + std::to_string(cap_) +
                               " simple cycles");
        }
        out_.push_back(path_);
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (std::size_t w : adj_[v]) {
        if (component_[w] &&
            std::find(blockedBy_[w].begin(), blockedBy_[w].end(), v) ==
                blockedBy_[w].end()) {
          blockedBy_[w].push_back(v);
        }
      }
    }
    path_.pop_back();
    return found;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t cap_;
  std::size_t start_ = 0;
  std::vector<bool> component_;
  std::vector<bool> blocked_;
  std::vector<std::vector<std::size_t>> blockedBy_;
  std::vector<std::size_t> path_;
  std::vector<std::vector<std::size_t>> out_;
};

void requireAffine1(const Machine& m) {
  if (m.flavor != Flavor::Affine1) {
    throw InputError("expected a 1-dim affine machine, got " + str(m.flavor));
  }
}

// Meta map and guard of a transition sequence; nullopt when no value can
// take the whole sequence.
std::optional<SimpleCycle> composeCycle(const Machine& m, std::size_t root,
                                        std::vector<std::size_t> transitions) {
  Integer alpha = 1;
  Integer beta = 0;
  Clause guard = Clause::atLeast(0);
  for (std::size_t i : transitions) {
    const auto& f = std::get<AffineMap1>(m.transitions[i].payload);
    auto dom = domainClause(f);
    if (!dom) {
      return std::nullopt;
    }
    auto pulled = preimageClause(alpha, beta, *dom);
    if (!pulled) {
      return std::nullopt;
    }
    auto meet = guard.intersect(*pulled);
    if (!meet) {
      return std::nullopt;
    }
    guard = *meet;
    beta = f.a * beta + f.b;
    alpha = f.a * alpha;
  }
  return SimpleCycle{root, std::move(transitions), AffineMap1{alpha, beta, std::nullopt},
                     guard};
}

// Least fixpoint of R(i) = decide(i) or R(next(i)) on a functional graph
// over 0..size-1. decide returns a value when i is settled locally, next
// returns either a node or a settled value.
std::vector<bool> solveChains(
    std::size_t size, const std::function<std::optional<bool>(std::size_t)>& decide,
    const std::function<std::variant<std::size_t, bool>(std::size_t)>& next) {
  enum : char { kUnknown, kFalse, kTrue, kOnPath };
  std::vector<char> state(size, kUnknown);
  std::vector<std::size_t> path;
  for (std::size_t i = 0; i < size; ++i) {
    if (state[i] != kUnknown) {
      continue;
    }
    path.clear();
    std::size_t cur = i;
    bool value = false;
    for (;;) {
      if (state[cur] == kTrue || state[cur] == kFalse) {
        value = state[cur] == kTrue;
        break;
      }
      if (state[cur] == kOnPath) {
        value = false;
        break;
      }
      if (auto settled = decide(cur)) {
        state[cur] = *settled ? kTrue : kFalse;
        value = *settled;
        break;
      }
      state[cur] = kOnPath;
      path.push_back(cur);
      auto step = next(cur);
      if (const bool* b = std::get_if<bool>(&step)) {
        value = *b;
        break;
      }
      cur = std::get<std::size_t>(step);
    }
    for (std::size_t p : path) {
      state[p] = value ? kTrue : kFalse;
    }
  }
  std::vector<bool> out(size);
  for (std::size_t i = 0; i < size; ++i) {
    out[i] = state[i] == kTrue;
  }
  return out;
}

SemilinearSet withPoints(const SemilinearSet& s, const std::vector<Integer>& points,
                         std::vector<Clause> extra = {}) {
  std::vector<Clause> clauses = s.clauses();
  for (const Integer& p : points) {
    clauses.push_back(Clause::point(p));
  }
  clauses.insert(clauses.end(), extra.begin(), extra.end());
  return SemilinearSet(std::move(clauses)).simplified();
}

// Guard with an upper bound: walk every value of it.
SemilinearSet starBoundedGuard(const SimpleCycle& c, const SemilinearSet& s,
                               const PreStarOptions& options) {
  const Clause& g = c.guard;
  const Integer lo = g.lo();
  const std::size_t size =
      toSize((*g.hi() - lo) / g.modulus() + 1, options.maxExplicit, "cycle guard size");
  auto value = [&](std::size_t i) { return lo + g.modulus() * i; };
  auto result = solveChains(
      size,
      [&](std::size_t i) -> std::optional<bool> {
        if (s.contains(value(i))) {
          return true;
        }
        return std::nullopt;
      },
      [&](std::size_t i) -> std::variant<std::size_t, bool> {
        Integer image = c.meta.a * value(i) + c.meta.b;
        if (!g.contains(image)) {
          return s.contains(image);
        }
        return ((image - lo) / g.modulus()).convert_to<std::size_t>();
      });
  std::vector<Integer> points;
  for (std::size_t i = 0; i < size; ++i) {
    if (result[i]) {
      points.push_back(value(i));
    }
  }
  return withPoints(s, points);
}

// n -> n - step with step > 0 on an unbounded guard.
SemilinearSet starTranslationDown(const SimpleCycle& c, const SemilinearSet& s,
                                  const PreStarOptions& options) {
  const Clause& g = c.guard;
  const Integer step = -c.meta.b;
  if (floorMod(step, g.modulus()) != 0) {
    // After one turn the residue leaves the guard, so one turn is all.
    std::vector<Clause> clauses = s.clauses();
    for (const Clause& k : s.clauses()) {
      if (auto pre = preimageClause(1, c.meta.b, k)) {
        if (auto meet = pre->intersect(g)) {
          clauses.push_back(*meet);
        }
      }
    }
    return SemilinearSet(std::move(clauses)).simplified();
  }
  // n qualifies iff n is in the guard and n >= m0(n mod step) + step, where
  // m0(r) is the least member k of s with k = r (mod step) and
  // k >= guard.lo - step.
  const Integer floor = std::max(Integer(0), g.lo() - step);
  const std::size_t count = toSize(step, options.maxExplicit, "translation step");
  std::vector<Clause> extra;
  for (std::size_t r = 0; r < count; ++r) {
    std::optional<Integer> best;
    for (const Clause& k : s.clauses()) {
      auto cong = combineCongruences({k.residue(), k.modulus()}, {Integer(r), step});
      if (!cong) {
        continue;
      }
      const Integer from = std::max(floor, k.lo());
      Integer first = from + floorMod(cong->residue - from, cong->modulus);
      if (k.hi() && first > *k.hi()) {
        continue;
      }
      if (!best || first < *best) {
        best = first;
      }
    }
    if (!best) {
      continue;
    }
    if (auto reach = Clause::make(*best + step, std::nullopt, step, Integer(r))) {
      if (auto meet = reach->intersect(g)) {
        extra.push_back(*meet);
      }
    }
  }
  return withPoints(s, {}, std::move(extra));
}

// Non-decreasing beyond a threshold: a >= 2, or a = 1 with b > 0.
SemilinearSet starIncreasing(const SimpleCycle& c, const SemilinearSet& s,
                             const PreStarOptions& options) {
  const Clause& g = c.guard;
  const Integer& a = c.meta.a;
  const Integer& b = c.meta.b;
  Integer modulus = g.modulus();
  Integer threshold = g.lo();
  for (const Clause& k : s.clauses()) {
    modulus = lcm(modulus, k.modulus());
    threshold = std::max(threshold, k.hi() ? *k.hi() + 1 : k.lo());
  }
  if (a >= 2) {
    threshold = std::max(threshold, ceilDiv(-b, a - 1));
  }
  threshold += 1;
  const std::size_t period = toSize(modulus, options.maxExplicit, "cycle modulus");
  const std::size_t below = toSize(threshold, options.maxExplicit, "cycle threshold");

  // Residue behaviour at or above the threshold, where the orbit never
  // decreases and membership depends on n mod modulus only.
  std::vector<bool> largeInS(period, false);
  for (const Clause& k : s.clauses()) {
    if (!k.hi()) {
      for (std::size_t r = 0; r < period; ++r) {
        largeInS[r] = largeInS[r] || floorMod(Integer(r) - k.residue(), k.modulus()) == 0;
      }
    }
  }
  auto residues = solveChains(
      period,
      [&](std::size_t r) -> std::optional<bool> {
        if (largeInS[r]) {
          return true;
        }
        if (floorMod(Integer(r) - g.residue(), g.modulus()) != 0) {
          return false;
        }
        return std::nullopt;
      },
      [&](std::size_t r) -> std::variant<std::size_t, bool> {
        return floorMod(a * r + b, modulus).convert_to<std::size_t>();
      });

  auto small = solveChains(
      below,
      [&](std::size_t n) -> std::optional<bool> {
        if (s.contains(Integer(n))) {
          return true;
        }
        if (!g.contains(Integer(n))) {
          return false;
        }
        return std::nullopt;
      },
      [&](std::size_t n) -> std::variant<std::size_t, bool> {
        Integer image = a * n + b;
        if (image >= threshold) {
          return static_cast<bool>(
              residues[floorMod(image, modulus).convert_to<std::size_t>()]);
        }
        return image.convert_to<std::size_t>();
      });

  std::vector<Integer> points;
  for (std::size_t n = 0; n < below; ++n) {
    if (small[n]) {
      points.push_back(n);
    }
  }
  std::vector<Clause> extra;
  for (std::size_t r = 0; r < period; ++r) {
    if (residues[r]) {
      extra.push_back(*Clause::make(threshold, std::nullopt, modulus, Integer(r)));
    }
  }
  return withPoints(s, points, std::move(extra));
}

void checkTarget(const Machine& m, const Configuration& target) {
  requireAffine1(m);
  if (target.state >= m.states.size()) {
    throw InputError("target state out of range");
  }
  if (target.counters.size() != 1 || target.counters[0] < 0) {
    throw InputError("target needs one natural counter value");
  }
}

PreStarResult fixpoint(const Machine& m, const Configuration& target, bool upward,
                       const PreStarOptions& options) {
  checkTarget(m, target);
  PreStarResult out;
  out.target = target;
  out.upward = upward;
  out.sets.assign(m.states.size(), SemilinearSet::empty());
  out.sets[target.state] = upward ? SemilinearSet::atLeast(target.counters[0])
                                  : SemilinearSet::point(target.counters[0]);
  std::vector<SimpleCycle> cycles = enumerateSimpleCycles(m, options.maxCycles);
  out.cycles = cycles.size();
  std::vector<std::vector<const SimpleCycle*>> rooted(m.states.size());
  for (const SimpleCycle& c : cycles) {
    rooted[c.root].push_back(&c);
  }
  for (bool changed = true; changed;) {
    if (out.sweeps >= options.maxSweeps) {
      throw BudgetExceeded("Pre* did not stabilize within " +
                           std::to_string(options.maxSweeps) + " sweeps");
    }
    ++out.sweeps;
    changed = false;
    for (std::size_t q = 0; q < m.states.size(); ++q) {
      SemilinearSet acc = out.sets[q];
      for (const Transition& t : m.transitions) {
        if (t.source == q) {
          acc = acc.unite(preTransition(std::get<AffineMap1>(t.payload),
                                        out.sets[t.target]));
        }
      }
      for (const SimpleCycle* c : rooted[q]) {
        acc = preCycleStar(*c, acc, options);
      }
      if (!acc.equals(out.sets[q])) {
        out.sets[q] = acc.simplified();
        changed = true;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SimpleCycle> enumerateSimpleCycles(const Machine& m, std::size_t maxCycles) {
  requireAffine1(m);
  const std::size_t n = m.states.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  // edges[v][w]: transitions from v to w.
  std::vector<std::vector<std::vector<std::size_t>>> edges(
      n, std::vector<std::vector<std::size_t>>(n));
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    if (edges[t.source][t.target].empty()) {
      adjacency[t.source].push_back(t.target);
    }
    edges[t.source][t.target].push_back(i);
  }
  std::vector<SimpleCycle> out;
  for (const auto& states : CircuitFinder(adjacency, maxCycles).run()) {
    const std::size_t k = states.size();
    for (std::size_t shift = 0; shift < k; ++shift) {
      // Every choice among parallel transitions, read from states[shift].
      std::vector<std::size_t> choice(k, 0);
      for (;;) {
        std::vector<std::size_t> seq;
        for (std::size_t j = 0; j < k; ++j) {
          const std::size_t from = states[(shift + j) % k];
          const std::size_t to = states[(shift + j + 1) % k];
          seq.push_back(edges[from][to][choice[j]]);
        }
        if (auto c = composeCycle(m, states[shift], std::move(seq))) {
          if (out.size() >= maxCycles) {
            throw BudgetExceeded("more than " + std::to_string(maxCycles) +
                                 " simple cycles");
          }
          out.push_back(std::move(*c));
        }
        std::size_t j = 0;
        while (j < k) {
          const std::size_t from = states[(shift + j) % k];
          const std::size_t to = states[(shift + j + 1) % k];
          if (++choice[j] < edges[from][to].size()) {
            break;
          }
          choice[j++] = 0;
        }
        if (j == k) {
          break;
        }
      }
    }
  }
  return out;
}

SemilinearSet preTransition(const AffineMap1& f, const SemilinearSet& s) {
  auto dom = domainClause(f);
  if (!dom) {
    return SemilinearSet::empty();
  }
  std::vector<Clause> clauses;
  for (const Clause& k : s.clauses()) {
    if (auto pre = preimageClause(f.a, f.b, k)) {
      if (auto meet = pre->intersect(*dom)) {
        clauses.push_back(*meet);
      }
    }
  }
  return SemilinearSet(std::move(clauses));
}

SemilinearSet preCycleStar(const SimpleCycle& c, const SemilinearSet& s,
                           const PreStarOptions& options) {
  if (s.isEmpty()) {
    return s;
  }
  const Integer& a = c.meta.a;
  const Integer& b = c.meta.b;
  if (c.guard.hi()) {
    return starBoundedGuard(c, s, options);
  }
  // An unbounded guard forces a >= 0.
  if (a == 0) {
    return s.contains(b) ? withPoints(s, {}, {c.guard}) : s;
  }
  if (a == 1 && b == 0) {
    return s;
  }
  if (a == 1 && b < 0) {
    return starTranslationDown(c, s, options);
  }
  return starIncreasing(c, s, options);
}

PreStarResult computePreStar(const Machine& m, const Configuration& target,
                             const PreStarOptions& options) {
  return fixpoint(m, target, false, options);
}

PreStarResult computePreStarUpward(const Machine& m, const Configuration& target,
                                   const PreStarOptions& options) {
  return fixpoint(m, target, true, options);
}

}  // namespace avasskit

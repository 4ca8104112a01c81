#include "avasskit/simulator.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "avasskit/errors.hpp"
#include "avasskit/presburger.hpp"

namespace avasskit {

bool Goal::matches(const Configuration& c) const {
  if (c.state != config.state) {
    return false;
  }
  if (!upward) {
    return c.counters == config.counters;
  }
  for (std::size_t k = 0; k < c.counters.size(); ++k) {
    if (c.counters[k] < config.counters[k]) {
      return false;
    }
  }
  return true;
}

namespace {

bool inBox(const std::vector<Integer>& v, const Integer& maxValue) {
  for (const Integer& x : v) {
    if (x > maxValue) {
      return false;
    }
  }
  return true;
}

// Calls fn on every vector of length dim with entries in [0, maxValue].
template <typename Fn>
void forEachInBox(std::size_t dim, const Integer& maxValue, Fn fn) {
  std::vector<Integer> v(dim, 0);
  for (;;) {
    fn(v);
    std::size_t k = 0;
    while (k < dim && v[k] == maxValue) {
      v[k++] = 0;
    }
    if (k == dim) {
      return;
    }
    v[k] += 1;
  }
}

std::vector<Integer> joined(const std::vector<Integer>& x,
                            const std::vector<Integer>& y) {
  std::vector<Integer> env = x;
  env.insert(env.end(), y.begin(), y.end());
  return env;
}

// Atom c_k * v_k rel bound over the 2*dim relation variables.
Atom unitAtom(std::size_t arity, std::size_t k, Rel rel, const Integer& bound) {
  Atom a;
  a.coeffs.assign(arity, 0);
  a.coeffs[k] = 1;
  a.rel = rel;
  a.bound = bound;
  return a;
}

// Successors of x inside the box [lo, hi]: boxes the solver proves empty are
// skipped, small ones are scanned, the rest split along the widest side.
void relationalSuccessors(const Relational& r, std::size_t dim,
                          const std::vector<Integer>& x, std::vector<Integer> lo,
                          std::vector<Integer> hi,
                          std::vector<std::vector<Integer>>& out) {
  constexpr long kScanVolume = 256;
  Integer volume = 1;
  std::size_t widest = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    volume *= hi[k] - lo[k] + 1;
    if (hi[k] - lo[k] > hi[widest] - lo[widest]) {
      widest = k;
    }
  }
  if (volume <= kScanVolume) {
    std::vector<Integer> v = lo;
    for (;;) {
      if (r.formula.evaluate(joined(x, v))) {
        out.push_back(v);
      }
      std::size_t k = 0;
      while (k < dim && v[k] == hi[k]) {
        v[k] = lo[k];
        ++k;
      }
      if (k == dim) {
        return;
      }
      v[k] += 1;
    }
  }
  std::vector<Formula> parts{r.formula.body};
  for (std::size_t k = 0; k < dim; ++k) {
    parts.push_back(Formula::of(unitAtom(2 * dim, k, Rel::Eq, x[k])));
    parts.push_back(Formula::of(unitAtom(2 * dim, dim + k, Rel::Ge, lo[k])));
    parts.push_back(Formula::of(unitAtom(2 * dim, dim + k, Rel::Le, hi[k])));
  }
  SolverOptions options;
  options.maxVariables = 2 * dim;
  if (!existsSolution({r.formula.vars, Formula::conj(std::move(parts))}, options)) {
    return;
  }
  const Integer mid = lo[widest] + (hi[widest] - lo[widest]) / 2;
  std::vector<Integer> upperLo = lo;
  upperLo[widest] = mid + 1;
  std::vector<Integer> lowerHi = hi;
  lowerHi[widest] = mid;
  relationalSuccessors(r, dim, x, lo, std::move(lowerHi), out);
  relationalSuccessors(r, dim, x, std::move(upperLo), std::move(hi), out);
}

// Whether the relation admits a successor of x with a counter above maxValue.
bool successorBeyond(const Relational& r, std::size_t dim,
                     const std::vector<Integer>& x, const Integer& maxValue) {
  std::vector<Formula> parts{r.formula.body};
  std::vector<Formula> above;
  for (std::size_t k = 0; k < dim; ++k) {
    Atom fix;
    fix.coeffs.assign(2 * dim, 0);
    fix.coeffs[k] = 1;
    fix.rel = Rel::Eq;
    fix.bound = x[k];
    parts.push_back(Formula::of(fix));
    Atom big;
    big.coeffs.assign(2 * dim, 0);
    big.coeffs[dim + k] = 1;
    big.rel = Rel::Gt;
    big.bound = maxValue;
    above.push_back(Formula::of(big));
  }
  parts.push_back(Formula::disj(std::move(above)));
  SolverOptions options;
  options.maxVariables = 2 * dim;
  return existsSolution({r.formula.vars, Formula::conj(std::move(parts))}, options)
      .has_value();
}

}  // namespace

std::vector<std::pair<std::size_t, Configuration>> successors(
    const Machine& m, const Configuration& c, const Integer& maxValue,
    bool* truncated) {
  std::vector<std::pair<std::size_t, Configuration>> out;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    if (t.source != c.state) {
      continue;
    }
    if (const auto* r = std::get_if<Relational>(&t.payload)) {
      std::vector<std::vector<Integer>> found;
      relationalSuccessors(*r, m.dim, c.counters, std::vector<Integer>(m.dim, 0),
                           std::vector<Integer>(m.dim, maxValue), found);
      for (auto& next : found) {
        out.push_back({i, Configuration{t.target, std::move(next)}});
      }
      if (truncated && !*truncated &&
          successorBeyond(*r, m.dim, c.counters, maxValue)) {
        *truncated = true;
      }
      continue;
    }
    auto next = apply(m, t, c);
    if (!next) {
      continue;
    }
    if (!inBox(next->counters, maxValue)) {
      if (truncated) {
        *truncated = true;
      }
      continue;
    }
    out.push_back({i, std::move(*next)});
  }
  return out;
}

Exploration postStar(const Machine& m, const Configuration& from,
                     const SimBudget& budget) {
  Exploration out;
  if (!inBox(from.counters, budget.maxValue)) {
    out.truncated = true;
    return out;
  }
  std::deque<std::pair<Configuration, std::size_t>> queue{{from, 0}};
  out.configs.insert(from);
  while (!queue.empty()) {
    auto [c, depth] = std::move(queue.front());
    queue.pop_front();
    auto next = successors(m, c, budget.maxValue, &out.truncated);
    if (depth >= budget.maxDepth) {
      out.truncated = out.truncated || !next.empty();
      continue;
    }
    for (auto& [_, d] : next) {
      if (out.configs.count(d)) {
        continue;
      }
      if (out.configs.size() >= budget.maxConfigs) {
        out.truncated = true;
        return out;
      }
      out.configs.insert(d);
      queue.push_back({std::move(d), depth + 1});
    }
  }
  return out;
}

Exploration preStarBounded(const Machine& m, const Goal& goal,
                           const SimBudget& budget) {
  Exploration out;
  std::deque<Configuration> queue;
  auto visit = [&](Configuration c) {
    if (out.configs.size() >= budget.maxConfigs) {
      out.truncated = true;
      return;
    }
    if (out.configs.insert(c).second) {
      queue.push_back(std::move(c));
    }
  };

  if (goal.upward) {
    forEachInBox(m.dim, budget.maxValue, [&](const std::vector<Integer>& v) {
      Configuration c{goal.config.state, v};
      if (goal.matches(c)) {
        visit(c);
      }
    });
  } else if (inBox(goal.config.counters, budget.maxValue)) {
    visit(goal.config);
  }

  // Predecessor lists: inverted directly for plain 1-dim maps, otherwise
  // from the forward graph of the whole box.
  const bool invertible = m.flavor == Flavor::Affine1;
  std::unordered_map<Configuration, std::vector<Configuration>, ConfigurationHash>
      reverse;
  if (!invertible) {
    std::size_t boxSize = m.states.size();
    for (std::size_t k = 0; k < m.dim; ++k) {
      boxSize *= toSize(budget.maxValue + 1, budget.maxConfigs, "box size");
      if (boxSize > budget.maxConfigs) {
        throw BudgetExceeded("box of counters <= " + budget.maxValue.str() +
                             " exceeds the configuration budget");
      }
    }
    for (std::size_t q = 0; q < m.states.size(); ++q) {
      forEachInBox(m.dim, budget.maxValue, [&](const std::vector<Integer>& v) {
        Configuration c{q, v};
        for (auto& [_, d] : successors(m, c, budget.maxValue, &out.truncated)) {
          reverse[d].push_back(c);
        }
      });
    }
  }

  std::size_t depth = 0;
  while (!queue.empty()) {
    if (depth++ >= budget.maxDepth) {
      out.truncated = true;
      break;
    }
    const std::size_t layer = queue.size();
    for (std::size_t i = 0; i < layer; ++i) {
      Configuration c = std::move(queue.front());
      queue.pop_front();
      if (!invertible) {
        auto it = reverse.find(c);
        if (it != reverse.end()) {
          for (const Configuration& p : it->second) {
            visit(p);
          }
        }
        continue;
      }
      const Integer& v = c.counters[0];
      for (const Transition& t : m.transitions) {
        if (t.target != c.state) {
          continue;
        }
        const auto& f = std::get<AffineMap1>(t.payload);
        if (f.a == 0) {
          if (f.b != v) {
            continue;
          }
          for (Integer n = 0; n <= budget.maxValue; ++n) {
            if (f.inDomain(n)) {
              visit(Configuration{t.source, {n}});
            }
          }
        } else if (floorMod(v - f.b, f.a) == 0) {
          Integer n = (v - f.b) / f.a;
          if (n >= 0 && n <= budget.maxValue && f.inDomain(n)) {
            visit(Configuration{t.source, {n}});
          }
        }
      }
    }
  }
  if (invertible && !out.truncated) {
    // Edges leaving the box are invisible to the backward search.
    for (const Transition& t : m.transitions) {
      const auto& f = std::get<AffineMap1>(t.payload);
      Integer top = f.a >= 0 ? Integer(budget.maxValue) : Integer(0);
      if (f.inDomain(top) && *f.apply(top) > budget.maxValue) {
        out.truncated = true;
      }
    }
  }
  return out;
}

std::optional<Run> findPath(const Machine& m, const Configuration& from,
                            const Goal& goal, const SimBudget& budget,
                            bool* truncated) {
  bool cut = false;
  if (truncated == nullptr) {
    truncated = &cut;
  }
  *truncated = false;
  if (goal.matches(from)) {
    return Run{{}, {from}};
  }
  if (!inBox(from.counters, budget.maxValue)) {
    *truncated = true;
    return std::nullopt;
  }
  struct Parent {
    Configuration config;
    std::size_t transition;
  };
  std::unordered_map<Configuration, std::optional<Parent>, ConfigurationHash> parents;
  parents.emplace(from, std::nullopt);
  std::deque<std::pair<Configuration, std::size_t>> queue{{from, 0}};
  while (!queue.empty()) {
    auto [c, depth] = std::move(queue.front());
    queue.pop_front();
    if (depth >= budget.maxDepth) {
      *truncated = true;
      continue;
    }
    bool dropped = false;
    for (auto& [index, d] : successors(m, c, budget.maxValue, &dropped)) {
      if (parents.count(d)) {
        continue;
      }
      if (parents.size() >= budget.maxConfigs) {
        *truncated = true;
        return std::nullopt;
      }
      parents.emplace(d, Parent{c, index});
      if (goal.matches(d)) {
        Run run;
        Configuration at = d;
        for (;;) {
          run.configs.push_back(at);
          const auto& p = parents.at(at);
          if (!p) {
            break;
          }
          run.transitions.push_back(p->transition);
          at = p->config;
        }
        std::reverse(run.configs.begin(), run.configs.end());
        std::reverse(run.transitions.begin(), run.transitions.end());
        return run;
      }
      queue.push_back({std::move(d), depth + 1});
    }
    *truncated = *truncated || dropped;
  }
  return std::nullopt;
}

bool replays(const Machine& m, const Run& run) {
  if (run.configs.size() != run.transitions.size() + 1) {
    return false;
  }
  for (std::size_t i = 0; i < run.transitions.size(); ++i) {
    if (run.transitions[i] >= m.transitions.size()) {
      return false;
    }
    const Transition& t = m.transitions[run.transitions[i]];
    const Configuration& c = run.configs[i];
    const Configuration& d = run.configs[i + 1];
    if (t.source != c.state || t.target != d.state ||
        c.counters.size() != m.dim || d.counters.size() != m.dim) {
      return false;
    }
    if (const auto* r = std::get_if<Relational>(&t.payload)) {
      if (!r->formula.evaluate(joined(c.counters, d.counters))) {
        return false;
      }
    } else if (apply(m, t, c) != d) {
      return false;
    }
  }
  return true;
}

}  // namespace avasskit

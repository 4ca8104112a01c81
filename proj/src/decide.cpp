#include "avasskit/decide.hpp"

#include <map>

#include "avasskit/errors.hpp"

namespace avasskit {

namespace {

void checkConfig(const Machine& m, const Configuration& c, const char* what) {
  if (c.state >= m.states.size() || c.counters.size() != m.dim) {
    throw InputError(std::string(what) + " does not fit the machine");
  }
}

}  // namespace

bool reachable(const Machine& m, const Configuration& from, const Configuration& to,
               const PreStarOptions& options) {
  checkConfig(m, from, "source");
  checkConfig(m, to, "target");
  if (from == to) {
    return true;
  }
  return computePreStar(m, to, options).sets[from.state].contains(from.counters[0]);
}

bool coverable(const Machine& m, const Configuration& from, const Configuration& to,
               const PreStarOptions& options) {
  checkConfig(m, from, "source");
  checkConfig(m, to, "target");
  return computePreStarUpward(m, to, options)
      .sets[from.state]
      .contains(from.counters[0]);
}

CoverReduction coverReduction(const Machine& m, const Configuration& to) {
  checkConfig(m, to, "target");
  if (m.flavor != Flavor::Affine1) {
    throw InputError("the coverability reduction needs a 1-dim affine machine");
  }
  CoverReduction out{m, 0, 0};
  out.sub = out.machine.addState(out.machine.freshStateName("q3"));
  out.zero = out.machine.addState(out.machine.freshStateName("q4"));
  out.machine.transitions.push_back(
      {to.state, out.sub, AffineMap1{1, -to.counters[0], std::nullopt}});
  out.machine.transitions.push_back({out.sub, out.zero, AffineMap1{0, 0, std::nullopt}});
  return out;
}

bool coverableViaReduction(const Machine& m, const Configuration& from,
                           const Configuration& to, const PreStarOptions& options) {
  checkConfig(m, from, "source");
  CoverReduction r = coverReduction(m, to);
  return reachable(r.machine, from, Configuration{r.zero, {0}}, options);
}

bool controlStateReachable(const Machine& m, const Configuration& from,
                           std::size_t state, const PreStarOptions& options) {
  return coverable(m, from, Configuration{state, std::vector<Integer>(m.dim, 0)},
                   options);
}

TransitionVerdict isWellStructured(const Machine& m, const PreStarOptions& options) {
  if (m.flavor != Flavor::Affine1) {
    throw InputError("the WSTS criterion needs a 1-dim affine machine");
  }
  if (classify(m).hasUserGuards) {
    throw InputError("the WSTS criterion does not support user guards");
  }
  TransitionVerdict out;
  std::map<std::pair<std::size_t, Integer>, SemilinearSet> cache;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Transition& t = m.transitions[i];
    const auto& f = std::get<AffineMap1>(t.payload);
    if (f.a >= 0 || f.b < 0) {
      continue;
    }
    auto key = std::make_pair(t.target, f.b);
    auto it = cache.find(key);
    if (it == cache.end()) {
      PreStarResult pre = computePreStarUpward(m, Configuration{t.target, {f.b}}, options);
      ++out.preStarRuns;
      it = cache.emplace(key, pre.sets[t.source]).first;
    }
    if (!it->second.isFullN()) {
      out.holds = false;
      out.transition = i;
      out.counterexample = it->second.complement().minElement();
      return out;
    }
  }
  return out;
}

TransitionVerdict isStronglyMonotone(const Machine& m, const SolverOptions& options) {
  TransitionVerdict out;
  auto fail = [&](std::size_t i) {
    out.holds = false;
    out.transition = i;
    return out;
  };
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const Payload& p = m.transitions[i].payload;
    if (const auto* f = std::get_if<AffineMap1>(&p)) {
      auto dom = preimageClause(f->a, f->b, Clause::atLeast(0));
      if (dom && f->guard) {
        dom = dom->intersect(*f->guard);
      }
      if (!dom) {
        continue;
      }
      if (f->a < 0 || dom->hi() || dom->modulus() != 1) {
        return fail(i);
      }
    } else if (const auto* g = std::get_if<AffineMapD>(&p)) {
      QFFormula domain{relationalVariables(m.dim), Formula::constant(true)};
      domain.vars.resize(m.dim);
      std::vector<Formula> rows;
      bool nonnegative = true;
      for (std::size_t r = 0; r < m.dim; ++r) {
        Atom row;
        row.coeffs = g->matrix[r];
        row.rel = Rel::Ge;
        row.bound = -g->offset[r];
        rows.push_back(Formula::of(row));
        for (const Integer& v : g->matrix[r]) {
          nonnegative = nonnegative && v >= 0;
        }
      }
      if (nonnegative) {
        continue;
      }
      domain.body = Formula::conj(std::move(rows));
      if (existsSolution(domain, options)) {
        return fail(i);
      }
    } else if (const auto* op = std::get_if<MinskyOp>(&p)) {
      // Translation guards are upward closed; a zero test is the matrix with
      // -1 on its counter and a nonempty domain.
      if (op->kind == MinskyOp::Kind::ZeroTest) {
        return fail(i);
      }
    } else {
      throw InputError("strong monotony is decided for affine flavors only");
    }
  }
  return out;
}

std::vector<FunctionalityVerdict> isFunctional(const Machine& m,
                                               const SolverOptions& options) {
  std::vector<FunctionalityVerdict> out;
  for (const Transition& t : m.transitions) {
    if (const auto* r = std::get_if<Relational>(&t.payload)) {
      out.push_back(checkFunctional(r->formula, m.dim, options));
    } else {
      out.push_back(FunctionalityVerdict{});
    }
  }
  return out;
}

}  // namespace avasskit

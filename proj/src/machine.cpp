#include "avasskit/machine.hpp"

#include <algorithm>
#include <set>

#include "avasskit/errors.hpp"

namespace avasskit {

// ---------------------------------------------------------------------------
// Payloads

bool AffineMap1::inDomain(const Integer& n) const {
  return n >= 0 && a * n + b >= 0 && (!guard || guard->contains(n));
}

std::optional<Integer> AffineMap1::apply(const Integer& n) const {
  if (!inDomain(n)) {
    return std::nullopt;
  }
  return a * n + b;
}

SemilinearSet AffineMap1::domain() const {
  // a*n + b >= 0 over N is a half-line (a > 0), an initial segment (a < 0)
  // or all-or-nothing (a = 0).
  std::optional<Clause> base;
  if (a > 0) {
    base = Clause::make(ceilDiv(-b, a), std::nullopt);
  } else if (a < 0) {
    base = Clause::make(0, floorDiv(b, -a));
  } else if (b >= 0) {
    base = Clause::atLeast(0);
  }
  if (base && guard) {
    base = base->intersect(*guard);
  }
  return base ? SemilinearSet{*base} : SemilinearSet::empty();
}

std::vector<Integer> AffineMapD::image(const std::vector<Integer>& x) const {
  std::vector<Integer> out = offset;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      if (matrix[i][j] != 0) {
        out[i] += matrix[i][j] * x[j];
      }
    }
  }
  return out;
}

std::optional<std::vector<Integer>> AffineMapD::apply(
    const std::vector<Integer>& x) const {
  std::vector<Integer> out = image(x);
  for (const Integer& v : out) {
    if (v < 0) {
      return std::nullopt;
    }
  }
  return out;
}

AffineMapD AffineMapD::identity(std::size_t dim) {
  AffineMapD m;
  m.matrix.assign(dim, std::vector<Integer>(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) {
    m.matrix[i][i] = 1;
  }
  m.offset.assign(dim, 0);
  return m;
}

MinskyOp MinskyOp::nop(std::size_t dim) {
  return translate(std::vector<Integer>(dim, 0), std::vector<Integer>(dim, 0));
}

MinskyOp MinskyOp::inc(std::size_t dim, std::size_t k) {
  MinskyOp op = nop(dim);
  op.delta.at(k) = 1;
  return op;
}

MinskyOp MinskyOp::dec(std::size_t dim, std::size_t k) {
  MinskyOp op = nop(dim);
  op.delta.at(k) = -1;
  op.atLeast.at(k) = 1;
  return op;
}

MinskyOp MinskyOp::nonZero(std::size_t dim, std::size_t k) {
  MinskyOp op = nop(dim);
  op.atLeast.at(k) = 1;
  return op;
}

MinskyOp MinskyOp::zeroTest(std::size_t dim, std::size_t k) {
  if (k >= dim) {
    throw InputError("counter " + std::to_string(k + 1) + " out of range");
  }
  MinskyOp op;
  op.kind = Kind::ZeroTest;
  op.counter = k;
  return op;
}

MinskyOp MinskyOp::translate(std::vector<Integer> delta,
                             std::vector<Integer> atLeast) {
  if (delta.size() != atLeast.size()) {
    throw InputError("translation and guard sizes differ");
  }
  MinskyOp op;
  op.kind = Kind::Translate;
  for (std::size_t k = 0; k < delta.size(); ++k) {
    atLeast[k] = std::max({atLeast[k], Integer(-delta[k]), Integer(0)});
  }
  op.delta = std::move(delta);
  op.atLeast = std::move(atLeast);
  return op;
}

bool MinskyOp::hasMinimalGuard() const {
  if (kind == Kind::ZeroTest) {
    return true;
  }
  for (std::size_t k = 0; k < delta.size(); ++k) {
    if (atLeast[k] != std::max(Integer(-delta[k]), Integer(0))) {
      return false;
    }
  }
  return true;
}

std::optional<std::vector<Integer>> MinskyOp::apply(
    const std::vector<Integer>& x) const {
  if (kind == Kind::ZeroTest) {
    if (x.at(counter) != 0) {
      return std::nullopt;
    }
    return x;
  }
  std::vector<Integer> out = x;
  for (std::size_t k = 0; k < delta.size(); ++k) {
    if (x[k] < atLeast[k]) {
      return std::nullopt;
    }
    out[k] += delta[k];
  }
  return out;
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
  std::size_t h = std::hash<std::size_t>{}(c.state);
  for (const Integer& v : c.counters) {
    h ^= std::hash<Integer>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Machine

std::optional<std::size_t> Machine::stateIndex(const std::string& state) const {
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - states.begin());
}

std::size_t Machine::requireState(const std::string& state) const {
  auto index = stateIndex(state);
  if (!index) {
    throw InputError("unknown state '" + state + "'");
  }
  return *index;
}

std::size_t Machine::addState(const std::string& state) {
  if (stateIndex(state)) {
    throw InputError("duplicate state '" + state + "'");
  }
  states.push_back(state);
  return states.size() - 1;
}

std::string Machine::freshStateName(const std::string& base) const {
  if (!stateIndex(base)) {
    return base;
  }
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!stateIndex(candidate)) {
      return candidate;
    }
  }
}

std::optional<Configuration> Machine::initialConfiguration() const {
  if (!initialState) {
    return std::nullopt;
  }
  Configuration c{*initialState, initialCounters};
  if (c.counters.empty()) {
    c.counters.assign(dim, 0);
  }
  return c;
}

namespace {

Flavor flavorOf(const Payload& p) {
  return static_cast<Flavor>(p.index());
}

}  // namespace

void Machine::validate() const {
  if (dim == 0) {
    throw InputError("dimension must be positive");
  }
  std::set<std::string> seen;
  for (const std::string& s : states) {
    if (!seen.insert(s).second) {
      throw InputError("duplicate state '" + s + "'");
    }
  }
  if (initialState && *initialState >= states.size()) {
    throw InputError("initial state out of range");
  }
  if (!initialCounters.empty()) {
    if (initialCounters.size() != dim) {
      throw InputError("initial counters have dimension " +
                       std::to_string(initialCounters.size()) + ", expected " +
                       std::to_string(dim));
    }
    for (const Integer& v : initialCounters) {
      if (v < 0) {
        throw InputError("initial counters must be natural numbers");
      }
    }
  }
  if (flavor == Flavor::Affine1 && dim != 1) {
    throw InputError("1-dim affine transitions in a machine of dimension " +
                     std::to_string(dim));
  }
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const Transition& t = transitions[i];
    const std::string where = "transition " + std::to_string(i + 1) + ": ";
    if (t.source >= states.size() || t.target >= states.size()) {
      throw InputError(where + "unknown state");
    }
    if (flavorOf(t.payload) != flavor) {
      throw InputError(where + "mixed flavors: " + str(flavorOf(t.payload)) +
                       " in a " + str(flavor) + " machine");
    }
    if (const auto* m = std::get_if<AffineMapD>(&t.payload)) {
      bool ok = m->offset.size() == dim && m->matrix.size() == dim;
      for (const auto& row : m->matrix) {
        ok = ok && row.size() == dim;
      }
      if (!ok) {
        throw InputError(where + "dimension mismatch, expected " +
                         std::to_string(dim));
      }
    } else if (const auto* op = std::get_if<MinskyOp>(&t.payload)) {
      const bool ok = op->kind == MinskyOp::Kind::ZeroTest
                          ? op->counter < dim
                          : op->delta.size() == dim && op->atLeast.size() == dim;
      if (!ok) {
        throw InputError(where + "dimension mismatch, expected " +
                         std::to_string(dim));
      }
    } else if (const auto* r = std::get_if<Relational>(&t.payload)) {
      if (r->formula.arity() != 2 * dim) {
        throw InputError(where + "formula must range over " +
                         std::to_string(2 * dim) + " variables");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Classification

namespace {

// Conjunction with one equation x'_i = (terms over unprimed only) per i.
bool syntacticallyFunctional(const Relational& r, std::size_t dim) {
  const Formula& body = r.formula.body;
  std::vector<const Formula*> parts;
  if (body.kind == Formula::Kind::And) {
    for (const Formula& c : body.children) {
      parts.push_back(&c);
    }
  } else {
    parts.push_back(&body);
  }
  std::vector<bool> defined(dim, false);
  for (const Formula* p : parts) {
    if (p->kind != Formula::Kind::Atom || p->atom.rel != Rel::Eq) {
      continue;
    }
    std::size_t primed = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (p->atom.coeffs[dim + i] != 0) {
        ++primed;
        which = i;
      }
    }
    if (primed == 1) {
      defined[which] = true;
    }
  }
  return std::all_of(defined.begin(), defined.end(), [](bool b) { return b; });
}

}  // namespace

Classification classify(const Machine& m) {
  Classification c;
  c.flavor = m.flavor;
  switch (m.flavor) {
    case Flavor::Affine1: {
      bool identity = true, positive = true, offsets = true;
      for (const Transition& t : m.transitions) {
        const auto& f = std::get<AffineMap1>(t.payload);
        c.hasUserGuards = c.hasUserGuards || f.guard.has_value();
        identity = identity && f.a == 1;
        positive = positive && f.a >= 0;
        offsets = offsets && f.b >= 0;
      }
      c.isAVASS = !c.hasUserGuards;
      c.isVASS = c.isAVASS && identity;
      c.isPositiveAVASS = c.isAVASS && positive;
      c.isTotallyPositiveAVASS = c.isPositiveAVASS && offsets;
      c.isFunctionalSyntactically = true;
      break;
    }
    case Flavor::AffineD: {
      bool identity = true, positive = true, offsets = true;
      for (const Transition& t : m.transitions) {
        const auto& f = std::get<AffineMapD>(t.payload);
        identity = identity && f.matrix == AffineMapD::identity(m.dim).matrix;
        for (const auto& row : f.matrix) {
          for (const Integer& v : row) {
            positive = positive && v >= 0;
          }
        }
        for (const Integer& v : f.offset) {
          offsets = offsets && v >= 0;
        }
      }
      c.isAVASS = true;
      c.isVASS = identity;
      c.isPositiveAVASS = positive;
      c.isTotallyPositiveAVASS = positive && offsets;
      c.isFunctionalSyntactically = true;
      break;
    }
    case Flavor::Minsky: {
      bool minimal = true, zeroTests = false, offsets = true;
      for (const Transition& t : m.transitions) {
        const auto& op = std::get<MinskyOp>(t.payload);
        minimal = minimal && op.hasMinimalGuard();
        if (op.kind == MinskyOp::Kind::ZeroTest) {
          zeroTests = true;
        } else {
          for (const Integer& v : op.delta) {
            offsets = offsets && v >= 0;
          }
        }
      }
      c.isMinsky = true;
      c.isAVASS = minimal;
      c.isPositiveAVASS = minimal && !zeroTests;
      c.isVASS = c.isPositiveAVASS;
      c.isTotallyPositiveAVASS = c.isPositiveAVASS && offsets;
      c.isFunctionalSyntactically = true;
      break;
    }
    case Flavor::Relational: {
      c.isFunctionalSyntactically = std::all_of(
          m.transitions.begin(), m.transitions.end(), [&](const Transition& t) {
            return syntacticallyFunctional(std::get<Relational>(t.payload), m.dim);
          });
      break;
    }
  }
  return c;
}

std::optional<Configuration> apply(const Machine& m, const Transition& t,
                                   const Configuration& c) {
  if (c.counters.size() != m.dim) {
    throw InputError("configuration has dimension " +
                     std::to_string(c.counters.size()) + ", machine has " +
                     std::to_string(m.dim));
  }
  if (t.source != c.state) {
    throw InputError("transition does not leave state '" + m.states.at(c.state) +
                     "'");
  }
  for (const Integer& v : c.counters) {
    if (v < 0) {
      throw InputError("counters must be natural numbers");
    }
  }
  std::optional<std::vector<Integer>> next;
  if (const auto* f = std::get_if<AffineMap1>(&t.payload)) {
    if (auto v = f->apply(c.counters.front())) {
      next = std::vector<Integer>{*v};
    }
  } else if (const auto* g = std::get_if<AffineMapD>(&t.payload)) {
    next = g->apply(c.counters);
  } else if (const auto* op = std::get_if<MinskyOp>(&t.payload)) {
    next = op->apply(c.counters);
  } else {
    throw InputError("relational transitions have successor sets; use the simulator");
  }
  if (!next) {
    return std::nullopt;
  }
  return Configuration{t.target, std::move(*next)};
}

std::vector<std::size_t> negativeTransitions(const Machine& m) {
  if (m.flavor != Flavor::Affine1) {
    throw InputError("negative transitions are defined for 1-dim affine machines");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& f = std::get<AffineMap1>(m.transitions[i].payload);
    if (f.a < 0 && !f.domain().isEmpty()) {
      out.push_back(i);
    }
  }
  return out;
}

std::optional<AffineMapD> asAffine(const Machine& m, const Transition& t) {
  if (const auto* f = std::get_if<AffineMap1>(&t.payload)) {
    if (f->guard) {
      return std::nullopt;
    }
    return AffineMapD{{{f->a}}, {f->b}};
  }
  if (const auto* g = std::get_if<AffineMapD>(&t.payload)) {
    return *g;
  }
  if (const auto* op = std::get_if<MinskyOp>(&t.payload)) {
    if (!op->hasMinimalGuard()) {
      return std::nullopt;
    }
    AffineMapD out = AffineMapD::identity(m.dim);
    if (op->kind == MinskyOp::Kind::ZeroTest) {
      out.matrix[op->counter][op->counter] = -1;
    } else {
      out.offset = op->delta;
    }
    return out;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rendering

std::vector<std::string> relationalVariables(std::size_t dim) {
  std::vector<std::string> vars;
  if (dim == 1) {
    return {"x", "x'"};
  }
  for (std::size_t i = 1; i <= dim; ++i) {
    vars.push_back("x" + std::to_string(i));
  }
  for (std::size_t i = 1; i <= dim; ++i) {
    vars.push_back("x" + std::to_string(i) + "'");
  }
  return vars;
}

namespace {

std::string vectorStr(const std::vector<Integer>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + v[i].str();
  }
  return out + "]";
}

std::string minskyStr(const MinskyOp& op) {
  if (op.kind == MinskyOp::Kind::ZeroTest) {
    return "zero? " + std::to_string(op.counter + 1);
  }
  std::vector<std::string> parts;
  for (std::size_t k = 0; k < op.delta.size(); ++k) {
    const std::string index = std::to_string(k + 1);
    for (Integer i = 0; i < op.delta[k]; ++i) {
      parts.push_back("inc " + index);
    }
    for (Integer i = 0; i < -op.delta[k]; ++i) {
      parts.push_back("dec " + index);
    }
    const Integer needed = std::max(Integer(-op.delta[k]), Integer(0));
    if (op.atLeast[k] > needed) {
      parts.push_back(op.atLeast[k] == 1
                          ? "nz? " + index
                          : "ge? " + index + " " + op.atLeast[k].str());
    }
  }
  if (parts.empty()) {
    return "nop";
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out += (i ? ", " : "") + parts[i];
  }
  return out;
}

}  // namespace

std::string payloadStr(const Payload& p, std::size_t dim) {
  if (const auto* f = std::get_if<AffineMap1>(&p)) {
    std::string out = "x' = " + f->a.str() + "x + " + f->b.str();
    if (f->guard) {
      out += " ; guard " + f->guard->str();
    }
    return out;
  }
  if (const auto* g = std::get_if<AffineMapD>(&p)) {
    std::string out = "A = [";
    for (std::size_t i = 0; i < g->matrix.size(); ++i) {
      out += (i ? "," : "") + vectorStr(g->matrix[i]);
    }
    return out + "] ; b = " + vectorStr(g->offset);
  }
  if (const auto* op = std::get_if<MinskyOp>(&p)) {
    return minskyStr(*op);
  }
  const auto& r = std::get<Relational>(p);
  (void)dim;
  return "{ " + r.formula.str() + " }";
}

std::string describe(const Machine& m, std::size_t transition) {
  const Transition& t = m.transitions.at(transition);
  return "(" + m.states.at(t.source) + ", " + payloadStr(t.payload, m.dim) +
         ", " + m.states.at(t.target) + ")";
}

std::string str(const Machine& m, const Configuration& c) {
  std::string out = m.states.at(c.state) + ":";
  for (std::size_t i = 0; i < c.counters.size(); ++i) {
    out += (i ? "," : "") + c.counters[i].str();
  }
  return out;
}

std::string str(Flavor f) {
  switch (f) {
    case Flavor::Affine1: return "affine1";
    case Flavor::AffineD: return "affine";
    case Flavor::Minsky: return "minsky";
    case Flavor::Relational: return "relational";
  }
  return "?";
}

}  // namespace avasskit

#include "avasskit/formula.hpp"

#include <algorithm>

#include "avasskit/errors.hpp"

namespace avasskit {

Integer Atom::term(const std::vector<Integer>& env) const {
  Integer sum = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) {
      sum += coeffs[i] * env.at(i);
    }
  }
  return sum;
}

bool Atom::holds(const std::vector<Integer>& env) const {
  const Integer t = term(env);
  switch (rel) {
    case Rel::Le: return t <= bound;
    case Rel::Lt: return t < bound;
    case Rel::Eq: return t == bound;
    case Rel::Ne: return t != bound;
    case Rel::Ge: return t >= bound;
    case Rel::Gt: return t > bound;
    case Rel::Cong: return floorMod(t - bound, modulus) == 0;
    case Rel::NotCong: return floorMod(t - bound, modulus) != 0;
  }
  return false;
}

Atom Atom::negated() const {
  Atom out = *this;
  switch (rel) {
    case Rel::Le: out.rel = Rel::Gt; break;
    case Rel::Lt: out.rel = Rel::Ge; break;
    case Rel::Eq: out.rel = Rel::Ne; break;
    case Rel::Ne: out.rel = Rel::Eq; break;
    case Rel::Ge: out.rel = Rel::Lt; break;
    case Rel::Gt: out.rel = Rel::Le; break;
    case Rel::Cong: out.rel = Rel::NotCong; break;
    case Rel::NotCong: out.rel = Rel::Cong; break;
  }
  return out;
}

bool Atom::isConstant() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Integer& c) { return c == 0; });
}

Formula Formula::constant(bool value) {
  Formula f;
  f.kind = Kind::Const;
  f.value = value;
  return f;
}

Formula Formula::of(avasskit::Atom atom) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(atom);
  return f;
}

Formula Formula::conj(std::vector<Formula> parts) {
  if (parts.size() == 1) {
    return std::move(parts.front());
  }
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(parts);
  return f;
}

Formula Formula::disj(std::vector<Formula> parts) {
  if (parts.size() == 1) {
    return std::move(parts.front());
  }
  Formula f;
  f.kind = Kind::Or;
  f.children = std::move(parts);
  return f;
}

Formula Formula::negation(Formula inner) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(inner));
  return f;
}

bool evaluate(const Formula& f, const std::vector<Integer>& env) {
  switch (f.kind) {
    case Formula::Kind::Const:
      return f.value;
    case Formula::Kind::Atom:
      return f.atom.holds(env);
    case Formula::Kind::And:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const Formula& c) { return evaluate(c, env); });
    case Formula::Kind::Or:
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](const Formula& c) { return evaluate(c, env); });
    case Formula::Kind::Not:
      return !evaluate(f.children.front(), env);
  }
  return false;
}

std::size_t QFFormula::index(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) {
    throw InputError("unbound variable '" + name + "'");
  }
  return static_cast<std::size_t>(it - vars.begin());
}

bool QFFormula::evaluate(const std::vector<Integer>& env) const {
  if (env.size() != vars.size()) {
    throw InputError("expected " + std::to_string(vars.size()) +
                     " values, got " + std::to_string(env.size()));
  }
  return avasskit::evaluate(body, env);
}

bool QFFormula::evaluate(const std::map<std::string, Integer>& env) const {
  std::vector<Integer> values;
  values.reserve(vars.size());
  for (const std::string& v : vars) {
    auto it = env.find(v);
    if (it == env.end()) {
      throw InputError("missing binding for variable '" + v + "'");
    }
    values.push_back(it->second);
  }
  return avasskit::evaluate(body, values);
}

std::string QFFormula::str() const { return avasskit::str(body, vars); }

namespace {

Formula nnf(const Formula& f, bool negate, bool splitNe) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Const:
      return Formula::constant(f.value != negate);
    case K::Atom: {
      Atom a = negate ? f.atom.negated() : f.atom;
      if (a.rel == Rel::Ne && splitNe) {
        Atom lt = a;
        lt.rel = Rel::Lt;
        Atom gt = a;
        gt.rel = Rel::Gt;
        return Formula::disj({Formula::of(lt), Formula::of(gt)});
      }
      return Formula::of(std::move(a));
    }
    case K::Not:
      return nnf(f.children.front(), !negate, splitNe);
    case K::And:
    case K::Or: {
      std::vector<Formula> parts;
      for (const Formula& c : f.children) {
        parts.push_back(nnf(c, negate, splitNe));
      }
      bool isAnd = (f.kind == K::And) != negate;
      if (parts.empty()) {
        return Formula::constant(isAnd);
      }
      return isAnd ? Formula::conj(std::move(parts))
                   : Formula::disj(std::move(parts));
    }
  }
  return f;
}

std::vector<Conjunction> dnf(const Formula& f, std::size_t maxClauses) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Const:
      return f.value ? std::vector<Conjunction>{Conjunction{}}
                     : std::vector<Conjunction>{};
    case K::Atom:
      return {Conjunction{f.atom}};
    case K::Or: {
      std::vector<Conjunction> out;
      for (const Formula& c : f.children) {
        auto part = dnf(c, maxClauses);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > maxClauses) {
          throw BudgetExceeded("DNF exceeds " + std::to_string(maxClauses) +
                               " clauses");
        }
      }
      return out;
    }
    case K::And: {
      std::vector<Conjunction> out{Conjunction{}};
      for (const Formula& c : f.children) {
        auto part = dnf(c, maxClauses);
        std::vector<Conjunction> next;
        for (const Conjunction& left : out) {
          for (const Conjunction& right : part) {
            Conjunction joined = left;
            joined.insert(joined.end(), right.begin(), right.end());
            next.push_back(std::move(joined));
          }
          if (next.size() > maxClauses) {
            throw BudgetExceeded("DNF exceeds " + std::to_string(maxClauses) +
                                 " clauses");
          }
        }
        out = std::move(next);
      }
      return out;
    }
    case K::Not:
      break;
  }
  throw std::logic_error("dnf expects a negation-free formula");
}

std::string termStr(const std::vector<Integer>& coeffs,
                    const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Integer& c = coeffs[i];
    if (c == 0) {
      continue;
    }
    Integer mag = c < 0 ? Integer(-c) : c;
    if (out.empty()) {
      out += c < 0 ? "-" : "";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) {
      out += mag.str();
    }
    out += vars.at(i);
  }
  return out.empty() ? "0" : out;
}

const char* relStr(Rel rel) {
  switch (rel) {
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Cong: return "=";
    case Rel::NotCong: return "!=";
  }
  return "?";
}

std::string str(const Formula& f, const std::vector<std::string>& vars,
                int parentPrecedence) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Const:
      return f.value ? "true" : "false";
    case K::Atom:
      return str(f.atom, vars);
    case K::Not: {
      const Formula& c = f.children.front();
      std::string inner = str(c, vars, 3);
      return "not " + inner;
    }
    case K::And:
    case K::Or: {
      const int precedence = f.kind == K::And ? 2 : 1;
      if (f.children.empty()) {
        return f.kind == K::And ? "true" : "false";
      }
      std::string out;
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i > 0) {
          out += f.kind == K::And ? " and " : " or ";
        }
        out += str(f.children[i], vars, precedence);
      }
      return precedence < parentPrecedence ? "(" + out + ")" : out;
    }
  }
  return "";
}

}  // namespace

Formula toNnf(const Formula& f, bool splitNe) { return nnf(f, false, splitNe); }

std::vector<Conjunction> toDnf(const Formula& f, std::size_t maxClauses) {
  return dnf(nnf(f, false, true), maxClauses);
}

Atom remap(const Atom& a, const std::vector<std::size_t>& mapping,
           std::size_t arity) {
  Atom out = a;
  out.coeffs.assign(arity, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != 0) {
      out.coeffs.at(mapping.at(i)) += a.coeffs[i];
    }
  }
  return out;
}

Formula remap(const Formula& f, const std::vector<std::size_t>& mapping,
              std::size_t arity) {
  Formula out = f;
  if (f.kind == Formula::Kind::Atom) {
    out.atom = remap(f.atom, mapping, arity);
  }
  for (Formula& c : out.children) {
    c = remap(c, mapping, arity);
  }
  return out;
}

std::string str(const Atom& a, const std::vector<std::string>& vars) {
  std::string out = termStr(a.coeffs, vars) + " " + relStr(a.rel) + " " +
                    a.bound.str();
  if (a.rel == Rel::Cong || a.rel == Rel::NotCong) {
    out += " mod " + a.modulus.str();
  }
  return out;
}

std::string str(const Formula& f, const std::vector<std::string>& vars) {
  return str(f, vars, 0);
}

}  // namespace avasskit

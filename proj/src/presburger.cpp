#include "avasskit/presburger.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "avasskit/errors.hpp"

namespace avasskit {

namespace {

// ---------------------------------------------------------------------------
// Omega test

Integer rowValue(const LinearRow& row, const std::vector<Integer>& w,
                 std::size_t skip) {
  Integer sum = row.constant;
  for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
    if (i != skip && row.coeffs[i] != 0) {
      sum += row.coeffs[i] * w[i];
    }
  }
  return sum;
}

std::vector<Integer> negate(std::vector<Integer> v) {
  for (Integer& c : v) {
    c = -c;
  }
  return v;
}

// First nonzero entry positive.
bool canonicalSign(const std::vector<Integer>& v) {
  for (const Integer& c : v) {
    if (c != 0) {
      return c > 0;
    }
  }
  return true;
}

class Omega {
 public:
  Omega(std::size_t arity, const SolverOptions& options)
      : arity_(arity), options_(options) {}

  std::optional<std::vector<Integer>> solve(std::vector<LinearRow> rows) {
    if (++steps_ > options_.maxSteps) {
      throw BudgetExceeded("solver step budget of " +
                           std::to_string(options_.maxSteps) + " exhausted");
    }
    if (!normalize(rows)) {
      return std::nullopt;
    }
    const bool hasEquality = std::any_of(
        rows.begin(), rows.end(), [](const LinearRow& r) { return r.equality; });
    return hasEquality ? eliminateEquality(rows) : eliminateInequality(rows);
  }

 private:
  // Divides by coefficient gcds, drops trivial rows, merges parallel rows and
  // turns opposite tight pairs into equalities. False means unsatisfiable.
  bool normalize(std::vector<LinearRow>& rows) {
    std::map<std::vector<Integer>, Integer> lower;
    std::map<std::vector<Integer>, Integer> equal;
    for (LinearRow& r : rows) {
      Integer g = 0;
      for (const Integer& c : r.coeffs) {
        g = gcd(g, c);
      }
      if (g == 0) {
        if (r.equality ? r.constant != 0 : r.constant < 0) {
          return false;
        }
        continue;
      }
      if (r.equality) {
        if (floorMod(r.constant, g) != 0) {
          return false;
        }
        for (Integer& c : r.coeffs) {
          c /= g;
        }
        r.constant /= g;
        if (!canonicalSign(r.coeffs)) {
          r.coeffs = negate(std::move(r.coeffs));
          r.constant = -r.constant;
        }
        auto [it, inserted] = equal.emplace(r.coeffs, r.constant);
        if (!inserted && it->second != r.constant) {
          return false;
        }
      } else {
        for (Integer& c : r.coeffs) {
          c /= g;
        }
        r.constant = floorDiv(r.constant, g);
        auto [it, inserted] = lower.emplace(r.coeffs, r.constant);
        if (!inserted && r.constant < it->second) {
          it->second = r.constant;
        }
      }
    }
    rows.clear();
    for (auto it = lower.begin(); it != lower.end();) {
      if (canonicalSign(it->first)) {
        auto opposite = lower.find(negate(it->first));
        if (opposite != lower.end()) {
          Integer slack = it->second + opposite->second;
          if (slack < 0) {
            return false;
          }
          if (slack == 0) {
            auto [eq, inserted] = equal.emplace(it->first, it->second);
            if (!inserted && eq->second != it->second) {
              return false;
            }
            lower.erase(opposite);
            it = lower.erase(it);
            continue;
          }
        }
      }
      ++it;
    }
    for (auto& [coeffs, constant] : equal) {
      rows.push_back({coeffs, constant, true});
    }
    for (auto& [coeffs, constant] : lower) {
      rows.push_back({coeffs, constant, false});
    }
    return true;
  }

  std::optional<std::vector<Integer>> eliminateEquality(
      const std::vector<LinearRow>& rows) {
    std::size_t best = rows.size();
    std::size_t var = 0;
    Integer smallest = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].equality) {
        continue;
      }
      for (std::size_t k = 0; k < arity_; ++k) {
        const Integer& c = rows[r].coeffs[k];
        if (c != 0 && (best == rows.size() || abs(c) < smallest)) {
          best = r;
          var = k;
          smallest = abs(c);
        }
      }
    }
    LinearRow eq = rows[best];
    if (smallest == 1) {
      // x_k = s * (sum_{i != k} a_i x_i + c)
      const Integer s = -eq.coeffs[var];
      std::vector<LinearRow> next;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == best) {
          continue;
        }
        LinearRow row = rows[r];
        const Integer ek = row.coeffs[var];
        if (ek != 0) {
          for (std::size_t i = 0; i < arity_; ++i) {
            if (i != var) {
              row.coeffs[i] += ek * s * eq.coeffs[i];
            }
          }
          row.constant += ek * s * eq.constant;
          row.coeffs[var] = 0;
        }
        next.push_back(std::move(row));
      }
      auto w = solve(std::move(next));
      if (w) {
        (*w)[var] = s * rowValue(eq, *w, var);
      }
      return w;
    }
    // No unit coefficient: substitute x_k = t - sum q_i x_i - q_c, which
    // reduces the other coefficients of this equality modulo a_k.
    if (eq.coeffs[var] < 0) {
      eq.coeffs = negate(std::move(eq.coeffs));
      eq.constant = -eq.constant;
    }
    const Integer a = eq.coeffs[var];
    std::vector<Integer> q(arity_, 0);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (i != var) {
        q[i] = floorDiv(eq.coeffs[i], a);
      }
    }
    const Integer qc = floorDiv(eq.constant, a);
    std::vector<LinearRow> next = rows;
    for (LinearRow& row : next) {
      const Integer ek = row.coeffs[var];
      if (ek == 0) {
        continue;
      }
      for (std::size_t i = 0; i < arity_; ++i) {
        if (i != var) {
          row.coeffs[i] -= ek * q[i];
        }
      }
      row.constant -= ek * qc;
    }
    auto w = solve(std::move(next));
    if (!w) {
      return w;
    }
    Integer value = (*w)[var] - qc;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (i != var && q[i] != 0) {
        value -= q[i] * (*w)[i];
      }
    }
    (*w)[var] = value;
    return w;
  }

  std::optional<std::vector<Integer>> eliminateInequality(
      const std::vector<LinearRow>& rows) {
    if (rows.empty()) {
      return std::vector<Integer>(arity_, 0);
    }
    std::vector<std::size_t> lowers(arity_, 0);
    std::vector<std::size_t> uppers(arity_, 0);
    std::vector<bool> unitLower(arity_, true);
    std::vector<bool> unitUpper(arity_, true);
    for (const LinearRow& r : rows) {
      for (std::size_t k = 0; k < arity_; ++k) {
        if (r.coeffs[k] > 0) {
          ++lowers[k];
          unitLower[k] = unitLower[k] && r.coeffs[k] == 1;
        } else if (r.coeffs[k] < 0) {
          ++uppers[k];
          unitUpper[k] = unitUpper[k] && r.coeffs[k] == -1;
        }
      }
    }
    // A variable bounded on one side only: drop its rows, pick it last.
    for (std::size_t k = 0; k < arity_; ++k) {
      if (lowers[k] + uppers[k] > 0 && (lowers[k] == 0 || uppers[k] == 0)) {
        std::vector<LinearRow> rest;
        for (const LinearRow& r : rows) {
          if (r.coeffs[k] == 0) {
            rest.push_back(r);
          }
        }
        auto w = solve(std::move(rest));
        if (w) {
          extend(rows, k, *w);
        }
        return w;
      }
    }
    std::size_t var = arity_;
    bool exact = false;
    std::size_t bestScore = 0;
    for (std::size_t k = 0; k < arity_; ++k) {
      if (lowers[k] == 0) {
        continue;
      }
      const bool kExact = unitLower[k] || unitUpper[k];
      const std::size_t score = lowers[k] * uppers[k] + (kExact ? 0 : 1'000'000);
      if (var == arity_ || score < bestScore) {
        var = k;
        exact = kExact;
        bestScore = score;
      }
    }
    std::vector<LinearRow> real;
    std::vector<LinearRow> dark;
    Integer amax = 0;
    for (const LinearRow& r : rows) {
      if (r.coeffs[var] == 0) {
        real.push_back(r);
        dark.push_back(r);
      } else if (r.coeffs[var] < 0) {
        amax = std::max(amax, Integer(-r.coeffs[var]));
      }
    }
    for (const LinearRow& lo : rows) {
      if (lo.coeffs[var] <= 0) {
        continue;
      }
      for (const LinearRow& up : rows) {
        if (up.coeffs[var] >= 0) {
          continue;
        }
        const Integer a = lo.coeffs[var];
        const Integer b = -up.coeffs[var];
        LinearRow combined{std::vector<Integer>(arity_, 0),
                           b * lo.constant + a * up.constant, false};
        for (std::size_t i = 0; i < arity_; ++i) {
          combined.coeffs[i] = b * lo.coeffs[i] + a * up.coeffs[i];
        }
        real.push_back(combined);
        combined.constant -= (a - 1) * (b - 1);
        dark.push_back(std::move(combined));
      }
    }
    if (exact) {
      auto w = solve(std::move(real));
      if (w) {
        extend(rows, var, *w);
      }
      return w;
    }
    if (!solve(std::move(real))) {
      return std::nullopt;
    }
    if (auto w = solve(std::move(dark))) {
      extend(rows, var, *w);
      return w;
    }
    // Splinters: solutions outside the dark shadow sit close to a lower bound.
    for (const LinearRow& lo : rows) {
      const Integer a = lo.coeffs[var];
      if (a <= 0) {
        continue;
      }
      const Integer limit = floorDiv(amax * a - amax - a, amax);
      for (Integer i = 0; i <= limit; ++i) {
        std::vector<LinearRow> split = rows;
        split.push_back({lo.coeffs, lo.constant - i, true});
        if (auto w = solve(std::move(split))) {
          return w;
        }
      }
    }
    return std::nullopt;
  }

  // Sets w[k] to the largest lower bound, or the smallest upper bound when
  // unbounded below.
  void extend(const std::vector<LinearRow>& rows, std::size_t k,
              std::vector<Integer>& w) const {
    std::optional<Integer> lo;
    std::optional<Integer> hi;
    for (const LinearRow& r : rows) {
      const Integer& a = r.coeffs[k];
      if (a == 0) {
        continue;
      }
      const Integer rest = rowValue(r, w, k);
      if (a > 0) {
        Integer bound = ceilDiv(-rest, a);
        if (!lo || bound > *lo) {
          lo = bound;
        }
      } else {
        Integer bound = floorDiv(rest, -a);
        if (!hi || bound < *hi) {
          hi = bound;
        }
      }
    }
    if (lo && hi && *lo > *hi) {
      throw std::logic_error("omega test: empty extension interval");
    }
    w[k] = lo ? *lo : (hi ? *hi : Integer(0));
  }

  std::size_t arity_;
  const SolverOptions& options_;
  std::size_t steps_ = 0;
};

// ---------------------------------------------------------------------------
// Atoms to rows

struct RowBuilder {
  std::size_t declared;
  std::vector<LinearRow> rows;
  std::size_t aux = 0;
  bool contradiction = false;

  std::size_t fresh() { return declared + aux++; }

  LinearRow term(const Atom& a, const Integer& scale, const Integer& constant,
                 bool equality) const {
    LinearRow row{std::vector<Integer>(declared, 0), constant, equality};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      row.coeffs[i] = scale * a.coeffs[i];
    }
    return row;
  }

  void add(const Atom& a) {
    switch (a.rel) {
      case Rel::Le: rows.push_back(term(a, -1, a.bound, false)); break;
      case Rel::Lt: rows.push_back(term(a, -1, a.bound - 1, false)); break;
      case Rel::Ge: rows.push_back(term(a, 1, -a.bound, false)); break;
      case Rel::Gt: rows.push_back(term(a, 1, -a.bound - 1, false)); break;
      case Rel::Eq: rows.push_back(term(a, 1, -a.bound, true)); break;
      case Rel::Ne:
        throw std::logic_error("disequality must be split before solving");
      case Rel::Cong: {
        if (a.modulus == 1) {
          break;
        }
        LinearRow row = term(a, 1, -a.bound, true);
        row.coeffs.resize(declared + aux + 1, 0);
        row.coeffs[fresh()] = -a.modulus;
        rows.push_back(std::move(row));
        break;
      }
      case Rel::NotCong: {
        if (a.modulus == 1) {
          contradiction = true;
          break;
        }
        // t - c - m k - j = 0 with 1 <= j <= m - 1
        LinearRow row = term(a, 1, -a.bound, true);
        const std::size_t k = fresh();
        const std::size_t j = fresh();
        row.coeffs.resize(declared + aux, 0);
        row.coeffs[k] = -a.modulus;
        row.coeffs[j] = -1;
        rows.push_back(std::move(row));
        LinearRow low{std::vector<Integer>(declared + aux, 0), -1, false};
        low.coeffs[j] = 1;
        rows.push_back(std::move(low));
        LinearRow high{std::vector<Integer>(declared + aux, 0), a.modulus - 1,
                       false};
        high.coeffs[j] = -1;
        rows.push_back(std::move(high));
        break;
      }
    }
  }
};

void checkArity(std::size_t arity, const SolverOptions& options) {
  if (arity > options.maxVariables) {
    throw BudgetExceeded("formula has " + std::to_string(arity) +
                         " variables; the solver limit is " +
                         std::to_string(options.maxVariables));
  }
}

}  // namespace

std::optional<std::vector<Integer>> solveIntegerSystem(
    std::size_t arity, std::vector<LinearRow> rows,
    const SolverOptions& options) {
  for (LinearRow& r : rows) {
    if (r.coeffs.size() > arity) {
      throw std::invalid_argument("row wider than the system");
    }
    r.coeffs.resize(arity, 0);
  }
  Omega omega(arity, options);
  return omega.solve(std::move(rows));
}

std::optional<std::vector<Integer>> solveConjunction(
    std::size_t arity, const Conjunction& atoms, const SolverOptions& options) {
  RowBuilder builder{arity, {}};
  for (std::size_t i = 0; i < arity; ++i) {
    LinearRow natural{std::vector<Integer>(arity, 0), 0, false};
    natural.coeffs[i] = 1;
    builder.rows.push_back(std::move(natural));
  }
  for (const Atom& a : atoms) {
    if (a.rel == Rel::Ne) {
      Atom lt = a;
      lt.rel = Rel::Lt;
      Atom gt = a;
      gt.rel = Rel::Gt;
      Conjunction left;
      Conjunction right;
      for (const Atom& b : atoms) {
        left.push_back(&b == &a ? lt : b);
        right.push_back(&b == &a ? gt : b);
      }
      if (auto w = solveConjunction(arity, left, options)) {
        return w;
      }
      return solveConjunction(arity, right, options);
    }
  }
  for (const Atom& a : atoms) {
    builder.add(a);
  }
  if (builder.contradiction) {
    return std::nullopt;
  }
  auto w = solveIntegerSystem(arity + builder.aux, std::move(builder.rows),
                              options);
  if (!w) {
    return std::nullopt;
  }
  w->resize(arity);
  return w;
}

std::optional<std::vector<Integer>> existsSolution(const QFFormula& f,
                                                   const SolverOptions& options) {
  checkArity(f.arity(), options);
  for (const Conjunction& clause : toDnf(f.body)) {
    if (auto w = solveConjunction(f.arity(), clause, options)) {
      if (!f.evaluate(*w)) {
        throw std::logic_error("solver witness does not satisfy " + f.str());
      }
      return w;
    }
  }
  return std::nullopt;
}

FunctionalityVerdict checkFunctional(const QFFormula& phi, std::size_t dim,
                                     const SolverOptions& options) {
  if (phi.arity() != 2 * dim) {
    throw InputError("functionality check expects " + std::to_string(2 * dim) +
                     " variables, got " + std::to_string(phi.arity()));
  }
  QFFormula query;
  query.vars = phi.vars;
  for (std::size_t i = 0; i < dim; ++i) {
    query.vars.push_back(phi.vars[dim + i] + "'");
  }
  const std::size_t arity = 3 * dim;
  std::vector<std::size_t> first(2 * dim);
  std::vector<std::size_t> second(2 * dim);
  for (std::size_t i = 0; i < 2 * dim; ++i) {
    first[i] = i;
    second[i] = i < dim ? i : i + dim;
  }
  std::vector<Formula> differs;
  for (std::size_t i = 0; i < dim; ++i) {
    Atom ne;
    ne.coeffs.assign(arity, 0);
    ne.coeffs[dim + i] = 1;
    ne.coeffs[2 * dim + i] = -1;
    ne.rel = Rel::Ne;
    differs.push_back(Formula::of(std::move(ne)));
  }
  query.body = Formula::conj({remap(phi.body, first, arity),
                              remap(phi.body, second, arity),
                              Formula::disj(std::move(differs))});
  FunctionalityVerdict verdict;
  if (auto w = existsSolution(query, options)) {
    verdict.functional = false;
    verdict.witness = *w;
  }
  return verdict;
}

bool isQuasiOrdering(const QFFormula& f, const SolverOptions& options) {
  if (f.arity() != 2) {
    throw InputError("a relation on N needs exactly two variables, got " +
                     std::to_string(f.arity()));
  }
  QFFormula reflexive{{f.vars[0]},
                      Formula::negation(remap(f.body, {0, 0}, 1))};
  if (existsSolution(reflexive, options)) {
    return false;
  }
  QFFormula transitive{
      {"x", "y", "z"},
      Formula::conj({remap(f.body, {0, 1}, 3), remap(f.body, {1, 2}, 3),
                     Formula::negation(remap(f.body, {0, 2}, 3))})};
  return !existsSolution(transitive, options);
}

// ---------------------------------------------------------------------------
// wqo

namespace {

// Replaces t != c (mod m) by the disjunction of the other residues.
Formula expandNotCong(const Formula& f) {
  if (f.kind == Formula::Kind::Atom && f.atom.rel == Rel::NotCong) {
    std::vector<Formula> parts;
    for (Integer j = 1; j < f.atom.modulus; ++j) {
      Atom c = f.atom;
      c.rel = Rel::Cong;
      c.bound = floorMod(f.atom.bound + j, f.atom.modulus);
      parts.push_back(Formula::of(std::move(c)));
    }
    return parts.empty() ? Formula::constant(false)
                         : Formula::disj(std::move(parts));
  }
  Formula out = f;
  for (Formula& c : out.children) {
    c = expandNotCong(c);
  }
  return out;
}

ClassifiedAtom classify(Atom a) {
  ClassifiedAtom out;
  if (a.rel == Rel::Cong) {
    out.cls = AtomClass::Phi9;
    out.fate = Asymptotic::True;  // decided by residues
    out.atom = std::move(a);
    return out;
  }
  Integer cx = a.coeffs[0];
  Integer cy = a.coeffs[1];
  if (cx < 0 || (cx == 0 && cy < 0)) {
    a.coeffs = negate(std::move(a.coeffs));
    a.bound = -a.bound;
    a.rel = a.rel == Rel::Le ? Rel::Ge : Rel::Le;
    cx = -cx;
    cy = -cy;
  }
  const bool le = a.rel == Rel::Le;
  if (cx == 0 && cy == 0) {
    out.cls = AtomClass::Constant;
    out.fate = (le ? 0 <= a.bound : 0 >= a.bound) ? Asymptotic::True
                                                  : Asymptotic::False;
  } else if (cx > 0 && cy > 0) {
    out.cls = le ? AtomClass::Phi1 : AtomClass::Phi3;
    out.fate = le ? Asymptotic::False : Asymptotic::True;
  } else if (cx > 0 && cy < 0) {
    out.cls = le ? AtomClass::Phi2 : AtomClass::Phi4;
    out.fate = le ? Asymptotic::True : Asymptotic::FalseWhenFast;
  } else if (cx > 0) {
    out.cls = le ? AtomClass::Phi8 : AtomClass::Phi7;
    out.fate = le ? Asymptotic::False : Asymptotic::True;
  } else {
    out.cls = le ? AtomClass::Phi6 : AtomClass::Phi5;
    out.fate = le ? Asymptotic::False : Asymptotic::True;
  }
  out.atom = std::move(a);
  return out;
}

std::vector<ClassifiedAtom> normalizeAtom(const Atom& a) {
  Atom base = a;
  switch (a.rel) {
    case Rel::Lt:
      base.rel = Rel::Le;
      base.bound = a.bound - 1;
      return {classify(base)};
    case Rel::Gt:
      base.rel = Rel::Ge;
      base.bound = a.bound + 1;
      return {classify(base)};
    case Rel::Eq: {
      Atom ge = a;
      ge.rel = Rel::Ge;
      base.rel = Rel::Le;
      return {classify(base), classify(ge)};
    }
    case Rel::Cong:
      base.bound = floorMod(a.bound, a.modulus);
      return {classify(base)};
    default:
      return {classify(base)};
  }
}

bool congruencesHold(const WqoClause& clause, const Integer& x, const Integer& y) {
  const std::vector<Integer> env{x, y};
  for (const ClassifiedAtom& a : clause.atoms) {
    if (a.cls == AtomClass::Phi9 && !a.atom.holds(env)) {
      return false;
    }
  }
  return true;
}

Integer congruenceLcm(const WqoClause& clause) {
  Integer n = 1;
  for (const ClassifiedAtom& a : clause.atoms) {
    if (a.cls == AtomClass::Phi9) {
      n = lcm(n, a.atom.modulus);
    }
  }
  return n;
}

// Smallest y with c_x x - c_y' y < bound for an atom c_x x - c_y' y >= bound.
Integer escape(const Atom& a, const Integer& x) {
  const Integer cx = a.coeffs[0];
  const Integer cy = -a.coeffs[1];
  return floorDiv(cx * x - a.bound, cy) + 1;
}

Integer firstInClass(const Integer& from, const Integer& residue,
                     const Integer& modulus) {
  return from + floorMod(residue - from, modulus);
}

}  // namespace

WqoVerdict isWqo(const QFFormula& f, std::size_t witnessLength,
                 const SolverOptions& options) {
  WqoVerdict verdict;
  if (!isQuasiOrdering(f, options)) {
    verdict.kind = WqoVerdict::Kind::NotQuasiOrdering;
    QFFormula reflexive{{f.vars[0]},
                        Formula::negation(remap(f.body, {0, 0}, 1))};
    verdict.reason = existsSolution(reflexive, options) ? "not reflexive"
                                                        : "not transitive";
    return verdict;
  }
  for (const Conjunction& conj : toDnf(expandNotCong(toNnf(f.body)))) {
    WqoClause clause;
    for (const Atom& a : conj) {
      for (ClassifiedAtom& c : normalizeAtom(a)) {
        clause.kept = clause.kept && c.fate == Asymptotic::True;
        clause.atoms.push_back(std::move(c));
      }
    }
    verdict.clauses.push_back(std::move(clause));
  }
  Integer modulus = 1;
  Integer fullModulus = 1;
  for (const WqoClause& clause : verdict.clauses) {
    fullModulus = lcm(fullModulus, congruenceLcm(clause));
    if (clause.kept) {
      modulus = lcm(modulus, congruenceLcm(clause));
    }
  }
  verdict.modulus = modulus;
  if (modulus <= 256) {
    for (Integer x = 0; x < modulus; ++x) {
      for (Integer y = 0; y < modulus; ++y) {
        for (const WqoClause& clause : verdict.clauses) {
          if (clause.kept && congruencesHold(clause, x, y)) {
            verdict.residuePairs.emplace_back(x, y);
            break;
          }
        }
      }
    }
  }
  const std::size_t classes = toSize(modulus, std::size_t{1} << 24, "wqo modulus");
  for (std::size_t r = 0; r < classes; ++r) {
    const Integer rho = r;
    const bool covered = std::any_of(
        verdict.clauses.begin(), verdict.clauses.end(),
        [&](const WqoClause& c) { return c.kept && congruencesHold(c, rho, rho); });
    if (!covered) {
      verdict.kind = WqoVerdict::Kind::NotWqo;
      verdict.badResidue = rho;
      break;
    }
  }
  if (verdict.kind == WqoVerdict::Kind::Wqo) {
    return verdict;
  }

  // Witness: a sequence in the bad class, above every constant, growing fast
  // enough that clauses killed only by a mixed-sign >= atom stay false.
  const Integer& rho = *verdict.badResidue;
  Integer start = 1;
  for (const WqoClause& clause : verdict.clauses) {
    for (const ClassifiedAtom& a : clause.atoms) {
      if (a.cls != AtomClass::Phi9) {
        start = std::max(start, Integer(abs(a.atom.bound) + 1));
      }
    }
  }
  std::vector<const Atom*> growth;
  for (const WqoClause& clause : verdict.clauses) {
    if (!congruencesHold(clause, rho, rho)) {
      continue;
    }
    const ClassifiedAtom* killer = nullptr;
    for (const ClassifiedAtom& a : clause.atoms) {
      if (a.fate == Asymptotic::False) {
        killer = &a;
        break;
      }
      if (a.fate == Asymptotic::FalseWhenFast && !killer) {
        killer = &a;
      }
    }
    if (!killer) {
      throw std::logic_error("wqo: uncovered residue without a killing atom");
    }
    if (killer->fate == Asymptotic::FalseWhenFast) {
      growth.push_back(&killer->atom);
    }
  }
  Integer e = firstInClass(start, rho, fullModulus);
  for (std::size_t i = 0; i < witnessLength; ++i) {
    verdict.witness.push_back(e);
    Integer next = e + 1;
    for (const Atom* a : growth) {
      next = std::max(next, escape(*a, e));
    }
    e = firstInClass(next, rho, fullModulus);
  }
  return verdict;
}

std::string str(AtomClass cls) {
  switch (cls) {
    case AtomClass::Phi1: return "phi1";
    case AtomClass::Phi2: return "phi2";
    case AtomClass::Phi3: return "phi3";
    case AtomClass::Phi4: return "phi4";
    case AtomClass::Phi5: return "phi5";
    case AtomClass::Phi6: return "phi6";
    case AtomClass::Phi7: return "phi7";
    case AtomClass::Phi8: return "phi8";
    case AtomClass::Phi9: return "phi9";
    case AtomClass::Constant: return "constant";
  }
  return "?";
}

}  // namespace avasskit

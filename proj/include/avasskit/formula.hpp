#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "avasskit/integer.hpp"

namespace avasskit {

enum class Rel { Le, Lt, Eq, Ne, Ge, Gt, Cong, NotCong };

/// sum(coeffs[i] * v_i) rel bound; for Cong/NotCong the comparison is
/// modulo `modulus`. Variables are indices into the owning formula's list.
struct Atom {
  std::vector<Integer> coeffs;
  Rel rel = Rel::Le;
  Integer bound = 0;
  Integer modulus = 1;

  Integer term(const std::vector<Integer>& env) const;
  bool holds(const std::vector<Integer>& env) const;
  /// The complementary atom (Le <-> Gt, Eq <-> Ne, Cong <-> NotCong, ...).
  Atom negated() const;
  bool isConstant() const;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Formula {
  enum class Kind { Const, Atom, And, Or, Not };

  Kind kind = Kind::Const;
  bool value = true;
  avasskit::Atom atom;
  std::vector<Formula> children;

  static Formula constant(bool value);
  static Formula of(avasskit::Atom atom);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula negation(Formula inner);

  friend bool operator==(const Formula&, const Formula&) = default;
};

using Conjunction = std::vector<Atom>;

/// A formula together with its declared variables.
struct QFFormula {
  std::vector<std::string> vars;
  Formula body;

  std::size_t arity() const { return vars.size(); }
  std::size_t index(const std::string& name) const;

  bool evaluate(const std::vector<Integer>& env) const;
  /// Throws InputError when a declared variable has no binding.
  bool evaluate(const std::map<std::string, Integer>& env) const;
  std::string str() const;
};

bool evaluate(const Formula& f, const std::vector<Integer>& env);

/// Negation pushed to the atoms. With `splitNe`, x != c becomes x < c or
/// x > c so the result only contains Le, Lt, Eq, Ge, Gt, Cong, NotCong.
Formula toNnf(const Formula& f, bool splitNe = false);

/// Disjunctive normal form over NNF atoms; Ne is always split. Throws
/// BudgetExceeded past `maxClauses`.
std::vector<Conjunction> toDnf(const Formula& f, std::size_t maxClauses = 4096);

/// Renames variables: old index i becomes mapping[i] in a space of `arity`
/// variables.
Formula remap(const Formula& f, const std::vector<std::size_t>& mapping,
              std::size_t arity);
Atom remap(const Atom& a, const std::vector<std::size_t>& mapping,
           std::size_t arity);

/// Parseable rendering such as `x - y <= 0` or `x - y = 0 mod 2`.
std::string str(const Atom& a, const std::vector<std::string>& vars);
std::string str(const Formula& f, const std::vector<std::string>& vars);

}  // namespace avasskit

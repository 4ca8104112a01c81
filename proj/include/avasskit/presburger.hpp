#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avasskit/formula.hpp"

namespace avasskit {

struct SolverOptions {
  /// Declared-variable limit for existential queries.
  std::size_t maxVariables = 4;
  /// Elimination steps per query before giving up with BudgetExceeded.
  std::size_t maxSteps = 1'000'000;
};

/// Integer linear system over slots x_0..x_{n-1}: each row reads
/// sum(coeffs[i] * x_i) + constant (= or >=) 0. Variables are unrestricted
/// integers; add rows for sign constraints explicitly.
struct LinearRow {
  std::vector<Integer> coeffs;
  Integer constant = 0;
  bool equality = false;
};

/// Omega-test style decision with a witness, exact over the integers.
std::optional<std::vector<Integer>> solveIntegerSystem(
    std::size_t arity, std::vector<LinearRow> rows,
    const SolverOptions& options = {});

/// Satisfiability over naturals of a conjunction of atoms on `arity`
/// variables.
std::optional<std::vector<Integer>> solveConjunction(
    std::size_t arity, const Conjunction& atoms,
    const SolverOptions& options = {});

/// A satisfying assignment over N for the declared variables, or nullopt
/// when none exists. Throws BudgetExceeded above options.maxVariables.
std::optional<std::vector<Integer>> existsSolution(
    const QFFormula& f, const SolverOptions& options = {});

/// phi over x_1..x_d, x'_1..x'_d (in that order). Functional iff
/// phi(x,x') and phi(x,x'') force x' = x''.
struct FunctionalityVerdict {
  bool functional = true;
  /// x, x', x'' when not functional.
  std::vector<Integer> witness;
};
FunctionalityVerdict checkFunctional(const QFFormula& phi, std::size_t dim,
                                     const SolverOptions& options = {});

/// Reflexive and transitive on N; `f` has exactly two variables (x, y)
/// read as "x before y".
bool isQuasiOrdering(const QFFormula& f, const SolverOptions& options = {});

enum class AtomClass {
  Phi1,  // a x + b y <= n, a, b >= 1
  Phi2,  // a x - b y <= n, a >= 1, b >= 1
  Phi3,  // a x + b y >= n, a, b >= 1
  Phi4,  // a x - b y >= n, a >= 1, b >= 1
  Phi5,  // b y >= n
  Phi6,  // b y <= n
  Phi7,  // a x >= n
  Phi8,  // a x <= n
  Phi9,  // congruence
  Constant,
};

/// Truth of an atom along increasing pairs x < y with both large: true for
/// all large pairs, false for all large pairs, or false once y outgrows x.
enum class Asymptotic { True, False, FalseWhenFast };

struct ClassifiedAtom {
  Atom atom;  // Le/Ge with positive leading coefficient, or Cong
  AtomClass cls = AtomClass::Constant;
  Asymptotic fate = Asymptotic::True;
};

struct WqoClause {
  std::vector<ClassifiedAtom> atoms;
  /// No atom is asymptotically false.
  bool kept = true;
};

struct WqoVerdict {
  enum class Kind { Wqo, NotWqo, NotQuasiOrdering };

  Kind kind = Kind::Wqo;
  std::vector<WqoClause> clauses;
  /// lcm of congruence moduli in kept clauses.
  Integer modulus = 1;
  /// Residue pairs (x mod N, y mod N) admitted by kept clauses; filled when
  /// N is small enough to scan.
  std::vector<std::pair<Integer, Integer>> residuePairs;
  /// For NotWqo: the residue class without a diagonal pair and a sequence
  /// in it with no ascending pair.
  std::optional<Integer> badResidue;
  std::vector<Integer> witness;
  /// For NotQuasiOrdering: which law fails.
  std::string reason;
};

WqoVerdict isWqo(const QFFormula& f, std::size_t witnessLength = 200,
                 const SolverOptions& options = {});

std::string str(AtomClass cls);

}  // namespace avasskit

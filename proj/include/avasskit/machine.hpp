#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "avasskit/formula.hpp"
#include "avasskit/integer.hpp"
#include "avasskit/semiset.hpp"

namespace avasskit {

/// n -> a*n + b on N, defined where a*n + b >= 0 and n lies in the guard.
struct AffineMap1 {
  Integer a = 1;
  Integer b = 0;
  std::optional<Clause> guard;

  bool inDomain(const Integer& n) const;
  std::optional<Integer> apply(const Integer& n) const;
  SemilinearSet domain() const;

  friend bool operator==(const AffineMap1&, const AffineMap1&) = default;
};

/// x -> A x + b on N^d, defined where A x + b >= 0.
struct AffineMapD {
  std::vector<std::vector<Integer>> matrix;
  std::vector<Integer> offset;

  std::size_t dim() const { return offset.size(); }
  std::vector<Integer> image(const std::vector<Integer>& x) const;
  std::optional<std::vector<Integer>> apply(const std::vector<Integer>& x) const;
  static AffineMapD identity(std::size_t dim);

  friend bool operator==(const AffineMapD&, const AffineMapD&) = default;
};

/// Counter-machine instruction. A translation adds `delta` when every counter
/// k is at least `atLeast[k]` (which is never below -delta[k]); a zero test
/// passes only when its counter is 0 and changes nothing. Counters 0-based.
struct MinskyOp {
  enum class Kind { Translate, ZeroTest };

  Kind kind = Kind::Translate;
  std::vector<Integer> delta;
  std::vector<Integer> atLeast;
  std::size_t counter = 0;

  static MinskyOp nop(std::size_t dim);
  static MinskyOp inc(std::size_t dim, std::size_t k);
  static MinskyOp dec(std::size_t dim, std::size_t k);
  static MinskyOp nonZero(std::size_t dim, std::size_t k);
  static MinskyOp zeroTest(std::size_t dim, std::size_t k);
  /// Sequential composition of translations touching distinct effects; the
  /// guard is the least one making every part defined.
  static MinskyOp translate(std::vector<Integer> delta,
                            std::vector<Integer> atLeast);

  std::size_t dim() const { return kind == Kind::ZeroTest ? 0 : delta.size(); }
  /// Guard equals the minimum needed to stay in N.
  bool hasMinimalGuard() const;
  std::optional<std::vector<Integer>> apply(const std::vector<Integer>& x) const;

  friend bool operator==(const MinskyOp&, const MinskyOp&) = default;
};

/// Transition formula over x_1..x_d then x'_1..x'_d.
struct Relational {
  QFFormula formula;
};

using Payload = std::variant<AffineMap1, AffineMapD, MinskyOp, Relational>;

enum class Flavor { Affine1, AffineD, Minsky, Relational };

struct Transition {
  std::size_t source = 0;
  std::size_t target = 0;
  Payload payload;
};

struct Configuration {
  std::size_t state = 0;
  std::vector<Integer> counters;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const;
};

struct Classification {
  Flavor flavor = Flavor::Affine1;
  bool isVASS = false;
  bool isAVASS = false;
  bool isPositiveAVASS = false;
  bool isTotallyPositiveAVASS = false;
  bool isMinsky = false;
  bool isFunctionalSyntactically = false;
  bool hasUserGuards = false;
};

class Machine {
 public:
  std::string name;
  std::size_t dim = 1;
  Flavor flavor = Flavor::Affine1;
  std::vector<std::string> states;
  std::optional<std::size_t> initialState;
  /// Initial counter values; empty when the machine does not fix them.
  std::vector<Integer> initialCounters;
  std::vector<Transition> transitions;

  std::optional<std::size_t> stateIndex(const std::string& name) const;
  /// Index of `name`, throwing InputError when undeclared.
  std::size_t requireState(const std::string& name) const;
  std::size_t addState(const std::string& name);
  /// Fresh name derived from `base` that no state uses yet.
  std::string freshStateName(const std::string& base) const;

  std::optional<Configuration> initialConfiguration() const;

  /// Throws InputError on dangling endpoints, dimension mismatches or mixed
  /// flavors.
  void validate() const;
};

Classification classify(const Machine& m);

/// Successor of `c` under `t`, or nullopt outside the domain. Relational
/// payloads have successor sets; use the simulator for those.
std::optional<Configuration> apply(const Machine& m, const Transition& t,
                                   const Configuration& c);

/// Indices of 1-dim transitions with a < 0 and a nonempty domain.
std::vector<std::size_t> negativeTransitions(const Machine& m);

/// Affine reading of a transition when one exists: 1-dim maps without user
/// guard, d-dim maps, and Minsky ops with minimal guards (a zero test on k
/// is x_k' = -x_k).
std::optional<AffineMapD> asAffine(const Machine& m, const Transition& t);

/// `x` and `x'` in dimension one, `x1..xd` and `x1'..xd'` otherwise.
std::vector<std::string> relationalVariables(std::size_t dim);

/// DSL payload text, e.g. `x' = -1x + 19 ; guard [0..9] mod 1 = 0`.
std::string payloadStr(const Payload& p, std::size_t dim);
/// `(q1, x' = -1x + 19, q1)`.
std::string describe(const Machine& m, std::size_t transition);
/// `q1:5` or `q0:0,0`.
std::string str(const Machine& m, const Configuration& c);

std::string str(Flavor f);

}  // namespace avasskit

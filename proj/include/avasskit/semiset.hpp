#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "avasskit/integer.hpp"

namespace avasskit {

/// {n in N : lo <= n <= hi and n = residue (mod modulus)}; hi absent means
/// unbounded. Bounds are tightened to actual members at construction, so a
/// Clause value is never empty.
class Clause {
 public:
  /// Returns nullopt when the range contains no matching value.
  static std::optional<Clause> make(Integer lo, std::optional<Integer> hi,
                                    Integer modulus = 1, Integer residue = 0);
  static Clause atLeast(const Integer& lo);
  static Clause point(const Integer& n);

  const Integer& lo() const { return lo_; }
  const std::optional<Integer>& hi() const { return hi_; }
  const Integer& modulus() const { return modulus_; }
  const Integer& residue() const { return residue_; }
  bool bounded() const { return hi_.has_value(); }

  bool contains(const Integer& n) const;
  std::optional<Clause> intersect(const Clause& other) const;

  /// `[lo..hi] mod d = r`, hi omitted when unbounded.
  std::string str() const;

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  Clause() = default;

  Integer lo_;
  std::optional<Integer> hi_;
  Integer modulus_ = 1;
  Integer residue_ = 0;
};

/// Ultimately periodic description of a subset S of N: below `threshold`
/// membership is listed in `head`; from `threshold` on, n is in S iff
/// `periodic[n % period]`. Produced in minimal form (smallest period, then
/// smallest threshold), so two sets are equal iff their forms are equal.
struct NormalForm {
  std::size_t threshold = 0;
  std::size_t period = 1;
  std::vector<bool> head;
  std::vector<bool> periodic;

  bool contains(std::size_t n) const {
    return n < threshold ? head[n] : periodic[n % period];
  }
  bool contains(const Integer& n) const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Finite union of clauses. Immutable; the normal form is computed lazily
/// once and shared between copies.
class SemilinearSet {
 public:
  /// Upper bound on threshold and period of a materialized normal form.
  static constexpr std::size_t kNormalFormLimit = std::size_t{1} << 26;

  SemilinearSet();
  explicit SemilinearSet(std::vector<Clause> clauses);
  SemilinearSet(std::initializer_list<Clause> clauses);

  static SemilinearSet empty() { return SemilinearSet(); }
  static SemilinearSet naturals();
  static SemilinearSet point(const Integer& n);
  static SemilinearSet atLeast(const Integer& n);
  static SemilinearSet fromNormalForm(const NormalForm& form,
                                      std::size_t hintPeriod = 1);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const NormalForm& normalForm() const;

  bool contains(const Integer& n) const;
  bool isEmpty() const { return clauses_.empty(); }

  SemilinearSet unite(const SemilinearSet& other) const;
  SemilinearSet intersect(const SemilinearSet& other) const;
  SemilinearSet complement() const;

  bool equals(const SemilinearSet& other) const;
  bool subsetOf(const SemilinearSet& other) const;

  SemilinearSet upwardClosure() const;
  bool isFullN() const;
  std::optional<Integer> minElement() const;

  /// Same set, rewritten from the normal form: one unbounded clause per
  /// periodic residue plus maximal runs of leftover points. The period used
  /// may be any multiple of the minimal one that divides the clause moduli.
  SemilinearSet simplified() const;

  /// ` ∪ `-joined clauses, or `empty`.
  std::string str() const;

 private:
  struct Lazy {
    std::once_flag once;
    NormalForm form;
  };

  std::vector<Clause> clauses_;
  std::shared_ptr<Lazy> lazy_;
};

/// Numbers that fit in 64 bits, decimal strings otherwise.
nlohmann::json integerJson(const Integer& value);
void to_json(nlohmann::json& out, const Clause& clause);
void to_json(nlohmann::json& out, const SemilinearSet& set);

}  // namespace avasskit

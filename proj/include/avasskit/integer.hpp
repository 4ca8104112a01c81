#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace avasskit {

/// Arbitrary precision integer used for every counter value and coefficient.
using Integer = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// floor(a / b) for b != 0.
Integer floorDiv(const Integer& a, const Integer& b);
/// ceil(a / b) for b != 0.
Integer ceilDiv(const Integer& a, const Integer& b);
/// Representative of a modulo m in [0, |m|).
Integer floorMod(const Integer& a, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Solutions of a*x = c (mod m) for m >= 1, as the class x = residue (mod
/// modulus), or nullopt when there are none.
struct Congruence {
  Integer residue;
  Integer modulus;
};
std::optional<Congruence> solveLinearCongruence(const Integer& a,
                                                const Integer& c,
                                                const Integer& m);

/// Chinese remaindering of x = r1 (mod m1) and x = r2 (mod m2).
std::optional<Congruence> combineCongruences(const Congruence& first,
                                             const Congruence& second);

/// Converts to std::size_t, throwing BudgetExceeded when above `limit`.
std::size_t toSize(const Integer& value, std::size_t limit,
                   const char* what);

bool fitsInt64(const Integer& value);

inline std::string toString(const Integer& value) { return value.str(); }

}  // namespace avasskit

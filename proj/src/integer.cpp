#include "avasskit/integer.hpp"

#include <cstdint>
#include <limits>

#include "avasskit/errors.hpp"

namespace avasskit {

namespace mp = boost::multiprecision;

Integer floorDiv(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) {
    --q;
  }
  return q;
}

Integer ceilDiv(const Integer& a, const Integer& b) { return -floorDiv(-a, b); }

Integer floorMod(const Integer& a, const Integer& m) {
  Integer mm = mp::abs(m);
  Integer r = a % mm;
  if (r < 0) {
    r += mm;
  }
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  return mp::gcd(mp::abs(a), mp::abs(b));
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return mp::abs(a) / gcd(a, b) * mp::abs(b);
}

namespace {

// Extended Euclid: returns g and x with a*x = g (mod b), a, b >= 0.
std::pair<Integer, Integer> extendedGcd(const Integer& a, const Integer& b) {
  Integer oldR = a;
  Integer r = b;
  Integer oldS = 1;
  Integer s = 0;
  while (r != 0) {
    Integer q = oldR / r;
    Integer tmp = oldR - q * r;
    oldR = r;
    r = tmp;
    tmp = oldS - q * s;
    oldS = s;
    s = tmp;
  }
  return {oldR, oldS};
}

}  // namespace

std::optional<Congruence> solveLinearCongruence(const Integer& a,
                                                const Integer& c,
                                                const Integer& m) {
  Integer aa = floorMod(a, m);
  Integer cc = floorMod(c, m);
  Integer g = gcd(aa, m);  // gcd(0, m) = m
  if (floorMod(cc, g) != 0) {
    return std::nullopt;
  }
  Integer mod = m / g;
  if (mod == 1) {
    return Congruence{0, 1};
  }
  auto [g2, inv] = extendedGcd(floorMod(aa / g, mod), mod);
  (void)g2;
  return Congruence{floorMod((cc / g) * inv, mod), mod};
}

std::optional<Congruence> combineCongruences(const Congruence& first,
                                             const Congruence& second) {
  // x = r1 + m1*t, need m1*t = r2 - r1 (mod m2)
  auto t = solveLinearCongruence(first.modulus, second.residue - first.residue,
                                 second.modulus);
  if (!t) {
    return std::nullopt;
  }
  Integer mod = lcm(first.modulus, second.modulus);
  return Congruence{floorMod(first.residue + first.modulus * t->residue, mod),
                    mod};
}

std::size_t toSize(const Integer& value, std::size_t limit, const char* what) {
  if (value < 0 || value > limit) {
    throw BudgetExceeded(std::string(what) + " exceeds limit " +
                         std::to_string(limit) + " (value " + value.str() +
                         ")");
  }
  return value.convert_to<std::size_t>();
}

bool fitsInt64(const Integer& value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max();
}

ParseError::ParseError(const std::string& message, SourceSpan span)
    : InputError(std::to_string(span.line) + ":" + std::to_string(span.column) +
                 ": " + message),
      span_(span),
      detail_(message) {}

}  // namespace avasskit

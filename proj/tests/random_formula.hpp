#pragma once

#include <random>

#include "avasskit/formula.hpp"

namespace testgen {

using avasskit::Atom;
using avasskit::Formula;
using avasskit::Integer;
using avasskit::Rel;

// Small random quantifier-free formulas with bounded coefficients.
struct RandomFormulas {
  std::mt19937 rng;
  std::size_t arity;
  long maxCoeff = 3;
  long maxBound = 8;
  long maxModulus = 4;

  RandomFormulas(std::size_t arity, unsigned seed) : rng(seed), arity(arity) {}

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  }

  Atom atom() {
    Atom a;
    a.coeffs.resize(arity);
    for (auto& c : a.coeffs) {
      c = uniform(-maxCoeff, maxCoeff);
    }
    a.rel = static_cast<Rel>(uniform(0, 7));
    a.bound = uniform(-maxBound, maxBound);
    if (a.rel == Rel::Cong || a.rel == Rel::NotCong) {
      a.modulus = uniform(2, maxModulus);
      a.bound = avasskit::floorMod(a.bound, a.modulus);
    }
    return a;
  }

  Formula formula(int depth) {
    const long pick = depth <= 0 ? 0 : uniform(0, 3);
    switch (pick) {
      case 1:
        return Formula::conj({formula(depth - 1), formula(depth - 1)});
      case 2:
        return Formula::disj({formula(depth - 1), formula(depth - 1)});
      case 3:
        return Formula::negation(formula(depth - 1));
      default:
        return Formula::of(atom());
    }
  }
};

}  // namespace testgen

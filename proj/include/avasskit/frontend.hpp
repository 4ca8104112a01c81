#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "avasskit/formula.hpp"
#include "avasskit/machine.hpp"

namespace avasskit {

/// Parses the line-oriented machine DSL:
///
///     machine M1
///     dim 1
///     state q1 init
///     state q2
///     trans q1 -> q2 : x' = 1x + -13
///     trans q1 -> q1 : x' = -1x + 19 ; guard [0..19] mod 1 = 0
///
/// Other payloads: `A = [[2,0],[0,1]] ; b = [1,1]`, Minsky op lists such as
/// `inc 1, dec 2` or `zero? 1`, and relational `{ 2x' = x }`. An initial
/// state may fix counters: `state q0 init 1,1,1,0`. Errors are ParseError.
Machine parseMachine(std::string_view text);

/// Canonical DSL text; parseMachine(serializeMachine(m)) reproduces m.
std::string serializeMachine(const Machine& m);

/// One formula over the given variables, e.g. `x <= y and x = y mod 2`.
QFFormula parseFormula(std::string_view text, std::vector<std::string> vars);

/// A formula file: `vars x y` on the first line, the formula after it.
QFFormula parseFormulaFile(std::string_view text);

/// `q1:5` or `q0:0,0` against the machine's states and dimension.
Configuration parseConfiguration(const Machine& m, std::string_view text);

}  // namespace avasskit

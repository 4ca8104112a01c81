#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "avasskit/decide.hpp"
#include "avasskit/machine.hpp"
#include "avasskit/presburger.hpp"
#include "avasskit/prestar.hpp"
#include "avasskit/simulator.hpp"

namespace avasskit {

nlohmann::json toJson(const Machine& m, const Configuration& c);
nlohmann::json toJson(const Classification& c);
nlohmann::json toJson(const Machine& m);
/// Sets keyed by state name, plus the target.
nlohmann::json toJson(const Machine& m, const PreStarResult& r);
nlohmann::json toJson(const Machine& m, const TransitionVerdict& v);
nlohmann::json toJson(const WqoVerdict& v);
nlohmann::json toJson(const Machine& m, const Run& run);

/// `flavor: affine1`, then one `name: yes|no` line per flag.
std::string renderText(const Classification& c);
/// One `state: set` line per state.
std::string renderText(const Machine& m, const PreStarResult& r);
/// `q1:0 -(x' = -1x + 19)-> q1:19`, one step per line.
std::string renderText(const Machine& m, const Run& run);

std::string str(WqoVerdict::Kind kind);

}  // namespace avasskit

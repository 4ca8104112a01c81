#include "avasskit/render.hpp"

#include "avasskit/frontend.hpp"

namespace avasskit {

namespace {

nlohmann::json vectorJson(const std::vector<Integer>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const Integer& x : v) {
    out.push_back(integerJson(x));
  }
  return out;
}

std::vector<std::pair<const char*, bool>> flags(const Classification& c) {
  return {{"vass", c.isVASS},
          {"avass", c.isAVASS},
          {"positive_avass", c.isPositiveAVASS},
          {"totally_positive_avass", c.isTotallyPositiveAVASS},
          {"minsky", c.isMinsky},
          {"functional_syntactically", c.isFunctionalSyntactically},
          {"user_guards", c.hasUserGuards}};
}

}  // namespace

nlohmann::json toJson(const Machine& m, const Configuration& c) {
  return {{"state", m.states.at(c.state)}, {"counters", vectorJson(c.counters)}};
}

nlohmann::json toJson(const Classification& c) {
  nlohmann::json out{{"flavor", str(c.flavor)}};
  for (const auto& [name, value] : flags(c)) {
    out[name] = value;
  }
  return out;
}

nlohmann::json toJson(const Machine& m) {
  nlohmann::json transitions = nlohmann::json::array();
  for (const Transition& t : m.transitions) {
    transitions.push_back({{"source", m.states[t.source]},
                           {"target", m.states[t.target]},
                           {"payload", payloadStr(t.payload, m.dim)}});
  }
  nlohmann::json out{{"name", m.name},
                     {"dim", m.dim},
                     {"flavor", str(m.flavor)},
                     {"states", m.states},
                     {"transitions", transitions},
                     {"text", serializeMachine(m)}};
  if (auto init = m.initialConfiguration()) {
    out["initial"] = toJson(m, *init);
  } else if (m.initialState) {
    out["initial"] = {{"state", m.states[*m.initialState]}};
  }
  return out;
}

nlohmann::json toJson(const Machine& m, const PreStarResult& r) {
  nlohmann::json sets = nlohmann::json::object();
  nlohmann::json text = nlohmann::json::object();
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    sets[m.states[q]] = r.sets[q];
    text[m.states[q]] = r.sets[q].str();
  }
  return {{"target", toJson(m, r.target)},
          {"upward", r.upward},
          {"sets", sets},
          {"text", text},
          {"cycles", r.cycles},
          {"sweeps", r.sweeps}};
}

nlohmann::json toJson(const Machine& m, const TransitionVerdict& v) {
  nlohmann::json out{{"holds", v.holds}, {"prestar_runs", v.preStarRuns}};
  if (v.transition) {
    out["transition"] = {{"index", *v.transition}, {"text", describe(m, *v.transition)}};
  }
  if (v.counterexample) {
    out["counterexample"] = integerJson(*v.counterexample);
  }
  return out;
}

std::string str(WqoVerdict::Kind kind) {
  switch (kind) {
    case WqoVerdict::Kind::Wqo: return "wqo";
    case WqoVerdict::Kind::NotWqo: return "not-wqo";
    case WqoVerdict::Kind::NotQuasiOrdering: return "not-quasi-ordering";
  }
  return "?";
}

nlohmann::json toJson(const WqoVerdict& v) {
  nlohmann::json clauses = nlohmann::json::array();
  for (const WqoClause& c : v.clauses) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const ClassifiedAtom& a : c.atoms) {
      atoms.push_back({{"atom", avasskit::str(a.atom, {"x", "y"})},
                       {"class", str(a.cls)}});
    }
    clauses.push_back({{"atoms", atoms}, {"kept", c.kept}});
  }
  nlohmann::json out{{"result", str(v.kind)},
                     {"modulus", integerJson(v.modulus)},
                     {"clauses", clauses}};
  if (v.badResidue) {
    out["bad_residue"] = integerJson(*v.badResidue);
  }
  if (!v.witness.empty()) {
    out["witness"] = vectorJson(v.witness);
  }
  if (!v.reason.empty()) {
    out["reason"] = v.reason;
  }
  return out;
}

nlohmann::json toJson(const Machine& m, const Run& run) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < run.transitions.size(); ++i) {
    steps.push_back({{"transition", run.transitions[i]},
                     {"to", toJson(m, run.configs[i + 1])}});
  }
  return {{"from", toJson(m, run.configs.front())}, {"steps", steps}};
}

std::string renderText(const Classification& c) {
  std::string out = "flavor: " + str(c.flavor) + "\n";
  for (const auto& [name, value] : flags(c)) {
    out += std::string(name) + ": " + (value ? "yes" : "no") + "\n";
  }
  return out;
}

std::string renderText(const Machine& m, const PreStarResult& r) {
  std::string out;
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    out += m.states[q] + ": " + r.sets[q].str() + "\n";
  }
  return out;
}

std::string renderText(const Machine& m, const Run& run) {
  std::string out = str(m, run.configs.front()) + "\n";
  for (std::size_t i = 0; i < run.transitions.size(); ++i) {
    out += "  -(" + payloadStr(m.transitions[run.transitions[i]].payload, m.dim) +
           ")-> " + str(m, run.configs[i + 1]) + "\n";
  }
  return out;
}

}  // namespace avasskit

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "avasskit/decide.hpp"
#include "avasskit/errors.hpp"
#include "avasskit/frontend.hpp"
#include "avasskit/generators.hpp"
#include "avasskit/omega.hpp"
#include "avasskit/render.hpp"

using namespace avasskit;
using nlohmann::json;

namespace {

constexpr int kExitInput = 3;
constexpr int kExitBudget = 4;

// What a verb produced: a verdict (absent for generators), a text body and
// the JSON fields that go with it.
struct Outcome {
  std::optional<bool> verdict;
  std::string text;
  json data = json::object();
};

// Input file errors are reported against this path.
std::string g_currentFile;

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read '" + path + "'");
  }
  g_currentFile = path;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Machine loadMachine(const std::string& path) {
  Machine m = parseMachine(readFile(path));
  g_currentFile = "<argument>";
  return m;
}

Configuration sourceOf(const Machine& m, const std::string& from) {
  if (!from.empty()) {
    return parseConfiguration(m, from);
  }
  if (auto init = m.initialConfiguration()) {
    return *init;
  }
  throw InputError("no --from given and the machine has no initial configuration");
}

std::string yesNo(bool b) { return b ? "yes" : "no"; }

void print(const Outcome& o, bool asJson) {
  if (asJson) {
    // Verdict first, the rest in key order.
    nlohmann::ordered_json out;
    if (o.verdict) {
      out["verdict"] = yesNo(*o.verdict);
    }
    for (const auto& [key, value] : o.data.items()) {
      out[key] = value;
    }
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (o.verdict) {
    std::cout << "verdict: " << yesNo(*o.verdict) << "\n";
  }
  std::cout << o.text;
}

struct Args {
  std::string file;
  std::string from;
  std::string to;
  std::string state;
  std::string value;
  std::string property = "avass";
  std::string pre;
  std::string minsky;
  std::string tiles;
  std::string kind;
  bool upward = false;
  bool totalPositive = false;
  bool viaReduction = false;
  bool post = false;
  long long maxValue = 1000;
  std::size_t maxConfigs = 2'000'000;
  std::size_t maxCycles = 100000;
};

PreStarOptions preStarOptions(const Args& a) {
  PreStarOptions o;
  o.maxCycles = a.maxCycles;
  return o;
}

SimBudget simBudget(const Args& a) {
  SimBudget b;
  b.maxValue = a.maxValue;
  b.maxConfigs = a.maxConfigs;
  return b;
}

Outcome runParse(const Args& a) {
  const Machine m = loadMachine(a.file);
  return {true, serializeMachine(m), toJson(m)};
}

Outcome runClassify(const Args& a) {
  const Machine m = loadMachine(a.file);
  const Classification c = classify(m);
  const std::map<std::string, bool> props{
      {"vass", c.isVASS},
      {"avass", c.isAVASS},
      {"positive", c.isPositiveAVASS},
      {"totally-positive", c.isTotallyPositiveAVASS},
      {"minsky", c.isMinsky},
      {"functional", c.isFunctionalSyntactically}};
  auto it = props.find(a.property);
  if (it == props.end()) {
    throw InputError("unknown property '" + a.property + "'");
  }
  json data = toJson(c);
  data["property"] = a.property;
  return {it->second, "property: " + a.property + "\n" + renderText(c), data};
}

Outcome runPreStar(const Args& a) {
  const Machine m = loadMachine(a.file);
  const Configuration target = parseConfiguration(m, a.state + ":" + a.value);
  const PreStarResult r = a.upward ? computePreStarUpward(m, target, preStarOptions(a))
                                   : computePreStar(m, target, preStarOptions(a));
  Outcome o{true, renderText(m, r), toJson(m, r)};
  // The verdict reports whether the source lies in the set.
  std::optional<Configuration> source;
  if (!a.from.empty()) {
    source = parseConfiguration(m, a.from);
  } else {
    source = m.initialConfiguration();
  }
  if (source) {
    o.verdict = r.sets[source->state].contains(source->counters[0]);
    o.data["source"] = toJson(m, *source);
    o.text = "source: " + str(m, *source) + "\n" + o.text;
  }
  return o;
}

Outcome runReach(const Args& a) {
  const Machine m = loadMachine(a.file);
  const Configuration from = sourceOf(m, a.from);
  const Configuration to = parseConfiguration(m, a.to);
  Outcome o;
  o.data = {{"from", toJson(m, from)}, {"to", toJson(m, to)}};
  std::optional<Run> run;
  if (a.totalPositive) {
    o.data["method"] = "omega";
    if (auto path = omegaWitness(m, from, to)) {
      run = Run{{}, {from}};
      for (std::size_t i : *path) {
        run->configs.push_back(*apply(m, m.transitions[i], run->configs.back()));
        run->transitions.push_back(i);
      }
    }
    o.verdict = run.has_value();
  } else {
    o.data["method"] = "prestar";
    o.verdict = reachable(m, from, to, preStarOptions(a));
    if (*o.verdict) {
      run = findPath(m, from, Goal{to, false}, simBudget(a));
    }
  }
  if (run) {
    o.text = renderText(m, *run);
    o.data["run"] = toJson(m, *run);
  }
  return o;
}

Outcome runCover(const Args& a) {
  const Machine m = loadMachine(a.file);
  const Configuration from = sourceOf(m, a.from);
  const Configuration to = parseConfiguration(m, a.to);
  const bool yes = a.viaReduction ? coverableViaReduction(m, from, to, preStarOptions(a))
                                  : coverable(m, from, to, preStarOptions(a));
  Outcome o{yes, "", {{"from", toJson(m, from)},
                      {"to", toJson(m, to)},
                      {"method", a.viaReduction ? "reduction" : "upward-prestar"}}};
  if (yes) {
    if (auto run = findPath(m, from, Goal{to, true}, simBudget(a))) {
      o.text = renderText(m, *run);
      o.data["run"] = toJson(m, *run);
    }
  }
  return o;
}

Outcome runStateReach(const Args& a) {
  const Machine m = loadMachine(a.file);
  const Configuration from = sourceOf(m, a.from);
  const std::size_t state = m.requireState(a.state);
  return {controlStateReachable(m, from, state, preStarOptions(a)), "",
          {{"from", toJson(m, from)}, {"state", a.state}}};
}

Outcome fromTransitionVerdict(const Machine& m, const TransitionVerdict& v) {
  Outcome o{v.holds, "", toJson(m, v)};
  if (v.transition) {
    o.text += "witness: " + describe(m, *v.transition) + "\n";
  }
  if (v.counterexample) {
    o.text += "counterexample: " + m.states[m.transitions[*v.transition].source] + ":" +
              v.counterexample->str() + "\n";
  }
  return o;
}

Outcome runWsts(const Args& a) {
  const Machine m = loadMachine(a.file);
  return fromTransitionVerdict(m, isWellStructured(m, preStarOptions(a)));
}

Outcome runStrongMono(const Args& a) {
  const Machine m = loadMachine(a.file);
  return fromTransitionVerdict(m, isStronglyMonotone(m));
}

Outcome runWqo(const Args& a) {
  const QFFormula f = parseFormulaFile(readFile(a.file));
  g_currentFile = "<argument>";
  const WqoVerdict v = isWqo(f);
  Outcome o{v.kind == WqoVerdict::Kind::Wqo, "result: " + str(v.kind) + "\n", toJson(v)};
  if (v.badResidue) {
    o.text += "bad residue: " + v.badResidue->str() + " mod " + v.modulus.str() + "\n";
  }
  if (!v.witness.empty()) {
    o.text += "witness:";
    for (std::size_t i = 0; i < std::min<std::size_t>(v.witness.size(), 8); ++i) {
      o.text += " " + v.witness[i].str();
    }
    o.text += v.witness.size() > 8 ? " ...\n" : "\n";
  }
  if (!v.reason.empty()) {
    o.text += "reason: " + v.reason + "\n";
  }
  return o;
}

Outcome runFunctional(const Args& a) {
  const Machine m = loadMachine(a.file);
  const auto verdicts = isFunctional(m);
  Outcome o{true, "", {{"transitions", json::array()}}};
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    const auto& v = verdicts[i];
    *o.verdict = *o.verdict && v.functional;
    json entry{{"index", i}, {"text", describe(m, i)}, {"functional", v.functional}};
    std::string line = describe(m, i) + ": " + yesNo(v.functional);
    if (!v.functional) {
      json witness = json::array();
      for (const Integer& x : v.witness) {
        witness.push_back(integerJson(x));
      }
      entry["witness"] = witness;
      line += " (witness";
      for (const Integer& x : v.witness) {
        line += " " + x.str();
      }
      line += ")";
    }
    o.data["transitions"].push_back(entry);
    o.text += line + "\n";
  }
  return o;
}

Outcome runGen(const Args& a) {
  std::vector<Machine> machines;
  if (a.kind == "n1" || a.kind == "n2") {
    if (a.minsky.empty() || a.state.empty()) {
      throw InputError("gen " + a.kind + " needs --minsky FILE and --target STATE");
    }
    const Machine m = loadMachine(a.minsky);
    const std::size_t q1 = m.requireState(a.state);
    machines.push_back(a.kind == "n1" ? buildN1(m, q1) : buildN2(m, q1));
  } else if (a.kind == "pcp") {
    if (a.tiles.empty()) {
      throw InputError("gen pcp needs --tiles a1:b1,a2:b2,...");
    }
    machines.push_back(buildPcpMachine(parsePcp(a.tiles)));
  } else if (a.kind == "examples") {
    machines = builtinExamples();
  } else {
    throw InputError("unknown generator '" + a.kind + "'");
  }
  Outcome o;
  o.data["machines"] = json::array();
  for (std::size_t i = 0; i < machines.size(); ++i) {
    o.text += (i ? "\n" : "") + serializeMachine(machines[i]);
    o.data["machines"].push_back(toJson(machines[i]));
  }
  return o;
}

Outcome runSim(const Args& a) {
  const Machine m = loadMachine(a.file);
  const Configuration from = sourceOf(m, a.from);
  const SimBudget budget = simBudget(a);
  Outcome o;
  o.data["from"] = toJson(m, from);
  auto listing = [&](const Exploration& e) {
    std::vector<Configuration> sorted(e.configs.begin(), e.configs.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
      return std::tie(x.state, x.counters) < std::tie(y.state, y.counters);
    });
    json configs = json::array();
    for (const Configuration& c : sorted) {
      o.text += str(m, c) + "\n";
      configs.push_back(toJson(m, c));
    }
    o.data["configurations"] = configs;
    o.data["truncated"] = e.truncated;
    o.text = std::string("truncated: ") + yesNo(e.truncated) + "\n" + o.text;
  };
  if (!a.to.empty()) {
    const Goal goal{parseConfiguration(m, a.to), a.upward};
    bool truncated = false;
    auto run = findPath(m, from, goal, budget, &truncated);
    o.verdict = run.has_value();
    o.data["mode"] = "path";
    o.data["truncated"] = truncated;
    if (run) {
      o.text = renderText(m, *run);
      o.data["run"] = toJson(m, *run);
    }
  } else if (!a.pre.empty()) {
    const Goal goal{parseConfiguration(m, a.pre), a.upward};
    const Exploration e = preStarBounded(m, goal, budget);
    o.data["mode"] = "pre";
    o.verdict = e.configs.count(from) > 0;
    listing(e);
  } else {
    const Exploration e = postStar(m, from, budget);
    o.data["mode"] = "post";
    o.verdict = !e.truncated;
    listing(e);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyses for affine counter machines: Pre*, reachability, "
               "coverability, WSTS and wqo checks, reduction generators."};
  app.set_version_flag("--version", std::string("avass ") + AVASSKIT_VERSION);
  app.require_subcommand(1);
  bool asJson = false;
  app.add_flag("--json", asJson, "Print JSON instead of text");
  Args a;

  auto machineVerb = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", a.file, "Machine file")->required();
    sub->add_flag("--json", asJson, "Print JSON instead of text");
    return sub;
  };
  auto addBudget = [&](CLI::App* sub) {
    sub->add_option("--max-value", a.maxValue, "Largest counter value explored")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--max-configs", a.maxConfigs, "Configuration cap for exploration");
  };

  std::map<CLI::App*, Outcome (*)(const Args&)> verbs;
  verbs[machineVerb("parse", "Check a machine file and print its canonical form")] = runParse;

  CLI::App* classifySub = machineVerb("classify", "Report machine classes");
  classifySub->add_option("--is", a.property,
                          "Class the verdict reports: vass, avass, positive, "
                          "totally-positive, minsky, functional");
  verbs[classifySub] = runClassify;

  CLI::App* prestar = machineVerb("prestar", "Pre* of a configuration as semilinear sets");
  prestar->add_option("--state", a.state, "Target state")->required();
  prestar->add_option("--value", a.value, "Target counter value")->required();
  prestar->add_flag("--upward", a.upward, "Pre* of all configurations above the target");
  prestar->add_option("--from", a.from, "Configuration whose membership is the verdict");
  prestar->add_option("--max-cycles", a.maxCycles, "Simple-cycle enumeration cap");
  verbs[prestar] = runPreStar;

  CLI::App* reach = machineVerb("reach", "Reachability between configurations");
  reach->add_option("--from", a.from, "Source, e.g. q1:0 (default: initial)");
  reach->add_option("--to", a.to, "Target, e.g. q1:19")->required();
  reach->add_flag("--total-positive", a.totalPositive,
                  "Use the ω-abstraction (totally-positive AVASS, any dimension)");
  reach->add_option("--max-cycles", a.maxCycles, "Simple-cycle enumeration cap");
  addBudget(reach);
  verbs[reach] = runReach;

  CLI::App* cover = machineVerb("cover", "Coverability of a configuration");
  cover->add_option("--from", a.from, "Source (default: initial)");
  cover->add_option("--to", a.to, "Configuration to cover")->required();
  cover->add_flag("--via-reduction", a.viaReduction,
                  "Decide through the reachability reduction");
  cover->add_option("--max-cycles", a.maxCycles, "Simple-cycle enumeration cap");
  addBudget(cover);
  verbs[cover] = runCover;

  CLI::App* stateReach = machineVerb("state-reach", "Control-state reachability");
  stateReach->add_option("--from", a.from, "Source (default: initial)");
  stateReach->add_option("--state", a.state, "Control state")->required();
  verbs[stateReach] = runStateReach;

  CLI::App* wsts = machineVerb("wsts", "Is the 1-dim AVASS well structured");
  wsts->add_option("--max-cycles", a.maxCycles, "Simple-cycle enumeration cap");
  verbs[wsts] = runWsts;
  verbs[machineVerb("strong-mono", "Is every transition strongly monotone")] =
      runStrongMono;
  verbs[machineVerb("wqo", "Is a formula file over x, y a well quasi ordering")] = runWqo;
  verbs[machineVerb("functional", "Is every transition functional")] = runFunctional;

  CLI::App* gen = app.add_subcommand("gen", "Emit a reduction machine as DSL text");
  gen->add_option("kind", a.kind, "n1, n2, pcp or examples")->required();
  gen->add_option("--minsky", a.minsky, "2-counter Minsky machine (n1, n2)");
  gen->add_option("--target", a.state, "State q1 of the reduction (n1, n2)");
  gen->add_option("--tiles", a.tiles, "PCP tiles a1:b1,a2:b2,...");
  gen->add_flag("--json", asJson, "Print JSON instead of text");
  verbs[gen] = runGen;

  CLI::App* sim = machineVerb("sim", "Bounded explicit exploration");
  sim->add_option("--from", a.from, "Source (default: initial)");
  sim->add_flag("--post", a.post, "Forward closure (default)");
  sim->add_option("--pre", a.pre, "Backward closure of a configuration");
  sim->add_option("--to", a.to, "Search a run to this configuration");
  sim->add_flag("--upward", a.upward, "Goals include larger counters");
  addBudget(sim);
  verbs[sim] = runSim;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    for (const auto& [sub, run] : verbs) {
      if (sub->parsed()) {
        print(run(a), asJson);
      }
    }
  } catch (const ParseError& e) {
    std::cerr << "avass: " << g_currentFile << ":" << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "avass: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "avass: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  }
  return 0;
}

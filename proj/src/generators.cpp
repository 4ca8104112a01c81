#include "avasskit/generators.hpp"

#include <algorithm>

#include "avasskit/errors.hpp"
#include "avasskit/frontend.hpp"

namespace avasskit {

namespace {

const Machine& requireMinsky2(const Machine& m, std::size_t q1) {
  if (m.flavor != Flavor::Minsky || m.dim != 2) {
    throw InputError("expected a 2-counter Minsky machine");
  }
  if (!m.initialState) {
    throw InputError("the Minsky machine needs an initial state");
  }
  if (q1 >= m.states.size()) {
    throw InputError("target state out of range");
  }
  return m;
}

Integer power(long base, const Integer& exponent) {
  Integer out = 1;
  for (Integer i = 0; i < exponent; ++i) {
    out *= base;
  }
  return out;
}

Atom linear(Integer cx, Integer cx2, Rel rel, Integer bound, Integer modulus = 1) {
  Atom a;
  a.coeffs = {std::move(cx), std::move(cx2)};
  a.rel = rel;
  a.bound = std::move(bound);
  a.modulus = std::move(modulus);
  return a;
}

Payload relational(std::vector<Atom> atoms) {
  std::vector<Formula> parts;
  for (Atom& a : atoms) {
    parts.push_back(Formula::of(std::move(a)));
  }
  return Relational{QFFormula{relationalVariables(1), Formula::conj(std::move(parts))}};
}

// x' = x * up / down on the encoding 2^c1 3^c2 c, guarded by divisibility.
Payload n1Translate(const MinskyOp& op) {
  Integer up = 1, down = 1, guard = 1;
  const long primes[2] = {2, 3};
  for (std::size_t k = 0; k < 2; ++k) {
    const Integer& d = op.delta[k];
    (d >= 0 ? up : down) *= power(primes[k], d >= 0 ? d : Integer(-d));
    guard *= power(primes[k], op.atLeast[k]);
  }
  std::vector<Atom> atoms;
  if (guard > 1) {
    atoms.push_back(linear(1, 0, Rel::Cong, 0, guard));
  }
  atoms.push_back(linear(-up, down, Rel::Eq, 0));
  return relational(std::move(atoms));
}

Payload n1ZeroTest(std::size_t counter) {
  return relational({linear(1, 0, Rel::NotCong, 0, counter == 0 ? 2 : 3),
                     linear(-1, 1, Rel::Eq, 0)});
}

std::vector<Integer> delta4(std::initializer_list<std::pair<std::size_t, long>> parts) {
  std::vector<Integer> d(4, 0);
  for (auto [k, v] : parts) {
    d[k] = v;
  }
  return d;
}

MinskyOp translate4(std::vector<Integer> delta) {
  return MinskyOp::translate(std::move(delta), std::vector<Integer>(4, 0));
}

class N2Builder {
 public:
  explicit N2Builder(const Machine& m) {
    out_.name = m.name + "_n2";
    out_.dim = 4;
    out_.flavor = Flavor::Minsky;
    out_.states = m.states;
  }

  std::size_t state(const std::string& base) {
    return out_.addState(out_.freshStateName(base));
  }

  void add(std::size_t from, std::size_t to, MinskyOp op) {
    out_.transitions.push_back({from, to, std::move(op)});
  }

  // Moves c3 into c4 while lowering counter k by the same amount, applies
  // `test` to the difference left in k, then moves everything back.
  std::size_t differenceCheck(std::size_t from, std::size_t k, MinskyOp test) {
    const std::string tag = "c" + std::to_string(k + 1);
    const std::size_t drain = state(tag + "_drain");
    const std::size_t park = state(tag + "_park");
    const std::size_t parked = state(tag + "_parked");
    const std::size_t restore = state(tag + "_restore");
    const std::size_t done = state(tag + "_checked");
    add(from, drain, MinskyOp::nop(4));
    add(drain, drain, MinskyOp::dec(4, 3));
    add(drain, park, MinskyOp::zeroTest(4, 3));
    add(park, park, translate4(delta4({{k, -1}, {2, -1}, {3, 1}})));
    add(park, parked, MinskyOp::zeroTest(4, 2));
    add(parked, restore, std::move(test));
    add(restore, restore, translate4(delta4({{k, 1}, {2, 1}, {3, -1}})));
    add(restore, done, MinskyOp::zeroTest(4, 3));
    return done;
  }

  void simulate(const Transition& t) {
    const auto& op = std::get<MinskyOp>(t.payload);
    if (op.kind == MinskyOp::Kind::ZeroTest) {
      const std::size_t done = differenceCheck(t.source, op.counter,
                                               MinskyOp::zeroTest(4, op.counter));
      add(done, t.target, MinskyOp::nop(4));
      return;
    }
    std::size_t at = t.source;
    for (std::size_t k = 0; k < 2; ++k) {
      if (op.atLeast[k] > 0) {
        std::vector<Integer> need(4, 0);
        need[k] = op.atLeast[k];
        at = differenceCheck(at, k, MinskyOp::translate(std::vector<Integer>(4, 0), need));
      }
    }
    add(at, t.target, translate4({op.delta[0], op.delta[1], 0, 0}));
  }

  void finish(std::size_t q0, std::size_t q1) {
    // Zero-test chain (q0; 0,0,0,0) -> (q1; 0,0,0,0).
    std::size_t at = q0;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::size_t next = k == 3 ? q1 : state("final" + std::to_string(k + 1));
      add(at, next, MinskyOp::zeroTest(4, k));
      at = next;
    }
    const std::size_t existing = out_.states.size();
    const std::size_t reset = state("reset");
    std::size_t checked = reset;
    for (std::size_t k = 0; k < 4; ++k) {
      add(reset, reset, MinskyOp::dec(4, k));
      const std::size_t next = state("reset_zero" + std::to_string(k + 1));
      add(checked, next, MinskyOp::zeroTest(4, k));
      checked = next;
    }
    const std::size_t pump = state("pump");
    const MinskyOp incAll = translate4(delta4({{0, 1}, {1, 1}, {2, 1}}));
    add(checked, pump, incAll);
    add(pump, pump, incAll);
    add(pump, q0, MinskyOp::nop(4));
    for (std::size_t q = 0; q < out_.states.size(); ++q) {
      if (q != reset && (q < existing || q > reset)) {
        add(q, reset, MinskyOp::nop(4));
      }
    }
    out_.initialState = q0;
    out_.initialCounters = {1, 1, 1, 0};
  }

  Machine take() { return std::move(out_); }

 private:
  Machine out_;
};

Integer binaryValue(const std::string& s) {
  Integer v = 0;
  for (char c : s) {
    v = 2 * v + (c == '1' ? 1 : 0);
  }
  return v;
}

}  // namespace

Machine buildN1(const Machine& m, std::size_t q1) {
  requireMinsky2(m, q1);
  Machine out;
  out.name = m.name + "_n1";
  out.dim = 1;
  out.flavor = Flavor::Relational;
  out.states = m.states;
  const std::size_t q0 = *m.initialState;
  out.initialState = q0;
  out.initialCounters = {1};
  for (const Transition& t : m.transitions) {
    const auto& op = std::get<MinskyOp>(t.payload);
    out.transitions.push_back({t.source, t.target,
                               op.kind == MinskyOp::Kind::ZeroTest
                                   ? n1ZeroTest(op.counter)
                                   : n1Translate(op)});
  }
  for (std::size_t q = 0; q < out.states.size(); ++q) {
    out.transitions.push_back({q, q0, relational({linear(-6, 1, Rel::Eq, 1)})});
  }
  out.transitions.push_back(
      {q0, q1, relational({linear(1, 0, Rel::Eq, 0), linear(0, 1, Rel::Eq, 0)})});
  return out;
}

Machine buildN2(const Machine& m, std::size_t q1) {
  requireMinsky2(m, q1);
  N2Builder b(m);
  for (const Transition& t : m.transitions) {
    b.simulate(t);
  }
  b.finish(*m.initialState, q1);
  return b.take();
}

std::pair<Integer, Integer> decodeN1(const Integer& n) {
  if (n <= 0) {
    throw InputError("the N1 encoding is defined for positive values");
  }
  Integer rest = n, twos = 0, threes = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 3 == 0) {
    rest /= 3;
    ++threes;
  }
  return {twos, threes};
}

void PcpInstance::validate() const {
  if (tiles.empty()) {
    throw InputError("a PCP instance needs at least one tile");
  }
  for (const auto& [a, b] : tiles) {
    for (const std::string* s : {&a, &b}) {
      if (s->find_first_not_of("01") != std::string::npos) {
        throw InputError("PCP tiles must be binary strings, got '" + *s + "'");
      }
    }
  }
}

std::string PcpInstance::str() const {
  std::string out;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    out += (i ? "," : "") + tiles[i].first + ":" + tiles[i].second;
  }
  return out;
}

PcpInstance parsePcp(const std::string& text) {
  PcpInstance p;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string tile = text.substr(start, end - start);
    const std::size_t colon = tile.find(':');
    if (colon == std::string::npos) {
      throw InputError("PCP tile '" + tile + "' is not of the form a:b");
    }
    p.tiles.emplace_back(tile.substr(0, colon), tile.substr(colon + 1));
    start = end + 1;
  }
  p.validate();
  return p;
}

Machine buildPcpMachine(const PcpInstance& p) {
  p.validate();
  Machine m;
  m.name = "pcp";
  m.dim = 2;
  m.flavor = Flavor::AffineD;
  const std::size_t q0 = m.addState("q0");
  const std::size_t q1 = m.addState("q1");
  const std::size_t q2 = m.addState("q2");
  m.initialState = q0;
  m.initialCounters = {0, 0};
  m.transitions.push_back({q0, q1, AffineMapD{{{0, 0}, {0, 0}}, {1, 1}}});
  for (const auto& [a, b] : p.tiles) {
    AffineMapD f{{{power(2, a.size()), 0}, {0, power(2, b.size())}},
                 {binaryValue(a), binaryValue(b)}};
    m.transitions.push_back({q1, q1, std::move(f)});
  }
  m.transitions.push_back({q1, q2, AffineMapD::identity(2)});
  m.transitions.push_back({q2, q2, AffineMapD{{{1, 0}, {0, 1}}, {-1, -1}}});
  return m;
}

std::optional<std::vector<std::size_t>> solvePcpViaMachine(const PcpInstance& p,
                                                           const SimBudget& budget,
                                                           bool* truncated) {
  const Machine m = buildPcpMachine(p);
  const Goal goal{Configuration{2, {0, 0}}, false};
  const Configuration start{0, {0, 0}};
  bool cut = false;
  std::optional<Run> best;
  // The empty tile sequence also reaches the goal; start after one tile.
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    auto c = apply(m, m.transitions[0], start);
    c = apply(m, m.transitions[i + 1], *c);
    bool tileCut = false;
    auto run = findPath(m, *c, goal, budget, &tileCut);
    cut = cut || tileCut;
    if (run) {
      run->transitions.insert(run->transitions.begin(), {0, i + 1});
      if (!best || run->transitions.size() < best->transitions.size()) {
        best = std::move(run);
      }
    }
  }
  if (truncated) {
    *truncated = cut;
  }
  if (!best) {
    return std::nullopt;
  }
  std::vector<std::size_t> tiles;
  for (std::size_t t : best->transitions) {
    if (t >= 1 && t <= p.tiles.size()) {
      tiles.push_back(t - 1);
    }
  }
  return tiles;
}

std::vector<Machine> builtinExamples() {
  static const char* const kM1 =
      "machine M1\nstate q1 init\nstate q2\n"
      "trans q1 -> q2 : x' = 1x + -13\n"
      "trans q1 -> q1 : x' = -1x + 19\n"
      "trans q2 -> q2 : x' = 1x + -3\n"
      "trans q2 -> q1 : x' = 1x + 0\n";
  static const char* const kM2 =
      "machine M2\nstate q1 init\nstate q2\n"
      "trans q1 -> q2 : x' = 1x + 1\n"
      "trans q1 -> q1 : x' = -1x + 19\n"
      "trans q2 -> q2 : x' = 1x + -3\n"
      "trans q2 -> q1 : x' = 1x + 0\n";
  static const char* const kGadget =
      "machine gadget\ndim 2\nstate q init 0,0\n"
      "trans q -> q : A = [[-1,0],[0,1]] ; b = [0,0]\n";
  return {parseMachine(kM1), parseMachine(kM2), parseMachine(kGadget)};
}

}  // namespace avasskit

#include "avasskit/omega.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "avasskit/errors.hpp"

namespace avasskit {

bool OmegaVector::hasOmega() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const auto& e) { return !e.has_value(); });
}

std::string OmegaVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += i ? "," : "";
    out += entries[i] ? entries[i]->str() : "ω";
  }
  return out + ")";
}

OmegaVector abstract(const std::vector<Integer>& v, const Integer& cutoff) {
  OmegaVector out{cutoff, {}};
  for (const Integer& x : v) {
    if (x < 0) {
      throw InputError("counters must be natural numbers");
    }
    out.entries.push_back(x <= cutoff ? std::optional<Integer>(x) : std::nullopt);
  }
  return out;
}

OmegaVector applyOmega(const AffineMapD& f, const OmegaVector& v) {
  if (f.dim() != v.dim()) {
    throw InputError("dimension mismatch in the ω-abstraction");
  }
  OmegaVector out{v.cutoff, {}};
  for (std::size_t r = 0; r < f.dim(); ++r) {
    if (f.offset[r] < 0) {
      throw InputError("negative offset in the ω-abstraction");
    }
    std::optional<Integer> sum = f.offset[r];
    for (std::size_t c = 0; c < f.dim() && sum; ++c) {
      const Integer& k = f.matrix[r][c];
      if (k < 0) {
        throw InputError("negative matrix entry in the ω-abstraction");
      }
      if (k == 0) {
        continue;
      }
      if (!v.entries[c]) {
        sum.reset();
        break;
      }
      *sum += k * *v.entries[c];
      if (*sum > v.cutoff) {
        sum.reset();
      }
    }
    if (sum && *sum > v.cutoff) {
      sum.reset();
    }
    out.entries.push_back(std::move(sum));
  }
  return out;
}

OmegaVector applyOmega(const Machine& m, const Transition& t, const OmegaVector& v) {
  auto f = asAffine(m, t);
  if (!f) {
    throw InputError("transition has no affine reading");
  }
  return applyOmega(*f, v);
}

std::optional<std::vector<std::size_t>> omegaWitness(const Machine& m,
                                                     const Configuration& from,
                                                     const Configuration& to) {
  if (!classify(m).isTotallyPositiveAVASS) {
    throw InputError("the ω-abstraction needs a totally-positive AVASS");
  }
  for (const Configuration* c : {&from, &to}) {
    if (c->state >= m.states.size() || c->counters.size() != m.dim) {
      throw InputError("configuration does not fit the machine");
    }
  }
  Integer cutoff = 1;
  for (const Integer& v : to.counters) {
    cutoff = std::max(cutoff, v);
  }
  using Node = std::pair<std::size_t, OmegaVector>;
  const Node start{from.state, abstract(from.counters, cutoff)};
  const Node goal{to.state, abstract(to.counters, cutoff)};
  // Parent pointers: node -> (predecessor, transition).
  std::map<Node, std::optional<std::pair<Node, std::size_t>>> seen;
  seen.emplace(start, std::nullopt);
  std::deque<Node> queue{start};
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (node == goal) {
      std::vector<std::size_t> path;
      for (auto it = seen.find(node); it->second; it = seen.find(it->second->first)) {
        path.push_back(it->second->second);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      const Transition& t = m.transitions[i];
      if (t.source != node.first) {
        continue;
      }
      Node next{t.target, applyOmega(m, t, node.second)};
      if (seen.emplace(next, std::make_pair(node, i)).second) {
        queue.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

bool reachableTotallyPositive(const Machine& m, const Configuration& from,
                              const Configuration& to) {
  return omegaWitness(m, from, to).has_value();
}

}  // namespace avasskit

#include "avasskit/semiset.hpp"

#include <algorithm>
#include <cstdint>

#include <nlohmann/json.hpp>

#include "avasskit/errors.hpp"

namespace avasskit {

// ---------------------------------------------------------------------------
// Clause

std::optional<Clause> Clause::make(Integer lo, std::optional<Integer> hi,
                                   Integer modulus, Integer residue) {
  if (modulus < 1) {
    throw InputError("clause modulus must be positive, got " + modulus.str());
  }
  if (lo < 0) {
    lo = 0;
  }
  Clause c;
  c.modulus_ = modulus;
  c.residue_ = floorMod(residue, modulus);
  c.lo_ = lo + floorMod(c.residue_ - lo, modulus);
  if (hi) {
    Integer last = *hi - floorMod(*hi - c.residue_, modulus);
    if (last < c.lo_) {
      return std::nullopt;
    }
    c.hi_ = last;
    if (c.hi_ == c.lo_) {
      // A single point: normalize to modulus one.
      c.modulus_ = 1;
      c.residue_ = 0;
    }
  }
  return c;
}

Clause Clause::atLeast(const Integer& lo) { return *make(lo, std::nullopt); }

Clause Clause::point(const Integer& n) { return *make(n, n); }

bool Clause::contains(const Integer& n) const {
  if (n < lo_ || (hi_ && n > *hi_)) {
    return false;
  }
  return floorMod(n - residue_, modulus_) == 0;
}

std::optional<Clause> Clause::intersect(const Clause& other) const {
  auto residue = combineCongruences({residue_, modulus_},
                                    {other.residue_, other.modulus_});
  if (!residue) {
    return std::nullopt;
  }
  std::optional<Integer> hi;
  if (hi_ && other.hi_) {
    hi = std::min(*hi_, *other.hi_);
  } else if (hi_) {
    hi = hi_;
  } else {
    hi = other.hi_;
  }
  return make(std::max(lo_, other.lo_), hi, residue->modulus, residue->residue);
}

std::string Clause::str() const {
  std::string out = "[" + lo_.str() + "..";
  if (hi_) {
    out += hi_->str();
  }
  out += "] mod " + modulus_.str() + " = " + residue_.str();
  return out;
}

// ---------------------------------------------------------------------------
// NormalForm

bool NormalForm::contains(const Integer& n) const {
  if (n < 0) {
    return false;
  }
  if (n < threshold) {
    return head[n.convert_to<std::size_t>()];
  }
  return periodic[(n % period).convert_to<std::size_t>()];
}

namespace {

constexpr std::size_t kLimit = SemilinearSet::kNormalFormLimit;

void minimize(NormalForm& form) {
  const std::size_t full = form.period;
  for (std::size_t p = 1; p < full; ++p) {
    if (full % p != 0) {
      continue;
    }
    bool periodic = true;
    for (std::size_t i = p; i < full && periodic; ++i) {
      periodic = form.periodic[i] == form.periodic[i % p];
    }
    if (periodic) {
      form.period = p;
      form.periodic.resize(p);
      break;
    }
  }
  while (form.threshold > 0 &&
         form.head[form.threshold - 1] ==
             form.periodic[(form.threshold - 1) % form.period]) {
    --form.threshold;
  }
  form.head.resize(form.threshold);
}

NormalForm buildNormalForm(const std::vector<Clause>& clauses) {
  Integer threshold = 0;
  Integer period = 1;
  for (const Clause& c : clauses) {
    if (c.bounded()) {
      threshold = std::max(threshold, *c.hi() + 1);
    } else {
      threshold = std::max(threshold, c.lo());
      period = lcm(period, c.modulus());
    }
  }
  NormalForm form;
  form.threshold = toSize(threshold, kLimit, "normal-form threshold");
  form.period = toSize(period, kLimit, "normal-form period");
  form.head.assign(form.threshold, false);
  form.periodic.assign(form.period, false);
  const Integer cap = form.threshold;
  for (const Clause& c : clauses) {
    if (c.lo() < cap) {
      const std::size_t start = c.lo().convert_to<std::size_t>();
      const std::size_t step =
          c.modulus() > cap ? form.threshold + 1
                            : c.modulus().convert_to<std::size_t>();
      std::size_t end = form.threshold;
      if (c.bounded() && *c.hi() < cap) {
        end = c.hi()->convert_to<std::size_t>() + 1;
      }
      for (std::size_t n = start; n < end; n += step) {
        form.head[n] = true;
      }
    }
    if (!c.bounded()) {
      const std::size_t step = c.modulus().convert_to<std::size_t>();
      for (std::size_t r = c.residue().convert_to<std::size_t>();
           r < form.period; r += step) {
        form.periodic[r] = true;
      }
    }
  }
  minimize(form);
  return form;
}

template <typename Op>
NormalForm combine(const NormalForm& a, const NormalForm& b, Op op) {
  NormalForm out;
  out.threshold = std::max(a.threshold, b.threshold);
  out.period = toSize(lcm(Integer(a.period), Integer(b.period)), kLimit,
                      "normal-form period");
  out.head.resize(out.threshold);
  out.periodic.resize(out.period);
  for (std::size_t n = 0; n < out.threshold; ++n) {
    out.head[n] = op(a.contains(n), b.contains(n));
  }
  // Index r of the periodic part stands for some n >= threshold, n = r.
  const std::size_t base = out.threshold + (out.period - out.threshold % out.period);
  for (std::size_t r = 0; r < out.period; ++r) {
    const std::size_t n = base + r;
    out.periodic[n % out.period] = op(a.contains(n), b.contains(n));
  }
  minimize(out);
  return out;
}

// Compares membership on [0, max(T1,T2) + lcm(L1,L2)).
bool windowSubset(const NormalForm& a, const NormalForm& b) {
  const std::size_t period =
      toSize(lcm(Integer(a.period), Integer(b.period)), kLimit,
             "normal-form period");
  const std::size_t end = std::max(a.threshold, b.threshold) + period;
  for (std::size_t n = 0; n < end; ++n) {
    if (a.contains(n) && !b.contains(n)) {
      return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// SemilinearSet

SemilinearSet::SemilinearSet() : lazy_(std::make_shared<Lazy>()) {}

SemilinearSet::SemilinearSet(std::vector<Clause> clauses)
    : clauses_(std::move(clauses)), lazy_(std::make_shared<Lazy>()) {}

SemilinearSet::SemilinearSet(std::initializer_list<Clause> clauses)
    : clauses_(clauses), lazy_(std::make_shared<Lazy>()) {}

SemilinearSet SemilinearSet::naturals() { return SemilinearSet{Clause::atLeast(0)}; }

SemilinearSet SemilinearSet::point(const Integer& n) {
  if (n < 0) {
    return SemilinearSet();
  }
  return SemilinearSet{Clause::point(n)};
}

SemilinearSet SemilinearSet::atLeast(const Integer& n) {
  return SemilinearSet{Clause::atLeast(n)};
}

namespace {

// Clauses for `form` read with period p, a multiple of form.period.
std::vector<Clause> clausesWithPeriod(const NormalForm& form, std::size_t p) {
  std::vector<Clause> unbounded;
  std::vector<bool> covered(form.threshold, false);
  for (std::size_t r = 0; r < p; ++r) {
    if (!form.periodic[r % form.period]) {
      continue;
    }
    // First member of class r at or above the threshold, then walk down.
    std::size_t start = form.threshold + (r + p - form.threshold % p) % p;
    while (start >= p && form.head[start - p]) {
      start -= p;
    }
    for (std::size_t n = start; n < form.threshold; n += p) {
      covered[n] = true;
    }
    unbounded.push_back(*Clause::make(start, std::nullopt, p, r));
  }
  std::sort(unbounded.begin(), unbounded.end(),
            [](const Clause& x, const Clause& y) { return x.lo() < y.lo(); });
  std::vector<Clause> clauses;
  for (std::size_t n = 0; n < form.threshold;) {
    if (!form.head[n] || covered[n]) {
      ++n;
      continue;
    }
    std::size_t end = n;
    while (end + 1 < form.threshold && form.head[end + 1] && !covered[end + 1]) {
      ++end;
    }
    clauses.push_back(*Clause::make(n, Integer(end)));
    n = end + 1;
  }
  clauses.insert(clauses.end(), unbounded.begin(), unbounded.end());
  return clauses;
}

}  // namespace

SemilinearSet SemilinearSet::fromNormalForm(const NormalForm& form,
                                            std::size_t hintPeriod) {
  // Try every multiple of the minimal period dividing the hint and keep the
  // shortest rendering; a coarser period often avoids long point runs.
  std::vector<Clause> best = clausesWithPeriod(form, form.period);
  if (hintPeriod > form.period && hintPeriod % form.period == 0) {
    for (std::size_t p = 2 * form.period; p <= hintPeriod; p += form.period) {
      if (hintPeriod % p != 0) {
        continue;
      }
      std::vector<Clause> candidate = clausesWithPeriod(form, p);
      if (candidate.size() < best.size()) {
        best = std::move(candidate);
      }
    }
  }
  SemilinearSet out(std::move(best));
  std::call_once(out.lazy_->once, [&] { out.lazy_->form = form; });
  return out;
}

const NormalForm& SemilinearSet::normalForm() const {
  std::call_once(lazy_->once, [this] { lazy_->form = buildNormalForm(clauses_); });
  return lazy_->form;
}

bool SemilinearSet::contains(const Integer& n) const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [&](const Clause& c) { return c.contains(n); });
}

SemilinearSet SemilinearSet::unite(const SemilinearSet& other) const {
  std::vector<Clause> clauses = clauses_;
  clauses.insert(clauses.end(), other.clauses_.begin(), other.clauses_.end());
  return SemilinearSet(std::move(clauses));
}

SemilinearSet SemilinearSet::intersect(const SemilinearSet& other) const {
  std::vector<Clause> clauses;
  for (const Clause& a : clauses_) {
    for (const Clause& b : other.clauses_) {
      if (auto c = a.intersect(b)) {
        clauses.push_back(std::move(*c));
      }
    }
  }
  return SemilinearSet(std::move(clauses));
}

SemilinearSet SemilinearSet::complement() const {
  NormalForm form = normalForm();
  form.head.flip();
  form.periodic.flip();
  return fromNormalForm(form);
}

bool SemilinearSet::equals(const SemilinearSet& other) const {
  return subsetOf(other) && other.subsetOf(*this);
}

bool SemilinearSet::subsetOf(const SemilinearSet& other) const {
  return windowSubset(normalForm(), other.normalForm());
}

SemilinearSet SemilinearSet::upwardClosure() const {
  auto least = minElement();
  return least ? atLeast(*least) : SemilinearSet();
}

bool SemilinearSet::isFullN() const {
  const NormalForm& form = normalForm();
  return form.threshold == 0 && form.period == 1 && form.periodic[0];
}

std::optional<Integer> SemilinearSet::minElement() const {
  std::optional<Integer> best;
  for (const Clause& c : clauses_) {
    if (!best || c.lo() < *best) {
      best = c.lo();
    }
  }
  return best;
}

SemilinearSet SemilinearSet::simplified() const {
  Integer period = 1;
  for (const Clause& c : clauses_) {
    if (!c.bounded()) {
      period = lcm(period, c.modulus());
    }
  }
  return fromNormalForm(normalForm(), toSize(period, kLimit, "normal-form period"));
}

std::string SemilinearSet::str() const {
  if (clauses_.empty()) {
    return "empty";
  }
  std::string out;
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (i > 0) {
      out += " ∪ ";
    }
    out += clauses_[i].str();
  }
  return out;
}

nlohmann::json integerJson(const Integer& value) {
  if (fitsInt64(value)) {
    return value.convert_to<std::int64_t>();
  }
  return value.str();
}

void to_json(nlohmann::json& out, const Clause& clause) {
  out = nlohmann::json{{"lo", integerJson(clause.lo())},
                       {"hi", clause.hi() ? integerJson(*clause.hi())
                                          : nlohmann::json(nullptr)},
                       {"mod", integerJson(clause.modulus())},
                       {"res", integerJson(clause.residue())}};
}

void to_json(nlohmann::json& out, const SemilinearSet& set) {
  out = nlohmann::json::array();
  for (const Clause& c : set.clauses()) {
    out.push_back(c);
  }
}

}  // namespace avasskit

#include "pbcalc/enumerate.hpp"

#include <deque>

namespace pbcalc {

Rational calkin_wilf(std::size_t i) {
  if (i == 0) throw EnumerationError("Calkin-Wilf index is 1-based");
  // Walk the binary expansion of i below its leading bit: 0 -> left child
  // a/(a+b), 1 -> right child (a+b)/b.
  Integer a = 1;
  Integer b = 1;
  int top = 63;
  while (top >= 0 && ((i >> top) & 1u) == 0) --top;
  for (int bit = top - 1; bit >= 0; --bit) {
    if ((i >> bit) & 1u) {
      a = a + b;
    } else {
      b = a + b;
    }
  }
  Rational q(a, b);
  q.canonicalize();
  return q;
}

namespace {

using BaseFn = std::function<Rational(std::size_t)>;  // 1-based base enumeration

Rational rational_at(std::size_t i) {
  if (i == 1) return 0;
  std::size_t k = i / 2;  // i = 2k -> +cw(k), i = 2k+1 -> -cw(k)
  Rational q = calkin_wilf(k);
  return (i % 2 == 0) ? q : Rational(-q);
}

// Tuples of length k over a base enumeration, by level then colex order.
class TupleStream {
 public:
  TupleStream(std::size_t k, BaseFn base) : k_(k), base_(std::move(base)) {}

  std::vector<Rational> next() {
    while (pending_.empty()) fill_level();
    auto out = std::move(pending_.front());
    pending_.pop_front();
    return out;
  }

 private:
  void fill_level() {
    ++level_;
    while (cache_.size() < level_) cache_.push_back(base_(cache_.size() + 1));
    if (k_ == 0) {
      if (level_ == 1) pending_.emplace_back();
      return;
    }
    std::vector<std::size_t> idx(k_, 1);
    while (true) {
      bool has_top = false;
      for (auto v : idx) has_top = has_top || v == level_;
      if (has_top) {
        std::vector<Rational> t;
        t.reserve(k_);
        for (auto v : idx) t.push_back(cache_[v - 1]);
        pending_.push_back(std::move(t));
      }
      // Odometer with the first component moving fastest: colex order.
      std::size_t pos = 0;
      while (pos < k_ && idx[pos] == level_) idx[pos++] = 1;
      if (pos == k_) break;
      ++idx[pos];
    }
  }

  std::size_t k_;
  BaseFn base_;
  std::size_t level_ = 0;
  std::vector<Rational> cache_;
  std::deque<std::vector<Rational>> pending_;
};

std::size_t domain_size(const IndexDomain& d, const Env& env, long min) {
  long v = eval_integer(*d.size, env);
  if (v < min) throw EnumerationError("domain size parameter " + std::to_string(v) + " below " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

}  // namespace

struct Enumerator::State {
  DomainKind kind;
  std::size_t position = 0;  // values produced so far
  std::size_t cursor = 0;    // scalar domains: base index consumed
  std::unique_ptr<TupleStream> tuples;
  std::size_t tuple_length = 0;
  std::vector<IndexValue> list;
};

Enumerator::Enumerator(const IndexDomain& domain, const Env& env) : state_(std::make_unique<State>()) {
  state_->kind = domain.kind;
  switch (domain.kind) {
    case DomainKind::Naturals:
    case DomainKind::Rationals:
    case DomainKind::RationalsGE1Inf:
      break;
    case DomainKind::ConvexCoeffs:
    case DomainKind::RationalTuples: {
      std::size_t k = domain_size(domain, env, 1);
      state_->tuple_length = k;
      state_->tuples = std::make_unique<TupleStream>(k, rational_at);
      break;
    }
    case DomainKind::IncreasingIntTuples: {
      std::size_t n = domain_size(domain, env, 1);
      state_->tuple_length = n + 1;
      state_->tuples =
          std::make_unique<TupleStream>(n + 1, [](std::size_t i) { return Rational(static_cast<long>(i) - 1); });
      break;
    }
    case DomainKind::ExplicitList:
      for (const auto& item : domain.items) state_->list.push_back(eval_scalar(*item, env));
      break;
  }
}

Enumerator::~Enumerator() = default;
Enumerator::Enumerator(Enumerator&&) noexcept = default;
Enumerator& Enumerator::operator=(Enumerator&&) noexcept = default;

IndexValue Enumerator::next() {
  State& s = *state_;
  switch (s.kind) {
    case DomainKind::Naturals:
      return IndexValue::num(Rational(static_cast<long>(++s.position)));
    case DomainKind::Rationals:
      ++s.position;
      return IndexValue::num(rational_at(++s.cursor));
    case DomainKind::RationalsGE1Inf: {
      if (s.position++ == 0) return IndexValue::infinity();
      while (true) {
        Rational q = calkin_wilf(++s.cursor);
        if (q >= 1) return IndexValue::num(q);
      }
    }
    case DomainKind::RationalTuples:
      ++s.position;
      return IndexValue::tup(s.tuples->next());
    case DomainKind::ConvexCoeffs:
      if (exhausted()) throw EnumerationError("CO(1) has the single member (1)");
      while (true) {
        auto t = s.tuples->next();
        Rational total = 0;
        bool nonneg = true;
        for (const auto& q : t) {
          total += q;
          nonneg = nonneg && q >= 0;
        }
        if (nonneg && total == 1) {
          ++s.position;
          return IndexValue::tup(std::move(t));
        }
      }
    case DomainKind::IncreasingIntTuples:
      while (true) {
        auto t = s.tuples->next();
        bool increasing = true;
        for (std::size_t i = 1; i < t.size(); ++i) increasing = increasing && t[i - 1] < t[i];
        if (increasing) {
          ++s.position;
          return IndexValue::tup(std::move(t));
        }
      }
    case DomainKind::ExplicitList:
      if (s.position >= s.list.size()) {
        throw EnumerationError("explicit list exhausted after " + std::to_string(s.list.size()) + " items");
      }
      return s.list[s.position++];
  }
  throw EnumerationError("unknown domain");
}

bool Enumerator::exhausted() const {
  const State& s = *state_;
  switch (s.kind) {
    case DomainKind::ExplicitList:
      return s.position >= s.list.size();
    case DomainKind::ConvexCoeffs:
      return s.tuple_length == 1 && s.position >= 1;
    default:
      return false;
  }
}

std::vector<IndexValue> enumerate_prefix(const IndexDomain& domain, std::size_t m, const Env& env) {
  Enumerator e(domain, env);
  std::vector<IndexValue> out;
  while (out.size() < m && !e.exhausted()) out.push_back(e.next());
  return out;
}

std::vector<IndexValue> enumerate(const IndexDomain& domain, std::size_t m, const Env& env) {
  Enumerator e(domain, env);
  std::vector<IndexValue> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(e.next());
  return out;
}

}  // namespace pbcalc

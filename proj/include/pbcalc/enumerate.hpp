#pragma once

// Canonical enumerations of the countable index domains.
//
//   Q          0, then Calkin-Wilf positives each followed by its negative
//   Q#         inf, then the Calkin-Wilf positives that are >= 1
//   tuples     by level (largest base-enumeration position used), then
//              colexicographically inside a level
//   CO(s)      Q^s filtered to nonnegative entries summing to 1
//   V_n        {0,1,2,...}^(n+1) filtered to strictly increasing tuples
//
// Every enumeration is deterministic, injective and prefix-stable.

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "pbcalc/syntax.hpp"

namespace pbcalc {

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The i-th positive rational (1-based) of the Calkin-Wilf sequence.
Rational calkin_wilf(std::size_t i);

class Enumerator {
 public:
  Enumerator(const IndexDomain& domain, const Env& env);
  ~Enumerator();
  Enumerator(Enumerator&&) noexcept;
  Enumerator& operator=(Enumerator&&) noexcept;

  IndexValue next();
  /// True once a finite domain (an explicit list, CO(1)) has no further members.
  bool exhausted() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

/// Throws EnumerationError when the domain has fewer than m members.
std::vector<IndexValue> enumerate(const IndexDomain& domain, std::size_t m, const Env& env = {});
/// The first min(m, |domain|) members.
std::vector<IndexValue> enumerate_prefix(const IndexDomain& domain, std::size_t m, const Env& env = {});

}  // namespace pbcalc

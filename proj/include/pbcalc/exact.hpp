#pragma once

// Exact scalars: rationals (GMP), radicals b^(1/k), and the threshold
// type c*b^(1/k) + r used for atom bounds.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pbcalc {

using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
/// a/b in lowest terms (mpq_class(a, b) does not reduce).
Rational fraction(long a, long b);
std::string to_string(const Rational& q);
Rational rational_pow(const Rational& base, unsigned long exponent);
Rational abs(const Rational& q);

/// Exact k-th root of a nonnegative rational, if it is a perfect power.
std::optional<Rational> exact_root(const Rational& base, unsigned long root);

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative real base^(1/root).
struct RadicalValue {
  Rational base;
  unsigned long root = 1;

  static RadicalValue of(const Rational& q);  // q >= 0, root 1

  std::optional<Rational> as_rational() const { return exact_root(base, root); }
  RadicalValue operator*(const RadicalValue& other) const;
  RadicalValue operator/(const RadicalValue& other) const;
};

enum class Ordering { Less, Equal, Greater };

Ordering compare_radical(const RadicalValue& v, const Rational& q);
Ordering compare_radical(const RadicalValue& a, const RadicalValue& b);
std::string to_string(const RadicalValue& v);

/// coeff * base^(1/root) + offset. The radical part is absent when coeff == 0.
class ExactReal {
 public:
  ExactReal() = default;
  ExactReal(const Rational& q) : offset_(q) {}  // NOLINT(implicit)
  ExactReal(const RadicalValue& r);              // NOLINT(implicit)

  bool is_rational() const { return coeff_ == 0; }
  const Rational& offset() const { return offset_; }
  const Rational& coeff() const { return coeff_; }
  const RadicalValue& radical() const { return radical_; }

  /// Throws ArithmeticError unless the value is rational.
  const Rational& rational() const;

  ExactReal operator+(const Rational& q) const;
  ExactReal operator-(const Rational& q) const { return *this + Rational(-q); }
  ExactReal operator*(const Rational& q) const;
  /// At most one operand may carry a radical part.
  ExactReal operator+(const ExactReal& other) const;
  ExactReal operator-(const ExactReal& other) const { return *this + other * Rational(-1); }
  ExactReal operator*(const ExactReal& other) const;

  friend bool operator==(const ExactReal& a, const ExactReal& b) {
    return a.coeff_ == b.coeff_ && a.offset_ == b.offset_ &&
           (a.coeff_ == 0 || (a.radical_.base == b.radical_.base && a.radical_.root == b.radical_.root));
  }

 private:
  void normalize();

  Rational coeff_ = 0;
  RadicalValue radical_{};
  Rational offset_ = 0;
};

Ordering compare(const ExactReal& a, const ExactReal& b);
inline bool operator<=(const ExactReal& a, const ExactReal& b) { return compare(a, b) != Ordering::Greater; }
inline bool operator>=(const ExactReal& a, const ExactReal& b) { return compare(a, b) != Ordering::Less; }

std::string to_string(const ExactReal& v);

}  // namespace pbcalc

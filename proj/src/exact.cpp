#include "pbcalc/exact.hpp"

#include <utility>

namespace pbcalc {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ArithmeticError("empty rational literal");
  std::size_t i = (s[0] == '-') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !seen_slash && digit_before) {
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw ArithmeticError("malformed rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) throw ArithmeticError("malformed rational literal '" + s + "'");
  Rational q;
  if (q.set_str(s, 10) != 0) throw ArithmeticError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw ArithmeticError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_pow(const Rational& base, unsigned long exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

namespace {

std::optional<Integer> exact_int_root(const Integer& n, unsigned long k) {
  Integer r;
  if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return r;
  return std::nullopt;
}

// floor((base * 2^(bits*k))^(1/k)), so base^(1/k) lies in [r, r+1] / 2^bits.
Integer scaled_floor_root(const Rational& base, unsigned long k, unsigned long bits) {
  Integer num = base.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), bits * k);
  Integer scaled;
  mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), base.get_den_mpz_t());
  Integer r;
  mpz_root(r.get_mpz_t(), scaled.get_mpz_t(), k);
  return r;
}

Ordering sign_of(const Rational& q) {
  int s = sgn(q);
  return s < 0 ? Ordering::Less : (s == 0 ? Ordering::Equal : Ordering::Greater);
}

Ordering flip(Ordering o) {
  if (o == Ordering::Less) return Ordering::Greater;
  if (o == Ordering::Greater) return Ordering::Less;
  return o;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& base, unsigned long root) {
  if (base < 0) throw ArithmeticError("root of a negative rational");
  if (root == 1) return base;
  auto num = exact_int_root(base.get_num(), root);
  if (!num) return std::nullopt;
  auto den = exact_int_root(base.get_den(), root);
  if (!den) return std::nullopt;
  Rational out(*num, *den);
  out.canonicalize();
  return out;
}

Rational fraction(long a, long b) {
  if (b == 0) throw ArithmeticError("zero denominator");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

RadicalValue RadicalValue::of(const Rational& q) {
  if (q < 0) throw ArithmeticError("radical of a negative rational");
  return RadicalValue{q, 1};
}

RadicalValue RadicalValue::operator*(const RadicalValue& other) const {
  return RadicalValue{rational_pow(base, other.root) * rational_pow(other.base, root), root * other.root};
}

RadicalValue RadicalValue::operator/(const RadicalValue& other) const {
  if (other.base == 0) throw ArithmeticError("division by a zero radical");
  return RadicalValue{rational_pow(base, other.root) / rational_pow(other.base, root), root * other.root};
}

Ordering compare_radical(const RadicalValue& v, const Rational& q) {
  if (q < 0) return Ordering::Greater;
  return sign_of(v.base - rational_pow(q, v.root));
}

Ordering compare_radical(const RadicalValue& a, const RadicalValue& b) {
  return sign_of(rational_pow(a.base, b.root) - rational_pow(b.base, a.root));
}

std::string to_string(const RadicalValue& v) {
  if (v.root == 1) return to_string(v.base);
  return "(root " + to_string(v.base) + " " + std::to_string(v.root) + ")";
}

ExactReal::ExactReal(const RadicalValue& r) : coeff_(1), radical_(r) { normalize(); }

void ExactReal::normalize() {
  if (coeff_ == 0 || radical_.base == 0) {
    coeff_ = 0;
    radical_ = RadicalValue{};
    return;
  }
  if (auto q = radical_.as_rational()) {
    offset_ += coeff_ * *q;
    coeff_ = 0;
    radical_ = RadicalValue{};
    return;
  }
  if (coeff_ != 1 && coeff_ != -1) {
    radical_.base *= rational_pow(abs(coeff_), radical_.root);
    coeff_ = coeff_ < 0 ? -1 : 1;
  }
}

const Rational& ExactReal::rational() const {
  if (!is_rational()) throw ArithmeticError("irrational value " + to_string(*this) + " where a rational is required");
  return offset_;
}

ExactReal ExactReal::operator+(const Rational& q) const {
  ExactReal out = *this;
  out.offset_ += q;
  return out;
}

ExactReal ExactReal::operator*(const Rational& q) const {
  ExactReal out = *this;
  out.coeff_ *= q;
  out.offset_ *= q;
  out.normalize();
  return out;
}

ExactReal ExactReal::operator+(const ExactReal& other) const {
  if (!is_rational() && !other.is_rational()) {
    if (radical_.base == other.radical_.base && radical_.root == other.radical_.root) {
      ExactReal out = *this;
      out.coeff_ += other.coeff_;
      out.offset_ += other.offset_;
      out.normalize();
      return out;
    }
    throw ArithmeticError("sum of two distinct radicals is not representable");
  }
  if (is_rational()) return other + offset_;
  return *this + other.offset_;
}

ExactReal ExactReal::operator*(const ExactReal& other) const {
  if (other.is_rational()) return *this * other.offset_;
  if (is_rational()) return other * offset_;
  if (offset_ == 0 && other.offset_ == 0) {
    ExactReal out(radical_ * other.radical_);
    return out * (coeff_ * other.coeff_);
  }
  throw ArithmeticError("product is not representable as c*b^(1/k)+r");
}

namespace {

struct SignedRadical {
  int sign;  // +1 or -1
  RadicalValue value;
};

// Rational enclosure [lo, hi] of sign * value at the given precision.
std::pair<Rational, Rational> enclose(const SignedRadical& r, unsigned long bits) {
  Integer floor_root = scaled_floor_root(r.value.base, r.value.root, bits);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  Rational lo(floor_root, scale);
  Rational hi(Integer(floor_root + 1), scale);
  lo.canonicalize();
  hi.canonicalize();
  if (r.sign > 0) return {lo, hi};
  return {Rational(-hi), Rational(-lo)};
}

constexpr unsigned long kMaxBits = 1ul << 16;

}  // namespace

Ordering compare(const ExactReal& a, const ExactReal& b) {
  // sign(a - b) = sign(sa*X + sb*Y + delta)
  Rational delta = a.offset() - b.offset();
  std::optional<SignedRadical> x;
  std::optional<SignedRadical> y;
  if (!a.is_rational()) x = SignedRadical{sgn(a.coeff()), a.radical()};
  if (!b.is_rational()) y = SignedRadical{-sgn(b.coeff()), b.radical()};
  if (!x && y) std::swap(x, y);
  if (!x) return sign_of(delta);
  if (!y) {
    // sign * X + delta, with X > 0 irrational
    if (x->sign > 0) {
      if (delta >= 0) return Ordering::Greater;
      return compare_radical(x->value, Rational(-delta));
    }
    if (delta <= 0) return Ordering::Less;
    return flip(compare_radical(x->value, delta));
  }
  if (delta == 0) {
    if (x->sign == y->sign) return x->sign > 0 ? Ordering::Greater : Ordering::Less;
    Ordering o = compare_radical(x->value, y->value);
    return x->sign > 0 ? o : flip(o);
  }
  // Both radicals irrational and delta != 0: the sum cannot vanish, so
  // refining the enclosures terminates.
  for (unsigned long bits = 32; bits <= kMaxBits; bits *= 2) {
    auto [xl, xh] = enclose(*x, bits);
    auto [yl, yh] = enclose(*y, bits);
    Rational lo = xl + yl + delta;
    Rational hi = xh + yh + delta;
    if (lo > 0) return Ordering::Greater;
    if (hi < 0) return Ordering::Less;
  }
  throw ArithmeticError("radical comparison did not separate within precision limit");
}

std::string to_string(const ExactReal& v) {
  if (v.is_rational()) return to_string(v.offset());
  std::string rad = to_string(v.radical());
  if (v.coeff() < 0) rad = "(neg " + rad + ")";
  if (v.offset() == 0) return rad;
  return "(add " + rad + " " + to_string(v.offset()) + ")";
}

}  // namespace pbcalc

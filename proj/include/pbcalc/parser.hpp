#pragma once

// S-expression grammar for formulas, and the matching printer.
//
//   term   := var | 0 | (+ t t) | (scale s t) | (var x s) | (sum i s s t) | (f t ...) | const
//   atom   := (le (norm t) s) | (ge (norm t) s) | (le (rel R t ...) s) | (ge (rel R t ...) s)
//   pb     := atom | (and pb*) | (or pb*) | (And i dom pb) | (exists (v s) pb) | (forall (v s) pb)
//   la     := pb | (and la*) | (And i dom la) | (not la) | (existsSeq x bounds la)
//             sugar: (imp la la) (orI la la) (forallSeq x bounds la)
//   s      := rational | binder | (add s s) | (sub s s) | (mul s s) | (div s s) | (neg s)
//             | (at s s) | (len s) | (lp s s) | (root s k) | (tup s ...) | inf
//   dom    := Nat | Q | Qsharp | (CO s) | (V s) | (Qtuple s) | (list s ...)
//   bounds := (const r) | (list r ... then r)

#include <stdexcept>
#include <string>
#include <string_view>

#include "pbcalc/signature.hpp"
#include "pbcalc/syntax.hpp"

namespace pbcalc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  /// Transform outputs legitimately carry negative quantifier bounds.
  bool allow_negative_bounds = false;
};

LAPtr parse_formula(std::string_view text, const Signature& sig, ParseOptions options = {});
/// Fails unless the whole formula is positive bounded.
PBPtr parse_pb(std::string_view text, const Signature& sig, ParseOptions options = {});
TermPtr parse_term(std::string_view text, const Signature& sig);
BoundSequence parse_bound_sequence(std::string_view text);

std::string print_formula(const LAFormula& phi);
std::string print_pb(const PBFormula& phi);
std::string print_term(const Term& t);
std::string print_scalar(const Scalar& s);
std::string print_domain(const IndexDomain& d);
std::string print_bound_sequence(const BoundSequence& b);

}  // namespace pbcalc

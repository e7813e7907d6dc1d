#pragma once

// Formula ASTs for positive bounded logic (PB) and its infinitary
// extension (LA). Nodes are immutable and shared.
//
// Countable conjunctions are templates: a binder ranging over an index
// domain and a body that mentions the binder through scalar expressions.
// They are only ever expanded to finite prefixes.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pbcalc/exact.hpp"

namespace pbcalc {

// ---------------------------------------------------------------------------
// Scalar expressions: every rational position of a formula.

struct Scalar;
using ScalarPtr = std::shared_ptr<const Scalar>;

enum class ScalarOp {
  Literal,   // value
  Infinity,  // the token inf (only meaningful as an index value / lp exponent)
  Ref,       // binder name
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  At,     // (at tuple i), 1-based component
  Len,    // (len tuple)
  Lp,     // (lp p tuple): l_p norm of a rational tuple
  Root,   // (root b k)
  Tuple,  // (tup v ...)
};

struct Scalar {
  ScalarOp op = ScalarOp::Literal;
  Rational value;
  std::string name;
  unsigned long degree = 0;  // Root
  std::vector<ScalarPtr> args;
};

namespace sc {
ScalarPtr lit(const Rational& q);
ScalarPtr lit(long n);
ScalarPtr inf();
ScalarPtr ref(std::string name);
ScalarPtr op(ScalarOp op, std::vector<ScalarPtr> args);
ScalarPtr add(ScalarPtr a, ScalarPtr b);
ScalarPtr sub(ScalarPtr a, ScalarPtr b);
ScalarPtr mul(ScalarPtr a, ScalarPtr b);
ScalarPtr div(ScalarPtr a, ScalarPtr b);
ScalarPtr at(ScalarPtr tuple, ScalarPtr index);
ScalarPtr lp(ScalarPtr p, ScalarPtr tuple);
ScalarPtr root(ScalarPtr base, unsigned long degree);
ScalarPtr tuple(std::vector<ScalarPtr> items);
/// Canonical closed expression of an exact value.
ScalarPtr of(const ExactReal& v);
}  // namespace sc

/// Runtime value of a closed scalar expression.
struct IndexValue {
  enum class Kind { Number, Infinity, Tuple };
  Kind kind = Kind::Number;
  ExactReal number;
  std::vector<Rational> tuple;

  static IndexValue num(const ExactReal& v) { return {Kind::Number, v, {}}; }
  static IndexValue infinity() { return {Kind::Infinity, ExactReal{}, {}}; }
  static IndexValue tup(std::vector<Rational> t) { return {Kind::Tuple, ExactReal{}, std::move(t)}; }

  friend bool operator==(const IndexValue& a, const IndexValue& b) {
    return a.kind == b.kind && a.number == b.number && a.tuple == b.tuple;
  }
};

std::string to_string(const IndexValue& v);
ScalarPtr to_scalar(const IndexValue& v);

/// Binder environment; later bindings shadow earlier ones.
class Env {
 public:
  Env() = default;
  Env bind(const std::string& name, IndexValue value) const;
  const IndexValue* find(const std::string& name) const;
  bool empty() const { return bindings_.empty(); }

 private:
  std::vector<std::pair<std::string, IndexValue>> bindings_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IndexValue eval_scalar(const Scalar& s, const Env& env);
ExactReal eval_number(const Scalar& s, const Env& env);
Rational eval_rational(const Scalar& s, const Env& env);
long eval_integer(const Scalar& s, const Env& env);
bool is_closed(const Scalar& s, const std::set<std::string>& bound = {});

// ---------------------------------------------------------------------------
// Index domains.

enum class DomainKind {
  Naturals,             // 1, 2, 3, ...
  Rationals,            // Q
  RationalsGE1Inf,      // Q# = Q cap [1, inf], inf first
  ConvexCoeffs,         // CO(s)
  IncreasingIntTuples,  // V_n: (q_1 < ... < q_{n+1}) over {0, 1, 2, ...}
  RationalTuples,       // Q^k
  ExplicitList,
};

struct IndexDomain {
  DomainKind kind = DomainKind::Naturals;
  ScalarPtr size;                // CO, V, Qtuple
  std::vector<ScalarPtr> items;  // ExplicitList

  static IndexDomain naturals() { return {DomainKind::Naturals, nullptr, {}}; }
  static IndexDomain rationals() { return {DomainKind::Rationals, nullptr, {}}; }
  static IndexDomain qsharp() { return {DomainKind::RationalsGE1Inf, nullptr, {}}; }
  static IndexDomain convex(ScalarPtr s) { return {DomainKind::ConvexCoeffs, std::move(s), {}}; }
  static IndexDomain increasing(ScalarPtr n) { return {DomainKind::IncreasingIntTuples, std::move(n), {}}; }
  static IndexDomain rational_tuples(ScalarPtr k) { return {DomainKind::RationalTuples, std::move(k), {}}; }
  static IndexDomain list(std::vector<ScalarPtr> items) { return {DomainKind::ExplicitList, nullptr, std::move(items)}; }
};

// ---------------------------------------------------------------------------
// Terms.

struct VarName {
  std::string family;
  unsigned long index = 0;  // 0: unindexed variable such as `y`

  auto operator<=>(const VarName&) const = default;
};

std::string to_string(const VarName& v);

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind {
  Var,
  Zero,
  Sum,
  Scale,       // scalar * args[0]
  Apply,       // function symbol; 0-ary symbols are constants
  IndexedVar,  // (var x e)
  Loop,        // (sum i lo hi t)
};

struct Term {
  TermKind kind = TermKind::Zero;
  VarName var;
  std::string name;  // Apply symbol / Loop variable / IndexedVar family
  ScalarPtr scalar;  // Scale coefficient / IndexedVar index / Loop lower bound
  ScalarPtr upper;   // Loop upper bound
  std::vector<TermPtr> args;
};

namespace tm {
TermPtr var(std::string family, unsigned long index = 0);
TermPtr zero();
TermPtr sum(TermPtr a, TermPtr b);
TermPtr scale(ScalarPtr coeff, TermPtr t);
TermPtr scale(const Rational& coeff, TermPtr t);
TermPtr apply(std::string symbol, std::vector<TermPtr> args);
TermPtr indexed(std::string family, ScalarPtr index);
TermPtr loop(std::string var, ScalarPtr lo, ScalarPtr hi, TermPtr body);
TermPtr minus(TermPtr a, TermPtr b);  // a + (-1)*b
}  // namespace tm

// ---------------------------------------------------------------------------
// Positive bounded formulas.

enum class AtomKind { NormLE, NormGE, RelLE, RelGE };

struct Atom {
  AtomKind kind = AtomKind::NormLE;
  TermPtr term;                // norm atoms
  std::string symbol;          // relation atoms
  std::vector<TermPtr> args;   // relation atoms
  ScalarPtr bound;
};

struct PBFormula;
using PBPtr = std::shared_ptr<const PBFormula>;

enum class PBKind { Atom, And, Or, CountableAnd, Exists, Forall };

struct PBFormula {
  PBKind kind = PBKind::And;
  Atom atom;
  std::vector<PBPtr> parts;  // And / Or
  std::string binder;        // CountableAnd
  IndexDomain domain;        // CountableAnd
  VarName var;               // Exists / Forall
  ScalarPtr bound;           // Exists / Forall
  PBPtr body;                // CountableAnd / Exists / Forall
};

namespace pb {
PBPtr atom(Atom a);
PBPtr norm_le(TermPtr t, ScalarPtr r);
PBPtr norm_ge(TermPtr t, ScalarPtr r);
PBPtr rel_le(std::string symbol, std::vector<TermPtr> args, ScalarPtr r);
PBPtr rel_ge(std::string symbol, std::vector<TermPtr> args, ScalarPtr r);
PBPtr conj(std::vector<PBPtr> parts);
PBPtr disj(std::vector<PBPtr> parts);
PBPtr countable(std::string binder, IndexDomain domain, PBPtr body);
PBPtr exists(VarName var, ScalarPtr bound, PBPtr body);
PBPtr forall(VarName var, ScalarPtr bound, PBPtr body);
}  // namespace pb

// ---------------------------------------------------------------------------
// Infinitary formulas.

/// r_1, r_2, ...: the listed prefix, then the tail value forever.
struct BoundSequence {
  std::vector<Rational> prefix;
  Rational tail;

  Rational at(unsigned long i) const { return i >= 1 && i <= prefix.size() ? prefix[i - 1] : tail; }
  friend bool operator==(const BoundSequence&, const BoundSequence&) = default;
};

struct LAFormula;
using LAPtr = std::shared_ptr<const LAFormula>;

enum class LAKind { Embed, AndN, AndW, Not, ExistsSeq };

struct LAFormula {
  LAKind kind = LAKind::Embed;
  PBPtr pb;                  // Embed
  std::vector<LAPtr> parts;  // AndN
  std::string binder;        // AndW binder / ExistsSeq family
  IndexDomain domain;        // AndW
  BoundSequence bounds;      // ExistsSeq
  LAPtr body;                // AndW / Not / ExistsSeq
};

namespace la {
LAPtr embed(PBPtr phi);
/// Conjunction; collapses to an embedded PB conjunction when every part is embedded.
LAPtr conj(std::vector<LAPtr> parts);
LAPtr countable(std::string binder, IndexDomain domain, LAPtr body);
LAPtr negate(LAPtr phi);
LAPtr exists_seq(std::string family, BoundSequence bounds, LAPtr body);
LAPtr implies(LAPtr a, LAPtr b);     // not (a and not b)
LAPtr disj(LAPtr a, LAPtr b);        // not (not a and not b)
LAPtr forall_seq(std::string family, BoundSequence bounds, LAPtr body);  // not exists not
}  // namespace la

// ---------------------------------------------------------------------------
// Structural queries.

bool equal(const Scalar& a, const Scalar& b);
bool equal(const Term& a, const Term& b);
bool equal(const PBFormula& a, const PBFormula& b);
bool equal(const LAFormula& a, const LAFormula& b);

bool is_finitary(const PBFormula& phi);
bool has_negation(const LAFormula& phi);

struct FreeVars {
  std::set<VarName> vars;
  std::map<std::string, unsigned long> max_index;  // per family
  std::set<std::string> open_families;             // families indexed by an open expression

  unsigned long max_of(const std::string& family) const {
    auto it = max_index.find(family);
    return it == max_index.end() ? 0 : it->second;
  }
};

FreeVars free_vars(const Term& t);
FreeVars free_vars(const PBFormula& phi);
FreeVars free_vars(const LAFormula& phi);

}  // namespace pbcalc

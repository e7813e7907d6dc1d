#include "pbcalc/parser.hpp"

#include <cctype>
#include <set>

#include "sexpr.hpp"

namespace pbcalc {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

using namespace detail;

class Builder {
 public:
  Builder(const Signature& sig, ParseOptions options) : sig_(sig), options_(options) {}

  Rational rational(const SExpr& e) {
    if (e.is_list || !looks_numeric(e.atom)) fail(e, "expected a rational, got '" + describe(e) + "'");
    try {
      return parse_rational(e.atom);
    } catch (const ArithmeticError& err) {
      fail(e, err.what());
    }
  }

  ScalarPtr scalar(const SExpr& e) {
    if (!e.is_list) {
      if (looks_numeric(e.atom)) return sc::lit(rational(e));
      if (e.atom == "inf") return sc::inf();
      if (!is_identifier(e.atom)) fail(e, "malformed scalar '" + e.atom + "'");
      if (!binders_.count(e.atom)) fail(e, "unknown symbol '" + e.atom + "' (not a bound index variable)");
      return sc::ref(e.atom);
    }
    const std::string& h = head_of(e);
    auto args = [&](std::size_t n) {
      if (e.items.size() != n + 1) fail(e, "'" + h + "' expects " + std::to_string(n) + " arguments");
      std::vector<ScalarPtr> out;
      for (std::size_t i = 1; i <= n; ++i) out.push_back(scalar(e.items[i]));
      return out;
    };
    if (h == "add") return sc::op(ScalarOp::Add, args(2));
    if (h == "sub") return sc::op(ScalarOp::Sub, args(2));
    if (h == "mul") return sc::op(ScalarOp::Mul, args(2));
    if (h == "div") return sc::op(ScalarOp::Div, args(2));
    if (h == "neg") return sc::op(ScalarOp::Neg, args(1));
    if (h == "at") return sc::op(ScalarOp::At, args(2));
    if (h == "len") return sc::op(ScalarOp::Len, args(1));
    if (h == "lp") return sc::op(ScalarOp::Lp, args(2));
    if (h == "root") {
      if (e.items.size() != 3 || e.items[2].is_list) fail(e, "'root' expects a base and an integer degree");
      Rational k = rational(e.items[2]);
      if (k.get_den() != 1 || k < 1) fail(e.items[2], "root degree must be a positive integer");
      return sc::root(scalar(e.items[1]), k.get_num().get_ui());
    }
    if (h == "tup") {
      std::vector<ScalarPtr> items;
      for (std::size_t i = 1; i < e.items.size(); ++i) items.push_back(scalar(e.items[i]));
      return sc::tuple(std::move(items));
    }
    fail(e, "unknown scalar operation '" + h + "'");
  }

  TermPtr term(const SExpr& e) {
    if (!e.is_list) {
      if (e.atom == "0") return tm::zero();
      if (!is_identifier(e.atom)) fail(e, "malformed term '" + e.atom + "'");
      if (const SymbolDecl* f = sig_.function(e.atom)) {
        if (f->arity != 0) fail(e, "arity mismatch for '" + e.atom + "': declared " + std::to_string(f->arity) + ", applied to 0");
        return tm::apply(e.atom, {});
      }
      return variable(e);
    }
    const std::string& h = head_of(e);
    if (h.empty()) fail(e, "term must start with an operator");
    if (h == "+") {
      if (e.items.size() != 3) fail(e, "'+' expects two terms");
      return tm::sum(term(e.items[1]), term(e.items[2]));
    }
    if (h == "scale") {
      if (e.items.size() != 3) fail(e, "'scale' expects a scalar and a term");
      return tm::scale(scalar(e.items[1]), term(e.items[2]));
    }
    if (h == "var") {
      if (e.items.size() != 3 || e.items[1].is_list || !is_identifier(e.items[1].atom)) {
        fail(e, "'var' expects a family name and an index");
      }
      return tm::indexed(e.items[1].atom, scalar(e.items[2]));
    }
    if (h == "sum") {
      if (e.items.size() != 5 || e.items[1].is_list || !is_identifier(e.items[1].atom)) {
        fail(e, "'sum' expects a loop variable, two bounds and a term");
      }
      ScalarPtr lo = scalar(e.items[2]);
      ScalarPtr hi = scalar(e.items[3]);
      const std::string& v = e.items[1].atom;
      Scope scope(*this, v);
      return tm::loop(v, std::move(lo), std::move(hi), term(e.items[4]));
    }
    const SymbolDecl* f = sig_.function(h);
    if (f == nullptr) fail(e, "unknown function symbol '" + h + "'");
    if (f->arity != e.items.size() - 1) {
      fail(e, "arity mismatch for '" + h + "': declared " + std::to_string(f->arity) + ", applied to " +
                  std::to_string(e.items.size() - 1));
    }
    std::vector<TermPtr> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i]));
    return tm::apply(h, std::move(args));
  }

  VarName var_name(const SExpr& e) {
    if (e.is_list || !is_identifier(e.atom)) fail(e, "expected a variable");
    const std::string& s = e.atom;
    std::size_t cut = s.size();
    while (cut > 1 && std::isdigit(static_cast<unsigned char>(s[cut - 1]))) --cut;
    if (cut == s.size()) return VarName{s, 0};
    unsigned long index = std::stoul(s.substr(cut));
    if (index == 0) fail(e, "variable index must be positive in '" + s + "'");
    return VarName{s.substr(0, cut), index};
  }

  TermPtr variable(const SExpr& e) {
    VarName v = var_name(e);
    return tm::var(v.family, v.index);
  }

  PBPtr atom(const SExpr& e, bool le) {
    if (e.items.size() != 3) fail(e, "atom expects a left side and a rational");
    const SExpr& lhs = e.items[1];
    const std::string& h = head_of(lhs);
    ScalarPtr bound = scalar(e.items[2]);
    if (h == "norm") {
      if (lhs.items.size() != 2) fail(lhs, "'norm' expects one term");
      TermPtr t = term(lhs.items[1]);
      return le ? pb::norm_le(t, bound) : pb::norm_ge(t, bound);
    }
    if (h == "rel") {
      if (lhs.items.size() < 2 || lhs.items[1].is_list) fail(lhs, "'rel' expects a relation symbol");
      const std::string& r = lhs.items[1].atom;
      const SymbolDecl* d = sig_.relation(r);
      if (d == nullptr) fail(lhs.items[1], "unknown relation symbol '" + r + "'");
      if (d->arity != lhs.items.size() - 2) {
        fail(lhs, "arity mismatch for '" + r + "': declared " + std::to_string(d->arity) + ", applied to " +
                      std::to_string(lhs.items.size() - 2));
      }
      std::vector<TermPtr> args;
      for (std::size_t i = 2; i < lhs.items.size(); ++i) args.push_back(term(lhs.items[i]));
      return le ? pb::rel_le(r, std::move(args), bound) : pb::rel_ge(r, std::move(args), bound);
    }
    fail(lhs, "atom left side must be (norm t) or (rel R t ...)");
  }

  IndexDomain domain(const SExpr& e) {
    if (!e.is_list) {
      if (e.atom == "Nat") return IndexDomain::naturals();
      if (e.atom == "Q") return IndexDomain::rationals();
      if (e.atom == "Qsharp") return IndexDomain::qsharp();
      fail(e, "unknown index domain '" + e.atom + "'");
    }
    const std::string& h = head_of(e);
    if (h == "list") {
      if (e.items.size() < 2) fail(e, "'list' domain needs at least one value");
      std::vector<ScalarPtr> items;
      for (std::size_t i = 1; i < e.items.size(); ++i) items.push_back(scalar(e.items[i]));
      return IndexDomain::list(std::move(items));
    }
    if (e.items.size() != 2) fail(e, "domain '" + h + "' expects one size argument");
    if (h == "CO") return IndexDomain::convex(scalar(e.items[1]));
    if (h == "V") return IndexDomain::increasing(scalar(e.items[1]));
    if (h == "Qtuple") return IndexDomain::rational_tuples(scalar(e.items[1]));
    fail(e, "unknown index domain '" + h + "'");
  }

  BoundSequence bounds(const SExpr& e) {
    const std::string& h = head_of(e);
    BoundSequence b;
    if (h == "const" && e.items.size() == 2) {
      b.tail = rational(e.items[1]);
    } else if (h == "list" && e.items.size() >= 4 && !e.items[e.items.size() - 2].is_list &&
               e.items[e.items.size() - 2].atom == "then") {
      for (std::size_t i = 1; i + 2 < e.items.size(); ++i) b.prefix.push_back(rational(e.items[i]));
      b.tail = rational(e.items.back());
    } else {
      fail(e, "bound sequence must be (const r) or (list r ... then r)");
    }
    auto check = [&](const Rational& r) {
      if (r < 0) fail(e, "negative quantifier bound " + to_string(r));
    };
    for (const auto& r : b.prefix) check(r);
    check(b.tail);
    return b;
  }

  PBPtr quantifier(const SExpr& e, bool exists) {
    if (e.items.size() != 3 || !e.items[1].is_list || e.items[1].items.size() != 2) {
      fail(e, std::string(exists ? "exists" : "forall") + " expects (v bound) and a body");
    }
    VarName v = var_name(e.items[1].items[0]);
    ScalarPtr bound = scalar(e.items[1].items[1]);
    if (!options_.allow_negative_bounds && bound->op == ScalarOp::Literal && bound->value < 0) {
      fail(e.items[1].items[1], "negative quantifier bound " + to_string(bound->value));
    }
    PBPtr body = pb(e.items[2]);
    return exists ? pb::exists(v, bound, body) : pb::forall(v, bound, body);
  }

  PBPtr pb(const SExpr& e) {
    const std::string& h = head_of(e);
    if (h == "le" || h == "ge") return atom(e, h == "le");
    if (h == "and" || h == "or") {
      std::vector<PBPtr> parts;
      for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(pb(e.items[i]));
      return h == "and" ? pb::conj(std::move(parts)) : pb::disj(std::move(parts));
    }
    if (h == "And") {
      auto [binder, dom] = countable_header(e);
      Scope scope(*this, binder);
      return pb::countable(binder, std::move(dom), pb(e.items[3]));
    }
    if (h == "exists") return quantifier(e, true);
    if (h == "forall") return quantifier(e, false);
    fail(e, "expected a positive bounded formula, got '" + describe(e) + "'");
  }

  LAPtr formula(const SExpr& e) {
    const std::string& h = head_of(e);
    if (h == "and") {
      std::vector<LAPtr> parts;
      for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(formula(e.items[i]));
      return la::conj(std::move(parts));
    }
    if (h == "And") {
      auto [binder, dom] = countable_header(e);
      Scope scope(*this, binder);
      return la::countable(binder, std::move(dom), formula(e.items[3]));
    }
    if (h == "not") {
      if (e.items.size() != 2) fail(e, "'not' expects one formula");
      return la::negate(formula(e.items[1]));
    }
    if (h == "imp" || h == "orI") {
      if (e.items.size() != 3) fail(e, "'" + h + "' expects two formulas");
      LAPtr a = formula(e.items[1]);
      LAPtr b = formula(e.items[2]);
      return h == "imp" ? la::implies(a, b) : la::disj(a, b);
    }
    if (h == "existsSeq" || h == "forallSeq") {
      if (e.items.size() != 4 || e.items[1].is_list || !is_identifier(e.items[1].atom)) {
        fail(e, "'" + h + "' expects a family name, a bound sequence and a formula");
      }
      BoundSequence b = bounds(e.items[2]);
      LAPtr body = formula(e.items[3]);
      return h == "existsSeq" ? la::exists_seq(e.items[1].atom, b, body) : la::forall_seq(e.items[1].atom, b, body);
    }
    return la::embed(pb(e));
  }

 private:
  struct Scope {
    Scope(Builder& b, const std::string& name) : builder(b), name(name), fresh(b.binders_.insert(name).second) {}
    ~Scope() {
      if (fresh) builder.binders_.erase(name);
    }
    Builder& builder;
    std::string name;
    bool fresh;
  };

  std::pair<std::string, IndexDomain> countable_header(const SExpr& e) {
    if (e.items.size() != 4 || e.items[1].is_list || !is_identifier(e.items[1].atom)) {
      fail(e, "'And' expects a binder, a domain and a body");
    }
    return {e.items[1].atom, domain(e.items[2])};
  }

  static std::string describe(const SExpr& e) {
    if (!e.is_list) return e.atom;
    return "(" + head_of(e) + " ...)";
  }

  const Signature& sig_;
  ParseOptions options_;
  std::set<std::string> binders_;
};

}  // namespace

LAPtr parse_formula(std::string_view text, const Signature& sig, ParseOptions options) {
  SExpr e = Reader(text).read_all();
  return Builder(sig, options).formula(e);
}

PBPtr parse_pb(std::string_view text, const Signature& sig, ParseOptions options) {
  SExpr e = Reader(text).read_all();
  return Builder(sig, options).pb(e);
}

TermPtr parse_term(std::string_view text, const Signature& sig) {
  SExpr e = Reader(text).read_all();
  return Builder(sig, {}).term(e);
}

BoundSequence parse_bound_sequence(std::string_view text) {
  SExpr e = Reader(text).read_all();
  Signature empty;
  return Builder(empty, {}).bounds(e);
}

// ---------------------------------------------------------------------------
// Printer

std::string print_scalar(const Scalar& s) {
  auto call = [&](const char* name) {
    std::string out = std::string("(") + name;
    for (const auto& a : s.args) out += " " + print_scalar(*a);
    return out + ")";
  };
  switch (s.op) {
    case ScalarOp::Literal:
      return to_string(s.value);
    case ScalarOp::Infinity:
      return "inf";
    case ScalarOp::Ref:
      return s.name;
    case ScalarOp::Add:
      return call("add");
    case ScalarOp::Sub:
      return call("sub");
    case ScalarOp::Mul:
      return call("mul");
    case ScalarOp::Div:
      return call("div");
    case ScalarOp::Neg:
      return call("neg");
    case ScalarOp::At:
      return call("at");
    case ScalarOp::Len:
      return call("len");
    case ScalarOp::Lp:
      return call("lp");
    case ScalarOp::Root:
      return "(root " + print_scalar(*s.args[0]) + " " + std::to_string(s.degree) + ")";
    case ScalarOp::Tuple:
      return call("tup");
  }
  return {};
}

std::string print_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Var:
      return to_string(t.var);
    case TermKind::Zero:
      return "0";
    case TermKind::Sum:
      return "(+ " + print_term(*t.args[0]) + " " + print_term(*t.args[1]) + ")";
    case TermKind::Scale:
      return "(scale " + print_scalar(*t.scalar) + " " + print_term(*t.args[0]) + ")";
    case TermKind::Apply: {
      if (t.args.empty()) return t.name;
      std::string out = "(" + t.name;
      for (const auto& a : t.args) out += " " + print_term(*a);
      return out + ")";
    }
    case TermKind::IndexedVar:
      return "(var " + t.name + " " + print_scalar(*t.scalar) + ")";
    case TermKind::Loop:
      return "(sum " + t.name + " " + print_scalar(*t.scalar) + " " + print_scalar(*t.upper) + " " +
             print_term(*t.args[0]) + ")";
  }
  return {};
}

std::string print_domain(const IndexDomain& d) {
  switch (d.kind) {
    case DomainKind::Naturals:
      return "Nat";
    case DomainKind::Rationals:
      return "Q";
    case DomainKind::RationalsGE1Inf:
      return "Qsharp";
    case DomainKind::ConvexCoeffs:
      return "(CO " + print_scalar(*d.size) + ")";
    case DomainKind::IncreasingIntTuples:
      return "(V " + print_scalar(*d.size) + ")";
    case DomainKind::RationalTuples:
      return "(Qtuple " + print_scalar(*d.size) + ")";
    case DomainKind::ExplicitList: {
      std::string out = "(list";
      for (const auto& item : d.items) out += " " + print_scalar(*item);
      return out + ")";
    }
  }
  return {};
}

std::string print_bound_sequence(const BoundSequence& b) {
  if (b.prefix.empty()) return "(const " + to_string(b.tail) + ")";
  std::string out = "(list";
  for (const auto& r : b.prefix) out += " " + to_string(r);
  return out + " then " + to_string(b.tail) + ")";
}

namespace {

std::string print_atom(const Atom& a) {
  bool le = a.kind == AtomKind::NormLE || a.kind == AtomKind::RelLE;
  std::string lhs;
  if (a.kind == AtomKind::NormLE || a.kind == AtomKind::NormGE) {
    lhs = "(norm " + print_term(*a.term) + ")";
  } else {
    lhs = "(rel " + a.symbol;
    for (const auto& t : a.args) lhs += " " + print_term(*t);
    lhs += ")";
  }
  return std::string(le ? "(le " : "(ge ") + lhs + " " + print_scalar(*a.bound) + ")";
}

}  // namespace

std::string print_pb(const PBFormula& phi) {
  switch (phi.kind) {
    case PBKind::Atom:
      return print_atom(phi.atom);
    case PBKind::And:
    case PBKind::Or: {
      std::string out = phi.kind == PBKind::And ? "(and" : "(or";
      for (const auto& p : phi.parts) out += " " + print_pb(*p);
      return out + ")";
    }
    case PBKind::CountableAnd:
      return "(And " + phi.binder + " " + print_domain(phi.domain) + " " + print_pb(*phi.body) + ")";
    case PBKind::Exists:
    case PBKind::Forall:
      return std::string(phi.kind == PBKind::Exists ? "(exists (" : "(forall (") + to_string(phi.var) + " " +
             print_scalar(*phi.bound) + ") " + print_pb(*phi.body) + ")";
  }
  return {};
}

std::string print_formula(const LAFormula& phi) {
  switch (phi.kind) {
    case LAKind::Embed:
      return print_pb(*phi.pb);
    case LAKind::AndN: {
      std::string out = "(and";
      for (const auto& p : phi.parts) out += " " + print_formula(*p);
      return out + ")";
    }
    case LAKind::AndW:
      return "(And " + phi.binder + " " + print_domain(phi.domain) + " " + print_formula(*phi.body) + ")";
    case LAKind::Not:
      return "(not " + print_formula(*phi.body) + ")";
    case LAKind::ExistsSeq:
      return "(existsSeq " + phi.binder + " " + print_bound_sequence(phi.bounds) + " " + print_formula(*phi.body) + ")";
  }
  return {};
}

}  // namespace pbcalc

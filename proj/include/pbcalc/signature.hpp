#pragma once

// Signatures: function and relation symbols with arities, norm bounds
// K(., N) and uniform-continuity moduli delta(., N, eps). Bounds and moduli
// are finite tables plus an optional default rule.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbcalc/syntax.hpp"

namespace pbcalc {

/// K(N): explicit entries, else the linear default slope*N + intercept.
struct BoundTable {
  std::map<long, Rational> entries;
  std::optional<std::pair<Rational, Rational>> linear;

  std::optional<Rational> at(long n) const;
  bool empty() const { return entries.empty() && !linear; }
};

/// delta(N, eps): explicit entries (monotone in eps after normalization),
/// else the default factor * eps.
struct ModulusTable {
  std::map<long, std::map<Rational, Rational>> entries;
  std::optional<Rational> default_factor;
  std::vector<Rational> eps_grid;

  /// Running maximum over increasing eps for every N.
  void normalize();
  std::optional<Rational> at(long n, const Rational& eps) const;
  /// Epsilons worth checking: the declared grid plus every tabled eps.
  std::vector<Rational> check_grid() const;
  bool empty() const { return entries.empty() && !default_factor; }
};

struct SymbolDecl {
  std::string name;
  unsigned arity = 0;
  BoundTable bound;
  ModulusTable modulus;
};

class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Signature {
 public:
  void add_function(SymbolDecl decl);
  void add_relation(SymbolDecl decl);

  const SymbolDecl* function(const std::string& name) const;
  const SymbolDecl* relation(const std::string& name) const;
  SymbolDecl* function_mut(const std::string& name);
  SymbolDecl* relation_mut(const std::string& name);
  bool is_constant(const std::string& name) const;

  const std::vector<SymbolDecl>& functions() const { return functions_; }
  const std::vector<SymbolDecl>& relations() const { return relations_; }

  void merge(const Signature& other);

 private:
  std::vector<SymbolDecl> functions_;
  std::vector<SymbolDecl> relations_;
};

/// Ok when empty; otherwise one diagnostic per problem.
std::vector<std::string> validate_term(const Signature& sig, const Term& t);

Signature parse_signature(const std::string& text);
std::string print_signature(const Signature& sig);

/// Lines of a [bounds] / [moduli] section applied to already declared symbols.
void apply_bound_line(Signature& sig, const std::string& line);
void apply_modulus_line(Signature& sig, const std::string& line);
std::string print_bound_sections(const Signature& sig);

}  // namespace pbcalc

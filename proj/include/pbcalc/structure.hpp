#pragma once

// Finite rational normed structures: a finite carrier in Q^d with an l_p or
// l_inf norm, plus interpretations of the signature's symbols.

#include <map>
#include <string>
#include <vector>

#include "pbcalc/signature.hpp"

namespace pbcalc {

using Vector = std::vector<Rational>;

struct NormSpec {
  bool infinity = false;
  unsigned long p = 2;  // ignored when infinity
};

ExactReal norm(const Vector& v, const NormSpec& spec);
/// ||v||^e as a rational; requires e to be a multiple of p (any e for l_inf).
Rational norm_power(const Vector& v, const NormSpec& spec, unsigned long e);
bool norm_power_exact(const NormSpec& spec, unsigned long e);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Rational& c, const Vector& v);
std::string to_string(const Vector& v);

struct FunctionInterp {
  enum class Kind { Affine, Table };
  Kind kind = Kind::Affine;
  unsigned arity = 1;
  std::vector<Vector> matrix;  // rows
  Vector offset;
  std::map<std::vector<Vector>, Vector> table;
};

/// NormCombo: R(u_1..u_k) = sum c_i ||u_i||^e_i. NormPower is the k = 1, c = 1 case.
struct RelationInterp {
  enum class Kind { NormCombo, Table };
  Kind kind = Kind::NormCombo;
  unsigned arity = 1;
  std::vector<std::pair<Rational, unsigned long>> terms;
  std::map<std::vector<Vector>, Rational> table;
};

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FiniteNormedStructure {
  std::string name;
  std::size_t dim = 1;
  NormSpec norm;
  std::vector<Vector> carrier;
  std::map<std::string, Vector> constants;
  std::map<std::string, FunctionInterp> functions;
  std::map<std::string, RelationInterp> relations;
  /// Symbols interpreted here, with the file's bounds and moduli.
  Signature signature;

  ExactReal norm_of(const Vector& v) const { return pbcalc::norm(v, norm); }
  Vector zero() const { return Vector(dim, Rational(0)); }
  /// Throws StructureError on a missing table entry.
  Vector apply(const std::string& fn, const std::vector<Vector>& args) const;
  Rational relate(const std::string& rel, const std::vector<Vector>& args) const;

  /// Zero present, closed under negation, dimensions consistent, NormCombo exact.
  void validate() const;
  /// Rebuilds `signature` declarations from the interpretations, keeping tables.
  void sync_signature();
};

FiniteNormedStructure parse_structure(const std::string& text);
std::string print_structure(const FiniteNormedStructure& e);
FiniteNormedStructure load_structure(const std::string& path);
void save_structure(const FiniteNormedStructure& e, const std::string& path);
bool same_structure(const FiniteNormedStructure& a, const FiniteNormedStructure& b);

struct Violation {
  std::string symbol;
  std::string kind;  // missing | arity | bound | modulus | partial | skipped
  std::string detail;
};

struct ConformanceReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
  std::string to_text() const;
};

/// Checks every declared bound and modulus over carrier tuples. Strict
/// inequalities throughout; relation moduli use the half-width eps.
ConformanceReport check_structure_conformance(const Signature& sig, const FiniteNormedStructure& e);

}  // namespace pbcalc

#pragma once

// Small constructors for hand-built structures.

#include <string>
#include <utility>
#include <vector>

#include "pbcalc/structure.hpp"

namespace pbcalc::detail {

inline RelationInterp combo(unsigned arity, std::vector<std::pair<Rational, unsigned long>> terms) {
  RelationInterp r;
  r.kind = RelationInterp::Kind::NormCombo;
  r.arity = arity;
  r.terms = std::move(terms);
  return r;
}

inline FunctionInterp affine(std::vector<Vector> matrix, std::size_t dim) {
  FunctionInterp f;
  f.kind = FunctionInterp::Kind::Affine;
  f.matrix = std::move(matrix);
  f.offset = Vector(dim, Rational(0));
  return f;
}

/// values^dim in lexicographic order.
inline std::vector<Vector> grid(std::size_t dim, const std::vector<Rational>& values) {
  std::vector<Vector> out{Vector{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<Vector> next;
    for (const auto& v : out) {
      for (const auto& x : values) {
        Vector w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::string norm_name(const NormSpec& n) { return n.infinity ? "linf" : "l" + std::to_string(n.p); }

}  // namespace pbcalc::detail

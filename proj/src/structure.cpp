#include "pbcalc/structure.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace pbcalc {

ExactReal norm(const Vector& v, const NormSpec& spec) {
  if (spec.infinity) {
    Rational m = 0;
    for (const auto& x : v) m = std::max(m, abs(x));
    return m;
  }
  Rational s = 0;
  for (const auto& x : v) s += rational_pow(abs(x), spec.p);
  return ExactReal(RadicalValue{s, spec.p});
}

bool norm_power_exact(const NormSpec& spec, unsigned long e) { return spec.infinity || (e > 0 && e % spec.p == 0); }

Rational norm_power(const Vector& v, const NormSpec& spec, unsigned long e) {
  if (!norm_power_exact(spec, e)) {
    throw StructureError("||.||^" + std::to_string(e) + " is not rational under l_" + std::to_string(spec.p));
  }
  if (spec.infinity) return rational_pow(norm(v, spec).rational(), e);
  Rational s = 0;
  for (const auto& x : v) s += rational_pow(abs(x), spec.p);
  return rational_pow(s, e / spec.p);
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw StructureError("dimension mismatch in vector sum");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw StructureError("dimension mismatch in vector difference");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(const Rational& c, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + to_string(v[i]);
  return out + ")";
}

namespace {

std::string tuple_text(const std::vector<Vector>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + to_string(args[i]);
  return out;
}

}  // namespace

Vector FiniteNormedStructure::apply(const std::string& fn, const std::vector<Vector>& args) const {
  if (args.empty()) {
    auto c = constants.find(fn);
    if (c == constants.end()) throw StructureError("constant '" + fn + "' is not interpreted");
    return c->second;
  }
  auto it = functions.find(fn);
  if (it == functions.end()) throw StructureError("function '" + fn + "' is not interpreted");
  const FunctionInterp& f = it->second;
  if (f.arity != args.size()) throw StructureError("function '" + fn + "' applied to wrong number of arguments");
  if (f.kind == FunctionInterp::Kind::Affine) {
    Vector out = f.offset;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) out[i] += f.matrix[i][j] * args[0][j];
    }
    return out;
  }
  auto row = f.table.find(args);
  if (row == f.table.end()) {
    throw StructureError("table function '" + fn + "' is undefined at " + tuple_text(args));
  }
  return row->second;
}

Rational FiniteNormedStructure::relate(const std::string& rel, const std::vector<Vector>& args) const {
  auto it = relations.find(rel);
  if (it == relations.end()) throw StructureError("relation '" + rel + "' is not interpreted");
  const RelationInterp& r = it->second;
  if (r.arity != args.size()) throw StructureError("relation '" + rel + "' applied to wrong number of arguments");
  if (r.kind == RelationInterp::Kind::NormCombo) {
    Rational total = 0;
    for (std::size_t i = 0; i < args.size(); ++i) total += r.terms[i].first * norm_power(args[i], norm, r.terms[i].second);
    return total;
  }
  auto row = r.table.find(args);
  if (row == r.table.end()) throw StructureError("table relation '" + rel + "' is undefined at " + tuple_text(args));
  return row->second;
}

void FiniteNormedStructure::validate() const {
  if (dim == 0) throw StructureError("dimension must be positive");
  if (!norm.infinity && norm.p == 0) throw StructureError("l_p norm needs p >= 1");
  auto check_dim = [&](const Vector& v, const std::string& where) {
    if (v.size() != dim) {
      throw StructureError(where + ": vector " + to_string(v) + " has dimension " + std::to_string(v.size()) +
                           ", expected " + std::to_string(dim));
    }
  };
  for (const auto& v : carrier) check_dim(v, "carrier");
  if (std::find(carrier.begin(), carrier.end(), zero()) == carrier.end()) {
    throw StructureError("carrier must contain the zero vector");
  }
  for (const auto& v : carrier) {
    if (std::find(carrier.begin(), carrier.end(), Rational(-1) * v) == carrier.end()) {
      throw StructureError("carrier is not closed under negation: missing -" + to_string(v));
    }
  }
  for (const auto& [n, v] : constants) check_dim(v, "constant " + n);
  for (const auto& [n, f] : functions) {
    if (f.kind == FunctionInterp::Kind::Affine) {
      if (f.matrix.size() != dim) throw StructureError("affine map " + n + " needs " + std::to_string(dim) + " rows");
      for (const auto& row : f.matrix) check_dim(row, "affine map " + n);
      check_dim(f.offset, "affine offset " + n);
    } else {
      for (const auto& [args, out] : f.table) {
        if (args.size() != f.arity) throw StructureError("table " + n + " has rows of different arity");
        for (const auto& a : args) check_dim(a, "table " + n);
        check_dim(out, "table " + n);
      }
    }
  }
  for (const auto& [n, r] : relations) {
    if (r.kind == RelationInterp::Kind::NormCombo) {
      for (const auto& [c, e] : r.terms) {
        if (!norm_power_exact(norm, e)) {
          throw StructureError("relation " + n + ": exponent " + std::to_string(e) + " is not a multiple of p=" +
                               std::to_string(norm.p));
        }
      }
    } else {
      for (const auto& [args, out] : r.table) {
        if (args.size() != r.arity) throw StructureError("table " + n + " has rows of different arity");
        for (const auto& a : args) check_dim(a, "table " + n);
      }
    }
  }
}

void FiniteNormedStructure::sync_signature() {
  Signature fresh;
  auto carry = [&](const std::string& name, unsigned arity, bool fn) {
    SymbolDecl d;
    d.name = name;
    d.arity = arity;
    const SymbolDecl* old = fn ? signature.function(name) : signature.relation(name);
    if (old != nullptr) {
      d.bound = old->bound;
      d.modulus = old->modulus;
    }
    fn ? fresh.add_function(std::move(d)) : fresh.add_relation(std::move(d));
  };
  for (const auto& [n, v] : constants) carry(n, 0, true);
  for (const auto& [n, f] : functions) carry(n, f.arity, true);
  for (const auto& [n, r] : relations) carry(n, r.arity, false);
  signature = std::move(fresh);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> words_of(const std::string& line, bool commas = false) {
  std::string s = line;
  if (commas) std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Vector parse_vector_words(const std::vector<std::string>& words) {
  Vector v;
  for (const auto& w : words) v.push_back(parse_rational(w));
  return v;
}

/// Table vectors: components joined by commas, vectors separated by spaces.
Vector parse_packed(const std::string& token) { return parse_vector_words(words_of(token, true)); }

std::string packed(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
  return out;
}

std::string spaced(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + to_string(v[i]);
  return out;
}

std::string key_value(const std::vector<std::string>& words, const std::string& key) {
  for (const auto& w : words) {
    if (w.rfind(key + "=", 0) == 0) return w.substr(key.size() + 1);
  }
  return {};
}

std::vector<std::string> split_commas(const std::string& s) { return words_of(s, true); }

struct Section {
  std::string kind;  // space carrier const fn rel bounds moduli
  std::string name;
  std::string mode;  // affine table normpower normcombo
  std::vector<std::string> header;
  std::vector<std::string> lines;
  std::size_t line_no = 0;
};

void parse_arrow(const std::string& line, std::vector<std::string>& lhs, std::string& rhs) {
  auto pos = line.find("->");
  if (pos == std::string::npos) throw StructureError("table row without '->': " + line);
  lhs = words_of(line.substr(0, pos));
  auto r = words_of(line.substr(pos + 2));
  if (r.size() != 1) throw StructureError("table row needs exactly one value after '->': " + line);
  rhs = r[0];
}

void apply_section(FiniteNormedStructure& e, const Section& s, std::vector<std::pair<bool, std::string>>& deferred) {
  auto context = [&](const std::string& msg) {
    return StructureError("section at line " + std::to_string(s.line_no) + ": " + msg);
  };
  if (s.kind == "space") {
    std::vector<std::string> all = s.header;
    for (const auto& l : s.lines) {
      auto w = words_of(l);
      all.insert(all.end(), w.begin(), w.end());
    }
    std::string d = key_value(all, "dim");
    std::string n = key_value(all, "norm");
    if (d.empty() || n.empty()) throw context("[space] needs dim= and norm=");
    e.dim = std::stoul(d);
    if (n == "linf") {
      e.norm = NormSpec{true, 0};
    } else if (n.rfind("lp:", 0) == 0) {
      e.norm = NormSpec{false, std::stoul(n.substr(3))};
    } else {
      throw context("unknown norm '" + n + "'");
    }
  } else if (s.kind == "carrier") {
    for (const auto& l : s.lines) e.carrier.push_back(parse_vector_words(words_of(l, true)));
  } else if (s.kind == "const") {
    if (s.lines.size() != 1) throw context("[const " + s.name + "] needs exactly one vector line");
    e.constants[s.name] = parse_vector_words(words_of(s.lines[0], true));
  } else if (s.kind == "fn") {
    FunctionInterp f;
    if (s.mode == "affine") {
      f.kind = FunctionInterp::Kind::Affine;
      if (s.lines.empty()) throw context("affine map " + s.name + " has no rows");
      for (std::size_t i = 0; i + 1 < s.lines.size(); ++i) f.matrix.push_back(parse_vector_words(words_of(s.lines[i], true)));
      f.offset = parse_vector_words(words_of(s.lines.back(), true));
    } else if (s.mode == "table") {
      f.kind = FunctionInterp::Kind::Table;
      f.arity = 0;
      for (const auto& l : s.lines) {
        std::vector<std::string> lhs;
        std::string rhs;
        parse_arrow(l, lhs, rhs);
        std::vector<Vector> args;
        for (const auto& t : lhs) args.push_back(parse_packed(t));
        if (f.table.empty()) f.arity = static_cast<unsigned>(args.size());
        f.table[args] = parse_packed(rhs);
      }
      if (f.table.empty()) throw context("table function " + s.name + " is empty");
    } else {
      throw context("function interpretation must be affine or table");
    }
    e.functions[s.name] = std::move(f);
  } else if (s.kind == "rel") {
    RelationInterp r;
    std::vector<std::string> all = s.header;
    for (const auto& l : s.lines) {
      if (l.find("->") != std::string::npos) continue;
      auto w = words_of(l);
      all.insert(all.end(), w.begin(), w.end());
    }
    if (s.mode == "normpower") {
      std::string k = key_value(all, "exponent");
      if (k.empty()) throw context("normpower needs exponent=");
      r.terms = {{Rational(1), std::stoul(k)}};
    } else if (s.mode == "normcombo") {
      auto cs = split_commas(key_value(all, "coeffs"));
      auto es = split_commas(key_value(all, "exponents"));
      if (cs.empty() || cs.size() != es.size()) throw context("normcombo needs matching coeffs= and exponents=");
      for (std::size_t i = 0; i < cs.size(); ++i) r.terms.emplace_back(parse_rational(cs[i]), std::stoul(es[i]));
    } else if (s.mode == "table") {
      r.kind = RelationInterp::Kind::Table;
      for (const auto& l : s.lines) {
        std::vector<std::string> lhs;
        std::string rhs;
        parse_arrow(l, lhs, rhs);
        std::vector<Vector> args;
        for (const auto& t : lhs) args.push_back(parse_packed(t));
        r.arity = static_cast<unsigned>(args.size());
        r.table[args] = parse_rational(rhs);
      }
      if (r.table.empty()) throw context("table relation " + s.name + " is empty");
    } else {
      throw context("relation interpretation must be normpower, normcombo or table");
    }
    if (r.kind == RelationInterp::Kind::NormCombo) r.arity = static_cast<unsigned>(r.terms.size());
    e.relations[s.name] = std::move(r);
  } else if (s.kind == "bounds" || s.kind == "moduli") {
    for (const auto& l : s.lines) deferred.emplace_back(s.kind == "bounds", l);
  } else {
    throw context("unknown section [" + s.kind + "]");
  }
}

}  // namespace

FiniteNormedStructure parse_structure(const std::string& text) {
  FiniteNormedStructure e;
  std::vector<Section> sections;
  std::istringstream in(text);
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    if (words_of(line).empty()) continue;
    auto open = line.find('[');
    if (open != std::string::npos && line.find_first_not_of(" \t") == open) {
      auto close = line.find(']');
      if (close == std::string::npos) throw StructureError("line " + std::to_string(line_no) + ": unclosed section header");
      auto head = words_of(line.substr(open + 1, close - open - 1));
      if (head.empty()) throw StructureError("line " + std::to_string(line_no) + ": empty section header");
      Section s;
      s.kind = head[0];
      if (head.size() > 1) s.name = head[1];
      if (head.size() > 2) s.mode = head[2];
      s.header = words_of(line.substr(close + 1));
      s.line_no = line_no;
      sections.push_back(std::move(s));
    } else {
      if (sections.empty()) throw StructureError("line " + std::to_string(line_no) + ": content before any section");
      sections.back().lines.push_back(line);
    }
  }
  std::vector<std::pair<bool, std::string>> deferred;
  for (const auto& s : sections) apply_section(e, s, deferred);
  e.sync_signature();
  for (const auto& [is_bound, line] : deferred) {
    is_bound ? apply_bound_line(e.signature, line) : apply_modulus_line(e.signature, line);
  }
  e.validate();
  return e;
}

std::string print_structure(const FiniteNormedStructure& e) {
  std::ostringstream out;
  if (!e.name.empty()) out << "# " << e.name << "\n";
  out << "[space] dim=" << e.dim << " norm=" << (e.norm.infinity ? "linf" : "lp:" + std::to_string(e.norm.p)) << "\n";
  out << "[carrier]\n";
  for (const auto& v : e.carrier) out << spaced(v) << "\n";
  for (const auto& [n, v] : e.constants) out << "[const " << n << "]\n" << spaced(v) << "\n";
  for (const auto& [n, f] : e.functions) {
    if (f.kind == FunctionInterp::Kind::Affine) {
      out << "[fn " << n << " affine]\n";
      for (const auto& row : f.matrix) out << spaced(row) << "\n";
      out << spaced(f.offset) << "\n";
    } else {
      out << "[fn " << n << " table]\n";
      for (const auto& [args, y] : f.table) {
        for (const auto& a : args) out << packed(a) << " ";
        out << "-> " << packed(y) << "\n";
      }
    }
  }
  for (const auto& [n, r] : e.relations) {
    if (r.kind == RelationInterp::Kind::Table) {
      out << "[rel " << n << " table]\n";
      for (const auto& [args, q] : r.table) {
        for (const auto& a : args) out << packed(a) << " ";
        out << "-> " << to_string(q) << "\n";
      }
    } else if (r.terms.size() == 1 && r.terms[0].first == 1) {
      out << "[rel " << n << " normpower] exponent=" << r.terms[0].second << "\n";
    } else {
      out << "[rel " << n << " normcombo] coeffs=";
      for (std::size_t i = 0; i < r.terms.size(); ++i) out << (i ? "," : "") << to_string(r.terms[i].first);
      out << " exponents=";
      for (std::size_t i = 0; i < r.terms.size(); ++i) out << (i ? "," : "") << r.terms[i].second;
      out << "\n";
    }
  }
  out << print_bound_sections(e.signature);
  return out.str();
}

FiniteNormedStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructureError("cannot open structure file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_structure(buf.str());
  } catch (const std::exception& err) {
    throw StructureError(path + ": " + err.what());
  }
}

void save_structure(const FiniteNormedStructure& e, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StructureError("cannot write structure file " + path);
  out << print_structure(e);
}

bool same_structure(const FiniteNormedStructure& a, const FiniteNormedStructure& b) {
  auto same_fn = [](const FunctionInterp& x, const FunctionInterp& y) {
    return x.kind == y.kind && x.arity == y.arity && x.matrix == y.matrix && x.offset == y.offset && x.table == y.table;
  };
  auto same_rel = [](const RelationInterp& x, const RelationInterp& y) {
    return x.kind == y.kind && x.arity == y.arity && x.terms == y.terms && x.table == y.table;
  };
  if (a.dim != b.dim || a.norm.infinity != b.norm.infinity || (!a.norm.infinity && a.norm.p != b.norm.p)) return false;
  if (a.carrier != b.carrier || a.constants != b.constants) return false;
  if (a.functions.size() != b.functions.size() || a.relations.size() != b.relations.size()) return false;
  for (const auto& [n, f] : a.functions) {
    auto it = b.functions.find(n);
    if (it == b.functions.end() || !same_fn(f, it->second)) return false;
  }
  for (const auto& [n, r] : a.relations) {
    auto it = b.relations.find(n);
    if (it == b.relations.end() || !same_rel(r, it->second)) return false;
  }
  return print_bound_sections(a.signature) == print_bound_sections(b.signature);
}

// ---------------------------------------------------------------------------
// Conformance

std::string ConformanceReport::to_text() const {
  std::ostringstream out;
  out << (ok() ? "conforms" : "violations: " + std::to_string(violations.size())) << "\n";
  for (const auto& v : violations) out << "  [" << v.kind << "] " << v.symbol << ": " << v.detail << "\n";
  for (const auto& n : notes) out << "  note: " << n << "\n";
  return out.str();
}

namespace {

constexpr std::size_t kPairLimit = 4'000'000;

long ceil_norm(const ExactReal& v) {
  long k = 1;
  while (compare(v, Rational(k)) == Ordering::Greater) ++k;
  return k;
}

void for_each_tuple(const std::vector<const Vector*>& pool, unsigned arity,
                    const std::function<void(const std::vector<Vector>&)>& fn) {
  std::vector<Vector> cur(arity);
  std::function<void(unsigned)> rec = [&](unsigned i) {
    if (i == arity) {
      fn(cur);
      return;
    }
    for (const Vector* v : pool) {
      cur[i] = *v;
      rec(i + 1);
    }
  };
  rec(0);
}

std::size_t power(std::size_t base, unsigned e) {
  std::size_t out = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && out > kPairLimit / base + 1) return kPairLimit + 1;
    out *= base;
  }
  return out;
}

}  // namespace

ConformanceReport check_structure_conformance(const Signature& sig, const FiniteNormedStructure& e) {
  ConformanceReport report;
  long max_n = 1;
  for (const auto& v : e.carrier) max_n = std::max(max_n, ceil_norm(e.norm_of(v)));

  auto levels = [&](const auto& keyed, bool use_default) {
    std::vector<long> ns;
    for (const auto& [n, row] : keyed) ns.push_back(n);
    if (use_default) {
      for (long n = 1; n <= max_n; ++n) ns.push_back(n);
    }
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
  };

  auto check_symbol = [&](const SymbolDecl& d, bool is_fn) {
    unsigned arity = d.arity;
    bool interpreted = false;
    unsigned actual = 0;
    if (is_fn && arity == 0) {
      interpreted = e.constants.count(d.name) > 0;
    } else if (is_fn) {
      auto it = e.functions.find(d.name);
      interpreted = it != e.functions.end();
      if (interpreted) actual = it->second.arity;
    } else {
      auto it = e.relations.find(d.name);
      interpreted = it != e.relations.end();
      if (interpreted) actual = it->second.arity;
    }
    if (!interpreted) {
      report.violations.push_back({d.name, "missing", "symbol is not interpreted in the structure"});
      return;
    }
    if (arity != 0 && actual != arity) {
      report.violations.push_back(
          {d.name, "arity", "declared " + std::to_string(arity) + ", interpreted with " + std::to_string(actual)});
      return;
    }
    // Value of the symbol, or nothing when a table is undefined there.
    auto value_diff = [&](const std::vector<Vector>& x, const std::vector<Vector>* y) -> std::optional<ExactReal> {
      try {
        if (is_fn) {
          Vector fx = e.apply(d.name, x);
          return y ? e.norm_of(fx - e.apply(d.name, *y)) : e.norm_of(fx);
        }
        Rational rx = e.relate(d.name, x);
        return ExactReal(abs(y ? Rational(rx - e.relate(d.name, *y)) : rx));
      } catch (const StructureError& err) {
        report.violations.push_back({d.name, "partial", err.what()});
        return std::nullopt;
      }
    };

    for (long n : levels(d.bound.entries, d.bound.linear.has_value())) {
      Rational k = *d.bound.at(n);
      std::vector<const Vector*> ball;
      for (const auto& v : e.carrier) {
        if (e.norm_of(v) <= ExactReal(Rational(n))) ball.push_back(&v);
      }
      if (arity == 0) {
        if (e.norm_of(e.constants.at(d.name)) <= ExactReal(k)) continue;
        report.violations.push_back({d.name, "bound", "N=" + std::to_string(n) + ": ||" + d.name + "|| > " + to_string(k)});
        continue;
      }
      if (power(ball.size(), arity) > kPairLimit) {
        report.notes.push_back(d.name + ": bound check at N=" + std::to_string(n) + " skipped (too many tuples)");
        continue;
      }
      for_each_tuple(ball, arity, [&](const std::vector<Vector>& x) {
        auto v = value_diff(x, nullptr);
        if (v && compare(*v, ExactReal(k)) == Ordering::Greater) {
          report.violations.push_back({d.name, "bound",
                                       "N=" + std::to_string(n) + " K=" + to_string(k) + " at " + tuple_text(x) +
                                           ": value " + to_string(*v)});
        }
      });
    }

    if (arity == 0) return;
    for (long n : levels(d.modulus.entries, d.modulus.default_factor.has_value())) {
      std::vector<const Vector*> ball;
      for (const auto& v : e.carrier) {
        if (e.norm_of(v) <= ExactReal(Rational(n))) ball.push_back(&v);
      }
      if (power(ball.size(), 2 * arity) > kPairLimit) {
        report.notes.push_back(d.name + ": modulus check at N=" + std::to_string(n) + " skipped (too many pairs)");
        continue;
      }
      for (const Rational& eps : d.modulus.check_grid()) {
        auto delta = d.modulus.at(n, eps);
        if (!delta) continue;
        std::size_t found = 0;
        for_each_tuple(ball, arity, [&](const std::vector<Vector>& x) {
          for_each_tuple(ball, arity, [&](const std::vector<Vector>& y) {
            for (unsigned i = 0; i < arity; ++i) {
              if (compare(e.norm_of(x[i] - y[i]), ExactReal(*delta)) != Ordering::Less) return;
            }
            auto v = value_diff(x, &y);
            if (v && compare(*v, ExactReal(eps)) != Ordering::Less) {
              if (found++ == 0) {
                report.violations.push_back({d.name, "modulus",
                                             "N=" + std::to_string(n) + " eps=" + to_string(eps) +
                                                 " delta=" + to_string(*delta) + ": " + tuple_text(x) + " vs " +
                                                 tuple_text(y) + " differ by " + to_string(*v)});
              }
            }
          });
        });
        if (found > 1) {
          report.notes.push_back(d.name + ": " + std::to_string(found) + " modulus failures at N=" + std::to_string(n) +
                                 " eps=" + to_string(eps) + " (first shown)");
        }
      }
    }
  };

  for (const auto& f : sig.functions()) check_symbol(f, true);
  for (const auto& r : sig.relations()) check_symbol(r, false);
  return report;
}

}  // namespace pbcalc

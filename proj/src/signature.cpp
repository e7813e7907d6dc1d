#include "pbcalc/signature.hpp"

#include <algorithm>
#include <sstream>

namespace pbcalc {

std::optional<Rational> BoundTable::at(long n) const {
  if (auto it = entries.find(n); it != entries.end()) return it->second;
  if (linear) return linear->first * n + linear->second;
  return std::nullopt;
}

void ModulusTable::normalize() {
  for (auto& [n, row] : entries) {
    Rational running = 0;
    for (auto& [eps, delta] : row) {
      if (delta <= 0) throw SignatureError("modulus must be positive (N=" + std::to_string(n) + ")");
      running = std::max(running, delta);
      delta = running;
    }
  }
}

std::optional<Rational> ModulusTable::at(long n, const Rational& eps) const {
  if (auto it = entries.find(n); it != entries.end()) {
    // Largest tabled eps' <= eps; monotonicity makes delta(eps') valid for eps.
    auto row = it->second.upper_bound(eps);
    if (row != it->second.begin()) return std::prev(row)->second;
  }
  if (default_factor) return *default_factor * eps;
  return std::nullopt;
}

std::vector<Rational> ModulusTable::check_grid() const {
  std::vector<Rational> grid = eps_grid;
  for (const auto& [n, row] : entries) {
    for (const auto& [eps, delta] : row) grid.push_back(eps);
  }
  if (grid.empty()) grid = {Rational(1, 4), Rational(1, 2), Rational(1)};
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

void Signature::add_function(SymbolDecl decl) {
  if (function(decl.name) || relation(decl.name)) throw SignatureError("duplicate symbol '" + decl.name + "'");
  decl.modulus.normalize();
  functions_.push_back(std::move(decl));
}

void Signature::add_relation(SymbolDecl decl) {
  if (function(decl.name) || relation(decl.name)) throw SignatureError("duplicate symbol '" + decl.name + "'");
  decl.modulus.normalize();
  relations_.push_back(std::move(decl));
}

namespace {

template <class V>
auto find_decl(V& list, const std::string& name) -> decltype(&list.front()) {
  for (auto& d : list) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

}  // namespace

const SymbolDecl* Signature::function(const std::string& name) const { return find_decl(functions_, name); }
const SymbolDecl* Signature::relation(const std::string& name) const { return find_decl(relations_, name); }
SymbolDecl* Signature::function_mut(const std::string& name) { return find_decl(functions_, name); }
SymbolDecl* Signature::relation_mut(const std::string& name) { return find_decl(relations_, name); }

bool Signature::is_constant(const std::string& name) const {
  const SymbolDecl* d = function(name);
  return d != nullptr && d->arity == 0;
}

void Signature::merge(const Signature& other) {
  for (const auto& f : other.functions_) {
    if (!function(f.name)) add_function(f);
  }
  for (const auto& r : other.relations_) {
    if (!relation(r.name)) add_relation(r);
  }
}

std::vector<std::string> validate_term(const Signature& sig, const Term& t) {
  std::vector<std::string> out;
  if (t.kind == TermKind::Apply) {
    const SymbolDecl* d = sig.function(t.name);
    if (d == nullptr) {
      out.push_back("unknown function symbol '" + t.name + "'");
    } else if (d->arity != t.args.size()) {
      out.push_back("arity mismatch for '" + t.name + "': declared " + std::to_string(d->arity) + ", applied to " +
                    std::to_string(t.args.size()));
    }
  }
  for (const auto& a : t.args) {
    auto sub = validate_term(sig, *a);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string value_of(const std::vector<std::string>& words, const std::string& key) {
  for (const auto& w : words) {
    if (w.rfind(key + "=", 0) == 0) return w.substr(key.size() + 1);
  }
  throw SignatureError("missing '" + key + "=' in line: " + [&] {
    std::string s;
    for (const auto& w : words) s += w + " ";
    return s;
  }());
}

SymbolDecl& symbol_for(Signature& sig, const std::string& name) {
  if (auto* f = sig.function_mut(name)) return *f;
  if (auto* r = sig.relation_mut(name)) return *r;
  throw SignatureError("bound/modulus for undeclared symbol '" + name + "'");
}

std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line;
}

}  // namespace

void apply_bound_line(Signature& sig, const std::string& line) {
  auto words = split_ws(line);
  if (words.size() < 2) throw SignatureError("malformed bound line: " + line);
  SymbolDecl& d = symbol_for(sig, words[0]);
  if (words[1] == "default") {
    d.bound.linear = std::make_pair(parse_rational(value_of(words, "slope")), parse_rational(value_of(words, "intercept")));
  } else {
    long n = std::stol(value_of(words, "N"));
    d.bound.entries[n] = parse_rational(value_of(words, "K"));
  }
}

void apply_modulus_line(Signature& sig, const std::string& line) {
  auto words = split_ws(line);
  if (words.size() < 2) throw SignatureError("malformed modulus line: " + line);
  SymbolDecl& d = symbol_for(sig, words[0]);
  if (words[1] == "default") {
    d.modulus.default_factor = parse_rational(value_of(words, "factor"));
    if (*d.modulus.default_factor <= 0) throw SignatureError("modulus factor must be positive");
  } else if (words[1] == "grid") {
    for (std::size_t i = 2; i < words.size(); ++i) d.modulus.eps_grid.push_back(parse_rational(words[i]));
  } else {
    long n = std::stol(value_of(words, "N"));
    d.modulus.entries[n][parse_rational(value_of(words, "eps"))] = parse_rational(value_of(words, "delta"));
  }
  d.modulus.normalize();
}

Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  enum class Mode { None, Bounds, Moduli } mode = Mode::None;
  for (std::string raw; std::getline(in, raw);) {
    std::string line = strip_comment(raw);
    auto words = split_ws(line);
    if (words.empty()) continue;
    if (words[0] == "[bounds]") {
      mode = Mode::Bounds;
    } else if (words[0] == "[moduli]") {
      mode = Mode::Moduli;
    } else if (words[0] == "[fn" || words[0] == "[rel") {
      if (words.size() < 2 || words[1].empty() || words[1].back() != ']') {
        throw SignatureError("malformed symbol header: " + raw);
      }
      SymbolDecl d;
      d.name = words[1].substr(0, words[1].size() - 1);
      d.arity = static_cast<unsigned>(std::stoul(value_of(words, "arity")));
      (words[0] == "[fn") ? sig.add_function(std::move(d)) : sig.add_relation(std::move(d));
      mode = Mode::None;
    } else if (mode == Mode::Bounds) {
      apply_bound_line(sig, line);
    } else if (mode == Mode::Moduli) {
      apply_modulus_line(sig, line);
    } else {
      throw SignatureError("unexpected line in signature: " + raw);
    }
  }
  return sig;
}

std::string print_bound_sections(const Signature& sig) {
  std::ostringstream out;
  std::vector<const SymbolDecl*> all;
  for (const auto& f : sig.functions()) all.push_back(&f);
  for (const auto& r : sig.relations()) all.push_back(&r);
  bool any_bound = std::any_of(all.begin(), all.end(), [](auto* d) { return !d->bound.empty(); });
  bool any_modulus =
      std::any_of(all.begin(), all.end(), [](auto* d) { return !d->modulus.empty() || !d->modulus.eps_grid.empty(); });
  if (any_bound) {
    out << "[bounds]\n";
    for (auto* d : all) {
      for (const auto& [n, k] : d->bound.entries) out << d->name << " N=" << n << " K=" << k << "\n";
      if (d->bound.linear) {
        out << d->name << " default slope=" << d->bound.linear->first << " intercept=" << d->bound.linear->second
            << "\n";
      }
    }
  }
  if (any_modulus) {
    out << "[moduli]\n";
    for (auto* d : all) {
      for (const auto& [n, row] : d->modulus.entries) {
        for (const auto& [eps, delta] : row) out << d->name << " N=" << n << " eps=" << eps << " delta=" << delta << "\n";
      }
      if (d->modulus.default_factor) out << d->name << " default factor=" << *d->modulus.default_factor << "\n";
      if (!d->modulus.eps_grid.empty()) {
        out << d->name << " grid";
        for (const auto& e : d->modulus.eps_grid) out << " " << e;
        out << "\n";
      }
    }
  }
  return out.str();
}

std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  for (const auto& f : sig.functions()) out << "[fn " << f.name << "] arity=" << f.arity << "\n";
  for (const auto& r : sig.relations()) out << "[rel " << r.name << "] arity=" << r.arity << "\n";
  out << print_bound_sections(sig);
  return out.str();
}

}  // namespace pbcalc

// pbcalc: command line front end for the approximation transforms, the
// finite-structure evaluator and the worked examples.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pbcalc/approx.hpp"
#include "pbcalc/evaluator.hpp"
#include "pbcalc/la.hpp"
#include "pbcalc/parser.hpp"
#include "pbcalc/suite.hpp"
#include "pbcalc/workbench.hpp"

#ifndef PBCALC_SOURCE_DIR
#define PBCALC_SOURCE_DIR "."
#endif
#ifndef PBCALC_DATA_DIR
#define PBCALC_DATA_DIR "data"
#endif

using namespace pbcalc;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Signature load_signature(const std::string& path) { return path.empty() ? Signature{} : parse_signature(read_file(path)); }

PBPtr load_pb(const std::string& path, const Signature& sig) {
  return parse_pb(read_file(path), sig, ParseOptions{true});
}

LAPtr load_la(const std::string& path, const Signature& sig) {
  return parse_formula(read_file(path), sig, ParseOptions{true});
}

std::vector<FiniteNormedStructure> load_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".structure") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<FiniteNormedStructure> out;
  for (const auto& f : files) out.push_back(load_structure(f.string()));
  return out;
}

IndexValue parse_p(const std::string& text) {
  if (text == "inf") return IndexValue::infinity();
  Rational p = parse_rational(text);
  if (p < 1) throw std::invalid_argument("p must be >= 1 or inf: " + text);
  return IndexValue::num(p);
}

Vector parse_vector(std::string text) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  Vector v;
  for (std::string w; in >> w;) v.push_back(parse_rational(w));
  return v;
}

void emit_structure(const fs::path& dir, const std::string& stem, const FiniteNormedStructure& e) {
  save_structure(e, (dir / (stem + ".structure")).string());
}

void emit_encoding(const fs::path& dir, const Encoding& enc) {
  write_file(dir / "signature.sig", print_signature(enc.signature));
  for (const auto& ax : enc.theory) write_file(dir / ("theory_" + ax.name + ".pb"), print_pb(*ax.formula));
  write_file(dir / "sigma.pb", print_pb(*enc.sigma));
  write_file(dir / "theta.pb", print_pb(*enc.theta));
  write_file(dir / "sentence.la", print_formula(*enc.sentence));
}

struct ExampleArgs {
  std::string name;
  std::string emit;
  long k = 1;
  long p = 2;
  long q = 4;
  long n = 2;
  std::string K = "1";
  std::string eps = "1/2";
  long truncation = 2;
  long level = 3;
  std::size_t family = 8;
};

void run_example(const ExampleArgs& a) {
  const fs::path dir(a.emit);
  fs::create_directories(dir);
  if (a.name == "reflexivity") {
    write_file(dir / "sentence.la", print_formula(*build_reflexivity_sentence()));
    write_file(dir / "branch.txt", print_branch(*reflexivity_branch(a.level)));
    emit_structure(dir, "line", line_structure({Rational(1, 2), Rational(1)}));
  } else if (a.name == "ulam") {
    emit_encoding(dir, build_ulam(a.k));
    emit_structure(dir, "identity", ulam_identity_structure(a.k));
    const fs::path fam = dir / "family";
    fs::create_directories(fam);
    const auto family = ulam_family(a.k, a.family);
    for (std::size_t i = 0; i < family.size(); ++i) emit_structure(fam, "member" + std::to_string(i + 1), family[i]);
  } else if (a.name == "behrends") {
    emit_encoding(dir, build_behrends(a.k, a.p, a.q));
    emit_structure(dir, "projections", behrends_structure(a.p, a.q));
  } else if (a.name == "krivine") {
    KrivineFormulas f = build_krivine_formulas(parse_rational(a.K), a.n, parse_rational(a.eps), a.truncation, a.p);
    write_file(dir / "base_k.pb", print_pb(*f.base_k));
    write_file(dir / "theta.pb", print_pb(*f.theta));
    write_file(dir / "negated.la", print_formula(*f.negated));
    write_file(dir / "base_k_prefix.pb", print_pb(*f.base_k_prefix));
    write_file(dir / "theta_prefix.pb", print_pb(*f.theta_prefix));
    emit_structure(dir, "l1_4", unit_basis_structure(4, NormSpec{false, 1}));
    emit_structure(dir, "l2_4", unit_basis_structure(4, NormSpec{false, 2}));
    emit_structure(dir, "linf_4", unit_basis_structure(4, NormSpec{true, 1}));
  } else {
    throw std::invalid_argument("unknown example " + a.name);
  }
  std::cout << "wrote " << a.name << " to " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pbcalc: approximations of positive bounded and infinitary formulas over finite normed structures"};
  app.require_subcommand(1);

  std::string sig_file;
  auto add_sig = [&](CLI::App* sub) { sub->add_option("--sig", sig_file, "signature file"); };

  long n = 1;
  long m = 1;
  std::string formula_file;

  auto* approx_cmd = app.add_subcommand("approx", "print phi_n");
  approx_cmd->add_option("--n", n, "level")->required();
  approx_cmd->add_option("formula", formula_file)->required();
  add_sig(approx_cmd);

  auto* neg_cmd = app.add_subcommand("neg", "print neg(phi, n)");
  neg_cmd->add_option("--n", n, "level")->required();
  neg_cmd->add_option("formula", formula_file)->required();
  add_sig(neg_cmd);

  std::string branch_file;
  auto* branch_cmd = app.add_subcommand("branch-approx", "print the branch approximation at level n");
  branch_cmd->add_option("--n", n, "level")->required();
  branch_cmd->add_option("--branch", branch_file, "branch file (default branch when omitted)");
  branch_cmd->add_option("formula", formula_file)->required();
  add_sig(branch_cmd);

  std::string sigma_file;
  std::string theta_file;
  auto* decode_cmd = app.add_subcommand("decode-almost", "almost version of sigma => theta");
  decode_cmd->add_option("--n", n)->required();
  decode_cmd->add_option("--m", m)->required();
  decode_cmd->add_option("sigma", sigma_file)->required();
  decode_cmd->add_option("theta", theta_file)->required();
  add_sig(decode_cmd);

  long m_max = 64;
  std::string structure_dir;
  auto* search_cmd = app.add_subcommand("search-uniform", "least m with sigma_m => theta_n over a family");
  search_cmd->add_option("--n", n)->required();
  search_cmd->add_option("--m-max", m_max);
  search_cmd->add_option("sigma", sigma_file)->required();
  search_cmd->add_option("theta", theta_file)->required();
  search_cmd->add_option("structure-dir", structure_dir)->required()->check(CLI::ExistingDirectory);
  add_sig(search_cmd);

  std::string structure_file;
  std::vector<std::string> assign;
  auto* eval_cmd = app.add_subcommand("eval", "exact truth of a finitary formula");
  eval_cmd->add_option("structure", structure_file)->required();
  eval_cmd->add_option("formula", formula_file)->required();
  eval_cmd->add_option("--assign", assign, "x1=a,b ...");
  add_sig(eval_cmd);

  std::size_t depth_N = 5;
  auto* ap_cmd = app.add_subcommand("ap", "levels 1..N of the approximations");
  ap_cmd->add_option("--N", depth_N)->required();
  ap_cmd->add_option("structure", structure_file)->required();
  ap_cmd->add_option("formula", formula_file)->required();
  ap_cmd->add_option("--branch", branch_file, "branch file for infinitary formulas");
  ap_cmd->add_option("--assign", assign, "x1=a,b ...");
  add_sig(ap_cmd);

  std::string signature_file;
  auto* check_cmd = app.add_subcommand("check-structure", "check declared bounds and moduli");
  check_cmd->add_option("structure", structure_file)->required();
  check_cmd->add_option("signature", signature_file)->required();

  ExampleArgs ex;
  auto* example_cmd = app.add_subcommand("example", "write an encoded example");
  example_cmd->add_option("name", ex.name)->required()->check(CLI::IsMember({"reflexivity", "ulam", "behrends", "krivine"}));
  example_cmd->add_option("--emit", ex.emit, "output directory")->required();
  example_cmd->add_option("--k", ex.k, "Ulam/Behrends parameter");
  example_cmd->add_option("--p", ex.p, "exponent p");
  example_cmd->add_option("--q", ex.q, "exponent q (Behrends)");
  example_cmd->add_option("--n", ex.n, "Krivine n");
  example_cmd->add_option("--K", ex.K, "basis constant");
  example_cmd->add_option("--eps", ex.eps, "Krivine epsilon");
  example_cmd->add_option("--truncation", ex.truncation, "prefix length");
  example_cmd->add_option("--level", ex.level, "reflexivity branch level");
  example_cmd->add_option("--family", ex.family, "Ulam family size");

  KrivineQuery kq;
  std::vector<std::string> vectors;
  std::vector<std::string> ps{"1", "2", "inf"};
  std::string eps_text = "1";
  auto* krivine_cmd = app.add_subcommand("krivine-search", "block sequences closest to l_p^n");
  krivine_cmd->add_option("structure", structure_file)->required();
  krivine_cmd->add_option("--vectors", vectors, "basis vectors, components comma separated")->required();
  krivine_cmd->add_option("--n", kq.n);
  krivine_cmd->add_option("--eps", eps_text);
  krivine_cmd->add_option("--depth", kq.coeff_depth, "coefficient tuples checked");
  krivine_cmd->add_option("--block-depth", kq.block_depth);
  krivine_cmd->add_option("--weight-depth", kq.weight_depth);
  krivine_cmd->add_option("--p", ps, "candidate exponents");

  std::string p_text = "1";
  long w_max = 64;
  long w_depth = 25;
  std::vector<std::string> family_files;
  auto* w_cmd = app.add_subcommand("estimate-w", "least w with theta_w => theta at 2 eps over a family");
  w_cmd->add_option("--n", n)->required();
  w_cmd->add_option("--p", p_text);
  w_cmd->add_option("--eps", eps_text);
  w_cmd->add_option("--w-max", w_max);
  w_cmd->add_option("--depth", w_depth);
  w_cmd->add_option("structures", family_files, "structure files (standard family when omitted)");

  SuiteOptions so;
  so.source_dir = PBCALC_SOURCE_DIR;
  so.data_dir = PBCALC_DATA_DIR;
  std::vector<int> criteria;
  auto* suite_cmd = app.add_subcommand("suite", "run the property and acceptance battery");
  suite_cmd->add_option("--criteria", criteria, "subset of 1..9");
  suite_cmd->add_option("--seed", so.seed);
  suite_cmd->add_option("--source-dir", so.source_dir);
  suite_cmd->add_option("--data-dir", so.data_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    Signature sig = load_signature(sig_file);
    if (*approx_cmd) {
      std::cout << print_pb(*approximate(*load_pb(formula_file, sig), n)) << "\n";
    } else if (*neg_cmd) {
      std::cout << print_pb(*weak_negation(*load_pb(formula_file, sig), n)) << "\n";
    } else if (*branch_cmd) {
      LAPtr phi = load_la(formula_file, sig);
      BranchPtr h = branch_file.empty() ? default_branch(*phi) : parse_branch(read_file(branch_file));
      check_shape(*phi, *h);
      std::cout << print_pb(*branch_approx(*phi, *h, n)) << "\n";
    } else if (*decode_cmd) {
      std::cout << decode_almost(*load_pb(sigma_file, sig), *load_pb(theta_file, sig), n, m).to_text();
    } else if (*search_cmd) {
      const auto family = load_dir(structure_dir);
      UniformSearchResult r =
          search_uniform_index(*load_pb(sigma_file, sig), *load_pb(theta_file, sig), n, family, m_max);
      std::cout << r.to_text();
      return r.found ? 0 : 1;
    } else if (*eval_cmd) {
      FiniteNormedStructure e = load_structure(structure_file);
      sig.merge(e.signature);
      PBPtr phi = load_pb(formula_file, sig);
      const Assignment a = parse_assignment(assign);
      if (auto why = explain_failure(e, *phi, a)) {
        std::cout << "false\n" << *why << "\n";
      } else {
        std::cout << "true\n";
      }
    } else if (*ap_cmd) {
      FiniteNormedStructure e = load_structure(structure_file);
      sig.merge(e.signature);
      LAPtr phi = load_la(formula_file, sig);
      const Assignment a = parse_assignment(assign);
      PrefixVerdict v;
      if (phi->kind == LAKind::Embed && branch_file.empty()) {
        v = eval_ap_prefix(e, *phi->pb, a, depth_N);
      } else {
        BranchPtr h = branch_file.empty() ? default_branch(*phi) : parse_branch(read_file(branch_file));
        if (is_trusted(*h)) std::cout << "note: branch contains unverified negation steps\n";
        v = eval_la_prefix(e, *phi, *h, a, depth_N);
      }
      std::cout << v.to_text() << "\n";
    } else if (*check_cmd) {
      const ConformanceReport r =
          check_structure_conformance(parse_signature(read_file(signature_file)), load_structure(structure_file));
      std::cout << r.to_text();
      return r.ok() ? 0 : 1;
    } else if (*example_cmd) {
      run_example(ex);
    } else if (*krivine_cmd) {
      FiniteNormedStructure e = load_structure(structure_file);
      for (const auto& v : vectors) kq.vectors.push_back(parse_vector(v));
      for (const auto& p : ps) kq.p_candidates.push_back(parse_p(p));
      kq.epsilon = parse_rational(eps_text);
      KrivineResult r = krivine_search(e, kq);
      std::cout << r.to_text();
      return r.best ? 0 : 1;
    } else if (*w_cmd) {
      std::vector<FiniteNormedStructure> family;
      for (const auto& f : family_files) family.push_back(load_structure(f));
      if (family.empty()) family = standard_w_family(n);
      WEstimate w = estimate_w(n, parse_p(p_text), parse_rational(eps_text), family, w_max, w_depth);
      std::cout << w.to_text();
      return w.found ? 0 : 1;
    } else if (*suite_cmd) {
      const auto results = run_suite(so, criteria);
      std::cout << report(results);
      for (const auto& r : results) {
        if (!r.passed()) return 1;
      }
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}

#include "fullmod/cli.hpp"

#include "fullmod/construction.hpp"
#include "fullmod/normform.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace fullmod {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

struct CounterexampleArgs {
  std::string poly, unit, alpha, mode = "direct", out;
  int n = 1;
  long prime_bound = 50;
};

FieldElement unit_or_search(const FieldPtr& field, const std::string& unit) {
  if (!unit.empty()) return parse_element(field, unit);
  auto found = find_small_unit(field, 3);
  if (!found) throw SearchExhausted("no norm-1 unit of infinite order with coordinates in [-3, 3]; pass --unit");
  return *found;
}

int cmd_counterexample(const CounterexampleArgs& a, std::ostream& out) {
  FieldPtr field = NumberField::create(parse_polynomial(a.poly));
  CounterexampleOptions opts;
  opts.n = a.n;
  opts.mode = parse_mode(a.mode);
  opts.prime_bound = a.prime_bound;
  if (!a.alpha.empty()) opts.alpha = parse_element(field, a.alpha);
  FieldElement eta = unit_or_search(field, a.unit);
  CounterexampleCertificate cert = build_counterexample(eta, opts);
  const std::string text = format_certificate(cert);
  if (a.out.empty()) {
    out << text;
    return 0;
  }
  write_file(a.out, text);
  std::string primes, orders;
  for (int i = 0; i < cert.n(); ++i) {
    primes += (i ? "," : "") + cert.primes[static_cast<size_t>(i)].str();
    orders += (i ? "," : "") + cert.coset_orders[static_cast<size_t>(i)].str();
  }
  out << "eta: " << format_element(eta) << "\n"
      << "mode: " << to_string(cert.mode) << "\n"
      << "primes: " << primes << "\n"
      << "coset orders: " << orders << "\n"
      << "units: " << cert.exponents.size() << "\n"
      << "wrote " << a.out << "\n";
  return 0;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::optional<CounterexampleCertificate> cert;
  try {
    cert = parse_certificate(read_file(path));
  } catch (const std::exception& e) {
    err << "malformed certificate: " << e.what() << "\n";
    return 1;
  }
  Verdict v = verify_certificate(*cert);
  out << v.transcript();
  return v.passed() ? 0 : 1;
}

struct SolveArgs {
  std::string poly, form, target = "1";
  long box = 10;
  unsigned threads = 1;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  FieldPtr field = NumberField::create(parse_polynomial(a.poly));
  NormForm f = parse_form(field, a.form);
  auto sols = solve_box(f, parse_rational(a.target), a.box, a.threads);
  std::vector<Family> families;
  ZModule m = f.module();
  if (m.is_full()) {
    families = group_families(sols, f, m);
  } else {
    err << "note: module is not full; each solution is reported as its own family\n";
    for (const auto& s : sols) families.push_back({s});
  }
  for (size_t i = 0; i < families.size(); ++i) {
    if (i) out << "\n";
    for (const auto& s : families[i]) {
      for (size_t k = 0; k < s.size(); ++k) out << (k ? "," : "") << s[k];
      out << "\n";
    }
  }
  return 0;
}

int cmd_coeffring(const std::string& path, std::ostream& out) {
  ZModule m = parse_module(read_file(path));
  out << format_module(multiplier_ring(m).module());
  return 0;
}

int cmd_intersect(const std::vector<std::string>& paths, std::ostream& out) {
  if (paths.size() != 2) throw ParseError("intersect needs exactly two --module files");
  ZModule a = parse_module(read_file(paths[0]));
  ZModule b = parse_module(read_file(paths[1]));
  out << format_module(intersect_modules(a, b));
  return 0;
}

struct PrimesArgs {
  int r = 3;
  int count = 1;
  std::string mode = "faithful", poly, unit;
  long prime_bound = 50;
};

int cmd_primes(const PrimesArgs& a, std::ostream& out) {
  Mode mode = parse_mode(a.mode);
  if (mode == Mode::Faithful) {
    PrimeSequence seq = start_sequence(a.r);
    out << "r=" << a.r << " s=" << seq.params.s << " n=" << seq.params.n << " m=" << seq.params.m
        << " threshold=" << real_root_threshold(seq.params) << "\n";
    for (int i = 0; i < a.count; ++i) {
      Integer p = next_faithful_prime(seq, 0);
      out << p << " " << seq.product_values.back() << "\n";
    }
    return 0;
  }
  if (a.poly.empty()) throw ParseError("--mode direct needs --poly");
  FieldPtr field = NumberField::create(parse_polynomial(a.poly));
  FieldElement eta = unit_or_search(field, a.unit);
  CounterexampleOptions opts;
  opts.n = a.count;
  opts.prime_bound = a.prime_bound;
  CounterexampleCertificate cert = build_counterexample(eta, opts);
  for (int i = 0; i < cert.n(); ++i)
    out << cert.primes[static_cast<size_t>(i)] << " " << cert.coset_orders[static_cast<size_t>(i)] << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Full modules with many non-associate units, certificates and norm forms", "fullmod"};
  app.require_subcommand(1);

  CounterexampleArgs ce;
  auto* c = app.add_subcommand("counterexample", "build a certificate of 2^N non-associate norm-1 units");
  c->add_option("--poly", ce.poly, "monic irreducible polynomial, ascending coefficients")->required();
  c->add_option("--unit", ce.unit, "norm-1 unit eta (power-basis coordinates)");
  c->add_option("--alpha", ce.alpha, "second generator when Q(eps) is a proper subfield");
  c->add_option("--n", ce.n, "number of primes N")->check(CLI::Range(1, 20));
  c->add_option("--mode", ce.mode, "direct or faithful")->check(CLI::IsMember({"direct", "faithful"}));
  c->add_option("--prime-bound", ce.prime_bound, "largest prime tried in direct mode")->check(CLI::PositiveNumber);
  c->add_option("--out", ce.out, "certificate path (stdout when absent)");

  std::string cert_path;
  auto* v = app.add_subcommand("verify", "re-check every condition of a certificate");
  v->add_option("path", cert_path, "certificate file")->required();

  SolveArgs so;
  auto* s = app.add_subcommand("solve", "solve a norm form equation in a box and group families");
  s->add_option("--poly", so.poly, "field polynomial")->required();
  s->add_option("--form", so.form, "'a | alpha_1 | alpha_2 | ...'")->required();
  s->add_option("--target", so.target, "right-hand side m");
  s->add_option("--box", so.box, "search |x_i| <= box")->check(CLI::NonNegativeNumber);
  s->add_option("--threads", so.threads, "worker threads")->check(CLI::Range(1U, 256U));

  std::string ring_path;
  auto* cr = app.add_subcommand("coeffring", "coefficient ring of a module");
  cr->add_option("--module", ring_path, "module file")->required();

  std::vector<std::string> module_paths;
  auto* in = app.add_subcommand("intersect", "intersection of two modules");
  in->add_option("--module", module_paths, "module file (twice)")->required()->expected(1, 2);

  PrimesArgs pr;
  auto* p = app.add_subcommand("primes", "list construction primes");
  p->add_option("--r", pr.r, "field degree for the faithful sequence")->check(CLI::Range(2, 12));
  p->add_option("--count", pr.count, "how many primes")->check(CLI::Range(1, 20));
  p->add_option("--mode", pr.mode, "direct or faithful")->check(CLI::IsMember({"direct", "faithful"}));
  p->add_option("--poly", pr.poly, "field polynomial (direct mode)");
  p->add_option("--unit", pr.unit, "unit eta (direct mode)");
  p->add_option("--prime-bound", pr.prime_bound, "largest prime tried in direct mode")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c) return cmd_counterexample(ce, out);
    if (*v) return cmd_verify(cert_path, out, err);
    if (*s) return cmd_solve(so, out, err);
    if (*cr) return cmd_coeffring(ring_path, out);
    if (*in) return cmd_intersect(module_paths, out);
    if (*p) return cmd_primes(pr, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace fullmod

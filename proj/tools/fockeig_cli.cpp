// fockeig: build eigenstates of a^2 + beta a†^2 and ab + beta a†b†, evaluate
// their overlaps, and run the verification suite.
//
// Exit codes: 0 success, 1 verification or evaluation failure, 2 usage error.

#include "fockeig/acceptance.hpp"
#include "fockeig/f1.hpp"
#include "fockeig/f2.hpp"
#include "fockeig/serialize.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using fockeig::Complex;
using fockeig::TruncationSpec;
using nlohmann::json;
namespace f1 = fockeig::f1;
namespace f2 = fockeig::f2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string model = "f1";
  double beta_re = 0, beta_im = 0;
  double lambda_re = 0, lambda_im = 0;
  std::optional<int> dim;
  std::optional<int> guard;
  std::string parity = "even";
  std::vector<std::string> families;
  std::string grid;
  std::string out;
  std::string format;

  std::string kind;
  int n = 0;
  double mu_re = 0, mu_im = 0;
  double alpha_re = 0, alpha_im = 0;
  double gamma_re = 0, gamma_im = 0;
  double delta_re = 0, delta_im = 0;
  std::string method = "closed";
  double x0 = 0.5;
  bool expect_fail = false;

  Complex beta() const { return {beta_re, beta_im}; }
  Complex lambda() const { return {lambda_re, lambda_im}; }
  bool two_mode() const { return model == "f2"; }
};

struct Grid {
  double lo, hi;
  int steps;

  double at(int k) const { return steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1); }
};

Grid parse_grid(const std::string& s) {
  Grid g{};
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.steps) || c1 != ':' || c2 != ':' || is.peek() != EOF) {
    throw UsageError("--grid must look like min:max:steps, got '" + s + "'");
  }
  if (g.steps < 1) throw UsageError("--grid needs at least one step");
  return g;
}

f2::FamilyLabel parse_family(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("--family must be 0:p or q:0, got '" + s + "'");
  int na = -1, nb = -1;
  try {
    std::size_t used_a = 0, used_b = 0;
    na = std::stoi(s.substr(0, colon), &used_a);
    nb = std::stoi(s.substr(colon + 1), &used_b);
    if (used_a != colon || used_b != s.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("--family must be 0:p or q:0, got '" + s + "'");
  }
  if (na == 0 && nb >= 0) return f2::zero_p(nb);
  if (nb == 0 && na >= 1) return f2::q_zero(na);
  throw UsageError("--family base must be |0,p> or |q,0>, got '" + s + "'");
}

TruncationSpec truncation(const Options& o) {
  const int dim = o.dim.value_or(o.two_mode() ? 48 : 256);
  const int guard = o.guard.value_or(std::min(o.two_mode() ? 8 : 16, dim / 4));
  try {
    return TruncationSpec(dim, guard);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

f1::Parity parity(const Options& o) { return o.parity == "odd" ? f1::Parity::odd : f1::Parity::even; }

f1::F1Problem f1_problem(const Options& o) {
  f1::F1Problem p{o.beta(), o.lambda(), 1.0, 0.0, truncation(o)};
  if (parity(o) == f1::Parity::odd) {
    p.c_even = 0.0;
    p.c_odd = 1.0;
  }
  return p;
}

std::vector<f2::FamilyLabel> families(const Options& o) {
  std::vector<f2::FamilyLabel> out;
  for (const auto& s : o.families) out.push_back(parse_family(s));
  if (out.empty()) out.push_back(f2::zero_p(0));
  return out;
}

f2::F2Problem f2_problem(const Options& o) {
  f2::F2Problem p{o.beta(), o.lambda(), {}, truncation(o)};
  for (const auto& f : families(o)) {
    if (f.base()[0] >= p.trunc.dim() || f.base()[1] >= p.trunc.dim()) {
      throw UsageError("--family base lies outside the truncation");
    }
    p.weights.emplace_back(f, 1.0);
  }
  return p;
}

void require_closed_form(const Options& o) {
  if (o.method == "closed" && o.beta() == Complex{}) {
    throw UsageError("the closed forms need beta != 0; rerun with --method series");
  }
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.out + " for writing");
  f << text;
}

std::string csv(const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::string s = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + num(row[i]);
    s += "\n";
  }
  return s;
}

std::string format_of(const Options& o, const char* fallback) { return o.format.empty() ? fallback : o.format; }

// ---------------------------------------------------------------- state

template <int Modes>
double relative_residual(const fockeig::Operator<Modes>& F, Complex lambda, const fockeig::State<Modes>& v) {
  const int limit = F.trunc().interior_end(F.bandwidth());
  return fockeig::interior_norm(F * v - lambda * v, limit) / fockeig::interior_norm(v, limit);
}

int cmd_state(const Options& o) {
  json doc;
  json meta = {{"model", o.model}, {"beta", pair(o.beta())}, {"lambda", pair(o.lambda())}};
  std::vector<std::vector<double>> rows;
  std::string header;
  if (!o.two_mode()) {
    const auto prob = f1_problem(o);
    const auto v = f1::f1_eigenstate(prob);
    doc = fockeig::state_to_json(v);
    meta["parity"] = o.parity;
    meta["gauge"] = parity(o) == f1::Parity::even ? "<0|psi> = 1" : "<1|psi> = 1";
    meta["interior_residual"] = relative_residual(f1::f1_operator(prob.beta, prob.trunc), prob.lambda, v);
    meta["truncation"] = {{"dim", prob.trunc.dim()}, {"guard", prob.trunc.guard()}};
    header = "n,re,im";
    for (int n = 0; n < v.size(); ++n) rows.push_back({static_cast<double>(n), v[n].real(), v[n].imag()});
  } else {
    const auto prob = f2_problem(o);
    const auto v = f2::f2_eigenstate(prob);
    doc = fockeig::state_to_json(v);
    json fams = json::array();
    for (const auto& [f, w] : prob.weights) fams.push_back(std::to_string(f.base()[0]) + ":" + std::to_string(f.base()[1]));
    meta["families"] = fams;
    meta["gauge"] = "coefficient 1 on each family's base level";
    meta["interior_residual"] = relative_residual(f2::f2_operator(prob.beta, prob.trunc), prob.lambda, v);
    meta["truncation"] = {{"dim", prob.trunc.dim()}, {"guard", prob.trunc.guard()}};
    header = "n_a,n_b,re,im";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const auto lv = fockeig::TwoModeFockVector::levels_of(prob.trunc, i);
      rows.push_back({static_cast<double>(lv[0]), static_cast<double>(lv[1]), v[i].real(), v[i].imag()});
    }
  }
  doc["metadata"] = meta;
  const std::string fmt = format_of(o, "json");
  emit(o, fmt == "csv" ? csv(header, rows) : doc.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------------- overlap

// Series route: inner products taken against the constructed state.
Complex f1_coherent_series(const fockeig::FockVector& v, Complex alpha) {
  Complex w = std::exp(-0.5 * std::norm(alpha)), sum = 0.0;
  for (int n = 0; n < v.size(); ++n) {
    if (n > 0) w *= std::conj(alpha) / std::sqrt(static_cast<double>(n));
    sum += w * v[n];
  }
  return sum;
}

Complex f1_squeezed_series(const fockeig::FockVector& v, Complex mu, f1::Parity p) {
  const int b0 = p == f1::Parity::even ? 0 : 1;
  Complex w = 1.0, sum = 0.0;
  for (int k = 0; 2 * k + b0 < v.size(); ++k) {
    if (k > 0) w *= mu * std::sqrt(static_cast<double>(2 * k + b0) * (2 * k + b0 - 1)) / static_cast<double>(k);
    sum += std::conj(w) * v[2 * k + b0];
  }
  return sum;
}

Complex f2_coherent_series(const fockeig::TwoModeFockVector& v, Complex gamma, Complex delta) {
  const int dim = v.trunc().dim();
  std::vector<Complex> wa(static_cast<std::size_t>(dim)), wb(static_cast<std::size_t>(dim));
  wa[0] = wb[0] = 1.0;
  for (int n = 1; n < dim; ++n) {
    wa[n] = wa[n - 1] * std::conj(gamma) / std::sqrt(static_cast<double>(n));
    wb[n] = wb[n - 1] * std::conj(delta) / std::sqrt(static_cast<double>(n));
  }
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto lv = fockeig::TwoModeFockVector::levels_of(v.trunc(), i);
    sum += wa[lv[0]] * wb[lv[1]] * v[i];
  }
  return sum * std::exp(-0.5 * (std::norm(gamma) + std::norm(delta)));
}

Complex f2_caves_schumaker_series(const fockeig::TwoModeFockVector& v, Complex mu, const f2::FamilyLabel& fam) {
  Complex w = 1.0, sum = 0.0;
  for (int n = 0; fam.level(n)[0] < v.trunc().dim() && fam.level(n)[1] < v.trunc().dim(); ++n) {
    if (n > 0) w *= mu * std::sqrt(static_cast<double>(n + fam.index) / n);
    sum += std::conj(w) * v.at(fam.level(n));
  }
  return sum;
}

int cmd_overlap(const Options& o) {
  const bool closed = o.method == "closed";
  if (o.kind != "squeezed" && o.kind != "caves-schumaker") require_closed_form(o);
  const Complex mu{o.mu_re, o.mu_im}, alpha{o.alpha_re, o.alpha_im};
  const Complex gamma{o.gamma_re, o.gamma_im}, delta{o.delta_re, o.delta_im};
  fockeig::OverlapValue result{0.0, true};

  if (!o.two_mode()) {
    const auto prob = f1_problem(o);
    const f1::Parity p = parity(o);
    if (o.n < 0 || o.n >= prob.trunc.dim()) throw UsageError("--n outside the truncation");
    if (o.kind == "number") {
      result.value = closed ? f1::f1_overlap_number(prob, o.n) : f1::f1_eigenstate(prob)[o.n];
    } else if (o.kind == "squeezed") {
      result = closed ? f1::f1_overlap_squeezed(prob, mu, p)
                      : fockeig::OverlapValue{f1_squeezed_series(f1::f1_eigenstate(prob), mu, p), true};
    } else if (o.kind == "coherent") {
      result = closed ? f1::f1_overlap_coherent(prob, alpha, p)
                      : fockeig::OverlapValue{f1_coherent_series(f1::f1_eigenstate(prob), alpha), true};
    } else {
      throw UsageError("--kind for f1 must be number, squeezed or coherent");
    }
  } else {
    const auto prob = f2_problem(o);
    const auto fam = prob.weights.front().first;
    if (prob.weights.size() != 1) throw UsageError("overlap takes a single --family");
    if (o.kind == "number") {
      if (o.n < 0 || fam.level(o.n)[0] >= prob.trunc.dim() || fam.level(o.n)[1] >= prob.trunc.dim()) {
        throw UsageError("--n outside the truncation");
      }
      result.value = closed ? f2::f2_overlap_number(prob, o.n, fam) : f2::f2_eigenstate(prob).at(fam.level(o.n));
    } else if (o.kind == "caves-schumaker") {
      result = closed ? f2::f2_overlap_caves_schumaker(prob, mu, fam)
                      : fockeig::OverlapValue{f2_caves_schumaker_series(f2::f2_eigenstate(prob), mu, fam), true};
    } else if (o.kind == "coherent") {
      result = closed ? f2::f2_overlap_coherent(prob, gamma, delta, fam)
                      : fockeig::OverlapValue{f2_coherent_series(f2::f2_eigenstate(prob), gamma, delta), true};
    } else {
      throw UsageError("--kind for f2 must be number, caves-schumaker or coherent");
    }
  }
  const json doc = {{"model", o.model}, {"kind", o.kind},   {"method", o.method},
                    {"value", pair(result.value)}, {"valid", result.valid}};
  emit(o, doc.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------- qfunc

int cmd_qfunc(const Options& o) {
  if (o.grid.empty()) throw UsageError("qfunc needs --grid min:max:steps");
  require_closed_form(o);
  const Grid g = parse_grid(o.grid);
  const bool closed = o.method == "closed";
  std::vector<std::vector<double>> rows;
  std::string header;

  if (!o.two_mode()) {
    const auto prob = f1_problem(o);
    const f1::Parity p = parity(o);
    const std::optional<fockeig::FockVector> v = closed ? std::nullopt : std::optional(f1::f1_eigenstate(prob));
    header = "alpha_re,alpha_im,q";
    for (int i = 0; i < g.steps; ++i) {
      for (int j = 0; j < g.steps; ++j) {
        const Complex alpha{g.at(i), g.at(j)};
        const Complex ov = closed ? f1::f1_overlap_coherent(prob, alpha, p).value : f1_coherent_series(*v, alpha);
        rows.push_back({alpha.real(), alpha.imag(), std::norm(ov)});
      }
    }
  } else {
    const auto prob = f2_problem(o);
    if (prob.weights.size() != 1) throw UsageError("qfunc takes a single --family");
    const auto fam = prob.weights.front().first;
    const Complex delta{o.delta_re, o.delta_im};
    const std::optional<fockeig::TwoModeFockVector> v = closed ? std::nullopt : std::optional(f2::f2_eigenstate(prob));
    header = "gamma_re,gamma_im,delta_re,delta_im,q";
    for (int i = 0; i < g.steps; ++i) {
      for (int j = 0; j < g.steps; ++j) {
        const Complex gamma{g.at(i), g.at(j)};
        const Complex ov = closed ? f2::f2_overlap_coherent(prob, gamma, delta, fam).value : f2_coherent_series(*v, gamma, delta);
        rows.push_back({gamma.real(), gamma.imag(), delta.real(), delta.imag(), std::norm(ov)});
      }
    }
  }
  if (format_of(o, "csv") == "json") {
    emit(o, json{{"columns", header}, {"rows", rows}}.dump(2) + "\n");
  } else {
    emit(o, csv(header, rows));
  }
  return 0;
}

// --------------------------------------------------------- wavefunction

int cmd_wavefunction(const Options& o) {
  if (o.two_mode()) throw UsageError("wavefunction is available for f1 only");
  if (o.grid.empty()) throw UsageError("wavefunction needs --grid min:max:steps");
  if (o.beta() == Complex{}) throw UsageError("the position closed form needs beta != 0");
  if (o.beta() == Complex(-1.0)) throw UsageError("beta = -1 is a pole of the position closed form");
  const Grid g = parse_grid(o.grid);
  const auto prob = f1_problem(o);
  const f1::Parity p = parity(o);
  const Complex ref = f1::f1_wavefunction(prob, o.x0, p);
  if (ref == Complex{}) throw UsageError("the wavefunction vanishes at --x0; pick another reference point");
  std::vector<std::vector<double>> rows;
  for (int k = 0; k < g.steps; ++k) {
    const double x = g.at(k);
    const Complex r = f1::f1_wavefunction(prob, x, p) / ref;
    rows.push_back({x, r.real(), r.imag()});
  }
  const std::string header = "x,ratio_re,ratio_im";
  if (format_of(o, "csv") == "json") {
    emit(o, json{{"columns", header}, {"x0", o.x0}, {"rows", rows}}.dump(2) + "\n");
  } else {
    emit(o, csv(header, rows));
  }
  return 0;
}

// --------------------------------------------------------------- verify

json result_json(const fockeig::acceptance::CriterionResult& r) {
  return {{"id", r.id},         {"name", r.name},   {"pass", r.pass}, {"measured", std::isnan(r.measured) ? json() : json(r.measured)},
          {"threshold", r.threshold}, {"detail", r.detail}};
}

void print_result(const fockeig::acceptance::CriterionResult& r) {
  std::printf("criterion %2d %s  %-58s measured %-10.3e threshold %.0e\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(),
              r.measured, r.threshold);
  std::printf("             %s\n", r.detail.c_str());
}

int cmd_verify(const Options& o) {
  namespace acc = fockeig::acceptance;
  const acc::Config cfg = o.dim ? acc::Config::with_dim(*o.dim) : acc::Config{};
  json report;
  bool ok = true;
  if (o.expect_fail) {
    const auto r = acc::wrong_sector_control(cfg);
    print_result(r);
    ok = r.pass;
    report = {{"negative_control", result_json(r)}, {"all_pass", ok}};
  } else {
    json list = json::array();
    for (int id = 1; id <= 11; ++id) {
      const auto r = acc::run_criterion(id, cfg);
      print_result(r);
      ok = ok && r.pass;
      list.push_back(result_json(r));
    }
    report = {{"criteria", list}, {"all_pass", ok}};
  }
  std::printf("%s\n", ok ? "all checks passed" : "verification FAILED");
  if (!o.out.empty()) emit(o, report.dump(2) + "\n");
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- flags

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "f1 = a^2 + beta a+^2, f2 = ab + beta a+b+")->check(CLI::IsMember({"f1", "f2"}));
  sub->add_option("--beta-re", o.beta_re, "Re beta");
  sub->add_option("--beta-im", o.beta_im, "Im beta");
  sub->add_option("--lambda-re", o.lambda_re, "Re lambda");
  sub->add_option("--lambda-im", o.lambda_im, "Im lambda");
  sub->add_option("--dim", o.dim, "retained levels per mode (default 256 for f1, 48 for f2)");
  sub->add_option("--guard", o.guard, "boundary band skipped by residual checks");
  sub->add_option("--parity", o.parity, "f1 component")->check(CLI::IsMember({"even", "odd"}));
  sub->add_option("--family", o.families, "f2 family base n_a:n_b, i.e. 0:p or q:0 (repeatable)");
  sub->add_option("--out", o.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Eigenstates of a^2 + beta a+^2 and ab + beta a+b+ on truncated Fock spaces"};
  app.require_subcommand(1);

  auto* state = app.add_subcommand("state", "coefficient table of an eigenstate");
  add_model_flags(state, o);
  state->add_option("--format", o.format, "json (default) or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* overlap = app.add_subcommand("overlap", "one overlap value");
  add_model_flags(overlap, o);
  overlap->add_option("--kind", o.kind, "number, squeezed, coherent (f1); number, caves-schumaker, coherent (f2)")->required();
  overlap->add_option("--n", o.n, "number level (f1) or diagonal index (f2)");
  overlap->add_option("--mu-re", o.mu_re);
  overlap->add_option("--mu-im", o.mu_im);
  overlap->add_option("--alpha-re", o.alpha_re);
  overlap->add_option("--alpha-im", o.alpha_im);
  overlap->add_option("--gamma-re", o.gamma_re);
  overlap->add_option("--gamma-im", o.gamma_im);
  overlap->add_option("--delta-re", o.delta_re);
  overlap->add_option("--delta-im", o.delta_im);
  overlap->add_option("--method", o.method, "closed form or series over the constructed state")
      ->check(CLI::IsMember({"closed", "series"}));

  auto* qfunc = app.add_subcommand("qfunc", "|<alpha|psi>|^2 (f1) or |<gamma,delta|phi>|^2 at fixed delta (f2) on a grid");
  add_model_flags(qfunc, o);
  qfunc->add_option("--grid", o.grid, "min:max:steps, used for both real and imaginary axes");
  qfunc->add_option("--delta-re", o.delta_re, "fixed delta for f2");
  qfunc->add_option("--delta-im", o.delta_im);
  qfunc->add_option("--method", o.method)->check(CLI::IsMember({"closed", "series"}));
  qfunc->add_option("--format", o.format, "csv (default) or json")->check(CLI::IsMember({"json", "csv"}));

  auto* wave = app.add_subcommand("wavefunction", "<x|psi> / <x0|psi> for f1 on a grid");
  add_model_flags(wave, o);
  wave->add_option("--grid", o.grid, "min:max:steps");
  wave->add_option("--x0", o.x0, "reference point (default 0.5)");
  wave->add_option("--format", o.format, "csv (default) or json")->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--dim", o.dim, "shrink the truncations to this many levels");
  verify->add_flag("--expect-fail", o.expect_fail, "run the wrong-sector negative control instead");
  verify->add_option("--out", o.out, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*state) return cmd_state(o);
    if (*overlap) return cmd_overlap(o);
    if (*qfunc) return cmd_qfunc(o);
    if (*wave) return cmd_wavefunction(o);
    if (*verify) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

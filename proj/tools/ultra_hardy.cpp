// Command line front end: constants, verification suites, and sweep tables.
// Reports are JSON (tables CSV) with floats at 17 significant digits so runs
// with identical configuration are byte-identical.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ultrahardy/fracop.hpp"
#include "ultrahardy/inequality_lab.hpp"
#include "ultrahardy/quadrature.hpp"
#include "ultrahardy/specfun.hpp"
#include "ultrahardy/sphere.hpp"
#include "ultrahardy/transform.hpp"

using namespace ultrahardy;

namespace {

struct RunConfig {
  double lambda = 1.0;
  double sigma = 0.5;
  int degree = 64;
  int nodes = 200;
  double tol = 1e-8;
  bool tol_given = false;
  unsigned seed = 0;
  std::string out;
  std::string format;  // empty = command default
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Tiny ordered-JSON string builder; emission order is fixed by call order.
class Json {
 public:
  Json& field(const std::string& k, double v) { return raw(k, fmt(v)); }
  Json& field(const std::string& k, int v) { return raw(k, std::to_string(v)); }
  Json& field(const std::string& k, unsigned v) {
    return raw(k, std::to_string(v));
  }
  Json& field(const std::string& k, bool v) {
    return raw(k, v ? "true" : "false");
  }
  Json& field(const std::string& k, const std::string& v) {
    return raw(k, "\"" + v + "\"");
  }
  Json& field(const std::string& k, const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += fmt(v[i]);
    }
    return raw(k, s + "]");
  }
  Json& raw(const std::string& k, const std::string& v) {
    if (!body_.empty()) body_ += ',';
    body_ += "\"" + k + "\":" + v;
    return *this;
  }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

void stamp_config(Json& j, const std::string& command, const RunConfig& cfg,
                  double effective_tol) {
  j.field("schema", std::string("ultra-hardy/1"));
  j.field("command", command);
  j.field("lambda", cfg.lambda);
  j.field("sigma", cfg.sigma);
  j.field("degree", cfg.degree);
  j.field("nodes", cfg.nodes);
  j.field("tol", effective_tol);
  j.field("seed", cfg.seed);
}

int emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream f(cfg.out);
  if (!f) {
    std::cerr << "cannot open output file: " << cfg.out << "\n";
    return 1;
  }
  f << text << "\n";
  return f.good() ? 0 : 1;
}

int usage_error(const std::string& msg) {
  std::cerr << "usage error: " << msg << "\n";
  return 2;
}

bool check_format(const RunConfig& cfg, const char* wanted) {
  return cfg.format.empty() || cfg.format == wanted;
}

CoefficientVector random_poly(std::mt19937& gen, double lambda, int degree) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  CoefficientVector u;
  u.lambda = lambda;
  u.coeffs.resize(static_cast<std::size_t>(degree) + 1);
  for (auto& a : u.coeffs) a = U(gen);
  return u;
}

// ---- suites ----------------------------------------------------------

struct SuiteResult {
  bool pass = false;
  double threshold = 0.0;
  std::string payload;  // raw JSON fields
};

SuiteResult suite_hardy(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 1e-9;
  FracParams p(BasisParams(cfg.lambda), cfg.sigma);
  std::mt19937 gen(cfg.seed);
  const int count = 100;
  double min_rel = 1e300;
  for (int i = 0; i < count; ++i) {
    auto rep = hardy_check(random_poly(gen, cfg.lambda, std::min(cfg.degree, 10)), p);
    min_rel = std::min(min_rel, rep.deficit / rep.rhs);
  }
  res.pass = min_rel >= -res.threshold;
  Json j;
  j.field("count", count);
  j.field("min_deficit_rel", min_rel);
  res.payload = j.str();
  return res;
}

SuiteResult suite_gsr(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 1e-4;
  FracParams p(BasisParams(cfg.lambda), cfg.sigma);
  QuadratureRule inner = gauss_gegenbauer(cfg.nodes, BasisParams(cfg.lambda - 0.5));
  KernelForm form(p, inner);
  std::mt19937 gen(cfg.seed);
  double worst = 0.0;
  std::vector<double> rel_errs;
  for (int i = 0; i < 3; ++i) {
    auto u = random_poly(gen, cfg.lambda, std::min(cfg.degree, 4));
    auto rep = hardy_check(u, p);
    const double gsr =
        ground_state_deficit([&](double x) { return synthesize(u, x); }, form);
    const double rel = std::abs(gsr - rep.deficit) / rep.rhs;
    rel_errs.push_back(rel);
    worst = std::max(worst, rel);
  }
  res.pass = worst <= res.threshold;
  Json j;
  j.field("cases", rel_errs);
  j.field("max_rel_err", worst);
  res.payload = j.str();
  return res;
}

SuiteResult suite_lemma2(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 1e-10;
  const FracRegime regime =
      cfg.sigma < 1.0 ? FracRegime::kernel : FracRegime::extended;
  FracParams p(BasisParams(cfg.lambda), cfg.sigma, regime);
  double worst = 0.0;
  for (int m = 0; m <= 10; ++m) {
    auto [lhs, rhs] = power_weight_ratio_check(m, p);
    worst = std::max(worst, std::abs(lhs / rhs - 1.0));
  }
  auto op = power_weight_operator_check(p, 128, 40, 19);
  res.pass = worst <= res.threshold && op.max_coeff_rel_err <= res.threshold;
  Json j;
  j.field("max_ratio_rel_err", worst);
  j.field("max_coeff_rel_err", op.max_coeff_rel_err);
  j.field("pointwise_rel_err_N128", op.max_pointwise_rel_err);
  res.payload = j.str();
  return res;
}

SuiteResult suite_kernel(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 1e-5;
  FracParams p(BasisParams(cfg.lambda), cfg.sigma);
  QuadratureRule inner = gauss_gegenbauer(cfg.nodes, BasisParams(cfg.lambda - 0.5));
  double worst = 0.0;
  for (int n = 0; n <= 6; ++n) {
    const double mn = multiplier(n, p);
    double num = 0.0, den = 0.0;
    for (int i = -10; i <= 10; ++i) {
      const double x = 0.09 * i;
      const double cn = gegenbauer(n, cfg.lambda, x) /
                        std::sqrt(norm_sq(n, p.basis));
      const double got = apply_nonlocal(
          [&](double y) {
            return gegenbauer(n, cfg.lambda, y) /
                   std::sqrt(norm_sq(n, p.basis));
          },
          x, p, inner);
      num = std::max(num, std::abs(got - mn * cn));
      den = std::max(den, std::abs(mn * cn));
    }
    worst = std::max(worst, num / den);
  }
  res.pass = worst <= res.threshold;
  Json j;
  j.field("max_rel_err", worst);
  res.payload = j.str();
  return res;
}

SuiteResult suite_heisenberg(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 0.0;
  FracParams p(BasisParams(cfg.lambda), cfg.sigma);
  std::mt19937 gen(cfg.seed);
  double min_slack = 1e300;
  for (int i = 0; i < 100; ++i) {
    const double s =
        heisenberg_check(random_poly(gen, cfg.lambda, std::min(cfg.degree, 10)), p);
    min_slack = std::min(min_slack, s);
  }
  res.pass = min_slack >= -res.threshold;
  Json j;
  j.field("count", 100);
  j.field("min_slack", min_slack);
  res.payload = j.str();
  return res;
}

SuiteResult suite_loguncert(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 1e-5;
  std::mt19937 gen(cfg.seed);
  const double h = 1e-4;
  double worst_fd = 0.0, min_gap_rel = 1e300;
  for (int i = 0; i < 10; ++i) {
    auto u = random_poly(gen, cfg.lambda, std::min(cfg.degree, 8));
    double mass = 0.0;
    for (double a : u.coeffs) mass += a * a;
    const double gap = log_uncertainty_gap(u);
    const double fd = (phi(h, u) - phi(-h, u)) / (2.0 * h);
    worst_fd = std::max(worst_fd, std::abs(gap - fd) / std::max(1.0, std::abs(gap)));
    min_gap_rel = std::min(min_gap_rel, gap / mass);
  }
  res.pass = worst_fd <= res.threshold && min_gap_rel >= -1e-8;
  Json j;
  j.field("count", 10);
  j.field("max_fd_mismatch", worst_fd);
  j.field("min_gap_over_mass", min_gap_rel);
  res.payload = j.str();
  return res;
}

SuiteResult suite_sharpness(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 0.01;
  FracParams p(BasisParams(cfg.lambda), cfg.sigma);
  const std::vector<double> eps = {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32,
                                   1.0 / 64};
  auto probe = sharpness_probe(p, eps, std::max(cfg.degree, 256));
  bool decreasing = true, above = true;
  for (std::size_t i = 0; i + 1 < probe.ratios.size(); ++i)
    if (!(probe.ratios[i + 1] < probe.ratios[i])) decreasing = false;
  for (double r : probe.ratios)
    if (r < probe.Q * (1.0 - 1e-12)) above = false;
  const double extrap_rel = std::abs(probe.extrapolated / probe.Q - 1.0);
  const double final_rel = std::abs(probe.ratios.back() / probe.Q - 1.0);
  res.pass = decreasing && above && extrap_rel <= res.threshold &&
             final_rel <= 0.05;
  Json j;
  j.field("eps", eps);
  j.field("ratios", probe.ratios);
  j.field("Q", probe.Q);
  j.field("extrapolated", probe.extrapolated);
  j.field("extrap_rel_err", extrap_rel);
  j.field("final_rel_err", final_rel);
  j.field("decreasing", decreasing);
  res.payload = j.str();
  return res;
}

SuiteResult suite_sphere(const RunConfig& cfg) {
  SuiteResult res;
  res.threshold = cfg.tol_given ? cfg.tol : 1e-9;
  std::mt19937 gen(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  // random truncated fields: deficit nonnegative
  double min_rel = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    SphereField f;
    f.d = 2;
    f.max_j = 3;
    for (int j = 0; j <= f.max_j; ++j)
      for (int k = 1; k <= sphere_dim(j, 2); ++k) {
        SphereChannel ch;
        ch.j = j;
        ch.k = k;
        ch.lambda_j = j + 0.5;
        ch.coeffs.lambda = ch.lambda_j;
        ch.coeffs.coeffs.resize(7);
        for (auto& a : ch.coeffs.coeffs) a = U(gen);
        f.channels.push_back(ch);
      }
    auto rep = sphere_hardy_check(f, cfg.sigma);
    min_rel = std::min(min_rel, rep.deficit / rep.rhs);
  }

  // invariant field: sphere report coincides with the 1-D one at lambda 1/2
  auto u = random_poly(gen, 0.5, std::min(cfg.degree, 10));
  SphereField inv;
  inv.d = 2;
  inv.max_j = 0;
  SphereChannel ch;
  ch.j = 0;
  ch.k = 1;
  ch.lambda_j = 0.5;
  ch.coeffs = u;
  inv.channels.push_back(ch);
  auto rep_s = sphere_hardy_check(inv, cfg.sigma);
  auto rep_1 = hardy_check(u, FracParams(BasisParams(0.5), cfg.sigma));
  const double red_err = std::max(std::abs(rep_s.lhs / rep_1.lhs - 1.0),
                                  std::abs(rep_s.rhs / rep_1.rhs - 1.0));

  bool mono = true;
  double prev = hardy_constant(FracParams(BasisParams(0.5), cfg.sigma));
  for (int j = 1; j <= 20; ++j) {
    const double q = hardy_constant(FracParams(BasisParams(j + 0.5), cfg.sigma));
    if (q < prev) mono = false;
    prev = q;
  }

  res.pass = min_rel >= -res.threshold && red_err <= 1e-10 && mono;
  Json j;
  j.field("count", 20);
  j.field("min_deficit_rel", min_rel);
  j.field("reduction_rel_err", red_err);
  j.field("q_monotone_in_j", mono);
  res.payload = j.str();
  return res;
}

// ---- commands --------------------------------------------------------

int cmd_constants(const RunConfig& cfg) {
  if (!check_format(cfg, "json"))
    return usage_error("constants emits JSON only");
  FracParams p(BasisParams(cfg.lambda), cfg.sigma);
  const KernelConstants kc = kernel_constants(p);
  std::vector<double> mult;
  for (int n = 0; n <= cfg.degree; ++n) mult.push_back(multiplier(n, p));
  Json j;
  stamp_config(j, "constants", cfg, cfg.tol);
  j.field("Q", hardy_constant(p));
  j.field("D", kc.D);
  j.field("E", kc.E);
  j.field("c_lambda", kc.c_lambda);
  j.field("multipliers", mult);
  return emit(cfg, j.str());
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  if (!check_format(cfg, "json")) return usage_error("verify emits JSON only");
  SuiteResult res;
  if (suite == "hardy") res = suite_hardy(cfg);
  else if (suite == "gsr") res = suite_gsr(cfg);
  else if (suite == "lemma2") res = suite_lemma2(cfg);
  else if (suite == "kernel") res = suite_kernel(cfg);
  else if (suite == "heisenberg") res = suite_heisenberg(cfg);
  else if (suite == "loguncert") res = suite_loguncert(cfg);
  else if (suite == "sharpness") res = suite_sharpness(cfg);
  else if (suite == "sphere") res = suite_sphere(cfg);
  else return usage_error("unknown suite: " + suite);

  Json j;
  stamp_config(j, "verify", cfg, res.threshold);
  j.field("suite", suite);
  j.field("pass", res.pass);
  j.raw("result", res.payload);
  const int io = emit(cfg, j.str());
  if (io != 0) return io;
  return res.pass ? 0 : 1;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

int cmd_table(const RunConfig& cfg, const std::optional<std::string>& lambdas_text,
              const std::optional<std::string>& sigmas_text) {
  if (!check_format(cfg, "csv")) return usage_error("table emits CSV only");
  std::vector<double> lambdas, sigmas;
  try {
    lambdas = lambdas_text ? parse_grid(*lambdas_text)
                           : std::vector<double>{cfg.lambda};
    sigmas = sigmas_text ? parse_grid(*sigmas_text)
                         : std::vector<double>{cfg.sigma};
  } catch (const std::exception&) {
    return usage_error("could not parse grid values");
  }
  if (lambdas.empty() || sigmas.empty()) return usage_error("empty grid");
  for (double l : lambdas)
    if (!(l > 0.0)) return usage_error("lambda must be positive");
  for (double s : sigmas)
    if (!(s > 0.0 && s < 1.0)) return usage_error("sigma must lie in (0,1)");

  std::string csv = "lambda,sigma,Q,deficit_min,ratio\n";
  const std::vector<double> eps = {1.0 / 4, 1.0 / 8, 1.0 / 16, 1.0 / 32,
                                   1.0 / 64};
  for (double lam : lambdas)
    for (double sig : sigmas) {
      FracParams p(BasisParams(lam), sig);
      std::mt19937 gen(cfg.seed);
      double min_def = 1e300;
      for (int i = 0; i < 100; ++i) {
        auto rep = hardy_check(random_poly(gen, lam, std::min(cfg.degree, 10)), p);
        min_def = std::min(min_def, rep.deficit);
      }
      auto probe = sharpness_probe(p, eps, std::max(cfg.degree, 256));
      csv += fmt(lam) + "," + fmt(sig) + "," + fmt(hardy_constant(p)) + "," +
             fmt(min_def) + "," + fmt(probe.ratios.back()) + "\n";
    }
  csv.pop_back();  // emit() appends the final newline
  return emit(cfg, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultraspherical fractional Hardy inequality toolbox"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string suite, lambdas_text, sigmas_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambda, "basis parameter (> 0)");
    sub->add_option("--sigma", cfg.sigma, "fractional order");
    sub->add_option("--degree", cfg.degree, "coefficient cutoff")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--nodes", cfg.nodes, "quadrature nodes")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "override the suite tolerance");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv");
  };

  CLI::App* constants = app.add_subcommand("constants", "print Q, D, E, c_lambda, multipliers");
  add_common(constants);
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "hardy, gsr, lemma2, kernel, heisenberg, loguncert, sharpness, sphere")
      ->required();
  add_common(verify);
  CLI::App* table = app.add_subcommand("table", "sweep (sigma, lambda) grids to CSV");
  add_common(table);
  table->add_option("--lambdas", lambdas_text, "comma separated lambda grid");
  table->add_option("--sigmas", sigmas_text, "comma separated sigma grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  cfg.tol_given = (constants->count("--tol") + verify->count("--tol") +
                   table->count("--tol")) > 0;
  if (cfg.format != "" && cfg.format != "json" && cfg.format != "csv")
    return usage_error("format must be json or csv");
  if (!(cfg.lambda > 0.0)) return usage_error("lambda must be positive");

  try {
    if (constants->parsed()) {
      if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0))
        return usage_error("sigma must lie in (0,1)");
      return cmd_constants(cfg);
    }
    if (verify->parsed()) {
      const bool extended_ok = suite == "lemma2";
      const double hi = extended_ok ? 2.0 * cfg.lambda + 1.0 : 1.0;
      if (!(cfg.sigma > 0.0 && cfg.sigma < hi))
        return usage_error("sigma out of range for this suite");
      return cmd_verify(cfg, suite);
    }
    return cmd_table(cfg,
                     table->count("--lambdas")
                         ? std::optional<std::string>(lambdas_text)
                         : std::nullopt,
                     table->count("--sigmas")
                         ? std::optional<std::string>(sigmas_text)
                         : std::nullopt);
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

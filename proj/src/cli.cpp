#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ginprod/cli.hpp"
#include "ginprod/ensemble.hpp"
#include "ginprod/hole.hpp"
#include "ginprod/overcrowd.hpp"
#include "ginprod/sampler.hpp"
#include "ginprod/special.hpp"
#include "ginprod/stats.hpp"
#include "ginprod/version.hpp"

namespace ginprod {
namespace {

using nlohmann::json;

constexpr double kUnderflowLog = -700.0;
constexpr double kValidateAlpha = 0.001;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const char* msg) {
  if (!ok) throw UsageError(msg);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

  std::string render() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ',';
        out += r[i];
      }
      out += '\n';
    }
    return out;
  }
};

json params_json(const Command& cmd) {
  json p;
  p["n"] = cmd.params.n;
  if (cmd.params.infinite())
    p["N"] = "inf";
  else
    p["N"] = cmd.params.N;
  if (cmd.r) p["r"] = *cmd.r;
  if (cmd.r2) p["r2"] = *cmd.r2;
  if (cmd.k) p["k"] = *cmd.k;
  if (cmd.m) p["m"] = *cmd.m;
  if (cmd.grid) p["grid"] = *cmd.grid;
  if (cmd.mc_samples) p["mc_samples"] = *cmd.mc_samples;
  if (cmd.tol) p["tol"] = *cmd.tol;
  if (cmd.check) p["check"] = *cmd.check;
  p["threads"] = cmd.threads;
  p["format"] = cmd.format == OutputFormat::kJson ? "json" : "csv";
  return p;
}

void warn(json& errors, const std::string& msg) {
  errors.push_back({{"type", "warning"}, {"message", msg}});
}

// Linear-space companion of a log probability under the underflow rule.
std::pair<double, bool> linear_prob(double log_value) {
  const bool underflow = log_value < kUnderflowLog;
  return {underflow ? 0.0 : std::exp(log_value), underflow};
}

std::vector<double> point_abscissae(const Command& cmd, const char* verb) {
  require(!(cmd.grid && (cmd.r2 || cmd.r)),
          "--grid conflicts with --r/--r2");
  if (cmd.grid) return *cmd.grid;
  require(!(cmd.r2 && cmd.r), "give either --r or --r2, not both");
  if (cmd.r2) return {*cmd.r2};
  if (cmd.r) return {*cmd.r * *cmd.r};
  throw UsageError(verb == std::string("density")
                       ? "density needs --r2, --r, or --grid"
                       : "survival needs --r2, --r, or --grid");
}

json mc_json(const McResult& mc) {
  return {{"estimate", mc.estimate},
          {"halfwidth", mc.halfwidth},
          {"samples", mc.samples}};
}

void run_survival(const Command& cmd, json& results, CsvTable& csv) {
  const int k = cmd.k.value_or(1);
  const auto xs = point_abscissae(cmd, "survival");
  json r2a = json::array(), lg = json::array(), va = json::array(),
       ea = json::array(), ua = json::array();
  csv.header = {"r2", "log_value", "value", "est_error", "underflow"};
  for (double r2 : xs) {
    const LogProb s = survival_log(k, cmd.params.n, r2);
    const auto [v, uf] = linear_prob(s.log_value);
    r2a.push_back(r2);
    lg.push_back(s.log_value);
    va.push_back(v);
    ea.push_back(s.est_error);
    ua.push_back(uf);
    csv.row({fmt17(r2), fmt17(s.log_value), fmt17(v), fmt17(s.est_error),
             uf ? "true" : "false"});
  }
  results["r2"] = r2a;
  results["log_value"] = lg;
  results["value"] = va;
  results["est_error"] = ea;
  results["underflow"] = ua;
}

void run_density(const Command& cmd, json& results, CsvTable& csv) {
  const int k = cmd.k.value_or(1);
  const auto xs = point_abscissae(cmd, "density");
  json xa = json::array(), da = json::array(), ea = json::array();
  csv.header = {"x", "density", "est_error"};
  for (double x : xs) {
    const double d = radial_density(k, cmd.params.n, x);
    const double est = g_core(x, cmd.params.n).est_error;
    xa.push_back(x);
    da.push_back(d);
    ea.push_back(est);
    csv.row({fmt17(x), fmt17(d), fmt17(est)});
  }
  results["x"] = xa;
  results["density"] = da;
  results["est_error"] = ea;
}

void run_hole(const Command& cmd, json& results, CsvTable& csv, json& errors) {
  require(bool(cmd.r), "hole needs --r");
  const double r = *cmd.r;
  const int n = cmd.params.n;

  if (cmd.params.infinite()) {
    require(!cmd.mc_samples, "--mc-samples needs a finite --N");
    const HoleInfinite h = hole_infinite_log(n, r, cmd.tol.value_or(1e-12));
    const auto [v, uf] = linear_prob(h.value.log_value);
    results["log_value"] = h.value.log_value;
    results["value"] = v;
    results["underflow"] = uf;
    results["est_error"] = h.value.est_error;
    results["truncation_rank"] = h.truncation_rank;
    results["tail_bound"] = h.tail_bound;
    csv.header = {"r", "log_value", "value", "est_error", "underflow",
                  "truncation_rank", "tail_bound"};
    std::vector<std::string> row = {fmt17(r),
                                    fmt17(h.value.log_value),
                                    fmt17(v),
                                    fmt17(h.value.est_error),
                                    uf ? "true" : "false",
                                    std::to_string(h.truncation_rank),
                                    fmt17(h.tail_bound)};
    if (std::pow(r, 2.0 / n) >= 1.0) {
      const HoleBounds b = hole_bounds_infinite(n, r);
      results["lower_log"] = b.lower_log;
      results["upper_log"] = b.upper_log;
      csv.header.insert(csv.header.end(), {"lower_log", "upper_log"});
      row.push_back(fmt17(b.lower_log));
      row.push_back(fmt17(b.upper_log));
    } else {
      warn(errors, "bounds omitted: they need r^(2/n) >= 1");
    }
    csv.row(std::move(row));
    return;
  }

  const LogProb exact = hole_exact_log(cmd.params, r);
  const double asympt = hole_asympt_log(cmd.params, r);
  if (std::pow(r, 2.0 / n) <= double(cmd.params.N))
    warn(errors, "asymptotic regime needs r^(2/n) > N");
  const auto [v, uf] = linear_prob(exact.log_value);
  results["exact_log"] = exact.log_value;
  results["exact"] = v;
  results["underflow"] = uf;
  results["est_error"] = exact.est_error;
  results["asympt_log"] = asympt;
  csv.header = {"r", "exact_log", "exact", "est_error", "underflow",
                "asympt_log"};
  std::vector<std::string> row = {fmt17(r),   fmt17(exact.log_value),
                                  fmt17(v),   fmt17(exact.est_error),
                                  uf ? "true" : "false", fmt17(asympt)};
  if (cmd.mc_samples) {
    const McResult mc =
        hole_mc(cmd.params, r, *cmd.mc_samples, cmd.seed, cmd.threads);
    results["mc"] = mc_json(mc);
    csv.header.insert(csv.header.end(), {"mc_estimate", "mc_halfwidth"});
    row.push_back(fmt17(mc.estimate));
    row.push_back(fmt17(mc.halfwidth));
  }
  csv.row(std::move(row));
}

void run_overcrowd(const Command& cmd, json& results, CsvTable& csv) {
  require(bool(cmd.r), "overcrowd needs --r");
  require(bool(cmd.m), "overcrowd needs --m");
  const int n = cmd.params.n;
  const double r = *cmd.r;
  const long m = *cmd.m;
  const double lower = overcrowd_lower_log(n, r, m);
  const double upper = overcrowd_upper_log(n, r, m);
  results["lower_log"] = lower;
  results["upper_log"] = upper;
  csv.header = {"r", "m", "lower_log", "upper_log"};
  std::vector<std::string> row = {fmt17(r), std::to_string(m), fmt17(lower),
                                  fmt17(upper)};
  if (m >= 2) {
    const double scale = 0.5 * n * double(m) * double(m) * std::log(double(m));
    const double norm_lower = -lower / scale + 0.0;
    const double norm_upper = -upper / scale + 0.0;
    results["normalized_lower"] = norm_lower;
    results["normalized_upper"] = norm_upper;
    csv.header.insert(csv.header.end(),
                      {"normalized_lower", "normalized_upper"});
    row.push_back(fmt17(norm_lower));
    row.push_back(fmt17(norm_upper));
  }
  if (cmd.mc_samples) {
    const McResult mc =
        overcrowd_mc(n, r, m, *cmd.mc_samples, cmd.seed, cmd.threads);
    results["mc"] = mc_json(mc);
    csv.header.insert(csv.header.end(), {"mc_estimate", "mc_halfwidth"});
    row.push_back(fmt17(mc.estimate));
    row.push_back(fmt17(mc.halfwidth));
  }
  csv.row(std::move(row));
}

void run_sample(const Command& cmd, json& results, CsvTable& csv) {
  require(!cmd.params.infinite(), "sample needs a finite --N");
  const long count = cmd.mc_samples.value_or(1);
  const RadiiSample rs = sample_radii(cmd.params, count, cmd.seed);
  json batch = json::array();
  csv.header = {"draw"};
  for (long k = 1; k <= cmd.params.N; ++k)
    csv.header.push_back("r2_" + std::to_string(k));
  for (std::size_t d = 0; d < rs.batch.size(); ++d) {
    batch.push_back(rs.batch[d]);
    std::vector<std::string> row = {std::to_string(d)};
    for (double v : rs.batch[d]) row.push_back(fmt17(v));
    csv.row(std::move(row));
  }
  results["batch"] = batch;
  results["count"] = count;
}

int run_validate(const Command& cmd, json& results, CsvTable& csv) {
  require(cmd.check && *cmd.check == "theorem1",
          "validate needs the check name 'theorem1'");
  const long draws = cmd.mc_samples.value_or(2000);
  const KSResult ks =
      validate_theorem1(cmd.params.n, cmd.params.N, draws, cmd.seed);
  const bool passed = ks.p_value > kValidateAlpha;
  results["statistic"] = ks.statistic;
  results["p_value"] = ks.p_value;
  results["size_a"] = ks.size_a;
  results["size_b"] = ks.size_b;
  results["passed"] = passed;
  csv.header = {"statistic", "p_value", "size_a", "size_b", "passed"};
  csv.row({fmt17(ks.statistic), fmt17(ks.p_value), std::to_string(ks.size_a),
           std::to_string(ks.size_b), passed ? "true" : "false"});
  return passed ? 0 : 4;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  double a = 0.0;
  double b = 0.0;
  long steps = 0;
  int consumed = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%ld%n", &a, &b, &steps, &consumed) !=
          3 ||
      consumed != int(text.size()))
    throw std::invalid_argument("grid must be 'a:b:steps'");
  if (steps < 1) throw std::invalid_argument("grid needs steps >= 1");
  if (steps > 1000000) throw std::invalid_argument("grid step count too large");
  std::vector<double> xs(steps);
  if (steps == 1) {
    xs[0] = a;
    return xs;
  }
  const double h = (b - a) / double(steps - 1);
  for (long i = 0; i < steps; ++i) xs[i] = a + h * double(i);
  xs.back() = b;
  return xs;
}

RunResult run(const Command& cmd) {
  json report;
  report["command"] = cmd.verb;
  report["params"] = params_json(cmd);
  report["seed"] = cmd.seed;
  report["version"] = kVersion;
  report["errors"] = json::array();
  json results = json::object();
  CsvTable csv;
  int code = 0;
  try {
    if (cmd.verb == "survival")
      run_survival(cmd, results, csv);
    else if (cmd.verb == "density")
      run_density(cmd, results, csv);
    else if (cmd.verb == "hole")
      run_hole(cmd, results, csv, report["errors"]);
    else if (cmd.verb == "overcrowd")
      run_overcrowd(cmd, results, csv);
    else if (cmd.verb == "sample")
      run_sample(cmd, results, csv);
    else if (cmd.verb == "validate")
      code = run_validate(cmd, results, csv);
    else
      throw UsageError("unknown verb '" + cmd.verb + "'");
  } catch (const UsageError& e) {
    report["errors"].push_back({{"type", "usage"}, {"message", e.what()}});
    code = 2;
  } catch (const AccuracyError& e) {
    report["errors"].push_back({{"type", "accuracy"},
                                {"message", e.what()},
                                {"est_error", e.est_error}});
    code = 3;
  } catch (const ConvergenceError& e) {
    report["errors"].push_back({{"type", "convergence"},
                                {"message", e.what()},
                                {"terms_used", e.terms_used}});
    code = 3;
  } catch (const EigensolverError& e) {
    report["errors"].push_back({{"type", "eigensolver"},
                                {"message", e.what()},
                                {"seed", e.seed},
                                {"stream", e.stream}});
    code = 3;
  } catch (const std::invalid_argument& e) {
    report["errors"].push_back({{"type", "usage"}, {"message", e.what()}});
    code = 2;
  } catch (const std::domain_error& e) {
    report["errors"].push_back({{"type", "usage"}, {"message", e.what()}});
    code = 2;
  }
  report["results"] = results;

  RunResult out;
  out.exit_code = code;
  if (cmd.format == OutputFormat::kCsv && code == 0)
    out.output = csv.render();
  else
    out.output = report.dump(2) + "\n";
  return out;
}

}  // namespace ginprod

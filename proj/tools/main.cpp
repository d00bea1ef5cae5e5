#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ginprod/cli.hpp"
#include "ginprod/version.hpp"

namespace {

struct RawArgs {
  std::string big_n = "1";
  std::string grid;
  std::string format = "json";
};

void add_common(CLI::App* sub, ginprod::Command& cmd, RawArgs& raw) {
  sub->add_option("--n", cmd.params.n, "number of factor matrices");
  sub->add_option("--N", raw.big_n, "matrix size, or 'inf'");
  sub->add_option("--r", cmd.r, "radius");
  sub->add_option("--r2", cmd.r2, "squared radius");
  sub->add_option("--k", cmd.k, "rank index (1-based)");
  sub->add_option("--m", cmd.m, "point count threshold");
  sub->add_option("--grid", raw.grid, "abscissa grid 'a:b:steps'");
  sub->add_option("--mc-samples", cmd.mc_samples, "Monte Carlo sample count");
  sub->add_option("--seed", cmd.seed, "RNG seed");
  sub->add_option("--tol", cmd.tol, "tail truncation tolerance");
  sub->add_option("--format", raw.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", cmd.threads, "worker thread count")
      ->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenvalue statistics of complex Gaussian matrix products"};
  app.set_version_flag("--version", ginprod::kVersion);
  app.require_subcommand(1);

  ginprod::Command cmd;
  RawArgs raw;
  std::string check_arg;

  CLI::App* density = app.add_subcommand("density", "radial density points");
  CLI::App* survival =
      app.add_subcommand("survival", "upper tail of one squared modulus");
  CLI::App* hole =
      app.add_subcommand("hole", "probability that the disk of radius r is empty");
  CLI::App* overcrowd = app.add_subcommand(
      "overcrowd", "bounds on seeing at least m points in the disk");
  CLI::App* sample = app.add_subcommand("sample", "draw squared radii");
  CLI::App* validate =
      app.add_subcommand("validate", "statistical self checks");
  for (CLI::App* sub : {density, survival, hole, overcrowd, sample, validate})
    add_common(sub, cmd, raw);
  validate->add_option("check", check_arg, "check name (theorem1)");
  validate->add_option("--draws", cmd.mc_samples, "matrix draw count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  }

  cmd.verb = app.get_subcommands().front()->get_name();
  if (!check_arg.empty()) cmd.check = check_arg;
  cmd.format = raw.format == "csv" ? ginprod::OutputFormat::kCsv
                                   : ginprod::OutputFormat::kJson;
  if (raw.big_n == "inf") {
    cmd.params.N = ginprod::EnsembleParams::kInfiniteN;
  } else {
    try {
      std::size_t used = 0;
      cmd.params.N = std::stol(raw.big_n, &used);
      if (used != raw.big_n.size()) throw std::invalid_argument(raw.big_n);
    } catch (const std::exception&) {
      std::fprintf(stderr, "--N must be a positive integer or 'inf'\n");
      return 2;
    }
  }
  if (!raw.grid.empty()) {
    try {
      cmd.grid = ginprod::parse_grid(raw.grid);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return 2;
    }
  }

  const ginprod::RunResult res = ginprod::run(cmd);
  std::fputs(res.output.c_str(), stdout);
  return res.exit_code;
}

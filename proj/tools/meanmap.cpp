// meanmap: command-line front end for mean-type mappings.
//
//   meanmap invariant --mapping fixtures/agm.cfg --vector 1,2
//   meanmap n0 --mapping fixtures/shift3.cfg --vector 0,1,0
//   meanmap map-iterate --mapping fixtures/agm.cfg --vector 1,2 --steps 5 --output csv
//
// Exit status: 0 success, 1 error, 2 negative mathematical result.

#include <iostream>

#include <CLI11.hpp>

#include "meanmap/cli.hpp"

int main(int argc, char** argv) {
  using namespace meanmap;

  cli::RunConfig config;
  config.seed = cli::default_seed();
  std::string output = "human";
  std::string readout = "mid";

  CLI::App app{"Mean-type mappings, invariant means and the invariance equation"};
  app.require_subcommand(1);

  app.add_option("--mapping", config.mapping_file, "Mapping config file");
  app.add_option("--vector", config.vector, "Comma-separated coordinates, e.g. 1,2.5,3e-1");
  app.add_option("--mean", config.mean, "Mean spec for mean-eval, e.g. power:0.5");
  app.add_option("--function", config.function,
                 "Function F (decompose) or alternative mean K (residual, uniqueness)");
  app.add_option("--tol", config.tol, "Stopping tolerance on the diameter");
  app.add_option("--max-iter", config.max_iter, "Gauss iteration cap");
  app.add_option("--cap", config.cap, "Search cap for n0");
  app.add_option("--steps", config.steps, "Number of applications for map-iterate");
  app.add_option("--samples", config.samples, "Sample count for probes");
  app.add_option("--seed", config.seed, "Sampler seed (default: $MEANMAP_SEED or 42)");
  app.add_option("--threshold", config.threshold,
                 "Residuals above this are reported as a negative result");
  app.add_option("--output", output, "human | json | csv")
      ->check(CLI::IsMember({"human", "json", "csv"}, CLI::ignore_case));
  app.add_option("--readout", readout, "mid | min | max | first")
      ->check(CLI::IsMember({"mid", "min", "max", "first"}, CLI::ignore_case));
  app.add_flag("--trace", config.trace, "Attach the iteration trace");
  app.add_flag("--relative", config.relative, "Relative stopping rule");

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"mean-eval", "Evaluate a single mean (or every mapping component)"},
      {"map-apply", "Apply the mapping once"},
      {"map-iterate", "Iterate the mapping --steps times"},
      {"contractive-probe", "Search for a vector the mapping fails to contract"},
      {"n0", "Smallest n with strict diameter decrease"},
      {"invariant", "Invariant mean by Gauss iteration"},
      {"residual", "Invariance residual |K(M(v)) - K(v)|"},
      {"uniqueness", "Compare two invariant-mean readouts (or --function)"},
      {"decompose", "Check F = phi o K for the invariance equation"},
  };
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.output = cli::parse_output(output);
  config.readout = parse_readout(readout);

  const cli::RunResult result = cli::run(config);
  std::cout << result.document;
  std::cerr << result.message;
  return result.exit_code;
}

// qcasim.cpp — command-line front end for the simulator library.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qca/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator for a noisy partitioned cellular automaton on a chain,\n"
      "restricted to the single-excitation sector. Emits CSV."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qcasim 1.0.0");

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::vector<int> n_values;
  std::vector<double> p_values;
  std::vector<double> q_values;
  std::vector<double> phi1_values;
  std::vector<double> phi2_values;
  std::vector<double> xi_values;
  double delta = 0.0;
  int t_max = 0;
  int stride = 0;
  int samples = 0;
  int steps = 0;

  const auto add_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "Key/value config file, applied before flags");
    cmd->add_option("--out", out_path, "Output CSV path (stdout if omitted)");
    cmd->add_option("--seed", seed, "Base seed for random sampling");
    cmd->add_option("--jobs", jobs, "Worker threads for grid cells");
    cmd->add_option("--n", n_values, "Chain lengths")->delimiter(',');
    cmd->add_option("--p", p_values, "Left-move probabilities in [0, 1]")
        ->delimiter(',');
    cmd->add_option("--q", q_values, "Right-move probabilities in [0, 1]")
        ->delimiter(',');
    cmd->add_option("--phi1", phi1_values, "First rule phases (radians)")
        ->delimiter(',');
    cmd->add_option("--phi2", phi2_values, "Second rule phases (radians)")
        ->delimiter(',');
    cmd->add_option("--xi", xi_values, "Dephasing strengths in [0, 1]")
        ->delimiter(',');
    cmd->add_option("--delta", delta, "Band around 1/N for t_irr detection");
    cmd->add_option("--t-max", t_max, "Largest total time scanned (even)");
    cmd->add_option("--stride", stride, "Curve sampling stride (even)");
    cmd->add_option("--samples", samples, "State pairs per contraction cell");
    cmd->add_option("--steps", steps, "Forward/inverse steps per oracle cell");
  };

  for (const char* name :
       {"curve", "tirr-sweep", "contraction", "fixed-point", "oracle-check"}) {
    add_options(app.add_subcommand(name, ""));
  }
  app.get_subcommand("curve")->description(
      "Return probability P1 versus total time T");
  app.get_subcommand("tirr-sweep")
      ->description("Irreversibility time over a parameter grid");
  app.get_subcommand("contraction")
      ->description("Empirical trace-distance contraction probe");
  app.get_subcommand("fixed-point")
      ->description("Residual distance of the evolved maximally mixed state");
  app.get_subcommand("oracle-check")
      ->description("Cross-check against the full-lattice simulation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    qca::RunSpec spec;
    spec.command = qca::parse_command(active->get_name());
    if (active->count("--config") > 0) {
      qca::apply_config_file(spec, config_path);
    }
    if (active->count("--n") > 0) spec.n_values = n_values;
    if (active->count("--p") > 0) spec.p_values = p_values;
    if (active->count("--q") > 0) spec.q_values = q_values;
    if (active->count("--phi1") > 0) spec.phi1_values = phi1_values;
    if (active->count("--phi2") > 0) spec.phi2_values = phi2_values;
    if (active->count("--xi") > 0) spec.xi_values = xi_values;
    if (active->count("--delta") > 0) spec.delta = delta;
    if (active->count("--t-max") > 0) spec.t_max = t_max;
    if (active->count("--stride") > 0) spec.stride = stride;
    if (active->count("--samples") > 0) spec.samples = samples;
    if (active->count("--steps") > 0) spec.steps = steps;
    if (active->count("--out") > 0) spec.output_path = out_path;
    if (active->count("--seed") > 0) spec.seed = seed;
    if (active->count("--jobs") > 0) spec.jobs = jobs;
    qca::run(spec);
    return 0;
  } catch (const qca::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qca::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qca::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

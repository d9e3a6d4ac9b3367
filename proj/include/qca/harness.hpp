// harness.hpp — run specifications, grid expansion, CSV rendering.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qca/metrics.hpp"

namespace qca {

// Thrown for an invalid run specification; the message names the offending
// field. Mapped to exit code 2 by the command-line tool.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when reading a config file or writing an output file fails. Mapped
// to exit code 3 by the command-line tool.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kCurve, kTirrSweep, kContraction, kFixedPoint, kOracleCheck };

// Maps subcommand names (curve, tirr-sweep, contraction, fixed-point,
// oracle-check) to Command; throws ValidationError for anything else.
Command parse_command(const std::string& name);
std::string command_name(Command command);

// A full description of one invocation: the Cartesian grid of automaton
// configurations, the protocol settings, and the output plumbing.
struct RunSpec {
  Command command = Command::kCurve;

  std::vector<int> n_values{8};
  std::vector<double> p_values{0.5};
  std::vector<double> q_values{0.5};
  std::vector<double> phi1_values{0.0};
  std::vector<double> phi2_values{0.0};
  std::vector<double> xi_values{0.0};

  double delta = kDefaultDelta;  // tirr-sweep threshold
  int t_max = kDefaultTMax;      // curve / tirr-sweep time cap
  int stride = kDefaultStride;   // curve sampling stride
  int samples = 200;             // contraction pair count per cell
  int steps = 10;                // oracle-check forward (and inverse) steps

  std::string output_path;  // empty writes to stdout
  std::uint64_t seed = 1;
  int jobs = 1;
};

// Throws ValidationError naming the offending field. Every grid combination
// is checked before any work starts.
void validate(const RunSpec& spec);

// All grid cells in row order: n, p, q, phi1, phi2, xi nested left to right,
// xi varying fastest. Noise is always coupled to the rule (eta = p - q).
std::vector<AutomatonConfig> expand_grid(const RunSpec& spec);

// Config file format: one `key = value` per line, blank lines and lines
// starting with '#' ignored. Grid keys (n, p, q, phi1, phi2, xi) take
// comma-separated lists; scalar keys are delta, t_max, stride, samples,
// steps, seed, jobs, out. Throws IoError if the file cannot be read,
// ValidationError for unknown keys or unparsable values.
void apply_config_file(RunSpec& spec, const std::string& path);

// Applies a single key/value pair using the same schema.
void apply_config_entry(RunSpec& spec, const std::string& key,
                        const std::string& value);

// Decimal form with 17 significant digits (round-trip exact); every
// real-valued CSV cell goes through this so reruns are byte-identical.
std::string format_real(double value);

// Header line (without trailing newline) for the command's CSV schema.
std::string csv_header(Command command);

// Executes the grid and renders the complete CSV, header plus one chunk of
// rows per cell, merged in cell order. With jobs > 1 the cells run on a
// thread pool; the merge order is still by cell index, so output bytes do
// not depend on the parallelism degree.
std::string render_csv(const RunSpec& spec);

// Validates, executes, and writes the CSV to spec.output_path, or to stdout
// when the path is empty.
void run(const RunSpec& spec);

}  // namespace qca

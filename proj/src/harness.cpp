#include "qca/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>
#include <utility>

#include "qca/oracle.hpp"
#include "qca/seeding.hpp"

namespace qca {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() ||
      errno == ERANGE || !std::isfinite(value)) {
    throw ValidationError(key + ": cannot parse real value '" + token + "'");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (token.empty() || end != token.c_str() + token.size() ||
      errno == ERANGE || value < INT_MIN || value > INT_MAX) {
    throw ValidationError(key + ": cannot parse integer '" + token + "'");
  }
  return static_cast<int>(value);
}

std::uint64_t parse_u64(const std::string& key, const std::string& token) {
  if (token.empty() || token[0] == '-') {
    throw ValidationError(key + ": cannot parse unsigned integer '" + token +
                          "'");
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    throw ValidationError(key + ": cannot parse unsigned integer '" + token +
                          "'");
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<std::string> split_list(const std::string& key,
                                    const std::string& value) {
  std::vector<std::string> tokens;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    const std::string token =
        trim(comma == std::string::npos ? value.substr(start)
                                        : value.substr(start, comma - start));
    if (token.empty()) {
      throw ValidationError(key + ": empty element in list '" + value + "'");
    }
    tokens.push_back(token);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return tokens;
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& value) {
  std::vector<double> out;
  for (const std::string& token : split_list(key, value)) {
    out.push_back(parse_real(key, token));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  for (const std::string& token : split_list(key, value)) {
    out.push_back(parse_int(key, token));
  }
  return out;
}

void require_nonempty(const std::vector<double>& values, const char* field) {
  if (values.empty()) {
    throw ValidationError(std::string(field) + ": grid list is empty");
  }
}

std::string row_prefix(const AutomatonConfig& config) {
  std::string row = std::to_string(config.n_sites);
  row += ',';
  row += format_real(config.rule.p);
  row += ',';
  row += format_real(config.rule.q);
  row += ',';
  row += format_real(config.rule.phi1);
  row += ',';
  row += format_real(config.rule.phi2);
  row += ',';
  row += format_real(config.noise.xi);
  row += ',';
  row += format_real(config.noise.eta);
  return row;
}

std::string render_curve_cell(const RunSpec& spec,
                              const AutomatonConfig& config) {
  const EvolutionRecord record =
      reversibility_curve(config, spec.t_max, spec.stride);
  const std::string prefix = row_prefix(config);
  std::string chunk;
  for (std::size_t i = 0; i < record.times.size(); ++i) {
    chunk += prefix;
    chunk += ',';
    chunk += std::to_string(record.times[i]);
    chunk += ',';
    chunk += format_real(record.p1_values[i]);
    chunk += '\n';
  }
  return chunk;
}

std::string render_tirr_cell(const RunSpec& spec,
                             const AutomatonConfig& config) {
  const auto t_irr = irreversibility_time(config, spec.delta, spec.t_max);
  std::string row = row_prefix(config);
  row += ',';
  row += format_real(spec.delta);
  row += ',';
  row += std::to_string(spec.t_max);
  row += ',';
  row += std::to_string(t_irr ? *t_irr : -1);
  row += '\n';
  return row;
}

std::string render_contraction_cell(const RunSpec& spec,
                                    const AutomatonConfig& config,
                                    std::size_t cell_index) {
  const std::uint64_t cell_seed = derive_seed(spec.seed, cell_index);
  const ContractionReport report =
      contraction_probe(config, spec.samples, cell_seed);
  std::string row = row_prefix(config);
  row += ',';
  row += std::to_string(spec.samples);
  row += ',';
  row += std::to_string(cell_seed);
  row += ',';
  row += format_real(report.max_ratio);
  row += '\n';
  return row;
}

std::string render_fixed_point_cell(const AutomatonConfig& config) {
  std::string row = row_prefix(config);
  row += ',';
  row += format_real(fixed_point_residual(config));
  row += '\n';
  return row;
}

std::string render_oracle_cell(const RunSpec& spec,
                               const AutomatonConfig& config) {
  Automaton automaton(config);
  Matrix sector = automaton.initial_state().matrix();
  FullState full = full_pure_site_state(config.n_sites, config.initial_site);
  double max_dev = 0.0;
  double max_leak = 0.0;
  const auto compare = [&]() {
    const SectorProjection projection = project_to_sector(full);
    max_dev = std::max(max_dev,
                       (projection.state.matrix() - sector).cwiseAbs().maxCoeff());
    max_leak = std::max(max_leak, std::abs(projection.leak));
  };
  for (int s = 0; s < spec.steps; ++s) {
    automaton.step_forward_inplace(sector);
    full = full_step_forward(full, config);
    compare();
  }
  for (int s = 0; s < spec.steps; ++s) {
    automaton.step_inverse_inplace(sector);
    full = full_step_inverse(full, config);
    compare();
  }
  std::string row = row_prefix(config);
  row += ',';
  row += std::to_string(spec.steps);
  row += ',';
  row += format_real(max_dev);
  row += ',';
  row += format_real(max_leak);
  row += '\n';
  return row;
}

std::string render_cell(const RunSpec& spec, const AutomatonConfig& config,
                        std::size_t cell_index) {
  switch (spec.command) {
    case Command::kCurve:
      return render_curve_cell(spec, config);
    case Command::kTirrSweep:
      return render_tirr_cell(spec, config);
    case Command::kContraction:
      return render_contraction_cell(spec, config, cell_index);
    case Command::kFixedPoint:
      return render_fixed_point_cell(config);
    case Command::kOracleCheck:
      return render_oracle_cell(spec, config);
  }
  throw ValidationError("command: unknown value");
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "curve") return Command::kCurve;
  if (name == "tirr-sweep") return Command::kTirrSweep;
  if (name == "contraction") return Command::kContraction;
  if (name == "fixed-point") return Command::kFixedPoint;
  if (name == "oracle-check") return Command::kOracleCheck;
  throw ValidationError("command: unknown command '" + name + "'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::kCurve:
      return "curve";
    case Command::kTirrSweep:
      return "tirr-sweep";
    case Command::kContraction:
      return "contraction";
    case Command::kFixedPoint:
      return "fixed-point";
    case Command::kOracleCheck:
      return "oracle-check";
  }
  throw ValidationError("command: unknown value");
}

void validate(const RunSpec& spec) {
  if (spec.n_values.empty()) {
    throw ValidationError("n: grid list is empty");
  }
  require_nonempty(spec.p_values, "p");
  require_nonempty(spec.q_values, "q");
  require_nonempty(spec.phi1_values, "phi1");
  require_nonempty(spec.phi2_values, "phi2");
  require_nonempty(spec.xi_values, "xi");
  for (int n : spec.n_values) {
    if (n < 2) {
      throw ValidationError("n: must be at least 2, got " + std::to_string(n));
    }
    if (spec.command == Command::kOracleCheck && n > kMaxFullSites) {
      throw ValidationError("n: oracle-check supports at most " +
                            std::to_string(kMaxFullSites) + " sites, got " +
                            std::to_string(n));
    }
  }
  for (double p : spec.p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("p: must lie in [0, 1], got " + format_real(p));
    }
  }
  for (double q : spec.q_values) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw ValidationError("q: must lie in [0, 1], got " + format_real(q));
    }
  }
  for (double phi : spec.phi1_values) {
    if (!std::isfinite(phi)) {
      throw ValidationError("phi1: must be finite");
    }
  }
  for (double phi : spec.phi2_values) {
    if (!std::isfinite(phi)) {
      throw ValidationError("phi2: must be finite");
    }
  }
  for (double xi : spec.xi_values) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw ValidationError("xi: must lie in [0, 1], got " + format_real(xi));
    }
  }
  for (double p : spec.p_values) {
    for (double q : spec.q_values) {
      if (1.0 - p + q <= kRuleDegeneracyTol) {
        throw ValidationError(
            "p, q: degenerate rule at p=" + format_real(p) +
            ", q=" + format_real(q) +
            "; the block normalization 1 - p + q vanishes");
      }
    }
  }
  if (!(spec.delta > 0.0)) {
    throw ValidationError("delta: must be positive, got " +
                          format_real(spec.delta));
  }
  if (spec.t_max < 0 || spec.t_max % 2 != 0) {
    throw ValidationError("t_max: must be even and non-negative, got " +
                          std::to_string(spec.t_max));
  }
  if (spec.stride < 2 || spec.stride % 2 != 0) {
    throw ValidationError("stride: must be even and at least 2, got " +
                          std::to_string(spec.stride));
  }
  if (spec.samples < 1) {
    throw ValidationError("samples: must be at least 1, got " +
                          std::to_string(spec.samples));
  }
  if (spec.steps < 1) {
    throw ValidationError("steps: must be at least 1, got " +
                          std::to_string(spec.steps));
  }
  if (spec.jobs < 1) {
    throw ValidationError("jobs: must be at least 1, got " +
                          std::to_string(spec.jobs));
  }
}

std::vector<AutomatonConfig> expand_grid(const RunSpec& spec) {
  validate(spec);
  std::vector<AutomatonConfig> cells;
  for (int n : spec.n_values) {
    for (double p : spec.p_values) {
      for (double q : spec.q_values) {
        for (double phi1 : spec.phi1_values) {
          for (double phi2 : spec.phi2_values) {
            for (double xi : spec.xi_values) {
              RuleParams rule;
              rule.p = p;
              rule.q = q;
              rule.phi1 = phi1;
              rule.phi2 = phi2;
              cells.push_back(make_config(n, rule, xi));
            }
          }
        }
      }
    }
  }
  return cells;
}

void apply_config_file(RunSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file: " + path);
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config file line " + std::to_string(line_no) +
                            ": expected 'key = value', got '" + stripped +
                            "'");
    }
    apply_config_entry(spec, trim(stripped.substr(0, eq)),
                       trim(stripped.substr(eq + 1)));
  }
}

void apply_config_entry(RunSpec& spec, const std::string& key,
                        const std::string& value) {
  if (key == "n") {
    spec.n_values = parse_int_list(key, value);
  } else if (key == "p") {
    spec.p_values = parse_real_list(key, value);
  } else if (key == "q") {
    spec.q_values = parse_real_list(key, value);
  } else if (key == "phi1") {
    spec.phi1_values = parse_real_list(key, value);
  } else if (key == "phi2") {
    spec.phi2_values = parse_real_list(key, value);
  } else if (key == "xi") {
    spec.xi_values = parse_real_list(key, value);
  } else if (key == "delta") {
    spec.delta = parse_real(key, value);
  } else if (key == "t_max") {
    spec.t_max = parse_int(key, value);
  } else if (key == "stride") {
    spec.stride = parse_int(key, value);
  } else if (key == "samples") {
    spec.samples = parse_int(key, value);
  } else if (key == "steps") {
    spec.steps = parse_int(key, value);
  } else if (key == "seed") {
    spec.seed = parse_u64(key, value);
  } else if (key == "jobs") {
    spec.jobs = parse_int(key, value);
  } else if (key == "out") {
    if (value.empty()) {
      throw ValidationError("out: path is empty");
    }
    spec.output_path = value;
  } else {
    throw ValidationError("unknown config key: " + key);
  }
}

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string csv_header(Command command) {
  switch (command) {
    case Command::kCurve:
      return "n,p,q,phi1,phi2,xi,eta,T,p1";
    case Command::kTirrSweep:
      return "n,p,q,phi1,phi2,xi,eta,delta,t_max,t_irr";
    case Command::kContraction:
      return "n,p,q,phi1,phi2,xi,eta,samples,seed,max_ratio";
    case Command::kFixedPoint:
      return "n,p,q,phi1,phi2,xi,eta,residual";
    case Command::kOracleCheck:
      return "n,p,q,phi1,phi2,xi,eta,steps,max_dev,max_leak";
  }
  throw ValidationError("command: unknown value");
}

std::string render_csv(const RunSpec& spec) {
  validate(spec);
  const std::vector<AutomatonConfig> cells = expand_grid(spec);
  std::vector<std::string> chunks(cells.size());
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(spec.jobs), cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      chunks[i] = render_cell(spec, cells[i], i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::exception_ptr> errors(cells.size());
    const auto work = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        if (failed.load()) continue;
        try {
          chunks[i] = render_cell(spec, cells[i], i);
        } catch (...) {
          errors[i] = std::current_exception();
          failed.store(true);
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& error : errors) {
      if (error) std::rethrow_exception(error);
    }
  }
  std::string out = csv_header(spec.command);
  out += '\n';
  for (const std::string& chunk : chunks) out += chunk;
  return out;
}

void run(const RunSpec& spec) {
  const std::string csv = render_csv(spec);
  if (spec.output_path.empty()) {
    std::cout << csv;
    std::cout.flush();
    if (!std::cout.good()) {
      throw IoError("writing to stdout failed");
    }
    return;
  }
  std::ofstream out(spec.output_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open output file: " + spec.output_path);
  }
  out << csv;
  out.flush();
  if (!out.good()) {
    throw IoError("writing output file failed: " + spec.output_path);
  }
}

}  // namespace qca

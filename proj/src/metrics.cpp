#include "qca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qca/seeding.hpp"

namespace qca {

namespace {

void check_even_time(int t, const char* fn, const char* what) {
  if (t < 0 || t % 2 != 0) {
    throw std::invalid_argument(std::string(fn) + ": " + what +
                                " must be even and non-negative, got " +
                                std::to_string(t));
  }
}

double clamp_probability(double raw, const char* fn) {
  if (raw < -kProbabilityGuardTol || raw > 1.0 + kProbabilityGuardTol) {
    throw NumericError(std::string(fn) +
                       ": probability out of range: " + std::to_string(raw));
  }
  return std::clamp(raw, 0.0, 1.0);
}

// Shared engine for everything that samples P1 over increasing total times.
// The forward trajectory is advanced incrementally and each probe copies it
// and walks back, which reproduces a fresh forward-then-inverse run bit for
// bit because the operation sequence per sample is identical.
class ReturnProbabilityScan {
 public:
  explicit ReturnProbabilityScan(const AutomatonConfig& config)
      : automaton_(config),
        forward_(automaton_.initial_state().matrix()),
        site_(config.initial_site - 1) {}

  // P1 for total time T = 2 * half_steps; half_steps must not decrease
  // between calls.
  double p1_at_half_steps(int half_steps) {
    while (forward_steps_ < half_steps) {
      automaton_.step_forward_inplace(forward_);
      ++forward_steps_;
    }
    Matrix probe = forward_;
    for (int k = 0; k < half_steps; ++k) {
      automaton_.step_inverse_inplace(probe);
    }
    return clamp_probability(probe(site_, site_).real(),
                             "return_probability");
  }

 private:
  Automaton automaton_;
  Matrix forward_;
  int forward_steps_ = 0;
  int site_;
};

// First time on the sampled grid where the band |p1 - 1/N| <= delta holds for
// three consecutive samples; tracks the run length as samples stream in.
class PersistenceDetector {
 public:
  PersistenceDetector(int n_sites, double delta)
      : target_(1.0 / n_sites), delta_(delta) {}

  // Feeds one sample; returns the detected T_irr once the window closes.
  std::optional<int> feed(int time, double p1) {
    if (std::abs(p1 - target_) <= delta_) {
      if (run_ == 0) candidate_ = time;
      ++run_;
      if (run_ == 3) return candidate_;
    } else {
      run_ = 0;
    }
    return std::nullopt;
  }

 private:
  double target_;
  double delta_;
  int run_ = 0;
  int candidate_ = 0;
};

}  // namespace

double return_probability(const AutomatonConfig& config, int total_time) {
  validate(config);
  check_even_time(total_time, "return_probability", "total_time");
  ReturnProbabilityScan scan(config);
  return scan.p1_at_half_steps(total_time / 2);
}

std::optional<int> irreversibility_time(const AutomatonConfig& config,
                                        double delta, int t_max) {
  validate(config);
  if (!(delta > 0.0)) {
    throw std::invalid_argument("irreversibility_time: delta must be positive");
  }
  check_even_time(t_max, "irreversibility_time", "t_max");
  ReturnProbabilityScan scan(config);
  PersistenceDetector detector(config.n_sites, delta);
  for (int t = 0; t <= t_max; t += 2) {
    const double p1 = scan.p1_at_half_steps(t / 2);
    if (auto t_irr = detector.feed(t, p1)) return t_irr;
  }
  return std::nullopt;
}

double fixed_point_residual(const AutomatonConfig& config) {
  validate(config);
  const SectorState mixed = maximally_mixed(config.n_sites);
  return trace_distance(step_forward(mixed, config), mixed);
}

ContractionReport contraction_probe(const AutomatonConfig& config,
                                    int sample_count, std::uint64_t seed) {
  validate(config);
  if (sample_count < 1) {
    throw std::invalid_argument(
        "contraction_probe: sample_count must be at least 1");
  }
  Automaton automaton(config);
  ContractionReport report;
  report.config = config;
  report.sample_count = sample_count;
  report.seed = seed;
  report.max_ratio = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    const std::uint64_t index = static_cast<std::uint64_t>(s);
    SectorState rho1 =
        random_sector_state(config.n_sites, derive_seed(seed, 2 * index));
    SectorState rho2 =
        random_sector_state(config.n_sites, derive_seed(seed, 2 * index + 1));
    const double before = trace_distance(rho1, rho2);
    if (before <= kContractionDistanceFloor) continue;
    Matrix m1 = rho1.matrix();
    Matrix m2 = rho2.matrix();
    automaton.step_forward_inplace(m1);
    automaton.step_forward_inplace(m2);
    const double after =
        trace_distance(SectorState(std::move(m1)), SectorState(std::move(m2)));
    report.max_ratio = std::max(report.max_ratio, after / before);
  }
  return report;
}

EvolutionRecord reversibility_curve(const AutomatonConfig& config, int t_max,
                                    int stride) {
  validate(config);
  check_even_time(t_max, "reversibility_curve", "t_max");
  if (stride < 2 || stride % 2 != 0) {
    throw std::invalid_argument(
        "reversibility_curve: stride must be even and at least 2");
  }
  EvolutionRecord record;
  record.config = config;
  record.delta = kDefaultDelta;
  record.t_max = t_max;
  ReturnProbabilityScan scan(config);
  PersistenceDetector detector(config.n_sites, record.delta);
  for (int t = 0; t <= t_max; t += stride) {
    const double p1 = scan.p1_at_half_steps(t / 2);
    record.times.push_back(t);
    record.p1_values.push_back(p1);
    if (!record.t_irr) {
      if (auto t_irr = detector.feed(t, p1)) record.t_irr = t_irr;
    }
  }
  return record;
}

}  // namespace qca

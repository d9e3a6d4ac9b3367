// acceptance.cpp — timed pass/fail gate over the guarantees this simulator
// ships with. Each criterion prints one line; any failure (including a blown
// runtime budget) makes the process exit nonzero. Known deviations are not
// masked here: a criterion the model genuinely cannot meet fails visibly and
// points at the README discussion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qca/harness.hpp"
#include "qca/oracle.hpp"

namespace {

using qca::AutomatonConfig;
using qca::RuleParams;

AutomatonConfig config_for(int n, double p, double q, double xi,
                           double phi1 = 0.0, double phi2 = 0.0) {
  RuleParams rule;
  rule.p = p;
  rule.q = q;
  rule.phi1 = phi1;
  rule.phi2 = phi2;
  return qca::make_config(n, rule, xi);
}

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  const double u =
      static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + (hi - lo) * u;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---- criteria ----

bool zero_noise_reversibility(std::vector<std::string>& notes) {
  double worst = 0.0;
  for (int n : {8, 32}) {
    const qca::EvolutionRecord record =
        qca::reversibility_curve(config_for(n, 0.5, 0.5, 0.0), 200, 2);
    for (double p1 : record.p1_values) {
      worst = std::max(worst, std::abs(p1 - 1.0));
    }
  }
  notes.push_back("worst |P1 - 1| over N in {8, 32}, even T <= 200: " +
                  fmt(worst));
  return worst <= 1e-9;
}

bool dephasing_asymptote(std::vector<std::string>& notes) {
  bool ok = true;
  for (double xi : {0.3, 1.0}) {
    const qca::EvolutionRecord record =
        qca::reversibility_curve(config_for(8, 0.5, 0.5, xi), 2000, 2);
    if (!record.t_irr) {
      notes.push_back("xi=" + fmt(xi) + ": no T_irr found up to t_max=2000");
      ok = false;
      continue;
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < record.times.size(); ++k) {
      if (record.times[k] < *record.t_irr) continue;
      worst = std::max(worst, std::abs(record.p1_values[k] - 0.125));
    }
    notes.push_back("xi=" + fmt(xi) + ": T_irr=" +
                    std::to_string(*record.t_irr) +
                    ", worst |P1 - 1/8| beyond it: " + fmt(worst));
    ok = ok && worst <= 1e-3;
  }
  return ok;
}

bool mixed_state_fixed_point(std::vector<std::string>& notes) {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const double p = uniform_in(rng, 0.0, 1.0);
    const double xi = 1.0 - uniform_in(rng, 0.0, 1.0);  // (0, 1]
    const AutomatonConfig config =
        config_for(n, p, p, xi, uniform_in(rng, -3.0, 3.0),
                   uniform_in(rng, -3.0, 3.0));
    worst = std::max(worst, qca::fixed_point_residual(config));
  }
  notes.push_back("largest residual over 20 random p=q configs: " +
                  fmt(worst));
  return worst <= 1e-12;
}

bool one_step_contraction(std::vector<std::string>& notes) {
  const qca::ContractionReport report =
      qca::contraction_probe(config_for(8, 0.5, 0.5, 0.3), 200, 1);
  notes.push_back("largest ratio over 200 pairs: " + fmt(report.max_ratio));
  return report.max_ratio <= 1.0 + 1e-10 && report.max_ratio < 1.0;
}

bool noise_strength_trend(std::vector<std::string>& notes) {
  std::vector<int> detected;
  std::string sequence;
  for (double xi : {0.2, 0.4, 0.6, 0.8}) {
    const auto t_irr =
        qca::irreversibility_time(config_for(16, 0.5, 0.5, xi), 1e-4, 2000);
    if (!t_irr) {
      notes.push_back("xi=" + fmt(xi) + ": no T_irr up to t_max=2000");
      return false;
    }
    detected.push_back(*t_irr);
    if (!sequence.empty()) sequence += ", ";
    sequence += std::to_string(*t_irr);
  }
  notes.push_back("T_irr over xi in {0.2, 0.4, 0.6, 0.8}: " + sequence);
  bool ok = true;
  for (std::size_t k = 1; k < detected.size(); ++k) {
    ok = ok && detected[k] <= detected[k - 1];
  }
  if (!ok) {
    notes.push_back(
        "not nonincreasing: on 16 sites the detected times turn around and "
        "grow with the noise strength (strong dephasing freezes transport, "
        "so mixing itself slows down); see README, Known deviations");
  }
  return ok;
}

bool localisation_ordering(std::vector<std::string>& notes) {
  const auto protected_phase = qca::irreversibility_time(
      config_for(16, 0.5, 0.5, 0.3, 0.0, 0.0), 1e-4, 2000);
  const auto open_phase = qca::irreversibility_time(
      config_for(16, 0.5, 0.5, 0.3, std::numbers::pi / 2,
                 std::numbers::pi / 2),
      1e-4, 2000);
  if (!protected_phase || !open_phase) {
    notes.push_back("T_irr not reached for one of the phase choices");
    return false;
  }
  notes.push_back("T_irr at phi1+phi2=0: " + std::to_string(*protected_phase) +
                  ", at phi1+phi2=pi: " + std::to_string(*open_phase));
  return *protected_phase >= *open_phase;
}

bool damping_equilibrium(std::vector<std::string>& notes) {
  const AutomatonConfig config = config_for(16, 0.7, 0.3, 0.0);
  const double p1 = qca::return_probability(config, 2000);
  notes.push_back("P1(2000) = " + fmt(p1) + ", uniform value 1/16 = " +
                  fmt(1.0 / 16.0));
  return p1 - 1.0 / 16.0 > 1e-3;
}

bool full_lattice_equivalence(std::vector<std::string>& notes) {
  const std::vector<std::pair<double, double>> rules{
      {0.25, 0.75}, {0.5, 0.5}, {0.75, 0.25}};
  const std::vector<std::pair<double, double>> phases{
      {0.7, -0.7}, {0.7, std::numbers::pi - 0.7}};
  double max_dev = 0.0;
  double max_leak = 0.0;
  int configs = 0;
  for (int n : {4, 6}) {
    for (double xi : {0.0, 0.3, 1.0}) {
      for (const auto& [p, q] : rules) {
        for (const auto& [phi1, phi2] : phases) {
          const AutomatonConfig config = config_for(n, p, q, xi, phi1, phi2);
          qca::SectorState sector = qca::pure_site_state(n, 1);
          qca::FullState full = qca::full_pure_site_state(n, 1);
          for (int s = 0; s < 10; ++s) {
            if (s < 5) {
              sector = qca::step_forward(sector, config);
              full = qca::full_step_forward(full, config);
            } else {
              sector = qca::step_inverse(sector, config);
              full = qca::full_step_inverse(full, config);
            }
            const qca::SectorProjection projection =
                qca::project_to_sector(full);
            max_dev = std::max(max_dev,
                               (projection.state.matrix() - sector.matrix())
                                   .cwiseAbs()
                                   .maxCoeff());
            max_leak = std::max(max_leak, std::abs(projection.leak));
          }
          ++configs;
        }
      }
    }
  }
  notes.push_back(std::to_string(configs) +
                  " configs; max deviation: " + fmt(max_dev) +
                  ", max sector leak: " + fmt(max_leak));
  return configs >= 20 && max_dev <= 1e-10 && max_leak <= 1e-12;
}

bool deterministic_output(std::vector<std::string>& notes) {
  qca::RunSpec spec;
  spec.command = qca::Command::kTirrSweep;
  spec.n_values = {8, 12};
  spec.xi_values = {0.3, 0.6};
  spec.t_max = 400;

  const auto dir = std::filesystem::temp_directory_path();
  const auto path_a = dir / "qca_acceptance_a.csv";
  const auto path_b = dir / "qca_acceptance_b.csv";
  const auto path_c = dir / "qca_acceptance_c.csv";
  spec.output_path = path_a.string();
  qca::run(spec);
  spec.output_path = path_b.string();
  qca::run(spec);
  spec.output_path = path_c.string();
  spec.jobs = 4;
  qca::run(spec);

  const std::string a = slurp(path_a);
  const std::string b = slurp(path_b);
  const std::string c = slurp(path_c);
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
  std::filesystem::remove(path_c);
  notes.push_back("serial reruns identical: " +
                  std::string(a == b ? "yes" : "NO") +
                  "; 4-thread run identical: " +
                  std::string(a == c ? "yes" : "NO") + " (" +
                  std::to_string(a.size()) + " bytes)");
  return !a.empty() && a == b && a == c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<bool(std::vector<std::string>&)> body;
  };
  const std::vector<Criterion> criteria{
      {"zero-noise reversibility", 5.0, zero_noise_reversibility},
      {"dephasing asymptote", 10.0, dephasing_asymptote},
      {"mixed-state fixed point", 1.0, mixed_state_fixed_point},
      {"one-step contraction", 10.0, one_step_contraction},
      {"noise-strength trend", 60.0, noise_strength_trend},
      {"localisation ordering", 60.0, localisation_ordering},
      {"damping equilibrium", 10.0, damping_equilibrium},
      {"full-lattice equivalence", 30.0, full_lattice_equivalence},
      {"deterministic output", 60.0, deterministic_output},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::vector<std::string> notes;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.body(notes);
    } catch (const std::exception& e) {
      notes.push_back(std::string("unexpected exception: ") + e.what());
      ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed >= criterion.budget_seconds) {
      notes.push_back("runtime budget exceeded");
      ok = false;
    }
    std::printf("[%s] %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL",
                criterion.name, elapsed, criterion.budget_seconds);
    for (const std::string& note : notes) {
      std::printf("       %s\n", note.c_str());
    }
    if (!ok) ++failures;
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

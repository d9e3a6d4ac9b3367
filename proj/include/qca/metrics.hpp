// metrics.hpp — reversibility observables: P1(T), T_irr, fixed point, contraction.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/errors.hpp"

namespace qca {

// Threshold band around 1/N for irreversibility detection.
inline constexpr double kDefaultDelta = 1e-4;

// Longest total time scanned when looking for the irreversibility time.
inline constexpr int kDefaultTMax = 2000;

// Spacing between sampled total times on a reversibility curve.
inline constexpr int kDefaultStride = 2;

// A computed return probability may drift outside [0, 1] by this much before
// it is treated as a numeric failure instead of being clamped.
inline constexpr double kProbabilityGuardTol = 1e-8;

// Pairs closer than this in trace distance are skipped by the contraction
// probe: the ratio would divide by numerical noise.
inline constexpr double kContractionDistanceFloor = 1e-8;

// ---- result records ----

struct EvolutionRecord {
  AutomatonConfig config;
  std::vector<int> times;        // sampled total times, strictly increasing, even
  std::vector<double> p1_values; // aligned with times, each in [0, 1]
  std::optional<int> t_irr;      // empty means not reached within t_max
  double delta = kDefaultDelta;
  int t_max = kDefaultTMax;
};

struct ContractionReport {
  AutomatonConfig config;
  int sample_count = 0;
  double max_ratio = 0.0;
  std::uint64_t seed = 0;
};

// ---- observables ----

// Evolves |initial_site><initial_site| forward for total_time/2 steps, then
// inverse for total_time/2 steps, and returns the population left on the
// initial site. Throws std::invalid_argument for odd or negative total_time,
// NumericError if the result leaves [0, 1] beyond the guard band.
double return_probability(const AutomatonConfig& config, int total_time);

// Smallest even T <= t_max at which |P1 - 1/N| <= delta holds at T and at the
// next two sampled even times (persistence window of 3). Empty optional when
// no such T exists within t_max. Throws std::invalid_argument for delta <= 0
// or odd t_max.
std::optional<int> irreversibility_time(const AutomatonConfig& config,
                                        double delta = kDefaultDelta,
                                        int t_max = kDefaultTMax);

// trace_distance(step_forward(I/N), I/N). Zero (to rounding) whenever eta = 0.
double fixed_point_residual(const AutomatonConfig& config);

// Samples sample_count pairs of random sector states with sub-seeds derived
// from seed, applies one forward step to each, and reports the largest
// observed ratio of output to input trace distance. Pairs closer than
// kContractionDistanceFloor are skipped. Deterministic for fixed inputs.
ContractionReport contraction_probe(const AutomatonConfig& config,
                                    int sample_count, std::uint64_t seed);

// P1 sampled at T = 0, stride, 2*stride, ... up to t_max, with t_irr detected
// on that same grid using the default delta. Every point is the probability
// for a fresh forward-then-inverse protocol of total length T. Throws
// std::invalid_argument for an odd or negative t_max, or a stride that is
// odd or < 2; t_max = 0 yields the single point (0, 1).
EvolutionRecord reversibility_curve(const AutomatonConfig& config, int t_max,
                                    int stride = kDefaultStride);

}  // namespace qca

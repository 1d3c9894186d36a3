// Event-level simulation of Eve's separable source and threshold detectors.
//
// Each trial: draw the shared polarization angle lambda, send photons at
// lambda to Alice and at lambda + pi/2 to Bob, let every photon pick an
// analyzer channel independently, then fire a channel only when it collected
// at least `order` photons. Trials are independent and indexed, and all
// randomness is derived from (seed, trial index), so the OpenMP kernel and the
// serial reference produce bit-identical tallies.

#pragma once

#include <array>
#include <chrono>
#include <cstdint>

#include "mpa/analytic.hpp"
#include "mpa/core.hpp"

namespace mpa::mc {

/// Upper bound on photons in one pulse.
inline constexpr int kMaxPhotonsPerPulse = 64;

struct SimulationConfig {
  AttackScheme scheme = make_fixed(2, 2);
  MeasurementSettings settings;
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 1;
  // 0 means "same as that side's absorption order on this trial".
  int photons_per_pulse_a = 0;
  int photons_per_pulse_b = 0;
  // OpenMP threads for run_trials; 0 uses the runtime default. Never affects
  // results.
  int workers = 0;
};

/// Throws std::invalid_argument on a zero trial count or bad photon counts.
void validate(const SimulationConfig& config);

struct SideTally {
  std::uint64_t click0 = 0;
  std::uint64_t click1 = 0;
  std::uint64_t no_click = 0;
  std::uint64_t double_click = 0;

  void record(SideOutcome o);
  std::uint64_t clicks() const { return click0 + click1 + double_click; }
  std::uint64_t total() const { return click0 + click1 + no_click + double_click; }

  friend bool operator==(const SideTally&, const SideTally&) = default;
};

SideTally merge_tally(const SideTally& a, const SideTally& b);

struct SimulationReport {
  CoincidenceCounts counts;
  CorrelationResult correlation;
  SideTally singles_a;
  SideTally singles_b;
  std::chrono::duration<double> elapsed{0.0};
  std::uint64_t seed = 0;
};

/// Uniform source angle for one trial.
Angle draw_lambda(std::uint64_t trial_index, std::uint64_t seed);

/// Number of `photons` that land in channel 0 when each one independently
/// does so with probability cos^2(effective_angle). `u` is a uniform in
/// [0, 1) consumed by an inverse-CDF binomial draw.
int dispatch_photons(int photons, double effective_angle, double u);

/// Threshold detector: a channel fires when it holds at least `order` photons.
SideOutcome detect(int count_ch0, int count_ch1, AbsorptionOrder order);

struct TrialOutcome {
  SideOutcome alice;
  SideOutcome bob;
};

/// One pulse pair, fully determined by (config.seed, trial_index, settings).
/// `settings` overrides config.settings so the protocol harness can vary them
/// per round.
TrialOutcome simulate_trial(const SimulationConfig& config,
                            const MeasurementSettings& settings,
                            std::uint64_t trial_index);

/// Serial reference implementation.
SimulationReport run_trials_serial(const SimulationConfig& config);

/// OpenMP implementation; bit-identical counts to run_trials_serial for any
/// worker count.
SimulationReport run_trials(const SimulationConfig& config);

struct ChshEstimate {
  double s = 0.0;
  double stderr_s = 0.0;
  // Ordered (a1,b1), (a1,b2), (a2,b1), (a2,b2).
  std::array<CorrelationResult, 4> correlations{};
  std::array<CoincidenceCounts, 4> counts{};
};

/// Runs the four CHSH setting pairs with seeds derived from (config.seed,
/// pair index). config.settings and config.n_trials are ignored.
ChshEstimate run_chsh(const SimulationConfig& config, const analytic::ChshSpec& spec,
                      std::uint64_t n_trials_per_setting);

}  // namespace mpa::mc

// Angle-dependence diagnostics for detecting unfair sampling.
//
// A fair source gives a coincidence total that does not depend on the
// analyzer settings. Eve's multi-photon attack makes it oscillate with
// theta_a - theta_b; scan_coincidence_sum measures that oscillation as a
// visibility and fair_sampling_verdict turns it into a flag.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpa/analytic.hpp"
#include "mpa/core.hpp"

namespace mpa::countermeasure {

struct AnalyticMode {};

struct MonteCarloMode {
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 0;
};

using ScanMode = std::variant<AnalyticMode, MonteCarloMode>;

enum class Side { kAlice, kBob };

struct ScanPoint {
  double angle = 0.0;
  double value = 0.0;
  double value_stderr = 0.0;
  // Coincidence scans only: per-channel coincidence fractions and E.
  analytic::JointProbabilityTable probs;
  double e_value = 0.0;
  double stderr_e = 0.0;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  double visibility = 0.0;
  double visibility_stderr = 0.0;
};

/// `n` equally spaced angles k*pi/n, k = 0..n-1.
std::vector<double> uniform_grid(int n);

/// Coincidence total versus delta = theta_a - theta_b (theta_b held at 0).
/// Throws std::invalid_argument unless the grid is non-empty and strictly
/// increasing inside [0, pi).
ScanResult scan_coincidence_sum(const AttackScheme& scheme, std::span<const double> grid,
                                const ScanMode& mode);

/// One side's click rate versus its own analyzer angle (other side at 0).
ScanResult scan_singles(const AttackScheme& scheme, Side side, std::span<const double> grid,
                        const ScanMode& mode);

struct Verdict {
  bool suspicious = false;
  std::string explanation;
};

inline constexpr double kDefaultVisibilityThreshold = 0.02;
inline constexpr double kDefaultSigmaFactor = 3.0;

/// Suspicious iff visibility - sigma_factor * visibility_stderr > threshold.
Verdict fair_sampling_verdict(const ScanResult& scan,
                              double threshold = kDefaultVisibilityThreshold,
                              double sigma_factor = kDefaultSigmaFactor);

}  // namespace mpa::countermeasure

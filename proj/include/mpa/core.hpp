// Shared domain types for the multiple-photon absorption attack simulator.
//
// Polarization is carried purely as an angle: every quantity the simulator
// needs reduces to squared cosines of (source angle + analyzer rotation).

#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <variant>

namespace mpa {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce a finite angle (radians) to its representative in [0, 2pi).
/// Throws std::invalid_argument on NaN or infinity.
double normalize_angle(double radians);

/// Angle in radians, normalized to [0, 2pi) on construction.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(normalize_angle(radians)) {}

  double radians() const { return value_; }

  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  double value_ = 0.0;
};

/// Analyzer rotations applied by Alice and Bob before measuring.
struct MeasurementSettings {
  Angle theta_a;
  Angle theta_b;

  MeasurementSettings() = default;
  MeasurementSettings(double a, double b) : theta_a(a), theta_b(b) {}
  MeasurementSettings(Angle a, Angle b) : theta_a(a), theta_b(b) {}

  /// theta_a - theta_b, as a raw difference in (-2pi, 2pi).
  double delta() const { return theta_a.radians() - theta_b.radians(); }
};

/// Number of photons that must hit one detector channel together to produce
/// a click.
class AbsorptionOrder {
 public:
  static constexpr int kMax = 16;

  explicit AbsorptionOrder(int order);

  int value() const { return order_; }

  friend bool operator==(const AbsorptionOrder&, const AbsorptionOrder&) = default;

 private:
  int order_;
};

/// Eve sends m_a photons to Alice and m_b photons to Bob on every pulse pair.
struct FixedScheme {
  AbsorptionOrder m_a;
  AbsorptionOrder m_b;
};

enum class Schedule { kParity, kRandom };

/// Eve alternates between (1, n) and (n, 1) pulse pairs. kParity uses even
/// trials for (1, n); kRandom flips a fair coin per trial.
struct AlternatingScheme {
  AlternatingScheme(AbsorptionOrder n, Schedule schedule);

  AbsorptionOrder n;
  Schedule schedule;
};

using AttackScheme = std::variant<FixedScheme, AlternatingScheme>;

AttackScheme make_fixed(int m_a, int m_b);
AttackScheme make_alternating(int n, Schedule schedule = Schedule::kParity);

/// Short human-readable label, e.g. "fixed(2,3)" or "alternating(2,parity)".
std::string describe(const AttackScheme& scheme);

enum class SideOutcome : std::uint8_t { kClick0, kClick1, kNoClick, kDoubleClick };

inline bool is_click(SideOutcome o) {
  return o == SideOutcome::kClick0 || o == SideOutcome::kClick1;
}

struct CoincidenceCounts {
  // Coincidences, Alice's channel first.
  std::uint64_t n00 = 0;
  std::uint64_t n01 = 0;
  std::uint64_t n10 = 0;
  std::uint64_t n11 = 0;
  // Bob clicked, Alice did not.
  std::uint64_t n_discard_no_a = 0;
  // Alice clicked, Bob did not.
  std::uint64_t n_discard_no_b = 0;
  std::uint64_t n_discard_neither = 0;
  // At least one side saw both channels reach threshold.
  std::uint64_t n_double = 0;
  std::uint64_t n_trials = 0;

  std::uint64_t coincidences() const { return n00 + n01 + n10 + n11; }

  /// True when every trial is accounted for exactly once.
  bool conserved() const;

  /// Tally one trial from its two side outcomes.
  void record(SideOutcome alice, SideOutcome bob);

  friend bool operator==(const CoincidenceCounts&, const CoincidenceCounts&) = default;
};

/// Componentwise sum; throws std::overflow_error if any field wraps.
CoincidenceCounts merge_counts(const CoincidenceCounts& a, const CoincidenceCounts& b);

struct CorrelationResult {
  double e_value = 0.0;
  double coincidence_rate = 0.0;
  double stderr_e = 0.0;
  std::uint64_t n_coincidences = 0;
};

/// Coincidence-normalized correlation estimate from raw tallies. The
/// standard error treats each coincidence as an independent +/-1 sample.
CorrelationResult correlation_from_counts(const CoincidenceCounts& counts);

}  // namespace mpa

// Exact evaluation of detection probabilities, correlations, CHSH values and
// coincidence-sum visibilities for a uniform source angle.
//
// All integrals over the source angle are trigonometric polynomials of known
// degree, so a uniform rule with enough nodes integrates them exactly up to
// rounding. These functions are the reference the Monte Carlo engine is
// checked against.

#pragma once

#include <cstddef>
#include <utility>

#include "mpa/core.hpp"

namespace mpa::analytic {

/// Probability that a single photon polarized at `lambda` leaves an analyzer
/// rotated by `theta` through `channel` (0 -> cos^2, 1 -> sin^2).
double malus_prob(int channel, Angle lambda, Angle theta);

/// P_0^m + P_1^m: probability that all m photons of a pulse pick the same
/// channel, i.e. that an m-photon absorber clicks at all.
double side_click_prob(AbsorptionOrder order, Angle lambda, Angle theta);

/// side_click_prob averaged over a uniform source angle. Independent of theta.
double avg_side_click_prob(AbsorptionOrder order);

/// Number of nodes used to integrate a trigonometric polynomial whose highest
/// harmonic is `max_harmonic`.
inline std::size_t quadrature_nodes(int max_harmonic) {
  return static_cast<std::size_t>(4 * max_harmonic + 8);
}

/// (1/2pi) * integral of f over one period, using `nodes` equally spaced
/// samples starting at 0.
template <typename F>
double integrate_uniform(F&& f, std::size_t nodes) {
  const double step = kTwoPi / static_cast<double>(nodes);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    sum += f(step * static_cast<double>(i));
  }
  return sum / static_cast<double>(nodes);
}

/// Period average of a trigonometric polynomial with harmonics up to
/// `max_harmonic`. Exact up to rounding for such integrands.
template <typename F>
double integrate_periodic(F&& f, int max_harmonic) {
  return integrate_uniform(std::forward<F>(f), quadrature_nodes(max_harmonic));
}

struct JointProbabilityTable {
  double p00 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;

  double sum() const { return p00 + p01 + p10 + p11; }
  double at(int k, int l) const;
};

/// Coincidence probability for Alice's channel k and Bob's channel l when
/// Alice's detectors need m_a photons and Bob's need m_b. Bob's photons are
/// polarized orthogonally to Alice's.
double joint_click_prob(int k, int l, AbsorptionOrder m_a, AbsorptionOrder m_b,
                        const MeasurementSettings& settings);

/// Same as joint_click_prob with an explicit quadrature node count.
double joint_click_prob(int k, int l, AbsorptionOrder m_a, AbsorptionOrder m_b,
                        const MeasurementSettings& settings, std::size_t nodes);

JointProbabilityTable joint_table(AbsorptionOrder m_a, AbsorptionOrder m_b,
                                  const MeasurementSettings& settings);

/// Scheme-level table. Alternating schemes average the (1,n) and (n,1) tables,
/// which is exact in expectation for both the parity and random schedules.
JointProbabilityTable joint_table(const AttackScheme& scheme,
                                  const MeasurementSettings& settings);

/// E = (p00 - p01 - p10 + p11) / sum; coincidence_rate = sum. stderr_e is 0.
CorrelationResult correlation_from_table(const JointProbabilityTable& table);

CorrelationResult correlation(AbsorptionOrder m_a, AbsorptionOrder m_b,
                              const MeasurementSettings& settings);
CorrelationResult correlation(const AttackScheme& scheme,
                              const MeasurementSettings& settings);

/// Sum of the four coincidence probabilities.
double coincidence_sum(const AttackScheme& scheme, const MeasurementSettings& settings);

struct ChshSpec {
  Angle a1{0.0};
  Angle a2{kPi / 4.0};
  Angle b1{-kPi / 8.0};
  Angle b2{kPi / 8.0};
};

/// |E11 + E12 + E22 - E21| where Eij = E(a_i, b_j).
double chsh_combine(double e11, double e12, double e21, double e22);

double chsh(AbsorptionOrder m_a, AbsorptionOrder m_b, const ChshSpec& spec = {});
double chsh(const AttackScheme& scheme, const ChshSpec& spec = {});

/// (max - min) / (max + min) of the coincidence sum over theta_a - theta_b.
/// The extrema are located on a dense grid and then polished with Brent's
/// method.
double coincidence_sum_visibility(AbsorptionOrder m_a, AbsorptionOrder m_b);
double coincidence_sum_visibility(const AttackScheme& scheme);

}  // namespace mpa::analytic

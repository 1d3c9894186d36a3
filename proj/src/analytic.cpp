#include "mpa/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/minima.hpp>

namespace mpa::analytic {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Probability that all `order` photons polarized at angle `phi` relative to
// the analyzer land in `channel`.
double all_in_channel(int channel, double phi, int order) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return ipow(channel == 0 ? c * c : s * s, order);
}

}  // namespace

double malus_prob(int channel, Angle lambda, Angle theta) {
  if (channel != 0 && channel != 1) throw std::invalid_argument("channel must be 0 or 1");
  return all_in_channel(channel, lambda.radians() + theta.radians(), 1);
}

double side_click_prob(AbsorptionOrder order, Angle lambda, Angle theta) {
  const double phi = lambda.radians() + theta.radians();
  return all_in_channel(0, phi, order.value()) + all_in_channel(1, phi, order.value());
}

double avg_side_click_prob(AbsorptionOrder order) {
  const int m = order.value();
  return integrate_periodic(
      [m](double lambda) { return all_in_channel(0, lambda, m) + all_in_channel(1, lambda, m); },
      2 * m);
}

double JointProbabilityTable::at(int k, int l) const {
  if (k == 0) return l == 0 ? p00 : p01;
  return l == 0 ? p10 : p11;
}

double joint_click_prob(int k, int l, AbsorptionOrder m_a, AbsorptionOrder m_b,
                        const MeasurementSettings& settings, std::size_t nodes) {
  if ((k != 0 && k != 1) || (l != 0 && l != 1)) {
    throw std::invalid_argument("channel indices must be 0 or 1");
  }
  if (nodes == 0) throw std::invalid_argument("quadrature needs at least one node");
  const double ta = settings.theta_a.radians();
  const double tb = settings.theta_b.radians() + kPi / 2.0;
  const int ma = m_a.value();
  const int mb = m_b.value();
  return integrate_uniform(
      [&](double lambda) {
        return all_in_channel(k, lambda + ta, ma) * all_in_channel(l, lambda + tb, mb);
      },
      nodes);
}

double joint_click_prob(int k, int l, AbsorptionOrder m_a, AbsorptionOrder m_b,
                        const MeasurementSettings& settings) {
  return joint_click_prob(k, l, m_a, m_b, settings,
                          quadrature_nodes(2 * (m_a.value() + m_b.value())));
}

JointProbabilityTable joint_table(AbsorptionOrder m_a, AbsorptionOrder m_b,
                                  const MeasurementSettings& settings) {
  JointProbabilityTable t;
  t.p00 = joint_click_prob(0, 0, m_a, m_b, settings);
  t.p01 = joint_click_prob(0, 1, m_a, m_b, settings);
  t.p10 = joint_click_prob(1, 0, m_a, m_b, settings);
  t.p11 = joint_click_prob(1, 1, m_a, m_b, settings);
  return t;
}

JointProbabilityTable joint_table(const AttackScheme& scheme,
                                  const MeasurementSettings& settings) {
  if (const auto* f = std::get_if<FixedScheme>(&scheme)) {
    return joint_table(f->m_a, f->m_b, settings);
  }
  const auto& alt = std::get<AlternatingScheme>(scheme);
  const AbsorptionOrder one(1);
  const auto lo = joint_table(one, alt.n, settings);
  const auto hi = joint_table(alt.n, one, settings);
  return {0.5 * (lo.p00 + hi.p00), 0.5 * (lo.p01 + hi.p01), 0.5 * (lo.p10 + hi.p10),
          0.5 * (lo.p11 + hi.p11)};
}

CorrelationResult correlation_from_table(const JointProbabilityTable& t) {
  CorrelationResult r;
  r.coincidence_rate = t.sum();
  if (r.coincidence_rate > 0.0) {
    r.e_value = (t.p00 - t.p01 - t.p10 + t.p11) / r.coincidence_rate;
  }
  return r;
}

CorrelationResult correlation(AbsorptionOrder m_a, AbsorptionOrder m_b,
                              const MeasurementSettings& settings) {
  return correlation_from_table(joint_table(m_a, m_b, settings));
}

CorrelationResult correlation(const AttackScheme& scheme,
                              const MeasurementSettings& settings) {
  return correlation_from_table(joint_table(scheme, settings));
}

double coincidence_sum(const AttackScheme& scheme, const MeasurementSettings& settings) {
  return joint_table(scheme, settings).sum();
}

double chsh_combine(double e11, double e12, double e21, double e22) {
  return std::abs(e11 + e12 + e22 - e21);
}

double chsh(const AttackScheme& scheme, const ChshSpec& spec) {
  auto e = [&](Angle a, Angle b) {
    return correlation(scheme, MeasurementSettings(a, b)).e_value;
  };
  return chsh_combine(e(spec.a1, spec.b1), e(spec.a1, spec.b2), e(spec.a2, spec.b1),
                      e(spec.a2, spec.b2));
}

double chsh(AbsorptionOrder m_a, AbsorptionOrder m_b, const ChshSpec& spec) {
  return chsh(FixedScheme{m_a, m_b}, spec);
}

double coincidence_sum_visibility(const AttackScheme& scheme) {
  constexpr int kGrid = 2048;
  const double step = kPi / kGrid;
  auto sum_at = [&](double delta) {
    return coincidence_sum(scheme, MeasurementSettings(delta, 0.0));
  };

  std::vector<double> values(kGrid);
  for (int i = 0; i < kGrid; ++i) values[i] = sum_at(step * i);
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double grid_min_at = step * static_cast<double>(min_it - values.begin());
  const double grid_max_at = step * static_cast<double>(max_it - values.begin());

  // ~1e-10 relative location tolerance; the value error is quadratic in it.
  constexpr int kBits = 34;
  const double lo = std::min(
      *min_it, boost::math::tools::brent_find_minima(sum_at, grid_min_at - step,
                                                     grid_min_at + step, kBits)
                   .second);
  const double hi = std::max(
      *max_it, -boost::math::tools::brent_find_minima(
                    [&](double d) { return -sum_at(d); }, grid_max_at - step,
                    grid_max_at + step, kBits)
                    .second);
  if (hi + lo <= 0.0) return 0.0;
  return (hi - lo) / (hi + lo);
}

double coincidence_sum_visibility(AbsorptionOrder m_a, AbsorptionOrder m_b) {
  return coincidence_sum_visibility(FixedScheme{m_a, m_b});
}

}  // namespace mpa::analytic

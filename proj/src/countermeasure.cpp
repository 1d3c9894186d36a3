#include "mpa/countermeasure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mpa/montecarlo.hpp"
#include "mpa/rng.hpp"

namespace mpa::countermeasure {

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("scan grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] < kPi)) {
      throw std::invalid_argument("scan grid values must lie in [0, pi)");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("scan grid must be strictly increasing");
    }
  }
}

// Visibility of the series and its first-order error from the two extreme
// points.
void fill_visibility(ScanResult& r) {
  const auto [lo, hi] = std::minmax_element(
      r.points.begin(), r.points.end(),
      [](const ScanPoint& a, const ScanPoint& b) { return a.value < b.value; });
  const double mn = lo->value;
  const double mx = hi->value;
  const double denom = mx + mn;
  if (denom <= 0.0) return;
  r.visibility = (mx - mn) / denom;
  const double d_max = 2.0 * mn / (denom * denom);
  const double d_min = 2.0 * mx / (denom * denom);
  r.visibility_stderr = std::sqrt(d_max * d_max * hi->value_stderr * hi->value_stderr +
                                  d_min * d_min * lo->value_stderr * lo->value_stderr);
}

double fraction(std::uint64_t k, std::uint64_t n) {
  return static_cast<double>(k) / static_cast<double>(n);
}

double binomial_stderr(double p, std::uint64_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

double analytic_singles(const AttackScheme& scheme, Side side, double theta) {
  auto avg = [theta](int order) {
    const AbsorptionOrder m(order);
    return analytic::integrate_periodic(
        [&](double lambda) {
          return analytic::side_click_prob(m, Angle(lambda), Angle(theta));
        },
        2 * order);
  };
  if (const auto* f = std::get_if<FixedScheme>(&scheme)) {
    return avg(side == Side::kAlice ? f->m_a.value() : f->m_b.value());
  }
  const auto& alt = std::get<AlternatingScheme>(scheme);
  return 0.5 * (avg(1) + avg(alt.n.value()));
}

}  // namespace

std::vector<double> uniform_grid(int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = kPi * k / n;
  return g;
}

ScanResult scan_coincidence_sum(const AttackScheme& scheme, std::span<const double> grid,
                                const ScanMode& mode) {
  check_grid(grid);
  ScanResult r;
  r.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ScanPoint p;
    p.angle = grid[i];
    const MeasurementSettings settings(grid[i], 0.0);
    if (std::holds_alternative<AnalyticMode>(mode)) {
      p.probs = analytic::joint_table(scheme, settings);
      p.value = p.probs.sum();
      p.e_value = analytic::correlation_from_table(p.probs).e_value;
    } else {
      const auto& m = std::get<MonteCarloMode>(mode);
      mc::SimulationConfig cfg;
      cfg.scheme = scheme;
      cfg.settings = settings;
      cfg.n_trials = m.n_trials;
      cfg.seed = rng::sub_seed(m.seed, i);
      cfg.workers = m.workers;
      const auto rep = mc::run_trials(cfg);
      const auto& c = rep.counts;
      p.probs = {fraction(c.n00, c.n_trials), fraction(c.n01, c.n_trials),
                 fraction(c.n10, c.n_trials), fraction(c.n11, c.n_trials)};
      p.value = rep.correlation.coincidence_rate;
      p.value_stderr = binomial_stderr(p.value, c.n_trials);
      p.e_value = rep.correlation.e_value;
      p.stderr_e = rep.correlation.stderr_e;
    }
    r.points.push_back(p);
  }
  fill_visibility(r);
  return r;
}

ScanResult scan_singles(const AttackScheme& scheme, Side side, std::span<const double> grid,
                        const ScanMode& mode) {
  check_grid(grid);
  ScanResult r;
  r.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ScanPoint p;
    p.angle = grid[i];
    if (std::holds_alternative<AnalyticMode>(mode)) {
      p.value = analytic_singles(scheme, side, grid[i]);
    } else {
      const auto& m = std::get<MonteCarloMode>(mode);
      mc::SimulationConfig cfg;
      cfg.scheme = scheme;
      cfg.settings = side == Side::kAlice ? MeasurementSettings(grid[i], 0.0)
                                          : MeasurementSettings(0.0, grid[i]);
      cfg.n_trials = m.n_trials;
      cfg.seed = rng::sub_seed(m.seed, i);
      cfg.workers = m.workers;
      const auto rep = mc::run_trials(cfg);
      const auto& t = side == Side::kAlice ? rep.singles_a : rep.singles_b;
      p.value = fraction(t.clicks(), t.total());
      p.value_stderr = binomial_stderr(p.value, t.total());
    }
    r.points.push_back(p);
  }
  fill_visibility(r);
  return r;
}

Verdict fair_sampling_verdict(const ScanResult& scan, double threshold, double sigma_factor) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (sigma_factor < 0.0) throw std::invalid_argument("sigma factor must be non-negative");
  const double margin = scan.visibility - sigma_factor * scan.visibility_stderr;
  Verdict v;
  v.suspicious = margin > threshold;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s: visibility %.6g +/- %.3g, threshold %.6g, visibility - %.3g*sigma = %.6g",
                v.suspicious ? "suspicious" : "pass", scan.visibility,
                scan.visibility_stderr, threshold, sigma_factor, margin);
  v.explanation = buf;
  return v;
}

}  // namespace mpa::countermeasure

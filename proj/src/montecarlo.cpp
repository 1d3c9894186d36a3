#include "mpa/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "mpa/rng.hpp"

namespace mpa::mc {

namespace {

constexpr std::uint64_t kChunk = 1 << 16;

std::uint64_t add_checked(std::uint64_t x, std::uint64_t y) {
  if (x > std::numeric_limits<std::uint64_t>::max() - y) {
    throw std::overflow_error("singles tally overflow");
  }
  return x + y;
}

struct Partial {
  CoincidenceCounts counts;
  SideTally a;
  SideTally b;
};

void run_range(const SimulationConfig& config, std::uint64_t begin, std::uint64_t end,
               Partial& out) {
  for (std::uint64_t i = begin; i < end; ++i) {
    const TrialOutcome t = simulate_trial(config, config.settings, i);
    out.counts.record(t.alice, t.bob);
    out.a.record(t.alice);
    out.b.record(t.bob);
  }
}

SimulationReport finish(const SimulationConfig& config, const Partial& total,
                        std::chrono::steady_clock::time_point start) {
  SimulationReport r;
  r.counts = total.counts;
  r.correlation = correlation_from_counts(total.counts);
  r.singles_a = total.a;
  r.singles_b = total.b;
  r.seed = config.seed;
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace

void validate(const SimulationConfig& config) {
  if (config.n_trials == 0) throw std::invalid_argument("n_trials must be at least 1");
  for (int p : {config.photons_per_pulse_a, config.photons_per_pulse_b}) {
    if (p < 0 || p > kMaxPhotonsPerPulse) {
      throw std::invalid_argument("photons per pulse must be in [1, " +
                                  std::to_string(kMaxPhotonsPerPulse) + "]");
    }
  }
  if (config.workers < 0) throw std::invalid_argument("workers must be >= 0");
}

void SideTally::record(SideOutcome o) {
  switch (o) {
    case SideOutcome::kClick0: ++click0; break;
    case SideOutcome::kClick1: ++click1; break;
    case SideOutcome::kNoClick: ++no_click; break;
    case SideOutcome::kDoubleClick: ++double_click; break;
  }
}

SideTally merge_tally(const SideTally& a, const SideTally& b) {
  return {add_checked(a.click0, b.click0), add_checked(a.click1, b.click1),
          add_checked(a.no_click, b.no_click), add_checked(a.double_click, b.double_click)};
}

Angle draw_lambda(std::uint64_t trial_index, std::uint64_t seed) {
  const double u = rng::draw_uniforms(seed, trial_index, rng::Purpose::kSource)[0];
  return Angle(kTwoPi * u);
}

int dispatch_photons(int photons, double effective_angle, double u) {
  if (photons <= 0) return 0;
  const double c = std::cos(effective_angle);
  const double p = c * c;
  if (p >= 1.0) return photons;
  if (p <= 0.0) return 0;
  // Walk the CDF of the rarer outcome so the starting mass q0^n never
  // underflows for n <= kMaxPhotonsPerPulse.
  const bool flip = p > 0.5;
  const double succ = flip ? 1.0 - p : p;
  const double ratio = succ / (1.0 - succ);
  double pmf = std::pow(1.0 - succ, photons);
  double cdf = pmf;
  int k = 0;
  while (u >= cdf && k < photons) {
    pmf *= ratio * static_cast<double>(photons - k) / static_cast<double>(k + 1);
    cdf += pmf;
    ++k;
  }
  return flip ? photons - k : k;
}

SideOutcome detect(int count_ch0, int count_ch1, AbsorptionOrder order) {
  const bool fire0 = count_ch0 >= order.value();
  const bool fire1 = count_ch1 >= order.value();
  if (fire0 && fire1) return SideOutcome::kDoubleClick;
  if (fire0) return SideOutcome::kClick0;
  if (fire1) return SideOutcome::kClick1;
  return SideOutcome::kNoClick;
}

TrialOutcome simulate_trial(const SimulationConfig& config,
                            const MeasurementSettings& settings,
                            std::uint64_t trial_index) {
  const auto src = rng::draw_words(config.seed, trial_index, rng::Purpose::kSource);
  const double lambda = kTwoPi * rng::to_unit(src[0]);

  int order_a;
  int order_b;
  if (const auto* f = std::get_if<FixedScheme>(&config.scheme)) {
    order_a = f->m_a.value();
    order_b = f->m_b.value();
  } else {
    const auto& alt = std::get<AlternatingScheme>(config.scheme);
    const bool single_on_alice = alt.schedule == Schedule::kParity
                                     ? trial_index % 2 == 0
                                     : (src[1] >> 63) == 0;
    order_a = single_on_alice ? 1 : alt.n.value();
    order_b = single_on_alice ? alt.n.value() : 1;
  }
  const int photons_a = config.photons_per_pulse_a > 0 ? config.photons_per_pulse_a : order_a;
  const int photons_b = config.photons_per_pulse_b > 0 ? config.photons_per_pulse_b : order_b;

  const auto u = rng::draw_uniforms(config.seed, trial_index, rng::Purpose::kDispatch);
  const double phi_a = lambda + settings.theta_a.radians();
  const double phi_b = lambda + kPi / 2.0 + settings.theta_b.radians();
  const int a0 = dispatch_photons(photons_a, phi_a, u[0]);
  const int b0 = dispatch_photons(photons_b, phi_b, u[1]);
  return {detect(a0, photons_a - a0, AbsorptionOrder(order_a)),
          detect(b0, photons_b - b0, AbsorptionOrder(order_b))};
}

SimulationReport run_trials_serial(const SimulationConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Partial total;
  run_range(config, 0, config.n_trials, total);
  return finish(config, total, start);
}

SimulationReport run_trials(const SimulationConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t n = config.n_trials;
  const std::int64_t chunks = static_cast<std::int64_t>((n + kChunk - 1) / kChunk);
  std::vector<Partial> partials(static_cast<std::size_t>(chunks));
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    run_range(config, begin, std::min(n, begin + kChunk), partials[static_cast<std::size_t>(c)]);
  }

  Partial total;
  for (const auto& p : partials) {
    total.counts = merge_counts(total.counts, p.counts);
    total.a = merge_tally(total.a, p.a);
    total.b = merge_tally(total.b, p.b);
  }
  return finish(config, total, start);
}

ChshEstimate run_chsh(const SimulationConfig& config, const analytic::ChshSpec& spec,
                      std::uint64_t n_trials_per_setting) {
  const std::array<MeasurementSettings, 4> pairs = {
      MeasurementSettings(spec.a1, spec.b1), MeasurementSettings(spec.a1, spec.b2),
      MeasurementSettings(spec.a2, spec.b1), MeasurementSettings(spec.a2, spec.b2)};
  ChshEstimate est;
  double var = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    SimulationConfig c = config;
    c.settings = pairs[i];
    c.n_trials = n_trials_per_setting;
    c.seed = rng::sub_seed(config.seed, i);
    const auto report = run_trials(c);
    est.counts[i] = report.counts;
    est.correlations[i] = report.correlation;
    var += report.correlation.stderr_e * report.correlation.stderr_e;
  }
  est.s = analytic::chsh_combine(est.correlations[0].e_value, est.correlations[1].e_value,
                                 est.correlations[2].e_value, est.correlations[3].e_value);
  est.stderr_s = std::sqrt(var);
  return est;
}

}  // namespace mpa::mc

#include "mpa/protocol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "mpa/analytic.hpp"
#include "mpa/montecarlo.hpp"
#include "mpa/rng.hpp"

namespace mpa::protocol {

namespace {

bool matched(Angle a, Angle b) {
  // Polarization analyzers are pi-periodic.
  const double d = std::fmod(std::abs(a.radians() - b.radians()), kPi);
  return d < 1e-12 || kPi - d < 1e-12;
}

int pick3(std::uint64_t word) {
  return static_cast<int>(rng::to_unit(word) * 3.0);
}

}  // namespace

SiftPlan make_plan(const ProtocolConfig& config) {
  for (int i : {config.chsh_alice[0], config.chsh_alice[1], config.chsh_bob[0],
                config.chsh_bob[1]}) {
    if (i < 0 || i > 2) throw std::invalid_argument("CHSH setting index out of range");
  }
  if (config.chsh_alice[0] == config.chsh_alice[1] ||
      config.chsh_bob[0] == config.chsh_bob[1]) {
    throw std::invalid_argument("CHSH needs two distinct settings per side");
  }

  SiftPlan plan;
  bool any_key = false;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      plan.chsh_slot[a][b] = -1;
      if (matched(config.alice_settings[a], config.bob_settings[b])) {
        plan.role[a][b] = PairRole::kKey;
        any_key = true;
      } else {
        plan.role[a][b] = PairRole::kOther;
      }
    }
  }
  if (!any_key) {
    throw std::invalid_argument("settings sets contain no matched pair for key generation");
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const int a = config.chsh_alice[i];
      const int b = config.chsh_bob[j];
      if (plan.role[a][b] == PairRole::kKey) {
        throw std::invalid_argument("a CHSH setting pair coincides with a key pair");
      }
      plan.role[a][b] = PairRole::kChsh;
      plan.chsh_slot[a][b] = 2 * i + j;
    }
  }
  return plan;
}

SiftResult sift(std::span<const RoundRecord> records, const SiftPlan& plan) {
  SiftResult r;
  for (const auto& rec : records) {
    const int a = rec.alice_setting;
    const int b = rec.bob_setting;
    const bool coincidence = is_click(rec.alice) && is_click(rec.bob);
    switch (plan.role[a][b]) {
      case PairRole::kKey:
        r.by_pair[a][b].record(rec.alice, rec.bob);
        if (coincidence) {
          ++r.n_key;
          r.alice_key.push_back(rec.alice == SideOutcome::kClick1 ? 1 : 0);
          r.bob_key.push_back(rec.bob == SideOutcome::kClick1 ? 0 : 1);
          r.eve_key.push_back(rec.eve_guess);
        }
        break;
      case PairRole::kChsh:
        r.chsh[static_cast<std::size_t>(plan.chsh_slot[a][b])].record(rec.alice, rec.bob);
        if (coincidence) ++r.n_chsh;
        break;
      case PairRole::kOther:
        if (coincidence) ++r.n_other_pairs;
        break;
    }
    if (!coincidence) ++r.n_non_coincident;
  }
  return r;
}

std::vector<RoundRecord> generate_rounds(const ProtocolConfig& config) {
  if (config.n_rounds == 0) throw std::invalid_argument("n_rounds must be at least 1");
  if (config.workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (config.n_rounds > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw std::overflow_error("n_rounds too large");
  }

  mc::SimulationConfig sim;
  sim.scheme = config.scheme;
  sim.seed = config.seed;

  const auto n = static_cast<std::int64_t>(config.n_rounds);
  std::vector<RoundRecord> records(static_cast<std::size_t>(n));
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const auto w = rng::draw_words(config.seed, idx, rng::Purpose::kSettings);
    const int a = pick3(w[0]);
    const int b = pick3(w[1]);
    const MeasurementSettings settings(config.alice_settings[a], config.bob_settings[b]);
    const auto outcome = mc::simulate_trial(sim, settings, idx);
    const double lambda = mc::draw_lambda(idx, config.seed).radians();
    RoundRecord& rec = records[static_cast<std::size_t>(i)];
    rec.alice_setting = static_cast<std::uint8_t>(a);
    rec.bob_setting = static_cast<std::uint8_t>(b);
    rec.alice = outcome.alice;
    rec.bob = outcome.bob;
    rec.eve_guess =
        analytic::malus_prob(0, Angle(lambda), settings.theta_a) >= 0.5 ? 0 : 1;
  }
  return records;
}

ProtocolReport run_protocol(const ProtocolConfig& config) {
  const SiftPlan plan = make_plan(config);
  const auto records = generate_rounds(config);
  const SiftResult s = sift(records, plan);

  ProtocolReport rep;
  rep.n_rounds = config.n_rounds;
  for (const auto& rec : records) ++rep.rounds_by_setting_pair[rec.alice_setting][rec.bob_setting];

  rep.sifted_key_length = s.n_key;
  std::uint64_t errors = 0;
  std::uint64_t eve_hits = 0;
  for (std::size_t i = 0; i < s.alice_key.size(); ++i) {
    if (s.alice_key[i] != s.bob_key[i]) ++errors;
    if (s.alice_key[i] == s.eve_key[i]) ++eve_hits;
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.qber = s.n_key > 0 ? static_cast<double>(errors) / static_cast<double>(s.n_key) : nan;
  rep.eve_agreement =
      s.n_key > 0 ? static_cast<double>(eve_hits) / static_cast<double>(s.n_key) : nan;

  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      rep.qber_by_pair[a][b] = nan;
      if (plan.role[a][b] != PairRole::kKey) continue;
      const auto& c = s.by_pair[a][b];
      if (c.coincidences() > 0) {
        // Errors are same-channel coincidences: Bob's flipped bit disagrees.
        rep.qber_by_pair[a][b] = static_cast<double>(c.n00 + c.n11) /
                                 static_cast<double>(c.coincidences());
      }
    }
  }

  double var = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    rep.chsh_correlations[i] = correlation_from_counts(s.chsh[i]);
    var += rep.chsh_correlations[i].stderr_e * rep.chsh_correlations[i].stderr_e;
  }
  rep.s_estimate = analytic::chsh_combine(
      rep.chsh_correlations[0].e_value, rep.chsh_correlations[1].e_value,
      rep.chsh_correlations[2].e_value, rep.chsh_correlations[3].e_value);
  rep.s_stderr = std::sqrt(var);

  rep.n_chsh = s.n_chsh;
  rep.n_other_pairs = s.n_other_pairs;
  rep.n_non_coincident = s.n_non_coincident;
  rep.discard_fraction = static_cast<double>(s.n_other_pairs + s.n_non_coincident) /
                         static_cast<double>(config.n_rounds);
  return rep;
}

}  // namespace mpa::protocol

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mpa/analytic.hpp"
#include "mpa/cli.hpp"
#include "mpa/countermeasure.hpp"
#include "mpa/montecarlo.hpp"
#include "mpa/protocol.hpp"
#include "mpa/rng.hpp"
#include "oracles.hpp"

namespace {

using namespace mpa;
constexpr double kSqrt2 = std::numbers::sqrt2;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s=%.12g (want %.12g +/- %.1g)", what.c_str(), got, want, tol);
    expect(std::abs(got - want) <= tol, buf);
  }
};

AbsorptionOrder ord(int m) { return AbsorptionOrder(m); }
MeasurementSettings at_delta(double d) { return MeasurementSettings(d, 0.0); }

// 1. Analytic CHSH values.
void criterion_chsh(Check& c) {
  c.near(analytic::chsh(ord(1), ord(1)), kSqrt2, 1e-9, "S(1,1)");
  c.near(analytic::chsh(ord(2), ord(2)), 16.0 / 18.0 * 2.0 * kSqrt2, 1e-9, "S(2,2)");
  c.near(analytic::chsh(ord(2), ord(3)), 2.0 * kSqrt2, 1e-9, "S(2,3)");
  const double s33 = analytic::chsh(ord(3), ord(3));
  c.near(s33, 3.17, 0.01, "S(3,3) vs 3.17");
  // Exact value from the harmonic-expansion oracle.
  const double oracle_s33 = 4.0 * std::abs(oracle::harmonic_correlation(3, 3, kPi / 8.0));
  c.near(oracle_s33, 56.0 * kSqrt2 / 25.0, 1e-12, "oracle S(3,3)");
  c.near(s33, 56.0 * kSqrt2 / 25.0, 1e-9, "S(3,3)");
  c.detail << " S(3,3)=" << s33;
}

// 2. Closed-form agreement on a 100-point delta grid.
void criterion_closed_forms(Check& c) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double d = kPi * i / 100.0;
    const auto t1 = analytic::joint_table(ord(1), ord(1), at_delta(d));
    const auto t2 = analytic::joint_table(ord(2), ord(2), at_delta(d));
    const std::array<double, 10> errs = {
        t1.p00 - oracle::single_photon_same(d), t1.p11 - oracle::single_photon_same(d),
        t1.p01 - oracle::single_photon_diff(d), t1.p10 - oracle::single_photon_diff(d),
        t2.p00 - oracle::two_photon_same(d),    t2.p11 - oracle::two_photon_same(d),
        t2.p01 - oracle::two_photon_diff(d),    t2.p10 - oracle::two_photon_diff(d),
        analytic::correlation(ord(2), ord(2), at_delta(d)).e_value - oracle::e_two_two(d),
        analytic::correlation(ord(2), ord(3), at_delta(d)).e_value - oracle::e_two_three(d)};
    for (double e : errs) worst = std::max(worst, std::abs(e));
  }
  c.expect(worst <= 1e-10, "max closed-form deviation");
  c.detail << " max_dev=" << worst;
}

// 3. Visibilities.
void criterion_visibility(Check& c) {
  c.near(analytic::coincidence_sum_visibility(ord(2), ord(2)), 1.0 / 18.0, 1e-9, "V(2,2)");
  c.near(analytic::coincidence_sum_visibility(ord(2), ord(3)), 0.10, 1e-9, "V(2,3)");
  c.near(analytic::coincidence_sum_visibility(ord(1), ord(1)), 0.0, 1e-12, "V(1,1)");
  const auto alt = make_alternating(2);
  const double ref = analytic::coincidence_sum(alt, MeasurementSettings());
  double worst = 0.0;
  for (int i = 0; i < 32; ++i) {
    for (int j = 0; j < 32; ++j) {
      const MeasurementSettings s(kPi * i / 32.0, kPi * j / 32.0);
      worst = std::max(worst, std::abs(analytic::coincidence_sum(alt, s) - ref));
    }
  }
  c.expect(worst <= 1e-12, "alternating(1,2) coincidence sum angle-independent");
  c.detail << " V(2,2)=" << analytic::coincidence_sum_visibility(ord(2), ord(2))
           << " alt_dev=" << worst;
}

// 4. Monte Carlo vs analytic over {1,2,3}^2 x {0, pi/8, pi/4, 3pi/8}.
void criterion_mc_matrix(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  const std::array<double, 4> deltas = {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0};
  double worst = 0.0;
  std::uint64_t idx = 0;
  for (int ma = 1; ma <= 3; ++ma) {
    for (int mb = 1; mb <= 3; ++mb) {
      for (double d : deltas) {
        mc::SimulationConfig cfg;
        cfg.scheme = make_fixed(ma, mb);
        cfg.settings = at_delta(d);
        cfg.n_trials = 1'000'000;
        cfg.seed = rng::sub_seed(20240401, idx++);
        const auto rep = mc::run_trials(cfg);
        c.expect(rep.counts.conserved(), "tally conservation");
        const auto t = analytic::joint_table(cfg.scheme, cfg.settings);
        const double n = static_cast<double>(rep.counts.n_trials);
        const std::array<std::pair<std::uint64_t, double>, 4> cells = {
            std::pair{rep.counts.n00, t.p00}, std::pair{rep.counts.n01, t.p01},
            std::pair{rep.counts.n10, t.p10}, std::pair{rep.counts.n11, t.p11}};
        for (const auto& [k, p] : cells) {
          const double z = std::abs(static_cast<double>(k) / n - p) / std::sqrt(p * (1 - p) / n);
          worst = std::max(worst, z);
        }
        const double e = analytic::correlation_from_table(t).e_value;
        const double sd =
            std::sqrt((1 - e * e) / static_cast<double>(rep.correlation.n_coincidences));
        worst = std::max(worst, std::abs(rep.correlation.e_value - e) / sd);
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(worst <= 5.0, "all deviations within 5 sigma");
  c.expect(secs < 60.0, "matrix under 60 s");
  c.detail << " max_dev_sigma=" << worst << " elapsed_s=" << secs;
}

// 5. Monte Carlo CHSH.
void criterion_mc_chsh(Check& c) {
  mc::SimulationConfig cfg;
  cfg.seed = 5;
  cfg.scheme = make_fixed(2, 2);
  const auto s22 = mc::run_chsh(cfg, {}, 1'000'000);
  cfg.scheme = make_fixed(3, 3);
  const auto s33 = mc::run_chsh(cfg, {}, 1'000'000);
  c.near(s22.s, 2.514, 0.02, "S_mc(2,2)");
  c.near(s33.s, 3.168, 0.02, "S_mc(3,3)");
  c.expect(s22.s > 2.0 && s33.s > 2.0, "violation");
  c.detail << " S_mc(2,2)=" << s22.s << "+/-" << s22.stderr_s << " S_mc(3,3)=" << s33.s << "+/-"
           << s33.stderr_s;
}

// 6. Protocol harness.
void criterion_protocol(Check& c) {
  protocol::ProtocolConfig cfg;
  cfg.n_rounds = 1'000'000;
  cfg.seed = 17;
  cfg.scheme = make_fixed(2, 2);
  const auto r22 = protocol::run_protocol(cfg);
  c.near(r22.qber, 3.0 / 38.0, 0.01, "QBER(2,2)");
  c.expect(r22.s_estimate > 2.4, "protocol S(2,2) > 2.4");
  cfg.scheme = make_fixed(1, 1);
  const auto r11 = protocol::run_protocol(cfg);
  c.near(r11.qber, 0.25, 0.01, "QBER(1,1)");
  c.near(r11.s_estimate, kSqrt2, 0.05, "protocol S(1,1)");
  c.expect(r11.s_estimate < 2.0, "no violation for (1,1)");
  c.detail << " QBER(2,2)=" << r22.qber << " S(2,2)=" << r22.s_estimate
           << " QBER(1,1)=" << r11.qber << " S(1,1)=" << r11.s_estimate;
}

// 7. Determinism across worker counts, byte for byte.
void criterion_determinism(Check& c) {
  const std::vector<std::vector<std::string>> commands = {
      {"simulate", "--ma", "2", "--mb", "3", "--trials", "1000000", "--seed", "7", "--theta-a",
       "0", "--theta-b", "0.39269908"},
      {"simulate", "--scheme", "alternating", "--alt-n", "3", "--schedule", "random",
       "--trials", "500000", "--seed", "8"},
      {"chsh", "--ma", "3", "--mb", "3", "--trials", "500000", "--seed", "1"},
      {"protocol", "--ma", "2", "--mb", "2", "--rounds", "500000", "--seed", "3"},
  };
  for (const auto& cmd : commands) {
    std::string reference;
    for (const char* workers : {"1", "2", "4", "7"}) {
      auto args = cmd;
      args.push_back("--workers");
      args.push_back(workers);
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      c.expect(code == 0, cmd[0] + " exit code");
      if (reference.empty()) reference = out.str();
      c.expect(out.str() == reference, cmd[0] + " output identical with --workers " + workers);
    }
  }
  c.detail << " commands=" << commands.size() << " worker_counts=4";
}

// 8. Property suites and countermeasure verdicts.
void criterion_properties(Check& c) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double sym = 0.0, shift = 0.0, anti = 0.0, doubling = 0.0;
  for (int ma = 1; ma <= 3; ++ma) {
    for (int mb = 1; mb <= 3; ++mb) {
      const auto a = ord(ma), b = ord(mb);
      const std::size_t nodes = analytic::quadrature_nodes(2 * (ma + mb));
      for (int i = 0; i < 50; ++i) {
        const double ta = ang(gen), tb = ang(gen), off = ang(gen);
        const MeasurementSettings s(ta, tb);
        const auto t = analytic::joint_table(a, b, s);
        sym = std::max({sym, std::abs(t.p00 - t.p11), std::abs(t.p01 - t.p10)});
        const auto ts = analytic::joint_table(a, b, MeasurementSettings(ta + off, tb + off));
        shift = std::max({shift, std::abs(t.p00 - ts.p00), std::abs(t.p01 - ts.p01),
                          std::abs(t.p10 - ts.p10), std::abs(t.p11 - ts.p11)});
        const double e = analytic::correlation(a, b, s).e_value;
        const double e90 =
            analytic::correlation(a, b, MeasurementSettings(ta + kPi / 2.0, tb)).e_value;
        anti = std::max(anti, std::abs(e + e90));
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l) {
            doubling = std::max(doubling,
                                std::abs(analytic::joint_click_prob(k, l, a, b, s, nodes) -
                                         analytic::joint_click_prob(k, l, a, b, s, 2 * nodes)));
          }
        }
      }
    }
  }
  c.expect(sym <= 1e-12, "channel symmetry");
  c.expect(shift <= 1e-12, "delta-only dependence");
  c.expect(anti <= 1e-12, "E(delta+pi/2) = -E(delta)");
  c.expect(doubling <= 1e-12, "node doubling");

  // Tally conservation over a spread of configurations.
  for (int i = 0; i < 20; ++i) {
    mc::SimulationConfig cfg;
    cfg.scheme = i % 3 == 0 ? make_alternating(2 + i % 4) : make_fixed(1 + i % 4, 1 + (i / 4) % 4);
    cfg.settings = MeasurementSettings(ang(gen), ang(gen));
    cfg.n_trials = 10'000 + i;
    cfg.seed = i;
    cfg.photons_per_pulse_a = i % 5;
    c.expect(mc::run_trials(cfg).counts.conserved(), "conservation");
  }

  const auto grid = countermeasure::uniform_grid(64);
  const countermeasure::MonteCarloMode mode{1'000'000, 31, 0};
  struct Case {
    AttackScheme scheme;
    bool expect_suspicious;
  };
  const std::array<Case, 5> cases = {Case{make_fixed(2, 2), true}, Case{make_fixed(2, 3), true},
                                     Case{make_fixed(1, 1), false},
                                     Case{make_alternating(2), false},
                                     Case{make_alternating(2, Schedule::kRandom), false}};
  for (const auto& k : cases) {
    const auto scan = countermeasure::scan_coincidence_sum(k.scheme, grid, mode);
    const auto v = countermeasure::fair_sampling_verdict(scan);
    c.expect(v.suspicious == k.expect_suspicious, "verdict " + describe(k.scheme));
    c.detail << " " << describe(k.scheme) << ":V=" << scan.visibility
             << (v.suspicious ? "(suspicious)" : "(pass)");
  }
  c.detail << " sym=" << sym << " shift=" << shift << " anti=" << anti
           << " doubling=" << doubling;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"AC1 analytic CHSH values", criterion_chsh},
      {"AC2 closed-form agreement", criterion_closed_forms},
      {"AC3 coincidence-sum visibility", criterion_visibility},
      {"AC4 Monte Carlo vs analytic matrix", criterion_mc_matrix},
      {"AC5 Monte Carlo CHSH", criterion_mc_chsh},
      {"AC6 protocol harness", criterion_protocol},
      {"AC7 determinism across workers", criterion_determinism},
      {"AC8 property suites and verdicts", criterion_properties},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Check c;
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " exception: " << e.what();
    }
    if (!c.ok) ++failures;
    std::printf("[%s] %s:%s\n", c.ok ? "PASS" : "FAIL", name.c_str(), c.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

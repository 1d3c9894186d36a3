#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mpa/analytic.hpp"
#include "mpa/protocol.hpp"

namespace mpa::protocol {
namespace {

using O = SideOutcome;

TEST(MakePlanTest, DefaultRoles) {
  const auto plan = make_plan(ProtocolConfig{});
  // Alice {0, pi/8, pi/4}, Bob {-pi/8, 0, pi/8}.
  EXPECT_EQ(plan.role[0][1], PairRole::kKey);
  EXPECT_EQ(plan.role[1][2], PairRole::kKey);
  EXPECT_EQ(plan.role[0][0], PairRole::kChsh);
  EXPECT_EQ(plan.role[0][2], PairRole::kChsh);
  EXPECT_EQ(plan.role[2][0], PairRole::kChsh);
  EXPECT_EQ(plan.role[2][2], PairRole::kChsh);
  EXPECT_EQ(plan.chsh_slot[0][0], 0);
  EXPECT_EQ(plan.chsh_slot[0][2], 1);
  EXPECT_EQ(plan.chsh_slot[2][0], 2);
  EXPECT_EQ(plan.chsh_slot[2][2], 3);
  EXPECT_EQ(plan.role[1][0], PairRole::kOther);
  EXPECT_EQ(plan.role[1][1], PairRole::kOther);
  EXPECT_EQ(plan.role[2][1], PairRole::kOther);
}

TEST(MakePlanTest, RejectsSettingsWithoutMatchedPair) {
  ProtocolConfig c;
  c.bob_settings = {Angle(0.1), Angle(0.2), Angle(0.3)};
  EXPECT_THROW(make_plan(c), std::invalid_argument);
  c = ProtocolConfig{};
  c.chsh_alice = {0, 0};
  EXPECT_THROW(make_plan(c), std::invalid_argument);
  c = ProtocolConfig{};
  c.chsh_bob = {0, 3};
  EXPECT_THROW(make_plan(c), std::invalid_argument);
}

TEST(MakePlanTest, MatchesModuloPi) {
  ProtocolConfig c;
  c.bob_settings = {Angle(-kPi / 8.0), Angle(kPi), Angle(kPi / 8.0)};
  EXPECT_EQ(make_plan(c).role[0][1], PairRole::kKey);
}

TEST(SiftTest, Examples) {
  const auto plan = make_plan(ProtocolConfig{});
  const std::vector<RoundRecord> records = {
      {0, 1, O::kNoClick, O::kClick0, 0},  // no coincidence
      {0, 1, O::kClick0, O::kClick1, 0},   // key: Alice 0, Bob flip(1) = 0
      {0, 2, O::kClick1, O::kClick1, 1},   // CHSH (a1, b2)
      {1, 1, O::kClick0, O::kClick0, 0},   // other pair
  };
  const auto s = sift(records, plan);
  EXPECT_EQ(s.n_non_coincident, 1u);
  ASSERT_EQ(s.alice_key.size(), 1u);
  EXPECT_EQ(s.alice_key[0], 0);
  EXPECT_EQ(s.bob_key[0], 0);
  EXPECT_EQ(s.n_key, 1u);
  EXPECT_EQ(s.n_chsh, 1u);
  EXPECT_EQ(s.chsh[1].n11, 1u);
  EXPECT_EQ(s.n_other_pairs, 1u);
}

TEST(SiftTest, PartitionIsExhaustive) {
  ProtocolConfig c;
  c.n_rounds = 200'000;
  c.seed = 3;
  const auto records = generate_rounds(c);
  const auto s = sift(records, make_plan(c));
  EXPECT_EQ(s.n_key + s.n_chsh + s.n_other_pairs + s.n_non_coincident, c.n_rounds);
  EXPECT_EQ(s.alice_key.size(), s.n_key);
  EXPECT_EQ(s.bob_key.size(), s.n_key);
}

TEST(RunProtocolTest, SinglePhotonHasNoViolation) {
  ProtocolConfig c;
  c.scheme = make_fixed(1, 1);
  c.seed = 5;
  const auto r = run_protocol(c);
  EXPECT_NEAR(r.qber, 0.25, 0.01);
  EXPECT_NEAR(r.s_estimate, std::sqrt(2.0), 0.05);
  EXPECT_LT(r.s_estimate, 2.0);
}

TEST(RunProtocolTest, TwoPhotonAttackPassesBellCheck) {
  ProtocolConfig c;
  c.seed = 6;
  const auto r = run_protocol(c);
  EXPECT_NEAR(r.qber, 3.0 / 38.0, 0.01);
  EXPECT_NEAR(r.s_estimate, 2.51, 0.05);
  EXPECT_LE(r.sifted_key_length, c.n_rounds);
  EXPECT_EQ(r.sifted_key_length + r.n_chsh + r.n_other_pairs + r.n_non_coincident, r.n_rounds);
  // Eve predicts the key far better than chance.
  EXPECT_GT(r.eve_agreement, 0.9);
}

TEST(RunProtocolTest, QberMatchesMatchedCorrelation) {
  ProtocolConfig c;
  c.seed = 8;
  const auto r = run_protocol(c);
  // Each matched pair: 1 - 2*qber estimates |E(0)|.
  const double e0 = std::abs(analytic::correlation(make_fixed(2, 2), MeasurementSettings()).e_value);
  const double n = static_cast<double>(r.sifted_key_length);
  const double sd = 2.0 * std::sqrt(r.qber * (1.0 - r.qber) / n);
  EXPECT_LT(std::abs(1.0 - 2.0 * r.qber - e0), 5.0 * sd);
  EXPECT_FALSE(std::isnan(r.qber_by_pair[0][1]));
  EXPECT_FALSE(std::isnan(r.qber_by_pair[1][2]));
  EXPECT_TRUE(std::isnan(r.qber_by_pair[0][0]));
}

TEST(RunProtocolTest, SettingPairsAreUniform) {
  ProtocolConfig c;
  c.seed = 10;
  const auto r = run_protocol(c);
  const double n = static_cast<double>(c.n_rounds);
  const double p = 1.0 / 9.0;
  const double sd = std::sqrt(n * p * (1.0 - p));
  for (const auto& row : r.rounds_by_setting_pair) {
    for (auto count : row) EXPECT_LT(std::abs(static_cast<double>(count) - n * p), 5.0 * sd);
  }
}

TEST(RunProtocolTest, IndependentOfWorkers) {
  ProtocolConfig c;
  c.n_rounds = 100'000;
  c.workers = 1;
  const auto a = generate_rounds(c);
  c.workers = 5;
  const auto b = generate_rounds(c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].alice, b[i].alice);
    ASSERT_EQ(a[i].bob, b[i].bob);
    ASSERT_EQ(a[i].alice_setting, b[i].alice_setting);
    ASSERT_EQ(a[i].bob_setting, b[i].bob_setting);
  }
}

TEST(RunProtocolTest, RejectsZeroRounds) {
  ProtocolConfig c;
  c.n_rounds = 0;
  EXPECT_THROW(run_protocol(c), std::invalid_argument);
}

}  // namespace
}  // namespace mpa::protocol

// Ekert-style key distribution run against Eve's separable source.
//
// Alice and Bob each pick one of three analyzer settings per round. Rounds at
// matched settings (equal angles) with a coincidence become key bits; rounds
// at the four CHSH setting pairs estimate S; everything else is discarded.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mpa/core.hpp"

namespace mpa::protocol {

struct ProtocolConfig {
  AttackScheme scheme = make_fixed(2, 2);
  std::uint64_t n_rounds = 1'000'000;
  std::uint64_t seed = 1;
  std::array<Angle, 3> alice_settings{Angle(0.0), Angle(kPi / 8.0), Angle(kPi / 4.0)};
  std::array<Angle, 3> bob_settings{Angle(-kPi / 8.0), Angle(0.0), Angle(kPi / 8.0)};
  // Indices into the setting triples: CHSH uses a1, a2 from Alice and b1, b2
  // from Bob.
  std::array<int, 2> chsh_alice{0, 2};
  std::array<int, 2> chsh_bob{0, 2};
  int workers = 0;
};

enum class PairRole : std::uint8_t { kKey, kChsh, kOther };

/// Role of every (alice index, bob index) pair, derived from a config.
struct SiftPlan {
  std::array<std::array<PairRole, 3>, 3> role{};
  // CHSH slot 0..3 for pairs with role kChsh, ordered (a1,b1),(a1,b2),(a2,b1),(a2,b2).
  std::array<std::array<int, 3>, 3> chsh_slot{};
};

/// Throws std::invalid_argument when no matched pair exists or the CHSH
/// indices are out of range or repeated.
SiftPlan make_plan(const ProtocolConfig& config);

struct RoundRecord {
  std::uint8_t alice_setting = 0;
  std::uint8_t bob_setting = 0;
  SideOutcome alice = SideOutcome::kNoClick;
  SideOutcome bob = SideOutcome::kNoClick;
  // Eve's guess of Alice's channel from lambda and the announced setting.
  std::uint8_t eve_guess = 0;
};

struct SiftResult {
  std::vector<std::uint8_t> alice_key;
  std::vector<std::uint8_t> bob_key;
  std::vector<std::uint8_t> eve_key;
  // Per matched pair, indexed [alice][bob]; only kKey cells are filled.
  std::array<std::array<CoincidenceCounts, 3>, 3> by_pair{};
  std::array<CoincidenceCounts, 4> chsh{};
  std::uint64_t n_key = 0;
  std::uint64_t n_chsh = 0;
  std::uint64_t n_other_pairs = 0;
  std::uint64_t n_non_coincident = 0;
};

/// Partition rounds into key bits, CHSH coincidences and discards. Bob
/// flips his bit because the source sends orthogonal polarizations.
SiftResult sift(std::span<const RoundRecord> records, const SiftPlan& plan);

struct ProtocolReport {
  std::uint64_t sifted_key_length = 0;
  double qber = 0.0;
  // QBER per matched pair, indexed [alice][bob]; NaN for non-key pairs.
  std::array<std::array<double, 3>, 3> qber_by_pair{};
  double s_estimate = 0.0;
  double s_stderr = 0.0;
  std::array<CorrelationResult, 4> chsh_correlations{};
  double discard_fraction = 0.0;
  // Fraction of sifted key bits Eve predicts correctly from lambda alone.
  double eve_agreement = 0.0;
  std::array<std::array<std::uint64_t, 3>, 3> rounds_by_setting_pair{};
  std::uint64_t n_rounds = 0;
  std::uint64_t n_chsh = 0;
  std::uint64_t n_other_pairs = 0;
  std::uint64_t n_non_coincident = 0;
};

/// Generate one record per round (parallel; independent of worker count).
std::vector<RoundRecord> generate_rounds(const ProtocolConfig& config);

ProtocolReport run_protocol(const ProtocolConfig& config);

}  // namespace mpa::protocol

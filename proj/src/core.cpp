#include "mpa/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpa {

double normalize_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("angle must be finite");
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

AbsorptionOrder::AbsorptionOrder(int order) : order_(order) {
  if (order < 1 || order > kMax) {
    throw std::invalid_argument("absorption order must be in [1, " +
                                std::to_string(kMax) + "], got " +
                                std::to_string(order));
  }
}

AlternatingScheme::AlternatingScheme(AbsorptionOrder n_, Schedule schedule_)
    : n(n_), schedule(schedule_) {
  if (n.value() < 2) {
    throw std::invalid_argument(
        "alternating scheme requires n >= 2; use fixed(1,1) instead");
  }
}

AttackScheme make_fixed(int m_a, int m_b) {
  return FixedScheme{AbsorptionOrder(m_a), AbsorptionOrder(m_b)};
}

AttackScheme make_alternating(int n, Schedule schedule) {
  return AlternatingScheme(AbsorptionOrder(n), schedule);
}

std::string describe(const AttackScheme& scheme) {
  if (const auto* f = std::get_if<FixedScheme>(&scheme)) {
    return "fixed(" + std::to_string(f->m_a.value()) + "," +
           std::to_string(f->m_b.value()) + ")";
  }
  const auto& alt = std::get<AlternatingScheme>(scheme);
  return "alternating(" + std::to_string(alt.n.value()) + "," +
         (alt.schedule == Schedule::kParity ? "parity" : "random") + ")";
}

bool CoincidenceCounts::conserved() const {
  return coincidences() + n_discard_no_a + n_discard_no_b + n_discard_neither +
             n_double ==
         n_trials;
}

void CoincidenceCounts::record(SideOutcome alice, SideOutcome bob) {
  ++n_trials;
  if (alice == SideOutcome::kDoubleClick || bob == SideOutcome::kDoubleClick) {
    ++n_double;
    return;
  }
  const bool a = is_click(alice);
  const bool b = is_click(bob);
  if (!a && !b) {
    ++n_discard_neither;
  } else if (!a) {
    ++n_discard_no_a;
  } else if (!b) {
    ++n_discard_no_b;
  } else {
    const bool a1 = alice == SideOutcome::kClick1;
    const bool b1 = bob == SideOutcome::kClick1;
    if (!a1 && !b1) ++n00;
    else if (!a1) ++n01;
    else if (!b1) ++n10;
    else ++n11;
  }
}

namespace {

std::uint64_t checked_add(std::uint64_t x, std::uint64_t y) {
  if (x > std::numeric_limits<std::uint64_t>::max() - y) {
    throw std::overflow_error("coincidence tally overflow");
  }
  return x + y;
}

}  // namespace

CoincidenceCounts merge_counts(const CoincidenceCounts& a, const CoincidenceCounts& b) {
  CoincidenceCounts out;
  out.n00 = checked_add(a.n00, b.n00);
  out.n01 = checked_add(a.n01, b.n01);
  out.n10 = checked_add(a.n10, b.n10);
  out.n11 = checked_add(a.n11, b.n11);
  out.n_discard_no_a = checked_add(a.n_discard_no_a, b.n_discard_no_a);
  out.n_discard_no_b = checked_add(a.n_discard_no_b, b.n_discard_no_b);
  out.n_discard_neither = checked_add(a.n_discard_neither, b.n_discard_neither);
  out.n_double = checked_add(a.n_double, b.n_double);
  out.n_trials = checked_add(a.n_trials, b.n_trials);
  return out;
}

CorrelationResult correlation_from_counts(const CoincidenceCounts& counts) {
  CorrelationResult r;
  r.n_coincidences = counts.coincidences();
  if (counts.n_trials > 0) {
    r.coincidence_rate =
        static_cast<double>(r.n_coincidences) / static_cast<double>(counts.n_trials);
  }
  if (r.n_coincidences == 0) return r;
  const double n = static_cast<double>(r.n_coincidences);
  const double same = static_cast<double>(counts.n00 + counts.n11);
  const double diff = static_cast<double>(counts.n01 + counts.n10);
  r.e_value = (same - diff) / n;
  r.stderr_e = std::sqrt(std::max(0.0, 1.0 - r.e_value * r.e_value) / n);
  return r;
}

}  // namespace mpa

#pragma once

#include "popledger/rational.hpp"

namespace popledger {

// UN global poverty line, USD per year ($1.90/day).
inline constexpr std::uint64_t kGlobalPovertyLineUsdYear = 694;

// Ballpark yearly basic income if a devaluation-funded distribution ran on
// an economy's M1 money supply: m1 * rate / population. Exact rational in,
// exact rational out; `rate` must lie in (0, 1).
Rational estimate_basic_income(const Rational& m1, const BigInt& population,
                               const Rational& rate);

// Three significant digits, half-even, thousands grouping, at least two
// decimal places: 96.50, 3,850.00, 15.40.
std::string render_estimate(const Rational& income);

struct PovertyGap {
    Rational ratio;   // income / poverty line
    Rational per_day; // income / 365.25
};
PovertyGap poverty_gap(const Rational& income_per_year);

} // namespace popledger

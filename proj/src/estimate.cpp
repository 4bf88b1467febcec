#include "popledger/estimate.hpp"

#include "popledger/value_space.hpp"

namespace popledger {

Rational estimate_basic_income(const Rational& m1, const BigInt& population,
                               const Rational& rate)
{
    check(population > 0, Errc::ZeroPopulation);
    check(m1 >= 0, Errc::InvalidConfig, "money supply cannot be negative");
    check(rate > 0 && rate < 1, Errc::InvalidConfig,
          "devaluation rate must lie in (0, 1)");
    return m1 * rate / Rational(population);
}

std::string render_estimate(const Rational& income)
{
    if (income == 0) {
        return "0.00";
    }
    Rational rounded = round_significant(income, 3);
    unsigned decimals = 2;
    Rational scaled = rounded;
    while (scaled < 1) { // sub-unit values keep three significant digits visible
        scaled *= 10;
        ++decimals;
    }
    return grouped_fixed_str(rounded, decimals);
}

PovertyGap poverty_gap(const Rational& income_per_year)
{
    check(income_per_year >= 0, Errc::InvalidConfig, "income cannot be negative");
    PovertyGap gap;
    gap.ratio = income_per_year / Rational(kGlobalPovertyLineUsdYear);
    gap.per_day = income_per_year * Rational(kDaysPerYearDen, kDaysPerYearNum);
    return gap;
}

} // namespace popledger

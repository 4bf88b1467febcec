#include "popledger/value_space.hpp"

namespace popledger {

ValueSpace new_value_space(std::uint64_t lifespan_years)
{
    check(lifespan_years >= 2, Errc::InvalidConfig, "lifespan must be at least 2 epochs");
    ValueSpace vs;
    vs.size = Poplets{kInitialValueSpaceRaw};
    vs.epoch = 0;
    vs.lifespan = lifespan_years;
    vs.residual = Poplets{};
    vs.expansion_carry = 0;
    vs.property_carry = 0;
    return vs;
}

Poplets expansion_issuance(Poplets pool, std::uint64_t lifespan, std::uint64_t& carry)
{
    check(lifespan >= 2, Errc::InvalidConfig, "lifespan must be at least 2 epochs");
    std::uint64_t divisor = lifespan - 1;
    Poplets raw_pool = pool + Poplets{carry};
    auto [issuance, remainder] = raw_pool.divmod(divisor);
    carry = static_cast<std::uint64_t>(remainder.raw());
    return issuance;
}

Poplets expand_epoch(ValueSpace& vs)
{
    Poplets issuance = expansion_issuance(vs.size, vs.lifespan, vs.expansion_carry);
    vs.size += issuance;
    ++vs.epoch;
    return issuance;
}

ConversionRate conversion_rate(Poplets last_issuance, std::uint64_t participants,
                               std::uint64_t epoch)
{
    check(participants > 0, Errc::NoParticipants, "conversion rate needs participants");
    check(!last_issuance.is_zero(), Errc::NoDistribution, "conversion rate needs an issuance");
    Rational rate(to_bigint(last_issuance) * kDaysPerYearDen,
                  BigInt(participants) * kDaysPerYearNum);
    return ConversionRate{rate, epoch, participants};
}

std::string to_popcoin_display(Poplets amount, const ConversionRate& rate, unsigned decimals)
{
    Rational popcoin = Rational(to_bigint(amount)) / rate.poplets_per_popcoin;
    return fixed_str(popcoin, decimals);
}

} // namespace popledger

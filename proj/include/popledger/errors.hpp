#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace popledger {

// Domain error codes. Every failure the engine can raise maps to exactly
// one of these; the CLI prints the code name as its machine-parsable error
// line.
enum class Errc {
    // configuration / arithmetic
    InvalidConfig,
    Overflow,
    // distribution
    NoParticipants,
    NoDistribution,
    // membership
    InvalidCredential,
    DuplicateEnrollment,
    ReenrollmentAfterDeparture,
    UnknownParticipant,
    // transactions
    UnknownInput,
    DoubleSpend,
    Expired,
    ValueMismatch,
    NotOwner,
    LockedInput,
    ZeroAmount,
    InvalidTransaction,
    InsufficientFunds,
    // property
    ZeroPrice,
    UnknownProperty,
    WithdrawBelowAppraisal,
    OwnerCannotBid,
    BidFloorViolated,
    // persistence
    MalformedSnapshot,
    VersionMismatch,
    // simulator / estimator
    InvalidScenario,
    ZeroPopulation,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
public:
    explicit Error(Errc code, std::string_view detail = {});
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, std::string_view detail = {});

inline void check(bool ok, Errc code, std::string_view detail = {})
{
    if (!ok) {
        fail(code, detail);
    }
}

} // namespace popledger

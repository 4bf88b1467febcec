#include "popledger/errors.hpp"

namespace popledger {

const char* to_string(Errc code)
{
    switch (code) {
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::Overflow: return "Overflow";
    case Errc::NoParticipants: return "NoParticipants";
    case Errc::NoDistribution: return "NoDistribution";
    case Errc::InvalidCredential: return "InvalidCredential";
    case Errc::DuplicateEnrollment: return "DuplicateEnrollment";
    case Errc::ReenrollmentAfterDeparture: return "ReenrollmentAfterDeparture";
    case Errc::UnknownParticipant: return "UnknownParticipant";
    case Errc::UnknownInput: return "UnknownInput";
    case Errc::DoubleSpend: return "DoubleSpend";
    case Errc::Expired: return "Expired";
    case Errc::ValueMismatch: return "ValueMismatch";
    case Errc::NotOwner: return "NotOwner";
    case Errc::LockedInput: return "LockedInput";
    case Errc::ZeroAmount: return "ZeroAmount";
    case Errc::InvalidTransaction: return "InvalidTransaction";
    case Errc::InsufficientFunds: return "InsufficientFunds";
    case Errc::ZeroPrice: return "ZeroPrice";
    case Errc::UnknownProperty: return "UnknownProperty";
    case Errc::WithdrawBelowAppraisal: return "WithdrawBelowAppraisal";
    case Errc::OwnerCannotBid: return "OwnerCannotBid";
    case Errc::BidFloorViolated: return "BidFloorViolated";
    case Errc::MalformedSnapshot: return "MalformedSnapshot";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::InvalidScenario: return "InvalidScenario";
    case Errc::ZeroPopulation: return "ZeroPopulation";
    }
    return "UnknownError";
}

namespace {

std::string error_message(Errc code, std::string_view detail)
{
    std::string msg = to_string(code);
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}

} // namespace

Error::Error(Errc code, std::string_view detail)
    : std::runtime_error(error_message(code, detail)), code_(code)
{
}

void fail(Errc code, std::string_view detail)
{
    throw Error(code, detail);
}

} // namespace popledger

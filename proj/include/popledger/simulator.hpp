#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "popledger/ledger.hpp"
#include "popledger/policy.hpp"
#include "popledger/rational.hpp"

namespace popledger {

// A scripted multi-epoch run: one target population per epoch, enrollment
// and departure deltas are derived. No agent behavior, no price formation;
// every reported metric is a mechanical ledger quantity.
struct Scenario {
    std::string name;
    PolicyKind policy{Policy::democratic, 50};
    std::uint64_t epochs = 0;
    std::vector<std::uint64_t> population; // one entry per epoch, all > 0
    std::uint64_t world_population = 0;
    std::optional<Rational> anchor; // external M1-equivalent for purchasing-power readouts
};

struct EpochReport {
    std::uint64_t epoch = 0; // scenario step, 0-based
    Poplets value_space_size;
    Poplets issuance;
    std::uint64_t participants = 0;
    Poplets per_participant;
    Rational popcoin_rate;
    Rational reward_factor;
    Rational share_per_participant;
};

// Plain `key value` lines; `population` takes one value per epoch.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

std::vector<EpochReport> run_scenario(const Scenario& scenario);

inline constexpr const char* kReportCsvHeader =
    "epoch,value_space,issuance,participants,per_participant,popcoin_rate,"
    "reward_factor,share_per_participant";

// Byte-deterministic: integers in decimal, rationals as reduced p/q.
std::string reports_to_csv(const std::vector<EpochReport>& reports);

} // namespace popledger

#include "popledger/simulator.hpp"

#include <fstream>
#include <sstream>

namespace popledger {

namespace {

std::optional<std::uint64_t> parse_count(std::string_view text)
{
    auto value = parse_number(text);
    if (!value || denominator(*value) != 1 || numerator(*value) < 0
        || numerator(*value) > BigInt(~std::uint64_t{0})) {
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(numerator(*value));
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    Scenario scenario;
    bool have_name = false;
    bool have_policy = false;
    bool have_lifespan = false;
    bool have_epochs = false;
    bool have_world = false;
    std::uint64_t lifespan = 0;
    Policy policy = Policy::democratic;

    std::istringstream stream{std::string(text)};
    std::string word_line;
    while (std::getline(stream, word_line)) {
        if (word_line.empty() || word_line.front() == '#') {
            continue;
        }
        std::istringstream fields(word_line);
        std::string key;
        fields >> key;
        if (key == "name") {
            fields >> scenario.name;
            have_name = !scenario.name.empty();
        } else if (key == "policy") {
            std::string value;
            fields >> value;
            if (value == "democratic") {
                policy = Policy::democratic;
            } else if (value == "expiring") {
                policy = Policy::expiring;
            } else {
                fail(Errc::InvalidScenario, "unknown policy " + value);
            }
            have_policy = true;
        } else if (key == "lifespan") {
            std::string value;
            fields >> value;
            auto parsed = parse_count(value);
            check(parsed.has_value() && *parsed >= 2, Errc::InvalidScenario, "bad lifespan");
            lifespan = *parsed;
            have_lifespan = true;
        } else if (key == "epochs") {
            std::string value;
            fields >> value;
            auto parsed = parse_count(value);
            check(parsed.has_value() && *parsed > 0, Errc::InvalidScenario, "bad epochs");
            scenario.epochs = *parsed;
            have_epochs = true;
        } else if (key == "population") {
            std::string value;
            while (fields >> value) {
                auto parsed = parse_count(value);
                check(parsed.has_value() && *parsed > 0, Errc::InvalidScenario,
                      "populations must be positive");
                scenario.population.push_back(*parsed);
            }
        } else if (key == "world_population") {
            std::string value;
            fields >> value;
            auto parsed = parse_count(value);
            check(parsed.has_value() && *parsed > 0, Errc::InvalidScenario,
                  "bad world population");
            scenario.world_population = *parsed;
            have_world = true;
        } else if (key == "anchor") {
            std::string value;
            fields >> value;
            auto parsed = parse_number(value);
            check(parsed.has_value() && *parsed > 0, Errc::InvalidScenario, "bad anchor");
            scenario.anchor = *parsed;
        } else {
            fail(Errc::InvalidScenario, "unknown scenario key " + key);
        }
    }

    check(have_name, Errc::InvalidScenario, "scenario needs a name");
    check(have_policy && have_lifespan, Errc::InvalidScenario, "scenario needs a policy");
    check(have_epochs, Errc::InvalidScenario, "scenario needs an epoch count");
    check(have_world, Errc::InvalidScenario, "scenario needs a world population");
    check(scenario.population.size() == scenario.epochs, Errc::InvalidScenario,
          "population list must have one entry per epoch");
    scenario.policy = PolicyKind{policy, lifespan};
    return scenario;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    check(file.good(), Errc::InvalidScenario, "cannot read " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_scenario(buffer.str());
}

std::vector<EpochReport> run_scenario(const Scenario& scenario)
{
    check(scenario.epochs > 0 && scenario.population.size() == scenario.epochs,
          Errc::InvalidScenario, "population list must have one entry per epoch");

    Ledger::Config config;
    config.policy = scenario.policy;
    Ledger ledger(config);

    // Synthetic credentials: consecutive counters. Departures take the most
    // recent joiners first; a departed identity never comes back, so a dip
    // followed by growth enrolls fresh credentials.
    std::uint64_t next_credential = 0;
    std::vector<ParticipantId> enrolled;

    std::vector<EpochReport> reports;
    reports.reserve(scenario.epochs);
    for (std::uint64_t step = 0; step < scenario.epochs; ++step) {
        std::uint64_t target = scenario.population[step];
        while (enrolled.size() < target) {
            std::array<std::uint8_t, 8> credential{};
            for (int i = 0; i < 8; ++i) {
                credential[i] = static_cast<std::uint8_t>(next_credential >> (56 - 8 * i));
            }
            ++next_credential;
            enrolled.push_back(ledger.enroll(credential));
        }
        while (enrolled.size() > target) {
            ledger.depart(enrolled.back());
            enrolled.pop_back();
        }

        DistributionEvent event = ledger.advance_epoch();
        EpochReport report;
        report.epoch = step;
        report.value_space_size = ledger.value_space().size;
        report.issuance = event.issuance;
        report.participants = event.participants;
        report.per_participant = event.per_participant;
        report.popcoin_rate =
            conversion_rate(event.issuance, event.participants, event.epoch)
                .poplets_per_popcoin;
        report.reward_factor =
            adoption_reward_factor(scenario.world_population, event.participants);
        report.share_per_participant = Rational(to_bigint(event.per_participant),
                                                to_bigint(ledger.value_space().size));
        reports.push_back(std::move(report));
    }
    return reports;
}

std::string reports_to_csv(const std::vector<EpochReport>& reports)
{
    std::string out = kReportCsvHeader;
    out.push_back('\n');
    for (const auto& r : reports) {
        out += std::to_string(r.epoch);
        out.push_back(',');
        out += r.value_space_size.str();
        out.push_back(',');
        out += r.issuance.str();
        out.push_back(',');
        out += std::to_string(r.participants);
        out.push_back(',');
        out += r.per_participant.str();
        out.push_back(',');
        out += ratio_str(r.popcoin_rate);
        out.push_back(',');
        out += ratio_str(r.reward_factor);
        out.push_back(',');
        out += ratio_str(r.share_per_participant);
        out.push_back('\n');
    }
    return out;
}

} // namespace popledger

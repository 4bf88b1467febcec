#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "popledger/estimate.hpp"
#include "popledger/ledger.hpp"
#include "popledger/simulator.hpp"

namespace {

using namespace popledger;
using nlohmann::json;

struct GlobalOptions {
    std::string snapshot_path = "popledger.snapshot";
    std::string format = "human";

    bool machine() const { return format == "json-lines"; }
};

std::string read_file(const std::string& path, Errc on_missing)
{
    std::ifstream file(path, std::ios::binary);
    check(file.good(), on_missing, "cannot read " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view contents)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    check(file.good(), Errc::MalformedSnapshot, "cannot write " + path);
    file << contents;
    file.flush();
    check(file.good(), Errc::MalformedSnapshot, "cannot write " + path);
}

Ledger load_ledger(const GlobalOptions& opts)
{
    return Ledger::restore(read_file(opts.snapshot_path, Errc::MalformedSnapshot));
}

void save_ledger(const GlobalOptions& opts, const Ledger& ledger)
{
    write_file(opts.snapshot_path, ledger.snapshot());
}

Poplets parse_amount(const std::string& text)
{
    auto value = parse_number(text);
    check(value.has_value(), Errc::InvalidConfig, "malformed amount " + text);
    check(denominator(*value) == 1 && numerator(*value) >= 0, Errc::InvalidConfig,
          "amounts are whole non-negative Poplet counts");
    return to_poplets(numerator(*value));
}

std::uint64_t parse_count_arg(const std::string& text, std::string_view what)
{
    auto value = parse_number(text);
    check(value.has_value() && denominator(*value) == 1 && numerator(*value) >= 0
              && numerator(*value) <= BigInt(~std::uint64_t{0}),
          Errc::InvalidConfig, std::string("malformed ") + std::string(what));
    return static_cast<std::uint64_t>(numerator(*value));
}

ParticipantId parse_id(const std::string& hex)
{
    auto id = ParticipantId::parse(hex);
    check(id.has_value(), Errc::UnknownParticipant, "ids are 64 hex digits");
    return *id;
}

Hash32 parse_hash(const std::string& hex)
{
    auto h = hash_from_hex(hex);
    check(h.has_value(), Errc::UnknownProperty, "ids are 64 hex digits");
    return *h;
}

void print_distribution(const GlobalOptions& opts, const Ledger& ledger,
                        const DistributionEvent& event)
{
    if (opts.machine()) {
        json line{{"epoch", event.epoch},
                  {"issuance", event.issuance.str()},
                  {"participants", event.participants},
                  {"per_participant", event.per_participant.str()},
                  {"residual", event.residual_carried.str()},
                  {"value_space", ledger.value_space().size.str()}};
        std::cout << line.dump() << "\n";
    } else {
        std::cout << "epoch " << event.epoch << ": issuance " << event.issuance.str()
                  << ", participants " << event.participants << ", per-participant "
                  << event.per_participant.str() << ", residual "
                  << event.residual_carried.str() << "\n";
    }
}

int run_simulations(const GlobalOptions& opts, const std::vector<std::string>& paths,
                    const std::string& out_dir)
{
    std::vector<std::string> files;
    for (const auto& path : paths) {
        if (std::filesystem::is_directory(path)) {
            for (const auto& entry : std::filesystem::directory_iterator(path)) {
                if (entry.path().extension() == ".txt") {
                    files.push_back(entry.path().string());
                }
            }
        } else {
            files.push_back(path);
        }
    }
    std::sort(files.begin(), files.end());
    check(!files.empty(), Errc::InvalidScenario, "no scenario files given");

    struct Outcome {
        std::string csv_path;
        std::size_t epochs;
        std::string anchor_note;
    };
    auto run_one = [&out_dir](const std::string& path) -> Outcome {
        Scenario scenario = load_scenario(path);
        auto reports = run_scenario(scenario);
        std::string csv_path =
            (std::filesystem::path(out_dir) / (scenario.name + ".csv")).string();
        write_file(csv_path, reports_to_csv(reports));
        std::string note;
        if (scenario.anchor && !reports.empty()) {
            // income in anchor-currency units: share of space times the anchor
            Rational income = reports.back().share_per_participant * *scenario.anchor;
            note = " anchor-income " + decimal_str(income, 12);
        }
        return Outcome{csv_path, reports.size(), note};
    };

    std::vector<std::future<Outcome>> jobs;
    jobs.reserve(files.size());
    for (const auto& file : files) {
        jobs.push_back(files.size() > 1
                           ? std::async(std::launch::async, run_one, file)
                           : std::async(std::launch::deferred, run_one, file));
    }
    for (auto& job : jobs) {
        Outcome outcome = job.get();
        if (opts.machine()) {
            json line{{"csv", outcome.csv_path}, {"epochs", outcome.epochs}};
            std::cout << line.dump() << "\n";
        } else {
            std::cout << "wrote " << outcome.csv_path << " (" << outcome.epochs
                      << " epochs)" << outcome.anchor_note << "\n";
        }
    }
    return 0;
}

int dispatch(int argc, char** argv)
{
    GlobalOptions opts;
    CLI::App app{"popledger: democratic-money ledger engine and economic simulator"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.add_option("--snapshot", opts.snapshot_path, "ledger snapshot file")
        ->envname("POPLEDGER_SNAPSHOT")
        ->capture_default_str();
    app.add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"human", "json-lines"}))
        ->capture_default_str();

    // init
    auto* init = app.add_subcommand("init", "create a fresh ledger snapshot");
    std::string init_policy = "democratic";
    std::uint64_t init_lifespan = 50;
    std::uint64_t init_property_lifespan = 0;
    std::string init_batch;
    init->add_option("--policy", init_policy, "monetary policy")
        ->check(CLI::IsMember({"democratic", "expiring"}))
        ->capture_default_str();
    init->add_option("--lifespan", init_lifespan, "nominal currency lifespan in epochs")
        ->capture_default_str();
    init->add_option("--property-lifespan", init_property_lifespan,
                     "separate, slower lifespan for escrowed property value");
    init->add_option("--batch", init_batch,
                     "expiring policy: Poplets minted per epoch (default 2^64/L)");

    // enroll / depart
    auto* enroll = app.add_subcommand("enroll", "enroll a participant by credential");
    std::string enroll_credential;
    enroll->add_option("--credential", enroll_credential, "attestation credential, hex")
        ->required();
    auto* depart = app.add_subcommand("depart", "remove a participant from distributions");
    std::string depart_id;
    depart->add_option("--id", depart_id, "participant id")->required();

    // pay
    auto* pay = app.add_subcommand("pay", "transfer Poplets between owners");
    std::string pay_from, pay_to, pay_amount;
    pay->add_option("--from", pay_from, "sender id")->required();
    pay->add_option("--to", pay_to, "recipient id")->required();
    pay->add_option("--amount", pay_amount, "Poplets to transfer")->required();

    // advance-epoch
    auto* advance = app.add_subcommand("advance-epoch", "run the yearly devaluation and distribution");
    std::uint64_t advance_epochs = 1;
    advance->add_option("--epochs", advance_epochs, "number of epochs to advance")
        ->capture_default_str();

    // balance
    auto* balance = app.add_subcommand("balance", "spendable and escrowed holdings of an owner");
    std::string balance_id;
    balance->add_option("--id", balance_id, "owner id")->required();

    // convert
    auto* convert = app.add_subcommand("convert", "render Poplets in Popcoin at the current rate");
    std::string convert_amount;
    unsigned convert_decimals = 2;
    convert->add_option("--amount", convert_amount, "Poplets")->required();
    convert->add_option("--decimals", convert_decimals, "decimal places")
        ->capture_default_str();

    // property family
    auto* property = app.add_subcommand("property", "property registry operations");
    property->require_subcommand(1);
    auto* preg = property->add_subcommand("register", "register a property purchase (buyer needs 2x the price)");
    std::string preg_buyer, preg_seller, preg_price;
    preg->add_option("--buyer", preg_buyer)->required();
    preg->add_option("--seller", preg_seller)->required();
    preg->add_option("--price", preg_price)->required();
    auto* ptrans = property->add_subcommand("transfer", "resell a property to a new buyer");
    std::string ptrans_id, ptrans_seller, ptrans_buyer, ptrans_price;
    ptrans->add_option("--id", ptrans_id)->required();
    ptrans->add_option("--seller", ptrans_seller)->required();
    ptrans->add_option("--buyer", ptrans_buyer)->required();
    ptrans->add_option("--price", ptrans_price)->required();
    auto* pbid = property->add_subcommand("bid", "place or replace a standing bid");
    std::string pbid_id, pbid_bidder, pbid_amount;
    pbid->add_option("--id", pbid_id)->required();
    pbid->add_option("--bidder", pbid_bidder)->required();
    pbid->add_option("--amount", pbid_amount)->required();
    auto* pappraise = property->add_subcommand("appraise", "submit a re-appraisal (bid floor still applies)");
    std::string pappraise_id, pappraise_value;
    pappraise->add_option("--id", pappraise_id)->required();
    pappraise->add_option("--value", pappraise_value)->required();
    auto* padjust = property->add_subcommand("escrow-adjust", "top up (positive) or withdraw (negative) escrow");
    std::string padjust_id, padjust_owner, padjust_delta;
    padjust->add_option("--id", padjust_id)->required();
    padjust->add_option("--owner", padjust_owner)->required();
    padjust->add_option("--delta", padjust_delta, "signed Poplets")->required();
    auto* pshow = property->add_subcommand("show", "list property records and standing bids");
    std::string pshow_id;
    pshow->add_option("--id", pshow_id, "limit to one property");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run scenario files and write CSV metrics");
    std::vector<std::string> simulate_paths;
    std::string simulate_out = ".";
    simulate->add_option("paths", simulate_paths, "scenario files or directories")
        ->required();
    simulate->add_option("--out", simulate_out, "output directory")->capture_default_str();

    // estimate
    auto* estimate = app.add_subcommand("estimate", "ballpark yearly basic income from an M1 money supply");
    std::string est_m1, est_population, est_rate;
    bool est_poverty = false;
    estimate->add_option("--m1", est_m1, "M1 money supply (e-notation ok)")->required();
    estimate->add_option("--population", est_population, "persons")->required();
    estimate->add_option("--rate", est_rate, "devaluation rate, e.g. 0.02")->required();
    estimate->add_flag("--poverty", est_poverty, "also print the global poverty-line comparison");

    // snapshot / restore
    auto* snapshot = app.add_subcommand("snapshot", "print or export the canonical snapshot");
    std::string snapshot_out;
    snapshot->add_option("--out", snapshot_out, "write to file instead of stdout");
    auto* restore = app.add_subcommand("restore", "validate a snapshot file and adopt it");
    std::string restore_path;
    restore->add_option("path", restore_path, "snapshot file to adopt")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (init->parsed()) {
            Ledger::Config config;
            config.policy = PolicyKind::make(
                init_policy == "democratic" ? Policy::democratic : Policy::expiring,
                init_lifespan);
            if (init_property_lifespan != 0) {
                config.property_lifespan = init_property_lifespan;
            }
            if (!init_batch.empty()) {
                config.batch = parse_amount(init_batch);
            }
            Ledger ledger(config);
            save_ledger(opts, ledger);
            std::cout << "initialized " << init_policy << " ledger, lifespan "
                      << init_lifespan << ", snapshot " << opts.snapshot_path << "\n";
        } else if (enroll->parsed()) {
            Ledger ledger = load_ledger(opts);
            ParticipantId id = ledger.enroll_hex(enroll_credential);
            save_ledger(opts, ledger);
            std::cout << id.str() << "\n";
        } else if (depart->parsed()) {
            Ledger ledger = load_ledger(opts);
            ledger.depart(parse_id(depart_id));
            save_ledger(opts, ledger);
            std::cout << "departed " << depart_id << "\n";
        } else if (pay->parsed()) {
            Ledger ledger = load_ledger(opts);
            Hash32 txid = ledger.pay(parse_id(pay_from), parse_id(pay_to),
                                     parse_amount(pay_amount));
            save_ledger(opts, ledger);
            std::cout << to_hex(txid) << "\n";
        } else if (advance->parsed()) {
            Ledger ledger = load_ledger(opts);
            check(advance_epochs > 0, Errc::InvalidConfig, "need at least one epoch");
            for (std::uint64_t i = 0; i < advance_epochs; ++i) {
                print_distribution(opts, ledger, ledger.advance_epoch());
            }
            save_ledger(opts, ledger);
        } else if (balance->parsed()) {
            Ledger ledger = load_ledger(opts);
            auto b = ledger.balance(parse_id(balance_id));
            auto rate = ledger.rate();
            if (opts.machine()) {
                json line{{"spendable", b.spendable.str()}, {"escrowed", b.escrowed.str()}};
                if (rate) {
                    line["popcoin"] = to_popcoin_display(b.spendable, *rate, 2);
                }
                std::cout << line.dump() << "\n";
            } else {
                std::cout << "spendable " << b.spendable.str() << "\n";
                std::cout << "escrowed " << b.escrowed.str() << "\n";
                if (rate) {
                    std::cout << "popcoin " << to_popcoin_display(b.spendable, *rate, 2)
                              << "\n";
                }
            }
        } else if (convert->parsed()) {
            Ledger ledger = load_ledger(opts);
            auto rate = ledger.rate();
            check(rate.has_value(), Errc::NoDistribution,
                  "no distribution has happened yet");
            std::cout << to_popcoin_display(parse_amount(convert_amount), *rate,
                                            convert_decimals)
                      << "\n";
        } else if (property->parsed()) {
            Ledger ledger = load_ledger(opts);
            if (preg->parsed()) {
                Hash32 id = ledger.register_property(parse_id(preg_buyer),
                                                     parse_id(preg_seller),
                                                     parse_amount(preg_price));
                save_ledger(opts, ledger);
                std::cout << to_hex(id) << "\n";
            } else if (ptrans->parsed()) {
                ledger.transfer_property(parse_hash(ptrans_id), parse_id(ptrans_seller),
                                         parse_id(ptrans_buyer),
                                         parse_amount(ptrans_price));
                save_ledger(opts, ledger);
                std::cout << "transferred " << ptrans_id << "\n";
            } else if (pbid->parsed()) {
                ledger.place_bid(parse_hash(pbid_id), parse_id(pbid_bidder),
                                 parse_amount(pbid_amount));
                save_ledger(opts, ledger);
                std::cout << "bid placed\n";
            } else if (pappraise->parsed()) {
                ledger.appraise(parse_hash(pappraise_id), parse_amount(pappraise_value));
                save_ledger(opts, ledger);
                const auto& record = ledger.properties().records.at(parse_hash(pappraise_id));
                std::cout << "appraised " << record.appraised_value.str() << "\n";
            } else if (padjust->parsed()) {
                bool withdraw = !padjust_delta.empty() && padjust_delta.front() == '-';
                std::string magnitude =
                    withdraw ? padjust_delta.substr(1) : padjust_delta;
                ledger.adjust_escrow(parse_hash(padjust_id), parse_id(padjust_owner),
                                     parse_amount(magnitude), withdraw);
                save_ledger(opts, ledger);
                std::cout << "escrow adjusted\n";
            } else if (pshow->parsed()) {
                for (const auto& [id, record] : ledger.properties().records) {
                    if (!pshow_id.empty() && to_hex(id) != pshow_id) {
                        continue;
                    }
                    if (opts.machine()) {
                        json line{{"id", to_hex(id)},
                                  {"owner", record.owner.str()},
                                  {"appraised", record.appraised_value.str()},
                                  {"escrow", record.escrow.str()},
                                  {"tenure", record.tenure},
                                  {"registered_epoch", record.registered_epoch}};
                        std::cout << line.dump() << "\n";
                    } else {
                        std::cout << "property " << to_hex(id) << " owner "
                                  << record.owner.str() << " appraised "
                                  << record.appraised_value.str() << " escrow "
                                  << record.escrow.str() << " tenure " << record.tenure
                                  << "\n";
                    }
                    auto bids = ledger.properties().bids.find(id);
                    if (bids != ledger.properties().bids.end()) {
                        for (const auto& [bidder, bid] : bids->second) {
                            if (opts.machine()) {
                                json line{{"property", to_hex(id)},
                                          {"bidder", bidder.str()},
                                          {"amount", bid.amount.str()},
                                          {"epoch", bid.epoch_placed}};
                                std::cout << line.dump() << "\n";
                            } else {
                                std::cout << "  bid " << bid.amount.str() << " from "
                                          << bidder.str() << "\n";
                            }
                        }
                    }
                }
            }
        } else if (simulate->parsed()) {
            return run_simulations(opts, simulate_paths, simulate_out);
        } else if (estimate->parsed()) {
            auto m1 = parse_number(est_m1);
            auto rate = parse_number(est_rate);
            check(m1.has_value(), Errc::InvalidConfig, "malformed --m1");
            check(rate.has_value(), Errc::InvalidConfig, "malformed --rate");
            auto population = parse_number(est_population);
            check(population.has_value() && denominator(*population) == 1,
                  Errc::InvalidConfig, "malformed --population");
            Rational income =
                estimate_basic_income(*m1, numerator(*population), *rate);
            if (opts.machine()) {
                json line{{"income_per_year", render_estimate(income)},
                          {"income_exact", ratio_str(income)}};
                if (est_poverty) {
                    auto gap = poverty_gap(income);
                    line["poverty_ratio"] = decimal_str(gap.ratio, 3);
                    line["per_day"] = decimal_str(gap.per_day, 3);
                }
                std::cout << line.dump() << "\n";
            } else {
                std::cout << render_estimate(income) << "\n";
                if (est_poverty) {
                    auto gap = poverty_gap(income);
                    std::cout << "poverty_ratio " << decimal_str(gap.ratio, 3) << "\n";
                    std::cout << "per_day " << decimal_str(gap.per_day, 3) << "\n";
                }
            }
        } else if (snapshot->parsed()) {
            Ledger ledger = load_ledger(opts);
            if (snapshot_out.empty()) {
                std::cout << ledger.snapshot();
            } else {
                write_file(snapshot_out, ledger.snapshot());
                std::cout << "wrote " << snapshot_out << "\n";
            }
        } else if (restore->parsed()) {
            Ledger ledger = Ledger::restore(read_file(restore_path, Errc::MalformedSnapshot));
            save_ledger(opts, ledger);
            std::cout << "restored " << restore_path << " to " << opts.snapshot_path
                      << "\n";
        }
    } catch (const Error& e) {
        // first token after "error: " is always the bare code
        std::cerr << "error: " << to_string(e.code());
        std::string prefix = std::string(to_string(e.code())) + ": ";
        std::string_view what = e.what();
        if (what.size() > prefix.size() && what.substr(0, prefix.size()) == prefix) {
            std::cerr << " " << what.substr(prefix.size());
        }
        std::cerr << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    return dispatch(argc, argv);
}

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "popledger/ledger.hpp"

namespace popledger {

namespace {

constexpr std::string_view kSnapshotVersion = "popledger-v1";

std::optional<std::uint64_t> parse_u64(std::string_view text)
{
    if (text.empty() || text.size() > 20
        || text.find_first_not_of("0123456789") != std::string_view::npos) {
        return std::nullopt;
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

// Whitespace-separated fields of one line; no empty fields.
std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t next = line.find(' ', pos);
        if (next == std::string_view::npos) {
            next = line.size();
        }
        if (next > pos) {
            fields.push_back(line.substr(pos, next - pos));
        }
        pos = next + 1;
    }
    return fields;
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::optional<std::string_view> next()
    {
        if (pos_ >= text_.size()) {
            return std::nullopt;
        }
        std::size_t end = text_.find('\n', pos_);
        check(end != std::string_view::npos, Errc::MalformedSnapshot,
              "missing final newline");
        std::string_view line = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        return line;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

struct SnapshotCodec {
    static std::string encode(const Ledger& ledger)
    {
        const ValueSpace& vs = ledger.vs_;
        std::string out;
        out.reserve(1024 + ledger.utxos_.size() * 200);
        auto line = [&out](std::initializer_list<std::string> fields) {
            bool first = true;
            for (const auto& f : fields) {
                if (!first) {
                    out.push_back(' ');
                }
                out += f;
                first = false;
            }
            out.push_back('\n');
        };

        line({std::string(kSnapshotVersion)});

        line({"[valuespace]"});
        if (ledger.config_.policy.kind == Policy::expiring) {
            line({"batch", ledger.batch_.str()});
        }
        line({"epoch", std::to_string(vs.epoch)});
        line({"expansion_carry", std::to_string(vs.expansion_carry)});
        line({"expired_total", ledger.expired_total_.str()});
        line({"lifespan", std::to_string(vs.lifespan)});
        line({"policy", ledger.config_.policy.kind == Policy::democratic ? "democratic"
                                                                         : "expiring"});
        if (ledger.config_.property_lifespan) {
            line({"property_carry", std::to_string(vs.property_carry)});
            line({"property_lifespan", std::to_string(*ledger.config_.property_lifespan)});
        }
        line({"residual", vs.residual.str()});
        line({"size", vs.size.str()});

        line({"[registry]"});
        for (const auto& [id, epoch] : ledger.registry_.active()) {
            line({"active", id.str(), std::to_string(epoch)});
        }
        for (const auto& [id, epoch] : ledger.registry_.departed()) {
            line({"departed", id.str(), std::to_string(epoch)});
        }

        line({"[utxos]"});
        for (const auto& [id, u] : ledger.utxos_) {
            line({"utxo", to_hex(id), u.owner.str(), u.amount.str(),
                  std::to_string(u.mint_epoch),
                  u.expiry ? std::to_string(*u.expiry) : "-",
                  u.lock ? to_hex(*u.lock) : "-"});
        }

        line({"[properties]"});
        for (const auto& [id, record] : ledger.book_.records) {
            line({"prop", to_hex(id), record.owner.str(), record.appraised_value.str(),
                  record.escrow.str(), std::to_string(record.tenure),
                  std::to_string(record.registered_epoch)});
        }
        for (const auto& [prop, bids] : ledger.book_.bids) {
            for (const auto& [bidder, bid] : bids) {
                line({"bid", to_hex(prop), bidder.str(), bid.amount.str(),
                      std::to_string(bid.epoch_placed)});
            }
        }

        line({"[log]"});
        for (const auto& event : ledger.log_) {
            line({"dist", std::to_string(event.epoch), event.issuance.str(),
                  event.per_participant.str(), std::to_string(event.participants),
                  event.residual_carried.str()});
        }
        return out;
    }

    static Ledger decode(std::string_view bytes)
    {
        LineReader reader(bytes);
        auto header = reader.next();
        check(header.has_value(), Errc::MalformedSnapshot, "empty snapshot");
        if (*header != kSnapshotVersion) {
            if (header->starts_with("popledger-")) {
                fail(Errc::VersionMismatch, std::string(*header));
            }
            fail(Errc::MalformedSnapshot, "missing version header");
        }

        Ledger ledger;
        auto section = reader.next();
        check(section == "[valuespace]", Errc::MalformedSnapshot, "expected [valuespace]");

        // valuespace: sorted key/value pairs
        std::optional<Poplets> batch;
        std::optional<std::uint64_t> epoch;
        std::optional<std::uint64_t> expansion_carry;
        std::optional<Poplets> expired_total;
        std::optional<std::uint64_t> lifespan;
        std::optional<Policy> policy;
        std::optional<std::uint64_t> property_carry;
        std::optional<std::uint64_t> property_lifespan;
        std::optional<Poplets> residual;
        std::optional<Poplets> size;

        std::optional<std::string_view> pending;
        std::string last_key;
        while ((pending = reader.next())) {
            if (pending->starts_with('[')) {
                break;
            }
            auto fields = split_fields(*pending);
            check(fields.size() == 2, Errc::MalformedSnapshot, "bad valuespace line");
            std::string key(fields[0]);
            check(last_key.empty() || last_key < key, Errc::MalformedSnapshot,
                  "valuespace keys out of order");
            last_key = key;
            std::string_view value = fields[1];
            if (key == "batch") {
                batch = Poplets::parse(value);
                check(batch.has_value(), Errc::MalformedSnapshot, "bad batch");
            } else if (key == "epoch") {
                epoch = parse_u64(value);
                check(epoch.has_value(), Errc::MalformedSnapshot, "bad epoch");
            } else if (key == "expansion_carry") {
                expansion_carry = parse_u64(value);
                check(expansion_carry.has_value(), Errc::MalformedSnapshot, "bad carry");
            } else if (key == "expired_total") {
                expired_total = Poplets::parse(value);
                check(expired_total.has_value(), Errc::MalformedSnapshot, "bad expired_total");
            } else if (key == "lifespan") {
                lifespan = parse_u64(value);
                check(lifespan.has_value() && *lifespan >= 2, Errc::MalformedSnapshot,
                      "bad lifespan");
            } else if (key == "policy") {
                check(value == "democratic" || value == "expiring", Errc::MalformedSnapshot,
                      "bad policy");
                policy = value == "democratic" ? Policy::democratic : Policy::expiring;
            } else if (key == "property_carry") {
                property_carry = parse_u64(value);
                check(property_carry.has_value(), Errc::MalformedSnapshot, "bad carry");
            } else if (key == "property_lifespan") {
                property_lifespan = parse_u64(value);
                check(property_lifespan.has_value() && *property_lifespan >= 2,
                      Errc::MalformedSnapshot, "bad property lifespan");
            } else if (key == "residual") {
                residual = Poplets::parse(value);
                check(residual.has_value(), Errc::MalformedSnapshot, "bad residual");
            } else if (key == "size") {
                size = Poplets::parse(value);
                check(size.has_value(), Errc::MalformedSnapshot, "bad size");
            } else {
                fail(Errc::MalformedSnapshot, "unknown valuespace key " + key);
            }
        }
        check(epoch && expansion_carry && expired_total && lifespan && policy && residual
                  && size,
              Errc::MalformedSnapshot, "incomplete valuespace section");
        check(batch.has_value() == (*policy == Policy::expiring), Errc::MalformedSnapshot,
              "batch is for the expiring policy");
        check(property_carry.has_value() == property_lifespan.has_value(),
              Errc::MalformedSnapshot, "incomplete dual-rate fields");

        ledger.config_.policy = PolicyKind{*policy, *lifespan};
        ledger.config_.property_lifespan = property_lifespan;
        if (batch) {
            ledger.config_.batch = batch;
            ledger.batch_ = *batch;
        }
        ledger.vs_.size = *size;
        ledger.vs_.epoch = *epoch;
        ledger.vs_.lifespan = *lifespan;
        ledger.vs_.residual = *residual;
        ledger.vs_.expansion_carry = *expansion_carry;
        ledger.vs_.property_carry = property_carry.value_or(0);
        ledger.expired_total_ = *expired_total;

        check(pending == "[registry]", Errc::MalformedSnapshot, "expected [registry]");
        bool in_departed = false;
        std::optional<ParticipantId> last_id;
        while ((pending = reader.next())) {
            if (pending->starts_with('[')) {
                break;
            }
            auto fields = split_fields(*pending);
            check(fields.size() == 3, Errc::MalformedSnapshot, "bad registry line");
            auto id = ParticipantId::parse(fields[1]);
            auto enrolled = parse_u64(fields[2]);
            check(id && enrolled, Errc::MalformedSnapshot, "bad registry entry");
            check(*enrolled <= ledger.vs_.epoch, Errc::MalformedSnapshot,
                  "enrollment after current epoch");
            if (fields[0] == "active") {
                check(!in_departed, Errc::MalformedSnapshot, "registry entries out of order");
                check(!last_id || *last_id < *id, Errc::MalformedSnapshot,
                      "registry ids out of order");
                ledger.registry_.load_active(*id, *enrolled);
            } else if (fields[0] == "departed") {
                if (!in_departed) {
                    in_departed = true;
                    last_id.reset();
                }
                check(!last_id || *last_id < *id, Errc::MalformedSnapshot,
                      "registry ids out of order");
                ledger.registry_.load_departed(*id, *enrolled);
            } else {
                fail(Errc::MalformedSnapshot, "unknown registry tag");
            }
            last_id = *id;
        }

        check(pending == "[utxos]", Errc::MalformedSnapshot, "expected [utxos]");
        std::optional<Hash32> last_utxo;
        while ((pending = reader.next())) {
            if (pending->starts_with('[')) {
                break;
            }
            auto fields = split_fields(*pending);
            check(fields.size() == 7 && fields[0] == "utxo", Errc::MalformedSnapshot,
                  "bad utxo line");
            auto id = hash_from_hex(fields[1]);
            auto owner = ParticipantId::parse(fields[2]);
            auto amount = Poplets::parse(fields[3]);
            auto mint = parse_u64(fields[4]);
            check(id && owner && amount && mint, Errc::MalformedSnapshot, "bad utxo entry");
            check(!amount->is_zero(), Errc::MalformedSnapshot, "zero-amount utxo");
            check(!last_utxo || *last_utxo < *id, Errc::MalformedSnapshot,
                  "utxo ids out of order");
            last_utxo = *id;

            std::optional<std::uint64_t> expiry;
            if (fields[5] != "-") {
                expiry = parse_u64(fields[5]);
                check(expiry.has_value(), Errc::MalformedSnapshot, "bad expiry");
                check(*expiry > ledger.vs_.epoch, Errc::MalformedSnapshot,
                      "expired utxo in snapshot");
            }
            std::optional<Hash32> lock;
            if (fields[6] != "-") {
                lock = hash_from_hex(fields[6]);
                check(lock.has_value(), Errc::MalformedSnapshot, "bad lock");
            }
            ledger.utxos_.emplace(*id, Utxo{*id, *owner, *amount, *mint, expiry, lock});
        }

        check(pending == "[properties]", Errc::MalformedSnapshot, "expected [properties]");
        bool in_bids = false;
        std::optional<Hash32> last_prop;
        std::optional<std::pair<Hash32, ParticipantId>> last_bid;
        while ((pending = reader.next())) {
            if (pending->starts_with('[')) {
                break;
            }
            auto fields = split_fields(*pending);
            if (fields.size() == 7 && fields[0] == "prop") {
                check(!in_bids, Errc::MalformedSnapshot, "property entries out of order");
                auto id = hash_from_hex(fields[1]);
                auto owner = ParticipantId::parse(fields[2]);
                auto appraised = Poplets::parse(fields[3]);
                auto escrow = Poplets::parse(fields[4]);
                auto tenure = parse_u64(fields[5]);
                auto registered = parse_u64(fields[6]);
                check(id && owner && appraised && escrow && tenure && registered,
                      Errc::MalformedSnapshot, "bad property entry");
                check(!appraised->is_zero(), Errc::MalformedSnapshot,
                      "zero appraised value");
                check(!last_prop || *last_prop < *id, Errc::MalformedSnapshot,
                      "property ids out of order");
                last_prop = *id;
                ledger.book_.records.emplace(
                    *id, PropertyRecord{*id, *owner, *appraised, *escrow, *tenure,
                                        *registered});
            } else if (fields.size() == 5 && fields[0] == "bid") {
                in_bids = true;
                auto prop = hash_from_hex(fields[1]);
                auto bidder = ParticipantId::parse(fields[2]);
                auto amount = Poplets::parse(fields[3]);
                auto placed = parse_u64(fields[4]);
                check(prop && bidder && amount && placed, Errc::MalformedSnapshot,
                      "bad bid entry");
                check(!amount->is_zero(), Errc::MalformedSnapshot, "zero bid");
                auto record = ledger.book_.records.find(*prop);
                check(record != ledger.book_.records.end(), Errc::MalformedSnapshot,
                      "bid on unknown property");
                check(record->second.owner != *bidder, Errc::MalformedSnapshot,
                      "owner bid in snapshot");
                std::pair<Hash32, ParticipantId> key{*prop, *bidder};
                check(!last_bid || *last_bid < key, Errc::MalformedSnapshot,
                      "bids out of order");
                last_bid = key;
                ledger.book_.bids[*prop][*bidder] = StandingBid{*bidder, *amount, *placed};
            } else {
                fail(Errc::MalformedSnapshot, "bad properties line");
            }
        }

        check(pending == "[log]", Errc::MalformedSnapshot, "expected [log]");
        std::uint64_t last_epoch = 0;
        while ((pending = reader.next())) {
            auto fields = split_fields(*pending);
            check(fields.size() == 6 && fields[0] == "dist", Errc::MalformedSnapshot,
                  "bad log line");
            auto epoch_field = parse_u64(fields[1]);
            auto issuance = Poplets::parse(fields[2]);
            auto per = Poplets::parse(fields[3]);
            auto participants = parse_u64(fields[4]);
            auto residual_field = Poplets::parse(fields[5]);
            check(epoch_field && issuance && per && participants && residual_field,
                  Errc::MalformedSnapshot, "bad log entry");
            check(*epoch_field > last_epoch, Errc::MalformedSnapshot,
                  "log epochs out of order");
            last_epoch = *epoch_field;
            ledger.log_.push_back(DistributionEvent{*epoch_field, *issuance, *per,
                                                    *participants, *residual_field});
        }

        // cross-checks: escrow totals and lock targets must be consistent
        std::map<Hash32, Poplets> locked_sums;
        for (const auto& [id, u] : ledger.utxos_) {
            if (u.lock) {
                check(ledger.book_.records.contains(*u.lock), Errc::MalformedSnapshot,
                      "lock on unknown property");
                locked_sums[*u.lock] += u.amount;
            }
        }
        for (const auto& [id, record] : ledger.book_.records) {
            Poplets locked = locked_sums.count(id) ? locked_sums[id] : Poplets{};
            check(locked == record.escrow, Errc::MalformedSnapshot,
                  "escrow total does not match locked outputs");
        }
        return ledger;
    }
};

std::string Ledger::snapshot() const
{
    return SnapshotCodec::encode(*this);
}

Ledger Ledger::restore(std::string_view bytes)
{
    return SnapshotCodec::decode(bytes);
}

} // namespace popledger

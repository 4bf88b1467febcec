#include <algorithm>
#include <vector>

#include "popledger/ledger.hpp"

namespace popledger {

namespace {

std::vector<StandingBid> bids_by_rank(const std::map<ParticipantId, StandingBid>& bids)
{
    std::vector<StandingBid> ranked;
    ranked.reserve(bids.size());
    for (const auto& [bidder, bid] : bids) {
        ranked.push_back(bid);
    }
    std::sort(ranked.begin(), ranked.end(), [](const StandingBid& a, const StandingBid& b) {
        if (a.amount != b.amount) {
            return a.amount > b.amount;
        }
        return a.bidder < b.bidder;
    });
    return ranked;
}

} // namespace

std::optional<Poplets> PropertyBook::second_price(const Hash32& property_id) const
{
    auto it = bids.find(property_id);
    if (it == bids.end() || it->second.size() < 2) {
        return std::nullopt;
    }
    auto ranked = bids_by_rank(it->second);
    return ranked[1].amount;
}

std::optional<Poplets> PropertyBook::best_price(const Hash32& property_id) const
{
    auto it = bids.find(property_id);
    if (it == bids.end() || it->second.empty()) {
        return std::nullopt;
    }
    auto ranked = bids_by_rank(it->second);
    return ranked[0].amount;
}

Hash32 Ledger::register_property(const ParticipantId& buyer, const ParticipantId& seller,
                                 Poplets price)
{
    check(!price.is_zero(), Errc::ZeroPrice);
    // Buying costs P, owning costs another P of escrow.
    auto inputs = collect_spendable(buyer, price * 2);
    Poplets gathered = sum_utxos(inputs);

    HashWriter id_writer;
    id_writer.tag("popledger.property");
    id_writer.hash(inputs.front());
    id_writer.u64(vs_.epoch);
    Hash32 property_id = id_writer.digest();
    check(!book_.records.contains(property_id), Errc::InvalidTransaction,
          "property id collision");

    Transaction tx;
    tx.kind = TxKind::escrow_lock;
    tx.signer = buyer;
    tx.epoch = vs_.epoch;
    tx.inputs = std::move(inputs);
    tx.outputs.push_back(TxOutput{seller, price, std::nullopt});
    tx.outputs.push_back(TxOutput{buyer, price, property_id});
    if (gathered > price * 2) {
        tx.outputs.push_back(TxOutput{buyer, gathered - price * 2, std::nullopt});
    }
    apply_tx(tx);

    PropertyRecord record;
    record.id = property_id;
    record.owner = buyer;
    record.appraised_value = price;
    record.escrow = price;
    record.tenure = 0;
    record.registered_epoch = vs_.epoch;
    book_.records.emplace(property_id, record);
    return property_id;
}

void Ledger::transfer_property(const Hash32& property_id, const ParticipantId& seller,
                               const ParticipantId& buyer, Poplets price)
{
    auto it = book_.records.find(property_id);
    check(it != book_.records.end(), Errc::UnknownProperty, to_hex(property_id));
    PropertyRecord& record = it->second;
    check(record.owner == seller, Errc::NotOwner);
    check(!price.is_zero(), Errc::ZeroPrice);
    if (auto floor = book_.second_price(property_id); floor && price < *floor) {
        fail(Errc::BidFloorViolated,
             "price " + price.str() + " below standing bid floor " + floor->str());
    }

    auto buyer_inputs = collect_spendable(buyer, price * 2);
    Poplets gathered = sum_utxos(buyer_inputs);

    Transaction tx;
    tx.kind = TxKind::escrow_release;
    tx.signer = buyer;
    tx.epoch = vs_.epoch;
    for (const auto& [id, u] : utxos_) {
        if (u.lock == property_id) {
            tx.inputs.push_back(id);
        }
    }
    tx.inputs.insert(tx.inputs.end(), buyer_inputs.begin(), buyer_inputs.end());
    if (!record.escrow.is_zero()) {
        tx.outputs.push_back(TxOutput{seller, record.escrow, std::nullopt});
    }
    tx.outputs.push_back(TxOutput{seller, price, std::nullopt});
    tx.outputs.push_back(TxOutput{buyer, price, property_id});
    if (gathered > price * 2) {
        tx.outputs.push_back(TxOutput{buyer, gathered - price * 2, std::nullopt});
    }
    apply_tx(tx);

    record.owner = buyer;
    record.appraised_value = price;
    record.escrow = price;
    record.tenure = 0;
    book_.bids[property_id].erase(buyer);
    enforce_bid_floor(property_id);
}

void Ledger::adjust_escrow(const Hash32& property_id, const ParticipantId& owner,
                           Poplets amount, bool withdraw)
{
    auto it = book_.records.find(property_id);
    check(it != book_.records.end(), Errc::UnknownProperty, to_hex(property_id));
    PropertyRecord& record = it->second;
    check(record.owner == owner, Errc::NotOwner);
    check(!amount.is_zero(), Errc::ZeroAmount);

    Transaction tx;
    tx.kind = withdraw ? TxKind::escrow_release : TxKind::escrow_lock;
    tx.signer = owner;
    tx.epoch = vs_.epoch;

    if (withdraw) {
        check(record.escrow >= record.appraised_value + amount, Errc::WithdrawBelowAppraisal,
              "escrow may not drop below the appraised value");
        for (const auto& [id, u] : utxos_) {
            if (u.lock == property_id) {
                tx.inputs.push_back(id);
            }
        }
        tx.outputs.push_back(TxOutput{owner, amount, std::nullopt});
        Poplets remaining = record.escrow - amount;
        if (!remaining.is_zero()) {
            tx.outputs.push_back(TxOutput{owner, remaining, property_id});
        }
        apply_tx(tx);
        record.escrow = remaining;
    } else {
        tx.inputs = collect_spendable(owner, amount);
        Poplets gathered = sum_utxos(tx.inputs);
        tx.outputs.push_back(TxOutput{owner, amount, property_id});
        if (gathered > amount) {
            tx.outputs.push_back(TxOutput{owner, gathered - amount, std::nullopt});
        }
        apply_tx(tx);
        record.escrow += amount;
    }
}

void Ledger::place_bid(const Hash32& property_id, const ParticipantId& bidder, Poplets amount)
{
    auto it = book_.records.find(property_id);
    check(it != book_.records.end(), Errc::UnknownProperty, to_hex(property_id));
    check(bidder != it->second.owner, Errc::OwnerCannotBid);
    check(!amount.is_zero(), Errc::ZeroAmount);

    book_.bids[property_id][bidder] = StandingBid{bidder, amount, vs_.epoch};
    enforce_bid_floor(property_id);
}

void Ledger::appraise(const Hash32& property_id, Poplets new_value)
{
    auto it = book_.records.find(property_id);
    check(it != book_.records.end(), Errc::UnknownProperty, to_hex(property_id));
    check(!new_value.is_zero(), Errc::ZeroAmount);

    it->second.appraised_value = new_value;
    enforce_bid_floor(property_id);
}

void Ledger::enforce_bid_floor(const Hash32& property_id)
{
    auto it = book_.records.find(property_id);
    if (it == book_.records.end()) {
        return;
    }
    if (auto floor = book_.second_price(property_id);
        floor && *floor > it->second.appraised_value) {
        it->second.appraised_value = *floor;
    }
}

void Ledger::tick_tenure()
{
    std::vector<Hash32> forfeits;
    for (auto& [id, record] : book_.records) {
        if (record.escrow >= record.appraised_value) {
            ++record.tenure;
        } else if (record.tenure > 0) {
            --record.tenure;
        } else {
            forfeits.push_back(id);
        }
    }
    for (const auto& id : forfeits) {
        settle_forfeiture(book_.records.at(id));
    }
}

// Under-escrowed with an exhausted tenure clock: the property goes to the
// highest standing bidder able to pay twice the second price (the payment
// plus fresh escrow); the former owner keeps the stale escrow and receives
// the payment. With no viable bidder the property simply leaves the
// registry and its escrow unlocks.
void Ledger::settle_forfeiture(PropertyRecord& record)
{
    const Hash32 property_id = record.id;
    const ParticipantId former = record.owner;

    std::vector<Hash32> escrow_inputs;
    for (const auto& [id, u] : utxos_) {
        if (u.lock == property_id) {
            escrow_inputs.push_back(id);
        }
    }

    const StandingBid* winner = nullptr;
    Poplets price;
    auto bids_it = book_.bids.find(property_id);
    if (bids_it != book_.bids.end() && !bids_it->second.empty()) {
        auto ranked = bids_by_rank(bids_it->second);
        price = ranked.size() >= 2 ? ranked[1].amount : ranked[0].amount;
        for (const auto& bid : ranked) {
            if (balance(bid.bidder).spendable >= price * 2) {
                winner = &bid;
                break;
            }
        }
    }

    if (winner == nullptr) {
        if (!escrow_inputs.empty()) {
            Transaction tx;
            tx.kind = TxKind::escrow_release;
            tx.signer = former;
            tx.epoch = vs_.epoch;
            tx.inputs = std::move(escrow_inputs);
            tx.outputs.push_back(TxOutput{former, record.escrow, std::nullopt});
            apply_tx(tx);
        }
        book_.bids.erase(property_id);
        book_.records.erase(property_id);
        return;
    }

    const ParticipantId new_owner = winner->bidder;
    auto buyer_inputs = collect_spendable(new_owner, price * 2);
    Poplets gathered = sum_utxos(buyer_inputs);

    Transaction tx;
    tx.kind = TxKind::escrow_release;
    tx.signer = new_owner;
    tx.epoch = vs_.epoch;
    tx.inputs = std::move(escrow_inputs);
    tx.inputs.insert(tx.inputs.end(), buyer_inputs.begin(), buyer_inputs.end());
    if (!record.escrow.is_zero()) {
        tx.outputs.push_back(TxOutput{former, record.escrow, std::nullopt});
    }
    tx.outputs.push_back(TxOutput{former, price, std::nullopt});
    tx.outputs.push_back(TxOutput{new_owner, price, property_id});
    if (gathered > price * 2) {
        tx.outputs.push_back(TxOutput{new_owner, gathered - price * 2, std::nullopt});
    }
    apply_tx(tx);

    record.owner = new_owner;
    record.appraised_value = price;
    record.escrow = price;
    record.tenure = 0;
    book_.bids[property_id].erase(new_owner);
    enforce_bid_floor(property_id);
}

} // namespace popledger

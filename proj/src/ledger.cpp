#include "popledger/ledger.hpp"

#include <algorithm>
#include <set>

namespace popledger {

Hash32 Transaction::txid() const
{
    HashWriter w;
    w.tag("popledger.tx");
    w.u8(static_cast<std::uint8_t>(kind));
    w.u64(epoch);
    w.hash(signer.bytes);
    w.u64(inputs.size());
    for (const auto& input : inputs) {
        w.hash(input);
    }
    w.u64(outputs.size());
    for (const auto& out : outputs) {
        w.hash(out.owner.bytes);
        w.u128be(out.amount.raw());
        w.u8(out.lock.has_value() ? 1 : 0);
        if (out.lock) {
            w.hash(*out.lock);
        }
    }
    w.bytes(std::span<const std::uint8_t>(signature.data(), signature.size()));
    return w.digest();
}

Ledger::Ledger(const Config& config) : config_(config)
{
    config_.policy = PolicyKind::make(config.policy.kind, config.policy.lifespan);
    if (config_.property_lifespan) {
        check(*config_.property_lifespan >= 2, Errc::InvalidConfig,
              "property lifespan must be at least 2");
    }
    vs_ = new_value_space(config_.policy.lifespan);
    if (config_.policy.kind == Policy::expiring) {
        batch_ = config_.batch.value_or(
            Poplets{kInitialValueSpaceRaw / config_.policy.lifespan});
        check(!batch_.is_zero(), Errc::InvalidConfig, "batch must be positive");
    } else {
        check(!config_.batch.has_value(), Errc::InvalidConfig,
              "batch applies to the expiring policy only");
    }
}

ParticipantId Ledger::enroll(std::span<const std::uint8_t> credential)
{
    return registry_.enroll(attestation_, credential, vs_.epoch);
}

ParticipantId Ledger::enroll_hex(std::string_view credential_hex)
{
    auto bytes = bytes_from_hex(credential_hex);
    check(bytes.has_value(), Errc::InvalidCredential, "credential must be hex");
    return enroll(std::span<const std::uint8_t>(bytes->data(), bytes->size()));
}

void Ledger::depart(const ParticipantId& id)
{
    registry_.depart(id);
}

bool Ledger::spendable(const Utxo& u) const
{
    if (u.lock.has_value()) {
        return false;
    }
    return !u.expiry.has_value() || *u.expiry > vs_.epoch;
}

void Ledger::validate_payment(const Transaction& tx) const
{
    check(tx.kind == TxKind::payment, Errc::InvalidTransaction,
          "only payment transactions may be submitted");
    check(tx.epoch == vs_.epoch, Errc::InvalidTransaction, "transaction epoch mismatch");

    Poplets in_sum;
    std::set<Hash32> seen;
    for (const auto& input : tx.inputs) {
        auto it = utxos_.find(input);
        check(it != utxos_.end(), Errc::UnknownInput, to_hex(input));
        check(seen.insert(input).second, Errc::DoubleSpend, to_hex(input));
        const Utxo& u = it->second;
        check(u.owner == tx.signer, Errc::NotOwner, to_hex(input));
        check(!u.expiry.has_value() || *u.expiry > vs_.epoch, Errc::Expired, to_hex(input));
        check(!u.lock.has_value(), Errc::LockedInput, to_hex(input));
        in_sum += u.amount;
    }

    Poplets out_sum;
    for (const auto& out : tx.outputs) {
        check(!out.amount.is_zero(), Errc::ZeroAmount);
        check(!out.lock.has_value(), Errc::InvalidTransaction,
              "payments cannot create escrow outputs");
        out_sum += out.amount;
    }
    check(in_sum == out_sum, Errc::ValueMismatch,
          in_sum.str() + " in vs " + out_sum.str() + " out");
}

void Ledger::apply_tx(const Transaction& tx, std::optional<std::uint64_t> coinbase_expiry)
{
    std::optional<std::uint64_t> inherited;
    for (const auto& input : tx.inputs) {
        auto it = utxos_.find(input);
        check(it != utxos_.end(), Errc::UnknownInput, to_hex(input));
        if (it->second.expiry) {
            inherited = inherited ? std::min(*inherited, *it->second.expiry)
                                  : *it->second.expiry;
        }
        utxos_.erase(it);
    }

    Hash32 txid = tx.txid();
    std::optional<std::uint64_t> expiry = tx.inputs.empty() ? coinbase_expiry : inherited;
    for (std::size_t index = 0; index < tx.outputs.size(); ++index) {
        const TxOutput& out = tx.outputs[index];
        HashWriter w;
        w.hash(txid);
        w.u64(index);
        Utxo u{w.digest(), out.owner, out.amount, vs_.epoch, expiry, out.lock};
        auto [it, inserted] = utxos_.emplace(u.id, std::move(u));
        check(inserted, Errc::InvalidTransaction, "utxo id collision");
    }
}

Hash32 Ledger::apply_payment(const Transaction& tx)
{
    validate_payment(tx);
    apply_tx(tx);
    return tx.txid();
}

std::vector<Hash32> Ledger::collect_spendable(const ParticipantId& owner, Poplets target) const
{
    std::vector<Hash32> picked;
    Poplets total;
    for (const auto& [id, u] : utxos_) {
        if (u.owner != owner || !spendable(u)) {
            continue;
        }
        picked.push_back(id);
        total += u.amount;
        if (total >= target) {
            return picked;
        }
    }
    fail(Errc::InsufficientFunds,
         "need " + target.str() + ", spendable " + total.str());
}

Poplets Ledger::sum_utxos(const std::vector<Hash32>& ids) const
{
    Poplets total;
    for (const auto& id : ids) {
        total += utxos_.at(id).amount;
    }
    return total;
}

Hash32 Ledger::pay(const ParticipantId& from, const ParticipantId& to, Poplets amount)
{
    check(!amount.is_zero(), Errc::ZeroAmount);
    auto inputs = collect_spendable(from, amount);
    Poplets gathered = sum_utxos(inputs);

    Transaction tx;
    tx.kind = TxKind::payment;
    tx.signer = from;
    tx.epoch = vs_.epoch;
    tx.inputs = std::move(inputs);
    tx.outputs.push_back(TxOutput{to, amount, std::nullopt});
    if (gathered > amount) {
        tx.outputs.push_back(TxOutput{from, gathered - amount, std::nullopt});
    }
    return apply_payment(tx);
}

DistributionEvent Ledger::advance_epoch()
{
    check(registry_.active_count() > 0, Errc::NoParticipants,
          "cannot advance the epoch with nobody enrolled");

    EpochOutcome outcome;
    if (config_.policy.kind == Policy::democratic) {
        outcome = democratic_epoch(vs_, registry_, config_.property_lifespan,
                                   total_escrowed());
    } else {
        outcome = expiring_epoch(vs_, batch_, config_.policy.lifespan, registry_);
    }

    if (!outcome.coinbase.empty()) {
        Transaction coinbase;
        coinbase.kind = TxKind::coinbase;
        coinbase.epoch = vs_.epoch;
        coinbase.outputs.reserve(outcome.coinbase.size());
        std::optional<std::uint64_t> expiry = outcome.coinbase.front().expiry;
        for (const auto& out : outcome.coinbase) {
            coinbase.outputs.push_back(TxOutput{out.owner, out.amount, std::nullopt});
        }
        apply_tx(coinbase, expiry);
    }

    expire_coins();
    tick_tenure();
    log_.push_back(outcome.event);
    return outcome.event;
}

void Ledger::expire_coins()
{
    for (auto it = utxos_.begin(); it != utxos_.end();) {
        const Utxo& u = it->second;
        if (u.expiry.has_value() && *u.expiry <= vs_.epoch) {
            expired_total_ += u.amount;
            if (u.lock) {
                auto record = book_.records.find(*u.lock);
                if (record != book_.records.end()) {
                    record->second.escrow -= u.amount;
                }
            }
            it = utxos_.erase(it);
        } else {
            ++it;
        }
    }
}

Ledger::Balance Ledger::balance(const ParticipantId& owner) const
{
    Balance b;
    for (const auto& [id, u] : utxos_) {
        if (u.owner != owner) {
            continue;
        }
        if (u.expiry.has_value() && *u.expiry <= vs_.epoch) {
            continue;
        }
        if (u.lock.has_value()) {
            b.escrowed += u.amount;
        } else {
            b.spendable += u.amount;
        }
    }
    return b;
}

Poplets Ledger::total_spendable() const
{
    Poplets total;
    for (const auto& [id, u] : utxos_) {
        if (spendable(u)) {
            total += u.amount;
        }
    }
    return total;
}

Poplets Ledger::total_escrowed() const
{
    Poplets total;
    for (const auto& [id, u] : utxos_) {
        if (u.lock.has_value() && (!u.expiry.has_value() || *u.expiry > vs_.epoch)) {
            total += u.amount;
        }
    }
    return total;
}

std::optional<ConversionRate> Ledger::rate() const
{
    if (log_.empty()) {
        return std::nullopt;
    }
    const DistributionEvent& last = log_.back();
    return conversion_rate(last.issuance, last.participants, last.epoch);
}

std::optional<std::uint64_t> Ledger::utxo_remaining_lifetime(const Hash32& utxo_id) const
{
    auto it = utxos_.find(utxo_id);
    check(it != utxos_.end(), Errc::UnknownInput, to_hex(utxo_id));
    return remaining_lifetime(it->second.expiry, vs_.epoch);
}

} // namespace popledger

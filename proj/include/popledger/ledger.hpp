#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "popledger/membership.hpp"
#include "popledger/policy.hpp"
#include "popledger/property.hpp"
#include "popledger/value_space.hpp"

namespace popledger {

struct Utxo {
    Hash32 id{};
    ParticipantId owner;
    Poplets amount;                      // > 0 always
    std::uint64_t mint_epoch = 0;
    std::optional<std::uint64_t> expiry; // absent for democratic coins
    std::optional<Hash32> lock;          // property id while escrowed
};

enum class TxKind : std::uint8_t {
    coinbase = 0,
    payment = 1,
    escrow_lock = 2,
    escrow_release = 3,
};

struct TxOutput {
    ParticipantId owner;
    Poplets amount;
    std::optional<Hash32> lock;
};

// No fees: a payment's inputs and outputs balance exactly. The signature
// field is a placeholder; verification is an owner-match between every
// input and the signer.
struct Transaction {
    TxKind kind = TxKind::payment;
    ParticipantId signer;
    std::vector<Hash32> inputs;
    std::vector<TxOutput> outputs;
    std::uint64_t epoch = 0;
    std::vector<std::uint8_t> signature;

    Hash32 txid() const;
};

// Deterministic single-writer UTXO state machine. Identical operation
// sequences from an identical genesis produce byte-identical snapshots.
// Reads are safe from any thread between mutations.
class Ledger {
public:
    struct Config {
        PolicyKind policy{Policy::democratic, 50};
        // Dual-rate option: escrowed property value devalues at its own
        // (slower) rate while circulating money uses policy.lifespan.
        std::optional<std::uint64_t> property_lifespan;
        // Expiring policy only; defaults to floor(2^64 / L).
        std::optional<Poplets> batch;
    };

    explicit Ledger(const Config& config);

    // -- membership ---------------------------------------------------------
    ParticipantId enroll(std::span<const std::uint8_t> credential);
    ParticipantId enroll_hex(std::string_view credential_hex);
    void depart(const ParticipantId& id);
    std::uint64_t active_count() const { return registry_.active_count(); }
    const ParticipantRegistry& registry() const { return registry_; }

    // -- payments -----------------------------------------------------------
    // Full validation, then atomic application; on error the state is
    // untouched. Returns the txid.
    Hash32 apply_payment(const Transaction& tx);
    // Wallet-style convenience: deterministic coin selection from `from`'s
    // spendable outputs, change back to `from`.
    Hash32 pay(const ParticipantId& from, const ParticipantId& to, Poplets amount);

    // -- epochs -------------------------------------------------------------
    // Runs the active policy's distribution, applies coinbase outputs,
    // expires outgoing coins (expiring policy), ticks property tenure
    // clocks and settles any forfeitures.
    DistributionEvent advance_epoch();

    // -- queries ------------------------------------------------------------
    struct Balance {
        Poplets spendable;
        Poplets escrowed;
    };
    Balance balance(const ParticipantId& owner) const;

    std::optional<ConversionRate> rate() const;
    std::uint64_t epoch() const { return vs_.epoch; }
    const ValueSpace& value_space() const { return vs_; }
    const Config& config() const { return config_; }
    const std::map<Hash32, Utxo>& utxos() const { return utxos_; }
    const std::vector<DistributionEvent>& distributions() const { return log_; }
    Poplets expired_total() const { return expired_total_; }
    Poplets batch_size() const { return batch_; }

    Poplets total_spendable() const;
    Poplets total_escrowed() const;

    std::optional<std::uint64_t> utxo_remaining_lifetime(const Hash32& utxo_id) const;

    // -- property -----------------------------------------------------------
    Hash32 register_property(const ParticipantId& buyer, const ParticipantId& seller,
                             Poplets price);
    void transfer_property(const Hash32& property_id, const ParticipantId& seller,
                           const ParticipantId& buyer, Poplets price);
    // Withdrawals may not take escrow below the appraised value.
    void adjust_escrow(const Hash32& property_id, const ParticipantId& owner,
                       Poplets amount, bool withdraw);
    void place_bid(const Hash32& property_id, const ParticipantId& bidder, Poplets amount);
    void appraise(const Hash32& property_id, Poplets new_value);
    const PropertyBook& properties() const { return book_; }

    // -- persistence ----------------------------------------------------------
    // Canonical text encoding: same state, identical bytes.
    std::string snapshot() const;
    static Ledger restore(std::string_view bytes);

private:
    friend struct SnapshotCodec;

    Ledger() = default;

    void validate_payment(const Transaction& tx) const;
    // Consumes inputs, creates outputs; expiry is inherited as the minimum
    // input expiry, or forced for coinbase outputs.
    void apply_tx(const Transaction& tx, std::optional<std::uint64_t> coinbase_expiry = {});
    // Spendable outputs of `owner` in id order summing to at least `target`.
    std::vector<Hash32> collect_spendable(const ParticipantId& owner, Poplets target) const;
    Poplets sum_utxos(const std::vector<Hash32>& ids) const;
    bool spendable(const Utxo& u) const;

    void expire_coins();
    void tick_tenure();
    void settle_forfeiture(PropertyRecord& record);
    void enforce_bid_floor(const Hash32& property_id);

    Config config_;
    ValueSpace vs_;
    ParticipantRegistry registry_;
    std::map<Hash32, Utxo> utxos_;
    PropertyBook book_;
    std::vector<DistributionEvent> log_;
    Poplets batch_;         // expiring policy batch size
    Poplets expired_total_; // cumulative value removed by expiry
    HashAttestation attestation_;
};

} // namespace popledger

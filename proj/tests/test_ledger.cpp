#include <doctest.h>

#include <vector>

#include "popledger/ledger.hpp"

using namespace popledger;

namespace {

std::vector<std::uint8_t> cred(std::uint64_t n)
{
    std::vector<std::uint8_t> bytes(8);
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<std::uint8_t>(n >> (56 - 8 * i));
    }
    return bytes;
}

struct Fixture {
    Ledger ledger;
    std::vector<ParticipantId> ids;

    explicit Fixture(std::uint64_t members, Ledger::Config config = {})
        : ledger(config)
    {
        for (std::uint64_t i = 0; i < members; ++i) {
            ids.push_back(ledger.enroll(cred(i + 1)));
        }
    }
};

// Democratic conservation: everything distributed since genesis is exactly
// the growth of the value space.
void check_conservation(const Ledger& ledger)
{
    Poplets circulating = ledger.total_spendable() + ledger.total_escrowed()
        + ledger.value_space().residual + ledger.expired_total();
    Poplets created = ledger.value_space().size - Poplets{kInitialValueSpaceRaw};
    CHECK(circulating == created);
}

} // namespace

TEST_CASE("first distribution lands in the sole member's balance")
{
    Fixture fx(1);
    auto event = fx.ledger.advance_epoch();
    CHECK(event.issuance.str() == "376464164769582686");
    auto balance = fx.ledger.balance(fx.ids[0]);
    CHECK(balance.spendable.str() == "376464164769582686");
    CHECK(balance.escrowed.is_zero());
    check_conservation(fx.ledger);
}

TEST_CASE("unknown owner has an empty balance")
{
    Fixture fx(1);
    ParticipantId stranger;
    stranger.bytes.fill(0xab);
    auto balance = fx.ledger.balance(stranger);
    CHECK(balance.spendable.is_zero());
    CHECK(balance.escrowed.is_zero());
}

TEST_CASE("consecutive coinbases agree within the residual carry")
{
    Fixture fx(7);
    auto first = fx.ledger.advance_epoch();
    auto second = fx.ledger.advance_epoch();
    // pools differ only by carried residual and one epoch of expansion
    Rational a{to_bigint(first.per_participant)};
    Rational b{to_bigint(second.per_participant)};
    Rational growth(50, 49);
    Rational drift = b / a - growth;
    if (drift < 0) {
        drift = -drift;
    }
    CHECK(drift < Rational(1, 1000000000000LL));

    // measured in each epoch's own Popcoin, the income is one year's worth:
    // per_participant stays within one Poplet of issuance / N
    for (const auto& event : fx.ledger.distributions()) {
        Rational exact{to_bigint(event.issuance), BigInt(event.participants)};
        Rational got{to_bigint(event.per_participant)};
        Rational error = exact > got ? exact - got : got - exact;
        CHECK(error <= 1);
    }
    check_conservation(fx.ledger);
}

TEST_CASE("payments move value and preserve the total")
{
    Fixture fx(2);
    fx.ledger.advance_epoch();
    Poplets before = fx.ledger.balance(fx.ids[0]).spendable;

    fx.ledger.pay(fx.ids[0], fx.ids[1], Poplets{1000});
    CHECK(fx.ledger.balance(fx.ids[0]).spendable == before - Poplets{1000});
    CHECK_THROWS_AS(fx.ledger.pay(fx.ids[0], fx.ids[1], Poplets{0}), Error);
    check_conservation(fx.ledger);

    // full-balance self-payment is a no-op for the balance
    Poplets whole = fx.ledger.balance(fx.ids[1]).spendable;
    fx.ledger.pay(fx.ids[1], fx.ids[1], whole);
    CHECK(fx.ledger.balance(fx.ids[1]).spendable == whole);
    check_conservation(fx.ledger);
}

TEST_CASE("payment validation rejects every malformed spend")
{
    Fixture fx(2);
    fx.ledger.advance_epoch();

    // one utxo per member after the first epoch
    Hash32 mine{};
    Hash32 theirs{};
    for (const auto& [id, utxo] : fx.ledger.utxos()) {
        if (utxo.owner == fx.ids[0]) {
            mine = id;
        } else {
            theirs = id;
        }
    }
    Poplets amount = fx.ledger.balance(fx.ids[0]).spendable;

    auto tx_with = [&](auto mutate) {
        Transaction tx;
        tx.kind = TxKind::payment;
        tx.signer = fx.ids[0];
        tx.epoch = fx.ledger.epoch();
        tx.inputs = {mine};
        tx.outputs = {TxOutput{fx.ids[1], amount, std::nullopt}};
        mutate(tx);
        return tx;
    };

    auto expect_code = [&](const Transaction& tx, Errc code) {
        std::string before = fx.ledger.snapshot();
        try {
            fx.ledger.apply_payment(tx);
            FAIL("expected rejection");
        } catch (const Error& e) {
            CHECK(e.code() == code);
        }
        CHECK(fx.ledger.snapshot() == before); // atomicity
    };

    Hash32 missing{};
    missing.fill(0x01);
    expect_code(tx_with([&](Transaction& tx) { tx.inputs = {missing}; }),
                Errc::UnknownInput);
    expect_code(tx_with([&](Transaction& tx) {
                    tx.inputs = {mine, mine};
                    tx.outputs[0].amount = amount * 2;
                }),
                Errc::DoubleSpend);
    expect_code(tx_with([&](Transaction& tx) { tx.inputs = {theirs}; }), Errc::NotOwner);
    expect_code(tx_with([&](Transaction& tx) { tx.outputs[0].amount = amount - Poplets{1}; }),
                Errc::ValueMismatch);
    expect_code(tx_with([&](Transaction& tx) {
                    tx.outputs = {TxOutput{fx.ids[1], Poplets{0}, std::nullopt},
                                  TxOutput{fx.ids[1], amount, std::nullopt}};
                }),
                Errc::ZeroAmount);
    expect_code(tx_with([&](Transaction& tx) { tx.kind = TxKind::coinbase; }),
                Errc::InvalidTransaction);

    // locked inputs are unspendable: lock part of the balance in escrow
    fx.ledger.register_property(fx.ids[0], fx.ids[1], Poplets{1000});
    Hash32 locked{};
    for (const auto& [id, utxo] : fx.ledger.utxos()) {
        if (utxo.lock.has_value()) {
            locked = id;
        }
    }
    expect_code(tx_with([&](Transaction& tx) {
                    tx.inputs = {locked};
                    tx.outputs = {TxOutput{fx.ids[1], Poplets{1000}, std::nullopt}};
                }),
                Errc::LockedInput);
    check_conservation(fx.ledger);
}

TEST_CASE("expiring coins cannot be spent at their expiry epoch")
{
    Ledger::Config config;
    config.policy = PolicyKind{Policy::expiring, 3};
    config.batch = Poplets{300};
    Fixture fx(1, config);

    fx.ledger.advance_epoch(); // epoch 1, expiry 4
    Hash32 coin = fx.ledger.utxos().begin()->first;
    CHECK(fx.ledger.utxo_remaining_lifetime(coin).value() == 3);

    fx.ledger.advance_epoch();
    fx.ledger.advance_epoch();
    CHECK(fx.ledger.utxo_remaining_lifetime(coin).value() == 1);
    CHECK(fx.ledger.balance(fx.ids[0]).spendable.raw() == 900);

    fx.ledger.advance_epoch(); // epoch 4: the first batch is swept
    CHECK(fx.ledger.balance(fx.ids[0]).spendable.raw() == 900);
    CHECK(fx.ledger.utxos().size() == 3);
    CHECK(fx.ledger.expired_total().raw() == 300);
    CHECK_FALSE(fx.ledger.utxos().contains(coin));
}

TEST_CASE("democratic coins never expire")
{
    Fixture fx(1);
    fx.ledger.advance_epoch();
    Hash32 coin = fx.ledger.utxos().begin()->first;
    CHECK_FALSE(fx.ledger.utxo_remaining_lifetime(coin).has_value());
    for (int i = 0; i < 60; ++i) {
        fx.ledger.advance_epoch();
    }
    CHECK(fx.ledger.utxos().contains(coin));
}

TEST_CASE("departed members keep their holdings but lose the income stream")
{
    Fixture fx(2);
    fx.ledger.advance_epoch();
    Poplets held = fx.ledger.balance(fx.ids[0]).spendable;

    fx.ledger.depart(fx.ids[0]);
    auto event = fx.ledger.advance_epoch();
    CHECK(event.participants == 1);
    CHECK(fx.ledger.balance(fx.ids[0]).spendable == held); // estate intact
    CHECK(fx.ledger.balance(fx.ids[1]).spendable > held);
    check_conservation(fx.ledger);

    // the estate stays spendable
    fx.ledger.pay(fx.ids[0], fx.ids[1], held);
    CHECK(fx.ledger.balance(fx.ids[0]).spendable.is_zero());
    check_conservation(fx.ledger);
}

TEST_CASE("identical histories give byte-identical snapshots")
{
    auto run = [] {
        Fixture fx(3);
        fx.ledger.advance_epoch();
        fx.ledger.pay(fx.ids[0], fx.ids[1], Poplets{12345});
        fx.ledger.pay(fx.ids[1], fx.ids[2], Poplets{999});
        fx.ledger.advance_epoch();
        fx.ledger.register_property(fx.ids[2], fx.ids[0], Poplets{100000});
        fx.ledger.advance_epoch();
        return fx.ledger.snapshot();
    };
    CHECK(run() == run());
}

TEST_CASE("dual-rate config expands both pools and still conserves")
{
    Ledger::Config config;
    config.policy = PolicyKind{Policy::democratic, 20}; // circulating at 5%
    config.property_lifespan = 50;                      // property at 2%
    Fixture fx(3, config);
    fx.ledger.advance_epoch();
    fx.ledger.register_property(fx.ids[0], fx.ids[1],
                                fx.ledger.balance(fx.ids[0]).spendable.divmod(2).first);
    for (int i = 0; i < 5; ++i) {
        fx.ledger.advance_epoch();
        check_conservation(fx.ledger);
    }
    CHECK(fx.ledger.total_escrowed() > Poplets{0});
}

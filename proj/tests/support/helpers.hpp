#pragma once

// Common fixtures for ledger-level tests: deterministic keypairs and a
// funded ledger with registered senders.

#include <cstdint>
#include <vector>

#include "rbn/ledger.hpp"

namespace testkit {

inline rbn::KeyPair keypair(std::uint64_t n) {
    rbn::Seed s{};
    for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(n >> (8 * i));
    s[31] = 0x5a;
    return rbn::generate_keypair(s).value();
}

struct Party {
    rbn::KeyPair keys;
    rbn::Address address;
};

inline Party party(std::uint64_t n) {
    Party p{keypair(n), {}};
    p.address = rbn::derive_address(p.keys.public_key);
    return p;
}

struct Net {
    std::vector<Party> parties;
    rbn::Ledger ledger;
    Party miner;

    static rbn::GenesisConfig config_for(const std::vector<Party>& ps, std::uint64_t balance,
                                         std::uint64_t reward) {
        rbn::GenesisConfig cfg;
        cfg.block_reward = reward;
        for (const Party& p : ps) cfg.alloc[p.address] = balance;
        return cfg;
    }

    Net(std::size_t n_parties, std::uint64_t balance, std::uint64_t reward = 0)
        : parties([&] {
              std::vector<Party> ps;
              for (std::size_t i = 0; i < n_parties; ++i) ps.push_back(party(1000 + i));
              return ps;
          }()),
          ledger(config_for(parties, balance, reward)), miner(party(999)) {
        for (const Party& p : parties) ledger.register_sender(p.keys.public_key);
        ledger.register_sender(miner.keys.public_key);
    }

    Party& operator[](std::size_t i) { return parties[i]; }

    rbn::SubmitReceipt transfer(const Party& from, const Party& to, std::uint64_t amount) {
        return ledger.submit_transaction(rbn::make_transfer(
            from.keys, to.address, ledger.next_nonce(from.address), amount));
    }

    /// Submits a deploy and mines it; returns the contract address.
    rbn::Result<rbn::Address> deploy(const Party& deployer, std::uint64_t amount,
                                     std::string kind, std::vector<rbn::Value> args) {
        std::uint64_t nonce = ledger.next_nonce(deployer.address);
        auto sr = ledger.submit_transaction(
            rbn::make_deploy(deployer.keys, nonce, amount, std::move(kind), std::move(args)));
        if (!sr.accepted) return rbn::Result<rbn::Address>::err(sr.reason->code, sr.reason->message);
        auto block = ledger.produce_block(miner.address);
        const auto& receipts = ledger.receipts_at(block.value().height);
        const auto& receipt = receipts.back();
        if (!receipt.ok)
            return rbn::Result<rbn::Address>::err(receipt.error->code, receipt.error->message);
        return *receipt.deployed;
    }

    /// Submits a call and mines it; returns the receipt.
    rbn::TxReceipt call(const Party& caller, const rbn::Address& contract, std::uint64_t amount,
                        std::string method, std::vector<rbn::Value> args) {
        auto sr = ledger.submit_transaction(
            rbn::make_call(caller.keys, contract, ledger.next_nonce(caller.address), amount,
                           std::move(method), std::move(args)));
        if (!sr.accepted) {
            rbn::TxReceipt r;
            r.ok = false;
            r.error = sr.reason;
            return r;
        }
        auto block = ledger.produce_block(miner.address);
        return ledger.receipts_at(block.value().height).back();
    }

    /// Mines empty blocks until the committed height reaches `target`.
    void advance_to(std::uint64_t target) {
        while (ledger.height() < target) (void)ledger.produce_block(miner.address);
    }

    bool conserved() const {
        std::uint64_t expected =
            ledger.genesis_supply() + ledger.block_reward() * ledger.height();
        return ledger.circulating_total() == expected;
    }
};

} // namespace testkit

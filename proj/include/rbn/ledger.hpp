#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/block.hpp"
#include "rbn/engine.hpp"
#include "rbn/tx.hpp"

namespace rbn {

struct AccountState {
    std::uint64_t balance = 0;
    std::uint64_t nonce = 0;
};

struct GenesisConfig {
    std::map<Address, std::uint64_t> alloc;
    std::uint64_t block_reward = 50;
    std::uint32_t difficulty = 0;
};

inline constexpr std::uint64_t kDefaultGenesisSupply = 1'000'000'000;
inline constexpr std::uint32_t kMaxDifficultyBits = 20;

struct SubmitReceipt {
    bool accepted = false;
    std::optional<Error> reason;
};

/// Per-transaction execution outcome. Failed transactions are included
/// in their block (the sender nonce advances) but leave no other state
/// behind.
struct TxReceipt {
    bool ok = false;
    std::optional<Error> error;
    FieldMap result;
    std::optional<Address> deployed;
};

/// The hash-chained ledger: committed blocks, account states, deployed
/// contracts, the event log and the pending pool. Single block producer;
/// submit_transaction may be called concurrently, committed reads are
/// const.
class Ledger {
  public:
    explicit Ledger(GenesisConfig config);

    /// Senders must be introduced before they can submit: UnknownSender
    /// otherwise. Idempotent; returns the derived address.
    Address register_sender(const PublicKey& pubkey);
    bool is_registered(const Address& addr) const;

    SubmitReceipt submit_transaction(const SignedTransaction& tx);
    std::size_t pending_count() const;

    /// Committed nonce plus queued transactions; the nonce a new
    /// submission from this sender must carry.
    std::uint64_t next_nonce(const Address& addr) const;

    /// Drains the pool FIFO, executes, searches the proof-of-work nonce
    /// and appends; difficulty above 20 bits is refused.
    Result<Block> produce_block(const Address& miner);
    Result<Block> produce_block(const Address& miner, std::uint32_t difficulty);

    /// Verifies and applies a foreign block (replay / validation path).
    Status apply_external_block(const Block& block);

    std::uint64_t balance(const Address& addr) const;
    AccountState account(const Address& addr) const;
    std::uint64_t height() const; // latest block height; genesis is 0
    const std::vector<Block>& blocks() const { return chain_; }
    const std::vector<TxReceipt>& receipts_at(std::uint64_t height) const;

    std::vector<ChainEvent> query_events(const std::optional<Address>& contract,
                                         const std::optional<std::string>& name) const;
    const std::vector<ChainEvent>& events() const { return events_; }

    const ContractHost& contracts() const { return contracts_; }
    ContractHost& contracts() { return contracts_; }
    Result<nlohmann::ordered_json> contract_state(const Address& addr) const;

    /// sha256 of the canonical account+contract state serialization.
    Hash32 state_root() const;
    nlohmann::ordered_json state_json() const;

    /// Total account balances plus contract-held funds; conservation
    /// says this equals genesis supply + reward * height.
    std::uint64_t circulating_total() const;
    std::uint64_t genesis_supply() const { return genesis_supply_; }
    std::uint64_t block_reward() const { return config_.block_reward; }

    /// One canonical JSON object per block, one block per line.
    std::string dump_chain() const;

  private:
    struct PendingInfo {
        std::uint64_t count = 0;
        std::uint64_t reserved = 0;
    };

    void execute_block_transactions(const std::vector<SignedTransaction>& txs,
                                    std::uint64_t height, std::vector<TxReceipt>& receipts,
                                    std::vector<ChainEvent>& events);
    TxReceipt execute_transaction(const SignedTransaction& tx, std::uint64_t height,
                                  std::vector<ChainEvent>& events);
    Status check_transaction_for_block(const SignedTransaction& tx,
                                       std::map<Address, std::uint64_t>& next_nonces) const;

    GenesisConfig config_;
    std::uint64_t genesis_supply_ = 0;

    std::vector<Block> chain_;
    std::map<Address, AccountState> accounts_;
    std::map<Address, PublicKey> senders_;
    ContractHost contracts_;
    std::vector<ChainEvent> events_;
    std::vector<std::vector<TxReceipt>> receipts_;

    mutable std::mutex pool_mutex_;
    std::vector<SignedTransaction> pool_;
    std::map<Address, PendingInfo> pending_;
};

} // namespace rbn

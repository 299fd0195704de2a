#include "rbn/ledger.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

Ledger::Ledger(GenesisConfig config) : config_(std::move(config)) {
    for (const auto& [addr, balance] : config_.alloc) {
        genesis_supply_ += balance;
        accounts_[addr].balance = balance;
    }
    Block genesis;
    genesis.height = 0;
    genesis.parent_hash = kZeroHash;
    genesis.miner = Address::zero();
    genesis.reward = 0;
    genesis.difficulty = 0;
    genesis.nonce = 0;
    genesis.alloc = config_.alloc;
    genesis.state_root = state_root();
    genesis.hash = genesis.compute_hash();
    chain_.push_back(std::move(genesis));
    receipts_.emplace_back();
}

Address Ledger::register_sender(const PublicKey& pubkey) {
    Address addr = derive_address(pubkey);
    std::lock_guard lock(pool_mutex_);
    senders_.emplace(addr, pubkey);
    return addr;
}

bool Ledger::is_registered(const Address& addr) const {
    std::lock_guard lock(pool_mutex_);
    return senders_.contains(addr);
}

SubmitReceipt Ledger::submit_transaction(const SignedTransaction& tx) {
    std::lock_guard lock(pool_mutex_);
    auto reject = [](Errc code, std::string msg) {
        return SubmitReceipt{false, Error{code, std::move(msg)}};
    };

    auto sender = senders_.find(tx.from);
    if (sender == senders_.end())
        return reject(Errc::UnknownSender, "no key registered for " + tx.from.display());
    if (tx.pubkey != sender->second || !tx.verify_signature())
        return reject(Errc::BadSignature, "signature does not verify for " + tx.from.display());

    auto acct = accounts_.find(tx.from);
    std::uint64_t committed_nonce = acct == accounts_.end() ? 0 : acct->second.nonce;
    std::uint64_t committed_balance = acct == accounts_.end() ? 0 : acct->second.balance;
    PendingInfo& pending = pending_[tx.from];
    std::uint64_t expected_nonce = committed_nonce + pending.count;
    if (tx.nonce != expected_nonce)
        return reject(Errc::BadNonce, "expected " + std::to_string(expected_nonce) + ", got " +
                                          std::to_string(tx.nonce));
    if (committed_balance < pending.reserved + tx.amount)
        return reject(Errc::InsufficientFunds,
                      "balance " + std::to_string(committed_balance) + ", needed " +
                          std::to_string(pending.reserved + tx.amount));

    pending.count += 1;
    pending.reserved += tx.amount;
    pool_.push_back(tx);
    return SubmitReceipt{true, std::nullopt};
}

std::size_t Ledger::pending_count() const {
    std::lock_guard lock(pool_mutex_);
    return pool_.size();
}

std::uint64_t Ledger::next_nonce(const Address& addr) const {
    std::lock_guard lock(pool_mutex_);
    auto acct = accounts_.find(addr);
    std::uint64_t committed = acct == accounts_.end() ? 0 : acct->second.nonce;
    auto pending = pending_.find(addr);
    return committed + (pending == pending_.end() ? 0 : pending->second.count);
}

// Nonce checks simulate in-block progression: a sender may have several
// consecutive-nonce transactions in one block.
Status Ledger::check_transaction_for_block(const SignedTransaction& tx,
                                           std::map<Address, std::uint64_t>& next_nonces) const {
    if (!tx.verify_signature())
        return Status::err(Errc::BadSignature, "bad signature from " + tx.from.display());
    auto acct = accounts_.find(tx.from);
    std::uint64_t committed = acct == accounts_.end() ? 0 : acct->second.nonce;
    auto [it, inserted] = next_nonces.try_emplace(tx.from, committed);
    if (tx.nonce != it->second)
        return Status::err(Errc::BadNonce, "expected " + std::to_string(it->second) + ", got " +
                                               std::to_string(tx.nonce));
    it->second += 1;
    return ok_status();
}

TxReceipt Ledger::execute_transaction(const SignedTransaction& tx, std::uint64_t height,
                                      std::vector<ChainEvent>& events) {
    TxReceipt receipt;
    accounts_[tx.from].nonce += 1; // inclusion advances the nonce, success or not

    if (!tx.payload) {
        if (contracts_.exists(tx.to)) {
            receipt.error = Error{Errc::StateError,
                                  "plain transfer to contract address; use a payable method"};
            return receipt;
        }
        AccountState& from = accounts_[tx.from];
        if (from.balance < tx.amount) {
            receipt.error = Error{Errc::InsufficientFunds,
                                  "balance " + std::to_string(from.balance) + ", needed " +
                                      std::to_string(tx.amount)};
            return receipt;
        }
        from.balance -= tx.amount;
        accounts_[tx.to].balance += tx.amount;
        receipt.ok = true;
        return receipt;
    }

    // contract deploy or call: attached funds move only if the
    // transition commits
    AccountState& from = accounts_[tx.from];
    if (from.balance < tx.amount) {
        receipt.error = Error{Errc::InsufficientFunds,
                              "balance " + std::to_string(from.balance) + ", needed " +
                                  std::to_string(tx.amount)};
        return receipt;
    }
    from.balance -= tx.amount;

    Result<CallOutcome> outcome = tx.is_deploy()
                                      ? contracts_.deploy(tx.from, tx.nonce, tx.amount, height,
                                                          tx.payload->args)
                                      : contracts_.call(tx.from, tx.to, tx.amount, height,
                                                        tx.payload->method, tx.payload->args);
    if (outcome.is_err()) {
        accounts_[tx.from].balance += tx.amount; // revert the attachment
        receipt.error = outcome.error();
        return receipt;
    }

    for (const auto& [to, amount] : outcome.value().payouts) accounts_[to].balance += amount;
    for (ChainEvent& ev : outcome.value().events) events.push_back(std::move(ev));
    receipt.ok = true;
    receipt.result = std::move(outcome.value().result);
    if (tx.is_deploy()) receipt.deployed = outcome.value().contract;
    return receipt;
}

void Ledger::execute_block_transactions(const std::vector<SignedTransaction>& txs,
                                        std::uint64_t height, std::vector<TxReceipt>& receipts,
                                        std::vector<ChainEvent>& events) {
    for (const SignedTransaction& tx : txs) {
        std::vector<ChainEvent> tx_events;
        TxReceipt r = execute_transaction(tx, height, tx_events);
        for (ChainEvent& ev : tx_events) {
            ev.height = height;
            events.push_back(std::move(ev));
        }
        receipts.push_back(std::move(r));
    }
}

Result<Block> Ledger::produce_block(const Address& miner) {
    return produce_block(miner, config_.difficulty);
}

Result<Block> Ledger::produce_block(const Address& miner, std::uint32_t difficulty) {
    if (difficulty > kMaxDifficultyBits)
        return Result<Block>::err(Errc::DifficultyTooHigh,
                                  "difficulty capped at " +
                                      std::to_string(kMaxDifficultyBits) + " bits");
    std::vector<SignedTransaction> drained;
    {
        std::lock_guard lock(pool_mutex_);
        drained.swap(pool_);
        pending_.clear();
    }

    Block block;
    block.height = chain_.size();
    block.parent_hash = chain_.back().hash;
    block.miner = miner;
    block.reward = config_.block_reward;
    block.difficulty = difficulty;
    std::map<Address, std::uint64_t> next_nonces;
    for (SignedTransaction& tx : drained) {
        // unreachable for pool-validated transactions; kept as a guard
        if (check_transaction_for_block(tx, next_nonces).is_ok())
            block.transactions.push_back(std::move(tx));
    }

    std::vector<TxReceipt> receipts;
    std::vector<ChainEvent> events;
    execute_block_transactions(block.transactions, block.height, receipts, events);
    accounts_[miner].balance += block.reward;
    block.state_root = state_root();

    block.nonce = 0;
    for (;;) {
        block.hash = block.compute_hash();
        if (meets_difficulty(block.hash, difficulty)) break;
        ++block.nonce;
    }

    for (ChainEvent& ev : events) events_.push_back(std::move(ev));
    receipts_.push_back(std::move(receipts));
    chain_.push_back(block);
    return chain_.back();
}

Status Ledger::apply_external_block(const Block& block) {
    auto fail = [&](std::string msg) {
        return Status::err(Errc::ValidationFailure,
                           "height " + std::to_string(block.height) + ": " + std::move(msg));
    };
    if (block.height != chain_.size()) return fail("unexpected height");
    if (block.parent_hash != chain_.back().hash) return fail("parent hash mismatch");
    if (block.compute_hash() != block.hash) return fail("hash mismatch");
    if (!meets_difficulty(block.hash, block.difficulty)) return fail("difficulty not met");
    if (!block.alloc.empty()) return fail("alloc outside genesis");
    std::map<Address, std::uint64_t> next_nonces;
    for (const SignedTransaction& tx : block.transactions) {
        auto check = check_transaction_for_block(tx, next_nonces);
        if (check.is_err()) return fail(check.error().to_string());
    }

    std::vector<TxReceipt> receipts;
    std::vector<ChainEvent> events;
    execute_block_transactions(block.transactions, block.height, receipts, events);
    accounts_[block.miner].balance += block.reward;
    if (state_root() != block.state_root) return fail("state root mismatch after replay");

    for (ChainEvent& ev : events) events_.push_back(std::move(ev));
    receipts_.push_back(std::move(receipts));
    chain_.push_back(block);
    return ok_status();
}

std::uint64_t Ledger::balance(const Address& addr) const {
    auto it = accounts_.find(addr);
    return it == accounts_.end() ? 0 : it->second.balance;
}

AccountState Ledger::account(const Address& addr) const {
    auto it = accounts_.find(addr);
    return it == accounts_.end() ? AccountState{} : it->second;
}

std::uint64_t Ledger::height() const { return chain_.back().height; }

const std::vector<TxReceipt>& Ledger::receipts_at(std::uint64_t height) const {
    static const std::vector<TxReceipt> kEmpty;
    if (height >= receipts_.size()) return kEmpty;
    return receipts_[height];
}

std::vector<ChainEvent> Ledger::query_events(const std::optional<Address>& contract,
                                             const std::optional<std::string>& name) const {
    std::vector<ChainEvent> out;
    for (const ChainEvent& ev : events_) {
        if (contract && ev.contract != *contract) continue;
        if (name && ev.name != *name) continue;
        out.push_back(ev);
    }
    return out;
}

Result<nlohmann::ordered_json> Ledger::contract_state(const Address& addr) const {
    return contracts_.state_json(addr);
}

nlohmann::ordered_json Ledger::state_json() const {
    nlohmann::ordered_json accounts = nlohmann::ordered_json::object();
    for (const auto& [addr, state] : accounts_) {
        if (state.balance == 0 && state.nonce == 0) continue;
        nlohmann::ordered_json a;
        a["balance"] = state.balance;
        a["nonce"] = state.nonce;
        accounts[addr.display()] = a;
    }
    nlohmann::ordered_json j;
    j["accounts"] = accounts;
    j["contracts"] = contracts_.all_state_json();
    return j;
}

Hash32 Ledger::state_root() const {
    std::string dump = state_json().dump();
    return sha256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(dump.data()), dump.size()));
}

std::uint64_t Ledger::circulating_total() const {
    std::uint64_t sum = 0;
    for (const auto& [addr, state] : accounts_) sum += state.balance;
    return sum + contracts_.total_held();
}

std::string Ledger::dump_chain() const {
    std::string out;
    for (const Block& b : chain_) {
        out += b.to_json().dump();
        out += '\n';
    }
    return out;
}

} // namespace rbn

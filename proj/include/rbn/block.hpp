#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rbn/hash.hpp"
#include "rbn/tx.hpp"

namespace rbn {

/// Hash-linked batch of transactions. `hash` is sha256 over the
/// canonical header encoding ("rbn:blk:v1"), which commits to every
/// other field including the post-execution state root and, at height 0,
/// the genesis allocation. `nonce` is the proof-of-work search variable;
/// `difficulty` is the number of leading zero bits the hash must carry.
struct Block {
    std::uint64_t height = 0;
    Hash32 parent_hash = kZeroHash;
    Address miner;
    std::uint64_t reward = 0;
    std::uint32_t difficulty = 0;
    std::uint64_t nonce = 0;
    Hash32 state_root = kZeroHash;
    std::vector<SignedTransaction> transactions;
    /// Pre-funded balances; present only in the genesis block.
    std::map<Address, std::uint64_t> alloc;
    Hash32 hash = kZeroHash;

    Bytes header_preimage() const;
    Hash32 compute_hash() const;

    /// One canonical JSON object, alphabetical keys, compact dump; the
    /// chain dump file is one such object per line.
    nlohmann::ordered_json to_json() const;
    static Result<Block> from_json(const nlohmann::ordered_json& j);
};

} // namespace rbn

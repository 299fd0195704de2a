#include "rbn/block.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

Bytes Block::header_preimage() const {
    ByteWriter w;
    w.tag("rbn:blk:v1");
    w.u64(height);
    w.raw(parent_hash);
    w.raw(miner.bytes());
    w.u64(reward);
    w.u32(difficulty);
    w.u64(nonce);
    w.raw(state_root);
    w.u32(static_cast<std::uint32_t>(alloc.size()));
    for (const auto& [addr, balance] : alloc) {
        w.raw(addr.bytes());
        w.u64(balance);
    }
    w.u32(static_cast<std::uint32_t>(transactions.size()));
    for (const SignedTransaction& tx : transactions) w.raw(tx.encode());
    return w.take();
}

Hash32 Block::compute_hash() const { return sha256(header_preimage()); }

nlohmann::ordered_json Block::to_json() const {
    nlohmann::ordered_json j;
    if (height == 0) {
        nlohmann::ordered_json a = nlohmann::ordered_json::object();
        for (const auto& [addr, balance] : alloc) a[addr.display()] = balance;
        j["alloc"] = a;
    }
    j["difficulty"] = difficulty;
    j["hash"] = hash_hex(hash);
    j["height"] = height;
    j["miner"] = miner.display();
    j["nonce"] = nonce;
    j["parent_hash"] = hash_hex(parent_hash);
    j["reward"] = reward;
    j["state_root"] = hash_hex(state_root);
    j["transactions"] = nlohmann::ordered_json::array();
    for (const SignedTransaction& tx : transactions) j["transactions"].push_back(tx.to_json());
    return j;
}

Result<Block> Block::from_json(const nlohmann::ordered_json& j) {
    auto fail = [](std::string msg) { return Result<Block>::err(Errc::FormatError, std::move(msg)); };
    if (!j.is_object()) return fail("block must be object");

    Block b;
    if (!j.contains("height") || !j["height"].is_number_unsigned()) return fail("bad height");
    b.height = j["height"].get<std::uint64_t>();

    std::size_t expected_fields = b.height == 0 ? 10 : 9;
    if (j.size() != expected_fields) return fail("unexpected block fields");

    if (b.height == 0) {
        if (!j.contains("alloc") || !j["alloc"].is_object()) return fail("genesis needs alloc");
        std::string prev;
        bool first = true;
        for (auto it = j["alloc"].begin(); it != j["alloc"].end(); ++it) {
            if (!first && !(prev < it.key())) return fail("alloc keys not sorted");
            first = false;
            prev = it.key();
            auto addr = Address::parse(it.key());
            if (addr.is_err()) return fail("bad alloc address");
            if (!it.value().is_number_unsigned()) return fail("bad alloc balance");
            b.alloc[addr.value()] = it.value().get<std::uint64_t>();
        }
    } else if (j.contains("alloc")) {
        return fail("alloc only allowed at height 0");
    }

    if (!j.contains("difficulty") || !j["difficulty"].is_number_unsigned()) return fail("bad difficulty");
    b.difficulty = j["difficulty"].get<std::uint32_t>();

    if (!j.contains("hash") || !j["hash"].is_string()) return fail("bad hash");
    auto h = hash_from_hex(j["hash"].get<std::string>());
    if (!h) return fail("hash not 32-byte hex");
    b.hash = *h;

    if (!j.contains("miner") || !j["miner"].is_string()) return fail("bad miner");
    auto miner = Address::parse(j["miner"].get<std::string>());
    if (miner.is_err()) return fail("bad miner address");
    b.miner = miner.value();

    if (!j.contains("nonce") || !j["nonce"].is_number_unsigned()) return fail("bad nonce");
    b.nonce = j["nonce"].get<std::uint64_t>();

    if (!j.contains("parent_hash") || !j["parent_hash"].is_string()) return fail("bad parent_hash");
    auto ph = hash_from_hex(j["parent_hash"].get<std::string>());
    if (!ph) return fail("parent_hash not 32-byte hex");
    b.parent_hash = *ph;

    if (!j.contains("reward") || !j["reward"].is_number_unsigned()) return fail("bad reward");
    b.reward = j["reward"].get<std::uint64_t>();

    if (!j.contains("state_root") || !j["state_root"].is_string()) return fail("bad state_root");
    auto sr = hash_from_hex(j["state_root"].get<std::string>());
    if (!sr) return fail("state_root not 32-byte hex");
    b.state_root = *sr;

    if (!j.contains("transactions") || !j["transactions"].is_array()) return fail("bad transactions");
    for (const auto& tj : j["transactions"]) {
        auto tx = SignedTransaction::from_json(tj);
        if (tx.is_err()) return tx.error();
        b.transactions.push_back(tx.take());
    }
    return b;
}

} // namespace rbn

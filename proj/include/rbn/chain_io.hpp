#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rbn/ledger.hpp"

namespace rbn {

struct Violation {
    std::uint64_t height = 0;
    std::string reason;
};

/// Outcome of validating a chain (from memory or from a dump). When the
/// chain is valid, `ledger` holds the fully replayed state.
struct ValidationReport {
    bool valid = false;
    std::optional<Violation> violation;
    std::uint64_t height = 0;
    std::unique_ptr<Ledger> ledger;
};

/// Strict parse of a JSON-lines chain dump. Every line must re-serialize
/// byte-identically (canonical form), the file must end with a newline,
/// and heights must be consecutive from 0 — anything else is a
/// FormatError naming the offending line.
Result<std::vector<Block>> parse_chain_dump(std::string_view text);

/// Replays the blocks from genesis, checking hashes, linkage, difficulty,
/// signatures, nonces and per-block state roots.
ValidationReport validate_blocks(const std::vector<Block>& blocks);

/// parse + validate; parse failures are reported as a violation at the
/// offending line.
ValidationReport validate_dump(std::string_view text);

} // namespace rbn

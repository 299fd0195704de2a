#include "rbn/chain_io.hpp"

#include <nlohmann/json.hpp>

namespace rbn {

Result<std::vector<Block>> parse_chain_dump(std::string_view text) {
    using R = Result<std::vector<Block>>;
    if (text.empty()) return R::err(Errc::FormatError, "empty dump");
    if (text.back() != '\n') return R::err(Errc::FormatError, "dump does not end with newline");

    std::vector<Block> blocks;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty())
            return R::err(Errc::FormatError, "line " + std::to_string(line_no) + ": empty line");

        nlohmann::ordered_json j =
            nlohmann::ordered_json::parse(line, /*cb=*/nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded())
            return R::err(Errc::FormatError,
                          "line " + std::to_string(line_no) + ": not valid JSON");
        auto block = Block::from_json(j);
        if (block.is_err())
            return R::err(Errc::FormatError, "line " + std::to_string(line_no) + ": " +
                                                 block.error().message);
        // canonical round-trip: any non-canonical byte is a format error
        if (block.value().to_json().dump() != line)
            return R::err(Errc::FormatError,
                          "line " + std::to_string(line_no) + ": not in canonical form");
        if (block.value().height != line_no)
            return R::err(Errc::FormatError, "line " + std::to_string(line_no) +
                                                 ": height out of sequence");
        blocks.push_back(block.take());
        ++line_no;
    }
    if (blocks.empty()) return R::err(Errc::FormatError, "no blocks in dump");
    return blocks;
}

ValidationReport validate_blocks(const std::vector<Block>& blocks) {
    ValidationReport report;
    if (blocks.empty() || blocks[0].height != 0) {
        report.violation = Violation{0, "missing genesis block"};
        return report;
    }

    GenesisConfig config;
    config.alloc = blocks[0].alloc;
    config.difficulty = blocks[0].difficulty;
    config.block_reward = blocks.size() > 1 ? blocks[1].reward : 0;
    auto ledger = std::make_unique<Ledger>(config);

    // The genesis block is fully determined by its allocation; anything
    // else (nonce, reward, state root, hash) must match the rebuilt one.
    if (ledger->blocks()[0].to_json().dump() != blocks[0].to_json().dump()) {
        report.violation = Violation{0, "genesis block does not match its allocation"};
        return report;
    }

    for (std::size_t i = 1; i < blocks.size(); ++i) {
        auto applied = ledger->apply_external_block(blocks[i]);
        if (applied.is_err()) {
            report.violation = Violation{blocks[i].height, applied.error().message};
            report.height = i - 1;
            return report;
        }
    }
    report.valid = true;
    report.height = blocks.back().height;
    report.ledger = std::move(ledger);
    return report;
}

ValidationReport validate_dump(std::string_view text) {
    auto blocks = parse_chain_dump(text);
    if (blocks.is_err()) {
        ValidationReport report;
        report.violation = Violation{0, blocks.error().to_string()};
        return report;
    }
    return validate_blocks(blocks.value());
}

} // namespace rbn

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbn/did.hpp"
#include "rbn/keys.hpp"
#include "rbn/ledger.hpp"
#include "rbn/oracle.hpp"

namespace rbn {

/// One declared participant. Keys derive from the scenario seed and the
/// alias unless the script pins an explicit key_seed, so changing the
/// top-level seed re-addresses every agent.
struct ScenarioAgent {
    std::string alias;
    std::string role;
    KeyPair keys;
    Address address;
};

/// One timed action. `raw` keeps the original JSON for the transcript.
struct ScenarioStep {
    std::uint64_t tick = 0;
    std::string agent;
    std::string action; // transfer | deploy | call | attest | register_did
    nlohmann::ordered_json raw;
};

/// Parsed, fully resolved script. Alias references ("@name") inside
/// steps resolve against agents and previously deployed contract
/// aliases.
struct ScenarioScript {
    std::string name;
    Seed seed{};
    std::uint64_t block_reward = 50;
    std::uint32_t difficulty = 0;
    std::uint64_t ticks = 0;
    std::vector<std::pair<std::string, std::uint64_t>> genesis; // alias, balance
    std::vector<ScenarioAgent> agents;
    std::vector<ScenarioStep> steps;
    std::vector<nlohmann::ordered_json> expected;
    std::string miner_alias;

    const ScenarioAgent* find_agent(std::string_view alias) const;
};

Result<ScenarioScript> parse_scenario(std::string_view text);
Result<ScenarioScript> load_scenario(const std::string& path);

struct StepRecord {
    std::uint64_t tick = 0;
    std::string agent;
    std::string action;
    bool ok = false;
    std::string detail;
};

struct AssertionRecord {
    std::string description;
    bool ok = false;
    nlohmann::ordered_json actual;
};

/// Deterministic run output: two runs of the same script produce
/// byte-identical transcript_text() and chain dumps.
struct RunTranscript {
    bool all_pass = false;
    std::string dump; // JSON-lines chain dump
    std::string chain_sha256;
    std::string state_root;
    std::uint64_t height = 0;
    std::vector<StepRecord> steps;
    std::vector<AssertionRecord> assertions;
    std::map<std::string, std::uint64_t> final_balances;        // by agent alias
    std::map<std::string, nlohmann::ordered_json> contracts;    // by contract alias
    std::vector<nlohmann::ordered_json> events;

    nlohmann::ordered_json to_json() const;
    std::string transcript_text() const; // canonical, newline-terminated
};

RunTranscript run_scenario(const ScenarioScript& script);

} // namespace rbn

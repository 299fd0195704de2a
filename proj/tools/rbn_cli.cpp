// Command-line front end: key generation, scenario runs, chain dump
// validation, event queries and replay. Exit codes: 0 success / valid,
// 1 assertion or validation failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rbn/chain_io.hpp"
#include "rbn/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_keygen(const std::string& seed_hex, bool json_out) {
    auto seed = rbn::from_hex(seed_hex);
    if (!seed || seed->size() != rbn::kSeedSize) {
        std::cerr << "keygen: seed must be 64 lowercase hex chars (32 bytes)\n";
        return kExitUsage;
    }
    auto kp = rbn::generate_keypair(*seed);
    if (kp.is_err()) {
        std::cerr << "keygen: " << kp.error().to_string() << "\n";
        return kExitUsage;
    }
    rbn::Address addr = rbn::derive_address(kp.value().public_key);
    if (json_out) {
        nlohmann::ordered_json j;
        j["address"] = addr.display();
        j["did"] = rbn::did_for_address(addr);
        j["public_key"] = rbn::to_hex(kp.value().public_key);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "address    " << addr.display() << "\n";
        std::cout << "did        " << rbn::did_for_address(addr) << "\n";
        std::cout << "public_key " << rbn::to_hex(kp.value().public_key) << "\n";
    }
    return kExitOk;
}

int cmd_scenario_run(const std::string& path, const std::string& dump_path,
                     const std::string& transcript_path, bool json_out) {
    auto script = rbn::load_scenario(path);
    if (script.is_err()) {
        std::cerr << "scenario run: " << script.error().to_string() << "\n";
        return kExitUsage;
    }
    rbn::RunTranscript t = rbn::run_scenario(script.value());

    if (!dump_path.empty()) {
        std::ofstream out(dump_path, std::ios::binary);
        out << t.dump;
    }
    if (!transcript_path.empty()) {
        std::ofstream out(transcript_path, std::ios::binary);
        out << t.transcript_text();
    }

    if (json_out) {
        std::cout << t.transcript_text();
    } else {
        for (const rbn::StepRecord& s : t.steps)
            std::cout << "step tick=" << s.tick << " " << s.agent << " " << s.action << " "
                      << (s.ok ? "ok" : "FAILED") << " (" << s.detail << ")\n";
        for (const rbn::AssertionRecord& a : t.assertions)
            std::cout << (a.ok ? "PASS " : "FAIL ") << a.description
                      << " (actual " << a.actual.dump() << ")\n";
        std::cout << "height " << t.height << ", " << t.assertions.size() << " assertions, "
                  << (t.all_pass ? "all passed" : "FAILURES") << "\n";
    }
    return t.all_pass ? kExitOk : kExitFailure;
}

int cmd_chain_validate(const std::string& path, bool json_out) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "chain validate: cannot open " << path << "\n";
        return kExitUsage;
    }
    rbn::ValidationReport report = rbn::validate_dump(*text);
    if (json_out) {
        nlohmann::ordered_json j;
        j["valid"] = report.valid;
        if (report.violation) {
            j["violation_height"] = report.violation->height;
            j["violation_reason"] = report.violation->reason;
        }
        std::cout << j.dump() << "\n";
    } else if (report.valid) {
        std::cout << "valid chain, height " << report.height << "\n";
    } else {
        std::cout << "INVALID at height " << report.violation->height << ": "
                  << report.violation->reason << "\n";
    }
    return report.valid ? kExitOk : kExitFailure;
}

int cmd_chain_events(const std::string& path, const std::string& contract,
                     const std::string& name, bool json_out) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "chain events: cannot open " << path << "\n";
        return kExitUsage;
    }
    rbn::ValidationReport report = rbn::validate_dump(*text);
    if (!report.valid) {
        std::cerr << "chain events: invalid dump at height " << report.violation->height << ": "
                  << report.violation->reason << "\n";
        return kExitFailure;
    }
    std::optional<rbn::Address> contract_filter;
    if (!contract.empty()) {
        auto addr = rbn::Address::parse(contract);
        if (addr.is_err()) {
            std::cerr << "chain events: " << addr.error().to_string() << "\n";
            return kExitUsage;
        }
        contract_filter = addr.value();
    }
    std::optional<std::string> name_filter;
    if (!name.empty()) name_filter = name;

    auto events = report.ledger->query_events(contract_filter, name_filter);
    for (const rbn::ChainEvent& ev : events) {
        if (json_out) {
            std::cout << ev.to_json().dump() << "\n";
        } else {
            std::cout << "height=" << ev.height << " contract=" << ev.contract.display() << " "
                      << ev.name << " " << rbn::field_map_to_json(ev.fields).dump() << "\n";
        }
    }
    return kExitOk;
}

int cmd_replay(const std::string& path, bool json_out) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "replay: cannot open " << path << "\n";
        return kExitUsage;
    }
    rbn::ValidationReport report = rbn::validate_dump(*text);
    if (json_out) {
        nlohmann::ordered_json j;
        j["valid"] = report.valid;
        if (report.valid) {
            j["height"] = report.height;
            j["state"] = report.ledger->state_json();
            j["state_root"] = rbn::hash_hex(report.ledger->state_root());
        } else {
            j["violation_height"] = report.violation->height;
            j["violation_reason"] = report.violation->reason;
        }
        std::cout << j.dump() << "\n";
    } else if (report.valid) {
        std::cout << "replayed " << report.height + 1 << " blocks, final state root "
                  << rbn::hash_hex(report.ledger->state_root()) << "\n";
    } else {
        std::cout << "REPLAY FAILED at height " << report.violation->height << ": "
                  << report.violation->reason << "\n";
    }
    return report.valid ? kExitOk : kExitFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale ledger, smart contracts and scenario harness"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "emit JSON instead of text");

    std::string seed_hex;
    auto* keygen = app.add_subcommand("keygen", "derive a keypair and address from a seed");
    keygen->add_option("--seed", seed_hex, "32-byte seed, lowercase hex")->required();

    auto* scenario = app.add_subcommand("scenario", "scenario operations");
    scenario->require_subcommand(1);
    std::string scenario_path, dump_path, transcript_path;
    auto* scenario_run = scenario->add_subcommand("run", "run a scenario script");
    scenario_run->add_option("file", scenario_path, "scenario JSON file")->required();
    scenario_run->add_option("--dump", dump_path, "write the chain dump here");
    scenario_run->add_option("--transcript", transcript_path, "write the transcript here");

    auto* chain = app.add_subcommand("chain", "chain dump operations");
    chain->require_subcommand(1);
    std::string chain_path;
    auto* chain_validate = chain->add_subcommand("validate", "validate a chain dump");
    chain_validate->add_option("dump", chain_path, "chain dump file")->required();
    std::string events_path, events_contract, events_name;
    auto* chain_events = chain->add_subcommand("events", "list events from a chain dump");
    chain_events->add_option("dump", events_path, "chain dump file")->required();
    chain_events->add_option("--contract", events_contract, "filter by contract address");
    chain_events->add_option("--name", events_name, "filter by event name");

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "re-execute a chain dump from genesis");
    replay->add_option("dump", replay_path, "chain dump file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (keygen->parsed()) return cmd_keygen(seed_hex, json_out);
    if (scenario_run->parsed())
        return cmd_scenario_run(scenario_path, dump_path, transcript_path, json_out);
    if (chain_validate->parsed()) return cmd_chain_validate(chain_path, json_out);
    if (chain_events->parsed())
        return cmd_chain_events(events_path, events_contract, events_name, json_out);
    if (replay->parsed()) return cmd_replay(replay_path, json_out);
    return kExitUsage;
}

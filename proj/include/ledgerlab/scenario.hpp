#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ledgerlab/epistemics.hpp"
#include "ledgerlab/fraud_sim.hpp"
#include "ledgerlab/garbage.hpp"

namespace ledgerlab {

struct ScenarioConfig {
    std::string name = "default";
    std::uint64_t seed = 42;
    int k = 4;
    double theta = 0.75;
    double prior_alpha = 1.0;
    double prior_beta = 1.0;
    std::string ledger_out;  // empty: do not write
    std::string report_out;  // empty: do not write
};

// Validates every downstream constraint up front (k range, theta range,
// positive priors); throws the matching module error.
void validate_config(const ScenarioConfig& config);

// Reads a config JSON file; missing fields keep their defaults.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

struct ChainStats {
    std::uint64_t length = 0;
    std::string tip_digest;
};

struct ScenarioReport {
    ScenarioConfig config;
    std::string generated_at;
    ChainStats chain;
    WitnessEvaluation witness;
    TruthStatistics truth;
    std::vector<std::uint64_t> survivors_per_round;
    std::vector<Agent> agents;  // one naive agent per recipient
    // Claim id -> "pass" or "fail(<leg>)". Stable ids so scripts can assert
    // on names: lemma_tamper_detection, lemma_immutability_not_truthfulness,
    // proposition_4.
    std::map<std::string, std::string> paper_claims;

    bool all_claims_pass() const;
};

// Runs the full pipeline deterministically; every verdict is re-derived from
// the produced chain and transcript at report time. Writes the ledger and
// report files when the config names them.
ScenarioReport run_scenario(const ScenarioConfig& config);

// Loads, re-canonicalizes and verifies a ledger file.
TamperReport verify_ledger_file(const std::filesystem::path& path);

enum class ReportFormat { Json, CsvSummary };

// Stable field ordering; csv-summary emits one row per agent.
void export_report(const ScenarioReport& report, const std::filesystem::path& path,
                   ReportFormat format);

std::string report_to_json_text(const ScenarioReport& report);
std::string report_to_csv_summary(const ScenarioReport& report);

// Report for one fraud run: witness, survivors per round, per-recipient views.
std::string fraud_report_json_text(const SchemeTranscript& transcript,
                                   const WitnessEvaluation& eval, double theta,
                                   std::uint64_t seed);

std::string tamper_report_json_text(const TamperReport& report);

}  // namespace ledgerlab

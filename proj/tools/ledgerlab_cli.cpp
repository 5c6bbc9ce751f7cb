// ledgerlab command-line front end.
//
// Subcommands mirror the library modules:
//   ledger verify|tamper     hash-link verification and the test mutation operator
//   fraud run                the predictive-fraud scheme end to end
//   garbage inject|audit     label-blind injection and permanence audits
//   scenario run             full pipeline with a machine-readable report
//
// Exit codes: 0 success, 1 verdict failure (a claim check failed),
// 2 usage or parse error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ledgerlab/errors.hpp"
#include "ledgerlab/fraud_sim.hpp"
#include "ledgerlab/garbage.hpp"
#include "ledgerlab/ledger_io.hpp"
#include "ledgerlab/scenario.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitUsage = 2;

int cmd_ledger_verify(const std::string& ledger_path) {
    const ledgerlab::TamperReport report = ledgerlab::verify_ledger_file(ledger_path);
    std::cout << ledgerlab::tamper_report_json_text(report);
    return report.valid ? kExitOk : kExitVerdictFailure;
}

int cmd_ledger_tamper(const std::string& ledger_path, std::uint64_t block_index,
                      std::uint64_t byte_offset, unsigned new_byte,
                      const std::string& out_path) {
    const ledgerlab::Chain chain = ledgerlab::load_ledger(ledger_path);
    const ledgerlab::Chain mutated = ledgerlab::tamper(
        chain, block_index, byte_offset, static_cast<std::uint8_t>(new_byte & 0xFF));
    const std::string target = out_path.empty() ? ledger_path : out_path;
    ledgerlab::save_ledger(mutated, target);

    const ledgerlab::TamperReport report = ledgerlab::verify_chain(mutated);
    std::cout << ledgerlab::tamper_report_json_text(report);
    return kExitOk;
}

int cmd_fraud_run(int k, double theta, std::uint64_t seed, const std::string& ledger_out,
                  const std::string& report_out) {
    const ledgerlab::SchemeTranscript transcript = ledgerlab::run_scheme(k, theta, seed);
    const ledgerlab::WitnessEvaluation eval = ledgerlab::evaluate_witness(transcript, theta);

    if (!ledger_out.empty()) ledgerlab::save_ledger(transcript.chain, ledger_out);
    const std::string report = ledgerlab::fraud_report_json_text(transcript, eval, theta, seed);
    if (!report_out.empty()) ledgerlab::atomic_write_file(report_out, report);
    std::cout << report;

    return eval.succeeded() ? kExitOk : kExitVerdictFailure;
}

int cmd_garbage_inject(const std::string& ledger_path, const std::string& spec_path) {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) throw ledgerlab::IoError("cannot open spec file " + spec_path);
    json spec = json::parse(in, nullptr, false);
    if (spec.is_discarded()) throw ledgerlab::ParseError(0, "spec file is not valid JSON");

    std::vector<ledgerlab::Record> records;
    ledgerlab::Tick timestamp = 0;
    try {
        timestamp = spec.value("timestamp", ledgerlab::Tick{0});
        for (const json& rj : spec.at("records")) {
            ledgerlab::Record rec;
            rec.id = rj.at("id").get<std::string>();
            rec.kind = rj.contains("kind")
                           ? ledgerlab::record_kind_from_string(rj.at("kind").get<std::string>())
                           : ledgerlab::RecordKind::Garbage;
            if (rj.contains("payload_text")) {
                const auto text = rj.at("payload_text").get<std::string>();
                rec.payload.assign(text.begin(), text.end());
            } else {
                rec.payload = ledgerlab::base64_decode(rj.at("payload").get<std::string>());
            }
            rec.truth_label =
                ledgerlab::truth_label_from_string(rj.value("truth_label", "unknown"));
            records.push_back(std::move(rec));
        }
    } catch (const json::exception& e) {
        throw ledgerlab::ParseError(0, std::string("bad spec: ") + e.what());
    }

    const ledgerlab::Chain chain = ledgerlab::load_ledger(ledger_path);
    const ledgerlab::Chain grown = ledgerlab::inject(chain, std::move(records), timestamp);
    ledgerlab::save_ledger(grown, ledger_path);

    std::cout << json{{"appended_block", grown.tip().index},
                      {"records", grown.tip().records.size()}}
                     .dump(2)
              << "\n";
    return kExitOk;
}

int cmd_garbage_audit(const std::string& ledger_path, const std::string& record_id,
                      const std::optional<std::string>& expect_payload_b64) {
    const ledgerlab::Chain chain = ledgerlab::load_ledger(ledger_path);

    // Without a caller-supplied original the audit degrades to a presence
    // check; byte_identical is only reported when there is something to
    // compare against.
    ledgerlab::Record original;
    original.id = record_id;
    const bool have_expectation = expect_payload_b64.has_value();
    if (have_expectation) original.payload = ledgerlab::base64_decode(*expect_payload_b64);

    const ledgerlab::PermanenceAudit audit =
        ledgerlab::audit_permanence(chain, record_id, original);

    json j{{"record_id", audit.record_id},
           {"present", audit.present},
           {"truth_label", audit.present ? ledgerlab::to_string(audit.truth_label) : "unknown"}};
    if (audit.block_index) {
        j["block_index"] = *audit.block_index;
    } else {
        j["block_index"] = nullptr;
    }
    if (have_expectation) j["byte_identical"] = audit.byte_identical;
    std::cout << j.dump(2) << "\n";

    const bool ok = audit.present && (!have_expectation || audit.byte_identical);
    return ok ? kExitOk : kExitVerdictFailure;
}

int cmd_scenario_run(ledgerlab::ScenarioConfig config, const std::string& format,
                     const std::string& report_out) {
    if (format != "json" && format != "csv-summary")
        throw CLI::ValidationError("--format", "expected 'json' or 'csv-summary'");

    const ledgerlab::ScenarioReport report = ledgerlab::run_scenario(config);

    if (format == "csv-summary") {
        const std::string csv = ledgerlab::report_to_csv_summary(report);
        if (!report_out.empty())
            ledgerlab::export_report(report, report_out, ledgerlab::ReportFormat::CsvSummary);
        std::cout << csv;
    } else {
        std::cout << ledgerlab::report_to_json_text(report);
    }

    for (const auto& [claim, verdict] : report.paper_claims)
        std::cerr << claim << ": " << verdict << "\n";

    return report.all_claims_pass() ? kExitOk : kExitVerdictFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ledgerlab: append-only hash-chain ledger and adversary simulations"};
    app.require_subcommand(1);

    // ledger verify|tamper
    auto* ledger = app.add_subcommand("ledger", "inspect and mutate ledger files");
    ledger->require_subcommand(1);

    std::string verify_path;
    auto* verify = ledger->add_subcommand("verify", "verify hash links of a ledger file");
    verify->add_option("--ledger", verify_path, "ledger JSONL file")->required();

    std::string tamper_path, tamper_out;
    std::uint64_t tamper_block = 0, tamper_offset = 0;
    unsigned tamper_byte = 0;
    auto* tamper_cmd = ledger->add_subcommand("tamper", "flip one payload byte of a block");
    tamper_cmd->add_option("--ledger", tamper_path, "ledger JSONL file")->required();
    tamper_cmd->add_option("--block", tamper_block, "block index")->required();
    tamper_cmd->add_option("--offset", tamper_offset, "payload byte offset")->required();
    tamper_cmd->add_option("--byte", tamper_byte, "replacement byte value (0-255)")
        ->required()
        ->check(CLI::Range(0u, 255u));
    tamper_cmd->add_option("--out", tamper_out, "output path (default: in place)");

    // fraud run
    auto* fraud = app.add_subcommand("fraud", "predictive-fraud scheme");
    fraud->require_subcommand(1);

    int fraud_k = 4;
    double fraud_theta = 0.75;
    std::uint64_t fraud_seed = 42;
    std::string fraud_ledger_out, fraud_report_out;
    auto* fraud_run = fraud->add_subcommand("run", "run the scheme and report the witness");
    fraud_run->add_option("--k", fraud_k, "rounds; 2^k initial recipients")->required();
    fraud_run->add_option("--theta", fraud_theta, "trust threshold")->required();
    fraud_run->add_option("--seed", fraud_seed, "RNG seed");
    fraud_run->add_option("--ledger-out", fraud_ledger_out, "write the chain as JSONL");
    fraud_run->add_option("--report-out", fraud_report_out, "write the run report JSON");

    // garbage inject|audit
    auto* garbage = app.add_subcommand("garbage", "label-blind records and permanence audits");
    garbage->require_subcommand(1);

    std::string inject_ledger, inject_spec;
    auto* inject_cmd = garbage->add_subcommand("inject", "append records from a spec JSON");
    inject_cmd->add_option("--ledger", inject_ledger, "ledger JSONL file (updated in place)")
        ->required();
    inject_cmd->add_option("--spec", inject_spec, "JSON: {timestamp, records:[...]}")->required();

    std::string audit_ledger, audit_id;
    std::string audit_expect;
    auto* audit_cmd = garbage->add_subcommand("audit", "check a record is retrievable unchanged");
    audit_cmd->add_option("--ledger", audit_ledger, "ledger JSONL file")->required();
    audit_cmd->add_option("--id", audit_id, "record id")->required();
    auto* expect_opt =
        audit_cmd->add_option("--expect-payload", audit_expect, "expected payload (base64)");

    // scenario run
    auto* scenario = app.add_subcommand("scenario", "scripted full-pipeline scenarios");
    scenario->require_subcommand(1);

    ledgerlab::ScenarioConfig defaults;
    std::string config_path, scenario_format = "json";
    std::string flag_name;
    std::uint64_t flag_seed = 0;
    int flag_k = 0;
    double flag_theta = 0, flag_alpha = 0, flag_beta = 0;
    std::string flag_ledger_out, flag_report_out;

    auto* scenario_run = scenario->add_subcommand("run", "run a scenario and print the report");
    scenario_run->add_option("--config", config_path, "config JSON file");
    auto* opt_name = scenario_run->add_option("--name", flag_name, "scenario name");
    auto* opt_seed = scenario_run->add_option("--seed", flag_seed, "RNG seed (flag > env > file)");
    auto* opt_k = scenario_run->add_option("--k", flag_k, "rounds");
    auto* opt_theta = scenario_run->add_option("--theta", flag_theta, "trust threshold");
    auto* opt_alpha = scenario_run->add_option("--prior-alpha", flag_alpha, "prior successes");
    auto* opt_beta = scenario_run->add_option("--prior-beta", flag_beta, "prior failures");
    auto* opt_ledger_out =
        scenario_run->add_option("--ledger-out", flag_ledger_out, "write the chain as JSONL");
    auto* opt_report_out =
        scenario_run->add_option("--report-out", flag_report_out, "write the report file");
    scenario_run->add_option("--format", scenario_format, "json or csv-summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_ledger_verify(verify_path);
        if (tamper_cmd->parsed())
            return cmd_ledger_tamper(tamper_path, tamper_block, tamper_offset, tamper_byte,
                                     tamper_out);
        if (fraud_run->parsed())
            return cmd_fraud_run(fraud_k, fraud_theta, fraud_seed, fraud_ledger_out,
                                 fraud_report_out);
        if (inject_cmd->parsed()) return cmd_garbage_inject(inject_ledger, inject_spec);
        if (audit_cmd->parsed()) {
            std::optional<std::string> expectation;
            if (expect_opt->count() > 0) expectation = audit_expect;
            return cmd_garbage_audit(audit_ledger, audit_id, expectation);
        }
        if (scenario_run->parsed()) {
            ledgerlab::ScenarioConfig config = defaults;
            if (!config_path.empty()) config = ledgerlab::load_scenario_config(config_path);

            // Seed precedence: flag > LEDGERLAB_SEED env > config file.
            if (const char* env_seed = std::getenv("LEDGERLAB_SEED")) {
                try {
                    config.seed = std::stoull(env_seed);
                } catch (const std::exception&) {
                    throw ledgerlab::ParseError(0, "LEDGERLAB_SEED is not a valid integer");
                }
            }
            if (opt_seed->count() > 0) config.seed = flag_seed;
            if (opt_name->count() > 0) config.name = flag_name;
            if (opt_k->count() > 0) config.k = flag_k;
            if (opt_theta->count() > 0) config.theta = flag_theta;
            if (opt_alpha->count() > 0) config.prior_alpha = flag_alpha;
            if (opt_beta->count() > 0) config.prior_beta = flag_beta;
            if (opt_ledger_out->count() > 0) config.ledger_out = flag_ledger_out;
            if (opt_report_out->count() > 0) config.report_out = flag_report_out;

            // The CLI owns format selection; JSON report file writing happens
            // inside run_scenario only when report_out is set and format=json.
            const std::string report_out = config.report_out;
            if (scenario_format == "csv-summary") config.report_out.clear();
            return cmd_scenario_run(config, scenario_format, report_out);
        }
        std::cerr << "no subcommand parsed\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ledgerlab::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ledgerlab::OutOfRange& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ledgerlab::IoError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ledgerlab::WitnessFailed& e) {
        std::cerr << e.what() << "\n";
        return kExitVerdictFailure;
    } catch (const ledgerlab::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
}

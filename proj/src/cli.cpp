#include "scaas/cli.hpp"

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scaas/monitor.hpp"
#include "scaas/serialize.hpp"

namespace scaas::cli {

namespace {

bool is_validation(ErrorCode code) {
    return code == ErrorCode::InvalidConfig || code == ErrorCode::MalformedLog || code == ErrorCode::InvalidTerms;
}

/// Cross-checks the report against totals rebuilt from the event log alone.
std::optional<std::string> audit_mismatch(const RunReport& report, const Chain& chain) {
    const EventAudit audit = audit_events(chain.ledger().events(), report.num_periods);
    for (const auto& row : report.rows) {
        const auto it = audit.scps.find(row.address);
        if (it == audit.scps.end()) return row.label + ": no events";
        const ScpAudit& a = it->second;
        if (a.earned != row.earned || a.penalized != row.penalized || a.withdrawn != row.withdrawn ||
            a.credit != row.final_credit || a.active != row.active || a.breaches != row.breaches ||
            a.removal_period != row.removal_period || a.strikes_timeline != row.strikes_timeline)
            return row.label + ": report disagrees with event log";
    }
    if (audit.deposits != report.contract.deposits || audit.withdrawn != report.contract.withdrawn ||
        audit.recovered != report.contract.recovered)
        return std::string("contract totals disagree with event log");
    if (audit.breach_events != report.breaches_delivered) return std::string("breach count disagrees with event log");
    return std::nullopt;
}

} // namespace

int cmd_run(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed_override, std::ostream& diag) {
    ScenarioConfig config;
    try {
        config = load_scenario(config_path);
        if (seed_override) config.seed = *seed_override;
    } catch (const Error& e) {
        diag << "error: " << e.what() << '\n';
        return kValidationFailure;
    }

    std::optional<ScenarioRun> run;
    try {
        run.emplace(run_scenario(config));
    } catch (const Error& e) {
        diag << "error: " << e.what() << '\n';
        return is_validation(e.code()) ? kValidationFailure : kRuntimeAbort;
    }
    if (auto bad = audit_mismatch(run->report, run->chain)) {
        diag << "error: " << *bad << '\n';
        return kRuntimeAbort;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    std::ofstream json(out_dir / kReportJson);
    std::ofstream csv(out_dir / kReportCsv);
    std::ofstream log(out_dir / kTxLog);
    if (!json || !csv || !log) {
        diag << "error: cannot write into " << out_dir.string() << '\n';
        return kRuntimeAbort;
    }
    json << report_to_json(run->report).dump(2) << '\n';
    write_report_csv(csv, run->report);
    write_txlog(log, run->chain.log(), run->report.digest);
    json.close();
    csv.close();
    log.close();
    if (!json || !csv || !log) {
        diag << "error: failed writing reports into " << out_dir.string() << '\n';
        return kRuntimeAbort;
    }

    diag << "run: " << run->report.num_periods << " periods, " << run->report.rows.size() << " SCPs, "
         << run->report.event_count << " events, " << run->report.breaches_delivered << " breaches\n"
         << "digest: " << run->report.digest << '\n';
    return kOk;
}

int cmd_replay(const std::filesystem::path& log_path, std::ostream& diag) {
    std::ifstream in(log_path);
    if (!in) {
        diag << "error: cannot open " << log_path.string() << '\n';
        return kValidationFailure;
    }
    TxLogFile file;
    try {
        file = read_txlog(in);
    } catch (const Error& e) {
        diag << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    const ReplayResult result = replay(file.transactions);
    const std::string digest = result.chain.snapshot();
    diag << "digest: " << digest << '\n';
    if (digest != file.digest) {
        diag << "error: DigestMismatch: log header records " << file.digest << '\n';
        return kValidationFailure;
    }
    if (!result.rejected.empty()) {
        diag << "error: " << result.rejected.size() << " logged transaction(s) rejected on replay, first at entry "
             << result.rejected.front() << '\n';
        return kValidationFailure;
    }
    diag << "replay: " << file.transactions.size() << " transactions, digest matches\n";
    return kOk;
}

int cmd_verify(unsigned bound, std::ostream& diag, const StrikeRunner& runner) {
    if (bound > kMaxVerifyBound) {
        diag << "error: bound " << bound << " exceeds maximum " << kMaxVerifyBound << '\n';
        return kValidationFailure;
    }

    struct Sweep {
        std::uint32_t limit;
        std::uint32_t max_reports;
        unsigned length;
    };
    const unsigned multi = std::min(bound, 6u);
    const Sweep sweeps[] = {{3, 1, bound}, {1, 1, bound}, {2, 1, bound}, {4, 1, bound}, {3, 2, multi}};
    for (const auto& s : sweeps) {
        const StrikeCheck check = check_strike_rule(s.length, s.limit, s.max_reports, runner);
        if (check.counterexample) {
            diag << "counterexample: " << check.counterexample->describe() << '\n';
            return kCounterexample;
        }
        diag << "strike rule: limit " << s.limit << ", up to " << s.max_reports << " report(s)/period, length <= "
             << s.length << ": " << check.sequences_checked << " sequences ok\n";
    }

    const FuzzResult fuzz = fuzz_conservation(kVerifyFuzzSeed, kVerifyFuzzOps);
    if (fuzz.violation) {
        diag << "counterexample: conservation fuzz " << *fuzz.violation << '\n';
        return kCounterexample;
    }
    diag << "conservation: " << fuzz.committed << " committed, " << fuzz.rejected << " rejected over "
         << fuzz.episodes << " episodes, all invariants held\n";
    return kOk;
}

int main(int argc, char** argv) {
    CLI::App app{"Small-cell SLA contract simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "Run a scenario and write reports");
    run->add_option("--config", config_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--seed", seed, "Override the scenario seed");

    std::string log_path;
    auto* rep = app.add_subcommand("replay", "Replay a transaction log and check its digest");
    rep->add_option("--log", log_path, "Transaction log (txlog.jsonl)")->required();

    unsigned bound = 8;
    auto* ver = app.add_subcommand("verify", "Exhaustive strike-rule check and conservation fuzz");
    ver->add_option("--bound", bound, "Maximum sequence length")->check(CLI::Range(0u, 1000u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        return kValidationFailure;
    }

    if (*run) return cmd_run(config_path, out_dir, seed, std::cerr);
    if (*rep) return cmd_replay(log_path, std::cerr);
    return cmd_verify(bound, std::cerr);
}

} // namespace scaas::cli

#ifndef SCAAS_CLI_HPP
#define SCAAS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "scaas/verify.hpp"

namespace scaas::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kRuntimeAbort = 2,
    kCounterexample = 3,
};

inline constexpr unsigned kMaxVerifyBound = 12;
inline constexpr std::uint64_t kVerifyFuzzSeed = 0x5CAA5'0001;
inline constexpr std::uint64_t kVerifyFuzzOps = 10'000;

inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kTxLog = "txlog.jsonl";

/// Runs a scenario and writes report.json, report.csv and txlog.jsonl into `out_dir`.
int cmd_run(const std::filesystem::path& config, const std::filesystem::path& out_dir,
            std::optional<std::uint64_t> seed_override, std::ostream& diag);

/// Re-executes a transaction log; succeeds iff the digest matches its header.
int cmd_replay(const std::filesystem::path& log, std::ostream& diag);

/// Strike-rule oracle sweep up to `bound` periods plus the fixed-seed conservation fuzz.
int cmd_verify(unsigned bound, std::ostream& diag, const StrikeRunner& runner = contract_removal_period);

int main(int argc, char** argv);

} // namespace scaas::cli

#endif // SCAAS_CLI_HPP

#ifndef SCAAS_REPORT_HPP
#define SCAAS_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scaas/ledger.hpp"
#include "scaas/types.hpp"

namespace scaas {

struct ScpReportRow {
    std::string label;
    Address address;
    Funds earned = 0;
    Funds penalized = 0;
    Funds withdrawn = 0;
    Credit final_credit = 0;
    bool active = true;
    std::uint64_t breaches = 0;
    std::optional<Period> removal_period;
    std::vector<std::uint32_t> strikes_timeline; // consecutive strikes after each period close

    friend bool operator==(const ScpReportRow&, const ScpReportRow&) = default;
};

struct ContractSummary {
    Funds deposits = 0;
    Funds withdrawn = 0;
    Funds recovered = 0;
    Funds escrow_remaining = 0;
    bool disabled = false;

    friend bool operator==(const ContractSummary&, const ContractSummary&) = default;
};

struct RunReport {
    std::uint64_t seed = 0;
    std::uint64_t num_periods = 0;
    std::vector<ScpReportRow> rows;
    ContractSummary contract;
    std::uint64_t breaches_detected = 0;
    std::uint64_t breaches_delivered = 0;
    std::uint64_t event_count = 0;
    std::uint64_t transaction_count = 0;
    std::string digest;
    nlohmann::json config_echo;
};

/// CSV columns, in order. Frozen: golden files depend on them.
inline constexpr const char* kReportCsvHeader =
    "label,address,earned,penalized,withdrawn,final_credit,active,breaches,removal_period,final_strikes,max_strikes";

void write_report_csv(std::ostream& os, const RunReport& report);
nlohmann::ordered_json report_to_json(const RunReport& report);

/// Per-SCP state rebuilt from events only.
struct ScpAudit {
    bool active = true;
    Credit credit = 0;
    std::uint32_t strikes = 0;
    Funds earned = 0;
    Funds penalized = 0;
    Funds withdrawn = 0;
    std::uint64_t breaches = 0;
    std::optional<Period> removal_period;
    std::vector<std::uint32_t> strikes_timeline; // strikes after all events of period p, p < num_periods
    std::vector<Credit> archived_credits;
};

struct EventAudit {
    std::map<Address, ScpAudit> scps;
    Funds deposits = 0;
    Funds withdrawn = 0;
    Funds recovered = 0;
    bool disabled = false;
    std::uint64_t breach_events = 0;
};

/**
 * Replays the event log without touching the contract. Strikes follow the
 * per-period rule: the first InsufficientThroughput of a period adds a strike,
 * a PeriodicPayout in a period with no breach resets to zero.
 */
EventAudit audit_events(const std::vector<EventRecord>& events, std::uint64_t num_periods);

} // namespace scaas

#endif // SCAAS_REPORT_HPP

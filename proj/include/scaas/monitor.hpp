#ifndef SCAAS_MONITOR_HPP
#define SCAAS_MONITOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scaas/chain.hpp"
#include "scaas/report.hpp"
#include "scaas/scenario.hpp"

namespace scaas {

/// One measurement cell. With a one-period averaging window the two coincide.
struct KpiSample {
    std::uint64_t kb_served = 0;
    std::uint64_t measured_avg_throughput = 0;

    friend bool operator==(const KpiSample&, const KpiSample&) = default;
};

struct ScpSlice {
    std::string label;
    std::vector<std::pair<QciId, KpiSample>> samples; // ascending QCI
};

/// All measurements for one period, SCPs in scenario-declaration order.
struct PeriodSlice {
    Period period = 0;
    std::vector<ScpSlice> scps;
};

/**
 * Per-(period, SCP, QCI) served traffic and measured throughput.
 *
 * For each cell: base is drawn uniformly from
 * [floor(nominal*(den-num)/den), floor(nominal*(den+num)/den)] using
 * cell_draw(seed, period, scp_index, qci); the measured value is
 * floor(base * product of active degradation multipliers).
 */
class TrafficTrace {
public:
    TrafficTrace() = default;
    explicit TrafficTrace(const ScenarioConfig& config);

    std::uint64_t num_periods() const noexcept { return num_periods_; }
    std::size_t num_scps() const noexcept { return labels_.size(); }
    const std::vector<QciId>& qcis(std::size_t scp) const { return qcis_.at(scp); }
    const KpiSample& sample(Period period, std::size_t scp, QciId qci) const;
    PeriodSlice slice(Period period) const;

    friend bool operator==(const TrafficTrace&, const TrafficTrace&) = default;

private:
    std::uint64_t num_periods_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<QciId>> qcis_;
    std::vector<std::size_t> offsets_; // first cell of each SCP within one period
    std::size_t cells_per_period_ = 0;
    std::vector<KpiSample> cells_;     // [period][scp][qci]
};

/// Validates the config and builds its trace. Throws Error{InvalidConfig}.
TrafficTrace generate_trace(const ScenarioConfig& config);

struct BreachEntry {
    std::string label;
    QciId qci = 0;
    std::uint64_t deficit = 0;

    friend bool operator==(const BreachEntry&, const BreachEntry&) = default;
};

/// Entries where measured < agreed, ordered by (label, qci). Throws Error{UnknownQci}.
std::vector<BreachEntry> detect_breaches(const PeriodSlice& slice, const std::map<std::string, SlaTerms>& terms);

/// Addresses created for one scenario. `scps` is aligned with ScenarioConfig::scps.
struct Deployment {
    Address owner;
    Address contract;
    std::vector<Address> scps;
};

/// Funds the MNO, deploys the contract, makes the initial deposit and registers every SCP.
Deployment deploy_scenario(Chain& chain, const ScenarioConfig& config);

/**
 * Runs every period against an already deployed scenario: record traffic for
 * each active (SCP, QCI), report each detected breach, close the period.
 * Afterwards every SCP with positive credit withdraws, and when configured the
 * owner disables the contract and recovers unallocated escrow.
 *
 * Contract errors propagate; InsufficientEscrowForAccrual aborts the run with
 * the failing period in the message.
 */
RunReport drive(Chain& chain, const Deployment& deployment, const ScenarioConfig& config, const TrafficTrace& trace);

struct ScenarioRun {
    Chain chain;
    Deployment deployment;
    RunReport report;
};

ScenarioRun run_scenario(const ScenarioConfig& config);

} // namespace scaas

#endif // SCAAS_MONITOR_HPP

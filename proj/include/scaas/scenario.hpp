#ifndef SCAAS_SCENARIO_HPP
#define SCAAS_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scaas/contract.hpp"
#include "scaas/types.hpp"

namespace scaas {

/// QoS class characteristics. Carried into reports; settlement never reads them.
struct QciProfile {
    QciId qci = 0;
    bool guaranteed_bitrate = false;
    std::uint32_t priority = 0;
    std::uint32_t packet_delay_budget_ms = 0;
    Rational packet_loss_rate{0, 1};

    friend bool operator==(const QciProfile&, const QciProfile&) = default;
};

/// Standardized LTE QCI 1-9 characteristics.
const std::map<QciId, QciProfile>& standard_qci_profiles();

/// Throughput multiplier applied to periods [start, end], both inclusive.
struct DegradationWindow {
    Period start = 0;
    Period end = 0;
    Rational multiplier{1, 1};
};

struct TrafficModel {
    std::uint64_t nominal_kb_per_period = 0;
    Rational variability{0, 1};
    std::vector<DegradationWindow> degradations;
};

struct ScpScenario {
    std::string label;
    SlaTerms terms;
    std::map<QciId, TrafficModel> traffic; // one model per declared QCI
};

struct MnoFunding {
    Funds balance = 0;
    Funds initial_deposit = 0;
    Funds deposit_per_period = 0;
};

struct ScenarioConfig {
    std::uint64_t seed = 0;
    std::uint64_t num_periods = 0;
    MnoFunding mno;
    std::vector<ScpScenario> scps;
    std::map<QciId, QciProfile> qci_profiles = standard_qci_profiles();
    bool failsafe_at_end = false;

    /// Throws Error{InvalidConfig} naming the offending field.
    void validate() const;
};

ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioConfig& config);
/// Reads and validates a scenario file.
ScenarioConfig load_scenario(const std::filesystem::path& path);

} // namespace scaas

#endif // SCAAS_SCENARIO_HPP

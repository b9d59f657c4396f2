#include "scaas/monitor.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "scaas/rng.hpp"
#include "scaas/serialize.hpp"

namespace scaas {

namespace {

using u128 = unsigned __int128;

constexpr u128 kU64Max = std::numeric_limits<std::uint64_t>::max();

std::uint64_t scaled_floor(std::uint64_t value, std::uint64_t num, std::uint64_t den) {
    const u128 out = static_cast<u128>(value) * num / den;
    if (out > kU64Max) throw Error(ErrorCode::InvalidConfig, "traffic volume exceeds 64-bit range");
    return static_cast<std::uint64_t>(out);
}

std::uint64_t base_draw(const TrafficModel& m, std::uint64_t seed, Period period, std::size_t scp, QciId qci) {
    const Rational& v = m.variability;
    const std::uint64_t lo = scaled_floor(m.nominal_kb_per_period, v.den - v.num, v.den);
    const std::uint64_t hi = scaled_floor(m.nominal_kb_per_period, v.den + v.num, v.den);
    if (lo == hi) return lo;
    const std::uint64_t x = cell_draw(seed, period, scp, qci);
    return lo + static_cast<std::uint64_t>((static_cast<u128>(x) * (static_cast<u128>(hi - lo) + 1)) >> 64);
}

/// floor(base * product of multipliers active in `period`), computed exactly.
std::uint64_t degrade(std::uint64_t base, const TrafficModel& m, Period period) {
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (const auto& w : m.degradations) {
        if (period < w.start || period > w.end) continue;
        if (w.multiplier.num == 0) return 0;
        const u128 n = static_cast<u128>(num) * w.multiplier.num;
        const u128 d = static_cast<u128>(den) * w.multiplier.den;
        const u128 g = std::gcd(n, d);
        if (n / g > kU64Max || d / g > kU64Max)
            throw Error(ErrorCode::InvalidConfig, "degradation multipliers overflow 64-bit rational");
        num = static_cast<std::uint64_t>(n / g);
        den = static_cast<std::uint64_t>(d / g);
    }
    return static_cast<std::uint64_t>(static_cast<u128>(base) * num / den);
}

} // namespace

TrafficTrace::TrafficTrace(const ScenarioConfig& config) : num_periods_(config.num_periods) {
    config.validate();
    for (const auto& scp : config.scps) {
        labels_.push_back(scp.label);
        std::vector<QciId> qcis;
        for (const auto& [qci, _] : scp.traffic) qcis.push_back(qci);
        offsets_.push_back(cells_per_period_);
        cells_per_period_ += qcis.size();
        qcis_.push_back(std::move(qcis));
    }
    cells_.reserve(cells_per_period_ * num_periods_);
    for (Period p = 0; p < num_periods_; ++p)
        for (std::size_t s = 0; s < config.scps.size(); ++s)
            for (const auto& [qci, model] : config.scps[s].traffic) {
                const std::uint64_t measured = degrade(base_draw(model, config.seed, p, s, qci), model, p);
                cells_.push_back(KpiSample{measured, measured});
            }
}

const KpiSample& TrafficTrace::sample(Period period, std::size_t scp, QciId qci) const {
    const auto& qs = qcis_.at(scp);
    const auto it = std::lower_bound(qs.begin(), qs.end(), qci);
    if (period >= num_periods_ || it == qs.end() || *it != qci)
        throw Error(ErrorCode::UnknownQci, "no trace cell for qci " + std::to_string(qci));
    return cells_[period * cells_per_period_ + offsets_[scp] + static_cast<std::size_t>(it - qs.begin())];
}

PeriodSlice TrafficTrace::slice(Period period) const {
    PeriodSlice out;
    out.period = period;
    const std::size_t base = period * cells_per_period_;
    for (std::size_t s = 0; s < labels_.size(); ++s) {
        ScpSlice scp{labels_[s], {}};
        for (std::size_t i = 0; i < qcis_[s].size(); ++i)
            scp.samples.emplace_back(qcis_[s][i], cells_.at(base + offsets_[s] + i));
        out.scps.push_back(std::move(scp));
    }
    return out;
}

TrafficTrace generate_trace(const ScenarioConfig& config) { return TrafficTrace(config); }

std::vector<BreachEntry> detect_breaches(const PeriodSlice& slice, const std::map<std::string, SlaTerms>& terms) {
    std::vector<BreachEntry> out;
    for (const auto& scp : slice.scps) {
        const auto it = terms.find(scp.label);
        if (it == terms.end()) throw Error(ErrorCode::UnknownScp, "no terms for '" + scp.label + "'");
        for (const auto& [qci, kpi] : scp.samples) {
            const auto agreed = it->second.agreed_throughput.find(qci);
            if (agreed == it->second.agreed_throughput.end())
                throw Error(ErrorCode::UnknownQci, scp.label + ": qci " + std::to_string(qci));
            if (kpi.measured_avg_throughput < agreed->second)
                out.push_back({scp.label, qci, agreed->second - kpi.measured_avg_throughput});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const BreachEntry& a, const BreachEntry& b) { return std::tie(a.label, a.qci) < std::tie(b.label, b.qci); });
    return out;
}

Deployment deploy_scenario(Chain& chain, const ScenarioConfig& config) {
    config.validate();
    Deployment d;
    d.owner = chain.create_account(config.mno.balance);
    d.contract = chain.deploy(d.owner);
    if (config.mno.initial_deposit > 0) chain.deposit(d.owner, config.mno.initial_deposit);
    for (const auto& scp : config.scps) {
        const Address addr = chain.create_account(0);
        chain.register_scp(d.owner, addr, scp.terms);
        d.scps.push_back(addr);
    }
    return d;
}

RunReport drive(Chain& chain, const Deployment& deployment, const ScenarioConfig& config, const TrafficTrace& trace) {
    const SlaContract& contract = chain.contract();
    const std::size_t n = config.scps.size();
    if (deployment.scps.size() != n || trace.num_scps() != n || trace.num_periods() != config.num_periods)
        throw Error(ErrorCode::InvalidConfig, "deployment and trace do not match the scenario");

    std::map<std::string, SlaTerms> terms;
    std::map<std::string, std::size_t> index_of;
    for (std::size_t s = 0; s < n; ++s) {
        terms.emplace(config.scps[s].label, config.scps[s].terms);
        index_of.emplace(config.scps[s].label, s);
    }

    RunReport report;
    report.seed = config.seed;
    report.num_periods = config.num_periods;
    report.config_echo = scenario_to_json(config);
    for (std::size_t s = 0; s < n; ++s) {
        ScpReportRow row;
        row.label = config.scps[s].label;
        row.address = deployment.scps[s];
        row.strikes_timeline.reserve(config.num_periods);
        report.rows.push_back(std::move(row));
    }

    const Address owner = deployment.owner;
    for (Period p = 0; p < config.num_periods; ++p) {
        try {
            if (config.mno.deposit_per_period > 0) chain.deposit(owner, config.mno.deposit_per_period);

            const PeriodSlice slice = trace.slice(p);
            for (std::size_t s = 0; s < n; ++s) {
                if (!contract.scp_status(deployment.scps[s]).active) continue;
                for (const auto& [qci, kpi] : slice.scps[s].samples)
                    chain.record_traffic(owner, deployment.scps[s], qci, kpi.kb_served);
            }

            for (const auto& breach : detect_breaches(slice, terms)) {
                ++report.breaches_detected;
                const std::size_t s = index_of.at(breach.label);
                const Address scp = deployment.scps[s];
                const ScpStatus before = contract.scp_status(scp);
                if (!before.active) continue;
                chain.throughput_breach(owner, scp, breach.qci, breach.deficit);
                ++report.breaches_delivered;
                const ScpStatus after = contract.scp_status(scp);
                ScpReportRow& row = report.rows[s];
                row.penalized += static_cast<Funds>(before.credit - after.credit);
                ++row.breaches;
                if (!after.active) row.removal_period = p;
            }

            std::vector<Credit> before_close(n);
            for (std::size_t s = 0; s < n; ++s) before_close[s] = contract.scp_status(deployment.scps[s]).credit;
            chain.close_period(owner);
            for (std::size_t s = 0; s < n; ++s) {
                const ScpStatus st = contract.scp_status(deployment.scps[s]);
                report.rows[s].earned += static_cast<Funds>(st.credit - before_close[s]);
                report.rows[s].strikes_timeline.push_back(st.consecutive_strikes);
            }
        } catch (const Error& e) {
            throw Error(e.code(), "run aborted in period " + std::to_string(p) + ": " + e.detail());
        }
    }

    for (std::size_t s = 0; s < n; ++s)
        if (contract.scp_status(deployment.scps[s]).credit > 0)
            report.rows[s].withdrawn += chain.withdraw(deployment.scps[s]);
    if (config.failsafe_at_end) {
        chain.failsafe_disable(owner);
        chain.recover_escrow(owner);
    }

    for (std::size_t s = 0; s < n; ++s) {
        const ScpStatus st = contract.scp_status(deployment.scps[s]);
        report.rows[s].final_credit = st.credit;
        report.rows[s].active = st.active;
    }
    const ContractTotals& totals = contract.totals();
    report.contract = {totals.deposits, totals.withdrawn, totals.recovered, contract.escrow(), contract.disabled()};
    report.event_count = chain.ledger().events().size();
    report.transaction_count = chain.log().size();
    report.digest = chain.snapshot();
    return report;
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
    const TrafficTrace trace = generate_trace(config);
    ScenarioRun run;
    run.deployment = deploy_scenario(run.chain, config);
    run.report = drive(run.chain, run.deployment, config, trace);
    return run;
}

} // namespace scaas

#include "scaas/report.hpp"

#include <algorithm>
#include <ostream>

namespace scaas {

namespace {

Funds payload_amount(const EventRecord& ev, const char* name) {
    const auto v = ev.field(name);
    if (!v || *v < 0) throw Error(ErrorCode::MalformedLog, std::string(to_string(ev.kind)) + " event without " + name);
    return static_cast<Funds>(*v);
}

} // namespace

void write_report_csv(std::ostream& os, const RunReport& report) {
    os << kReportCsvHeader << '\n';
    for (const auto& r : report.rows) {
        const std::uint32_t final_strikes = r.strikes_timeline.empty() ? 0 : r.strikes_timeline.back();
        const std::uint32_t max_strikes =
            r.strikes_timeline.empty() ? 0 : *std::max_element(r.strikes_timeline.begin(), r.strikes_timeline.end());
        os << r.label << ',' << r.address.id << ',' << r.earned << ',' << r.penalized << ',' << r.withdrawn << ','
           << r.final_credit << ',' << (r.active ? 1 : 0) << ',' << r.breaches << ',';
        if (r.removal_period) os << *r.removal_period;
        os << ',' << final_strikes << ',' << max_strikes << '\n';
    }
}

nlohmann::ordered_json report_to_json(const RunReport& report) {
    using OJ = nlohmann::ordered_json;
    OJ rows = OJ::array();
    for (const auto& r : report.rows) {
        OJ row;
        row["label"] = r.label;
        row["address"] = r.address.id;
        row["earned"] = r.earned;
        row["penalized"] = r.penalized;
        row["withdrawn"] = r.withdrawn;
        row["final_credit"] = r.final_credit;
        row["active"] = r.active;
        row["breaches"] = r.breaches;
        row["removal_period"] = r.removal_period ? OJ(*r.removal_period) : OJ(nullptr);
        row["strikes_timeline"] = r.strikes_timeline;
        rows.push_back(std::move(row));
    }
    OJ j;
    j["seed"] = report.seed;
    j["num_periods"] = report.num_periods;
    j["contract"] = {{"deposits", report.contract.deposits},
                     {"withdrawn", report.contract.withdrawn},
                     {"recovered", report.contract.recovered},
                     {"escrow_remaining", report.contract.escrow_remaining},
                     {"disabled", report.contract.disabled}};
    j["breaches_detected"] = report.breaches_detected;
    j["breaches_delivered"] = report.breaches_delivered;
    j["event_log"] = {{"events", report.event_count},
                      {"transactions", report.transaction_count},
                      {"digest", report.digest},
                      {"transaction_log", "txlog.jsonl"}};
    j["scps"] = std::move(rows);
    j["config"] = OJ::parse(report.config_echo.dump());
    return j;
}

EventAudit audit_events(const std::vector<EventRecord>& events, std::uint64_t num_periods) {
    EventAudit audit;
    std::map<Address, std::optional<Period>> last_breach;
    Period emitted = 0;

    auto emit_until = [&](Period end) {
        end = std::min(end, num_periods);
        for (; emitted < end; ++emitted)
            for (auto& [addr, scp] : audit.scps) {
                scp.strikes_timeline.resize(emitted, 0);
                scp.strikes_timeline.push_back(scp.strikes);
            }
    };

    for (const auto& ev : events) {
        emit_until(ev.period);
        switch (ev.kind) {
        case EventKind::ScpRegistered: {
            ScpAudit fresh;
            const auto it = audit.scps.find(ev.subject);
            if (it != audit.scps.end()) {
                fresh = ScpAudit{};
                fresh.archived_credits = it->second.archived_credits;
                fresh.archived_credits.push_back(it->second.credit);
                fresh.earned = it->second.earned;
                fresh.penalized = it->second.penalized;
                fresh.withdrawn = it->second.withdrawn;
                fresh.breaches = it->second.breaches;
                fresh.strikes_timeline = std::move(it->second.strikes_timeline);
            }
            audit.scps[ev.subject] = std::move(fresh);
            last_breach[ev.subject].reset();
            break;
        }
        case EventKind::PeriodicPayout: {
            ScpAudit& s = audit.scps.at(ev.subject);
            const Funds payout = payload_amount(ev, "payout");
            s.credit = add_credit(s.credit, to_credit(payout));
            s.earned = add_funds(s.earned, payout);
            if (last_breach[ev.subject] != ev.period) s.strikes = 0;
            break;
        }
        case EventKind::InsufficientThroughput: {
            ScpAudit& s = audit.scps.at(ev.subject);
            const Funds debit = payload_amount(ev, "debit");
            s.credit = sub_credit(s.credit, to_credit(debit));
            s.penalized = add_funds(s.penalized, debit);
            ++s.breaches;
            ++audit.breach_events;
            if (last_breach[ev.subject] != ev.period) {
                ++s.strikes;
                last_breach[ev.subject] = ev.period;
            }
            break;
        }
        case EventKind::ScpRemoved: {
            ScpAudit& s = audit.scps.at(ev.subject);
            s.active = false;
            s.removal_period = ev.period;
            break;
        }
        case EventKind::Withdrawal: {
            ScpAudit& s = audit.scps.at(ev.subject);
            const Funds amount = payload_amount(ev, "amount");
            s.withdrawn = add_funds(s.withdrawn, amount);
            audit.withdrawn = add_funds(audit.withdrawn, amount);
            if (s.credit > 0) s.credit = 0;
            for (auto& c : s.archived_credits)
                if (c > 0) c = 0;
            break;
        }
        case EventKind::Deposit:
            audit.deposits = add_funds(audit.deposits, payload_amount(ev, "amount"));
            break;
        case EventKind::EscrowRecovered:
            audit.recovered = add_funds(audit.recovered, payload_amount(ev, "amount"));
            break;
        case EventKind::ContractDisabled:
            audit.disabled = true;
            break;
        }
    }
    emit_until(num_periods);
    for (auto& [addr, scp] : audit.scps) scp.strikes_timeline.resize(num_periods, 0);
    return audit;
}

} // namespace scaas

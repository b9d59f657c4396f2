// Acceptance checks. Prints one PASS/FAIL line per criterion; exits non-zero
// if any fails. Expected values are recomputed here from first principles
// rather than read back from the library.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scaas/chain.hpp"
#include "scaas/cli.hpp"
#include "scaas/monitor.hpp"
#include "scaas/report.hpp"
#include "scaas/scenario.hpp"
#include "scaas/serialize.hpp"
#include "scaas/verify.hpp"

using namespace scaas;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

template <class F>
ErrorCode error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an error, call succeeded");
}

// ---------------------------------------------------------------------------

Outcome conservation() {
    const FuzzResult r = fuzz_conservation(0xACCE97, 10'000);
    if (r.violation) return fail(*r.violation);
    if (r.committed < 10'000) return fail("only " + std::to_string(r.committed) + " committed");
    return {true, std::to_string(r.committed) + " committed ops, " + std::to_string(r.rejected) + " rejected, " +
                      std::to_string(r.invariant_checks) + " invariant checks"};
}

Outcome strike_equivalence() {
    // Independent oracle for the rule: removal at the first period that
    // completes a run of three consecutive breached periods.
    const auto oracle = [](const std::vector<std::uint32_t>& seq) -> std::optional<Period> {
        std::uint32_t run = 0;
        for (std::size_t p = 0; p < seq.size(); ++p) {
            run = seq[p] ? run + 1 : 0;
            if (run == 3) return static_cast<Period>(p);
        }
        return std::nullopt;
    };
    std::uint64_t checked = 0;
    for (unsigned len = 0; len <= 8; ++len) {
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            std::vector<std::uint32_t> seq(len);
            for (unsigned i = 0; i < len; ++i) seq[i] = (bits >> i) & 1u;
            const auto expected = oracle(seq);
            const auto actual = contract_removal_period(seq, 3);
            ++checked;
            if (expected != actual) {
                StrikeCounterexample cx{seq, 3, expected, actual};
                return fail(cx.describe());
            }
        }
    }
    if (checked != 511) return fail("enumerated " + std::to_string(checked) + " sequences");
    return {true, std::to_string(checked) + " sequences of length <= 8"};
}

// Debit observed on a live contract: credit drop after one breach report.
Funds observed_debit(Rational rate, std::uint64_t deficit) {
    Chain chain;
    const Address owner = chain.create_account(0);
    chain.deploy(owner);
    const Address scp = chain.create_account(0);
    SlaTerms t;
    t.price_per_kb = {{9, 1}};
    t.agreed_throughput = {{9, 1}};
    t.penalty_rate = rate;
    chain.register_scp(owner, scp, t);
    chain.throughput_breach(owner, scp, 9, deficit);
    return static_cast<Funds>(-chain.contract().scp_status(scp).credit);
}

Outcome penalty_proportionality() {
    std::uint64_t checks = 0;
    for (std::uint64_t n = 1; n <= 5; ++n) {
        for (std::uint64_t d = 1; d <= 100; ++d) {
            const Funds base = observed_debit({n, 1}, d);
            for (std::uint64_t a = 1; a <= 10; ++a) {
                ++checks;
                if (observed_debit({n, 1}, a * d) != a * base)
                    return fail("rate " + std::to_string(n) + "/1 deficit " + std::to_string(d) + " alpha " +
                                std::to_string(a));
            }
        }
    }
    for (std::uint64_t n = 1; n <= 12; ++n)
        for (std::uint64_t den = 1; den <= 12; ++den)
            for (std::uint64_t deficit : {1ULL, 2ULL, 7ULL, 99ULL, 1000ULL, 123457ULL}) {
                ++checks;
                const Funds expected = n * deficit / den;
                if (observed_debit({n, den}, deficit) != expected)
                    return fail("rate " + std::to_string(n) + "/" + std::to_string(den) + " deficit " +
                                std::to_string(deficit));
            }
    return {true, std::to_string(checks) + " debit checks"};
}

SlaTerms flat_terms(Funds price) {
    SlaTerms t;
    t.price_per_kb = {{9, price}};
    t.agreed_throughput = {{9, 10}};
    return t;
}

Outcome withdrawal_pattern() {
    Chain chain;
    const Address owner = chain.create_account(100'000);
    const Address contract = chain.deploy(owner);
    const Address a = chain.create_account(0);
    const Address b = chain.create_account(0);
    chain.deposit(owner, 50'000);
    chain.register_scp(owner, a, flat_terms(2));
    chain.register_scp(owner, b, flat_terms(3));
    chain.record_traffic(owner, a, 9, 100);
    chain.record_traffic(owner, b, 9, 100);
    chain.close_period(owner);

    if (chain.withdraw(a) != 200) return fail("first withdraw did not pay 200");
    const auto balances = chain.ledger().accounts();
    if (error_of([&] { chain.withdraw(a); }) != ErrorCode::NothingToWithdraw)
        return fail("second withdraw not rejected with NothingToWithdraw");
    if (chain.ledger().accounts() != balances) return fail("second withdraw moved funds");

    chain.failsafe_disable(owner);
    const Funds escrow_before = chain.ledger().balance(contract);
    if (chain.withdraw(b) != 300) return fail("withdraw after disable did not settle credit 300");
    if (chain.ledger().balance(b) != 300 || chain.ledger().balance(contract) != escrow_before - 300)
        return fail("post-disable withdraw balances wrong");
    return {true, "double withdraw moved funds once; post-disable withdraw settled 300"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome replay_determinism(const fs::path& scenario_path, const fs::path& work) {
    const ScenarioConfig config = load_scenario(scenario_path);
    if (config.scps.size() != 50 || config.num_periods != 1000) return fail("large scenario has unexpected shape");
    for (const auto& s : config.scps)
        if (s.traffic.size() != 9) return fail(s.label + " does not use 9 QCIs");

    std::vector<std::string> csv;
    std::vector<std::string> digests;
    double worst = 0;
    for (int i = 0; i < 2; ++i) {
        const fs::path out = work / ("run" + std::to_string(i));
        std::ostringstream diag;
        const auto t0 = std::chrono::steady_clock::now();
        const int code = cli::cmd_run(scenario_path, out, std::nullopt, diag);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst = std::max(worst, secs);
        if (code != cli::kOk) return fail("run exited " + std::to_string(code) + ": " + diag.str());
        csv.push_back(slurp(out / cli::kReportCsv));
        std::ifstream log(out / cli::kTxLog);
        digests.push_back(read_txlog(log).digest);
    }
    if (digests[0] != digests[1]) return fail("digests differ");
    if (csv[0] != csv[1]) return fail("CSV reports differ");

    std::ostringstream diag;
    if (const int code = cli::cmd_replay(work / "run0" / cli::kTxLog, diag); code != cli::kOk)
        return fail("replay exited " + std::to_string(code) + ": " + diag.str());
    char buf[160];
    std::snprintf(buf, sizeof buf, "digest %s, slowest run %.2fs", digests[0].substr(0, 23).c_str(), worst);
    if (worst >= 10.0) return fail(buf);
    return {true, buf};
}

Outcome closed_form_payout() {
    ScenarioConfig c;
    c.seed = 31337;
    c.num_periods = 40;
    c.mno = {1'000'000'000, 500'000'000, 0};
    std::vector<std::map<QciId, std::pair<Funds, std::uint64_t>>> plan; // qci -> (price, nominal)
    for (std::uint64_t i = 0; i < 6; ++i) {
        ScpScenario s;
        s.label = "scp-" + std::to_string(i);
        std::map<QciId, std::pair<Funds, std::uint64_t>> cells;
        for (QciId q = 1; q <= 9; q += 1 + static_cast<QciId>(i % 3)) {
            const Funds price = 1 + (q + i) % 4;
            const std::uint64_t nominal = 500 + 37 * q + 101 * i;
            cells[q] = {price, nominal};
            s.terms.price_per_kb[q] = price;
            s.terms.agreed_throughput[q] = nominal; // exactly met every period
            s.traffic[q] = TrafficModel{nominal, {0, 1}, {}};
        }
        plan.push_back(cells);
        c.scps.push_back(std::move(s));
    }

    const ScenarioRun run = run_scenario(c);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        Funds expected = 0;
        for (Period p = 0; p < c.num_periods; ++p)
            for (const auto& [q, pn] : plan[i]) expected += pn.first * pn.second;
        const Address addr = run.deployment.scps[i];
        const Funds got = run.chain.ledger().balance(addr);
        if (got != expected || run.report.rows[i].withdrawn != expected)
            return fail(c.scps[i].label + ": withdrew " + std::to_string(got) + ", expected " +
                        std::to_string(expected));
        if (run.report.rows[i].breaches != 0) return fail(c.scps[i].label + " was breached");
    }
    return {true, std::to_string(plan.size()) + " SCPs paid the closed-form total"};
}

// Rebuild credit and strikes from events alone (no re-registrations in these runs).
struct Rebuilt {
    Credit credit = 0;
    std::uint32_t strikes = 0;
    bool active = false;
    std::optional<Period> last_breach;
};

std::map<Address, Rebuilt> rebuild(const std::vector<EventRecord>& events) {
    std::map<Address, Rebuilt> out;
    for (const auto& ev : events) {
        auto get = [&](const char* name) { return ev.field(name).value_or(0); };
        switch (ev.kind) {
        case EventKind::ScpRegistered: out[ev.subject] = Rebuilt{0, 0, true, std::nullopt}; break;
        case EventKind::PeriodicPayout: {
            Rebuilt& r = out.at(ev.subject);
            r.credit += get("payout");
            if (r.last_breach != ev.period) r.strikes = 0;
            break;
        }
        case EventKind::InsufficientThroughput: {
            Rebuilt& r = out.at(ev.subject);
            r.credit -= get("debit");
            if (r.last_breach != ev.period) ++r.strikes;
            r.last_breach = ev.period;
            break;
        }
        case EventKind::ScpRemoved: out.at(ev.subject).active = false; break;
        case EventKind::Withdrawal: out.at(ev.subject).credit -= get("amount"); break;
        default: break;
        }
    }
    return out;
}

Outcome event_completeness(const fs::path& scenarios) {
    std::uint64_t compared = 0;
    for (const char* name : {"outage.json", "large_50x9x1000.json"}) {
        ScenarioConfig config = load_scenario(scenarios / name);
        config.failsafe_at_end = false;
        const TrafficTrace trace = generate_trace(config);
        Chain chain;
        const Deployment dep = deploy_scenario(chain, config);
        drive(chain, dep, config, trace);
        const auto rebuilt = rebuild(chain.ledger().events());
        for (const auto& [addr, rec] : chain.contract().registry()) {
            const auto it = rebuilt.find(addr);
            if (it == rebuilt.end()) return fail(std::string(name) + ": no events for scp " + std::to_string(addr.id));
            if (it->second.credit != rec.credit || it->second.strikes != rec.consecutive_strikes ||
                it->second.active != rec.active)
                return fail(std::string(name) + ": scp " + std::to_string(addr.id) + " differs from registry");
            ++compared;
        }
        if (rebuilt.size() != chain.contract().registry().size()) return fail(std::string(name) + ": extra SCPs");
    }
    return {true, std::to_string(compared) + " registry entries reproduced from events"};
}

Outcome failsafe() {
    Chain chain;
    const Address owner = chain.create_account(100'000);
    const Address contract = chain.deploy(owner);
    const Address a = chain.create_account(0);
    const Address b = chain.create_account(0);
    const Address late = chain.create_account(0);
    chain.deposit(owner, 10'000);
    chain.register_scp(owner, a, flat_terms(4));
    chain.register_scp(owner, b, flat_terms(1));
    chain.record_traffic(owner, a, 9, 500);
    chain.record_traffic(owner, b, 9, 300);
    chain.throughput_breach(owner, b, 9, 500);
    chain.close_period(owner);
    // a: +2000, b: 300 - 500 = -200.
    chain.failsafe_disable(owner);

    const std::vector<std::pair<const char*, std::function<void()>>> blocked{
        {"register_scp", [&] { chain.register_scp(owner, late, flat_terms(1)); }},
        {"deposit", [&] { chain.deposit(owner, 1); }},
        {"record_traffic", [&] { chain.record_traffic(owner, a, 9, 1); }},
        {"throughput_breach", [&] { chain.throughput_breach(owner, a, 9, 1); }},
        {"close_period", [&] { chain.close_period(owner); }},
    };
    const std::string before = chain.snapshot();
    for (const auto& [name, call] : blocked)
        if (error_of(call) != ErrorCode::ContractDisabled) return fail(std::string(name) + " not ContractDisabled");
    if (error_of([&] { chain.failsafe_disable(owner); }) != ErrorCode::AlreadyDisabled)
        return fail("second disable not AlreadyDisabled");
    if (chain.snapshot() != before) return fail("rejected calls changed state");

    const Funds escrow = chain.ledger().balance(contract);
    const Funds expected_recovery = escrow - 2000;
    const Funds recovered = chain.recover_escrow(owner);
    if (recovered != expected_recovery)
        return fail("recovered " + std::to_string(recovered) + ", expected " + std::to_string(expected_recovery));
    if (chain.withdraw(a) != 2000) return fail("a could not withdraw its credit after recovery");
    const ContractTotals& t = chain.contract().totals();
    if (t.deposits != chain.contract().escrow() + t.withdrawn + t.recovered) return fail("conservation broken");
    if (chain.ledger().total_balance() != chain.ledger().total_minted()) return fail("ledger total changed");
    return {true, "recovered " + std::to_string(recovered) + " = escrow " + std::to_string(escrow) + " - 2000"};
}

} // namespace

int main(int argc, char** argv) {
    const fs::path scenarios = argc > 1 ? fs::path(argv[1]) : fs::path(SCAAS_EXAMPLES_DIR);
    const fs::path work = fs::temp_directory_path() / "scaas_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"conservation over 10000 fuzzed operations", conservation},
        {"three-strike rule matches oracle (length <= 8)", strike_equivalence},
        {"penalty proportionality and floor grid", penalty_proportionality},
        {"withdrawal moves funds once; post-disable settlement", withdrawal_pattern},
        {"replay determinism 50x9x1000", [&] { return replay_determinism(scenarios / "large_50x9x1000.json", work); }},
        {"closed-form payout without degradation", closed_form_payout},
        {"event log reproduces registry", [&] { return event_completeness(scenarios); }},
        {"fail-safe disable and recovery", failsafe},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        std::printf("%s  %s: %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
        failed += o.ok ? 0 : 1;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    fs::remove_all(work);
    return failed == 0 ? 0 : 1;
}

#include "scaas/verify.hpp"

#include <sstream>

#include "scaas/chain.hpp"
#include "scaas/rng.hpp"
#include "scaas/serialize.hpp"

namespace scaas {

std::optional<Period> oracle_removal_period(std::span<const std::uint32_t> reports, std::uint32_t strike_limit) {
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i + 1 < strike_limit) continue;
        bool all_breached = true;
        for (std::size_t k = i + 1 - strike_limit; k <= i; ++k) all_breached = all_breached && reports[k] > 0;
        if (all_breached) return static_cast<Period>(i);
    }
    return std::nullopt;
}

std::optional<Period> contract_removal_period(std::span<const std::uint32_t> reports, std::uint32_t strike_limit) {
    Chain chain;
    const Address owner = chain.create_account(0);
    chain.deploy(owner);
    const Address scp = chain.create_account(0);
    SlaTerms terms;
    terms.price_per_kb = {{9, 1}};
    terms.agreed_throughput = {{9, 100}};
    terms.strike_limit = strike_limit;
    chain.register_scp(owner, scp, terms);

    for (std::size_t p = 0; p < reports.size(); ++p) {
        for (std::uint32_t r = 0; r < reports[p]; ++r) {
            if (!chain.contract().scp_status(scp).active) break;
            chain.throughput_breach(owner, scp, 9, 1 + r);
            if (!chain.contract().scp_status(scp).active) return static_cast<Period>(p);
        }
        chain.close_period(owner);
    }
    return std::nullopt;
}

std::string StrikeCounterexample::describe() const {
    auto fmt = [](const std::optional<Period>& p) { return p ? std::to_string(*p) : std::string("none"); };
    std::ostringstream os;
    os << "sequence [";
    for (std::size_t i = 0; i < sequence.size(); ++i) os << (i ? " " : "") << sequence[i];
    os << "] strike_limit=" << strike_limit << " expected removal=" << fmt(expected) << " actual=" << fmt(actual);
    return os.str();
}

StrikeCheck check_strike_rule(unsigned max_length, std::uint32_t strike_limit, std::uint32_t max_reports,
                              const StrikeRunner& runner) {
    StrikeCheck check;
    const std::uint32_t radix = max_reports + 1;
    for (unsigned len = 0; len <= max_length; ++len) {
        BreachSequence seq(len, 0);
        while (true) {
            ++check.sequences_checked;
            const auto expected = oracle_removal_period(seq, strike_limit);
            const auto actual = runner(seq, strike_limit);
            if (expected != actual) {
                check.counterexample = StrikeCounterexample{seq, strike_limit, expected, actual};
                return check;
            }
            // Odometer increment over base `radix`.
            std::size_t i = 0;
            while (i < len && ++seq[i] == radix) seq[i++] = 0;
            if (i == len) break;
        }
    }
    return check;
}

namespace {

struct FuzzEpisode {
    Chain chain;
    Address owner;
    std::vector<Address> scps;
    Address outsider;
};

FuzzEpisode start_episode(SplitMix64& rng) {
    FuzzEpisode ep;
    ep.owner = ep.chain.create_account(rng.uniform(1'000'000, 10'000'000));
    ep.chain.deploy(ep.owner);
    const auto n = rng.uniform(2, 6);
    for (std::uint64_t i = 0; i < n; ++i) ep.scps.push_back(ep.chain.create_account(rng.uniform(0, 100)));
    ep.outsider = ep.chain.create_account(rng.uniform(0, 1000));
    return ep;
}

SlaTerms random_terms(SplitMix64& rng) {
    SlaTerms t;
    t.payment_mode = rng.uniform(0, 3) == 0 ? PaymentMode::FlatRate : PaymentMode::PerTraffic;
    const auto nq = rng.uniform(1, 3);
    for (std::uint64_t i = 0; i < nq; ++i) {
        const auto q = static_cast<QciId>(rng.uniform(1, 9));
        t.agreed_throughput[q] = rng.uniform(100, 1000);
        t.price_per_kb[q] = rng.uniform(0, 3);
    }
    t.flat_rate_per_period = rng.uniform(0, 500);
    t.penalty_rate = {rng.uniform(0, 5), rng.uniform(1, 4)};
    t.strike_limit = static_cast<std::uint32_t>(rng.uniform(1, 4));
    return t;
}

std::string fingerprint(const Chain& chain) {
    std::ostringstream os;
    for (const auto& [a, b] : chain.ledger().accounts()) os << a.id << '=' << b << ';';
    os << '|' << chain.ledger().events().size() << '|' << chain.ledger().current_period() << '|'
       << contract_state_json(chain.contract()).dump();
    return os.str();
}

std::optional<std::string> check_invariants(const Chain& chain) {
    const SlaContract& c = chain.contract();
    const ContractTotals& t = c.totals();
    const unsigned __int128 rhs = static_cast<unsigned __int128>(c.escrow()) + t.withdrawn + t.recovered;
    if (rhs != t.deposits) return "deposits != escrow + withdrawn + recovered";
    if (c.escrow() != chain.ledger().balance(c.account())) return "escrow differs from contract account balance";
    if (c.escrow() < c.outstanding_obligations()) return "escrow below outstanding positive credits";
    if (chain.ledger().total_balance() != chain.ledger().total_minted()) return "ledger balances do not sum to minted";
    return std::nullopt;
}

Transaction random_op(SplitMix64& rng, const FuzzEpisode& ep) {
    const auto pick_scp = [&] { return ep.scps[rng.uniform(0, ep.scps.size() - 1)]; };
    // Occasionally use a wrong caller so permission paths are exercised.
    const auto caller = [&] { return rng.uniform(0, 19) == 0 ? ep.outsider : ep.owner; };
    const auto qci = [&](Address scp) -> QciId {
        const auto& reg = ep.chain.contract().registry();
        const auto it = reg.find(scp);
        if (it == reg.end() || rng.uniform(0, 9) == 0) return static_cast<QciId>(rng.uniform(1, 9));
        const auto& agreed = it->second.terms.agreed_throughput;
        auto q = agreed.begin();
        std::advance(q, static_cast<long>(rng.uniform(0, agreed.size() - 1)));
        return q->first;
    };

    const auto roll = rng.uniform(0, 999);
    if (roll < 60) return tx::RegisterScp{caller(), pick_scp(), random_terms(rng)};
    if (roll < 200) return tx::Deposit{caller(), rng.uniform(0, 20'000)};
    if (roll < 560) {
        const Address scp = pick_scp();
        return tx::RecordTraffic{caller(), scp, qci(scp), rng.uniform(0, 1000)};
    }
    if (roll < 700) {
        const Address scp = pick_scp();
        return tx::ThroughputBreach{caller(), scp, qci(scp), rng.uniform(0, 500)};
    }
    if (roll < 860) return tx::ClosePeriod{caller()};
    if (roll < 990) return tx::Withdraw{rng.uniform(0, 9) == 0 ? ep.outsider : pick_scp()};
    if (roll < 996) return tx::FailsafeDisable{caller()};
    return tx::RecoverEscrow{caller()};
}

} // namespace

FuzzResult fuzz_conservation(std::uint64_t seed, std::uint64_t min_committed) {
    FuzzResult result;
    SplitMix64 rng(seed);
    std::optional<FuzzEpisode> ep;
    std::uint64_t disabled_steps = 0;

    auto violation = [&](const Transaction& t, const std::string& what) {
        result.violation = "step " + std::to_string(result.steps) + " (" + std::string(op_name(t)) + "): " + what;
    };

    while (result.committed < min_committed) {
        if (!ep || disabled_steps > 20) {
            ep.emplace(start_episode(rng));
            disabled_steps = 0;
            ++result.episodes;
        }
        const Transaction t = random_op(rng, *ep);
        ++result.steps;
        const std::string before = fingerprint(ep->chain);
        try {
            const Receipt r = ep->chain.submit(t);
            ++result.committed;
            if (std::holds_alternative<tx::Withdraw>(t)) {
                const Address who = std::get<tx::Withdraw>(t).caller;
                const Funds balance = ep->chain.ledger().balance(who);
                try {
                    ep->chain.withdraw(who);
                    violation(t, "second withdraw succeeded after paying " + std::to_string(r.amount));
                    return result;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::NothingToWithdraw || ep->chain.ledger().balance(who) != balance) {
                        violation(t, std::string("second withdraw: ") + e.what());
                        return result;
                    }
                }
            }
        } catch (const Error&) {
            ++result.rejected;
            if (fingerprint(ep->chain) != before) {
                violation(t, "rejected operation changed state");
                return result;
            }
        }
        ++result.invariant_checks;
        if (auto bad = check_invariants(ep->chain)) {
            violation(t, *bad);
            return result;
        }
        if (ep->chain.contract().disabled()) ++disabled_steps;
    }
    return result;
}

} // namespace scaas

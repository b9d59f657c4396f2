#ifndef SCAAS_VERIFY_HPP
#define SCAAS_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scaas/types.hpp"

namespace scaas {

/// Breach reports per period, e.g. {1, 0, 2} = one report, a clean period, two reports.
using BreachSequence = std::vector<std::uint32_t>;

/// Period at which an SCP is removed for a given sequence, or nullopt if never.
using StrikeRunner = std::function<std::optional<Period>(std::span<const std::uint32_t>, std::uint32_t strike_limit)>;

/// Brute force: the first period i whose window [i-limit+1, i] holds a breach report in every period.
std::optional<Period> oracle_removal_period(std::span<const std::uint32_t> reports, std::uint32_t strike_limit);

/// Drives a fresh chain with one registered SCP through the sequence.
std::optional<Period> contract_removal_period(std::span<const std::uint32_t> reports, std::uint32_t strike_limit);

struct StrikeCounterexample {
    BreachSequence sequence;
    std::uint32_t strike_limit = 0;
    std::optional<Period> expected;
    std::optional<Period> actual;

    std::string describe() const;
};

struct StrikeCheck {
    std::uint64_t sequences_checked = 0;
    std::optional<StrikeCounterexample> counterexample;
};

/// Enumerates every sequence of length 0..max_length over reports {0..max_reports}
/// and compares `runner` against the oracle. Stops at the first mismatch.
StrikeCheck check_strike_rule(unsigned max_length, std::uint32_t strike_limit, std::uint32_t max_reports = 1,
                              const StrikeRunner& runner = contract_removal_period);

struct FuzzResult {
    std::uint64_t steps = 0;
    std::uint64_t committed = 0;
    std::uint64_t rejected = 0;
    std::uint64_t episodes = 0;
    std::uint64_t invariant_checks = 0;
    std::optional<std::string> violation; // first failure, with step and operation
};

/**
 * Random operation fuzz over fresh chains. After every step it checks
 *   deposits == escrow + withdrawn + recovered,
 *   escrow == ledger balance of the contract account >= positive credits,
 *   sum of balances == minted,
 * that rejected operations leave state untouched, and that a second withdraw
 * right after a successful one moves nothing. Runs until `min_committed`
 * operations have committed.
 */
FuzzResult fuzz_conservation(std::uint64_t seed, std::uint64_t min_committed);

} // namespace scaas

#endif // SCAAS_VERIFY_HPP

#include <gtest/gtest.h>

#include "scaas/verify.hpp"

using namespace scaas;

namespace {

// Deliberately wrong: counts total breached periods instead of consecutive ones.
std::optional<Period> cumulative_runner(std::span<const std::uint32_t> reports, std::uint32_t limit) {
    std::uint32_t strikes = 0;
    for (std::size_t p = 0; p < reports.size(); ++p)
        if (reports[p] > 0 && ++strikes >= limit) return static_cast<Period>(p);
    return std::nullopt;
}

// Deliberately wrong: one strike per report rather than per period.
std::optional<Period> per_report_runner(std::span<const std::uint32_t> reports, std::uint32_t limit) {
    std::uint32_t strikes = 0;
    for (std::size_t p = 0; p < reports.size(); ++p) {
        if (reports[p] == 0) strikes = 0;
        for (std::uint32_t r = 0; r < reports[p]; ++r)
            if (++strikes >= limit) return static_cast<Period>(p);
    }
    return std::nullopt;
}

} // namespace

TEST(OracleTest, WindowSemantics) {
    const std::vector<std::uint32_t> bbcbbb{1, 1, 0, 1, 1, 1};
    EXPECT_EQ(oracle_removal_period(bbcbbb, 3), std::optional<Period>(5));
    EXPECT_EQ(oracle_removal_period(bbcbbb, 1), std::optional<Period>(0));
    EXPECT_EQ(oracle_removal_period(bbcbbb, 4), std::nullopt);
    EXPECT_EQ(oracle_removal_period({}, 3), std::nullopt);
}

TEST(OracleTest, ContractAgreesOnSpotChecks) {
    const std::vector<std::uint32_t> seq{2, 1, 1, 0, 3};
    EXPECT_EQ(contract_removal_period(seq, 3), std::optional<Period>(2));
    EXPECT_EQ(contract_removal_period(seq, 4), std::nullopt);
}

TEST(StrikeCheckTest, ContractPassesBinarySweepToEight) {
    const StrikeCheck check = check_strike_rule(8, 3);
    EXPECT_FALSE(check.counterexample) << check.counterexample->describe();
    EXPECT_EQ(check.sequences_checked, 511u); // 2^0 + ... + 2^8
}

TEST(StrikeCheckTest, CumulativeMutantIsCaught) {
    const StrikeCheck check = check_strike_rule(8, 3, 1, cumulative_runner);
    ASSERT_TRUE(check.counterexample);
    const auto& cx = *check.counterexample;
    EXPECT_NE(cx.expected, cx.actual);
    EXPECT_EQ(oracle_removal_period(cx.sequence, 3), cx.expected);
    EXPECT_NE(cx.describe().find("expected removal="), std::string::npos);
}

TEST(StrikeCheckTest, PerReportMutantOnlyCaughtWithMultipleReports) {
    EXPECT_FALSE(check_strike_rule(6, 3, 1, per_report_runner).counterexample);
    EXPECT_TRUE(check_strike_rule(6, 3, 2, per_report_runner).counterexample);
}

TEST(FuzzTest, ConservationHoldsForFixedSeeds) {
    for (std::uint64_t seed : {1ULL, 2ULL, 0xdeadbeefULL}) {
        const FuzzResult r = fuzz_conservation(seed, 2000);
        EXPECT_FALSE(r.violation) << *r.violation;
        EXPECT_GE(r.committed, 2000u);
        EXPECT_GT(r.rejected, 0u);
        EXPECT_GT(r.episodes, 0u);
    }
}

TEST(FuzzTest, Deterministic) {
    const FuzzResult a = fuzz_conservation(7, 500);
    const FuzzResult b = fuzz_conservation(7, 500);
    EXPECT_EQ(a.steps, b.steps);
    EXPECT_EQ(a.rejected, b.rejected);
}

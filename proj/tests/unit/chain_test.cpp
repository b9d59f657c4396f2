#include <gtest/gtest.h>

#include <sstream>

#include "scaas/chain.hpp"
#include "scaas/serialize.hpp"

using namespace scaas;

namespace {

SlaTerms simple_terms() {
    SlaTerms t;
    t.price_per_kb = {{1, 2}, {9, 1}};
    t.agreed_throughput = {{1, 500}, {9, 100}};
    t.penalty_rate = {3, 2};
    return t;
}

// A short deterministic scenario touching every transaction kind.
Chain scripted_chain(Funds deposit = 6000) {
    Chain chain;
    const Address owner = chain.create_account(10'000);
    const Address outsider = chain.create_account(50);
    chain.deploy(owner);
    const Address a = chain.create_account(0);
    const Address b = chain.create_account(0);
    chain.transfer(outsider, a, 20);
    chain.deposit(owner, deposit);
    chain.register_scp(owner, a, simple_terms());
    chain.register_scp(owner, b, simple_terms());
    for (int p = 0; p < 4; ++p) {
        chain.record_traffic(owner, a, 1, 400);
        chain.record_traffic(owner, a, 9, 120);
        chain.record_traffic(owner, b, 1, 300);
        if (p != 2) chain.throughput_breach(owner, b, 1, 200);
        chain.close_period(owner);
    }
    chain.withdraw(a);
    chain.failsafe_disable(owner);
    chain.recover_escrow(owner);
    return chain;
}

} // namespace

TEST(ChainTest, NoContractBeforeDeploy) {
    Chain chain;
    const Address owner = chain.create_account(1);
    EXPECT_FALSE(chain.has_contract());
    EXPECT_THROW(chain.deposit(owner, 1), Error);
    EXPECT_THROW((void)chain.contract(), Error);
    EXPECT_EQ(chain.log().size(), 1u);
}

TEST(ChainTest, SingleDeployment) {
    Chain chain;
    const Address owner = chain.create_account(1);
    const Address contract = chain.deploy(owner);
    EXPECT_EQ(chain.contract().account(), contract);
    try {
        chain.deploy(owner);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AlreadyDeployed);
    }
}

TEST(ChainTest, ContractAccountNotReachableByPlainTransfer) {
    Chain chain;
    const Address owner = chain.create_account(100);
    const Address contract = chain.deploy(owner);
    EXPECT_THROW(chain.transfer(owner, contract, 10), Error);
    EXPECT_EQ(chain.ledger().balance(contract), 0u);
}

TEST(ChainTest, LogsOnlyCommittedTransactions) {
    Chain chain;
    const Address owner = chain.create_account(100);
    chain.deploy(owner);
    EXPECT_THROW(chain.deposit(owner, 101), Error);
    EXPECT_EQ(chain.log().size(), 2u);
}

TEST(ChainTest, ScriptedScenarioClosesBooks) {
    const Chain chain = scripted_chain();
    const SlaContract& c = chain.contract();
    // a earns 4 * (400*2 + 120*1) = 3680, b earns 4 * 600 = 2400 and pays 3 * floor(3*200/2) = 900.
    EXPECT_EQ(chain.ledger().balance(Address{2 + 1}), 3680u + 20u);
    EXPECT_EQ(c.scp_status(Address{4}).credit, 2400 - 900);
    EXPECT_EQ(c.scp_status(Address{4}).consecutive_strikes, 1u);
    EXPECT_EQ(c.totals().deposits, c.escrow() + c.totals().withdrawn + c.totals().recovered);
    EXPECT_EQ(c.escrow(), 1500u);
    EXPECT_EQ(c.totals().recovered, 6000u - 3680u - 1500u);
}

TEST(ChainTest, FreshLedgerDigestIsStable) {
    EXPECT_EQ(Chain{}.snapshot(), Chain{}.snapshot());
    EXPECT_EQ(replay({}).chain.snapshot(), Chain{}.snapshot());
}

TEST(ChainTest, SameTransactionsSameDigest) {
    EXPECT_EQ(scripted_chain().snapshot(), scripted_chain().snapshot());
    EXPECT_NE(scripted_chain(6000).snapshot(), scripted_chain(6001).snapshot());
}

TEST(ChainTest, ReplayReproducesDigest) {
    const Chain chain = scripted_chain();
    const ReplayResult r = replay(chain.log());
    EXPECT_TRUE(r.rejected.empty());
    EXPECT_EQ(r.chain.snapshot(), chain.snapshot());
    EXPECT_EQ(r.chain.canonical_state(), chain.canonical_state());
}

TEST(ChainTest, PerturbedAmountChangesDigest) {
    const Chain chain = scripted_chain();
    std::vector<Transaction> log = chain.log();
    for (auto& t : log)
        if (auto* rt = std::get_if<tx::RecordTraffic>(&t)) {
            rt->kb += 1;
            break;
        }
    const ReplayResult r = replay(log);
    EXPECT_TRUE(r.rejected.empty());
    EXPECT_NE(r.chain.snapshot(), chain.snapshot());
}

TEST(ChainTest, ReplayReportsRejectedEntries) {
    std::vector<Transaction> log{tx::CreateAccount{10}, tx::Transfer{Address{0}, Address{0}, 11}};
    const ReplayResult r = replay(log);
    EXPECT_EQ(r.rejected, std::vector<std::size_t>{1});
}

TEST(TxLogTest, RoundTripPreservesTransactionsAndDigest) {
    const Chain chain = scripted_chain();
    std::stringstream ss;
    write_txlog(ss, chain.log(), chain.snapshot());
    const TxLogFile file = read_txlog(ss);
    EXPECT_EQ(file.digest, chain.snapshot());
    ASSERT_EQ(file.transactions.size(), chain.log().size());
    EXPECT_EQ(replay(file.transactions).chain.snapshot(), chain.snapshot());
}

TEST(TxLogTest, FieldOrderIsStable) {
    const auto j = transaction_to_json(tx::RecordTraffic{Address{0}, Address{3}, 7, 1200});
    EXPECT_EQ(j.dump(), R"({"op":"record_traffic","caller":0,"scp":3,"qci":7,"kb":1200})");
    const auto h = transaction_to_json(tx::ThroughputBreach{Address{0}, Address{3}, 7, 55});
    EXPECT_EQ(h.dump(), R"({"op":"throughput_breach","caller":0,"scp":3,"qci":7,"deficit":55})");
}

TEST(TxLogTest, EmptyLogWithFreshDigest) {
    std::stringstream ss;
    write_txlog(ss, {}, Chain{}.snapshot());
    const TxLogFile file = read_txlog(ss);
    EXPECT_TRUE(file.transactions.empty());
    EXPECT_EQ(file.digest, Chain{}.snapshot());
}

TEST(TxLogTest, MalformedInputsRejected) {
    const auto expect_malformed = [](const std::string& text) {
        std::stringstream ss(text);
        try {
            (void)read_txlog(ss);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::MalformedLog) << e.what();
        }
    };
    const std::string header = R"({"format":"scaas-txlog","version":1,"count":1,"digest":"sha256:00"})";
    expect_malformed("");
    expect_malformed("not json\n");
    expect_malformed(R"({"format":"other","version":1,"count":0,"digest":""})");
    expect_malformed(header + "\n" + R"({"op":"launch_rocket"})" + "\n");
    expect_malformed(header + "\n" + R"({"op":"deposit","caller":0})" + "\n");
    expect_malformed(header + "\n" + R"({"op":"deposit","caller":0,"amount":-5})" + "\n");
    expect_malformed(header + "\n"); // count mismatch
}

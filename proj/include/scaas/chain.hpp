#ifndef SCAAS_CHAIN_HPP
#define SCAAS_CHAIN_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scaas/contract.hpp"
#include "scaas/ledger.hpp"

namespace scaas {

namespace tx {

struct CreateAccount { Funds initial_balance = 0; };
struct Deploy { Address owner; };
struct Transfer { Address from; Address to; Funds amount = 0; };
struct RegisterScp { Address caller; Address scp; SlaTerms terms; };
struct Deposit { Address caller; Funds amount = 0; };
struct RecordTraffic { Address caller; Address scp; QciId qci = 0; std::uint64_t kb = 0; };
struct ThroughputBreach { Address caller; Address scp; QciId qci = 0; std::uint64_t deficit = 0; };
struct ClosePeriod { Address caller; };
struct Withdraw { Address caller; };
struct FailsafeDisable { Address caller; };
struct RecoverEscrow { Address caller; };

} // namespace tx

using Transaction = std::variant<tx::CreateAccount, tx::Deploy, tx::Transfer, tx::RegisterScp, tx::Deposit,
                                 tx::RecordTraffic, tx::ThroughputBreach, tx::ClosePeriod, tx::Withdraw,
                                 tx::FailsafeDisable, tx::RecoverEscrow>;

/// What a committed transaction returned: a new address (create/deploy) or an amount (withdraw/recover).
struct Receipt {
    std::optional<Address> address;
    Funds amount = 0;
};

/**
 * Execution host: one ledger plus at most one deployed SLA contract.
 *
 * Every state change goes through submit(), which appends the transaction to
 * the log only when it commits. Replaying the log on a fresh Chain rebuilds the
 * same state and therefore the same snapshot digest.
 */
class Chain {
public:
    Receipt submit(const Transaction& t);

    Address create_account(Funds initial_balance) { return *submit(tx::CreateAccount{initial_balance}).address; }
    Address deploy(Address owner) { return *submit(tx::Deploy{owner}).address; }
    void transfer(Address from, Address to, Funds amount) { submit(tx::Transfer{from, to, amount}); }
    void register_scp(Address caller, Address scp, const SlaTerms& terms) { submit(tx::RegisterScp{caller, scp, terms}); }
    void deposit(Address caller, Funds amount) { submit(tx::Deposit{caller, amount}); }
    void record_traffic(Address caller, Address scp, QciId qci, std::uint64_t kb) {
        submit(tx::RecordTraffic{caller, scp, qci, kb});
    }
    void throughput_breach(Address caller, Address scp, QciId qci, std::uint64_t deficit) {
        submit(tx::ThroughputBreach{caller, scp, qci, deficit});
    }
    void close_period(Address caller) { submit(tx::ClosePeriod{caller}); }
    Funds withdraw(Address caller) { return submit(tx::Withdraw{caller}).amount; }
    void failsafe_disable(Address caller) { submit(tx::FailsafeDisable{caller}); }
    Funds recover_escrow(Address caller) { return submit(tx::RecoverEscrow{caller}).amount; }

    const Ledger& ledger() const noexcept { return ledger_; }
    bool has_contract() const noexcept { return contract_.has_value(); }
    /// Throws Error{NoContract} before deploy.
    const SlaContract& contract() const;

    const std::vector<Transaction>& log() const noexcept { return log_; }

    /// Canonical state text: accounts, period, contract state and event log,
    /// one JSON document per line with sorted keys.
    std::string canonical_state() const;
    /// "sha256:<hex>" of canonical_state().
    std::string snapshot() const;

private:
    Ledger ledger_;
    std::optional<SlaContract> contract_;
    std::vector<Transaction> log_;
};

struct ReplayResult {
    Chain chain;
    /// Log positions whose transaction was rejected on re-execution.
    std::vector<std::size_t> rejected;
};

/// Re-executes `log` on a fresh chain. Rejected entries are skipped and reported.
ReplayResult replay(std::span<const Transaction> log);

std::string_view op_name(const Transaction& t);

} // namespace scaas

#endif // SCAAS_CHAIN_HPP

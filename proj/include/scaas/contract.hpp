#ifndef SCAAS_CONTRACT_HPP
#define SCAAS_CONTRACT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "scaas/ledger.hpp"
#include "scaas/types.hpp"

namespace scaas {

enum class PaymentMode { PerTraffic, FlatRate };

/**
 * Commercial terms agreed between the MNO and one SCP.
 *
 * The declared QCI set is the key set of agreed_throughput. Under PerTraffic,
 * price_per_kb must carry exactly the same keys.
 */
struct SlaTerms {
    PaymentMode payment_mode = PaymentMode::PerTraffic;
    std::map<QciId, Funds> price_per_kb;
    Funds flat_rate_per_period = 0;
    std::map<QciId, std::uint64_t> agreed_throughput; // kb per period
    Rational penalty_rate{1, 1};                       // debit units per kb/period of deficit
    std::uint32_t strike_limit = 3;

    /// Throws Error{InvalidTerms} describing the first violated invariant.
    void validate() const;
    bool declares(QciId qci) const { return agreed_throughput.contains(qci); }

    friend bool operator==(const SlaTerms&, const SlaTerms&) = default;
};

/// floor(rate.num * deficit / rate.den), exact. Overflow past the credit range raises.
Funds penalty_debit(const Rational& rate, std::uint64_t deficit);

struct ScpRecord {
    Address address;
    SlaTerms terms;
    bool active = true;
    Credit credit = 0;
    std::uint32_t consecutive_strikes = 0;
    bool breached_this_period = false;
    Period registered_period = 0;
    std::map<QciId, std::uint64_t> served_kb; // current period only
};

struct ScpStatus {
    bool active = false;
    Credit credit = 0;
    std::uint32_t consecutive_strikes = 0;

    friend bool operator==(const ScpStatus&, const ScpStatus&) = default;
};

struct ContractStatus {
    Funds escrow = 0;
    bool disabled = false;
    Period period = 0;
};

/// Running totals used by the conservation invariant
/// deposits == escrow + withdrawn + recovered.
struct ContractTotals {
    Funds deposits = 0;
    Funds withdrawn = 0;
    Funds recovered = 0;
};

/**
 * SLA state machine between one MNO (the owner) and many SCPs.
 *
 * The contract holds its escrow in its own ledger account. Every mutating
 * operation takes the ledger it lives on and either completes fully or throws
 * with no state change. Strikes are counted per accounting period: at most
 * one strike per period, reset by a period without breach reports.
 */
class SlaContract {
public:
    /// Creates the contract's escrow account on `ledger`.
    SlaContract(Ledger& ledger, Address owner);

    Address owner() const noexcept { return owner_; }
    Address account() const noexcept { return account_; }

    void register_scp(Ledger& ledger, Address caller, Address scp, const SlaTerms& terms);
    void deposit(Ledger& ledger, Address caller, Funds amount);
    void record_traffic(Ledger& ledger, Address caller, Address scp, QciId qci, std::uint64_t kb_served);
    void close_period(Ledger& ledger, Address caller);
    void throughput_breach(Ledger& ledger, Address caller, Address scp, QciId qci, std::uint64_t deficit);
    Funds withdraw(Ledger& ledger, Address caller);
    void failsafe_disable(Ledger& ledger, Address caller);
    Funds recover_escrow(Ledger& ledger, Address caller);

    ScpStatus scp_status(Address scp) const;
    ContractStatus contract_status(const Ledger& ledger) const;

    const ScpRecord& record(Address scp) const;
    const std::map<Address, ScpRecord>& registry() const noexcept { return registry_; }
    /// Records replaced by re-registration, oldest first.
    const std::vector<ScpRecord>& archive() const noexcept { return archive_; }
    const ContractTotals& totals() const noexcept { return totals_; }
    Funds escrow() const noexcept { return escrow_; }
    bool disabled() const noexcept { return disabled_; }

    /// Sum of all positive credits, including archived records. This is what
    /// the escrow must cover.
    Funds outstanding_obligations() const;

private:
    void require_owner(Address caller) const;
    void require_enabled() const;
    ScpRecord& active_record(Address scp);

    Address owner_;
    Address account_;
    std::map<Address, ScpRecord> registry_;
    std::vector<ScpRecord> archive_;
    Funds escrow_ = 0;
    bool disabled_ = false;
    ContractTotals totals_;
};

} // namespace scaas

#endif // SCAAS_CONTRACT_HPP

#ifndef SCAAS_LEDGER_HPP
#define SCAAS_LEDGER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scaas/types.hpp"

namespace scaas {

enum class EventKind {
    PeriodicPayout,
    InsufficientThroughput,
    ScpRegistered,
    ScpRemoved,
    ContractDisabled,
    Withdrawal,
    Deposit,
    EscrowRecovered,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(std::string_view name);

using EventPayload = std::vector<std::pair<std::string, std::int64_t>>;

/**
 * An immutable ledger event. Indices are contiguous from 0 in append order and
 * records are never mutated once appended.
 */
struct EventRecord {
    std::uint64_t index = 0;
    Period period = 0;
    EventKind kind = EventKind::Deposit;
    Address subject;
    std::optional<QciId> qci;
    EventPayload payload;

    /// Named payload field, if present.
    std::optional<std::int64_t> field(std::string_view name) const;

    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

/// Conjunctive event filter. Unset members match everything; the period range is inclusive.
struct EventFilter {
    std::optional<EventKind> kind;
    std::optional<Address> subject;
    std::optional<Period> from_period;
    std::optional<Period> to_period;

    bool matches(const EventRecord& ev) const;
};

/**
 * Minimal simulated ledger: integer-balance accounts, an append-only event log
 * and a discrete period clock.
 *
 * Funds enter the ledger only through create_account; transfer conserves the
 * total. Iteration order over accounts is by address so serialization is
 * deterministic.
 */
class Ledger {
public:
    Address create_account(Funds initial_balance);

    bool has_account(Address a) const { return balances_.contains(a); }
    Funds balance(Address a) const;

    /// Moves exactly `amount` between accounts. InsufficientFunds leaves both untouched.
    void transfer(Address from, Address to, Funds amount);

    std::uint64_t append_event(EventKind kind, Address subject, std::optional<QciId> qci, EventPayload payload);
    std::vector<EventRecord> query_events(const EventFilter& filter = {}) const;
    const std::vector<EventRecord>& events() const noexcept { return events_; }

    Period current_period() const noexcept { return period_; }
    Period advance_period() noexcept { return ++period_; }

    const std::map<Address, Funds>& accounts() const noexcept { return balances_; }
    Funds total_minted() const noexcept { return minted_; }
    Funds total_balance() const;

private:
    std::map<Address, Funds> balances_;
    std::vector<EventRecord> events_;
    Period period_ = 0;
    std::uint64_t next_id_ = 0;
    Funds minted_ = 0;
};

} // namespace scaas

#endif // SCAAS_LEDGER_HPP

#include "scaas/ledger.hpp"

#include <algorithm>
#include <array>

namespace scaas {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 8> kEventNames{{
    {EventKind::PeriodicPayout, "PeriodicPayout"},
    {EventKind::InsufficientThroughput, "InsufficientThroughput"},
    {EventKind::ScpRegistered, "ScpRegistered"},
    {EventKind::ScpRemoved, "ScpRemoved"},
    {EventKind::ContractDisabled, "ContractDisabled"},
    {EventKind::Withdrawal, "Withdrawal"},
    {EventKind::Deposit, "Deposit"},
    {EventKind::EscrowRecovered, "EscrowRecovered"},
}};

} // namespace

std::string_view to_string(EventKind kind) {
    for (const auto& [k, name] : kEventNames)
        if (k == kind) return name;
    return "Unknown";
}

std::optional<EventKind> event_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kEventNames)
        if (n == name) return k;
    return std::nullopt;
}

std::optional<std::int64_t> EventRecord::field(std::string_view name) const {
    for (const auto& [key, value] : payload)
        if (key == name) return value;
    return std::nullopt;
}

bool EventFilter::matches(const EventRecord& ev) const {
    if (kind && ev.kind != *kind) return false;
    if (subject && ev.subject != *subject) return false;
    if (from_period && ev.period < *from_period) return false;
    if (to_period && ev.period > *to_period) return false;
    return true;
}

Address Ledger::create_account(Funds initial_balance) {
    const Funds minted = add_funds(minted_, initial_balance);
    const Address addr{next_id_++};
    balances_.emplace(addr, initial_balance);
    minted_ = minted;
    return addr;
}

Funds Ledger::balance(Address a) const {
    const auto it = balances_.find(a);
    if (it == balances_.end()) throw Error(ErrorCode::UnknownAccount, "no account " + std::to_string(a.id));
    return it->second;
}

void Ledger::transfer(Address from, Address to, Funds amount) {
    const auto src = balances_.find(from);
    const auto dst = balances_.find(to);
    if (src == balances_.end()) throw Error(ErrorCode::UnknownAccount, "no account " + std::to_string(from.id));
    if (dst == balances_.end()) throw Error(ErrorCode::UnknownAccount, "no account " + std::to_string(to.id));
    if (src->second < amount)
        throw Error(ErrorCode::InsufficientFunds, "account " + std::to_string(from.id) + " holds " +
                                                      std::to_string(src->second) + ", needs " +
                                                      std::to_string(amount));
    if (from == to) return;
    // Cannot overflow: the destination plus amount is bounded by total minted.
    src->second -= amount;
    dst->second += amount;
}

std::uint64_t Ledger::append_event(EventKind kind, Address subject, std::optional<QciId> qci, EventPayload payload) {
    const auto index = static_cast<std::uint64_t>(events_.size());
    events_.push_back(EventRecord{index, period_, kind, subject, qci, std::move(payload)});
    return index;
}

std::vector<EventRecord> Ledger::query_events(const EventFilter& filter) const {
    std::vector<EventRecord> out;
    std::copy_if(events_.begin(), events_.end(), std::back_inserter(out),
                 [&](const EventRecord& ev) { return filter.matches(ev); });
    return out;
}

Funds Ledger::total_balance() const {
    Funds total = 0;
    for (const auto& [addr, bal] : balances_) total = add_funds(total, bal);
    return total;
}

} // namespace scaas

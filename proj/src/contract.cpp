#include "scaas/contract.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace scaas {

namespace {

std::string addr_str(Address a) { return std::to_string(a.id); }

bool same_keys(const std::map<QciId, Funds>& a, const std::map<QciId, std::uint64_t>& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](const auto& x, const auto& y) { return x.first == y.first; });
}

Funds positive_part(Credit c) { return c > 0 ? static_cast<Funds>(c) : 0; }

} // namespace

void SlaTerms::validate() const {
    if (agreed_throughput.empty()) throw Error(ErrorCode::InvalidTerms, "declared QCI set is empty");
    if (payment_mode == PaymentMode::PerTraffic && !same_keys(price_per_kb, agreed_throughput))
        throw Error(ErrorCode::InvalidTerms, "price_per_kb and agreed_throughput must declare the same QCIs");
    if (payment_mode == PaymentMode::FlatRate && !price_per_kb.empty() && !same_keys(price_per_kb, agreed_throughput))
        throw Error(ErrorCode::InvalidTerms, "price_per_kb keys differ from agreed_throughput");
    if (penalty_rate.den == 0) throw Error(ErrorCode::InvalidTerms, "penalty_rate denominator must be positive");
    if (strike_limit == 0) throw Error(ErrorCode::InvalidTerms, "strike_limit must be at least 1");
}

Funds penalty_debit(const Rational& rate, std::uint64_t deficit) {
    if (rate.den == 0) throw Error(ErrorCode::InvalidTerms, "penalty_rate denominator must be positive");
    const unsigned __int128 scaled = static_cast<unsigned __int128>(rate.num) * deficit / rate.den;
    if (scaled > static_cast<unsigned __int128>(std::numeric_limits<Credit>::max()))
        throw Error(ErrorCode::Overflow, "penalty exceeds credit range");
    return static_cast<Funds>(scaled);
}

SlaContract::SlaContract(Ledger& ledger, Address owner) : owner_(owner) {
    if (!ledger.has_account(owner)) throw Error(ErrorCode::UnknownAccount, "owner " + addr_str(owner));
    account_ = ledger.create_account(0);
}

void SlaContract::require_owner(Address caller) const {
    if (caller != owner_) throw Error(ErrorCode::NotOwner, "caller " + addr_str(caller) + " is not the owner");
}

void SlaContract::require_enabled() const {
    if (disabled_) throw Error(ErrorCode::ContractDisabled, "contract is disabled");
}

const ScpRecord& SlaContract::record(Address scp) const {
    const auto it = registry_.find(scp);
    if (it == registry_.end()) throw Error(ErrorCode::UnknownScp, "scp " + addr_str(scp));
    return it->second;
}

ScpRecord& SlaContract::active_record(Address scp) {
    const auto it = registry_.find(scp);
    if (it == registry_.end()) throw Error(ErrorCode::UnknownScp, "scp " + addr_str(scp));
    if (!it->second.active) throw Error(ErrorCode::InactiveScp, "scp " + addr_str(scp) + " was removed");
    return it->second;
}

Funds SlaContract::outstanding_obligations() const {
    Funds total = 0;
    for (const auto& [addr, rec] : registry_) total = add_funds(total, positive_part(rec.credit));
    for (const auto& rec : archive_) total = add_funds(total, positive_part(rec.credit));
    return total;
}

void SlaContract::register_scp(Ledger& ledger, Address caller, Address scp, const SlaTerms& terms) {
    require_owner(caller);
    require_enabled();
    terms.validate();
    if (!ledger.has_account(scp)) throw Error(ErrorCode::UnknownAccount, "scp " + addr_str(scp));
    if (scp == account_ || scp == owner_)
        throw Error(ErrorCode::InvalidAddress, "scp cannot be the owner or the contract account");

    auto it = registry_.find(scp);
    if (it != registry_.end()) {
        if (it->second.active) throw Error(ErrorCode::AlreadyRegistered, "scp " + addr_str(scp));
        archive_.push_back(std::move(it->second));
        registry_.erase(it);
    }

    ScpRecord rec;
    rec.address = scp;
    rec.terms = terms;
    rec.registered_period = ledger.current_period();
    registry_.emplace(scp, std::move(rec));

    ledger.append_event(EventKind::ScpRegistered, scp, std::nullopt,
                        {{"payment_mode", terms.payment_mode == PaymentMode::FlatRate ? 1 : 0},
                         {"strike_limit", terms.strike_limit}});
}

void SlaContract::deposit(Ledger& ledger, Address caller, Funds amount) {
    require_owner(caller);
    require_enabled();
    const Funds next = add_funds(escrow_, amount);
    const Funds deposits = add_funds(totals_.deposits, amount);
    const Credit logged = to_credit(amount);
    ledger.transfer(owner_, account_, amount);
    escrow_ = next;
    totals_.deposits = deposits;
    ledger.append_event(EventKind::Deposit, caller, std::nullopt, {{"amount", logged}});
}

void SlaContract::record_traffic(Ledger&, Address caller, Address scp, QciId qci, std::uint64_t kb_served) {
    require_owner(caller);
    require_enabled();
    ScpRecord& rec = active_record(scp);
    if (!rec.terms.declares(qci)) throw Error(ErrorCode::UnknownQci, "qci " + std::to_string(qci));
    const auto it = rec.served_kb.find(qci);
    const std::uint64_t total = add_funds(it == rec.served_kb.end() ? 0 : it->second, kb_served);
    rec.served_kb[qci] = total;
}

void SlaContract::close_period(Ledger& ledger, Address caller) {
    require_owner(caller);
    require_enabled();

    // Stage every accrual first so a solvency failure leaves nothing applied.
    std::map<Address, Funds> payouts;
    Funds obligations = 0;
    for (const auto& [addr, rec] : registry_) {
        Credit credit = rec.credit;
        if (rec.active) {
            Funds payout = 0;
            if (rec.terms.payment_mode == PaymentMode::FlatRate) {
                payout = rec.terms.flat_rate_per_period;
            } else {
                for (const auto& [qci, kb] : rec.served_kb)
                    payout = add_funds(payout, mul_funds(rec.terms.price_per_kb.at(qci), kb));
            }
            credit = add_credit(credit, to_credit(payout));
            payouts.emplace(addr, payout);
        }
        obligations = add_funds(obligations, positive_part(credit));
    }
    for (const auto& rec : archive_) obligations = add_funds(obligations, positive_part(rec.credit));
    if (escrow_ < obligations)
        throw Error(ErrorCode::InsufficientEscrowForAccrual,
                    "escrow " + std::to_string(escrow_) + " cannot cover obligations " + std::to_string(obligations));

    const Period period = ledger.current_period();
    for (auto& [addr, rec] : registry_) {
        if (rec.active) {
            const Funds payout = payouts.at(addr);
            rec.credit += static_cast<Credit>(payout);
            ledger.append_event(EventKind::PeriodicPayout, addr, std::nullopt,
                                {{"payout", static_cast<std::int64_t>(payout)},
                                 {"period", static_cast<std::int64_t>(period)}});
            if (!rec.breached_this_period) rec.consecutive_strikes = 0;
        }
        rec.breached_this_period = false;
        rec.served_kb.clear();
    }
    ledger.advance_period();
}

void SlaContract::throughput_breach(Ledger& ledger, Address caller, Address scp, QciId qci, std::uint64_t deficit) {
    require_owner(caller);
    require_enabled();
    ScpRecord& rec = active_record(scp);
    if (!rec.terms.declares(qci)) throw Error(ErrorCode::UnknownQci, "qci " + std::to_string(qci));
    if (deficit == 0) throw Error(ErrorCode::ZeroDeficit, "a zero deficit is not a breach");

    const Funds debit = penalty_debit(rec.terms.penalty_rate, deficit);
    const Credit credit = sub_credit(rec.credit, static_cast<Credit>(debit));
    const auto deficit_signed = to_credit(deficit);

    rec.credit = credit;
    if (!rec.breached_this_period) {
        ++rec.consecutive_strikes;
        rec.breached_this_period = true;
    }
    ledger.append_event(EventKind::InsufficientThroughput, scp, qci,
                        {{"qci", qci},
                         {"deficit", deficit_signed},
                         {"debit", static_cast<std::int64_t>(debit)},
                         {"strikes", rec.consecutive_strikes}});
    if (rec.consecutive_strikes >= rec.terms.strike_limit) {
        rec.active = false;
        ledger.append_event(EventKind::ScpRemoved, scp, std::nullopt,
                            {{"strikes", rec.consecutive_strikes}, {"credit", rec.credit}});
    }
}

Funds SlaContract::withdraw(Ledger& ledger, Address caller) {
    auto it = registry_.find(caller);
    if (it == registry_.end()) throw Error(ErrorCode::UnknownScp, "scp " + addr_str(caller));

    // Positive credit left on archived records of the same SCP is settled too;
    // archived debt stays frozen.
    Funds amount = positive_part(it->second.credit);
    for (const auto& rec : archive_)
        if (rec.address == caller) amount = add_funds(amount, positive_part(rec.credit));
    if (amount == 0) throw Error(ErrorCode::NothingToWithdraw, "scp " + addr_str(caller) + " has no positive credit");
    if (escrow_ < amount)
        throw Error(ErrorCode::InsufficientEscrow,
                    "escrow " + std::to_string(escrow_) + " below credit " + std::to_string(amount));
    const Funds withdrawn = add_funds(totals_.withdrawn, amount);
    const Credit logged = to_credit(amount);

    ledger.transfer(account_, caller, amount);
    escrow_ -= amount;
    totals_.withdrawn = withdrawn;
    if (it->second.credit > 0) it->second.credit = 0;
    for (auto& rec : archive_)
        if (rec.address == caller && rec.credit > 0) rec.credit = 0;
    ledger.append_event(EventKind::Withdrawal, caller, std::nullopt, {{"amount", logged}});
    return amount;
}

void SlaContract::failsafe_disable(Ledger& ledger, Address caller) {
    require_owner(caller);
    if (disabled_) throw Error(ErrorCode::AlreadyDisabled, "contract already disabled");
    const Credit logged = to_credit(escrow_);
    disabled_ = true;
    ledger.append_event(EventKind::ContractDisabled, caller, std::nullopt, {{"escrow", logged}});
}

Funds SlaContract::recover_escrow(Ledger& ledger, Address caller) {
    require_owner(caller);
    if (!disabled_) throw Error(ErrorCode::NotDisabled, "recover_escrow requires a disabled contract");
    const Funds obligations = outstanding_obligations();
    const Funds recoverable = escrow_ > obligations ? escrow_ - obligations : 0;
    const Funds recovered = add_funds(totals_.recovered, recoverable);
    const Credit logged = to_credit(recoverable);
    ledger.transfer(account_, owner_, recoverable);
    escrow_ -= recoverable;
    totals_.recovered = recovered;
    ledger.append_event(EventKind::EscrowRecovered, caller, std::nullopt, {{"amount", logged}});
    return recoverable;
}

ScpStatus SlaContract::scp_status(Address scp) const {
    const ScpRecord& rec = record(scp);
    return {rec.active, rec.credit, rec.consecutive_strikes};
}

ContractStatus SlaContract::contract_status(const Ledger& ledger) const {
    return {escrow_, disabled_, ledger.current_period()};
}

} // namespace scaas

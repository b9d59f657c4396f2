#include "scaas/chain.hpp"

#include <array>
#include <memory>

#include <openssl/evp.h>

#include "scaas/serialize.hpp"

namespace scaas {

namespace {

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("sha256 init failed");
    }

    void update(std::string_view data) { EVP_DigestUpdate(ctx_.get(), data.data(), data.size()); }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(2 * len);
        for (unsigned i = 0; i < len; ++i) {
            out.push_back(digits[md[i] >> 4]);
            out.push_back(digits[md[i] & 0xf]);
        }
        return out;
    }

private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

template <class Sink>
void write_canonical(const Ledger& ledger, const std::optional<SlaContract>& contract, Sink&& sink) {
    Json accounts = Json::object();
    for (const auto& [addr, bal] : ledger.accounts()) accounts[std::to_string(addr.id)] = bal;
    Json head;
    head["accounts"] = std::move(accounts);
    head["period"] = ledger.current_period();
    head["minted"] = ledger.total_minted();
    head["events"] = ledger.events().size();
    sink(head.dump());
    sink("\n");
    sink(contract ? contract_state_json(*contract).dump() : std::string("null"));
    sink("\n");
    for (const auto& ev : ledger.events()) {
        sink(event_to_json(ev).dump());
        sink("\n");
    }
}

} // namespace

const SlaContract& Chain::contract() const {
    if (!contract_) throw Error(ErrorCode::NoContract, "no contract deployed");
    return *contract_;
}

Receipt Chain::submit(const Transaction& t) {
    Receipt receipt;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, tx::CreateAccount>) {
                receipt.address = ledger_.create_account(v.initial_balance);
            } else if constexpr (std::is_same_v<T, tx::Deploy>) {
                if (contract_) throw Error(ErrorCode::AlreadyDeployed, "a contract is already deployed");
                contract_.emplace(ledger_, v.owner);
                receipt.address = contract_->account();
            } else if constexpr (std::is_same_v<T, tx::Transfer>) {
                if (contract_ && (v.from == contract_->account() || v.to == contract_->account()))
                    throw Error(ErrorCode::InvalidAddress, "contract funds move only through contract calls");
                ledger_.transfer(v.from, v.to, v.amount);
            } else {
                if (!contract_) throw Error(ErrorCode::NoContract, "no contract deployed");
                SlaContract& c = *contract_;
                if constexpr (std::is_same_v<T, tx::RegisterScp>) {
                    c.register_scp(ledger_, v.caller, v.scp, v.terms);
                } else if constexpr (std::is_same_v<T, tx::Deposit>) {
                    c.deposit(ledger_, v.caller, v.amount);
                } else if constexpr (std::is_same_v<T, tx::RecordTraffic>) {
                    c.record_traffic(ledger_, v.caller, v.scp, v.qci, v.kb);
                } else if constexpr (std::is_same_v<T, tx::ThroughputBreach>) {
                    c.throughput_breach(ledger_, v.caller, v.scp, v.qci, v.deficit);
                } else if constexpr (std::is_same_v<T, tx::ClosePeriod>) {
                    c.close_period(ledger_, v.caller);
                } else if constexpr (std::is_same_v<T, tx::Withdraw>) {
                    receipt.amount = c.withdraw(ledger_, v.caller);
                } else if constexpr (std::is_same_v<T, tx::FailsafeDisable>) {
                    c.failsafe_disable(ledger_, v.caller);
                } else if constexpr (std::is_same_v<T, tx::RecoverEscrow>) {
                    receipt.amount = c.recover_escrow(ledger_, v.caller);
                }
            }
        },
        t);
    log_.push_back(t);
    return receipt;
}

std::string Chain::canonical_state() const {
    std::string out;
    write_canonical(ledger_, contract_, [&out](std::string_view s) { out.append(s); });
    return out;
}

std::string Chain::snapshot() const {
    Sha256 h;
    write_canonical(ledger_, contract_, [&h](std::string_view s) { h.update(s); });
    return "sha256:" + h.hex();
}

ReplayResult replay(std::span<const Transaction> log) {
    ReplayResult result;
    for (std::size_t i = 0; i < log.size(); ++i) {
        try {
            result.chain.submit(log[i]);
        } catch (const Error&) {
            result.rejected.push_back(i);
        }
    }
    return result;
}

} // namespace scaas

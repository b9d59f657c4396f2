#include "scaas/serialize.hpp"

#include "json_util.hpp"

#include <charconv>
#include <istream>
#include <ostream>

namespace scaas {

using namespace detail;

namespace {

Address addr_member(const Json& j, const char* key) {
    return Address{u64_member(j, key, ErrorCode::MalformedLog, "tx")};
}

} // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num_s = text.substr(0, slash);
    const std::string den_s = slash == std::string::npos ? "1" : text.substr(slash + 1);
    Rational r;
    const auto p1 = std::from_chars(num_s.data(), num_s.data() + num_s.size(), r.num);
    const auto p2 = std::from_chars(den_s.data(), den_s.data() + den_s.size(), r.den);
    if (num_s.empty() || den_s.empty() || p1.ec != std::errc{} || p2.ec != std::errc{} ||
        p1.ptr != num_s.data() + num_s.size() || p2.ptr != den_s.data() + den_s.size())
        throw Error(ErrorCode::InvalidConfig, "'" + text + "' is not a rational of the form n/d");
    if (r.den == 0) throw Error(ErrorCode::InvalidConfig, "'" + text + "' has a zero denominator");
    return r;
}

Json rational_to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const Json& j, ErrorCode code, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            fail(code, path, e.what());
        }
    }
    return Rational{get_u64(j, code, path), 1};
}

Json terms_to_json(const SlaTerms& t) {
    Json j;
    j["payment_mode"] = t.payment_mode == PaymentMode::FlatRate ? "flat_rate" : "per_traffic";
    j["price_per_kb"] = qci_map_json(t.price_per_kb);
    j["flat_rate_per_period"] = t.flat_rate_per_period;
    j["agreed_throughput"] = qci_map_json(t.agreed_throughput);
    j["penalty_rate"] = rational_to_json(t.penalty_rate);
    j["strike_limit"] = t.strike_limit;
    return j;
}

SlaTerms terms_from_json(const Json& j, ErrorCode code, const std::string& path) {
    if (!j.is_object()) fail(code, path, "expected an object");
    SlaTerms t;
    const Json& mode = member(j, "payment_mode", code, path);
    if (mode == "per_traffic") {
        t.payment_mode = PaymentMode::PerTraffic;
    } else if (mode == "flat_rate") {
        t.payment_mode = PaymentMode::FlatRate;
    } else {
        fail(code, path + ".payment_mode", "expected \"per_traffic\" or \"flat_rate\"");
    }
    if (j.contains("price_per_kb"))
        t.price_per_kb = qci_map<Funds>(j["price_per_kb"], code, path + ".price_per_kb");
    if (j.contains("flat_rate_per_period"))
        t.flat_rate_per_period = get_u64(j["flat_rate_per_period"], code, path + ".flat_rate_per_period");
    t.agreed_throughput = qci_map<std::uint64_t>(member(j, "agreed_throughput", code, path), code,
                                                 path + ".agreed_throughput");
    if (j.contains("penalty_rate")) t.penalty_rate = rational_from_json(j["penalty_rate"], code, path + ".penalty_rate");
    if (j.contains("strike_limit")) {
        const auto limit = get_u64(j["strike_limit"], code, path + ".strike_limit");
        if (limit > std::numeric_limits<std::uint32_t>::max()) fail(code, path + ".strike_limit", "out of range");
        t.strike_limit = static_cast<std::uint32_t>(limit);
    }
    try {
        t.validate();
    } catch (const Error& e) {
        fail(code, path, e.what());
    }
    return t;
}

Json event_to_json(const EventRecord& ev) {
    Json payload = Json::array();
    for (const auto& [name, value] : ev.payload) payload.push_back(Json::array({name, value}));
    Json j;
    j["index"] = ev.index;
    j["period"] = ev.period;
    j["kind"] = std::string(to_string(ev.kind));
    j["subject"] = ev.subject.id;
    j["qci"] = ev.qci ? Json(*ev.qci) : Json(nullptr);
    j["payload"] = std::move(payload);
    return j;
}

namespace {

Json record_json(const ScpRecord& rec) {
    Json j;
    j["address"] = rec.address.id;
    j["terms"] = terms_to_json(rec.terms);
    j["active"] = rec.active;
    j["credit"] = rec.credit;
    j["consecutive_strikes"] = rec.consecutive_strikes;
    j["breached_this_period"] = rec.breached_this_period;
    j["registered_period"] = rec.registered_period;
    j["served_kb"] = qci_map_json(rec.served_kb);
    return j;
}

} // namespace

Json contract_state_json(const SlaContract& c) {
    Json registry = Json::object();
    for (const auto& [addr, rec] : c.registry()) registry[std::to_string(addr.id)] = record_json(rec);
    Json archive = Json::array();
    for (const auto& rec : c.archive()) archive.push_back(record_json(rec));
    Json j;
    j["owner"] = c.owner().id;
    j["account"] = c.account().id;
    j["escrow"] = c.escrow();
    j["disabled"] = c.disabled();
    j["registry"] = std::move(registry);
    j["archive"] = std::move(archive);
    j["totals"] = {{"deposits", c.totals().deposits},
                   {"withdrawn", c.totals().withdrawn},
                   {"recovered", c.totals().recovered}};
    return j;
}

std::string_view op_name(const Transaction& t) {
    static constexpr std::string_view names[] = {"create_account",  "deploy",       "transfer",
                                                 "register_scp",    "deposit",      "record_traffic",
                                                 "throughput_breach", "close_period", "withdraw",
                                                 "failsafe_disable", "recover_escrow"};
    return names[t.index()];
}

OrderedJson transaction_to_json(const Transaction& t) {
    OrderedJson j;
    j["op"] = std::string(op_name(t));
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, tx::CreateAccount>) {
                j["balance"] = v.initial_balance;
            } else if constexpr (std::is_same_v<T, tx::Deploy>) {
                j["owner"] = v.owner.id;
            } else if constexpr (std::is_same_v<T, tx::Transfer>) {
                j["from"] = v.from.id;
                j["to"] = v.to.id;
                j["amount"] = v.amount;
            } else if constexpr (std::is_same_v<T, tx::RegisterScp>) {
                j["caller"] = v.caller.id;
                j["scp"] = v.scp.id;
                j["terms"] = OrderedJson::parse(terms_to_json(v.terms).dump());
            } else if constexpr (std::is_same_v<T, tx::Deposit>) {
                j["caller"] = v.caller.id;
                j["amount"] = v.amount;
            } else if constexpr (std::is_same_v<T, tx::RecordTraffic>) {
                j["caller"] = v.caller.id;
                j["scp"] = v.scp.id;
                j["qci"] = v.qci;
                j["kb"] = v.kb;
            } else if constexpr (std::is_same_v<T, tx::ThroughputBreach>) {
                j["caller"] = v.caller.id;
                j["scp"] = v.scp.id;
                j["qci"] = v.qci;
                j["deficit"] = v.deficit;
            } else {
                j["caller"] = v.caller.id;
            }
        },
        t);
    return j;
}

Transaction transaction_from_json(const Json& j) {
    constexpr auto code = ErrorCode::MalformedLog;
    const Json& op_j = member(j, "op", code, "tx");
    if (!op_j.is_string()) fail(code, "tx.op", "expected a string");
    const std::string op = op_j.get<std::string>();
    auto qci = [&j] {
        const auto v = u64_member(j, "qci", code, "tx");
        if (v > std::numeric_limits<QciId>::max()) fail(code, "tx.qci", "out of range");
        return static_cast<QciId>(v);
    };

    if (op == "create_account") return tx::CreateAccount{u64_member(j, "balance", code, "tx")};
    if (op == "deploy") return tx::Deploy{addr_member(j, "owner")};
    if (op == "transfer")
        return tx::Transfer{addr_member(j, "from"), addr_member(j, "to"), u64_member(j, "amount", code, "tx")};
    if (op == "register_scp")
        return tx::RegisterScp{addr_member(j, "caller"), addr_member(j, "scp"),
                               terms_from_json(member(j, "terms", code, "tx"), code, "tx.terms")};
    if (op == "deposit") return tx::Deposit{addr_member(j, "caller"), u64_member(j, "amount", code, "tx")};
    if (op == "record_traffic")
        return tx::RecordTraffic{addr_member(j, "caller"), addr_member(j, "scp"), qci(),
                                 u64_member(j, "kb", code, "tx")};
    if (op == "throughput_breach")
        return tx::ThroughputBreach{addr_member(j, "caller"), addr_member(j, "scp"), qci(),
                                    u64_member(j, "deficit", code, "tx")};
    if (op == "close_period") return tx::ClosePeriod{addr_member(j, "caller")};
    if (op == "withdraw") return tx::Withdraw{addr_member(j, "caller")};
    if (op == "failsafe_disable") return tx::FailsafeDisable{addr_member(j, "caller")};
    if (op == "recover_escrow") return tx::RecoverEscrow{addr_member(j, "caller")};
    fail(code, "tx.op", "unknown operation '" + op + "'");
}

void write_txlog(std::ostream& os, const std::vector<Transaction>& log, const std::string& digest) {
    OrderedJson header;
    header["format"] = "scaas-txlog";
    header["version"] = 1;
    header["count"] = log.size();
    header["digest"] = digest;
    os << header.dump() << '\n';
    for (const auto& t : log) os << transaction_to_json(t).dump() << '\n';
}

TxLogFile read_txlog(std::istream& is) {
    constexpr auto code = ErrorCode::MalformedLog;
    TxLogFile out;
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::uint64_t> count;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        const std::string where = "line " + std::to_string(lineno);
        if (j.is_discarded()) fail(code, where, "invalid JSON");
        if (!count) {
            if (!j.is_object() || j.value("format", "") != "scaas-txlog")
                fail(code, where, "missing scaas-txlog header");
            if (j.value("version", 0) != 1) fail(code, where, "unsupported version");
            count = u64_member(j, "count", code, where);
            const Json& digest = member(j, "digest", code, where);
            if (!digest.is_string()) fail(code, where + ".digest", "expected a string");
            out.digest = digest.get<std::string>();
            continue;
        }
        try {
            out.transactions.push_back(transaction_from_json(j));
        } catch (const Error& e) {
            fail(code, where, e.detail());
        }
    }
    if (!count) fail(code, "line 1", "empty log, header required");
    if (*count != out.transactions.size())
        fail(code, "header.count", "declares " + std::to_string(*count) + " transactions, found " +
                                       std::to_string(out.transactions.size()));
    return out;
}

} // namespace scaas

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "scaas/chain.hpp"
#include "scaas/monitor.hpp"
#include "scaas/report.hpp"
#include "scaas/scenario.hpp"
#include "scaas/serialize.hpp"
#include "scaas/verify.hpp"

namespace py = pybind11;
using namespace scaas;

namespace {

// JSON crosses the boundary as text; Python side parses with the json module.
py::object to_py(const nlohmann::ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Rational rational_arg(const py::object& o) {
    if (py::isinstance<py::str>(o)) return parse_rational(o.cast<std::string>());
    if (py::isinstance<py::tuple>(o)) {
        const auto t = o.cast<std::pair<std::uint64_t, std::uint64_t>>();
        return {t.first, t.second};
    }
    return {o.cast<std::uint64_t>(), 1};
}

class PyChain {
public:
    std::uint64_t create_account(Funds balance) { return chain_.create_account(balance).id; }
    std::uint64_t deploy(std::uint64_t owner) { return chain_.deploy(Address{owner}).id; }
    void transfer(std::uint64_t from, std::uint64_t to, Funds amount) { chain_.transfer(Address{from}, Address{to}, amount); }
    void register_scp(std::uint64_t caller, std::uint64_t scp, const SlaTerms& terms) {
        chain_.register_scp(Address{caller}, Address{scp}, terms);
    }
    void deposit(std::uint64_t caller, Funds amount) { chain_.deposit(Address{caller}, amount); }
    void record_traffic(std::uint64_t caller, std::uint64_t scp, QciId qci, std::uint64_t kb) {
        chain_.record_traffic(Address{caller}, Address{scp}, qci, kb);
    }
    void throughput_breach(std::uint64_t caller, std::uint64_t scp, QciId qci, std::uint64_t deficit) {
        chain_.throughput_breach(Address{caller}, Address{scp}, qci, deficit);
    }
    void close_period(std::uint64_t caller) { chain_.close_period(Address{caller}); }
    Funds withdraw(std::uint64_t caller) { return chain_.withdraw(Address{caller}); }
    void failsafe_disable(std::uint64_t caller) { chain_.failsafe_disable(Address{caller}); }
    Funds recover_escrow(std::uint64_t caller) { return chain_.recover_escrow(Address{caller}); }

    Funds balance(std::uint64_t a) const { return chain_.ledger().balance(Address{a}); }
    Period current_period() const { return chain_.ledger().current_period(); }
    py::dict scp_status(std::uint64_t scp) const {
        const ScpStatus s = chain_.contract().scp_status(Address{scp});
        py::dict d;
        d["active"] = s.active;
        d["credit"] = s.credit;
        d["strikes"] = s.consecutive_strikes;
        return d;
    }
    py::dict contract_status() const {
        const SlaContract& c = chain_.contract();
        py::dict d;
        d["escrow"] = c.escrow();
        d["disabled"] = c.disabled();
        d["deposits"] = c.totals().deposits;
        d["withdrawn"] = c.totals().withdrawn;
        d["recovered"] = c.totals().recovered;
        return d;
    }
    py::list events() const {
        py::list out;
        for (const auto& ev : chain_.ledger().events()) out.append(to_py(event_to_json(ev)));
        return out;
    }
    std::string txlog() const {
        std::ostringstream os;
        write_txlog(os, chain_.log(), chain_.snapshot());
        return os.str();
    }
    std::string snapshot() const { return chain_.snapshot(); }

private:
    Chain chain_;
};

py::dict run(const py::object& config, std::optional<std::uint64_t> seed) {
    ScenarioConfig cfg = py::isinstance<py::str>(config) ? load_scenario(config.cast<std::string>())
                                                          : scenario_from_json(from_py(config));
    if (seed) cfg.seed = *seed;
    const ScenarioRun r = run_scenario(cfg);
    std::ostringstream csv, log;
    write_report_csv(csv, r.report);
    write_txlog(log, r.chain.log(), r.report.digest);
    py::dict d;
    d["report"] = to_py(report_to_json(r.report));
    d["csv"] = csv.str();
    d["txlog"] = log.str();
    d["digest"] = r.report.digest;
    return d;
}

py::dict replay_text(const std::string& text) {
    std::istringstream in(text);
    const TxLogFile file = read_txlog(in);
    const ReplayResult r = replay(file.transactions);
    py::dict d;
    d["digest"] = r.chain.snapshot();
    d["expected"] = file.digest;
    d["matches"] = r.chain.snapshot() == file.digest;
    d["rejected"] = r.rejected;
    return d;
}

} // namespace

PYBIND11_MODULE(_scaas, m) {
    m.doc() = "Small-cell SLA contract simulator";

    static py::exception<Error> scaas_error(m, "ScaasError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const py::tuple args = py::make_tuple(std::string(to_string(e.code())), e.detail());
            PyErr_SetObject(scaas_error.ptr(), args.ptr());
        }
    });

    py::enum_<PaymentMode>(m, "PaymentMode")
        .value("PER_TRAFFIC", PaymentMode::PerTraffic)
        .value("FLAT_RATE", PaymentMode::FlatRate);

    py::class_<SlaTerms>(m, "SlaTerms")
        .def(py::init<>())
        .def_readwrite("payment_mode", &SlaTerms::payment_mode)
        .def_readwrite("price_per_kb", &SlaTerms::price_per_kb)
        .def_readwrite("flat_rate_per_period", &SlaTerms::flat_rate_per_period)
        .def_readwrite("agreed_throughput", &SlaTerms::agreed_throughput)
        .def_readwrite("strike_limit", &SlaTerms::strike_limit)
        .def_property(
            "penalty_rate", [](const SlaTerms& t) { return t.penalty_rate.to_string(); },
            [](SlaTerms& t, const py::object& o) { t.penalty_rate = rational_arg(o); })
        .def("validate", &SlaTerms::validate);

    py::class_<PyChain>(m, "Chain")
        .def(py::init<>())
        .def("create_account", &PyChain::create_account, py::arg("balance"))
        .def("deploy", &PyChain::deploy, py::arg("owner"))
        .def("transfer", &PyChain::transfer)
        .def("register_scp", &PyChain::register_scp)
        .def("deposit", &PyChain::deposit)
        .def("record_traffic", &PyChain::record_traffic)
        .def("throughput_breach", &PyChain::throughput_breach)
        .def("close_period", &PyChain::close_period)
        .def("withdraw", &PyChain::withdraw)
        .def("failsafe_disable", &PyChain::failsafe_disable)
        .def("recover_escrow", &PyChain::recover_escrow)
        .def("balance", &PyChain::balance)
        .def_property_readonly("current_period", &PyChain::current_period)
        .def("scp_status", &PyChain::scp_status)
        .def("contract_status", &PyChain::contract_status)
        .def("events", &PyChain::events)
        .def("txlog", &PyChain::txlog)
        .def("snapshot", &PyChain::snapshot);

    m.def("penalty_debit", [](const py::object& rate, std::uint64_t deficit) { return penalty_debit(rational_arg(rate), deficit); },
          py::arg("rate"), py::arg("deficit"));

    m.def(
        "detect_breaches",
        [](const std::map<std::string, std::map<QciId, std::uint64_t>>& measured,
           const std::map<std::string, SlaTerms>& terms) {
            PeriodSlice slice;
            for (const auto& [label, cells] : measured) {
                ScpSlice s{label, {}};
                for (const auto& [q, v] : cells) s.samples.push_back({q, KpiSample{v, v}});
                slice.scps.push_back(std::move(s));
            }
            std::vector<std::tuple<std::string, QciId, std::uint64_t>> out;
            for (const auto& b : detect_breaches(slice, terms)) out.emplace_back(b.label, b.qci, b.deficit);
            return out;
        },
        py::arg("measured"), py::arg("terms"));

    m.def("run_scenario", &run, py::arg("config"), py::arg("seed") = py::none(),
          "Run a scenario given as a file path or a JSON-compatible dict.");
    m.def("replay_txlog", &replay_text, py::arg("text"));

    m.def(
        "strike_rule_check",
        [](unsigned max_length, std::uint32_t strike_limit, std::uint32_t max_reports) {
            const StrikeCheck c = check_strike_rule(max_length, strike_limit, max_reports);
            py::dict d;
            d["sequences_checked"] = c.sequences_checked;
            d["counterexample"] = c.counterexample ? py::object(py::str(c.counterexample->describe())) : py::none();
            return d;
        },
        py::arg("max_length"), py::arg("strike_limit") = 3, py::arg("max_reports") = 1);

    m.def(
        "fuzz_conservation",
        [](std::uint64_t seed, std::uint64_t min_committed) {
            const FuzzResult r = fuzz_conservation(seed, min_committed);
            py::dict d;
            d["committed"] = r.committed;
            d["rejected"] = r.rejected;
            d["episodes"] = r.episodes;
            d["violation"] = r.violation ? py::object(py::str(*r.violation)) : py::none();
            return d;
        },
        py::arg("seed"), py::arg("min_committed"));
}

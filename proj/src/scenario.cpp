#include "scaas/scenario.hpp"

#include <fstream>
#include <set>

#include "json_util.hpp"
#include "scaas/serialize.hpp"

namespace scaas {

using namespace detail;

namespace {

constexpr auto kConfig = ErrorCode::InvalidConfig;

QciProfile profile(QciId q, bool gbr, std::uint32_t prio, std::uint32_t pdb, Rational plr) {
    return QciProfile{q, gbr, prio, pdb, plr};
}

bool in_unit_interval(const Rational& r) { return r.den != 0 && r.num <= r.den; }

bool get_bool(const Json& j, const char* key, bool fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) fail(kConfig, path + "." + key, "expected a boolean");
    return j[key].get<bool>();
}

std::uint32_t get_u32(const Json& j, const char* key, const std::string& path) {
    const auto v = u64_member(j, key, kConfig, path);
    if (v > std::numeric_limits<std::uint32_t>::max()) fail(kConfig, path + "." + key, "out of range");
    return static_cast<std::uint32_t>(v);
}

TrafficModel traffic_from_json(const Json& j, const std::string& path) {
    TrafficModel m;
    m.nominal_kb_per_period = u64_member(j, "nominal_kb_per_period", kConfig, path);
    if (j.contains("variability")) m.variability = rational_from_json(j["variability"], kConfig, path + ".variability");
    if (j.contains("degradations")) {
        const Json& windows = j["degradations"];
        if (!windows.is_array()) fail(kConfig, path + ".degradations", "expected an array");
        for (std::size_t i = 0; i < windows.size(); ++i) {
            const std::string wpath = path + ".degradations[" + std::to_string(i) + "]";
            DegradationWindow w;
            w.start = u64_member(windows[i], "start", kConfig, wpath);
            w.end = u64_member(windows[i], "end", kConfig, wpath);
            w.multiplier = rational_from_json(member(windows[i], "multiplier", kConfig, wpath), kConfig,
                                              wpath + ".multiplier");
            m.degradations.push_back(w);
        }
    }
    return m;
}

} // namespace

const std::map<QciId, QciProfile>& standard_qci_profiles() {
    static const std::map<QciId, QciProfile> table{
        {1, profile(1, true, 2, 100, {1, 100})},
        {2, profile(2, true, 4, 150, {1, 1000})},
        {3, profile(3, true, 3, 50, {1, 1000})},
        {4, profile(4, true, 5, 300, {1, 1000000})},
        {5, profile(5, false, 1, 100, {1, 1000000})},
        {6, profile(6, false, 6, 300, {1, 1000000})},
        {7, profile(7, false, 7, 100, {1, 1000})},
        {8, profile(8, false, 8, 300, {1, 1000000})},
        {9, profile(9, false, 9, 300, {1, 1000000})},
    };
    return table;
}

void ScenarioConfig::validate() const {
    std::set<std::string> labels;
    for (std::size_t i = 0; i < scps.size(); ++i) {
        const ScpScenario& scp = scps[i];
        const std::string path = "scps[" + std::to_string(i) + "]";
        if (scp.label.empty()) fail(kConfig, path + ".label", "must be non-empty");
        if (!labels.insert(scp.label).second) fail(kConfig, path + ".label", "duplicate label '" + scp.label + "'");
        try {
            scp.terms.validate();
        } catch (const Error& e) {
            fail(kConfig, path + ".terms", e.what());
        }
        for (const auto& [qci, _] : scp.terms.agreed_throughput)
            if (!scp.traffic.contains(qci))
                fail(kConfig, path + ".traffic", "missing traffic model for declared QCI " + std::to_string(qci));
        for (const auto& [qci, model] : scp.traffic) {
            const std::string tpath = path + ".traffic." + std::to_string(qci);
            if (!scp.terms.declares(qci)) fail(kConfig, tpath, "QCI not declared in terms");
            if (!in_unit_interval(model.variability)) fail(kConfig, tpath + ".variability", "must be in [0,1]");
            for (std::size_t w = 0; w < model.degradations.size(); ++w) {
                const DegradationWindow& win = model.degradations[w];
                const std::string wpath = tpath + ".degradations[" + std::to_string(w) + "]";
                if (win.start > win.end) fail(kConfig, wpath, "start must not exceed end");
                if (win.end >= num_periods) fail(kConfig, wpath + ".end", "must lie within [0, num_periods)");
                if (!in_unit_interval(win.multiplier)) fail(kConfig, wpath + ".multiplier", "must be in [0,1]");
            }
        }
    }
    if (mno.initial_deposit > mno.balance) fail(kConfig, "mno.initial_deposit", "exceeds mno.balance");
}

ScenarioConfig scenario_from_json(const Json& j) {
    if (!j.is_object()) fail(kConfig, "config", "expected a JSON object");
    ScenarioConfig c;
    c.seed = u64_member(j, "seed", kConfig, "config");
    c.num_periods = u64_member(j, "num_periods", kConfig, "config");
    const Json& mno = member(j, "mno", kConfig, "config");
    c.mno.balance = u64_member(mno, "balance", kConfig, "mno");
    if (mno.contains("initial_deposit")) c.mno.initial_deposit = u64_member(mno, "initial_deposit", kConfig, "mno");
    if (mno.contains("deposit_per_period"))
        c.mno.deposit_per_period = u64_member(mno, "deposit_per_period", kConfig, "mno");
    c.failsafe_at_end = get_bool(j, "failsafe_at_end", false, "config");

    if (j.contains("qci_profiles")) {
        const Json& profiles = j["qci_profiles"];
        if (!profiles.is_object()) fail(kConfig, "qci_profiles", "expected an object keyed by QCI");
        for (const auto& [key, pj] : profiles.items()) {
            const std::string path = "qci_profiles." + key;
            QciProfile p;
            p.qci = parse_qci_key(key, kConfig, "qci_profiles");
            p.guaranteed_bitrate = get_bool(pj, "guaranteed_bitrate", false, path);
            p.priority = get_u32(pj, "priority", path);
            p.packet_delay_budget_ms = get_u32(pj, "packet_delay_budget_ms", path);
            p.packet_loss_rate =
                rational_from_json(member(pj, "packet_loss_rate", kConfig, path), kConfig, path + ".packet_loss_rate");
            c.qci_profiles[p.qci] = p;
        }
    }

    const Json& scps = member(j, "scps", kConfig, "config");
    if (!scps.is_array()) fail(kConfig, "scps", "expected an array");
    for (std::size_t i = 0; i < scps.size(); ++i) {
        const std::string path = "scps[" + std::to_string(i) + "]";
        const Json& sj = scps[i];
        ScpScenario s;
        const Json& label = member(sj, "label", kConfig, path);
        if (!label.is_string()) fail(kConfig, path + ".label", "expected a string");
        s.label = label.get<std::string>();
        s.terms = terms_from_json(member(sj, "terms", kConfig, path), kConfig, path + ".terms");
        const Json& traffic = member(sj, "traffic", kConfig, path);
        if (!traffic.is_object()) fail(kConfig, path + ".traffic", "expected an object keyed by QCI");
        for (const auto& [key, tj] : traffic.items())
            s.traffic.emplace(parse_qci_key(key, kConfig, path + ".traffic"),
                              traffic_from_json(tj, path + ".traffic." + key));
        c.scps.push_back(std::move(s));
    }
    c.validate();
    return c;
}

Json scenario_to_json(const ScenarioConfig& c) {
    Json j;
    j["seed"] = c.seed;
    j["num_periods"] = c.num_periods;
    j["mno"] = {{"balance", c.mno.balance},
                {"initial_deposit", c.mno.initial_deposit},
                {"deposit_per_period", c.mno.deposit_per_period}};
    j["failsafe_at_end"] = c.failsafe_at_end;
    Json profiles = Json::object();
    for (const auto& [q, p] : c.qci_profiles)
        profiles[std::to_string(q)] = {{"guaranteed_bitrate", p.guaranteed_bitrate},
                                       {"priority", p.priority},
                                       {"packet_delay_budget_ms", p.packet_delay_budget_ms},
                                       {"packet_loss_rate", rational_to_json(p.packet_loss_rate)}};
    j["qci_profiles"] = std::move(profiles);
    Json scps = Json::array();
    for (const auto& s : c.scps) {
        Json traffic = Json::object();
        for (const auto& [q, m] : s.traffic) {
            Json windows = Json::array();
            for (const auto& w : m.degradations)
                windows.push_back({{"start", w.start}, {"end", w.end}, {"multiplier", rational_to_json(w.multiplier)}});
            traffic[std::to_string(q)] = {{"nominal_kb_per_period", m.nominal_kb_per_period},
                                          {"variability", rational_to_json(m.variability)},
                                          {"degradations", std::move(windows)}};
        }
        scps.push_back({{"label", s.label}, {"terms", terms_to_json(s.terms)}, {"traffic", std::move(traffic)}});
    }
    j["scps"] = std::move(scps);
    return j;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(kConfig, path.string() + ": cannot open file");
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw Error(kConfig, path.string() + ": not valid JSON");
    return scenario_from_json(j);
}

} // namespace scaas

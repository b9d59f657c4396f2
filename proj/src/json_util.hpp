#ifndef SCAAS_SRC_JSON_UTIL_HPP
#define SCAAS_SRC_JSON_UTIL_HPP

#include <charconv>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "scaas/types.hpp"

namespace scaas::detail {

using Json = nlohmann::json;

[[noreturn]] inline void fail(ErrorCode code, const std::string& path, const std::string& msg) {
    throw Error(code, path + ": " + msg);
}

inline std::uint64_t get_u64(const Json& j, ErrorCode code, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(code, path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

inline const Json& member(const Json& j, const char* key, ErrorCode code, const std::string& path) {
    if (!j.is_object()) fail(code, path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(code, path + "." + key, "missing field");
    return *it;
}

inline std::uint64_t u64_member(const Json& j, const char* key, ErrorCode code, const std::string& path) {
    return get_u64(member(j, key, code, path), code, path + "." + key);
}

inline QciId parse_qci_key(const std::string& key, ErrorCode code, const std::string& path) {
    std::uint32_t v = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (key.empty() || ec != std::errc{} || ptr != key.data() + key.size())
        fail(code, path, "QCI key '" + key + "' is not an unsigned integer");
    return v;
}

template <class V>
std::map<QciId, V> qci_map(const Json& j, ErrorCode code, const std::string& path) {
    if (!j.is_object()) fail(code, path, "expected an object keyed by QCI");
    std::map<QciId, V> out;
    for (const auto& [key, value] : j.items())
        out.emplace(parse_qci_key(key, code, path), get_u64(value, code, path + "." + key));
    return out;
}

template <class V>
Json qci_map_json(const std::map<QciId, V>& m) {
    Json out = Json::object();
    for (const auto& [q, v] : m) out[std::to_string(q)] = v;
    return out;
}

} // namespace scaas::detail

#endif // SCAAS_SRC_JSON_UTIL_HPP

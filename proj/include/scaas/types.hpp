#ifndef SCAAS_TYPES_HPP
#define SCAAS_TYPES_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>

#include "scaas/errors.hpp"

namespace scaas {

/// Opaque account identifier. Assigned by the ledger in creation order.
struct Address {
    std::uint64_t id = 0;

    friend auto operator<=>(const Address&, const Address&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Address& a) { return os << '@' << a.id; }
};

/// Account balances and escrow, in indivisible base units.
using Funds = std::uint64_t;

/// Contract-internal SCP credit. Negative means debt.
using Credit = std::int64_t;

/// QoS class identifier (conventionally 1-9). Opaque to the contract.
using QciId = std::uint32_t;

using Period = std::uint64_t;

/// Non-negative rational number used for commercial rates and simulator multipliers.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    friend bool operator==(const Rational&, const Rational&) = default;

    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Parses "n/d" or a plain integer "n". Throws Error{InvalidConfig} on bad input.
Rational parse_rational(const std::string& text);

// Exact arithmetic helpers. Overflow raises ErrorCode::Overflow.

inline Funds add_funds(Funds a, Funds b) {
    Funds out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "funds addition overflow");
    return out;
}

inline Funds sub_funds(Funds a, Funds b) {
    if (b > a) throw Error(ErrorCode::Overflow, "funds subtraction underflow");
    return a - b;
}

inline Funds mul_funds(Funds a, std::uint64_t b) {
    Funds out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "funds multiplication overflow");
    return out;
}

inline Credit add_credit(Credit a, Credit b) {
    Credit out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "credit overflow");
    return out;
}

inline Credit sub_credit(Credit a, Credit b) {
    Credit out = 0;
    if (__builtin_sub_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "credit overflow");
    return out;
}

inline Credit to_credit(Funds f) {
    if (f > static_cast<Funds>(std::numeric_limits<Credit>::max()))
        throw Error(ErrorCode::Overflow, "amount exceeds credit range");
    return static_cast<Credit>(f);
}

} // namespace scaas

template <>
struct std::hash<scaas::Address> {
    std::size_t operator()(const scaas::Address& a) const noexcept { return std::hash<std::uint64_t>{}(a.id); }
};

#endif // SCAAS_TYPES_HPP

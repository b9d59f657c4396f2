#ifndef SCAAS_SERIALIZE_HPP
#define SCAAS_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scaas/chain.hpp"
#include "scaas/contract.hpp"
#include "scaas/ledger.hpp"

namespace scaas {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Rationals travel as "num/den" strings; plain integers are accepted on input.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j, ErrorCode on_error, const std::string& path);

Json terms_to_json(const SlaTerms& terms);
/// Throws Error{on_error} with a message naming the offending field under `path`.
SlaTerms terms_from_json(const Json& j, ErrorCode on_error, const std::string& path);

Json event_to_json(const EventRecord& ev);

/// Deterministic contract state export (keys sorted). Used by the digest and golden tests.
Json contract_state_json(const SlaContract& contract);

OrderedJson transaction_to_json(const Transaction& t);
/// Throws Error{MalformedLog}.
Transaction transaction_from_json(const Json& j);

// Transaction log file: a header line followed by one transaction per line.
//   {"format":"scaas-txlog","version":1,"count":N,"digest":"sha256:..."}
struct TxLogFile {
    std::string digest;
    std::vector<Transaction> transactions;
};

void write_txlog(std::ostream& os, const std::vector<Transaction>& log, const std::string& digest);
/// Throws Error{MalformedLog} naming the failing line.
TxLogFile read_txlog(std::istream& is);

} // namespace scaas

#endif // SCAAS_SERIALIZE_HPP

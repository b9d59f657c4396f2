#ifndef SCAAS_ERRORS_HPP
#define SCAAS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace scaas {

enum class ErrorCode {
    // ledger
    UnknownAccount,
    InsufficientFunds,
    Overflow,
    MalformedLog,
    // contract
    NoContract,
    AlreadyDeployed,
    InvalidTerms,
    InvalidAddress,
    NotOwner,
    ContractDisabled,
    AlreadyDisabled,
    NotDisabled,
    AlreadyRegistered,
    UnknownScp,
    InactiveScp,
    UnknownQci,
    ZeroDeficit,
    NothingToWithdraw,
    InsufficientEscrow,
    InsufficientEscrowForAccrual,
    // simulator / tooling
    InvalidConfig,
    DigestMismatch,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported as an Error carrying a stable code.
/// Operations that throw leave ledger and contract state unchanged.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    /// Message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace scaas

#endif // SCAAS_ERRORS_HPP

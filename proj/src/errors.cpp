#include "scaas/errors.hpp"

namespace scaas {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnknownAccount: return "UnknownAccount";
    case ErrorCode::InsufficientFunds: return "InsufficientFunds";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::MalformedLog: return "MalformedLog";
    case ErrorCode::NoContract: return "NoContract";
    case ErrorCode::AlreadyDeployed: return "AlreadyDeployed";
    case ErrorCode::InvalidTerms: return "InvalidTerms";
    case ErrorCode::InvalidAddress: return "InvalidAddress";
    case ErrorCode::NotOwner: return "NotOwner";
    case ErrorCode::ContractDisabled: return "ContractDisabled";
    case ErrorCode::AlreadyDisabled: return "AlreadyDisabled";
    case ErrorCode::NotDisabled: return "NotDisabled";
    case ErrorCode::AlreadyRegistered: return "AlreadyRegistered";
    case ErrorCode::UnknownScp: return "UnknownScp";
    case ErrorCode::InactiveScp: return "InactiveScp";
    case ErrorCode::UnknownQci: return "UnknownQci";
    case ErrorCode::ZeroDeficit: return "ZeroDeficit";
    case ErrorCode::NothingToWithdraw: return "NothingToWithdraw";
    case ErrorCode::InsufficientEscrow: return "InsufficientEscrow";
    case ErrorCode::InsufficientEscrowForAccrual: return "InsufficientEscrowForAccrual";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::DigestMismatch: return "DigestMismatch";
    }
    return "Unknown";
}

} // namespace scaas

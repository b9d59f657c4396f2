"""Python bindings for the small-cell SLA contract simulator."""

from ._scaas import (
    Chain,
    PaymentMode,
    ScaasError,
    SlaTerms,
    detect_breaches,
    fuzz_conservation,
    penalty_debit,
    replay_txlog,
    run_scenario,
    strike_rule_check,
)

ScaasError.code = property(lambda self: self.args[0])

__all__ = [
    "Chain",
    "PaymentMode",
    "ScaasError",
    "SlaTerms",
    "detect_breaches",
    "fuzz_conservation",
    "penalty_debit",
    "replay_txlog",
    "run_scenario",
    "strike_rule_check",
]

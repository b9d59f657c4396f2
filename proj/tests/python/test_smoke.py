import os
import pathlib

import pytest

import scaas

SCENARIOS = pathlib.Path(os.environ.get("SCAAS_SCENARIO_DIR", pathlib.Path(__file__).parents[2] / "scenarios"))


def terms(price=2, agreed=100):
    t = scaas.SlaTerms()
    t.price_per_kb = {9: price}
    t.agreed_throughput = {9: agreed}
    t.penalty_rate = "3/2"
    return t


def test_chain_round():
    chain = scaas.Chain()
    owner = chain.create_account(10_000)
    chain.deploy(owner)
    scp = chain.create_account(0)
    chain.deposit(owner, 5_000)
    chain.register_scp(owner, scp, terms())
    chain.record_traffic(owner, scp, 9, 300)
    chain.throughput_breach(owner, scp, 9, 40)
    chain.close_period(owner)
    # 300 * 2 - floor(3 * 40 / 2)
    assert chain.scp_status(scp) == {"active": True, "credit": 540, "strikes": 1}
    assert chain.withdraw(scp) == 540
    assert chain.balance(scp) == 540
    status = chain.contract_status()
    assert status["deposits"] == status["escrow"] + status["withdrawn"] + status["recovered"]
    kinds = [e["kind"] for e in chain.events()]
    assert kinds.count("InsufficientThroughput") == 1


def test_errors_carry_code():
    chain = scaas.Chain()
    owner = chain.create_account(10)
    chain.deploy(owner)
    with pytest.raises(scaas.ScaasError) as err:
        chain.deposit(owner, 11)
    assert err.value.code == "InsufficientFunds"
    chain.failsafe_disable(owner)
    with pytest.raises(scaas.ScaasError) as err:
        chain.close_period(owner)
    assert err.value.code == "ContractDisabled"


def test_penalty_debit():
    assert scaas.penalty_debit(5, 10) == 50
    assert scaas.penalty_debit("1/3", 10) == 3
    assert scaas.penalty_debit((7, 2), 3) == 10


def test_detect_breaches():
    out = scaas.detect_breaches({"b": {9: 99}, "a": {9: 100}}, {"a": terms(), "b": terms()})
    assert out == [("b", 9, 1)]


def test_run_and_replay():
    result = scaas.run_scenario(str(SCENARIOS / "outage.json"))
    rows = {r["label"]: r for r in result["report"]["scps"]}
    assert rows["rooftop-7"]["active"] is False
    assert result["csv"].splitlines()[0].startswith("label,address,earned")
    replayed = scaas.replay_txlog(result["txlog"])
    assert replayed["matches"] and replayed["digest"] == result["digest"]
    assert replayed["rejected"] == []
    again = scaas.run_scenario(str(SCENARIOS / "outage.json"))
    assert again["digest"] == result["digest"]


def test_seed_override_changes_run():
    a = scaas.run_scenario(str(SCENARIOS / "outage.json"), seed=1)
    b = scaas.run_scenario(str(SCENARIOS / "outage.json"), seed=2)
    assert a["report"]["seed"] == 1
    assert a["digest"] != b["digest"]


def test_checks():
    assert scaas.strike_rule_check(6)["counterexample"] is None
    assert scaas.fuzz_conservation(3, 500)["violation"] is None

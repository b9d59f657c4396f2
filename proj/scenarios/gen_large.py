"""Writes large_50x9x1000.json: 50 SCPs x 9 QCIs x 1000 periods.

Agreed throughput is 85% of nominal and variability 10%, so cells only
breach inside degradation windows: full outages (removal after three
periods), short outages (strikes that later reset) and partial slowdowns
(intermittent breaches).
"""

import json
import pathlib


def build():
    scps = []
    for i in range(50):
        price, agreed, traffic = {}, {}, {}
        for q in range(1, 10):
            nominal = 1000 + 37 * q + 11 * i
            price[str(q)] = 1 + (q + i) % 3
            agreed[str(q)] = nominal * 17 // 20
            traffic[str(q)] = {"nominal_kb_per_period": nominal, "variability": "1/10"}
        if i % 10 == 3:
            start = 100 + 10 * i
            traffic["5"]["degradations"] = [{"start": start, "end": start + 3, "multiplier": "0"}]
        if i % 10 == 5:
            start = 50 + 7 * i
            traffic["1"]["degradations"] = [
                {"start": start, "end": start + 1, "multiplier": "0"},
                {"start": start + 400, "end": start + 401, "multiplier": "1/2"},
            ]
        if i % 7 == 2:
            traffic["9"]["degradations"] = [{"start": 200, "end": 260, "multiplier": "9/10"}]
        scps.append({
            "label": f"scp-{i:02d}",
            "terms": {
                "payment_mode": "per_traffic",
                "price_per_kb": price,
                "agreed_throughput": agreed,
                "penalty_rate": "3/2",
                "strike_limit": 3,
            },
            "traffic": traffic,
        })
    return {
        "seed": 123456789,
        "num_periods": 1000,
        "mno": {"balance": 10_000_000_000_000, "initial_deposit": 1_000_000_000_000},
        "scps": scps,
    }


if __name__ == "__main__":
    out = pathlib.Path(__file__).with_name("large_50x9x1000.json")
    out.write_text(json.dumps(build(), indent=1) + "\n")

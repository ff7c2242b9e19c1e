#!/usr/bin/env python3
# Copyright posopen contributors. All Rights Reserved.
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the snapshot fixture pack under fixtures/.

The cohort is synthetic. A handful of values are anchored to public,
well-known protocol parameters (the 32-token Ethereum minimum, the
29-validator BNB cap, and so on); everything else is a labeled stand-in
shaped to give each chain a plausible metric profile. Provenance entries
record which is which.
"""

import json
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "fixtures")
TAKEN_AT = "2023-03-31T00:00:00Z"
RETRIEVED = "2023-04-21T00:00:00Z"


def token(units, decimals, base_extra=0):
    return {"base_units": str(units * 10**decimals + base_extra),
            "decimals": decimals}


def prov(source):
    return {"source": source, "retrieved_at": RETRIEVED}


def synthetic(note="synthetic stand-in"):
    return prov("synthetic: " + note)


def make_doc(chain_id, unit, family, validators, decimals, min_stake_units,
             tradable_units, circulating_units, price, hw_cents, apr,
             max_count=None, count_undisclosed=False, provenance=None):
    staked = sum(v for _, v in validators)
    vset = {
        "min_stake_requirement": token(min_stake_units, decimals),
        "validators": [{"id": vid, "stake": {"base_units": str(stake),
                                             "decimals": decimals}}
                       for vid, stake in validators],
    }
    if max_count is not None:
        vset["max_count"] = max_count
    if count_undisclosed:
        vset["count_undisclosed"] = True
    doc = {
        "format_version": 1,
        "chain": {"chain_id": chain_id, "taken_at": TAKEN_AT,
                  "validator_unit": unit},
        "consensus": {"family": family, "quorum": {"num": 2, "den": 3}},
        "validator_set": vset,
        "economics": {
            "circulating_supply": token(circulating_units, decimals),
            "tradable_supply": token(tradable_units, decimals),
            "staked_total": {"base_units": str(staked), "decimals": decimals},
            "price_usd_per_token": price,
        },
        "costs": {"hw_monthly_cost_usd_cents": str(hw_cents),
                  "reward_apr": apr},
        "provenance": provenance or {},
    }
    base_prov = {
        "economics.circulating_supply": synthetic(),
        "economics.tradable_supply": synthetic(),
        "economics.staked_total": synthetic(),
        "economics.price_usd_per_token": synthetic(),
        "costs.hw_monthly_cost_usd_cents": synthetic(),
        "costs.reward_apr": synthetic(),
    }
    base_prov.update(doc["provenance"])
    doc["provenance"] = dict(sorted(base_prov.items()))
    assert staked <= tradable_units * 10**decimals, chain_id
    assert tradable_units <= circulating_units, chain_id
    for _, stake in validators:
        assert stake >= min_stake_units * 10**decimals, chain_id
    return doc


def zipf_stakes(n, s_tenths, total_units, decimals, prefix):
    """Deterministic Zipf-ish stake list summing exactly to total base units."""
    weights = []
    for i in range(1, n + 1):
        # i^(s/10) via integer-friendly float; frozen by committing the output
        weights.append(1.0 / (i ** (s_tenths / 10.0)))
    wsum = sum(weights)
    total = total_units * 10**decimals
    stakes = [int(total * w / wsum) for w in weights]
    stakes[0] += total - sum(stakes)
    return [("%s%04d" % (prefix, i), stakes[i]) for i in range(n)]


def even_stakes(n, total_units, decimals, prefix, jitter=0):
    total = total_units * 10**decimals
    jitters = [(i * 37 % (jitter + 1)) * 10**decimals if jitter else 0
               for i in range(n)]
    base = (total - sum(jitters)) // n
    stakes = [base + j for j in jitters]
    stakes[0] += total - sum(stakes)
    return [("%s%04d" % (prefix, i), stakes[i]) for i in range(n)]


def build():
    d6 = 6
    docs = {}

    # Ethereum: counted per client; 32-token protocol minimum; one large
    # staking-pool client holding ~31% of stake.
    dec = 18
    pool = 5_580_000 * 10**dec
    second = 1_440_000 * 10**dec
    rest_n = 998
    rest_each = 11_002 * 10**dec
    remainder = 18_000_000 * 10**dec - pool - second - rest_n * rest_each
    validators = [("client0000", pool), ("client0001", second)]
    validators += [("client%04d" % (i + 2), rest_each + (remainder if i == 0 else 0))
                   for i in range(rest_n)]
    docs["ethereum"] = make_doc(
        "ethereum", "client", "stake_proportional", validators, dec,
        32, 120_000_000, 120_000_000, "2000", 5000, {"num": 5, "den": 100},
        provenance={
            "validator_set.min_stake_requirement":
                prov("anchor: Ethereum fixes the stake per validator at 32 tokens"),
            "economics.staked_total":
                prov("anchor: fixture pinned at 18,000,000 staked tokens"),
            "economics.price_usd_per_token":
                prov("anchor: fixture pinned at $2,000 per token"),
        })

    # Solana: no minimum stake, large validator set, flat-ish distribution.
    docs["solana"] = make_doc(
        "solana", "validator", "stake_proportional",
        zipf_stakes(2050, 5, 288_000_000, 9, "sol"), 9,
        0, 400_000_000, 550_000_000, "20", 80000, {"num": 7, "den": 100},
        provenance={
            "validator_set.min_stake_requirement":
                prov("anchor: Solana has no minimum staking requirement"),
        })

    # Avalanche: near-uniform stakes, 2000-token minimum.
    dec = 9
    avax = even_stakes(1100, 240_000_000, dec, "avax", jitter=400)
    docs["avalanche"] = make_doc(
        "avalanche", "validator", "stake_proportional", avax, dec,
        2000, 400_000_000, 430_000_000, "17", 15000, {"num": 9, "den": 100})

    # BNB Chain: hard 29-validator cap, high entry stake.
    small = [("bnb%04d" % i, 40_000 * 10**d6) for i in range(10)]
    big = [("bnb%04d" % (10 + i), (80_000 + 2_000 * i) * 10**d6)
           for i in range(19)]
    docs["bnb-chain"] = make_doc(
        "bnb-chain", "validator", "validator_count", small + big, d6,
        2_000, 12_500_000, 155_000_000, "310", 45000, {"num": 3, "den": 100},
        max_count=29,
        provenance={
            "validator_set.max_count":
                prov("anchor: BNB Chain caps the validator set at 29"),
        })

    # Klaytn: permissioned council, equal 5M stakes, >10% APR.
    klay = even_stakes(31, 155_000_000, d6, "klay")
    docs["klaytn"] = make_doc(
        "klaytn", "validator", "validator_count", klay, d6,
        5_000_000, 500_000_000, 3_100_000_000, "0.20", 90000,
        {"num": 12, "den": 100}, max_count=31,
        provenance={
            "costs.reward_apr": prov("anchor: Klaytn offers over 10% APR"),
        })

    # Cosmos Hub: no minimum, moderate concentration, >10% APR.
    docs["cosmos-hub"] = make_doc(
        "cosmos-hub", "validator", "stake_proportional",
        zipf_stakes(180, 9, 190_000_000, d6, "atom"), d6,
        0, 292_000_000, 350_000_000, "11", 12000, {"num": 18, "den": 100},
        provenance={
            "validator_set.min_stake_requirement":
                prov("anchor: Cosmos Hub has no minimum staking requirement"),
            "costs.reward_apr": prov("anchor: Cosmos Hub offers over 10% APR"),
        })

    # NEAR: a few heavyweight pools over a long tail.
    dec = d6
    near = [("near%04d" % i, 18_000_000 * 10**dec) for i in range(4)]
    tail_total = 108_000_000 * 10**dec
    tail = even_stakes(196, 108_000_000, dec, "neartail")
    near += tail
    docs["near"] = make_doc(
        "near", "validator", "stake_proportional", near, dec,
        10_000, 400_000_000, 500_000_000, "2", 18000, {"num": 9, "den": 100})
    assert sum(s for _, s in near) == 180_000_000 * 10**dec and tail_total

    # Polygon: small concentrated set.
    poly = [("poly%04d" % i, 480_000_000 * 10**d6) for i in range(3)]
    poly += even_stakes(97, 1_760_000_000, d6, "polytail", jitter=900)
    docs["polygon"] = make_doc(
        "polygon", "validator", "stake_proportional", poly, d6,
        1, 8_420_000_000, 10_000_000_000, "1.10", 35000, {"num": 5, "den": 100})

    # Aptos: very high entry stake, high staking ratio.
    apt = zipf_stakes(104, 6, 820_000_000, d6, "apt")
    apt = [(vid, max(stake, 2_000_000 * 10**d6)) for vid, stake in apt]
    # Rebalance the head so the total still matches after the floor.
    total_target = 820_000_000 * 10**d6
    apt[0] = (apt[0][0], apt[0][1] - (sum(s for _, s in apt) - total_target))
    docs["aptos"] = make_doc(
        "aptos", "validator", "stake_proportional", apt, d6,
        1_000_000, 1_000_000_000, 1_050_000_000, "12", 70000,
        {"num": 7, "den": 100})

    # Celo: count-proportional with evenly distributed stakes.
    celo = even_stakes(110, 275_000_000, d6, "celo", jitter=500)
    docs["celo"] = make_doc(
        "celo", "validator", "validator_count", celo, d6,
        10_000, 500_000_000, 600_000_000, "0.65", 14000, {"num": 8, "den": 100})

    # Algorand: validator count undisclosed; set is a stand-in.
    algo = even_stakes(120, 120_000_000, d6, "algo", jitter=700)
    docs["algorand"] = make_doc(
        "algorand", "validator", "validator_count", algo, d6,
        0, 480_000_000, 7_200_000_000, "0.20", 11000, {"num": 4, "den": 100},
        count_undisclosed=True,
        provenance={
            "validator_set.min_stake_requirement":
                prov("anchor: Algorand has no minimum staking requirement"),
        })

    cohort_dir = os.path.join(OUT, "cohort")
    os.makedirs(cohort_dir, exist_ok=True)
    for name, doc in docs.items():
        path = os.path.join(cohort_dir, name + ".json")
        with open(path, "w") as f:
            json.dump(doc, f, indent=2)
            f.write("\n")

    # Heavy-tail regression fixture: Zipf(s=1.2) over 2,000 validators.
    extra_dir = os.path.join(OUT, "extra")
    os.makedirs(extra_dir, exist_ok=True)
    zipf = zipf_stakes(2000, 12, 1_000_000_000, 0, "z")
    doc = make_doc("zipf-2000", "validator", "stake_proportional", zipf, 0,
                   0, 10_000_000_000, 10_000_000_000, "1", 10000,
                   {"num": 5, "den": 100})
    with open(os.path.join(extra_dir, "zipf_2000.json"), "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")

    # Sanity: quorum count under stake-proportional 2/3 on the Zipf fixture.
    stakes = sorted((s for _, s in zipf), reverse=True)
    total = sum(stakes)
    acc = 0
    k = 0
    for s in stakes:
        acc += s
        k += 1
        if 3 * acc >= 2 * total:
            break
    print("zipf-2000: quorum_validator_count =", k, "of", len(stakes),
          "(%.2f%%)" % (100.0 * k / len(stakes)))
    assert k < 0.15 * len(stakes)
    print("wrote", len(docs), "cohort fixtures +", "zipf_2000.json")


if __name__ == "__main__":
    build()

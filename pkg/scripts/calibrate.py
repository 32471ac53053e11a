"""Measure the worst observed slack behind every frozen constant.

Uses seeds disjoint from the test suite.  Prints one line per constant with
the measured worst value next to the frozen one.

    python3 scripts/calibrate.py [--quick]
"""
import argparse
import math
import random

from inca import constants as K
from inca.balance import balance
from inca.contract import make_contracting
from inca.generators import (TEXT_KINDS, comb_rlslp, corpus, generate_corpus, generate_rlslp,
                             greedy_lz, random_bidirectional, random_chain_rlslp, random_merge_rlslp)
from inca.grammar_access import access, build_accessor
from inca.ibst import build_ibst, build_nav, locate
from inca.parse import from_blocktree, from_rlslp
from inca.blocktree import build_blocktree
from inca.parse_access import build_parse_accessor, parse_access
from inca.rlslp import balance_factor
from inca.text import repeat_profile


def balancing(rounds, rng):
    worst_ratio = worst_factor = 0.0
    grammars = [comb_rlslp(1000, "left"), comb_rlslp(1000, "right")]
    for i in range(rounds):
        text = generate_corpus(TEXT_KINDS[i % 5], rng.randint(1, 2000), 3, 50000 + i)
        grammars.append(random_merge_rlslp(text, i))
    for i in range(rounds):
        g = random_chain_rlslp(rng.randint(2, 300), 90000 + i)
        if g is not None:
            grammars.append(g)
    for g in grammars:
        out, rep = balance(g, report=True)
        worst_ratio = max(worst_ratio, rep.size_ratio)
        worst_factor = max(worst_factor, balance_factor(out))
    return worst_ratio, worst_factor


def descent(rounds):
    worst = -math.inf
    for seed in range(rounds):
        text = generate_corpus("mutated-repeat", 4000, 2 + seed % 3, 60000 + seed)
        ell = repeat_profile(text)
        for scheme in ("doubling", "random-merge"):
            acc = build_accessor(generate_rlslp(text, scheme, seed), c_bal=K.C_BAL_LOCAL)
            for q in range(1, len(text) + 1):
                _, cost = access(acc, q)
                if acc.partition.labels[acc.leaf_index(q)[0]].kind == "terminal":
                    continue
                worst = max(worst, cost.descent_steps
                            - K.C_BAL_LOCAL * max(1, math.log2(ell[q - 1])))
    return worst


def navigation(rounds, rng):
    worst = -math.inf
    for _ in range(rounds):
        d = rng.choice([2, 4, 16])
        end = rng.randint(2, 4097)
        xs = [1] + sorted(rng.sample(range(2, end), rng.randint(0, min(end - 2, 200))))
        trie = build_ibst(xs, end, d)
        sources = []
        for _ in range(20):
            y = rng.randint(1, end - 1)
            sources.append((y, rng.randint(y + 1, min(end, y + rng.choice([2, 16, 256, 4096])))))
        nav = build_nav(trie, sources)
        for i, (y, z) in enumerate(sources):
            for q in range(y, z):
                res = locate(nav, i, q)
                length = trie.starts[res.j + 1] - trie.starts[res.j]
                worst = max(worst, res.edges - max(0, math.log((z - y) / length, d)))
    return worst


def telescoping(rounds):
    # worst (edges - log_d L - C_2) / (h_q (1 + log_d alpha)) over queries with h_q > 0
    worst = -math.inf
    for _, text in corpus(3000, seed=70000, count=rounds):
        base = random_bidirectional(text, 5)
        cases = [(from_rlslp(random_merge_rlslp(text, 3)), 1),
                 (from_blocktree(build_blocktree(text)), 1)]
        cases += [(make_contracting(base, a), a) for a in (2, 16)]
        for p, alpha in cases:
            acc = build_parse_accessor(p, alpha=alpha, w=16)
            for q in range(1, p.n + 1):
                _, cost = parse_access(acc, q)
                if not cost.h_q:
                    continue
                i = p.phrase_index(q)
                spare = cost.trie_edges - math.log(p.starts[i + 1] - p.starts[i], acc.d) - K.C_2
                worst = max(worst, spare / (cost.h_q * (1 + math.log(alpha, acc.d))))
    return worst


def transform(rounds, rng):
    worst = 0.0
    for it in range(rounds):
        n = rng.randint(1, 3000)
        text = generate_corpus(TEXT_KINDS[it % 5], n, rng.choice([2, 3, 4, 8]), 80000 + it)
        for p in (random_bidirectional(text, it), greedy_lz(text)):
            for alpha in (2, 3, 16, 64):
                out = make_contracting(p, alpha)
                scale = p.t * max(1.0, math.log(n / p.t, alpha))
                worst = max(worst, (out.t - K.C_CT0) / scale)
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    f = 0.2 if args.quick else 1.0
    rng = random.Random(2024)
    ratio, factor = balancing(int(500 * f), rng)
    rows = [
        ("C_BAL (size ratio)", ratio, K.C_BAL),
        ("C_BAL_LOCAL (balance factor)", factor, K.C_BAL_LOCAL),
        ("C_ACC (descent slack)", descent(max(1, int(6 * f))), K.C_ACC),
        ("C_NAV (navigation slack)", navigation(int(150 * f), rng), K.C_NAV),
        ("C_1 (per-height edges)", telescoping(max(2, int(10 * f))), K.C_1),
        ("C_CT (transform size)", transform(int(800 * f), rng), K.C_CT),
    ]
    for name, measured, frozen in rows:
        flag = "ok" if measured <= frozen else "EXCEEDED"
        print(f"{name:32s} measured={measured:8.3f} frozen={frozen:6.2f} {flag}")


if __name__ == "__main__":
    main()

"""Per-query cost against incongruity on generated corpora.

Writes one CSV per (text, structure) into OUTDIR and prints mean cost per
power-of-two bucket of ell_q, which should grow roughly like log ell_q.

    python3 scripts/bench_corpus.py OUTDIR [--n 5000] [--texts 3]
"""
import argparse
import os
import statistics
from collections import defaultdict

from inca.bench import KINDS, bench, write_csv
from inca.generators import generate_corpus


def bucket(ell):
    return max(1, ell).bit_length() - 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir")
    ap.add_argument("--n", type=int, default=5000)
    ap.add_argument("--texts", type=int, default=3)
    ap.add_argument("--word-size", type=int, default=64)
    args = ap.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    for seed in range(args.texts):
        text = generate_corpus("mutated-repeat", args.n, 4, seed)
        for kind in KINDS:
            records = bench(kind, text, w=args.word_size, seed=seed)
            path = os.path.join(args.outdir, f"mutated-{seed}-{kind}.csv")
            with open(path, "w", newline="") as fh:
                write_csv(records, fh)
            groups = defaultdict(list)
            for r in records:
                groups[bucket(r.ell_q)].append(r.descent_steps + r.trie_edges)
            summary = " ".join(f"2^{b}:{statistics.mean(v):.1f}"
                               for b, v in sorted(groups.items()))
            print(f"text {seed} {kind:10s} {summary}")


if __name__ == "__main__":
    main()

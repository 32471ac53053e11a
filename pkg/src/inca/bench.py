"""Per-query benchmark records for every access structure."""
import csv
import random
import time
from dataclasses import asdict, dataclass, fields

from .blocktree import bt_access, build_blocktree, build_bt_accessor
from .constants import DEFAULT_W
from .contract import make_contracting
from .generators import doubling_rlslp, random_bidirectional
from .grammar_access import access, build_accessor
from .parse import height_profile
from .parse_access import build_parse_accessor, parse_access
from .rlslp import access_naive
from .text import repeat_profile

KINDS = ("rlslp", "grammar", "blocktree", "parse", "contracted")


@dataclass
class BenchRecord:
    kind: str
    q: int
    ell_q: int
    h_q: int  # -1 when the structure has no parse heights
    pred_k: int  # -1 when no predecessor search is involved
    trie_edges: int
    descent_steps: int
    wall_nanos: int


FIELDS = [f.name for f in fields(BenchRecord)]


def build_structure(kind, text, w=DEFAULT_W, alpha=None, seed=0, grammar=None, parse=None):
    """The access structure of ``kind`` for ``text``; returns a query function.

    The query function maps q to (symbol, h_q, pred_k, trie_edges, descent_steps).
    """
    if kind == "rlslp":
        g = grammar or doubling_rlslp(text)

        def query(q):
            sym, steps = access_naive(g, q)
            return sym, -1, -1, 0, steps
    elif kind == "grammar":
        acc = build_accessor(grammar or doubling_rlslp(text), w=w)

        def query(q):
            sym, cost = access(acc, q)
            return sym, -1, cost.pred_k, 0, cost.descent_steps
    elif kind == "blocktree":
        acc = build_bt_accessor(build_blocktree(text), w=w)

        def query(q):
            sym, cost = bt_access(acc, q)
            return sym, -1, cost.pred_k, 0, cost.steps
    elif kind in ("parse", "contracted"):
        p = parse or random_bidirectional(text, seed)
        if kind == "contracted":
            p = make_contracting(p, alpha or w)
        acc = build_parse_accessor(p, w=w)

        def query(q):
            sym, cost = parse_access(acc, q)
            return sym, cost.h_q, cost.pred_k, cost.trie_edges, 0
    else:
        raise ValueError(f"unknown structure kind {kind!r}")
    return query


def bench(kind, text, queries="all", sample=1000, seed=0, w=DEFAULT_W, alpha=None,
          grammar=None, parse=None):
    """One BenchRecord per query; raises AssertionError on a wrong symbol."""
    query = build_structure(kind, text, w=w, alpha=alpha, seed=seed,
                            grammar=grammar, parse=parse)
    ell = repeat_profile(text)
    n = len(text)
    if queries == "all":
        qs = range(1, n + 1)
    else:
        rng = random.Random(seed)
        qs = [rng.randint(1, n) for _ in range(sample)]
    out = []
    for q in qs:
        t0 = time.perf_counter_ns()
        sym, h, k, edges, steps = query(q)
        wall = time.perf_counter_ns() - t0
        if sym != text[q - 1]:
            raise AssertionError(f"{kind}: wrong symbol at q={q}")
        out.append(BenchRecord(kind, q, ell[q - 1], h, k, edges, steps, wall))
    return out


def recount(kind, text, records, **kw):
    """Records whose counters differ from a fresh instrumented pass."""
    query = build_structure(kind, text, **kw)
    bad = []
    for r in records:
        _, h, k, edges, steps = query(r.q)
        if (h, k, edges, steps) != (r.h_q, r.pred_k, r.trie_edges, r.descent_steps):
            bad.append(r)
    return bad


def write_csv(records, fh):
    writer = csv.DictWriter(fh, fieldnames=FIELDS)
    writer.writeheader()
    for r in records:
        writer.writerow(asdict(r))


def heights_match(parse, records):
    """Whether the h_q column equals the parse's height profile."""
    hp = height_profile(parse)
    return all(r.h_q == hp[r.q] for r in records)

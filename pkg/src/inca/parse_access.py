"""Random access over an alpha-contracting parse.

Find the phrase holding q with the distance-sensitive predecessor, then
repeatedly map q into the source of its phrase and relocate it with the
interval-biased trie until an explicit phrase is reached.
"""
from dataclasses import dataclass
from fractions import Fraction

from .constants import DEFAULT_W
from .dspred import ZFastTrie, trie_height
from .ibst import build_ibst, build_nav, locate
from .parse import Explicit, min_alpha


class NotContracting(ValueError):
    pass


@dataclass
class ParseCost:
    pred_k: int
    iterations: int  # h_q + 1
    trie_edges: int
    compact_edges: int
    child_steps: int

    @property
    def h_q(self):
        return self.iterations - 1


@dataclass
class ParseAccessor:
    parse: object
    trie: object
    nav: object
    pred: ZFastTrie
    alpha: Fraction
    d: int
    source_of: dict  # phrase index -> cover index

    def __len__(self):
        return self.parse.n

    def space_words(self):
        return (self.pred.space_words() + self.nav.space_nodes()
                + 2 * self.parse.t)


def build_parse_accessor(parse, alpha=None, w=DEFAULT_W, d=None):
    """Accessor with trie arity d (default w); rejects parses that are not alpha-contracting."""
    parse.check()
    measured = min_alpha(parse)
    if alpha is None:
        alpha = max(Fraction(1), measured)
    elif measured > alpha:
        raise NotContracting(f"parse is {measured}-contracting, above alpha={alpha}")
    end = parse.n + 1
    while w ** trie_height(w) <= end:
        w += 1
    starts = parse.starts[:-1]
    trie = build_ibst(starts, end, d or w)
    sources = parse.sources()
    nav = build_nav(trie, [iv for _, iv in sources])
    source_of = {i: k for k, (i, _) in enumerate(sources)}
    return ParseAccessor(parse, trie, nav, ZFastTrie(starts, w), Fraction(alpha), d or w,
                         source_of)


def parse_access(acc, q):
    """(S[q], ParseCost) for 1-based q."""
    p = acc.parse
    if not 1 <= q <= p.n:
        raise IndexError(f"position {q} outside [1, {p.n}]")
    ans = acc.pred.pred(q)
    i = p.phrase_index(ans.value) if ans.value else 0
    iterations, edges, compact, child = 1, 0, 0, 0
    while True:
        ph = p.phrases[i]
        x = p.starts[i]
        if isinstance(ph, Explicit):
            cost = ParseCost(ans.k, iterations, edges, compact, child)
            return ph.literal[q - x], cost
        q = q - x + ph.src
        res = locate(acc.nav, acc.source_of[i], q)
        i = res.j
        iterations += 1
        edges += res.edges
        compact += res.compact_edges
        child += res.child_steps

"""Parses: factorizations of a text into explicit and copied phrases.

A copy phrase of length m at start x with source p maps every position
x + j to f(x + j) = p + j.  Iterating f ends in an explicit phrase exactly
when the parse is decodable; the number of iterations is the height h_q.
"""
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .text import as_text


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class Explicit:
    literal: bytes

    def __len__(self):
        return len(self.literal)


@dataclass(frozen=True)
class Copy:
    src: int  # 1-based start of the source
    length: int

    def __len__(self):
        return self.length


@dataclass
class Parse:
    phrases: list
    starts: list = field(init=False)  # x_1..x_t plus the sentinel n+1

    def __post_init__(self):
        self.starts = [1]
        for ph in self.phrases:
            if len(ph) < 1:
                raise ValueError("empty phrase")
            self.starts.append(self.starts[-1] + len(ph))

    @property
    def n(self):
        return self.starts[-1] - 1

    @property
    def t(self):
        return len(self.phrases)

    @property
    def bidirectional(self):
        return any(isinstance(ph, Copy) and ph.src >= x
                   for ph, x in zip(self.phrases, self.starts))

    def phrase_index(self, q):
        """Index i (0-based) of the phrase with x_i <= q < x_{i+1}."""
        if not 1 <= q <= self.n:
            raise IndexError(f"position {q} outside [1, {self.n}]")
        return bisect_right(self.starts, q) - 1

    def sources(self):
        """(phrase index, [y, z)) for every copy phrase."""
        return [(i, (ph.src, ph.src + ph.length))
                for i, ph in enumerate(self.phrases) if isinstance(ph, Copy)]

    def check(self):
        for i, ph in enumerate(self.phrases):
            if isinstance(ph, Copy) and not (1 <= ph.src and ph.src + ph.length - 1 <= self.n):
                raise DecodeError(f"phrase {i + 1}: source outside [1, {self.n}]")
        return self


def f_of(p, q):
    i = p.phrase_index(q)
    ph = p.phrases[i]
    if isinstance(ph, Explicit):
        return q
    return ph.src + q - p.starts[i]


@dataclass
class HeightProfile:
    h: list  # h[q - 1] for q = 1..n
    parse: Parse

    def __getitem__(self, q):
        return self.h[q - 1]

    def chain(self, q):
        """q, f(q), ..., ending in an explicit phrase."""
        out = [q]
        for _ in range(self[q]):
            out.append(f_of(self.parse, out[-1]))
        return out

    @property
    def max(self):
        return max(self.h, default=0)


def _resolve(p):
    """Heights and decoded bytes of every position; raises on referencing cycles."""
    p.check()
    n = p.n
    h = [-1] * (n + 1)
    out = bytearray(n + 1)
    pos_phrase = [0] * (n + 1)
    for i, x in enumerate(p.starts[:-1]):
        ph = p.phrases[i]
        for j in range(len(ph)):
            pos_phrase[x + j] = i
            if isinstance(ph, Explicit):
                h[x + j] = 0
                out[x + j] = ph.literal[j]
    on_path = bytearray(n + 1)
    for q in range(1, n + 1):
        if h[q] >= 0:
            continue
        path, cur = [], q
        while h[cur] < 0:
            if on_path[cur]:
                raise DecodeError(f"referencing cycle through position {cur}")
            on_path[cur] = 1
            path.append(cur)
            i = pos_phrase[cur]
            cur = p.phrases[i].src + cur - p.starts[i]
        base_h, ch = h[cur], out[cur]
        for k, pos in enumerate(reversed(path), 1):
            h[pos] = base_h + k
            out[pos] = ch
            on_path[pos] = 0
    return h[1:], bytes(out[1:])


def decode(p):
    return _resolve(p)[1]


def height_profile(p):
    return HeightProfile(_resolve(p)[0], p)


def is_decodable(p):
    try:
        _resolve(p)
    except DecodeError:
        return False
    return True


def min_alpha(p):
    """Smallest alpha with |P| <= alpha * |s| for every source s overlapping phrase P."""
    lengths = [len(ph) for ph in p.phrases]
    # sparse table for range maxima over phrase lengths
    table = [lengths]
    span = 1
    while 2 * span <= len(lengths):
        prev = table[-1]
        table.append([max(prev[i], prev[i + span]) for i in range(len(prev) - span)])
        span *= 2
    best = Fraction(0)
    for _, (y, z) in p.sources():
        a = bisect_right(p.starts, y) - 1
        b = bisect_right(p.starts, z - 1) - 1
        lvl = (b - a + 1).bit_length() - 1
        longest = max(table[lvl][a], table[lvl][b - (1 << lvl) + 1])
        best = max(best, Fraction(longest, z - y))
    return best


def greedy_explicit(text, cap):
    """Explicit phrases of length <= cap covering ``text``."""
    text = as_text(text)
    return [Explicit(text[i:i + cap]) for i in range(0, len(text), cap)]


# -- parses induced by other structures --------------------------------------

def from_rlslp(g):
    """Parse whose phrases are the grammar-tree leaves.

    A pruned nonterminal copies the expansion of its internal occurrence; an
    iteration leaf B^(k-1) copies, with overlap, from the B just before it.
    """
    from .rlslp import grammar_tree, leaf_length

    tree = grammar_tree(g)
    # start position of every node, by a preorder walk
    start = [0] * len(tree)
    start[0] = 1
    for v in range(len(tree)):
        x = start[v]
        for c in tree.children[v]:
            start[c] = x
            label = tree.labels[c]
            x += leaf_length(g, label) if not isinstance(label, str) else g.explen[label]
    phrases = []
    for v in range(len(tree)):
        label = tree.labels[v]
        if isinstance(label, str):
            continue
        if label.kind == "terminal":
            phrases.append(Explicit(bytes([label.symbol])))
        elif label.kind == "nonterminal":
            src = start[tree.internal[label.symbol]]
            phrases.append(Copy(src, g.explen[label.symbol]))
        else:
            m = g.explen[label.symbol]
            phrases.append(Copy(start[v] - m, m * label.k))
    return Parse(phrases)


def from_blocktree(bt):
    """Parse whose phrases are the block-tree leaves (padding stripped)."""
    phrases = []
    for blk in bt.leaves():
        if blk.start > bt.n:
            break
        length = min(blk.length, bt.n - blk.start + 1)
        if blk.kind == "explicit":
            phrases.append(Explicit(bt.text[blk.start - 1:blk.start - 1 + length]))
        else:
            phrases.append(Copy(blk.source, length))
    return Parse(phrases)

"""Block trees and leaf-partition access over them.

The text is padded to a power of two N.  Level l holds blocks of length
N / 2^l.  Scanning a level left to right, a block becomes a pruned leaf
when its content occurs earlier without overlapping it and the one or two
same-level blocks covering that occurrence are internal; this makes every
shift to a source land on an internal block, so the next step descends.
"""
from dataclasses import dataclass, field

from .constants import DEFAULT_W
from .dspred import ZFastTrie, trie_height
from .text import as_text

LEAF_THRESHOLD = 4


@dataclass
class Block:
    level: int
    start: int
    length: int
    kind: str = "internal"  # internal | pruned | explicit | pad
    children: tuple = ()
    source: int = 0  # pruned: 1-based start of the leftmost earlier occurrence


@dataclass
class BlockTree:
    text: bytes
    n: int
    N: int
    threshold: int
    blocks: list = field(default_factory=list)
    levels: list = field(default_factory=list)  # per level: {start: block index}

    @property
    def L(self):
        return sum(1 for b in self.blocks if b.kind != "pad")

    def block_at(self, level, pos):
        """Index of the level-``level`` block containing ``pos``, if it exists."""
        m = self.N >> level
        return self.levels[level].get((pos - 1) // m * m + 1)

    def leaves(self):
        out, stack = [], [0]
        while stack:
            b = self.blocks[stack.pop()]
            if b.kind == "internal":
                stack.extend(reversed(b.children))
            else:
                out.append(b)
        return out

    def stats(self):
        kinds = [b.kind for b in self.blocks if b.kind != "pad"]
        pruned = kinds.count("pruned")
        return {"L": len(kinds), "levels": len(self.levels),
                "pruned": pruned, "explicit": kinds.count("explicit"),
                "internal": kinds.count("internal"),
                "pruning_ratio": pruned / len(kinds)}


def build_blocktree(text, leaf_threshold=LEAF_THRESHOLD):
    text = as_text(text)
    n = len(text)
    if n < 1:
        raise ValueError("empty text")
    if leaf_threshold < 1:
        raise ValueError("leaf threshold must be positive")
    N = 1
    while N < n:
        N *= 2
    bt = BlockTree(text, n, N, leaf_threshold)
    bt.blocks.append(Block(0, 1, N))
    frontier = [0]
    level = 0
    while frontier:
        m = N >> level
        bt.levels.append({bt.blocks[i].start: i for i in frontier})
        nxt = []
        for i in frontier:
            b = bt.blocks[i]
            if b.start > n:
                b.kind = "pad"
                continue
            if m <= leaf_threshold or m == 1:
                b.kind = "explicit"
                continue
            if b.start + m - 1 <= n:
                j = text.find(text[b.start - 1:b.start - 1 + m]) + 1
                if j + m <= b.start and _covered_by_internal(bt, level, j, m):
                    b.kind, b.source = "pruned", j
                    continue
            half = m // 2
            kids = []
            for s in (b.start, b.start + half):
                kids.append(len(bt.blocks))
                bt.blocks.append(Block(level + 1, s, half))
            b.children = tuple(kids)
            nxt.extend(kids)
        frontier = nxt
        level += 1
    return bt


def _covered_by_internal(bt, level, j, m):
    for pos in (j, j + m - 1):
        idx = bt.block_at(level, pos)
        if idx is None or bt.blocks[idx].kind != "internal":
            return False
    return True


def decode_blocktree(bt):
    """Concatenated leaf contents, resolving pruned leaves through their sources."""
    out = bytearray()
    for b in bt.leaves():
        if b.kind == "pad":
            continue
        for pos in range(b.start, min(b.start + b.length, bt.n + 1)):
            out.append(_walk(bt, b, pos, None)[0])
    return bytes(out)


def _walk(bt, leaf, pos, trace):
    """(byte, steps) for ``pos`` inside ``leaf``; steps count shifts and descents."""
    steps = 0
    b = leaf
    while True:
        if b.kind == "explicit":
            return bt.text[pos - 1], steps
        if b.kind == "pruned":
            pos = b.source + pos - b.start
            b = bt.blocks[bt.block_at(b.level, pos)]
            steps += 1
            if trace is not None:
                trace.append("shift")
            continue
        left, right = (bt.blocks[c] for c in b.children)
        b = left if pos < right.start else right
        steps += 1
        if trace is not None:
            trace.append("down")


@dataclass
class BlockCost:
    pred_k: int
    steps: int


@dataclass
class BlockTreeAccessor:
    tree: BlockTree
    leaves: list
    starts: list  # leaf starts plus the sentinel n+1
    pred: ZFastTrie

    def __len__(self):
        return self.tree.n


def build_bt_accessor(tree, w=DEFAULT_W):
    leaves = [b for b in tree.leaves() if b.kind != "pad"]
    starts = [b.start for b in leaves] + [tree.n + 1]
    while w ** trie_height(w) <= tree.n + 1:
        w += 1
    acc = BlockTreeAccessor(tree, leaves, starts, ZFastTrie(starts[:-1], w))
    acc._index = {x: i for i, x in enumerate(starts[:-1])}
    return acc


def leaf_length(acc, i):
    return acc.starts[i + 1] - acc.starts[i]


def bt_access(acc, q, trace=None):
    """(S[q], BlockCost); ``trace`` collects "shift"/"down" moves when given."""
    if not 1 <= q <= acc.tree.n:
        raise IndexError(f"position {q} outside [1, {acc.tree.n}]")
    ans = acc.pred.pred(q)
    i = acc._index[ans.value]
    sym, steps = _walk(acc.tree, acc.leaves[i], q, trace)
    return sym, BlockCost(ans.k, steps)

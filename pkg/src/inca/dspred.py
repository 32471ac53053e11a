"""Distance-sensitive predecessor search with a w-ary z-fast trie.

Keys are integers in [1, w^H) read as base-w strings of exactly H digits.
A prefix of length L of a key x is represented by the pair (L, x // w^(H-L)),
so prefix tests are integer divisions.  Hash maps stand in for perfect
hashing and a sorted digit list stands in for the fusion trees over the
children of a node.
"""
import math
from bisect import bisect_left
from dataclasses import dataclass, field


def two_fattest(l, r):
    """The unique number in [l, r] with the most trailing zero bits."""
    if not 1 <= l <= r:
        raise ValueError(f"need 1 <= l <= r, got ({l}, {r})")
    for t in range(r.bit_length(), -1, -1):
        m = ((l + (1 << t) - 1) >> t) << t
        if m <= r:
            return m
    raise AssertionError("unreachable")


def trie_height(w):
    """Smallest power of two H with H >= log_w 2^w = w / log2 w."""
    if w < 2:
        raise ValueError("word size must be at least 2")
    need = w / math.log2(w)
    h = 1
    while h < need - 1e-12:
        h *= 2
    return h


def digits(value, w, h):
    """Base-w digits of ``value``, most significant first, padded to ``h``."""
    out = []
    for _ in range(h):
        value, d = divmod(value, w)
        out.append(d)
    return out[::-1]


@dataclass
class Edge:
    """A compacted-trie edge ending at depth ``r`` with path label ``label``.

    ``label`` is the integer value of x[1, r].  The root is represented as
    a pseudo-edge with r = 0.
    """
    l: int
    r: int
    label: int
    xminus: int  # strict predecessor in X ∪ {0} of the subtree minimum
    xmax: int  # x^+(ε): largest key below the edge
    child: dict = field(default_factory=dict)  # digit -> Edge
    child_digits: list = field(default_factory=list)  # sorted domain of child
    child_max: dict = field(default_factory=dict)  # digit -> x^+(digit)


@dataclass
class PredAnswer:
    value: int
    k: int
    fat_steps: int


class ZFastTrie:
    """Static predecessor structure over a set of positive integers."""

    def __init__(self, keys, w):
        keys = sorted(set(keys))
        if not keys:
            raise ValueError("empty key set")
        self.w = w
        self.H = trie_height(w)
        self.logH = self.H.bit_length() - 1
        self.pow = [w ** i for i in range(self.H + 1)]
        self.universe = self.pow[self.H]
        if keys[0] < 1 or keys[-1] >= self.universe:
            raise ValueError(f"keys must lie in [1, {self.universe})")
        self.keys = keys
        self.Z = {}  # (handle length, handle value) -> Edge
        self.Hmap = {}  # (len, value) of x_k -> longest handle length
        self.root = self._build()
        self._build_hmap()

    # -- construction ------------------------------------------------------

    def prefix(self, x, length):
        return x // self.pow[self.H - length]

    def digit(self, x, i):
        """The i-th digit (1-based) of x."""
        return x // self.pow[self.H - i] % self.w

    def _lcp(self, a, b):
        lo = 0
        while lo < self.H and self.digit(a, lo + 1) == self.digit(b, lo + 1):
            lo += 1
        return lo

    def _build(self):
        keys = self.keys
        root = Edge(l=1, r=0, label=0, xminus=0, xmax=keys[-1])
        stack = [(root, 0, len(keys))]
        while stack:
            parent, lo, hi = stack.pop()
            i = lo
            while i < hi:
                d = self.digit(keys[i], parent.r + 1)
                j = i
                while j < hi and self.digit(keys[j], parent.r + 1) == d:
                    j += 1
                r = self._lcp(keys[i], keys[j - 1])
                edge = Edge(
                    l=parent.r + 1, r=r, label=self.prefix(keys[i], r),
                    xminus=keys[i - 1] if i else 0, xmax=keys[j - 1])
                parent.child[d] = edge
                parent.child_digits.append(d)
                parent.child_max[d] = keys[j - 1]
                f = two_fattest(edge.l, edge.r)
                self.Z[(f, self.prefix(keys[i], f))] = edge
                if r < self.H:
                    stack.append((edge, i, j))
                i = j
        return root

    def _build_hmap(self):
        for x in self.keys:
            handles = []  # handle lengths along the root-to-leaf path of x
            edge = self.root
            while edge.r < self.H:
                edge = edge.child[self.digit(x, edge.r + 1)]
                handles.append(two_fattest(edge.l, edge.r))
            for k in range(self.logH + 1):
                length = self.H - (1 << k) + 1
                best = max((f for f in handles if f <= length), default=0)
                self.Hmap[(length, self.prefix(x, length))] = best

    def space_words(self):
        """Machine words held by Z, Hmap and the per-edge maps."""
        edges = list(self.Z.values())
        per_edge = sum(4 + 2 * len(e.child) for e in edges)
        return per_edge + 2 * len(self.root.child) + 2 * len(self.Hmap)

    # -- queries -----------------------------------------------------------

    def _edge_of_prefix(self, length, value):
        """The edge on which the prefix (length, value) ends, or None if absent."""
        if length == 0:
            return self.root
        hlen = self.Hmap.get((length, value), 0)
        if hlen == 0 or hlen > length:
            # miss, or a collision that a perfect hash could report
            edge = self.root.child.get(value // self.pow[length - 1])
            if edge is None or length > edge.r:
                return None
        else:
            edge = self.Z.get((hlen, value // self.pow[length - hlen]))
            if edge is None:
                return None
            if length > edge.r:
                c = value // self.pow[length - edge.r - 1] % self.w
                edge = edge.child.get(c)
                if edge is None:
                    return None
        if edge.label // self.pow[edge.r - length] != value:
            return None
        return edge

    def prefix_member(self, p, k):
        """Whether digit string ``p`` of length H - 2^k + 1 prefixes a key."""
        p = [int(c) for c in p]
        if not 0 <= k <= self.logH:
            raise ValueError(f"k={k} outside [0, {self.logH}]")
        if len(p) != self.H - (1 << k) + 1:
            raise ValueError(f"prefix length {len(p)} does not match k={k}")
        if any(not 0 <= c < self.w for c in p):
            return False
        value = 0
        for c in p:
            value = value * self.w + c
        return self._edge_of_prefix(len(p), value) is not None

    def _in_pref(self, length, value):
        return value >= 0 and self._edge_of_prefix(length, value) is not None

    def exp_search(self, q):
        """(k, q') with k the smallest index where {q_k, q_k - 1} meets pref(X ∪ {0})."""
        self._check_query(q)
        for k in range(self.logH + 1):
            length = self.H - (1 << k) + 1
            qk = self.prefix(q, length)
            if qk == 0 or self._in_pref(length, qk):
                return k, qk
            if qk - 1 == 0 or self._in_pref(length, qk - 1):
                return k, qk - 1
        return -1, -1

    def _resolve(self, edge, q):
        """Predecessor of q from an edge on its root path; (value, descents)."""
        steps = 0
        while True:
            prefix = self.prefix(q, edge.r)
            if edge.label < prefix:
                return edge.xmax, steps
            if edge.label > prefix:
                return edge.xminus, steps
            if edge.r == self.H:
                return q, steps
            c = self.digit(q, edge.r + 1)
            nxt = edge.child.get(c)
            if nxt is not None:
                edge, steps = nxt, steps + 1
                continue
            i = bisect_left(edge.child_digits, c)
            if i == 0:
                return edge.xminus, steps
            return edge.child_max[edge.child_digits[i - 1]], steps

    def fat_search_with_hint(self, q, k):
        """Predecessor of q given the smallest k with q_k in pref(X); (value, steps)."""
        if k == 0:
            if not self._in_pref(self.H, q):
                raise ValueError("hint violated: q is not a key")
            return q, 0
        length = self.H - (1 << k) + 1
        best, steps = None, 0
        a, b = length + 1, self.H - 1
        while a <= b:
            f = two_fattest(a, b)
            steps += 1
            edge = self.Z.get((f, self.prefix(q, f)))
            if edge is not None:
                best, a = edge, f + 1
            else:
                b = f - 1
        if best is None:
            hlen = self.Hmap.get((length, self.prefix(q, length)))
            if hlen is None:
                raise ValueError(f"hint violated: q_{k} is not a key prefix")
            best = self.Z[(hlen, self.prefix(q, hlen))] if hlen else self.root
        value, more = self._resolve(best, q)
        return value, steps + more

    def pred(self, q):
        """Largest element of X ∪ {0} that is at most q, with its search costs."""
        k, qk = self.exp_search(q)
        if k == -1:
            value, steps = self._resolve(self.root, q)
            return PredAnswer(value, self.logH + 1, steps)
        length = self.H - (1 << k) + 1
        if qk != self.prefix(q, length):
            # only q_k - 1 is a prefix: take the largest key below it
            edge = self._edge_of_prefix(length, qk)
            return PredAnswer(edge.xmax if edge else 0, k, 0)
        if not self._in_pref(length, qk):
            return PredAnswer(0, k, 0)
        value, steps = self.fat_search_with_hint(q, k)
        return PredAnswer(value, k, steps)

    def _check_query(self, q):
        if not 1 <= q < self.universe:
            raise ValueError(f"query {q} outside [1, {self.universe})")


def build(keys, w):
    return ZFastTrie(keys, w)


def k_bound(delta, w):
    """1 + log2(1 + log_w delta), the guaranteed cap on exp-search iterations."""
    if delta <= 0:
        return 0.0
    return 1.0 + math.log2(1.0 + math.log(delta, w))


def root_labels(z):
    """Root edge labels as digit strings, in digit order."""
    out = []
    for d in z.root.child_digits:
        e = z.root.child[d]
        out.append("".join(map(str, digits(e.label, z.w, e.r))))
    return out

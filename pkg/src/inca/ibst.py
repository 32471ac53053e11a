"""Interval-biased d-ary tries and source-interval navigation.

Keys x_1 < ... < x_s partition [x_1, end).  Key i is stored at depth
D_i = floor(log_d(end / (x_{i+1} - x_i))) + 2 under the first D_i base-d
digits of (x_i + x_{i+1}) / (d * end); all arithmetic is on integers.
"""
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field


def leaf_depth(end, length, d):
    """floor(log_d(end / length)) + 2, computed exactly."""
    e = 0
    while length * d ** (e + 1) <= end:
        e += 1
    return e + 2


def beta(x, x_next, end, d):
    """(digit count, value) of the beta string for interval [x, x_next)."""
    depth = leaf_depth(end, x_next - x, d)
    # first `depth` digits of (x + x_next) / (d * end)
    return depth, (x + x_next) * d ** depth // (d * end)


def beta_digits(x, x_next, end, d):
    depth, value = beta(x, x_next, end, d)
    out = []
    for _ in range(depth):
        value, r = divmod(value, d)
        out.append(r)
    return out[::-1]


@dataclass
class Node:
    depth: int
    parent: int
    digits: list = field(default_factory=list)  # sorted child digits
    kids: list = field(default_factory=list)  # child node ids, aligned with digits
    keys: list = field(default_factory=list)  # leftmost-leaf key of each child
    leaf: int = -1  # key index for leaves
    lo: int = 0  # leftmost leaf index below
    hi: int = 0  # rightmost leaf index below
    compact: int = -1  # deepest descendant that is an ancestor of all leaves below


@dataclass
class IntervalBiasedTrie:
    d: int
    end: int
    starts: list  # x_1..x_s followed by the end
    nodes: list
    leaf_node: list  # key index -> node id

    @property
    def s(self):
        return len(self.starts) - 1

    def depth_of(self, i):
        return self.nodes[self.leaf_node[i]].depth

    def betas(self):
        return [beta_digits(self.starts[i], self.starts[i + 1], self.end, self.d)
                for i in range(self.s)]

    def lca(self, a, b):
        na, nb = self.nodes, self.nodes
        while a != b:
            if na[a].depth >= nb[b].depth:
                a = na[a].parent
            else:
                b = nb[b].parent
        return a

    def is_branching(self, v):
        return len(self.nodes[v].kids) >= 2

    def compacted(self):
        """T': node -> children after splicing out unary nodes, with edge guide keys."""
        root = self.nodes[0].compact
        tree = {}
        stack = [root]
        while stack:
            v = stack.pop()
            kids = [self.nodes[c].compact for c in self.nodes[v].kids]
            tree[v] = [(self.starts[self.nodes[c].lo], c) for c in kids]
            stack.extend(kids)
        return root, tree


def build_ibst(starts, end, d):
    """Trie over the intervals [x_i, x_{i+1}) with x_{s+1} = ``end``."""
    starts = list(starts)
    if d < 2:
        raise ValueError("arity must be at least 2")
    if not starts or any(a >= b for a, b in zip(starts, starts[1:])) or starts[-1] >= end:
        raise ValueError("starts must be strictly increasing and below the end")
    bounds = starts + [end]
    nodes = [Node(depth=0, parent=-1)]
    leaf_node = []
    for i in range(len(starts)):
        path = beta_digits(bounds[i], bounds[i + 1], end, d)
        v = 0
        for c in path:
            node = nodes[v]
            if node.digits and node.digits[-1] == c:
                v = node.kids[-1]
                continue
            if node.digits and node.digits[-1] > c:
                raise AssertionError("beta strings out of order")
            nodes.append(Node(depth=node.depth + 1, parent=v, lo=i))
            node.digits.append(c)
            node.kids.append(len(nodes) - 1)
            node.keys.append(bounds[i])
            v = len(nodes) - 1
        if nodes[v].kids or nodes[v].leaf != -1:
            raise AssertionError("beta strings are not prefix-free")
        nodes[v].leaf = i
        leaf_node.append(v)
    # leaf ranges and compaction links, children before parents
    for v in range(len(nodes) - 1, -1, -1):
        node = nodes[v]
        if node.leaf != -1:
            node.lo = node.hi = node.leaf
            node.compact = v
        else:
            node.lo = nodes[node.kids[0]].lo
            node.hi = nodes[node.kids[-1]].hi
            node.compact = v if len(node.kids) >= 2 else nodes[node.kids[0]].compact
    return IntervalBiasedTrie(d, end, bounds, nodes, leaf_node)


# -- navigation ---------------------------------------------------------------

@dataclass
class Cover:
    y: int
    z: int
    first: int  # j': smallest index with x_j' >= y
    last: int  # largest index r whose interval ends by z
    u: int = -1
    v_left: int = -1  # v'
    v_right: int = -1  # v''
    v1: int = -1
    vd: int = -1


@dataclass
class LocateResult:
    j: int
    edges: int  # edges of T walked
    compact_edges: int  # edges of T' walked
    child_steps: int  # child-predecessor probes


@dataclass
class NavigationIndex:
    trie: IntervalBiasedTrie
    covers: list

    def space_nodes(self):
        return len(self.covers) * 9 + sum(len(nd.kids) + 1 for nd in self.trie.nodes
                                          if len(nd.kids) >= 2)


def _child_towards(trie, v, leaf):
    node = trie.nodes[v]
    k = bisect_right(node.keys, trie.starts[leaf]) - 1
    return node.kids[k]


def build_nav(trie, sources):
    """Cover data for every source interval [y, z)."""
    x = trie.starts
    covers = []
    for y, z in sources:
        if not (x[0] <= y < z <= trie.end):
            raise ValueError(f"source [{y}, {z}) outside [{x[0]}, {trie.end})")
        first = bisect_left(x, y, 0, trie.s)
        last = bisect_right(x, z) - 2  # x[last + 1] <= z
        cov = Cover(y, z, first, last)
        if first < last:
            l_leaf, r_leaf = trie.leaf_node[first], trie.leaf_node[last]
            u = trie.lca(l_leaf, r_leaf)
            cov.u = u
            cov.v_left = _child_towards(trie, u, first)
            cov.v_right = _child_towards(trie, u, last)
            rightmost = trie.leaf_node[trie.nodes[cov.v_left].hi]
            leftmost = trie.leaf_node[trie.nodes[cov.v_right].lo]
            cov.v1 = trie.lca(l_leaf, rightmost)
            cov.vd = trie.lca(r_leaf, leftmost)
        covers.append(cov)
    return NavigationIndex(trie, covers)


def cover_depth_bound(trie, cov):
    """log_d(end / (x_r + x_{r+1} - x_l - x_{l+1})) for a cover with l < r."""
    x = trie.starts
    span = x[cov.last] + x[cov.last + 1] - x[cov.first] - x[cov.first + 1]
    return math.log(trie.end / span, trie.d)


def locate(nav, i, q):
    """Index j with x_j <= q < x_{j+1} for q inside source ``i``."""
    trie = nav.trie
    cov = nav.covers[i]
    if not cov.y <= q < cov.z:
        raise ValueError(f"q={q} outside source [{cov.y}, {cov.z})")
    x = trie.starts
    # no trie edges when q lies in a partially covered interval or the only covered one
    if q < x[cov.first]:
        return LocateResult(cov.first - 1, 0, 0, 0)
    if cov.first > cov.last:
        return LocateResult(cov.first, 0, 0, 0)
    if q >= x[cov.last + 1]:
        return LocateResult(cov.last + 1, 0, 0, 0)
    if cov.first == cov.last:
        return LocateResult(cov.first, 0, 0, 0)
    u = trie.nodes[cov.u]
    k = bisect_right(u.keys, q) - 1
    steps = max(1, (len(u.keys)).bit_length())
    child = u.kids[k]
    if child == cov.v_left:
        v = cov.v1
    elif child == cov.v_right:
        v = cov.vd
    else:
        v = trie.nodes[child].compact
    edges = compact = 0
    if not trie.is_branching(v) and trie.nodes[v].leaf == -1:
        compact = 1
    while trie.nodes[v].leaf == -1:
        node = trie.nodes[v]
        if len(node.kids) >= 2:
            compact += 1
            k = bisect_right(node.keys, q) - 1
            steps += max(1, len(node.keys).bit_length())
        else:
            k = 0
        v = node.kids[k]
        edges += 1
    return LocateResult(trie.nodes[v].leaf, edges, compact, steps)


def locate_linear(starts, q):
    """Linear-scan oracle: index j with starts[j] <= q < starts[j+1]."""
    for j in range(len(starts) - 1):
        if starts[j] <= q < starts[j + 1]:
            return j
    raise ValueError(f"q={q} outside the partition")

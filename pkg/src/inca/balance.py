"""Local balancing of RLSLPs through heavy forests and contracting grammars.

A rule is contracting when every right-hand-side symbol expands to at most
half of the left-hand side.  Every non-root variable A of the heavy forest
is rewritten as

    A -> rhs(X_L) rhs(B) rhs(X_R)

where B is the root of A's heavy tree and X_L / X_R derive the left and right
light labels met on the way from A down to B.  The X variables come from
prefix grammars over the labeled heavy trees.  Each heavy tree is split into
heavy paths; every heavy path gets a weight-centroid search tree whose nodes
and root-anchored prefixes become contracting variables.  A symbol that would
take more than half of its parent is replaced by its own (contracting)
right-hand side, or by at most three shorter runs when it is a run.

The contracting grammar is finally binarized into an RLSLP by balanced
splitting of the right-hand sides.
"""
import sys
from dataclasses import dataclass, field

from .rlslp import Binary, Rlslp, Run, Terminal, reachable, validate


@dataclass
class HeavyForest:
    heavy: dict  # A -> its heavy child B
    left: dict  # A -> left light child or None
    right: dict  # A -> right light child or None
    roots: set

    @property
    def edges(self):
        return set(self.heavy.items())

    def root_of(self, sym):
        while sym in self.heavy:
            sym = self.heavy[sym]
        return sym


def heavy_forest(g):
    """Edges (A, B) with B a child of A and 2|exp(B)| > |exp(A)|.

    Run-length variables and terminals have no heavy child.
    """
    explen = g.explen
    heavy, left, right = {}, {}, {}
    for sym, rule in g.rules.items():
        if not isinstance(rule, Binary):
            continue
        total = explen[sym]
        if 2 * explen[rule.left] > total:
            heavy[sym], left[sym], right[sym] = rule.left, None, rule.right
        elif 2 * explen[rule.right] > total:
            heavy[sym], left[sym], right[sym] = rule.right, rule.left, None
    roots = {s for s in g.rules if s not in heavy}
    return HeavyForest(heavy, left, right, roots)


@dataclass
class ContractingGrammar:
    """Run-length grammar whose sequence rules are tuples of symbols."""
    rules: dict
    start: str
    explen: dict = field(repr=False)

    @property
    def max_rhs(self):
        return max((len(r) for r in self.rules.values() if isinstance(r, tuple)),
                   default=0)

    def violations(self):
        """Rules with a right-hand-side symbol longer than half the left side."""
        bad = []
        for sym, rule in self.rules.items():
            if isinstance(rule, tuple):
                total = self.explen[sym]
                bad.extend((sym, c) for c in rule if 2 * self.explen[c] > total)
            elif isinstance(rule, Run) and rule.k < 2:
                bad.append((sym, rule.base))
        return bad

    def is_contracting(self):
        return not self.violations()

    def expand(self, sym=None):
        sym = self.start if sym is None else sym
        memo = {}

        def build(s):
            # explicit stack: prefix-variable chains can be deep
            stack = [(s, False)]
            while stack:
                cur, ready = stack.pop()
                if cur in memo:
                    continue
                rule = self.rules[cur]
                kids = (rule if isinstance(rule, tuple)
                        else (rule.base,) if isinstance(rule, Run) else ())
                if ready or not kids:
                    if isinstance(rule, Terminal):
                        memo[cur] = bytes([rule.symbol])
                    elif isinstance(rule, Run):
                        memo[cur] = memo[rule.base] * rule.k
                    else:
                        memo[cur] = b"".join(memo[c] for c in rule)
                    continue
                stack.append((cur, True))
                stack.extend((c, False) for c in kids if c not in memo)
            return memo[s]

        return build(sym)


class _Builder:
    """Creates contracting variables on top of a table of existing rules."""

    def __init__(self, explen, rule_of, taken, prefix="_c"):
        self.len = dict(explen)
        self.rule_of = rule_of  # symbol -> tuple | Run | Terminal for old symbols
        self.rules = {}
        self._taken = taken
        self._prefix = prefix
        self._counter = 0
        self._runs = {}

    def fresh(self):
        while True:
            self._counter += 1
            name = f"{self._prefix}{self._counter}"
            if name not in self._taken and name not in self.rules:
                return name

    def rule(self, sym):
        if sym in self.rules:
            return self.rules[sym]
        return self.rule_of(sym)

    def run(self, base, k):
        if k == 1:
            return base
        key = (base, k)
        if key not in self._runs:
            name = self.fresh()
            self.rules[name] = Run(base, k)
            self.len[name] = self.len[base] * k
            self._runs[key] = name
        return self._runs[key]

    def inline(self, sym, total):
        """Symbols deriving exp(sym), each at most total/2 long."""
        if 2 * self.len[sym] <= total:
            return [sym]
        rule = self.rule(sym)
        if isinstance(rule, tuple):
            return list(rule)
        if isinstance(rule, Run):
            base_len = self.len[rule.base]
            per = max(1, total // (2 * base_len))
            pieces, left = [], rule.k
            while left:
                take = min(per, left)
                pieces.append(self.run(rule.base, take))
                left -= take
            return pieces
        raise AssertionError(f"terminal {sym!r} cannot exceed half of {total}")

    def concat(self, parts):
        """A symbol deriving the concatenation of ``parts`` (None entries skipped)."""
        parts = [p for p in parts if p is not None]
        if not parts:
            return None
        if len(parts) == 1:
            return parts[0]
        total = sum(self.len[p] for p in parts)
        pieces = [s for p in parts for s in self.inline(p, total)]
        name = self.fresh()
        self.rules[name] = tuple(pieces)
        self.len[name] = total
        return name


class _PathIndex:
    """Weight-centroid search tree over the labels of one heavy path.

    ``labels`` are in root-to-leaf order; ``reverse`` concatenates them in
    the opposite order (left labels are read away from the root).
    """

    def __init__(self, builder, labels, reverse):
        self.b = builder
        self.labels = labels
        self.reverse = reverse
        self.cum = [0]
        for s in labels:
            self.cum.append(self.cum[-1] + builder.len[s])
        self._pivot, self._node, self._pre = {}, {}, {}

    def _cat(self, parts):
        return self.b.concat(parts[::-1] if self.reverse else parts)

    def pivot(self, a, b):
        key = (a, b)
        if key not in self._pivot:
            cum, base = self.cum, self.cum[a]
            total = cum[b + 1] - base
            lo, hi = a, b
            while lo < hi:  # first c with 2*(cum[c+1]-base) > total
                mid = (lo + hi) // 2
                if 2 * (cum[mid + 1] - base) > total:
                    hi = mid
                else:
                    lo = mid + 1
            self._pivot[key] = lo
        return self._pivot[key]

    def node(self, a, b):
        if a > b:
            return None
        if a == b:
            return self.labels[a]
        key = (a, b)
        if key not in self._node:
            c = self.pivot(a, b)
            self._node[key] = self._cat(
                [self.node(a, c - 1), self.labels[c], self.node(c + 1, b)])
        return self._node[key]

    def prefix(self, i, a=0, b=None):
        """Variable for labels[a..i] inside the search-tree node (a, b)."""
        b = len(self.labels) - 1 if b is None else b
        key = (a, b, i)
        if key in self._pre:
            return self._pre[key]
        if a == b:
            result = self.labels[a]
        else:
            c = self.pivot(a, b)
            if i < c:
                result = self.prefix(i, a, c - 1)
            elif i == c:
                result = self._cat([self.node(a, c - 1), self.labels[c]])
            else:
                result = self._cat([self.node(a, c - 1), self.labels[c],
                                    self.prefix(i, c + 1, b)])
        self._pre[key] = result
        return result


class _TreePrefixes:
    """All root prefixes of one labeled tree.

    ``parent`` maps every non-root node to its parent; ``label`` maps it to
    the symbol on its parent edge (or None for an empty label).
    """

    def __init__(self, builder, root, parent, label, reverse):
        self.b = builder
        self.root = root
        self.parent = parent
        self.label = label
        self.reverse = reverse
        kids = {}
        for v, p in parent.items():
            kids.setdefault(p, []).append(v)
        for lst in kids.values():
            lst.sort(key=str)
        size = {}
        order = self._preorder(kids)
        for v in reversed(order):
            size[v] = 1 + sum(size[c] for c in kids.get(v, ()))
        # heavy-path decomposition by subtree size
        self.path_of, self.pos_of, self.paths = {}, {}, []
        for v in order:
            if v == root:
                continue
            p = parent[v]
            siblings = kids[p]
            heavy = max(siblings, key=lambda c: (size[c], str(c)))
            if p != root and v == heavy:
                path = self.path_of[p]
            else:
                path = len(self.paths)
                self.paths.append([])
            self.path_of[v] = path
            self.paths[path].append(v)
        self.top_parent = [parent[nodes[0]] for nodes in self.paths]
        self.indexes = []
        for nodes in self.paths:
            labs, pos, count = [], {}, -1
            for v in nodes:
                if label[v] is not None:
                    labs.append(label[v])
                    count += 1
                pos[v] = count
            self.pos_of.update(pos)
            self.indexes.append(_PathIndex(builder, labs, reverse))
        self._memo = {root: None}

    def _preorder(self, kids):
        order, stack = [], [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(kids.get(v, ()))
        return order

    def prefix(self, v):
        """Symbol deriving the labels from the root down to ``v`` (None if empty)."""
        if v in self._memo:
            return self._memo[v]
        # iterate from the top of the light chain to keep recursion shallow
        chain = []
        u = v
        while u not in self._memo:
            chain.append(u)
            u = self.top_parent[self.path_of[u]]
        for u in reversed(chain):
            path = self.path_of[u]
            i = self.pos_of[u]
            hpre = self.indexes[path].prefix(i) if i >= 0 else None
            above = self._memo[self.top_parent[path]]
            parts = [above, hpre]
            self._memo[u] = self.b.concat(parts[::-1] if self.reverse else parts)
        return self._memo[v]


def prefix_grammar(base, root, parent, label, side="right"):
    """Contracting grammar deriving every root prefix of a labeled tree.

    ``base`` is a contracting grammar (or RLSLP) defining the label symbols.
    For ``side="left"`` each prefix is read from the node up to the root.
    Returns the grammar (its start is the first node's prefix) and a map
    node -> prefix symbol (None for empty prefixes).
    """
    base_rules = base.rules

    def rule_of(sym):
        rule = base_rules[sym]
        return (rule.left, rule.right) if isinstance(rule, Binary) else rule

    builder = _Builder(base.explen, rule_of, set(base_rules), prefix="_p")
    tree = _TreePrefixes(builder, root, parent, label, side == "left")
    mapping = {v: tree.prefix(v) for v in parent}
    rules = {s: rule_of(s) for s in base_rules}
    rules.update(builder.rules)
    start = next((s for s in mapping.values() if s is not None), None)
    return ContractingGrammar(rules, start, builder.len), mapping


def contracting_form(g):
    """Equivalent contracting run-length grammar of ``g`` (before CNF)."""
    g = reachable(validate(g))
    forest = heavy_forest(g)
    explen = g.explen
    new_rule = {}

    def rule_of(sym):
        if sym not in new_rule:
            raise KeyError(f"{sym!r} requested before it was rewritten")
        return new_rule[sym]

    builder = _Builder(explen, rule_of, set(g.rules))
    trees = {}
    members = {}
    for sym in g.rules:
        if sym in forest.heavy:
            members.setdefault(forest.root_of(sym), []).append(sym)
    for root, nodes in members.items():
        parent = {v: forest.heavy[v] for v in nodes}
        trees[root] = (
            _TreePrefixes(builder, root, parent, forest.left, reverse=True),
            _TreePrefixes(builder, root, parent, forest.right, reverse=False),
        )

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        # lighter variables first: every label and root used by A is lighter
        for sym in sorted(g.rules, key=lambda s: (explen[s], str(s))):
            rule = g.rules[sym]
            if sym not in forest.heavy:
                new_rule[sym] = ((rule.left, rule.right)
                                 if isinstance(rule, Binary) else rule)
                continue
            root = forest.root_of(sym)
            left_tree, right_tree = trees[root]
            parts = [left_tree.prefix(sym), root, right_tree.prefix(sym)]
            total = explen[sym]
            new_rule[sym] = tuple(s for p in parts if p is not None
                                  for s in builder.inline(p, total))
    finally:
        sys.setrecursionlimit(old)

    rules = dict(new_rule)
    rules.update(builder.rules)
    cg = ContractingGrammar(rules, g.start, builder.len)
    return _prune(cg)


def _prune(cg):
    keep, stack = set(), [cg.start]
    while stack:
        s = stack.pop()
        if s in keep:
            continue
        keep.add(s)
        rule = cg.rules[s]
        if isinstance(rule, tuple):
            stack.extend(rule)
        elif isinstance(rule, Run):
            stack.append(rule.base)
    return ContractingGrammar({s: cg.rules[s] for s in keep}, cg.start,
                              {s: cg.explen[s] for s in keep})


def to_cnf(cg, prefix="_n"):
    """Binarize sequence rules by balanced splitting; runs and terminals pass through."""
    rules = {}
    taken = set(cg.rules)
    counter = [0]

    def fresh():
        while True:
            counter[0] += 1
            name = f"{prefix}{counter[0]}"
            if name not in taken:
                taken.add(name)
                return name

    def split(seq, name=None):
        if len(seq) == 1:
            return seq[0]
        mid = (len(seq) + 1) // 2
        left, right = split(seq[:mid]), split(seq[mid:])
        name = name or fresh()
        rules[name] = Binary(left, right)
        return name

    for sym, rule in cg.rules.items():
        if isinstance(rule, tuple):
            if len(rule) == 1:
                raise ValueError(f"{sym!r} has a unit rule")
            split(list(rule), sym)
        elif isinstance(rule, (Run, Terminal)):
            rules[sym] = rule
        else:
            rules[sym] = Binary(*rule)
    return Rlslp(rules, cg.start)


@dataclass
class BalanceReport:
    rules_in: int
    rules_out: int
    contracting_rules: int
    max_rhs: int
    balance_in: float
    balance_out: float

    @property
    def size_ratio(self):
        return self.rules_out / self.rules_in


def balance(g, report=False):
    """Locally balanced RLSLP deriving the same string as ``g``."""
    from .rlslp import balance_factor

    cg = contracting_form(g)
    out = to_cnf(cg)
    if not report:
        return out
    return out, BalanceReport(
        rules_in=reachable(g).g_rl,
        rules_out=out.g_rl,
        contracting_rules=len(cg.rules),
        max_rhs=cg.max_rhs,
        balance_in=balance_factor(reachable(g)),
        balance_out=balance_factor(out),
    )

"""Run-length straight-line programs.

A grammar maps symbol ids (strings) to one of three rule kinds.  Terminal
rules ``X -> a`` name a byte; they count toward the grammar size but are
otherwise transparent: in parse and grammar trees they are the leaves, so
they have height 0.
"""
import math
from dataclasses import dataclass, field

from .text import as_text

MAX_LEN = 2 ** 63


class GrammarError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass(frozen=True)
class Terminal:
    symbol: int


@dataclass(frozen=True)
class Binary:
    left: str
    right: str


@dataclass(frozen=True)
class Run:
    base: str
    k: int


@dataclass
class Rlslp:
    rules: dict
    start: str
    _explen: dict = field(default=None, repr=False, compare=False)

    @property
    def g_rl(self):
        return len(self.rules)

    def children(self, sym):
        rule = self.rules[sym]
        if isinstance(rule, Binary):
            return (rule.left, rule.right)
        if isinstance(rule, Run):
            return (rule.base,)
        return ()

    @property
    def explen(self):
        if self._explen is None:
            self._explen = _explen(self)
        return self._explen

    def __len__(self):
        return self.explen[self.start]


def topological_order(g):
    """Symbols reachable from the start, children before parents.

    Raises GrammarError on cycles or dangling references.
    """
    order, state = [], {}
    stack = [(g.start, False)]
    while stack:
        sym, done = stack.pop()
        if done:
            state[sym] = 2
            order.append(sym)
            continue
        if state.get(sym) == 2:
            continue
        if sym not in g.rules:
            raise GrammarError([f"dangling symbol {sym!r}"])
        if state.get(sym) == 1:
            raise GrammarError([f"cycle through {sym!r}"])
        state[sym] = 1
        stack.append((sym, True))
        for child in g.children(sym):
            if state.get(child) == 1:
                raise GrammarError([f"cycle through {child!r}"])
            if state.get(child) != 2:
                stack.append((child, False))
    return order


def _all_symbols_order(g):
    # topological order over every rule, not only the reachable ones
    seen, order = set(), []
    for root in [g.start, *g.rules]:
        if root in seen:
            continue
        sub = Rlslp(g.rules, root)
        for sym in topological_order(sub):
            if sym not in seen:
                seen.add(sym)
                order.append(sym)
    return order


def _explen(g):
    lengths = {}
    for sym in _all_symbols_order(g):
        rule = g.rules[sym]
        if isinstance(rule, Terminal):
            n = 1
        elif isinstance(rule, Binary):
            n = lengths[rule.left] + lengths[rule.right]
        else:
            n = lengths[rule.base] * rule.k
        if n >= MAX_LEN:
            raise GrammarError([f"expansion of {sym!r} overflows 63 bits"])
        lengths[sym] = n
    return lengths


def diagnostics(g):
    """List of problems with ``g``; empty when the grammar is valid."""
    problems = []
    if g.start not in g.rules:
        problems.append(f"start symbol {g.start!r} has no rule")
    for sym, rule in g.rules.items():
        if isinstance(rule, Terminal):
            if not 0 <= rule.symbol < 256:
                problems.append(f"{sym!r}: terminal {rule.symbol} is not a byte")
        elif isinstance(rule, Run):
            if rule.k < 2:
                problems.append(f"{sym!r}: run-length arity k={rule.k} < 2")
        elif not isinstance(rule, Binary):
            problems.append(f"{sym!r}: unknown rule {rule!r}")
        for child in g.children(sym) if not isinstance(rule, Terminal) else ():
            if child not in g.rules:
                problems.append(f"{sym!r}: dangling symbol {child!r}")
    if problems:
        return problems
    try:
        _explen(g)
    except GrammarError as exc:
        problems.extend(exc.diagnostics)
    return problems


def validate(g):
    problems = diagnostics(g)
    if problems:
        raise GrammarError(problems)
    return g


def expand_symbol(g, sym):
    memo = {}
    for s in topological_order(Rlslp(g.rules, sym)):
        rule = g.rules[s]
        if isinstance(rule, Terminal):
            memo[s] = bytes([rule.symbol])
        elif isinstance(rule, Binary):
            memo[s] = memo[rule.left] + memo[rule.right]
        else:
            memo[s] = memo[rule.base] * rule.k
    return memo[sym]


def expand(g):
    return expand_symbol(g, g.start)


def descend(g, sym, pos):
    """Symbol at 1-based ``pos`` of exp(sym) and the number of rule steps taken."""
    explen = g.explen
    steps = 0
    while True:
        rule = g.rules[sym]
        if isinstance(rule, Terminal):
            return rule.symbol, steps
        steps += 1
        if isinstance(rule, Binary):
            left = explen[rule.left]
            if pos <= left:
                sym = rule.left
            else:
                sym, pos = rule.right, pos - left
        else:
            pos = 1 + (pos - 1) % explen[rule.base]
            sym = rule.base


def access_naive(g, q):
    """(S[q], parse-tree descent steps) by walking down from the start symbol."""
    n = len(g)
    if not 1 <= q <= n:
        raise IndexError(f"position {q} outside [1, {n}]")
    return descend(g, g.start, q)


# -- grammar tree -----------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    """Grammar-tree leaf: a terminal, a pruned nonterminal, or an iteration B^k."""
    kind: str  # "terminal" | "nonterminal" | "iteration"
    symbol: object  # byte value for terminals, symbol id otherwise
    k: int = 1


@dataclass
class GrammarTree:
    # node index -> label; children[i] lists child indices (empty for leaves)
    labels: list
    children: list
    leaves: list  # Leaf objects left to right
    internal: dict  # symbol -> node index of its unique internal node

    def __len__(self):
        return len(self.labels)


def grammar_tree(g):
    """Prune the parse tree to one internal node per nonterminal.

    Preorder traversal keeps the leftmost occurrence of each nonterminal
    internal; every later occurrence becomes a leaf.
    """
    labels, children, leaves, internal = [], [], [], {}
    stack = [(g.start, None)]
    while stack:
        item, parent = stack.pop()
        if isinstance(item, Leaf):
            leaf = item
        else:
            rule = g.rules[item]
            if isinstance(rule, Terminal):
                leaf = Leaf("terminal", rule.symbol)
            elif item in internal:
                leaf = Leaf("nonterminal", item)
            else:
                leaf = None
        node = len(labels)
        labels.append(leaf if leaf is not None else item)
        children.append([])
        if parent is not None:
            children[parent].append(node)
        if leaf is not None:
            leaves.append(leaf)
            continue
        internal[item] = node
        if isinstance(rule, Binary):
            stack.append((rule.right, node))
            stack.append((rule.left, node))
        else:
            stack.append((Leaf("iteration", rule.base, rule.k - 1), node))
            stack.append((rule.base, node))
    return GrammarTree(labels, children, leaves, internal)


@dataclass
class LeafPartition:
    starts: list  # x_1..x_g' plus the sentinel n+1
    labels: list  # Leaf per block

    def __len__(self):
        return len(self.labels)


def leaf_length(g, leaf):
    if leaf.kind == "terminal":
        return 1
    return g.explen[leaf.symbol] * leaf.k


def leaf_partition(g, tree=None):
    tree = tree or grammar_tree(g)
    starts, x = [], 1
    for leaf in tree.leaves:
        starts.append(x)
        x += leaf_length(g, leaf)
    starts.append(x)
    return LeafPartition(starts, list(tree.leaves))


def extract_leaf(g, leaf, offset):
    """(symbol, steps) for the 1-based ``offset`` inside a grammar-tree leaf."""
    if leaf.kind == "terminal":
        return leaf.symbol, 0
    steps = 0
    if leaf.kind == "iteration":
        offset = 1 + (offset - 1) % g.explen[leaf.symbol]
        steps = 1
    sym, more = descend(g, leaf.symbol, offset)
    return sym, steps + more


# -- heights ----------------------------------------------------------------

def height_map(g):
    """Parse-tree height of every symbol (terminal rules have height 0)."""
    height = {}
    for sym in _all_symbols_order(g):
        rule = g.rules[sym]
        if isinstance(rule, Terminal):
            height[sym] = 0
        else:
            height[sym] = 1 + max(height[c] for c in g.children(sym))
    return height


def log2_floor1(x):
    """max(1, log2 x), the logarithm convention used by every bound."""
    return max(1.0, math.log2(x)) if x > 0 else 1.0


def is_locally_balanced(g, c):
    height, explen = height_map(g), g.explen
    return all(height[s] <= c * log2_floor1(explen[s]) for s in g.rules)


def balance_factor(g):
    """Smallest c for which ``g`` is locally balanced."""
    height, explen = height_map(g), g.explen
    return max(height[s] / log2_floor1(explen[s]) for s in g.rules)


def reachable(g):
    """Copy of ``g`` restricted to rules reachable from the start symbol."""
    keep = topological_order(g)
    return Rlslp({s: g.rules[s] for s in keep}, g.start)


def from_text_terminals(text):
    """Terminal rules ``T<byte>`` for every distinct byte of ``text``."""
    return {f"T{b}": Terminal(b) for b in set(as_text(text))}

"""Random access over a locally balanced RLSLP.

A query first finds the grammar-tree leaf holding q with the
distance-sensitive predecessor structure, then descends inside that leaf.
"""
from dataclasses import dataclass

from .balance import balance
from .constants import C_BAL_LOCAL, DEFAULT_W
from .dspred import ZFastTrie, trie_height
from .rlslp import (extract_leaf, is_locally_balanced, leaf_partition,
                    reachable, validate)


@dataclass
class AccessCost:
    pred_k: int
    descent_steps: int


@dataclass
class GrammarAccessor:
    grammar: object
    partition: object
    pred: ZFastTrie
    c_bal: float
    rebalanced: bool = False

    def __len__(self):
        return self.partition.starts[-1] - 1

    def leaf_index(self, q):
        """Index of the partition block holding q, with the predecessor answer."""
        ans = self.pred.pred(q)
        return self._index[ans.value], ans

    def space_words(self):
        return self.pred.space_words() + 3 * len(self.partition)


def _word_size(n, w):
    # smallest w' >= w whose universe covers positions 1..n
    while w ** trie_height(w) <= n:
        w += 1
    return w


def build_accessor(g, w=DEFAULT_W, c_bal=C_BAL_LOCAL):
    """Accessor over ``g``, balanced first when it is not locally balanced."""
    g = reachable(validate(g))
    rebalanced = False
    if not is_locally_balanced(g, c_bal):
        g, rebalanced = balance(g), True
    part = leaf_partition(g)
    starts = part.starts[:-1]
    z = ZFastTrie(starts, _word_size(part.starts[-1], w))
    acc = GrammarAccessor(g, part, z, c_bal, rebalanced)
    acc._index = {x: i for i, x in enumerate(starts)}
    return acc


def access(acc, q):
    """(S[q], AccessCost) for 1-based q."""
    n = len(acc)
    if not 1 <= q <= n:
        raise IndexError(f"position {q} outside [1, {n}]")
    i, ans = acc.leaf_index(q)
    offset = q - acc.partition.starts[i] + 1
    sym, steps = extract_leaf(acc.grammar, acc.partition.labels[i], offset)
    return sym, AccessCost(ans.k, steps)

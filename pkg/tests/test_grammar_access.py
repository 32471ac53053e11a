import math

import pytest
from hypothesis import given, settings, strategies as st

from inca.constants import C_ACC, C_BAL_LOCAL
from inca.dspred import k_bound
from inca.generators import comb_rlslp, generate_corpus, random_merge_rlslp
from inca.grammar_access import access, build_accessor
from inca.rlslp import expand, leaf_length
from inca.text import repeat_profile

from conftest import ABRA_TEXT


def test_abra_all_positions(abra):
    acc = build_accessor(abra, w=16)
    assert [access(acc, q)[0] for q in range(1, 41)] == list(ABRA_TEXT)


def test_out_of_range(abra):
    acc = build_accessor(abra)
    with pytest.raises(IndexError):
        access(acc, 0)
    with pytest.raises(IndexError):
        access(acc, 41)


def test_comb_is_rebalanced():
    g = comb_rlslp(300)
    acc = build_accessor(g, w=16)
    assert acc.rebalanced
    text = expand(g)
    assert all(access(acc, q)[0] == text[q - 1] for q in range(1, len(text) + 1))


def test_small_word_size_is_widened():
    g = random_merge_rlslp(b"ab" * 500, 3)
    acc = build_accessor(g, w=2)
    assert acc.pred.universe > len(acc)
    assert access(acc, 1000)[0] == ord("b")


def test_descent_tracks_incongruity():
    text = generate_corpus("mutated-repeat", 2000, 4, 7)
    ell = repeat_profile(text)
    acc = build_accessor(random_merge_rlslp(text, 1), w=64)
    for q in range(1, len(text) + 1):
        sym, cost = access(acc, q)
        assert sym == text[q - 1]
        label = acc.partition.labels[acc.leaf_index(q)[0]]
        if label.kind == "terminal":
            continue
        assert cost.descent_steps <= C_BAL_LOCAL * max(1, math.log2(ell[q - 1])) + C_ACC
        assert cost.pred_k <= k_bound(leaf_length(acc.grammar, label), acc.pred.w) + 1e-9


@given(st.binary(min_size=1, max_size=300), st.integers(0, 50))
@settings(max_examples=40, deadline=None)
def test_random_texts(text, seed):
    acc = build_accessor(random_merge_rlslp(text, seed), w=7)
    assert bytes(access(acc, q)[0] for q in range(1, len(text) + 1)) == text

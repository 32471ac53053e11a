import pytest
from hypothesis import given, strategies as st

from inca.generators import comb_rlslp, doubling_rlslp, generate_corpus, random_merge_rlslp
from inca.rlslp import (Binary, GrammarError, Rlslp, Run, Terminal, access_naive,
                        balance_factor, diagnostics, expand, extract_leaf, grammar_tree,
                        height_map, is_locally_balanced, leaf_length, leaf_partition,
                        validate)

from inca.text import count_occurrences

from conftest import ABRA_TEXT


def test_abra_expands(abra):
    assert expand(abra) == ABRA_TEXT
    assert len(abra) == 40
    assert abra.g_rl == 15
    lengths = {"A0": 40, "A1": 35, "A2": 7, "A3": 28, "A4": 5, "A5": 4,
               "A6": 3, "A7": 2, "A8": 2, "A9": 2}
    assert {s: abra.explen[s] for s in lengths} == lengths


@pytest.mark.parametrize("q,ch", [(1, "a"), (8, "a"), (36, "c")])
def test_access_naive(abra, q, ch):
    assert chr(access_naive(abra, q)[0]) == ch


def test_access_out_of_range(abra):
    with pytest.raises(IndexError):
        access_naive(abra, 41)


def test_cycle_detected():
    g = Rlslp({"X": Binary("Y", "Y"), "Y": Binary("X", "X")}, "X")
    with pytest.raises(GrammarError):
        validate(g)


def test_dangling_and_bad_run():
    g = Rlslp({"X": Binary("a", "Q"), "a": Terminal(97), "R": Run("a", 1)}, "X")
    problems = diagnostics(g)
    assert any("dangling" in p for p in problems)
    assert any("k=1" in p for p in problems)


def test_overflow_detected():
    rules = {"a": Terminal(97), "R0": Run("a", 2 ** 40), "R1": Run("R0", 2 ** 30)}
    with pytest.raises(GrammarError):
        validate(Rlslp(rules, "R1"))


def test_grammar_tree_node_count(abra):
    tree = grammar_tree(abra)
    nonterminals = sum(not isinstance(r, Terminal) for r in abra.rules.values())
    # terminal rules are leaves, so every nonterminal contributes one internal node and two children
    assert len(tree) == 2 * nonterminals + 1 == 21


def test_leaf_partition_of_abra(abra):
    part = leaf_partition(abra)
    assert part.starts == [1, 2, 3, 4, 5, 6, 7, 8, 12, 36, 37, 41]
    kinds = [leaf.kind for leaf in part.labels]
    assert kinds.count("iteration") == 1
    assert kinds.count("nonterminal") == 2


def test_extract_leaf_covers_text(abra):
    part = leaf_partition(abra)
    out = bytearray()
    for i, leaf in enumerate(part.labels):
        for off in range(1, leaf_length(abra, leaf) + 1):
            out.append(extract_leaf(abra, leaf, off)[0])
    assert bytes(out) == ABRA_TEXT


def test_perfect_tree_is_balanced_with_c_one():
    g = doubling_rlslp(b"ab" * 8)
    assert is_locally_balanced(g, 1)
    assert height_map(g)[g.start] == 4


def test_comb_is_not_balanced():
    g = comb_rlslp(100)
    assert balance_factor(g) > 10


@given(st.binary(min_size=1, max_size=60), st.integers(0, 2 ** 16))
def test_generated_grammars_roundtrip(text, seed):
    for g in (doubling_rlslp(text), random_merge_rlslp(text, seed)):
        validate(g)
        assert expand(g) == text
        assert bytes(access_naive(g, q)[0] for q in range(1, len(text) + 1)) == text


@pytest.mark.parametrize("seed", range(5))
def test_nonterminal_leaves_are_repeated(seed):
    text = generate_corpus("mutated-repeat", 500, 3, seed)
    for g in (doubling_rlslp(text), random_merge_rlslp(text, seed)):
        part = leaf_partition(g)
        for x, nxt, leaf in zip(part.starts, part.starts[1:], part.labels):
            if leaf.kind == "nonterminal":
                assert count_occurrences(text, text[x - 1:nxt - 1]) >= 2

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from inca.balance import balance, contracting_form, heavy_forest, to_cnf
from inca.constants import C_BAL, C_BAL_LOCAL
from inca.generators import comb_rlslp, random_chain_rlslp, random_merge_rlslp
from inca.rlslp import access_naive, expand, height_map, is_locally_balanced, validate


def test_heavy_forest_of_abra(abra):
    assert set(heavy_forest(abra).edges) == {
        ("A0", "A1"), ("A1", "A3"), ("A2", "A5"), ("A4", "A5"), ("A6", "A9")}


def test_contracting_form_of_abra(abra):
    cg = contracting_form(abra)
    assert cg.is_contracting()
    assert cg.expand() == expand(abra)


@pytest.mark.parametrize("side", ["left", "right"])
def test_deep_comb(side):
    g = comb_rlslp(1000, side)
    out, rep = balance(g, report=True)
    assert expand(out) == expand(g)
    assert rep.size_ratio <= C_BAL
    assert is_locally_balanced(out, C_BAL_LOCAL)
    assert height_map(out)[out.start] <= 2 * math.log2(len(g)) + 2


@given(st.integers(0, 2 ** 32), st.integers(2, 120))
@settings(max_examples=60, deadline=None)
def test_random_deep_grammars(seed, size):
    g = random_chain_rlslp(size, seed)
    if g is None:
        return
    out, rep = balance(g, report=True)
    assert contracting_form(g).is_contracting()
    assert len(out) == len(g)
    rng = random.Random(seed)
    for q in [1, len(g)] + [rng.randint(1, len(g)) for _ in range(50)]:
        assert access_naive(out, q)[0] == access_naive(g, q)[0]
    assert rep.size_ratio <= C_BAL
    assert is_locally_balanced(out, C_BAL_LOCAL)


@given(st.binary(min_size=1, max_size=200), st.integers(0, 99))
@settings(max_examples=50, deadline=None)
def test_cnf_is_binary(text, seed):
    g = random_merge_rlslp(text, seed)
    cnf = to_cnf(contracting_form(g))
    assert expand(cnf) == text
    validate(cnf)

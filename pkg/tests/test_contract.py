import random

import pytest
from hypothesis import given, settings, strategies as st

from inca.constants import C_CT, C_CT0
from inca.contract import (attractor_from_parse, end_to_end, layout, make_contracting,
                           size_bound, verify_attractor)
from inca.generators import TEXT_KINDS, generate_corpus, random_bidirectional
from inca.parse import Copy, Explicit, Parse, decode, height_profile
from inca.parse_access import parse_access


def test_attractor_oracle_examples():
    assert verify_attractor("abc", [1, 2, 3])
    assert not verify_attractor("abc", [2])
    assert verify_attractor("aaa", [2])


def test_attractor_from_small_parse():
    assert attractor_from_parse(Parse([Explicit(b"ab"), Copy(1, 2)])) == [1, 2, 3, 4]


def test_layout_covers_everything():
    for n in range(1, 60):
        for gamma in ([1], [n], sorted({1, n}), sorted({1, n // 2 or 1, n})):
            for alpha in (2, 3):
                cells = layout(n, gamma, alpha)
                assert cells[0][0] == 1 and cells[-1][1] == n
                assert all(a[1] + 1 == b[0] for a, b in zip(cells, cells[1:]))
                for g in gamma:
                    assert (g, g, True) in cells


def test_layout_grows_geometrically():
    cells = layout(200, [1, 200], 2)
    lengths = [b - a + 1 for a, b, _ in cells]
    assert lengths[:5] == [1, 2, 4, 8, 16]
    assert lengths[-5:] == [16, 8, 4, 2, 1]


def test_rejects_bad_alpha():
    p = Parse([Explicit(b"ab"), Copy(1, 2)])
    with pytest.raises(ValueError):
        make_contracting(p, 1)
    with pytest.raises(ValueError):
        make_contracting(p, 2.5)


def check_transform(p, text, alpha, oracle=True):
    q, rep = make_contracting(p, alpha, report=True)
    assert decode(q) == text
    assert rep.min_alpha_out <= alpha
    h_in, h_out = height_profile(p).h, height_profile(q).h
    assert all(b <= a for a, b in zip(h_in, h_out))
    assert q.t <= size_bound(p.t, p.n, alpha, C_CT, C_CT0)
    if oracle:
        assert verify_attractor(text, attractor_from_parse(p))


@given(st.sampled_from(TEXT_KINDS), st.integers(1, 150), st.integers(0, 10 ** 6),
       st.sampled_from([2, 3, 16]))
@settings(max_examples=60, deadline=None)
def test_random_bidirectional_parses(kind, n, seed, alpha):
    text = generate_corpus(kind, n, 3, seed)
    check_transform(random_bidirectional(text, seed), text, alpha)


def test_larger_texts_end_to_end():
    rng = random.Random(5)
    for kind in TEXT_KINDS:
        text = generate_corpus(kind, 2000, 2, rng.randint(0, 99))
        p = random_bidirectional(text, 1)
        for alpha in (2, 64):
            check_transform(p, text, alpha, oracle=False)
        acc = end_to_end(p, 16)
        assert all(parse_access(acc, i)[0] == text[i - 1] for i in range(1, len(text) + 1))

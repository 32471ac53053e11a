"""Acceptance gate: one test per criterion, sized by INCA_TEST_SCALE."""
import bisect
import math
import random
import time

from inca.balance import balance, contracting_form
from inca.blocktree import (bt_access, build_blocktree, build_bt_accessor,
                            decode_blocktree, leaf_length as bt_leaf_length)
from inca.constants import (C_1, C_2, C_ACC, C_BAL, C_BAL_LOCAL, C_CT, C_CT0, C_NAV)
from inca.contract import (attractor_from_parse, end_to_end, make_contracting, size_bound,
                           verify_attractor)
from inca.dspred import build as build_pred, k_bound, root_labels, trie_height
from inca.generators import (TEXT_KINDS, comb_rlslp, corpus, random_chain_rlslp, generate_corpus, generate_rlslp,
                             random_bidirectional, random_merge_rlslp)
from inca.grammar_access import access, build_accessor
from inca.ibst import build_ibst, build_nav, leaf_depth, locate, locate_linear
from inca.parse import decode, from_blocktree, from_rlslp, height_profile
from inca.parse_access import build_parse_accessor, parse_access
from inca.rlslp import access_naive, expand, is_locally_balanced, leaf_length
from inca.text import repeat_profile

from conftest import scaled


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s"


def test_criterion_1_oracle_correctness():
    with Budget(120):
        texts = corpus(5000, seed=1, count=max(20, scaled(20)))
        assert len({name.rsplit("-", 1)[0] for name, _ in texts}) == len(TEXT_KINDS)
        for name, text in texts:
            n = len(text)
            g = random_merge_rlslp(text, 1)
            acc_g = build_accessor(g, w=64)
            acc_b = build_bt_accessor(build_blocktree(text), w=64)
            p = random_bidirectional(text, 2)
            acc_p = build_parse_accessor(p, w=64)
            acc_c = end_to_end(p, 64)
            for q in range(1, n + 1):
                ch = text[q - 1]
                assert access_naive(g, q)[0] == ch, (name, "rlslp", q)
                assert access(acc_g, q)[0] == ch, (name, "grammar", q)
                assert bt_access(acc_b, q)[0] == ch, (name, "blocktree", q)
                assert parse_access(acc_p, q)[0] == ch, (name, "parse", q)
                assert parse_access(acc_c, q)[0] == ch, (name, "contracted", q)


def test_criterion_2_incongruity_bound():
    with Budget(60):
        checked = 0
        for seed in range(scaled(6)):
            text = generate_corpus("mutated-repeat", 5000, 2 + seed % 3, seed)
            ell = repeat_profile(text)
            for scheme in ("doubling", "random-merge"):
                acc = build_accessor(generate_rlslp(text, scheme, seed), w=64,
                                     c_bal=C_BAL_LOCAL)
                for q in range(1, len(text) + 1):
                    sym, cost = access(acc, q)
                    assert sym == text[q - 1]
                    label = acc.partition.labels[acc.leaf_index(q)[0]]
                    if label.kind == "terminal":
                        continue
                    checked += 1
                    bound = C_BAL_LOCAL * max(1, math.log2(ell[q - 1])) + C_ACC
                    assert cost.descent_steps <= bound, (seed, scheme, q)
                    delta = leaf_length(acc.grammar, label)
                    assert cost.pred_k <= k_bound(delta, acc.pred.w) + 1e-9
        assert checked > 0


def _check_balanced(g, rng, full):
    out, rep = balance(g, report=True)
    assert contracting_form(g).is_contracting()
    if full:
        assert expand(out) == expand(g)
    else:
        assert len(out) == len(g)
        for q in [1, len(g)] + [rng.randint(1, len(g)) for _ in range(200)]:
            assert access_naive(out, q)[0] == access_naive(g, q)[0]
    assert rep.size_ratio <= C_BAL
    assert is_locally_balanced(out, C_BAL_LOCAL)


def test_criterion_3_balancing():
    with Budget(120):
        rng = random.Random(3)
        count = 0
        for side in ("left", "right"):
            _check_balanced(comb_rlslp(1000, side), rng, True)
            count += 1
        target = max(1000, scaled(1000))
        while count < target:
            if count % 4 == 0:
                text = generate_corpus(TEXT_KINDS[count % 5], rng.randint(1, 400), 3, count)
                g = random_merge_rlslp(text, count)
            else:
                g = random_chain_rlslp(rng.randint(2, 300), rng.randrange(2 ** 32))
                if g is None:
                    continue
            _check_balanced(g, rng, len(g) <= 20000)
            count += 1
        assert count >= 1000


SAMPLE_KEYS = [9, 497, 508, 527, 531, 844, 1379, 1381, 1382, 1385, 1410, 1871, 2040, 2276]


def test_criterion_4_distance_sensitivity():
    with Budget(180):
        z = build_pred(SAMPLE_KEYS, 7)
        assert root_labels(z) == ["0012", "13", "2314", "40", "5", "6431"]
        rng = random.Random(4)
        total = max(10 ** 6, scaled(10 ** 6))
        per_w = total // 3 + 1
        for w in (7, 16, 64):
            u = w ** trie_height(w)
            done = 0
            while done < per_w:
                size = rng.choice([1, 10, 100, 1000, 10 ** 4])
                hi = min(u - 1, 10 ** 15 if w == 64 else u - 1)
                keys = sorted({rng.randint(1, hi) for _ in range(size)})
                z = build_pred(keys, w)
                batch = min(per_w - done, 50000)
                for _ in range(batch):
                    if rng.random() < 0.5:
                        q = rng.randint(1, u - 1)
                    else:
                        # near a key, to exercise small distances
                        q = keys[rng.randrange(len(keys))] + int(2 ** rng.uniform(0, 40))
                        q = min(max(q, 1), u - 1)
                    ans = z.pred(q)
                    i = bisect.bisect_right(keys, q)
                    exp = keys[i - 1] if i else 0
                    assert ans.value == exp, (w, q)
                    assert ans.k <= k_bound(q - exp, w) + 1e-9, (w, q, ans)
                done += batch


def test_criterion_5_trie_depths():
    with Budget(60):
        rng = random.Random(5)
        for _ in range(scaled(300)):
            d = rng.choice([2, 4, 16])
            end = rng.randint(3, 4097)
            xs = [1] + sorted(rng.sample(range(2, end), rng.randint(0, min(end - 2, 300))))
            trie = build_ibst(xs, end, d)
            bounds = xs + [end]
            for i in range(len(xs)):
                length = bounds[i + 1] - bounds[i]
                # integer form of floor(log_d(end / length)) + 2
                e = 0
                while length * d ** (e + 1) <= end:
                    e += 1
                assert trie.depth_of(i) == e + 2 == leaf_depth(end, length, d)
            betas = sorted(tuple(b) for b in trie.betas())
            assert all(b[:len(a)] != a for a, b in zip(betas, betas[1:]))


def test_criterion_6_navigation():
    assert C_NAV <= 4
    with Budget(60):
        rng = random.Random(6)
        for _ in range(scaled(150)):
            d = rng.choice([2, 4, 16])
            end = rng.randint(2, 4097)
            xs = [1] + sorted(rng.sample(range(2, end), rng.randint(0, min(end - 2, 200))))
            trie = build_ibst(xs, end, d)
            sources = []
            for _ in range(20):
                y = rng.randint(1, end - 1)
                z = rng.randint(y + 1, min(end, y + rng.choice([2, 16, 256, 4096])))
                sources.append((y, z))
            nav = build_nav(trie, sources)
            for i, (y, z) in enumerate(sources):
                for q in range(y, z):
                    res = locate(nav, i, q)
                    j = locate_linear(trie.starts, q)
                    assert res.j == j
                    length = trie.starts[j + 1] - trie.starts[j]
                    assert res.edges <= max(0, math.log((z - y) / length, d)) + C_NAV


def _telescoping(p, alpha, w):
    acc = build_parse_accessor(p, alpha=alpha, w=w)
    hp = height_profile(p)
    a = max(1, alpha)
    for q in range(1, p.n + 1):
        _, cost = parse_access(acc, q)
        assert cost.iterations == hp[q] + 1
        i = p.phrase_index(q)
        length = p.starts[i + 1] - p.starts[i]
        bound = (math.log(length, acc.d) + C_1 * cost.h_q * (1 + math.log(a, acc.d)) + C_2)
        assert cost.trie_edges <= bound + 1e-9, (q, cost)


def test_criterion_7_telescoping():
    with Budget(60):
        w = 16
        for name, text in corpus(3000, seed=7, count=scaled(10)):
            # 1-contracting parses from grammars and block trees
            _telescoping(from_rlslp(random_merge_rlslp(text, 1)), 1, w)
            _telescoping(from_blocktree(build_blocktree(text)), 1, w)
            base = random_bidirectional(text, 3)
            for alpha in (2, w):
                _telescoping(make_contracting(base, alpha), alpha, w)


def test_criterion_8_transform():
    with Budget(180):
        rng = random.Random(8)
        count = max(500, scaled(500))
        for it in range(count):
            kind = TEXT_KINDS[it % len(TEXT_KINDS)]
            n = rng.randint(1, 300) if it % 10 else rng.randint(300, 3000)
            text = generate_corpus(kind, n, rng.choice([2, 3, 4]), it)
            p = random_bidirectional(text, it)
            if n <= 300:
                assert verify_attractor(text, attractor_from_parse(p))
            h_in = height_profile(p).h
            for alpha in (2, rng.choice([3, 16, 64])):
                out, rep = make_contracting(p, alpha, report=True)
                assert decode(out) == text
                assert rep.min_alpha_out <= alpha
                assert all(b <= a for a, b in zip(h_in, height_profile(out).h))
                assert out.t <= size_bound(p.t, p.n, alpha, C_CT, C_CT0)


def test_criterion_9_block_trees():
    with Budget(60):
        rng = random.Random(9)
        for name, text in corpus(3000, seed=9, count=scaled(20)):
            tree = build_blocktree(text, rng.choice([1, 2, 4]))
            assert decode_blocktree(tree) == text
            acc = build_bt_accessor(tree, 64)
            ell = repeat_profile(text)
            for i, leaf in enumerate(acc.leaves):
                if leaf.kind != "pruned":
                    continue
                m = bt_leaf_length(acc, i)
                piece = text[leaf.start - 1:leaf.start - 1 + m]
                assert 0 <= text.find(piece) < leaf.start - 1
                assert all(m <= ell[q - 1] for q in range(leaf.start, leaf.start + m))

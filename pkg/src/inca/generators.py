"""Deterministic generators for texts, parses and RLSLPs."""
import math
import random

from .parse import Copy, Explicit, Parse
from .rlslp import Binary, GrammarError, Rlslp, Run, Terminal, reachable, validate
from .text import as_text

TEXT_KINDS = ("fibonacci", "thue-morse", "random", "periodic", "mutated-repeat")
PARSE_SCHEMES = ("greedy-lz", "random-bidirectional")
RLSLP_SCHEMES = ("doubling", "random-merge")

ALPHABET = b"abcdefghijklmnopqrstuvwxyz"
# bytes used for planted mutations: never part of the background alphabet
MUTATIONS = bytes(range(33, 97))


def fibonacci_word(n):
    a, b = b"a", b"ab"
    while len(b) < n:
        a, b = b, b + a
    return (b if n > 1 else a)[:n]


def thue_morse(n):
    return bytes(ALPHABET[bin(i).count("1") % 2] for i in range(n))


def plant(text, mutations):
    """Copy of ``text`` with 1-based position -> byte replacements applied."""
    out = bytearray(as_text(text))
    for q, ch in mutations.items():
        out[q - 1] = ch if isinstance(ch, int) else ord(ch)
    return bytes(out)


def generate_corpus(kind, n, sigma=2, seed=0):
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= sigma <= len(ALPHABET):
        raise ValueError(f"sigma must lie in [1, {len(ALPHABET)}]")
    rng = random.Random(seed)
    letters = ALPHABET[:sigma]
    if kind == "fibonacci":
        return fibonacci_word(n)
    if kind == "thue-morse":
        return thue_morse(n)
    if kind == "random":
        return bytes(rng.choice(letters) for _ in range(n))
    if kind == "periodic":
        period = bytes(rng.choice(letters) for _ in range(rng.randint(1, max(1, min(16, n)))))
        return (period * (n // len(period) + 1))[:n]
    if kind == "mutated-repeat":
        unit = bytes(rng.choice(letters) for _ in range(rng.randint(2, max(2, min(64, n // 4 or 1)))))
        text = (unit * (n // len(unit) + 1))[:n]
        count = min(len(MUTATIONS), max(1, n // 256))
        sites = rng.sample(range(1, n + 1), min(count, n))
        # rare variants: a few substitutions by background letters as well
        variants = {q: rng.choice(letters) for q in rng.sample(range(1, n + 1), min(count, n))}
        variants.update({q: MUTATIONS[i] for i, q in enumerate(sites)})
        return plant(text, variants)
    raise ValueError(f"unknown text kind {kind!r}")


def explicit_cap(n, sigma):
    """max(1, floor(log_sigma n)): the longest literal a generated phrase carries."""
    if sigma < 2 or n < 2:
        return 1
    return max(1, int(math.log(n) / math.log(sigma) + 1e-9))


def _sigma(text):
    return max(2, len(set(text)))


def _longest_previous(text, i):
    """(source, length) of the longest factor at 0-based i with an earlier start.

    The earlier occurrence may overlap position i.
    """
    def occ(length):
        return text.find(text[i:i + length], 0, i + length - 1)

    if i == 0 or occ(1) == -1:
        return -1, 0
    limit = len(text) - i
    lo, hi = 1, 2
    while hi <= limit and occ(hi) != -1:
        lo, hi = hi, 2 * hi
    hi = min(hi, limit + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if occ(mid) != -1:
            lo = mid
        else:
            hi = mid
    return occ(lo), lo


def greedy_lz(text, cap=None):
    """Leftmost-greedy unidirectional parse; runs of fresh characters become literals."""
    text = as_text(text)
    cap = cap or explicit_cap(len(text), _sigma(text))
    phrases, lit, i = [], bytearray(), 0

    def flush():
        for k in range(0, len(lit), cap):
            phrases.append(Explicit(bytes(lit[k:k + cap])))
        lit.clear()

    while i < len(text):
        src, length = _longest_previous(text, i)
        if length == 0:
            lit.append(text[i])
            i += 1
            continue
        flush()
        phrases.append(Copy(src + 1, length))
        i += length
    flush()
    return Parse(phrases)


def random_bidirectional(text, seed=0, cap=None):
    """Random decodable parse whose sources may lie on either side.

    Phrases of a randomly split greedy parse are assigned sources in rounds;
    a source is admissible once every position it covers already resolves
    to an explicit phrase, so referencing chains are acyclic by construction.
    """
    text = as_text(text)
    n = len(text)
    rng = random.Random(seed)
    cap = cap or explicit_cap(n, _sigma(text))
    pieces = []  # (start 0-based, length)
    x = 0
    for ph in greedy_lz(text, cap).phrases:
        m = len(ph)
        while m:
            cut = m if isinstance(ph, Explicit) or rng.random() < 0.5 else rng.randint(1, m)
            pieces.append((x, cut))
            x, m = x + cut, m - cut
    explicit = [len(text[s:s + m]) <= cap and rng.random() < 0.05 for s, m in pieces]
    resolved = bytearray(n)
    assigned = {}
    for idx, (s, m) in enumerate(pieces):
        if explicit[idx]:
            resolved[s:s + m] = b"\x01" * m
    todo = [i for i in range(len(pieces)) if not explicit[i]]
    while todo:
        rng.shuffle(todo)
        left = []
        for idx in todo:
            s, m = pieces[idx]
            occ = _occurrences(text, text[s:s + m])
            ok = [j for j in occ if j != s and all(resolved[j:j + m])]
            if ok:
                assigned[idx] = rng.choice(ok)
                resolved[s:s + m] = b"\x01" * m
            else:
                left.append(idx)
        if len(left) == len(todo):
            # no progress: make one piece explicit
            idx = left.pop(rng.randrange(len(left)))
            explicit[idx] = True
            s, m = pieces[idx]
            resolved[s:s + m] = b"\x01" * m
        todo = left
    phrases = []
    for idx, (s, m) in enumerate(pieces):
        if explicit[idx]:
            for k in range(0, m, cap):
                phrases.append(Explicit(text[s + k:s + min(m, k + cap)]))
        else:
            phrases.append(Copy(assigned[idx] + 1, m))
    return Parse(phrases)


def _occurrences(text, pattern):
    out, j = [], text.find(pattern)
    while j != -1:
        out.append(j)
        j = text.find(pattern, j + 1)
    return out


def generate_parse(text, scheme="greedy-lz", seed=0):
    if scheme == "greedy-lz":
        return greedy_lz(text)
    if scheme == "random-bidirectional":
        return random_bidirectional(text, seed)
    raise ValueError(f"unknown parse scheme {scheme!r}")


class _Interner:
    """Hash-consing of rules so equal right-hand sides share one symbol."""

    def __init__(self):
        self.rules, self.ids = {}, {}

    def get(self, rule):
        sym = self.ids.get(rule)
        if sym is None:
            sym = f"T{rule.symbol}" if isinstance(rule, Terminal) else f"N{len(self.ids)}"
            self.ids[rule] = sym
            self.rules[sym] = rule
        return sym


def doubling_rlslp(text):
    """Pair adjacent symbols level by level; a 2^k-length text gives a perfect tree."""
    text = as_text(text)
    if not text:
        raise ValueError("empty text")
    it = _Interner()
    seq = [it.get(Terminal(b)) for b in text]
    while len(seq) > 1:
        nxt = [it.get(Binary(seq[i], seq[i + 1])) for i in range(0, len(seq) - 1, 2)]
        if len(seq) % 2:
            nxt.append(seq[-1])
        seq = nxt
    return Rlslp(it.rules, seq[0])


def random_merge_rlslp(text, seed=0):
    """Random pairings and run collapses until one symbol remains."""
    text = as_text(text)
    if not text:
        raise ValueError("empty text")
    rng = random.Random(seed)
    it = _Interner()
    seq = [it.get(Terminal(b)) for b in text]
    while len(seq) > 1:
        nxt, i = [], 0
        while i < len(seq):
            j = i
            while j < len(seq) and seq[j] == seq[i]:
                j += 1
            if j - i >= 2 and rng.random() < 0.7:
                nxt.append(it.get(Run(seq[i], j - i)))
                i = j
            elif i + 1 < len(seq) and rng.random() < 0.5:
                nxt.append(it.get(Binary(seq[i], seq[i + 1])))
                i += 2
            else:
                nxt.append(seq[i])
                i += 1
        if len(nxt) == len(seq):
            nxt = [it.get(Binary(seq[0], seq[1]))] + seq[2:]
        seq = nxt
    return Rlslp(it.rules, seq[0])


def generate_rlslp(text, scheme="doubling", seed=0):
    if scheme == "doubling":
        return doubling_rlslp(text)
    if scheme == "random-merge":
        return random_merge_rlslp(text, seed)
    raise ValueError(f"unknown rlslp scheme {scheme!r}")


def random_chain_rlslp(size, seed=0):
    """Deep random grammar: each rule extends the previous one, so height grows with size.

    Returns None when a run-length blow-up overflows the length limit.
    """
    rng = random.Random(seed)
    rules = {"a": Terminal(97), "b": Terminal(98), "c": Terminal(99)}
    prev, pool = "a", ["a", "b", "c"]
    for i in range(size):
        other, r = rng.choice(pool), rng.random()
        if r < 0.15:
            rules[f"N{i}"] = Run(prev, rng.randint(2, 4))
        elif r < 0.6:
            rules[f"N{i}"] = Binary(prev, other)
        else:
            rules[f"N{i}"] = Binary(other, prev)
        prev = f"N{i}"
        pool.append(prev)
        if len(pool) > 10:
            pool.pop(3)
    g = Rlslp(rules, prev)
    try:
        validate(g)
    except GrammarError:
        return None
    return reachable(g)


def comb_rlslp(depth, side="left"):
    """Maximally unbalanced grammar: a chain of ``depth`` binary rules."""
    rules = {"Ta": Terminal(97), "Tb": Terminal(98), "X0": Binary("Ta", "Tb")}
    for i in range(1, depth + 1):
        prev = f"X{i - 1}"
        rules[f"X{i}"] = Binary(prev, "Ta") if side == "left" else Binary("Tb", prev)
    return Rlslp(rules, f"X{depth}")


def abracadabra_rlslp():
    """Small RLSLP for abracad(abra)^7cabra handy in tests and demos."""
    b = Binary
    rules = {
        "A0": b("A1", "A4"), "A1": b("A2", "A3"), "A2": b("A5", "A6"),
        "A3": Run("A5", 7), "A4": b("C", "A5"), "A5": b("A7", "A8"),
        "A6": b("A9", "D"), "A7": b("A", "B"), "A8": b("R", "A"),
        "A9": b("C", "A"),
        "A": Terminal(ord("a")), "B": Terminal(ord("b")), "C": Terminal(ord("c")),
        "D": Terminal(ord("d")), "R": Terminal(ord("r")),
    }
    return Rlslp(rules, "A0")


def corpus(n_max=5000, seed=0, count=20):
    """A mixed list of (name, text) spanning every text kind."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        kind = TEXT_KINDS[i % len(TEXT_KINDS)]
        n = rng.randint(max(1, n_max // 20), n_max)
        sigma = rng.choice([2, 3, 4, 8])
        out.append((f"{kind}-{i}", generate_corpus(kind, n, sigma, seed + i)))
    return out

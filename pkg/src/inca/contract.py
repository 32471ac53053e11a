"""From a bidirectional parse to an alpha-contracting one.

Phrase boundaries plus a regular sample form a string attractor.  Each gap
between consecutive attractor positions is cut into phrases of lengths
alpha, alpha^2, ... growing from both ends toward the gap midpoint.  Every
new phrase copies the region reached by following the original sources
until that region crosses an attractor position, which can only shorten
referencing chains.
"""
import math
from bisect import bisect_left
from dataclasses import dataclass

from .constants import DEFAULT_W
from .parse import Copy, Explicit, Parse, decode, height_profile, min_alpha
from .parse_access import build_parse_accessor
from .text import as_text


def attractor_from_parse(p):
    """Phrase starts and ends, every explicit position, 1, n and every
    multiple of ceil(n / b) below n."""
    n, b = p.n, p.t
    gamma = {1, n}
    for ph, x, nxt in zip(p.phrases, p.starts, p.starts[1:]):
        gamma.add(x)
        gamma.add(nxt - 1)
        if isinstance(ph, Explicit):
            gamma.update(range(x, nxt))
    step = -(-n // b)
    gamma.update(k * step for k in range(1, b) if k * step <= n)
    return sorted(gamma)


def verify_attractor(text, gamma):
    """Whether every substring has an occurrence crossing a position of ``gamma``."""
    text = as_text(text)
    n = len(text)
    marks = [0] * (n + 1)  # marks[i] = |gamma ∩ [1, i]|
    members = set(gamma)
    for i in range(1, n + 1):
        marks[i] = marks[i - 1] + (i in members)
    for length in range(1, n + 1):
        crossing = {text[i:i + length] for i in range(n - length + 1)
                    if marks[i + length] - marks[i] > 0}
        for i in range(n - length + 1):
            if text[i:i + length] not in crossing:
                return False
    return True


def _gap_layout(lo, hi, alpha):
    """Phrase intervals (start, end inclusive, explicit?) covering [lo, hi]."""
    if hi < lo:
        return []
    if hi - lo + 1 <= 3:
        return [(q, q, True) for q in range(lo, hi + 1)]
    m = (lo - 1 + hi + 1) // 2  # midpoint of the two attractor positions
    left, right = [], []
    x, size = lo, alpha
    while x + size - 1 <= m - 1:
        left.append((x, x + size - 1, False))
        x, size = x + size, size * alpha
    if x <= m - 1:
        left.append((x, m - 1, False))
    y, size = hi, alpha
    while y - size + 1 >= m + 1:
        right.append((y - size + 1, y, False))
        y, size = y - size, size * alpha
    if y >= m + 1:
        right.append((m + 1, y, False))
    return left + [(m, m, True)] + right[::-1]


def layout(n, gamma, alpha):
    """Concentric exponential layout of [1, n] around the attractor positions."""
    out = []
    prev = None
    for g in gamma:
        if prev is not None:
            out.extend(_gap_layout(prev + 1, g - 1, alpha))
        elif g > 1:
            out.extend(_gap_layout(1, g - 1, alpha))
        out.append((g, g, True))
        prev = g
    if prev < n:
        out.extend(_gap_layout(prev + 1, n, alpha))
    return out


def _reassign(p, gamma, i, j):
    """Follow original sources from [i, j] until the region crosses gamma.

    Returns the new source start, or None when the chain ends inside an
    explicit phrase.
    """
    while True:
        k = p.phrase_index(i)
        ph = p.phrases[k]
        if isinstance(ph, Explicit):
            return None
        shift = ph.src - p.starts[k]
        i, j = i + shift, j + shift
        g = bisect_left(gamma, i)
        if g < len(gamma) and gamma[g] <= j:
            return i


@dataclass
class ContractReport:
    size_in: int
    size_out: int
    max_height_in: int
    max_height_out: int
    min_alpha_in: object
    min_alpha_out: object
    attractor_size: int

    @property
    def size_ratio(self):
        return self.size_out / self.size_in


def make_contracting(p, alpha, report=False):
    """An alpha-contracting parse of the same text with no larger heights."""
    if int(alpha) != alpha or alpha < 2:
        raise ValueError("alpha must be an integer >= 2")
    alpha = int(alpha)
    text = decode(p)
    gamma = attractor_from_parse(p)
    phrases = []
    for lo, hi, explicit in layout(p.n, gamma, alpha):
        src = None if explicit else _reassign(p, gamma, lo, hi)
        if src is None:
            phrases.append(Explicit(text[lo - 1:hi]))
        else:
            phrases.append(Copy(src, hi - lo + 1))
    out = Parse(phrases)
    if not report:
        return out
    return out, ContractReport(
        size_in=p.t, size_out=out.t,
        max_height_in=height_profile(p).max, max_height_out=height_profile(out).max,
        min_alpha_in=min_alpha(p), min_alpha_out=min_alpha(out),
        attractor_size=len(gamma))


def size_bound(b, n, alpha, c, c0):
    """c * b * max(1, log_alpha(n / b)) + c0."""
    return c * b * max(1.0, math.log(n / b, alpha)) + c0


def end_to_end(p, w=DEFAULT_W):
    """Accessor over the w-contracting transform of ``p``."""
    q = make_contracting(p, w)
    return build_parse_accessor(q, alpha=w, w=w)

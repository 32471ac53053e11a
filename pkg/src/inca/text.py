"""Texts, the longest-repeat profile and substring complexity.

Positions are 1-based throughout the package.
"""
import heapq
from fractions import Fraction


def as_text(data):
    """Coerce str/bytes/list of ints into an immutable ``bytes`` text."""
    if isinstance(data, str):
        return data.encode("latin-1")
    return bytes(data)


def _check_pos(text, q):
    if not 1 <= q <= len(text):
        raise IndexError(f"position {q} outside [1, {len(text)}]")


def count_occurrences(text, pattern):
    """Occurrences of ``pattern`` in ``text`` at distinct starts, overlaps allowed."""
    count, i = 0, text.find(pattern)
    while i != -1:
        count += 1
        i = text.find(pattern, i + 1)
    return count


def longest_repeat_at(text, q):
    """Length of the longest substring containing position ``q`` that occurs twice.

    Brute force over every window containing ``q``; this is the oracle the
    fast :func:`repeat_profile` is checked against.
    """
    text = as_text(text)
    _check_pos(text, q)
    n = len(text)
    best = 0
    for i in range(1, q + 1):
        # windows starting at i and covering q; only lengths above best matter
        for length in range(max(best + 1, q - i + 1), n - i + 2):
            if count_occurrences(text, text[i - 1:i - 1 + length]) >= 2:
                best = length
            else:
                # a longer window with the same start contains this unique one
                break
    return best


def suffix_array(text):
    """Suffix array (0-based starts) by prefix doubling."""
    n = len(text)
    if n == 0:
        return []
    rank = list(text)
    sa = list(range(n))
    k = 1
    while True:
        key = lambda i: (rank[i], rank[i + k] if i + k < n else -1)
        sa.sort(key=key)
        new = [0] * n
        for a, b in zip(sa, sa[1:]):
            new[b] = new[a] + (key(a) != key(b))
        rank = new
        if rank[sa[-1]] == n - 1:
            return sa
        k *= 2


def lcp_array(text, sa):
    """Kasai LCP: ``lcp[r]`` is the LCP of suffixes ``sa[r-1]`` and ``sa[r]`` (lcp[0] = 0)."""
    n = len(text)
    rank = [0] * n
    for r, i in enumerate(sa):
        rank[i] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and text[i + h] == text[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def repeat_profile(text):
    """``ell[q-1]`` = longest repeated substring through position ``q``, for all q.

    The longest repeat starting at suffix i has length max(lcp with its two SA
    neighbours); every q is covered by the best such interval reaching it.
    """
    text = as_text(text)
    n = len(text)
    sa = suffix_array(text)
    lcp = lcp_array(text, sa)
    start_len = [0] * n
    for r, i in enumerate(sa):
        right = lcp[r + 1] if r + 1 < n else 0
        start_len[i] = max(lcp[r], right)
    ell = [0] * n
    heap = []  # (-length, end) of intervals opened so far
    for q in range(n):
        if start_len[q]:
            heapq.heappush(heap, (-start_len[q], q + start_len[q] - 1))
        while heap and heap[0][1] < q:
            heapq.heappop(heap)
        ell[q] = -heap[0][0] if heap else 0
    return ell


def substring_complexity(text, minimum=False):
    """max_k d_k / k over the distinct k-mer counts d_k.

    ``minimum=True`` returns min_k instead (the literal reading of the
    definition; it is always 1/n for a text of length n).
    """
    text = as_text(text)
    n = len(text)
    if n == 0:
        raise ValueError("empty text")
    ratios = (Fraction(len({text[i:i + k] for i in range(n - k + 1)}), k)
              for k in range(1, n + 1))
    return min(ratios) if minimum else max(ratios)

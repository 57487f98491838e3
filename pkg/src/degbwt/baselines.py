"""Reference matchers used as oracles and benchmark baselines."""
from __future__ import annotations

import numpy as np

from .core import DNA, Alphabet, InvalidInput, as_string

WORD = 64


class UnsupportedLength(ValueError):
    pass


def naive_match(p, t, alphabet: Alphabet = DNA) -> np.ndarray:
    """Every 1-based start ``j + 1`` such that ``p[i] & t[i + j] != 0`` for all i.

    Checks all alignments at once, one pattern position at a time.
    """
    p, t = as_string(p, alphabet), as_string(t, alphabet)
    m, n = p.size, t.size
    if m == 0:
        raise InvalidInput("pattern must not be empty")
    if m > n:
        return np.empty(0, dtype=np.int64)
    ok = np.ones(n - m + 1, dtype=bool)
    for i in range(m):
        ok &= (t[i : i + n - m + 1] & p[i]) != 0
    return np.flatnonzero(ok) + 1


def bitmask_table(p, alphabet: Alphabet = DNA) -> list[int]:
    """Per-base masks for BNDM: bit ``m - 1 - i`` of ``B[b]`` is set when base b is in p[i]."""
    m = len(p)
    B = [0] * alphabet.sigma
    for i, sym in enumerate(p):
        for b in range(alphabet.sigma):
            if int(sym) >> b & 1:
                B[b] |= 1 << (m - 1 - i)
    return B


def bndm_degenerate(p, t, alphabet: Alphabet = DNA) -> np.ndarray:
    """Backward nondeterministic DAWG matching with degenerate letters on both sides.

    A text letter contributes the OR of the base masks it contains, so the
    automaton accepts exactly the intersection-based matches.
    """
    p, t = as_string(p, alphabet), as_string(t, alphabet)
    m, n = p.size, t.size
    if m == 0:
        raise InvalidInput("pattern must not be empty")
    if m > WORD:
        raise UnsupportedLength(f"BNDM supports patterns up to {WORD} symbols (got {m}); use the dbs or naive engine")
    if m > n:
        return np.empty(0, dtype=np.int64)

    B = bitmask_table(p, alphabet)
    table = [0] * alphabet.n_masks
    for x in range(1, alphabet.n_masks):
        for b in range(alphabet.sigma):
            if x >> b & 1:
                table[x] |= B[b]
    full = (1 << m) - 1
    top = 1 << (m - 1)
    text = t.tobytes()
    out = []
    pos = 0
    while pos <= n - m:
        j = m
        last = m
        D = full
        while D:
            D &= table[text[pos + j - 1]]
            j -= 1
            if D & top:
                if j > 0:
                    last = j
                else:
                    out.append(pos + 1)
            D = (D << 1) & full
        pos += last
    return np.array(out, dtype=np.int64)

"""Backward search for degenerate patterns.

The interval set H is a pair of sorted int64 arrays (starts, ends) holding
1-based inclusive row ranges of the sorted rotation matrix.  Each step replaces
every interval (i, j) by one interval per symbol ``c`` occurring in the text
that intersects the current pattern symbol::

    r = C[c] + rank_c(L, i - 1) + 1
    s = C[c] + rank_c(L, j)

and keeps those with ``r <= s``.  Candidate intervals come out grouped by
``c`` and ordered inside each group, and the groups occupy disjoint ranges of
rows (the C buckets), so concatenating groups in increasing ``c`` yields a
sorted list with no extra sort.  Adjacent intervals are then coalesced.
"""
from __future__ import annotations

import os
from typing import Callable, Iterable, Iterator, Optional

import numpy as np

from .bwt_index import BwtIndex
from .core import InvalidInput, as_string


# Invariant assertions after every step; on when DEGBWT_CHECK is set (tests force it on).
DEBUG_CHECKS = bool(os.environ.get("DEGBWT_CHECK"))


class IntervalInvariantError(AssertionError):
    """An interval list violated its ordering/disjointness invariant."""


class IntervalSet:
    """Sorted, pairwise disjoint 1-based inclusive row intervals."""

    __slots__ = ("starts", "ends")

    def __init__(self, starts=(), ends=()):
        self.starts = np.asarray(starts, dtype=np.int64)
        self.ends = np.asarray(ends, dtype=np.int64)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "IntervalSet":
        pairs = list(pairs)
        if not pairs:
            return cls()
        s, e = zip(*pairs)
        return cls(s, e)

    def __len__(self):
        return int(self.starts.size)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return zip(self.starts.tolist(), self.ends.tolist())

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return np.array_equal(self.starts, other.starts) and np.array_equal(self.ends, other.ends)

    def __repr__(self):
        return f"IntervalSet({list(self)})"

    def pairs(self) -> list[tuple[int, int]]:
        return list(self)

    def n_rows(self) -> int:
        return int((self.ends - self.starts + 1).sum())

    def rows(self) -> np.ndarray:
        """All covered rows, ascending."""
        if not len(self):
            return np.empty(0, dtype=np.int64)
        lengths = self.ends - self.starts + 1
        offsets = np.repeat(self.starts - np.cumsum(np.concatenate(([0], lengths[:-1]))), lengths)
        return offsets + np.arange(lengths.sum())

    def check(self, merged: bool = False) -> None:
        """Raise IntervalInvariantError unless sorted and disjoint (and non-adjacent when ``merged``)."""
        if np.any(self.starts > self.ends):
            raise IntervalInvariantError("interval with start > end")
        gap = 1 if merged else 0
        if np.any(self.starts[1:] <= self.ends[:-1] + gap):
            what = "adjacent or overlapping" if merged else "overlapping or unsorted"
            raise IntervalInvariantError(f"{what} intervals in {self!r}")


def merge(I) -> IntervalSet:
    """Coalesce runs of adjacent intervals, i.e. (i, j), (j+1, k) -> (i, k).

    Input must be sorted by start and non-overlapping.
    """
    if not isinstance(I, IntervalSet):
        I = IntervalSet.from_pairs(I)
    I.check()
    if len(I) < 2:
        return IntervalSet(I.starts.copy(), I.ends.copy())
    brk = I.starts[1:] != I.ends[:-1] + 1
    first = np.concatenate(([True], brk))
    last = np.concatenate((brk, [True]))
    return IntervalSet(I.starts[first], I.ends[last])


def one_step(H: IntervalSet, pk: int, idx: BwtIndex, do_merge: bool = True, check: Optional[bool] = None) -> IntervalSet:
    """Refine every interval of H by the pattern symbol ``pk``."""
    if check is None:
        check = DEBUG_CHECKS
    pk = int(pk)
    if pk == 0:
        raise InvalidInput("pattern symbols must be non-empty subsets")
    if not len(H):
        return IntervalSet()
    starts, ends = [], []
    lo = H.starts - 1
    for c in idx.symbols:
        if not c & pk:
            continue
        base = idx.C[c]
        r = base + idx.rank_many(c, lo) + 1
        s = base + idx.rank_many(c, H.ends)
        keep = r <= s
        if keep.any():
            starts.append(r[keep])
            ends.append(s[keep])
    if not starts:
        return IntervalSet()
    out = IntervalSet(np.concatenate(starts), np.concatenate(ends))
    if check:
        out.check()
    if do_merge:
        out = merge(out)
        if check:
            out.check(merged=True)
    return out


StepHook = Callable[[int, IntervalSet], None]


def degenerate_backward_search(
    p,
    idx: BwtIndex,
    do_merge: bool = True,
    check: Optional[bool] = None,
    on_step: Optional[StepHook] = None,
) -> IntervalSet:
    """Row intervals whose rotations have ``p`` as a degenerate prefix.

    Starts from the whole matrix (1, n + 1) and applies one step per pattern
    symbol from the last to the first, stopping early once H is empty.
    ``on_step(k, H)`` is called after processing the 1-based position ``k``.
    """
    p = as_string(p, idx.alphabet)
    m = p.size
    if m == 0:
        raise InvalidInput("pattern must not be empty")
    if m > idx.n:
        return IntervalSet()
    H = IntervalSet([1], [idx.N])
    k = m
    while len(H) and k >= 1:
        H = one_step(H, p[k - 1], idx, do_merge=do_merge, check=check)
        if on_step is not None:
            on_step(k, H)
        k -= 1
    return H


def find_occurrences(p, idx: BwtIndex, do_merge: bool = True) -> np.ndarray:
    """Sorted 1-based start positions of every match of ``p``."""
    H = degenerate_backward_search(p, idx, do_merge=do_merge)
    if not len(H):
        return np.empty(0, dtype=np.int64)
    return np.unique(idx.locate_rows(H.rows()))


def count_occurrences(p, idx: BwtIndex) -> int:
    """Number of matches, without locating them."""
    return degenerate_backward_search(p, idx).n_rows()

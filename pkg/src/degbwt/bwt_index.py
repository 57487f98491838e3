"""BWT index over a sentinel-terminated degenerate text.

The indexed string is ``t$`` where ``$`` is mask 0, smaller than every symbol.
With a unique smallest terminator the sorted cyclic rotations of ``t$`` are in
the same order as its sorted suffixes, so the matrix is obtained from a suffix
array.  Row indices and text positions in the public API are 1-based; arrays
are 0-based internally.
"""
from __future__ import annotations

import struct
import zlib

import numpy as np

from .core import DNA, SENTINEL, Alphabet, InvalidInput, as_string

BLOCK = 64
DEFAULT_SAMPLE_RATE = 32
FORMAT_VERSION = 1
MAGIC = b"DBSI"

# _LOW[k] has the k lowest bits set.
_LOW = np.array([(1 << k) - 1 for k in range(BLOCK)], dtype=np.uint64)


class IndexLoadError(Exception):
    """Base class for failures while reading a serialized index."""


class BadMagic(IndexLoadError):
    pass


class VersionMismatch(IndexLoadError):
    pass


class Truncated(IndexLoadError):
    pass


class ChecksumMismatch(IndexLoadError):
    pass


def build_suffix_array(t, alphabet: Alphabet = DNA) -> np.ndarray:
    """1-based suffix array of ``t$`` by prefix doubling.

    Returns ``n + 1`` positions; the first entry is always ``n + 1`` (the
    sentinel suffix).
    """
    t = as_string(t, alphabet)
    if t.size == 0:
        raise InvalidInput("cannot index an empty text")
    text = np.concatenate([t, np.array([SENTINEL], dtype=np.uint8)])
    N = text.size
    rank = np.unique(text, return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(N, -1, dtype=np.int64)
        if k < N:
            second[: N - k] = rank[k:]
        key = rank * (N + 1) + (second + 1)
        order = np.argsort(key, kind="stable")
        sk = key[order]
        new = np.empty(N, dtype=np.int64)
        new[order] = np.concatenate(([0], np.cumsum(sk[1:] != sk[:-1])))
        rank = new
        if rank[order[-1]] == N - 1:
            break
        k <<= 1
    return order + 1


def _pack(flags: np.ndarray) -> np.ndarray:
    """Pack a boolean array into little-endian uint64 words plus one spare word."""
    nwords = flags.size // BLOCK + 1
    padded = np.zeros(nwords * BLOCK, dtype=bool)
    padded[: flags.size] = flags
    return np.packbits(padded, bitorder="little").view("<u8").copy()


def _checkpoints(words: np.ndarray) -> np.ndarray:
    """Set bits strictly before each word, along the last axis."""
    counts = np.bitwise_count(words).astype(np.int64)
    cp = np.zeros_like(counts)
    cp[..., 1:] = np.cumsum(counts[..., :-1], axis=-1)
    return cp


class BwtIndex:
    """L column, ``h``, C array, rank structure and sampled suffix array.

    Rank queries use one occurrence bitmap per symbol, split into 64-bit
    words, with a cumulative count stored before each word, so
    ``rank_c(i)`` is one lookup plus one popcount.
    """

    def __init__(self, L, h, sample_rate, marks, samples, alphabet: Alphabet = DNA):
        self.alphabet = alphabet
        self.L = np.ascontiguousarray(L, dtype=np.uint8)
        self.N = int(self.L.size)
        self.n = self.N - 1
        self.h = int(h)
        self.sample_rate = int(sample_rate)
        self.samples = np.asarray(samples, dtype=np.int64)

        counts = np.bincount(self.L, minlength=alphabet.n_masks).astype(np.int64)
        if counts.size > alphabet.n_masks:
            raise InvalidInput("L contains masks outside the alphabet")
        self.C = np.concatenate([[0], np.cumsum(counts)])
        self.symbols = [c for c in range(1, alphabet.n_masks) if counts[c]]

        self.occ_bits = np.stack([_pack(self.L == c) for c in range(alphabet.n_masks)])
        self.occ_cp = _checkpoints(self.occ_bits)
        marks = np.asarray(marks, dtype=bool)
        self.mark_bits = _pack(marks)
        self.mark_cp = _checkpoints(self.mark_bits)
        if int(marks.sum()) != self.samples.size:
            raise InvalidInput("sample marks and sample values disagree")

    # -- rank -------------------------------------------------------------
    def rank(self, c: int, i: int) -> int:
        """Occurrences of symbol ``c`` in ``L[1..i]`` for ``0 <= i <= n + 1``."""
        if not 0 <= i <= self.N:
            raise InvalidInput(f"rank position {i} outside 0..{self.N}")
        w, off = i >> 6, i & 63
        return int(self.occ_cp[c, w]) + int(np.bitwise_count(self.occ_bits[c, w] & _LOW[off]))

    def rank_many(self, c, i: np.ndarray) -> np.ndarray:
        """Vectorised rank; ``c`` may be a scalar or an array matching ``i``."""
        i = np.asarray(i, dtype=np.int64)
        w, off = i >> 6, i & 63
        words = self.occ_bits[c, w] & _LOW[off]
        return self.occ_cp[c, w] + np.bitwise_count(words).astype(np.int64)

    def lf(self, rows0: np.ndarray) -> np.ndarray:
        """LF mapping on 0-based rows."""
        c = self.L[rows0]
        return self.C[c] + self.rank_many(c, rows0)

    # -- locate -----------------------------------------------------------
    def _is_marked(self, rows0):
        return ((self.mark_bits[rows0 >> 6] >> (rows0 & 63).astype(np.uint64)) & np.uint64(1)).astype(bool)

    def _sample_at(self, rows0):
        w, off = rows0 >> 6, rows0 & 63
        idx = self.mark_cp[w] + np.bitwise_count(self.mark_bits[w] & _LOW[off]).astype(np.int64)
        return self.samples[idx]

    def locate_rows(self, rows) -> np.ndarray:
        """Text positions (1-based) of the given 1-based rows, in input order."""
        rows0 = np.asarray(rows, dtype=np.int64) - 1
        out = np.empty(rows0.size, dtype=np.int64)
        pending = np.arange(rows0.size)
        cur = rows0.copy()
        steps = 0
        while pending.size:
            hit = self._is_marked(cur)
            if hit.any():
                out[pending[hit]] = self._sample_at(cur[hit]) + steps
                keep = ~hit
                pending, cur = pending[keep], cur[keep]
            if not pending.size:
                break
            cur = self.lf(cur)
            steps += 1
        return out

    def locate(self, i: int, j: int) -> np.ndarray:
        """Sorted text positions of rows ``i..j`` (inclusive, 1-based)."""
        if not 1 <= i <= j <= self.N:
            raise InvalidInput(f"interval ({i}, {j}) outside 1..{self.N}")
        return np.sort(self.locate_rows(np.arange(i, j + 1)))

    # -- misc -------------------------------------------------------------
    def first_column(self) -> np.ndarray:
        return np.repeat(np.arange(self.alphabet.n_masks, dtype=np.uint8), np.diff(self.C))

    def __eq__(self, other):
        if not isinstance(other, BwtIndex):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.h == other.h
            and self.sample_rate == other.sample_rate
            and np.array_equal(self.L, other.L)
            and np.array_equal(self.samples, other.samples)
            and np.array_equal(self.mark_bits, other.mark_bits)
        )

    def __repr__(self):
        return f"BwtIndex(n={self.n}, sigma={self.alphabet.sigma}, h={self.h}, sample_rate={self.sample_rate})"


def bwt_build(t, alphabet: Alphabet = DNA, sample_rate: int = DEFAULT_SAMPLE_RATE, sa=None) -> BwtIndex:
    """Build the index of ``t``; ``sa`` may pass a precomputed suffix array."""
    if sample_rate < 1:
        raise InvalidInput("sample rate must be positive")
    t = as_string(t, alphabet)
    if sa is None:
        sa = build_suffix_array(t, alphabet)
    text = np.concatenate([t, np.array([SENTINEL], dtype=np.uint8)])
    L = text[sa - 2]  # sa == 1 wraps to the sentinel at index -1
    h = int(np.flatnonzero(sa == 1)[0]) + 1
    marks = (sa - 1) % sample_rate == 0
    return BwtIndex(L, h, sample_rate, marks, sa[marks], alphabet)


def inverse_bwt(L, h: int) -> np.ndarray:
    """Recover ``t`` from ``(L, h)`` by walking the LF mapping."""
    L = np.asarray(L, dtype=np.uint8)
    N = L.size
    if N < 2:
        raise InvalidInput("L must hold at least one symbol and the sentinel")
    if np.count_nonzero(L == SENTINEL) != 1:
        raise InvalidInput("L must contain exactly one sentinel")
    if not 1 <= h <= N or L[h - 1] != SENTINEL:
        raise InvalidInput(f"h={h} does not point at the sentinel row")
    order = np.argsort(L, kind="stable")
    lf = np.empty(N, dtype=np.int64)
    lf[order] = np.arange(N)
    lf_list, L_list = lf.tolist(), L.tolist()
    out = [0] * (N - 1)
    r = 0  # row 1 starts with the sentinel, so L[1] = t[n]
    for k in range(N - 2, -1, -1):
        out[k] = L_list[r]
        r = lf_list[r]
    if r != h - 1:
        raise InvalidInput("(L, h) is not a valid BWT")
    return np.array(out, dtype=np.uint8)


# -- serialization ------------------------------------------------------------
def _pack_L(L: np.ndarray, sigma: int) -> bytes:
    if sigma > 4:
        return L.tobytes()
    padded = L if L.size % 2 == 0 else np.concatenate([L, [0]]).astype(np.uint8)
    return (padded[0::2] | (padded[1::2] << 4)).astype(np.uint8).tobytes()


def _unpack_L(buf: bytes, N: int, sigma: int) -> np.ndarray:
    raw = np.frombuffer(buf, dtype=np.uint8)
    if sigma > 4:
        return raw.copy()
    out = np.empty(raw.size * 2, dtype=np.uint8)
    out[0::2] = raw & 0x0F
    out[1::2] = raw >> 4
    return out[:N]


def serialize(idx: BwtIndex) -> bytes:
    """Binary image of the index; see README for the layout."""
    sigma = idx.alphabet.sigma
    nwords = idx.occ_bits.shape[1]
    parts = [
        struct.pack("<B", sigma),
        idx.alphabet.letters.encode("ascii"),
        struct.pack("<QQ", idx.n, idx.h),
        idx.C.astype("<u8").tobytes(),
        _pack_L(idx.L, sigma),
        struct.pack("<IQ", BLOCK, nwords),
        idx.occ_cp.astype("<u8").tobytes(),
        struct.pack("<I", idx.sample_rate),
        idx.mark_bits.astype("<u8").tobytes(),
        struct.pack("<Q", idx.samples.size),
        idx.samples.astype("<u8").tobytes(),
    ]
    payload = b"".join(parts)
    return (
        MAGIC
        + struct.pack("<HQ", FORMAT_VERSION, len(payload))
        + payload
        + struct.pack("<I", zlib.crc32(payload))
    )


class _Reader:
    def __init__(self, buf: bytes):
        self.buf, self.pos = buf, 0

    def take(self, k: int) -> bytes:
        if self.pos + k > len(self.buf):
            raise Truncated("index payload ends early")
        out = self.buf[self.pos : self.pos + k]
        self.pos += k
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def array(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * count), dtype="<u8").astype(np.int64)


def deserialize(data: bytes) -> BwtIndex:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("not a DBSI index file")
    if len(data) < 14:
        raise Truncated("header is incomplete")
    version, length = struct.unpack("<HQ", data[4:14])
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"index format version {version}, expected {FORMAT_VERSION}")
    if len(data) < 14 + length + 4:
        raise Truncated(f"expected {14 + length + 4} bytes, got {len(data)}")
    payload = data[14 : 14 + length]
    (crc,) = struct.unpack("<I", data[14 + length : 18 + length])
    if zlib.crc32(payload) != crc:
        raise ChecksumMismatch("payload CRC-32 does not match")

    r = _Reader(payload)
    (sigma,) = r.unpack("<B")
    alphabet = Alphabet(r.take(sigma).decode("ascii"))
    n, h = r.unpack("<QQ")
    N = n + 1
    C = r.array(alphabet.n_masks + 1)
    L = _unpack_L(r.take(N if sigma > 4 else (N + 1) // 2), N, sigma)
    block, nwords = r.unpack("<IQ")
    if block != BLOCK:
        raise IndexLoadError(f"unsupported rank block size {block}")
    cp = r.array(alphabet.n_masks * nwords).reshape(alphabet.n_masks, nwords)
    (rate,) = r.unpack("<I")
    mark_bits = np.frombuffer(r.take(8 * nwords), dtype="<u8")
    (ns,) = r.unpack("<Q")
    samples = r.array(ns)
    if r.pos != len(payload):
        raise IndexLoadError("trailing bytes after index payload")

    marks = np.unpackbits(mark_bits.view(np.uint8), bitorder="little")[:N].astype(bool)
    idx = BwtIndex(L, h, rate, marks, samples, alphabet)
    if not (np.array_equal(idx.C, C) and np.array_equal(idx.occ_cp, cp)):
        raise IndexLoadError("stored C array or rank checkpoints disagree with L")
    return idx


def save(idx: BwtIndex, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(idx))


def load(path) -> BwtIndex:
    with open(path, "rb") as fh:
        return deserialize(fh.read())

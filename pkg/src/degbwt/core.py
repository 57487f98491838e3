"""Degenerate symbols and strings.

A degenerate symbol is a non-empty subset of a small base alphabet, stored as
a bitmask: bit ``b`` is set when base letter ``b`` belongs to the subset.  For
DNA (``sigma == 4``) the bases are ``A, C, G, T`` with masks 1, 2, 4 and 8, and
the 15 IUPAC codes cover every non-empty subset.  Mask 0 is reserved for the
sentinel that terminates an indexed text; it intersects nothing.

Strings are plain ``numpy.uint8`` arrays of masks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

SENTINEL = 0


class InvalidInput(ValueError):
    """Raised for malformed user input (bad characters, empty strings, ...)."""


@dataclass(frozen=True)
class Alphabet:
    """Totally ordered base alphabet of ``sigma`` letters (1 <= sigma <= 8)."""

    letters: str = "ACGT"

    def __post_init__(self):
        if not 1 <= len(self.letters) <= 8:
            raise InvalidInput(f"alphabet size must be in 1..8, got {len(self.letters)}")
        if len(set(self.letters.upper())) != len(self.letters):
            raise InvalidInput(f"alphabet letters must be distinct: {self.letters!r}")

    @property
    def sigma(self) -> int:
        return len(self.letters)

    @property
    def n_masks(self) -> int:
        """Number of mask values including the sentinel, i.e. ``2**sigma``."""
        return 1 << self.sigma

    @property
    def full_mask(self) -> int:
        return (1 << self.sigma) - 1

    def solid_masks(self) -> list[int]:
        return [1 << b for b in range(self.sigma)]

    def nonsolid_masks(self) -> list[int]:
        return [c for c in range(1, self.n_masks) if not is_solid(c)]

    def bases(self, mask: int) -> str:
        return "".join(ch for b, ch in enumerate(self.letters) if mask >> b & 1)


DNA = Alphabet("ACGT")

# IUPAC nucleotide codes; U is read as T.
_IUPAC_BASES = {
    "A": "A", "C": "C", "G": "G", "T": "T",
    "R": "AG", "Y": "CT", "S": "CG", "W": "AT", "K": "GT", "M": "AC",
    "B": "CGT", "D": "AGT", "H": "ACT", "V": "ACG",
    "N": "ACGT",
}
IUPAC_ENCODE = {
    code: sum(1 << "ACGT".index(b) for b in bases) for code, bases in _IUPAC_BASES.items()
}
IUPAC_ENCODE["U"] = IUPAC_ENCODE["T"]
IUPAC_DECODE = {mask: code for code, mask in IUPAC_ENCODE.items() if code != "U"}

# Lookup table for fast vectorised encoding of byte strings; 255 marks "invalid".
_IUPAC_LUT = np.full(256, 255, dtype=np.uint8)
for _code, _mask in IUPAC_ENCODE.items():
    _IUPAC_LUT[ord(_code)] = _mask
    _IUPAC_LUT[ord(_code.lower())] = _mask

DegenerateString = np.ndarray
StringLike = Union[str, Sequence[int], np.ndarray]


def is_solid(mask: int) -> bool:
    return mask > 0 and mask & (mask - 1) == 0


def intersects(a: int, b: int) -> bool:
    """True when the two subsets share a base letter (the sentinel shares none)."""
    return (int(a) & int(b)) != 0


def symbol_order(a: int, b: int) -> int:
    """Three-way comparison of symbols: -1, 0 or 1.

    The sentinel (mask 0) is smallest; other symbols compare by mask value.
    """
    a, b = int(a), int(b)
    return (a > b) - (a < b)


def encode_iupac(ch: str, position: int | None = None) -> int:
    mask = IUPAC_ENCODE.get(ch.upper()) if len(ch) == 1 else None
    if mask is None:
        where = f" at position {position}" if position is not None else ""
        raise InvalidInput(f"invalid IUPAC character {ch!r}{where}")
    return mask


def decode_iupac(mask: int) -> str:
    try:
        return IUPAC_DECODE[int(mask)]
    except KeyError:
        raise InvalidInput(f"mask {mask} is not an IUPAC nucleotide subset (valid: 1..15)") from None


_TOKEN = re.compile(r"\[([^\]]*)\]|(.)", re.S)


def parse(text: str, alphabet: Alphabet = DNA) -> DegenerateString:
    """Parse IUPAC letters and/or bracket subsets such as ``A[CG]T``.

    Bracket notation lists base letters of ``alphabet``; it is the only form
    accepted when the alphabet is not DNA.  Whitespace is ignored.
    """
    use_iupac = alphabet.letters.upper() == "ACGT"
    upper = alphabet.letters.upper()
    out = []
    for m in _TOKEN.finditer(text):
        pos = m.start() + 1
        group, single = m.group(1), m.group(2)
        if single is not None:
            if single.isspace():
                continue
            if single in "[]":
                raise InvalidInput(f"unbalanced bracket at position {pos}")
            if use_iupac:
                out.append(encode_iupac(single, pos))
            else:
                idx = upper.find(single.upper())
                if idx < 0:
                    raise InvalidInput(f"invalid character {single!r} at position {pos}")
                out.append(1 << idx)
        else:
            mask = 0
            for k, ch in enumerate(group):
                idx = upper.find(ch.upper())
                if idx < 0:
                    raise InvalidInput(f"invalid character {ch!r} at position {pos + 1 + k}")
                mask |= 1 << idx
            if mask == 0:
                raise InvalidInput(f"empty subset at position {pos}")
            out.append(mask)
    return np.array(out, dtype=np.uint8)


def encode_bytes(data: bytes) -> DegenerateString:
    """Vectorised IUPAC encoding of a byte string (no whitespace allowed)."""
    arr = _IUPAC_LUT[np.frombuffer(data, dtype=np.uint8)]
    bad = np.flatnonzero(arr == 255)
    if bad.size:
        k = int(bad[0])
        raise InvalidInput(f"invalid IUPAC character {chr(data[k])!r} at position {k + 1}")
    return arr


def as_string(x: StringLike, alphabet: Alphabet = DNA) -> DegenerateString:
    """Coerce text or a mask sequence to a validated uint8 mask array."""
    if isinstance(x, str):
        return parse(x, alphabet)
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise InvalidInput("a degenerate string must be one-dimensional")
    if arr.size and (arr.min() < 1 or arr.max() > alphabet.full_mask):
        raise InvalidInput(f"symbol masks must lie in 1..{alphabet.full_mask}")
    return arr.astype(np.uint8, copy=False)


def format_string(x: Iterable[int], alphabet: Alphabet = DNA) -> str:
    """Inverse of :func:`parse`; the sentinel is written ``$``."""
    out = []
    dna = alphabet.letters.upper() == "ACGT"
    for c in x:
        c = int(c)
        if c == SENTINEL:
            out.append("$")
        elif dna:
            out.append(decode_iupac(c))
        elif is_solid(c):
            out.append(alphabet.bases(c))
        else:
            out.append("[" + alphabet.bases(c) + "]")
    return "".join(out)


def is_degenerate_prefix(u: StringLike, x: StringLike) -> bool:
    u = np.asarray(as_string(u) if isinstance(u, str) else u, dtype=np.uint8)
    x = np.asarray(as_string(x) if isinstance(x, str) else x, dtype=np.uint8)
    if len(u) > len(x):
        return False
    return bool(np.all((u & x[: len(u)]) != 0))


def degenerate_count(x: StringLike) -> int:
    """Number of non-solid positions."""
    x = np.asarray(x, dtype=np.uint8)
    return int(np.count_nonzero(x & (x - np.uint8(1))))


def is_conservative(x: StringLike, q: int) -> bool:
    return degenerate_count(x) <= q

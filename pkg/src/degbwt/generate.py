"""Seeded random texts and patterns.

All randomness comes from ``numpy.random.Generator(PCG64(seed))`` so a GenSpec
and its seed fully determine the output.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import InvalidInput

KINDS = ("solid", "degenerate", "conservative")


@dataclass(frozen=True)
class GenSpec:
    n: int
    kind: str = "solid"
    q: int = 0
    fraction: float = 0.1
    seed: int = 0
    sigma: int = 4

    def validate(self):
        if self.n < 1:
            raise InvalidInput("n must be positive")
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if not 1 <= self.sigma <= 8:
            raise InvalidInput("sigma must be in 1..8")
        if self.kind == "conservative" and not 0 <= self.q <= self.n:
            raise InvalidInput(f"q={self.q} must lie in 0..n={self.n}")
        if self.kind == "degenerate" and not 0.0 <= self.fraction <= 1.0:
            raise InvalidInput("fraction must lie in [0, 1]")
        if self.kind != "solid" and self.sigma == 1:
            raise InvalidInput("a one-letter alphabet has no non-solid symbols")


def gen(spec: GenSpec) -> np.ndarray:
    """Random solid, degenerate or conservative text.

    Non-solid letters are drawn uniformly from the masks with two or more
    bits (11 of them for DNA).  ``conservative`` places exactly ``q`` of them
    at distinct uniformly chosen positions; ``degenerate`` makes each position
    non-solid independently with probability ``fraction``.
    """
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    out = (1 << rng.integers(0, spec.sigma, spec.n)).astype(np.uint8)
    if spec.kind == "solid":
        return out
    nonsolid = np.array([c for c in range(1, 1 << spec.sigma) if c & (c - 1)], dtype=np.uint8)
    if spec.kind == "conservative":
        where = rng.choice(spec.n, size=spec.q, replace=False)
    else:
        where = np.flatnonzero(rng.random(spec.n) < spec.fraction)
    out[where] = nonsolid[rng.integers(0, nonsolid.size, where.size)]
    return out


def random_pattern(m: int, seed: int, sigma: int = 4, masks=None) -> np.ndarray:
    """Pattern of ``m`` symbols drawn uniformly from ``masks`` (default: every non-empty subset)."""
    if m < 1:
        raise InvalidInput("pattern length must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    if masks is None:
        masks = np.arange(1, 1 << sigma, dtype=np.uint8)
    masks = np.asarray(masks, dtype=np.uint8)
    return masks[rng.integers(0, masks.size, m)]

"""Benchmark harness comparing the BWT search against scanning matchers.

Two scenarios:

``a``  one solid text, a growing number of random length-``m`` degenerate
       patterns; times are cumulative over the patterns.
``b``  one fixed random length-``m`` degenerate pattern, conservative texts of
       growing length with a fixed fraction of degenerate letters.

DBS query times cover backward search plus locating every occurrence through
the sampled suffix array; index construction is reported separately in
``build_ms``.
"""
from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass, field

import numpy as np

from .baselines import bndm_degenerate, naive_match
from .bwt_index import bwt_build
from .generate import GenSpec, gen, random_pattern
from .search import find_occurrences

CSV_HEADER = ["scenario", "engine", "n", "m", "pattern_count", "q", "build_ms", "query_ms", "occurrences"]
ENGINES = ("dbs", "naive", "bndm")


class BenchError(ValueError):
    pass


@dataclass
class BenchRow:
    scenario: str
    engine: str
    n: int
    m: int
    pattern_count: int
    q: int
    build_ms: float
    query_ms: float
    occurrences: int

    def as_list(self):
        return [self.scenario, self.engine, self.n, self.m, self.pattern_count, self.q,
                f"{self.build_ms:.3f}", f"{self.query_ms:.3f}", self.occurrences]


@dataclass
class BenchConfig:
    scenario: str = "a"
    engines: tuple = ("dbs", "bndm")
    m: int = 8
    n: int = 5_000_000
    pattern_counts: tuple = (1, 10, 100)
    lengths: tuple = (100_000, 300_000, 1_000_000, 3_000_000)
    fraction: float = 0.1
    repeats: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def validate(self):
        bad = [e for e in self.engines if e not in ENGINES]
        if bad:
            raise BenchError(f"unknown engine(s): {', '.join(bad)}; expected {', '.join(ENGINES)}")
        if self.scenario not in ("a", "b"):
            raise BenchError(f"unknown scenario {self.scenario!r}")
        if not self.engines:
            raise BenchError("no engines selected")


def _timed(fn, repeats):
    best, out = float("inf"), None
    for _ in range(max(1, repeats)):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1e3, out


class _Engines:
    """Builds what each engine needs for one text and runs queries against it."""

    def __init__(self, text, engines):
        self.text = text
        self.build_ms = {e: 0.0 for e in engines}
        self.idx = None
        if "dbs" in engines:
            t0 = time.perf_counter()
            self.idx = bwt_build(text)
            self.build_ms["dbs"] = (time.perf_counter() - t0) * 1e3

    def run(self, engine, p):
        if engine == "dbs":
            return find_occurrences(p, self.idx)
        if engine == "bndm":
            return bndm_degenerate(p, self.text)
        return naive_match(p, self.text)


def _check_agreement(counts: dict, where: str):
    if len(set(counts.values())) > 1:
        raise BenchError(f"engines disagree on occurrence counts at {where}: {counts}")


def scenario_a(cfg: BenchConfig) -> list[BenchRow]:
    text = gen(GenSpec(cfg.n, "solid", seed=cfg.seed))
    eng = _Engines(text, cfg.engines)
    count_max = max(cfg.pattern_counts)
    patterns = [random_pattern(cfg.m, seed=cfg.seed * 1_000_003 + k + 1) for k in range(count_max)]
    times = {e: np.zeros(count_max) for e in cfg.engines}
    occ = {e: np.zeros(count_max, dtype=np.int64) for e in cfg.engines}
    for k, p in enumerate(patterns):
        for e in cfg.engines:
            ms, res = _timed(lambda: eng.run(e, p), cfg.repeats)
            times[e][k], occ[e][k] = ms, res.size
        _check_agreement({e: int(occ[e][k]) for e in cfg.engines}, f"pattern {k + 1}")
    rows = []
    for c in sorted(cfg.pattern_counts):
        for e in cfg.engines:
            rows.append(BenchRow("a", e, cfg.n, cfg.m, c, 0, eng.build_ms[e],
                                 float(times[e][:c].sum()), int(occ[e][:c].sum())))
    return rows


def scenario_b(cfg: BenchConfig) -> list[BenchRow]:
    p = random_pattern(cfg.m, seed=cfg.seed + 7)
    rows = []
    for k, n in enumerate(sorted(cfg.lengths)):
        q = int(round(cfg.fraction * n))
        text = gen(GenSpec(n, "conservative", q=q, seed=cfg.seed + 101 * (k + 1)))
        eng = _Engines(text, cfg.engines)
        counts = {}
        for e in cfg.engines:
            ms, res = _timed(lambda: eng.run(e, p), cfg.repeats)
            counts[e] = int(res.size)
            rows.append(BenchRow("b", e, n, cfg.m, 1, q, eng.build_ms[e], ms, counts[e]))
        _check_agreement(counts, f"n={n}")
    return rows


def run(cfg: BenchConfig) -> list[BenchRow]:
    cfg.validate()
    return scenario_a(cfg) if cfg.scenario == "a" else scenario_b(cfg)


def to_csv(rows, fh=None) -> str:
    buf = fh if fh is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_list())
    return buf.getvalue() if fh is None else ""


def write_gnuplot(rows, directory) -> list[str]:
    """One whitespace-separated ``.dat`` file per (scenario, engine): x, query_ms."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for key in sorted({(r.scenario, r.engine) for r in rows}):
        sel = [r for r in rows if (r.scenario, r.engine) == key]
        xname = "pattern_count" if key[0] == "a" else "n"
        path = os.path.join(directory, f"scenario_{key[0]}_{key[1]}.dat")
        with open(path, "w") as fh:
            fh.write(f"# {xname} query_ms occurrences\n")
            for r in sel:
                fh.write(f"{getattr(r, xname)} {r.query_ms:.3f} {r.occurrences}\n")
        paths.append(path)
    return paths

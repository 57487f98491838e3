"""Command-line interface: ``degbwt index|search|gen|bench``.

Exit status: 0 on success (zero matches included), 1 on usage errors,
2 on I/O or format errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bench as benchmod
from .baselines import UnsupportedLength, bndm_degenerate, naive_match
from .bwt_index import (DEFAULT_SAMPLE_RATE, MAGIC, IndexLoadError, bwt_build, inverse_bwt, load,
                        save)
from .core import InvalidInput, format_string, parse
from .fasta import FastaError, format_fasta, read_fasta
from .generate import KINDS, GenSpec, gen
from .search import degenerate_backward_search, find_occurrences


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(s):
    try:
        return tuple(int(float(x)) for x in s.split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="degbwt", description="Degenerate pattern matching with the Burrows-Wheeler transform.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    idx = sub.add_parser("index", help="build or inspect an index file")
    isub = idx.add_subparsers(dest="index_command", required=True, parser_class=_Parser)
    b = isub.add_parser("build", help="index one FASTA record")
    b.add_argument("fasta")
    b.add_argument("-o", "--output", required=True)
    b.add_argument("--record", help="record name to index (default: the first record)")
    b.add_argument("--sample-rate", type=int, default=DEFAULT_SAMPLE_RATE)
    ins = isub.add_parser("inspect", help="print index metadata")
    ins.add_argument("index")
    ins.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="find occurrences of degenerate patterns",
                       description="Positions are 1-based match starts unless --zero-based is given.")
    s.add_argument("target", help="index file or FASTA file")
    s.add_argument("-p", "--pattern", action="append", default=[], help="IUPAC or bracket pattern; repeatable")
    s.add_argument("--patterns-file", help="file with one pattern per line")
    s.add_argument("--engine", choices=benchmod.ENGINES, default="dbs")
    s.add_argument("--record", help="FASTA record to search (default: the first record)")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--json", action="store_true", help="one JSON object per pattern")
    s.add_argument("--zero-based", action="store_true")
    s.add_argument("--jobs", type=int, default=1, help="patterns searched concurrently")

    g = sub.add_parser("gen", help="write a random text as FASTA")
    g.add_argument("--kind", choices=KINDS, default="solid")
    g.add_argument("-n", "--length", type=int, required=True)
    g.add_argument("-q", type=int, default=0, help="non-solid letters (conservative kind)")
    g.add_argument("--fraction", type=float, default=0.1, help="non-solid probability (degenerate kind)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--name", default="random")
    g.add_argument("-o", "--output", help="output path (default: stdout)")

    be = sub.add_parser("bench", help="run a benchmark scenario and print CSV")
    be.add_argument("--scenario", choices=("a", "b"), default="a")
    be.add_argument("--engines", default="dbs,bndm", help="comma-separated subset of dbs,naive,bndm")
    be.add_argument("-m", type=int, default=8)
    be.add_argument("-n", type=int, default=1_000_000, help="text length for scenario a")
    be.add_argument("--counts", type=_int_list, default=(1, 10, 100), help="pattern counts for scenario a")
    be.add_argument("--lengths", type=_int_list, default=(100_000, 300_000, 1_000_000, 3_000_000),
                    help="text lengths for scenario b")
    be.add_argument("--fraction", type=float, default=0.1)
    be.add_argument("--repeats", type=int, default=1)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("-o", "--output", help="CSV path (default: stdout)")
    be.add_argument("--gnuplot-dir")
    return ap


def _pick_record(records, name):
    if name is None:
        return records[0]
    for rec in records:
        if rec[0] == name:
            return rec
    raise UsageError(f"no record named {name!r}")


def _is_index(path):
    with open(path, "rb") as fh:
        return fh.read(4) == MAGIC


def cmd_index_build(args, out):
    records = read_fasta(args.fasta)
    if not records:
        raise FastaError(f"{args.fasta}: no records")
    name, seq = _pick_record(records, args.record)
    if args.sample_rate < 1:
        raise UsageError("--sample-rate must be positive")
    idx = bwt_build(seq, sample_rate=args.sample_rate)
    save(idx, args.output)
    print(f"indexed {name!r}: n={idx.n} -> {args.output}", file=sys.stderr)


def cmd_index_inspect(args, out):
    idx = load(args.index)
    counts = {format_string([c]): int(idx.C[c + 1] - idx.C[c]) for c in idx.symbols}
    info = {"n": idx.n, "sigma": idx.alphabet.sigma, "alphabet": idx.alphabet.letters, "h": idx.h,
            "sample_rate": idx.sample_rate, "samples": int(idx.samples.size), "symbol_counts": counts}
    if args.json:
        out.write(json.dumps(info) + "\n")
    else:
        for k, v in info.items():
            out.write(f"{k}\t{v}\n")


def _load_target(path, record, engine):
    """Returns (index or None, text or None) as needed by ``engine``."""
    if _is_index(path):
        idx = load(path)
        return idx, (None if engine == "dbs" else inverse_bwt(idx.L, idx.h))
    records = read_fasta(path)
    if not records:
        raise FastaError(f"{path}: no records")
    _, seq = _pick_record(records, record)
    return (bwt_build(seq) if engine == "dbs" else None), seq


def cmd_search(args, out):
    patterns = list(args.pattern)
    if args.patterns_file:
        with open(args.patterns_file) as fh:
            patterns += [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not patterns:
        raise UsageError("no patterns given (use -p or --patterns-file)")
    try:
        parsed = [parse(p) for p in patterns]
    except InvalidInput as e:
        raise UsageError(str(e)) from None
    if any(p.size == 0 for p in parsed):
        raise UsageError("empty pattern")
    idx, text = _load_target(args.target, args.record, args.engine)

    def one(p):
        if args.engine == "dbs":
            if args.count_only:
                return degenerate_backward_search(p, idx).n_rows(), None
            pos = find_occurrences(p, idx)
        elif args.engine == "bndm":
            pos = bndm_degenerate(p, text)
        else:
            pos = naive_match(p, text)
        return int(pos.size), pos

    try:
        with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as ex:
            results = list(ex.map(one, parsed))
    except UnsupportedLength as e:
        raise UsageError(str(e)) from None

    shift = 1 if args.zero_based else 0
    multi = len(patterns) > 1
    for pat, (count, pos) in zip(patterns, results):
        if args.json:
            rec = {"pattern": pat, "count": count}
            if not args.count_only:
                rec["positions"] = (pos - shift).tolist()
            out.write(json.dumps(rec) + "\n")
        elif args.count_only:
            out.write(f"{pat}\t{count}\n" if multi else f"{count}\n")
        else:
            if multi:
                out.write(f"# {pat}\n")
            out.write("".join(f"{x}\n" for x in (pos - shift).tolist()))


def cmd_gen(args, out):
    seq = gen(GenSpec(args.length, args.kind, q=args.q, fraction=args.fraction, seed=args.seed))
    text = format_fasta([(args.name, seq)])
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_bench(args, out):
    cfg = benchmod.BenchConfig(
        scenario=args.scenario, engines=tuple(e for e in args.engines.split(",") if e), m=args.m,
        n=args.n, pattern_counts=args.counts, lengths=args.lengths, fraction=args.fraction,
        repeats=args.repeats, seed=args.seed)
    try:
        cfg.validate()
    except benchmod.BenchError as e:
        raise UsageError(str(e)) from None
    rows = benchmod.run(cfg)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            benchmod.to_csv(rows, fh)
    else:
        out.write(benchmod.to_csv(rows))
    if args.gnuplot_dir:
        benchmod.write_gnuplot(rows, args.gnuplot_dir)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    handler = {"search": cmd_search, "gen": cmd_gen, "bench": cmd_bench}.get(args.command)
    if handler is None:
        handler = cmd_index_build if args.index_command == "build" else cmd_index_inspect
    try:
        handler(args, out)
    except UsageError as e:
        print(f"degbwt: error: {e}", file=sys.stderr)
        return 1
    except (OSError, IndexLoadError, InvalidInput) as e:
        print(f"degbwt: error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

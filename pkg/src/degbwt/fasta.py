"""Minimal multi-record FASTA reader/writer for IUPAC nucleotide data."""
from __future__ import annotations

import numpy as np

from .core import IUPAC_ENCODE, InvalidInput, encode_bytes, format_string


class FastaError(InvalidInput):
    pass


def parse_fasta(data: str, source: str = "<string>") -> list[tuple[str, np.ndarray]]:
    records = []
    name, chunks, header_line = None, [], 0

    def flush():
        if name is None:
            return
        seq = np.concatenate(chunks) if chunks else np.empty(0, dtype=np.uint8)
        if seq.size == 0:
            raise FastaError(f"{source}: record {name!r} (line {header_line}) has no sequence")
        records.append((name, seq))

    for lineno, line in enumerate(data.splitlines(), start=1):
        if line.startswith(">"):
            flush()
            name, chunks, header_line = line[1:].strip(), [], lineno
            continue
        if line.startswith(";"):
            continue
        stripped = "".join(line.split())
        if not stripped:
            continue
        if name is None:
            raise FastaError(f"{source}: line {lineno}: sequence data before the first '>' header")
        try:
            chunks.append(encode_bytes(stripped.encode("ascii", "replace")))
        except InvalidInput:
            col, ch = _first_bad(line)
            raise FastaError(
                f"{source}: record {name!r}, line {lineno}, column {col}: invalid character {ch!r}"
            ) from None
    flush()
    return records


def _first_bad(line):
    for col, ch in enumerate(line, start=1):
        if not ch.isspace() and ch.upper() not in IUPAC_ENCODE:
            return col, ch
    return 0, ""


def read_fasta(path) -> list[tuple[str, np.ndarray]]:
    with open(path, encoding="ascii", errors="replace") as fh:
        return parse_fasta(fh.read(), str(path))


def format_fasta(records, width: int = 60) -> str:
    out = []
    for name, seq in records:
        out.append(f">{name}")
        s = format_string(seq)
        out.extend(s[k : k + width] for k in range(0, len(s), width))
    return "\n".join(out) + "\n"


def write_fasta(records, path, width: int = 60) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_fasta(records, width))

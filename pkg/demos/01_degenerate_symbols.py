"""Degenerate symbols as bitmasks.

Run with ``python demos/01_degenerate_symbols.py``.
"""
from degbwt import DNA, decode_iupac, encode_iupac, intersects, is_degenerate_prefix, parse

# Each IUPAC code is a subset of {A, C, G, T}; A, C, G, T are the powers of two.
for code in "ACGTRYSWKMBDHVN":
    mask = encode_iupac(code)
    print(f"{code}  mask={mask:2d}  bits={mask:04b}  bases={DNA.bases(mask)}")

# Two symbols match when their subsets share a base, which is one bitwise AND.
print("R vs C:", intersects(encode_iupac("R"), encode_iupac("C")))
print("R vs G:", intersects(encode_iupac("R"), encode_iupac("G")))

# Strings are uint8 arrays; bracket notation spells out arbitrary subsets.
p = parse("[AG]C")
print("pattern masks:", p.tolist(), "->", "".join(decode_iupac(c) for c in p))
print("is [AG]C a degenerate prefix of ACG?", is_degenerate_prefix(p, parse("ACG")))
print("is T a degenerate prefix of ACG?", is_degenerate_prefix("T", "ACG"))

"""Build an index over a degenerate text, search it, and check against the scanners."""
import numpy as np

from degbwt import (GenSpec, bndm_degenerate, bwt_build, degenerate_backward_search, find_occurrences,
                    format_string, gen, inverse_bwt, naive_match, parse)

t = parse("ACGACG")
idx = bwt_build(t)
print("text     :", format_string(t))
print("L column :", format_string(idx.L), " h =", idx.h)
print("C array  :", idx.C[:9].tolist(), "...")

# The search returns row intervals of the sorted rotation matrix.
H = degenerate_backward_search("[AC][CG]", idx)
print("intervals:", H.pairs())
print("positions:", find_occurrences("[AC][CG]", idx).tolist())

# The BWT is invertible.
print("inverted :", format_string(inverse_bwt(idx.L, idx.h)))

# A larger conservative text: 20 degenerate letters among 50,000.
big = gen(GenSpec(50_000, "conservative", q=20, seed=1))
big_idx = bwt_build(big)
for pat in ["ACGTAC", "NNRYAC", "[AC]G[GT]T"]:
    a = find_occurrences(pat, big_idx)
    assert np.array_equal(a, naive_match(pat, big)) and np.array_equal(a, bndm_degenerate(pat, big))
    print(f"{pat:12s} {a.size:6d} occurrences, first few {a[:5].tolist()}")

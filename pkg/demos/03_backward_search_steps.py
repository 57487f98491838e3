"""Watch the interval set change as the pattern is consumed right to left.

Each step keeps one interval per text symbol that intersects the current
pattern symbol; merging coalesces intervals that touch.
"""
from degbwt import bwt_build, degenerate_backward_search, format_string, parse

t = parse("ACGTRACGTNACGGTACRT")
idx = bwt_build(t)
p = parse("A[CG]NT")

print("text   :", format_string(t))
print("pattern:", format_string(p))
for merged in (False, True):
    print("\nmerge" if merged else "\nno merge")

    def show(k, H):
        print(f"  after p[{k}]={format_string([p[k - 1]])}: {len(H):2d} intervals, {H.n_rows():2d} rows  {H.pairs()}")

    degenerate_backward_search(p, idx, do_merge=merged, on_step=show)

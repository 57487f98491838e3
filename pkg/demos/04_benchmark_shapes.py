"""Small-scale versions of the two benchmark scenarios.

Scenario a times a growing number of length-8 degenerate patterns on one solid
text; scenario b times one pattern on conservative texts of growing length
with 10% degenerate letters.  Use ``degbwt bench`` for full-size runs.
"""
import sys

from degbwt.bench import BenchConfig, run, to_csv

a = run(BenchConfig(scenario="a", n=300_000, pattern_counts=(1, 5, 20), engines=("dbs", "naive", "bndm")))
b = run(BenchConfig(scenario="b", lengths=(30_000, 100_000, 300_000), engines=("dbs", "bndm")))
sys.stdout.write(to_csv(a + b))

ratios = {}
for r in b:
    ratios.setdefault(r.n, {})[r.engine] = r.query_ms
for n, cell in sorted(ratios.items()):
    print(f"n={n:>7}: dbs/bndm time ratio {cell['dbs'] / cell['bndm']:.3f}")

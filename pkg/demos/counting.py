"""Random linear systems: p independent identities need p bosonic antifields.

After the resolution the net Grassmann number equals p, the number of
solution directions.
"""

from antifields import build_random_linear, cohomology, grassmann_number, resolve

print(f"{'n':>2} {'p':>2} {'seed':>4}  H(0,1) H(1,1) added  grassmann")
for seed in range(12):
    n = 1 + seed % 6
    p = seed % (n + 1)
    c = build_random_linear(n, p, seed)
    h0 = cohomology(c, 0, 1)[0].dim_H
    h1 = cohomology(c, 1, 1)[0].dim_H
    out, report = resolve(c)
    print(f"{n:>2} {p:>2} {seed:>4}  {h0:>6} {h1:>6} {len(report.added):>5}  {grassmann_number(out):>9}")

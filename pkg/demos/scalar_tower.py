"""Second-order scalar in 2D, truncated at total order M = 4.

Solutions are fixed by boundary data phi(m,0) and phi(0,n).  The tower of
theta(m), thetabar(n) counts the corner mode twice; chi removes the overlap.
"""

from antifields import build_scalar2d, cohomology, resolve, verify_acyclic

tower = build_scalar2d(4, with_tower=True, with_chi=False)
print("without chi:", verify_acyclic(tower, 3, 1).offending)

fixed, report = resolve(tower)
for r in report.rounds:
    print(f"resolve at level {r.level} adds", [name for name, _ in r.added],
          "for", fixed.table.format(r.identities.combination(fixed, 0)))

with_chi = build_scalar2d(4, with_tower=True)
print("with chi acyclic (n <= 3, d <= 3):", verify_acyclic(with_chi, 3, 3).acyclic)
row, reps = cohomology(with_chi, 0, 1, want_representatives=True)
print(f"H^0 at weight 1 has dimension {row.dim_H}:", ", ".join(with_chi.table.format(p) for p in reps))

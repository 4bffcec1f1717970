"""Maxwell theory in momentum space.

k^mu annihilates the equations for every momentum (the gauge identity).  On
the light cone two more identities appear, one per transverse polarization.
"""

from antifields import cohomology_table, resolve, verify_acyclic
from antifields.exactlinalg import left_kernel_basis, rank
from antifields.models import box_momenta, is_lightlike, lightlike_transverse, maxwell_block, maxwell_operator

for k in [(1, 0, 0, 0), (1, 0, 0, 1), (0, 0, 0, 0)]:
    E = maxwell_operator(k)
    ids = [tuple(int(x) for x in v) for v in left_kernel_basis(E)]
    print(f"k = {k}: rank {rank(E)}, identities {ids}")

print("photon polarizations at k = (1,0,0,1):", lightlike_transverse((1, 0, 0, 1)))

lightlike = [k for k in box_momenta(1) if any(k) and is_lightlike(k)]
print(f"{len(lightlike)} nonzero lightlike momenta in the radius-1 box")
bad = [k for k in box_momenta(1) if any(k) and not verify_acyclic(resolve(maxwell_block(k))[0], 3, 2).acyclic]
print("nonzero momenta whose block is not acyclic:", bad or "none")

# k = 0: every field is a solution and the ghost is never hit by delta.
out, report = resolve(maxwell_block((0, 0, 0, 0)))
print("k = 0 after resolve, added", len(report.added), "generators")
print(cohomology_table(out, 3, 2).to_text())

"""Harmonic oscillator in Fourier modes: spurious cohomology and its cure.

The equation for mode k is (omega^2 - k^2) phi(k) = 0, so the on-shell modes
k = +-omega give identities that a first-order antifield alone cannot see.
"""

from antifields import build_oscillator, cohomology_table, resolve, verify_acyclic

naive = build_oscillator((-4, 4), omega=2)
print("naive complex, modes -4..4, omega = 2")
print(cohomology_table(naive, 2, 2, want_representatives=True).to_text())

fixed, report = resolve(naive)
print("resolve added:", ", ".join(f"{name} ({p.name.lower()})" for name, p in report.added))
for r in report.rounds:
    for i in range(len(r.identities)):
        print(f"  identity at level {r.level}:", fixed.table.format(r.identities.combination(fixed, i)))

check = verify_acyclic(fixed, 3, 4)
print("acyclic for n <= 3, d <= 4:", check.acyclic)
print("H^0 by weight:", check.h0)

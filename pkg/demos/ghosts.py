"""Oscillator with ghosts: phi(+-omega) map to ghosts c(+-omega).

The on-shell modes stop being closed, so nothing but constants survives.
"""

from antifields import build_oscillator, cohomology_table

c = build_oscillator((-4, 4), omega=2, with_ghosts=True)
tab = cohomology_table(c, 3, 4, min_n=-1)
print("nonzero cohomology for -1 <= n <= 3, d <= 4:", tab.nonzero())

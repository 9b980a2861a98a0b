"""
Gate-count scaling
==================

Worst case for the standard expansion is ``l = d**n - 1`` with every digit
equal to ``d - 1``: ``(d - 1) n (n + 1) / 2`` control levels per entangler.
The table compares that with the average over all ``l`` for the three
strategies.
"""
import numpy as np

from phasectx import brute_force_optimal, expansion_cost, greedy_signed_expansion, standard_expansion

print(f"{'d':>2} {'n':>2} {'worst':>6} {'std avg':>8} {'greedy avg':>11} {'opt avg':>8}")
for d in (2, 3, 5):
    for n in (2, 3, 4):
        ls = range(1, d**n + 1)
        worst = expansion_cost(standard_expansion(d**n - 1, d, n))
        std = np.mean([expansion_cost(standard_expansion(l, d, n)) for l in ls])
        grd = np.mean([expansion_cost(greedy_signed_expansion(l, d, n)) for l in ls])
        opt = np.mean([expansion_cost(brute_force_optimal(l, d, n)) for l in ls])
        assert worst == (d - 1) * n * (n + 1) // 2
        print(f"{d:>2} {n:>2} {worst:>6} {std:>8.2f} {grd:>11.2f} {opt:>8.2f}")

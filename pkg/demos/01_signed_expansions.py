"""
Signed base-d expansions
========================

A cascaded entangler CINC(l) flips the target ancilla on the last ``l``
basis states of an n-qudit register. Writing ``l`` as a signed sum of
powers of ``d`` turns it into one multi-controlled increment per term, and
a term ``d**m`` needs ``n - m`` controls. Fewer control levels means fewer
two-qudit-controlled gates after lowering.
"""
from phasectx import (
    CostModel,
    brute_force_optimal,
    expansion_cost,
    greedy_signed_expansion,
    standard_expansion,
)


def show(label, e):
    terms = " ".join(f"{'+' if s > 0 else '-'}{e.d}^{m}" for s, m in e.pairs())
    print(f"  {label:<9} {terms:<32} control levels {expansion_cost(e):>3}"
          f"   ladder gates {expansion_cost(e, CostModel.LADDER_GATES):>3}")


for l, d, n in [(7, 2, 3), (14, 5, 4), (624, 5, 4), (100, 3, 5)]:
    print(f"l={l}, d={d}, n={n}")
    show("standard", standard_expansion(l, d, n))
    show("greedy", greedy_signed_expansion(l, d, n))
    show("optimal", brute_force_optimal(l, d, n))
    print()

# %%
# How often does the balanced recoding already hit the optimum?
d, n = 3, 4
hits = sum(
    expansion_cost(greedy_signed_expansion(l, d, n)) == expansion_cost(brute_force_optimal(l, d, n))
    for l in range(1, d**n + 1)
)
print(f"greedy optimal for {hits}/{d**n} values of l at d={d}, n={n}")

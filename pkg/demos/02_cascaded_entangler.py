"""
From a cascaded entangler to elementary gates
=============================================

Walk the signed expansion of ``l`` from ``d**n - l`` up to ``d**n``; each
step covers an aligned interval, which is exactly a multi-controlled
increment on the top dits. The simulator's permutation oracles confirm the
product equals CINC(l), then each gate is lowered to a ladder of
doubly-controlled increments.
"""
import numpy as np

from phasectx import MultiControlledInc, brute_force_optimal, gate_count_report, lower_multicontrolled, synth_cinc
from phasectx.fileio import render_text
from phasectx.sim import cinc_permutation, clean_ancilla_action, multicontrolled_permutation, oracle_multicontrolled

l, d, n = 14, 5, 4
e = brute_force_optimal(l, d, n)
gates = synth_cinc(l, e)
for g in gates:
    kind = "INC" if g.sign > 0 else "INC^-1"
    print(f"controls {list(g.controls)!s:<14} {kind}")

perm = np.arange(d ** (n + 1))
for g in gates:
    perm = multicontrolled_permutation(g, d)[perm]
print("product equals CINC(14):", np.array_equal(perm, cinc_permutation(d**n - l, d**n, d, n)))

# %%
# Lower the first gate. Four controls need 2*4-3 = 5 doubly-controlled gates
# and two clean ancillas; the controls are first shifted to value 1.
c = lower_multicontrolled(gates[0])
print()
print(render_text(c), end="")
print(gate_count_report(c))

# %%
# Check the lowering on a smaller register where dense simulation is cheap.
g = MultiControlledInc(3, (2, 0, 1), 0, -1)
small = lower_multicontrolled(g)
u, leak = clean_ancilla_action(small, small.ancillas - 1)
print("3-control qutrit gate matches oracle:", np.array_equal(u, oracle_multicontrolled(g, 3)), "leakage", leak)

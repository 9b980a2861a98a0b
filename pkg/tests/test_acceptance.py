"""Exit criteria. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""
import cmath
import itertools

import numpy as np
import pytest

from phasectx.core import (
    Circuit,
    Controlled,
    IncPow,
    Mul,
    Phase,
    QuditParams,
    gate_count_report,
)
from phasectx.expansion import (
    CostModel,
    brute_force_optimal,
    expansion_cost,
    greedy_signed_expansion,
    standard_expansion,
)
from phasectx.fileio import parse_circuit, serialize_circuit
from phasectx.sim import (
    check_diagonal_equiv,
    cinc_permutation,
    circuit_unitary,
    clean_ancilla_action,
    multicontrolled_permutation,
    oracle_multicontrolled,
)
from phasectx.synthesis import (
    DiagonalSpec,
    ExpansionStrategy,
    MultiControlledInc,
    PhaseBlock,
    cancel_adjacent,
    lower_multicontrolled,
    synth_block,
    synth_cinc,
    synth_diagonal,
)

criterion = pytest.mark.criterion


def random_spec(rng, d, n, runs):
    top = d**n
    cuts = sorted(rng.choice(np.arange(1, top), runs - 1, replace=False)) if runs > 1 else []
    lengths = np.diff([0, *cuts, top])
    phases = []
    for _ in lengths:
        while True:
            z = cmath.exp(1j * rng.uniform(-np.pi, np.pi))
            if not phases or abs(z / phases[-1] - 1) > 1e-3:
                break
        phases.append(z)
    return DiagonalSpec(QuditParams(d, n), tuple(zip(phases, map(int, lengths))))


THEOREM_SIZES = [(2, n) for n in range(1, 5)] + [(3, n) for n in range(1, 5)] \
    + [(4, n) for n in range(1, 4)] + [(5, n) for n in range(1, 5)]


@criterion(1, "theorem-level oracle equivalence, standard + greedy, zero tolerance")
@pytest.mark.parametrize("d, n", THEOREM_SIZES)
def test_theorem_oracle_equivalence(d, n):
    size = d ** (n + 1)
    for l in range(1, d**n + 1):
        want = cinc_permutation(d**n - l, d**n, d, n)
        for e in (standard_expansion(l, d, n), greedy_signed_expansion(l, d, n)):
            got = np.arange(size)
            for g in synth_cinc(l, e):
                got = multicontrolled_permutation(g, d)[got]
            assert np.array_equal(got, want), (d, n, l, e.pairs())


@criterion(2, "Example 1 regression: l=7, d=2, n=3")
def test_example_1():
    e = brute_force_optimal(7, 2, 3, CostModel.CONTROL_LEVELS)
    assert e.pairs() == [(-1, 0), (1, 3)]
    assert expansion_cost(e) == 3
    assert expansion_cost(standard_expansion(7, 2, 3)) == 6


@criterion(3, "Example 2 regression: l=14, d=5, n=4")
def test_example_2():
    e = brute_force_optimal(14, 5, 4, CostModel.CONTROL_LEVELS)
    assert e.pairs() == [(-1, 0), (-1, 1), (-1, 1), (1, 2)]
    assert expansion_cost(e) == 12
    assert expansion_cost(standard_expansion(14, 5, 4)) == 22
    gates = synth_cinc(14, e)
    assert [g.controls for g in gates] == [(4, 4, 2, 0), (4, 4, 1), (4, 4, 0), (4, 4)]
    assert [g.sign for g in gates] == [-1, -1, -1, 1]


def _ladder_wires(c):
    return {g.target for g in c.gates if isinstance(g, Controlled)} - {c.n}


@criterion(4, "ladder accounting: 2c-3 doubly-controlled gates, c-2 ancillas restored")
@pytest.mark.parametrize("c", range(3, 9))
@pytest.mark.parametrize("d", [2, 3, 5])
def test_ladder_counts(d, c):
    rng = np.random.default_rng(100 * d + c)
    for sign in (1, -1):
        ctrl = tuple(int(x) for x in rng.integers(0, d, size=c))
        circ = lower_multicontrolled(MultiControlledInc(d, ctrl, 0, sign))
        r = gate_count_report(circ)
        assert r.and2 == 2 * c - 3
        assert r.and1 == 0 and r.and_many == 0
        assert len(_ladder_wires(circ)) == c - 2
        assert circ.ancillas - 1 == c - 2


@criterion(4, "ladder accounting: 2c-3 doubly-controlled gates, c-2 ancillas restored")
@pytest.mark.parametrize("d, c", [(2, 3), (2, 4), (3, 3), (3, 4)])
def test_ladder_simulation(d, c):
    for ctrl in itertools.product(range(d), repeat=c):
        for sign in (1, -1):
            g = MultiControlledInc(d, ctrl, 0, sign)
            circ = lower_multicontrolled(g)
            u, leak = clean_ancilla_action(circ, c - 2)
            assert leak == 0
            assert np.array_equal(u, oracle_multicontrolled(g, d))


E2E_SIZES = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)]


@criterion(5, "end-to-end synthesis of 200 random diagonals, tol 1e-10, leakage 1e-12")
def test_end_to_end_random():
    rng = np.random.default_rng(2024)
    checked = 0
    for i in range(200):
        d, n = E2E_SIZES[i % len(E2E_SIZES)]
        runs = int(rng.integers(1, min(5, d**n) + 1))
        spec = random_spec(rng, d, n, runs)
        for strategy in ExpansionStrategy:
            for cancel in (False, True):
                c = synth_diagonal(spec, strategy, cancel)
                r = check_diagonal_equiv(c, spec, tol=1e-10, leak_tol=1e-12)
                assert r.passed, (d, n, spec.runs, strategy, cancel, r)
                checked += 1
    assert checked == 1200


@criterion(6, "worst-case control levels (d-1) n(n+1)/2 for l = d**n - 1")
@pytest.mark.parametrize("d", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_worst_case(d, n):
    e = standard_expansion(d**n - 1, d, n)
    assert expansion_cost(e) == (d - 1) * n * (n + 1) // 2


@criterion(7, "phase-gate sparsity: r runs give exactly r-1 phase gates")
def test_phase_gate_count():
    rng = np.random.default_rng(77)
    for i in range(60):
        d, n = E2E_SIZES[i % len(E2E_SIZES)] if i % 3 else (2, 4)
        runs = int(rng.integers(1, min(6, d**n) + 1))
        spec = random_spec(rng, d, n, runs)
        for strategy in ExpansionStrategy:
            for cancel in (False, True):
                c = synth_diagonal(spec, strategy, cancel)
                assert sum(isinstance(g, Phase) for g in c.gates) == spec.num_runs - 1
                assert gate_count_report(c).phase == spec.num_runs - 1


@criterion(8, "cancel_adjacent shrinks a shared entangler boundary, unitary unchanged")
@pytest.mark.parametrize("d, n, l", [(2, 4, 2), (3, 3, 4), (5, 2, 5)])
def test_cancel_boundary(d, n, l):
    p = QuditParams(d, n)
    c = synth_block(PhaseBlock(cmath.exp(0.7j), l), p) + synth_block(PhaseBlock(cmath.exp(-1.9j), l), p)
    out = cancel_adjacent(c)
    assert len(out) < len(c)
    assert np.max(np.abs(circuit_unitary(out) - circuit_unitary(c))) <= 1e-12


def _generated_circuits(rng, count):
    out = []
    while len(out) < count:
        d = int(rng.choice([2, 3, 4, 5]))
        n = int(rng.integers(1, 4))
        if len(out) % 2:
            spec = random_spec(rng, d, n, int(rng.integers(1, min(5, d**n) + 1)))
            strategy = list(ExpansionStrategy)[len(out) % 3]
            out.append(synth_diagonal(spec, strategy, bool(rng.integers(2))))
            continue
        a = int(rng.integers(1, 3))
        w = n + a
        gates = []
        for _ in range(int(rng.integers(0, 25))):
            t = int(rng.integers(w))
            kind = int(rng.integers(4))
            if kind == 0:
                gates.append(IncPow(t, int(rng.integers(d))))
            elif kind == 1:
                gates.append(Mul(t))
            elif kind == 2:
                gates.append(Phase(t, rng.uniform(-10, 10), tuple(rng.normal(size=d - 2) * 1e3)))
            else:
                ws = [x for x in range(w) if x != t]
                k = int(rng.integers(1, len(ws) + 1))
                sel = rng.choice(ws, k, replace=False)
                gates.append(Controlled(tuple((int(x), int(rng.integers(d))) for x in sel), t,
                                        int(rng.integers(d))))
        out.append(Circuit(QuditParams(d, n), a, tuple(gates), rng.uniform(-np.pi, np.pi)))
    return out


@criterion(9, "100 circuits round-trip bit-exactly through the circuit file format")
def test_serialization_round_trip():
    rng = np.random.default_rng(9)
    circuits = _generated_circuits(rng, 100)
    assert len(circuits) == 100
    for c in circuits:
        text = serialize_circuit(c)
        back = parse_circuit(text)
        assert back == c
        assert serialize_circuit(back) == text
        for g, h in zip(c.gates, back.gates):
            if isinstance(g, Phase):
                assert g.theta.hex() == h.theta.hex()
                assert [a.hex() for a in g.alpha_thetas] == [a.hex() for a in h.alpha_thetas]
        assert c.global_theta.hex() == back.global_theta.hex()

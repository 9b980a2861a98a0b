import numpy as np
import pytest
from hypothesis import given, strategies as st

from phasectx.core import (
    CapacityError,
    Circuit,
    Controlled,
    DomainError,
    IncPow,
    Mul,
    Phase,
    QuditParams,
)
from phasectx.sim import (
    apply_gate,
    check_diagonal_equiv,
    cinc_permutation,
    circuit_unitary,
    oracle_cinc,
    oracle_cinc_l,
    oracle_multicontrolled,
)
from phasectx.synthesis import DiagonalSpec, MultiControlledInc, synth_cinc
from phasectx.expansion import standard_expansion


def basis(d, w, *dits):
    s = np.zeros(d**w, dtype=complex)
    s[int("".join(map(str, dits)), d) if dits else 0] = 1
    return s


def test_inc_wraps_around():
    for d in (2, 3, 5):
        out = apply_gate(basis(d, 1, d - 1), IncPow(0, 1), d)
        assert np.array_equal(out, basis(d, 1, 0))


def test_mul_fixes_zero_and_negates():
    assert np.array_equal(apply_gate(basis(3, 1, 0), Mul(0), 3), basis(3, 1, 0))
    assert np.array_equal(apply_gate(basis(5, 1, 2), Mul(0), 5), basis(5, 1, 3))


def test_phase_diagonal():
    g = Phase(0, 0.5, (1.0, -2.0))
    u = np.column_stack([apply_gate(basis(4, 1, t), g, 4) for t in range(4)])
    assert np.allclose(u, np.diag(np.exp(1j * np.array([0, 0.5, 1.0, -2.0]))), atol=1e-15)


def test_single_control_on_qubits():
    g = Controlled(((0, 1),), 1, 1)
    assert np.array_equal(apply_gate(basis(2, 2, 1, 0), g, 2), basis(2, 2, 1, 1))
    assert np.array_equal(apply_gate(basis(2, 2, 1, 1), g, 2), basis(2, 2, 1, 0))
    for t in (0, 1):
        assert np.array_equal(apply_gate(basis(2, 2, 0, t), g, 2), basis(2, 2, 0, t))
    # agrees with the oracle for a 1-control INC on n = 1
    u = np.column_stack([apply_gate(np.eye(4)[:, j], g, 2) for j in range(4)])
    assert np.array_equal(u, oracle_multicontrolled(MultiControlledInc(2, (1,), 0, 1), 2))


def test_control_below_target():
    # control wire index larger than the target wire
    g = Controlled(((2, 2),), 0, 1)
    out = apply_gate(basis(3, 3, 1, 0, 2), g, 3)
    assert np.array_equal(out, basis(3, 3, 2, 0, 2))
    out = apply_gate(basis(3, 3, 1, 0, 1), g, 3)
    assert np.array_equal(out, basis(3, 3, 1, 0, 1))


def test_apply_gate_wire_out_of_range():
    with pytest.raises(DomainError):
        apply_gate(basis(2, 2), IncPow(2, 1), 2)


def test_unitary_examples():
    assert np.array_equal(circuit_unitary(Circuit(QuditParams(3, 2))), np.eye(9))
    u = circuit_unitary(Circuit(QuditParams(3, 1), 0, (IncPow(0, 1),)))
    assert np.array_equal(u, np.roll(np.eye(3), 1, axis=0))


def test_unitary_cap():
    with pytest.raises(CapacityError):
        circuit_unitary(Circuit(QuditParams(2, 13)))
    assert circuit_unitary(Circuit(QuditParams(2, 13)), cap=2**13).shape == (2**13, 2**13)


def test_cinc_definition_small():
    # CINC(l=2) on d=2, n=2: increments the target for j in {2, 3}
    u = oracle_cinc_l(2, 2, 2)
    for j in range(4):
        for t in range(2):
            col = u[:, j * 2 + t]
            want = j * 2 + ((t + 1) % 2 if j >= 2 else t)
            assert col[want] == 1 and np.count_nonzero(col) == 1


def test_cinc_identity_and_inverse():
    d, n = 3, 2
    for p in range(10):
        assert np.array_equal(oracle_cinc(p, p, d, n), np.eye(27))
    for p, q in [(0, 9), (2, 7), (8, 1)]:
        assert np.array_equal(oracle_cinc(q, p, d, n), np.linalg.inv(oracle_cinc(p, q, d, n)).real)


def test_cinc_range():
    with pytest.raises(DomainError):
        cinc_permutation(0, 10, 3, 2)


@given(st.sampled_from([(2, 3), (3, 2), (5, 1), (4, 2)]), st.data())
def test_interval_splitting(dn, data):
    d, n = dn
    top = d**n
    p, q, r = (data.draw(st.integers(0, top)) for _ in range(3))
    lhs = oracle_cinc(p, q, d, n)
    rhs = oracle_cinc(p, r, d, n) @ oracle_cinc(r, q, d, n)
    assert np.array_equal(lhs, rhs)


def test_multicontrolled_empty_controls():
    u = oracle_multicontrolled(MultiControlledInc(3, (), 2, -1), 3)
    want = np.kron(np.eye(9), np.roll(np.eye(3), -1, axis=0))
    assert np.array_equal(u, want)


@pytest.mark.parametrize("d, n", [(2, 3), (3, 2), (5, 2)])
def test_multicontrolled_interval_lemmas(d, n):
    for m in range(n + 1):
        for b in range(d ** (n - m)):
            digits = [int(x) for x in np.base_repr(b, d).zfill(n - m)] if n > m else []
            p = b * d**m
            inc = oracle_multicontrolled(MultiControlledInc(d, digits, m, 1), d)
            assert np.array_equal(inc, oracle_cinc(p, p + d**m, d, n))
            # decrement form: interval [p - d**m, p) read from the top end
            top = (b + 1) * d**m
            dec = oracle_multicontrolled(MultiControlledInc(d, digits, m, -1), d)
            assert np.array_equal(dec, oracle_cinc(top, top - d**m, d, n))


def test_phase_free_matrices_are_exact_permutations():
    c = Circuit(QuditParams(3, 2), 1, (IncPow(0, 2), Mul(2), Controlled(((0, 1), (1, 2)), 2, 1)))
    u = circuit_unitary(c)
    assert set(np.unique(u)) <= {0, 1}
    assert np.array_equal(u.sum(axis=0), np.ones(27))


@pytest.mark.parametrize("seed", range(4))
def test_unitarity_and_column_agreement(seed):
    rng = np.random.default_rng(seed)
    d, n, a = 3, 2, 1
    gates = []
    for _ in range(15):
        t = int(rng.integers(3))
        gates.append(rng.choice([
            IncPow(t, int(rng.integers(3))),
            Mul(t),
            Phase(t, rng.uniform(-3, 3), (rng.uniform(-3, 3),)),
            Controlled((((t + 1) % 3, int(rng.integers(3))),), t, 1),
        ]))
    c = Circuit(QuditParams(d, n), a, tuple(gates))
    u = circuit_unitary(c)
    assert np.max(np.abs(u.conj().T @ u - np.eye(27))) <= 1e-10
    psi = rng.normal(size=27) + 1j * rng.normal(size=27)
    psi /= np.linalg.norm(psi)
    out = psi
    for g in c.gates:
        out = apply_gate(out, g, d)
        assert abs(np.linalg.norm(out) - 1) <= 1e-12
    assert np.max(np.abs(out - u @ psi)) <= 1e-12


def test_check_identity():
    spec = DiagonalSpec(QuditParams(2, 2), ((1, 4),))
    r = check_diagonal_equiv(Circuit(QuditParams(2, 2), 1), spec)
    assert r.passed and r.max_deviation == 0 and r.max_leakage == 0


def test_check_flags_bare_entangler():
    # an entangler alone leaves the target excited for j >= 1
    spec = DiagonalSpec(QuditParams(2, 3), ((1, 8),))
    from phasectx.synthesis import entangler_gates
    gates = entangler_gates(7, standard_expansion(7, 2, 3), 3, [4])
    r = check_diagonal_equiv(Circuit(QuditParams(2, 3), 2, tuple(gates)), spec)
    assert not r.passed
    assert r.max_leakage == pytest.approx(1.0)


def test_check_register_mismatch():
    spec = DiagonalSpec(QuditParams(2, 2), ((1, 4),))
    with pytest.raises(DomainError):
        check_diagonal_equiv(Circuit(QuditParams(3, 2), 1), spec)


def test_theorem_matches_dense_matrix_product():
    # dense matrix route, independent of the permutation-array route used elsewhere
    d, n = 3, 2
    for l in range(1, 10):
        u = np.eye(27)
        for g in synth_cinc(l, standard_expansion(l, d, n)):
            u = oracle_multicontrolled(g, d) @ u
        assert np.array_equal(u, oracle_cinc_l(l, d, n))

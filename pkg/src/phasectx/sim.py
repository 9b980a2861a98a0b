"""
Dense exact simulator and definition-level oracles.

States are numpy arrays of length ``d**w``; the basis index is the integer
value of the dit string with wire 0 most significant. A time-ordered gate
list ``[g1, ..., gT]`` has unitary ``U(gT) @ ... @ U(g1)``.

The oracles are built straight from the case definitions of the cascaded
entangler and the multi-controlled increment. They never look at circuits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    CapacityError,
    Circuit,
    Controlled,
    DomainError,
    Gate,
    IncPow,
    Mul,
    Phase,
    dits_to_value,
)

DEFAULT_CAP = 4096


def _apply(psi: np.ndarray, g: Gate, d: int) -> np.ndarray:
    """Apply ``g`` to a tensor of shape ``(d,)*w + batch``."""
    if isinstance(g, Controlled):
        idx = [slice(None)] * psi.ndim
        for w, v in g.controls:
            idx[w] = v
        idx = tuple(idx)
        # axes of the selected block lose the control dimensions
        axis = g.target - sum(1 for w, _ in g.controls if w < g.target)
        out = psi.copy()
        out[idx] = np.roll(psi[idx], g.power, axis=axis)
        return out
    if isinstance(g, IncPow):
        return np.roll(psi, g.power, axis=g.target)
    if isinstance(g, Mul):
        return np.take(psi, (-np.arange(d)) % d, axis=g.target)
    if isinstance(g, Phase):
        diag = np.ones(d, dtype=complex)
        diag[1] = g.phi
        diag[2:] = g.alphas
        shape = [1] * psi.ndim
        shape[g.target] = d
        return psi * diag.reshape(shape)
    raise DomainError(f"unknown gate {g!r}")


def _num_wires(size: int, d: int) -> int:
    w, s = 0, 1
    while s < size:
        s *= d
        w += 1
    if s != size:
        raise DomainError(f"state length {size} is not a power of {d}")
    return w


def apply_gate(state: np.ndarray, g: Gate, d: int) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    w = _num_wires(state.shape[0], d)
    for wire in g.wires:
        if not 0 <= wire < w:
            raise DomainError(f"gate {g} references wire {wire}, state has {w} wires")
    psi = state.reshape((d,) * w + state.shape[1:])
    return _apply(psi, g, d).reshape(state.shape)


def run_circuit(c: Circuit, states: np.ndarray) -> np.ndarray:
    """Evolve one state (1-D) or a batch of column states (2-D)."""
    d, w = c.d, c.num_wires
    states = np.asarray(states, dtype=complex)
    if states.shape[0] != d**w:
        raise DomainError(f"state length {states.shape[0]} does not match {d}**{w}")
    psi = states.reshape((d,) * w + states.shape[1:])
    for g in c.gates:
        psi = _apply(psi, g, d)
    return psi.reshape(states.shape)


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise CapacityError(f"dense simulation of dimension {size} exceeds cap {cap}")


def circuit_unitary(c: Circuit, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Column ``j`` is the circuit applied to basis state ``j``.

    The circuit's global phase is metadata and is not multiplied in.
    """
    size = c.d**c.num_wires
    _check_cap(size, cap)
    return run_circuit(c, np.eye(size, dtype=complex))


def clean_ancilla_action(
    c: Circuit, num_clean: int, cap: int = DEFAULT_CAP
) -> tuple[np.ndarray, float]:
    """Action of ``c`` when its last ``num_clean`` wires start in ``|0>``.

    Returns the matrix on the remaining wires with the clean wires
    projected back onto ``|0>``, and the largest norm any input leaves
    outside that subspace.
    """
    d, w = c.d, c.num_wires
    if not 0 <= num_clean <= w:
        raise DomainError(f"cannot mark {num_clean} of {w} wires clean")
    size = d**w
    _check_cap(size, cap)
    rest = d ** (w - num_clean)
    anc = d**num_clean
    cols = np.zeros((size, rest), dtype=complex)
    cols[np.arange(rest) * anc, np.arange(rest)] = 1
    out = run_circuit(c, cols).reshape(rest, anc, rest)
    leak = np.sqrt(np.sum(np.abs(out[:, 1:, :]) ** 2, axis=(0, 1)))
    return out[:, 0, :], float(leak.max()) if num_clean else 0.0


def permutation_matrix(perm: np.ndarray) -> np.ndarray:
    """Matrix sending basis state ``j`` to ``perm[j]``."""
    size = len(perm)
    u = np.zeros((size, size), dtype=complex)
    u[perm, np.arange(size)] = 1
    return u


# --------------------------------------------------------------------------
# oracles over data register (n wires) + one target wire


def cinc_permutation(p: int, q: int, d: int, n: int) -> np.ndarray:
    """Basis map of CINC(p, q): +1 on the target for ``p <= j < q``,
    -1 for ``q <= j < p``."""
    top = d**n
    if not (0 <= p <= top and 0 <= q <= top):
        raise DomainError(f"CINC parameters ({p}, {q}) outside [0, {top}]")
    j = np.repeat(np.arange(top), d)
    t = np.tile(np.arange(d), top)
    shift = np.where((p <= j) & (j < q), 1, 0) - np.where((q <= j) & (j < p), 1, 0)
    return j * d + (t + shift) % d


def oracle_cinc(p: int, q: int, d: int, n: int) -> np.ndarray:
    return permutation_matrix(cinc_permutation(p, q, d, n))


def oracle_cinc_l(l: int, d: int, n: int) -> np.ndarray:
    """CINC(l): increment the target iff ``j >= d**n - l``."""
    return oracle_cinc(d**n - l, d**n, d, n)


def multicontrolled_permutation(g, d: int) -> np.ndarray:
    """Basis map of a multi-controlled INC**sign whose control digits sit on
    the top ``len(g.controls)`` data wires."""
    n = g.n
    top = d**n
    j = np.repeat(np.arange(top), d)
    t = np.tile(np.arange(d), top)
    c = len(g.controls)
    prefix = j // d ** (n - c)
    b = dits_to_value(g.controls, d)
    fire = prefix == b
    return j * d + (t + np.where(fire, g.sign, 0)) % d


def oracle_multicontrolled(g, d: int) -> np.ndarray:
    return permutation_matrix(multicontrolled_permutation(g, d))


# --------------------------------------------------------------------------
# end-to-end check


@dataclass(frozen=True)
class DiagonalCheck:
    passed: bool
    max_deviation: float
    max_leakage: float
    tol: float
    leak_tol: float

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "max_leakage": self.max_leakage,
            "tol": self.tol,
            "leak_tol": self.leak_tol,
        }


def check_diagonal_equiv(
    c: Circuit,
    spec,
    tol: float = 1e-10,
    leak_tol: float = 1e-12,
    cap: int = DEFAULT_CAP,
) -> DiagonalCheck:
    """Run ``c`` on every ``|j>|0...0>`` and compare with ``spec``'s diagonal.

    Leakage is the norm of the output outside the all-zero ancilla
    subspace. The circuit's global phase multiplies the measured amplitude.
    """
    if c.params != spec.params:
        raise DomainError(f"circuit register {c.params} does not match spec {spec.params}")
    d, n, a = c.d, c.n, c.ancillas
    _check_cap(d**c.num_wires, cap)
    top = d**n
    anc = d**a
    cols = np.zeros((top * anc, top), dtype=complex)
    cols[np.arange(top) * anc, np.arange(top)] = 1
    out = run_circuit(c, cols).reshape(top, anc, top)
    lam = out[np.arange(top), 0, np.arange(top)]
    dev = np.abs(lam * c.global_phase - spec.entries())
    leak = np.sqrt(np.sum(np.abs(out[:, 1:, :]) ** 2, axis=(0, 1)))
    max_dev = float(dev.max())
    max_leak = float(leak.max()) if a else 0.0
    return DiagonalCheck(max_dev <= tol and max_leak <= leak_tol, max_dev, max_leak, tol, leak_tol)

"""
Lowering pipeline for phase-sparse diagonal unitaries.

    diagonal --phase_context--> global phase + blocks (ratio, l)
    block    --synth_cinc-----> multi-controlled INC**(+-1) gates
    gate     --lower_multicontrolled--> single-qudit + 1/2-controlled gates

Each block ``diag(1, ..., 1, ratio, ..., ratio)`` (last ``l`` entries) is
realized as CINC(l), a phase gate on the target ancilla, and CINC(l)
inverted by conjugation with ``M`` on the target.
"""
from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Optional, Sequence

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
    QuditParams,
    controlled,
    value_to_dits,
)
from .expansion import (
    CostModel,
    SignedExpansion,
    brute_force_optimal,
    greedy_signed_expansion,
    standard_expansion,
    validate_expansion,
)

DEFAULT_TOL = 1e-9
UNIT_TOL = 1e-9


class ExpansionStrategy(enum.Enum):
    STANDARD = "standard"
    GREEDY = "greedy"
    BRUTE_FORCE = "brute"


def choose_expansion(
    l: int,
    d: int,
    n: int,
    strategy: ExpansionStrategy = ExpansionStrategy.STANDARD,
    model: CostModel = CostModel.CONTROL_LEVELS,
) -> SignedExpansion:
    if strategy is ExpansionStrategy.STANDARD:
        return standard_expansion(l, d, n)
    if strategy is ExpansionStrategy.GREEDY:
        return greedy_signed_expansion(l, d, n)
    if strategy is ExpansionStrategy.BRUTE_FORCE:
        return brute_force_optimal(l, d, n, model)
    raise DomainError(f"unknown strategy {strategy!r}")


# --------------------------------------------------------------------------
# phase context


def _check_unit(x: complex, what: str) -> None:
    if abs(abs(x) - 1) > UNIT_TOL:
        raise DomainError(f"{what} {x!r} is not unit modulus")


def _same_phase(a: complex, b: complex, tol: float) -> bool:
    return abs(b / a - 1) <= tol


@dataclass(frozen=True)
class DiagonalSpec:
    """Run-length description of a diagonal unitary.

    ``runs`` holds ``(phase, length)`` pairs in basis order; adjacent runs
    must carry distinct phases.
    """

    params: QuditParams
    runs: tuple[tuple[complex, int], ...]
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        runs = tuple((complex(p), int(k)) for p, k in self.runs)
        object.__setattr__(self, "runs", runs)
        if not runs:
            raise DomainError("diagonal needs at least one run")
        for p, k in runs:
            _check_unit(p, "run phase")
            if k < 1:
                raise DomainError(f"run length must be >= 1, got {k}")
        total = sum(k for _, k in runs)
        if total != self.params.size:
            raise DomainError(f"run lengths sum to {total}, expected d**n = {self.params.size}")
        for (a, _), (b, _) in zip(runs, runs[1:]):
            if _same_phase(a, b, self.tol):
                raise DomainError(f"adjacent runs share phase {a!r} within tolerance {self.tol}")

    @classmethod
    def from_entries(cls, entries, d: int, n: int, tol: float = DEFAULT_TOL) -> "DiagonalSpec":
        params = QuditParams(d, n)
        return cls(params, tuple(_compress(entries, params, tol)), tol)

    @property
    def num_runs(self) -> int:
        return len(self.runs)

    def entries(self) -> np.ndarray:
        return np.concatenate([np.full(k, p, dtype=complex) for p, k in self.runs])


def _compress(entries, params: QuditParams, tol: float) -> list[tuple[complex, int]]:
    entries = [complex(x) for x in entries]
    if len(entries) != params.size:
        raise DomainError(f"diagonal has {len(entries)} entries, expected {params.size}")
    runs: list[list] = []
    for x in entries:
        _check_unit(x, "diagonal entry")
        if runs and _same_phase(runs[-1][0], x, tol):
            runs[-1][1] += 1
        else:
            runs.append([x, 1])
    return [(p, k) for p, k in runs]


@dataclass(frozen=True)
class PhaseBlock:
    """``diag(1, ..., 1, ratio, ..., ratio)`` with ``ratio`` on the last ``l`` entries."""

    ratio: complex
    l: int


def blocks_from_runs(runs: Sequence[tuple[complex, int]]) -> tuple[complex, list[PhaseBlock]]:
    phases = [p for p, _ in runs]
    lengths = [k for _, k in runs]
    blocks = []
    for i in range(len(runs) - 1):
        ratio = phases[i + 1] / phases[i]
        blocks.append(PhaseBlock(ratio / abs(ratio), sum(lengths[i + 1 :])))
    return phases[0], blocks


def phase_context(
    diagonal, d: int, n: int, tolerance: float = DEFAULT_TOL
) -> tuple[complex, list[PhaseBlock]]:
    """Global phase and telescoping blocks of a diagonal given entrywise."""
    runs = _compress(diagonal, QuditParams(d, n), tolerance)
    return blocks_from_runs(runs)


# --------------------------------------------------------------------------
# cascaded entangler -> multi-controlled increments


@dataclass(frozen=True)
class MultiControlledInc:
    """INC**sign on the target iff the top ``len(controls)`` data dits equal
    ``controls``. ``m`` counts the trailing uncontrolled data qudits."""

    d: int
    controls: tuple[int, ...]
    m: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(int(x) for x in self.controls))
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.m < 0:
            raise DomainError(f"m must be >= 0, got {self.m}")
        for x in self.controls:
            if not 0 <= x < self.d:
                raise DomainError(f"control value {x} outside [0, {self.d - 1}]")

    @property
    def n(self) -> int:
        return len(self.controls) + self.m

    @property
    def num_controls(self) -> int:
        return len(self.controls)


def synth_cinc(l: int, e: SignedExpansion) -> list[MultiControlledInc]:
    """Split CINC(l) along the expansion into interval gates.

    Walking ``p`` from ``d**n - l`` up to ``d**n``, each term moves it by
    ``s * d**m``; the interval between consecutive values is one
    multi-controlled increment (or decrement) on the top ``n - m`` dits.
    """
    d, n = e.d, e.n
    if not 1 <= l <= d**n:
        raise DomainError(f"l={l} outside [1, {d}**{n}]")
    if not validate_expansion(e, l):
        raise DomainError(f"{e.pairs()} is not a valid signed expansion of {l}")
    out = []
    p = d**n - l
    for t in e.terms:
        step = d**t.exponent
        b, rem = divmod(p, step)
        assert rem == 0
        if t.sign < 0:
            b -= 1
        width = n - t.exponent
        out.append(MultiControlledInc(d, value_to_dits(b, d, width).digits, t.exponent, t.sign))
        p += t.sign * step
    assert p == d**n
    return out


# --------------------------------------------------------------------------
# multi-controlled increment -> elementary gates


def ladder_size(n: int) -> int:
    return max(0, n - 2)


def lower_gates(
    g: MultiControlledInc, target: int, ancilla_pool: Sequence[int]
) -> list[Gate]:
    d = g.d
    c = g.num_controls
    if len(ancilla_pool) < max(0, c - 2):
        raise CapacityError(f"{c} controls need {c - 2} ladder ancillas, got {len(ancilla_pool)}")
    ctrl = list(range(c))
    gates: list[Gate] = []
    if g.sign < 0:
        gates.append(Mul(target))
    pads = [IncPow(w, (1 - v) % d) for w, v in zip(ctrl, g.controls) if (1 - v) % d]
    gates.extend(pads)
    if c <= 2:
        gates.append(controlled([(w, 1) for w in ctrl], target, 1))
    else:
        anc = list(ancilla_pool[: c - 2])
        compute = [Controlled(((ctrl[0], 1), (ctrl[1], 1)), anc[0], 1)]
        for j in range(c - 3):
            compute.append(Controlled(((ctrl[j + 2], 1), (anc[j], 1)), anc[j + 1], 1))
        gates.extend(compute)
        gates.append(Controlled(((ctrl[c - 1], 1), (anc[c - 3], 1)), target, 1))
        gates.extend(x.inverse(d) for x in reversed(compute))
    gates.extend(p.inverse(d) for p in reversed(pads))
    if g.sign < 0:
        gates.append(Mul(target))
    return gates


def lower_multicontrolled(
    g: MultiControlledInc, ancilla_pool: Optional[Sequence[int]] = None
) -> Circuit:
    """Elementary-gate circuit for ``g`` on the standard wire layout.

    Controls sit on data wires ``0 .. c-1``; the target is wire ``n``; the
    ladder ancillas default to ``n+1 ..`` and must start in ``|0>``.
    """
    n = g.n
    params = QuditParams(g.d, n)
    target = n
    if ancilla_pool is None:
        ancilla_pool = list(range(n + 1, n + 1 + max(0, g.num_controls - 2)))
    for w in ancilla_pool:
        if w <= n:
            raise DomainError(f"ladder ancilla {w} overlaps data or target wires")
    gates = lower_gates(g, target, ancilla_pool)
    ancillas = max([target] + list(ancilla_pool)) + 1 - n
    return Circuit(params, ancillas, tuple(gates))


def entangler_gates(
    l: int, e: SignedExpansion, target: int, ancilla_pool: Sequence[int]
) -> list[Gate]:
    gates: list[Gate] = []
    for g in synth_cinc(l, e):
        gates.extend(lower_gates(g, target, ancilla_pool))
    return gates


def synth_block(
    b: PhaseBlock,
    params: QuditParams,
    strategy: ExpansionStrategy = ExpansionStrategy.STANDARD,
    model: CostModel = CostModel.CONTROL_LEVELS,
) -> Circuit:
    """CINC(l), phase gate on the target, then M . CINC(l) . M."""
    d, n = params.d, params.n
    if not 1 <= b.l < d**n:
        raise DomainError(f"block length {b.l} outside [1, {d**n - 1}]")
    _check_unit(b.ratio, "block ratio")
    target = n
    pool = list(range(n + 1, n + 1 + ladder_size(n)))
    e = choose_expansion(b.l, d, n, strategy, model)
    cinc = entangler_gates(b.l, e, target, pool)
    gates = (
        cinc
        + [Phase(target, cmath.phase(b.ratio), (0.0,) * (d - 2))]
        + [Mul(target)]
        + cinc
        + [Mul(target)]
    )
    return Circuit(params, 1 + ladder_size(n), tuple(gates))


def synth_diagonal(
    spec: DiagonalSpec,
    strategy: ExpansionStrategy = ExpansionStrategy.STANDARD,
    cancel: bool = False,
    model: CostModel = CostModel.CONTROL_LEVELS,
) -> Circuit:
    params = spec.params
    phi1, blocks = blocks_from_runs(spec.runs)
    gates: list[Gate] = []
    for b in blocks:
        gates.extend(synth_block(b, params, strategy, model).gates)
    c = Circuit(params, 1 + ladder_size(params.n), tuple(gates), cmath.phase(phi1))
    return cancel_adjacent(c) if cancel else c


# --------------------------------------------------------------------------
# peephole


def cancel_adjacent(c: Circuit) -> Circuit:
    """Drop pairs ``g, g^-1`` with nothing in between that touches their wires.

    Gates on disjoint wires commute, so a pair separated only by such gates
    is adjacent for cancellation purposes. Runs to a fixpoint.
    """
    d = c.d
    gates = list(c.gates)
    changed = True
    while changed:
        changed = False
        out: list[Gate] = []
        for g in gates:
            wires = set(g.wires)
            inv = g.inverse(d)
            hit = None
            for i in range(len(out) - 1, -1, -1):
                h = out[i]
                if wires.isdisjoint(h.wires):
                    continue
                if h == inv:
                    hit = i
                break
            if hit is None:
                out.append(g)
            else:
                del out[hit]
                changed = True
        gates = out
    return c.with_gates(gates)

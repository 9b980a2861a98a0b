"""
Gate IR, circuits and dit-string arithmetic.

Wire layout used throughout the package:

    0 .. n-1        data qudits, wire 0 holds the most significant dit
    n               phase-target ancilla
    n+1 ..          ladder ancillas (clean, start and end in |0>)

Gates are immutable values. Powers of increment gates are normalized
modulo ``d`` when a gate is placed into a :class:`Circuit`.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Sequence, Union

# d**n must fit in a signed 64 bit index (numpy arrays, serialized ints)
MAX_INDEX = 2**63 - 1


class DomainError(ValueError):
    """Input violates an operation's precondition or a type invariant."""


class CapacityError(RuntimeError):
    """Instance is too large for the requested exact computation."""


@dataclass(frozen=True)
class QuditParams:
    d: int
    n: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise DomainError(f"qudit dimension must be an integer >= 2, got {self.d!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"data qudit count must be an integer >= 1, got {self.n!r}")
        if self.d**self.n > MAX_INDEX:
            raise DomainError(f"d**n = {self.d}**{self.n} overflows a 64 bit index")

    @property
    def size(self) -> int:
        """Dimension of the data register, ``d**n``."""
        return self.d**self.n


@dataclass(frozen=True)
class DitString:
    """Base-``d`` digits, most significant first."""

    digits: tuple[int, ...]
    base: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(x) for x in self.digits))
        if self.base < 2:
            raise DomainError(f"base must be >= 2, got {self.base}")
        for x in self.digits:
            if not 0 <= x < self.base:
                raise DomainError(f"digit {x} outside [0, {self.base - 1}]")

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    @property
    def value(self) -> int:
        return dits_to_value(self.digits, self.base)


def value_to_dits(v: int, d: int, width: int) -> DitString:
    """Exactly ``width`` base-``d`` digits of ``v``, most significant first."""
    if width < 0:
        raise DomainError(f"width must be >= 0, got {width}")
    if not 0 <= v < d**width:
        raise DomainError(f"value {v} not representable with {width} base-{d} digits")
    digits = [0] * width
    for pos in range(width - 1, -1, -1):
        v, digits[pos] = divmod(v, d)
    return DitString(tuple(digits), d)


def dits_to_value(digits: Iterable[int], d: int) -> int:
    v = 0
    for x in digits:
        if not 0 <= x < d:
            raise DomainError(f"digit {x} outside [0, {d - 1}]")
        v = v * d + x
    return v


# --------------------------------------------------------------------------
# gates


@dataclass(frozen=True)
class IncPow:
    """|t> -> |t + power mod d> on ``target``."""

    target: int
    power: int = 1

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.target,)

    def inverse(self, d: int) -> "IncPow":
        return IncPow(self.target, (-self.power) % d)


@dataclass(frozen=True)
class Mul:
    """|t> -> |-t mod d> on ``target``. Self-inverse."""

    target: int

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.target,)

    def inverse(self, d: int) -> "Mul":
        return self


@dataclass(frozen=True)
class Phase:
    """diag(1, e^{i theta}, e^{i alpha_2}, ..., e^{i alpha_{d-1}}) on ``target``.

    Angles are stored in radians so that phases have unit modulus by
    construction and serialize without loss.
    """

    target: int
    theta: float
    alpha_thetas: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "alpha_thetas", tuple(float(a) for a in self.alpha_thetas))

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.target,)

    @property
    def phi(self) -> complex:
        return cmath.exp(1j * self.theta)

    @property
    def alphas(self) -> tuple[complex, ...]:
        return tuple(cmath.exp(1j * a) for a in self.alpha_thetas)

    def inverse(self, d: int) -> "Phase":
        return Phase(self.target, -self.theta, tuple(-a for a in self.alpha_thetas))


@dataclass(frozen=True)
class Controlled:
    """INC**power on ``target`` iff every control wire holds its value.

    Build through :func:`controlled`, which turns an empty control list
    into a bare :class:`IncPow`. Controls are kept sorted by wire.
    """

    controls: tuple[tuple[int, int], ...]
    target: int
    power: int = 1

    def __post_init__(self):
        ctrls = tuple(sorted((int(w), int(v)) for w, v in self.controls))
        if not ctrls:
            raise DomainError("Controlled gate needs at least one control; use controlled()")
        object.__setattr__(self, "controls", ctrls)

    @property
    def wires(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.controls) + (self.target,)

    @property
    def num_controls(self) -> int:
        return len(self.controls)

    def inverse(self, d: int) -> "Controlled":
        return Controlled(self.controls, self.target, (-self.power) % d)


Gate = Union[IncPow, Mul, Phase, Controlled]


def controlled(controls: Sequence[tuple[int, int]], target: int, power: int = 1) -> Gate:
    if not controls:
        return IncPow(target, power)
    return Controlled(tuple(controls), target, power)


def _normalize_gate(g: Gate, d: int, num_wires: int) -> Gate:
    wires = g.wires
    if len(set(wires)) != len(wires):
        raise DomainError(f"gate {g} uses a wire twice")
    for w in wires:
        if not 0 <= w < num_wires:
            raise DomainError(f"gate {g} references wire {w}, circuit has {num_wires}")
    if isinstance(g, IncPow):
        return g if 0 <= g.power < d else IncPow(g.target, g.power % d)
    if isinstance(g, Controlled):
        for _, v in g.controls:
            if not 0 <= v < d:
                raise DomainError(f"control value {v} outside [0, {d - 1}]")
        return g if 0 <= g.power < d else Controlled(g.controls, g.target, g.power % d)
    if isinstance(g, Phase):
        if len(g.alpha_thetas) != d - 2:
            raise DomainError(f"phase gate needs {d - 2} higher phases, got {len(g.alpha_thetas)}")
        return g
    if isinstance(g, Mul):
        return g
    raise DomainError(f"unknown gate {g!r}")


@dataclass(frozen=True)
class Circuit:
    """Time-ordered gate list; ``gates[0]`` is applied first.

    ``global_theta`` is the angle of a global phase kept as metadata only;
    it is never turned into a gate.
    """

    params: QuditParams
    ancillas: int = 0
    gates: tuple[Gate, ...] = field(default=())
    global_theta: float = 0.0

    def __post_init__(self):
        if self.ancillas < 0:
            raise DomainError(f"ancilla count must be >= 0, got {self.ancillas}")
        w = self.num_wires
        gates = tuple(_normalize_gate(g, self.params.d, w) for g in self.gates)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "global_theta", float(self.global_theta))

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def num_wires(self) -> int:
        return self.params.n + self.ancillas

    @property
    def global_phase(self) -> complex:
        return cmath.exp(1j * self.global_theta)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.params != self.params:
            raise DomainError("cannot concatenate circuits over different registers")
        return Circuit(
            self.params,
            max(self.ancillas, other.ancillas),
            self.gates + other.gates,
            self.global_theta + other.global_theta,
        )

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return replace(self, gates=tuple(gates))

    def inverse(self) -> "Circuit":
        return circuit_inverse(self)


def circuit_inverse(c: Circuit) -> Circuit:
    d = c.params.d
    return replace(
        c,
        gates=tuple(g.inverse(d) for g in reversed(c.gates)),
        global_theta=-c.global_theta,
    )


# --------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class CountReport:
    single_qudit: int = 0
    phase: int = 0  # subset of single_qudit
    and1: int = 0
    and2: int = 0
    and_many: int = 0  # > 2 controls; only present before lowering
    control_levels: int = 0
    ancillas: int = 0

    def __add__(self, other: "CountReport") -> "CountReport":
        # circuits placed side by side share their ancilla wires
        return CountReport(
            self.single_qudit + other.single_qudit,
            self.phase + other.phase,
            self.and1 + other.and1,
            self.and2 + other.and2,
            self.and_many + other.and_many,
            self.control_levels + other.control_levels,
            max(self.ancillas, other.ancillas),
        )

    @property
    def total(self) -> int:
        return self.single_qudit + self.and1 + self.and2 + self.and_many

    def as_dict(self) -> dict[str, int]:
        return {
            "single_qudit": self.single_qudit,
            "phase": self.phase,
            "and1": self.and1,
            "and2": self.and2,
            "and_many": self.and_many,
            "control_levels": self.control_levels,
            "ancillas": self.ancillas,
            "total": self.total,
        }


def gate_count_report(c: Circuit) -> CountReport:
    single = phase = and1 = and2 = many = levels = 0
    for g in c.gates:
        if isinstance(g, Controlled):
            k = g.num_controls
            levels += k
            if k == 1:
                and1 += 1
            elif k == 2:
                and2 += 1
            else:
                many += 1
        else:
            single += 1
            if isinstance(g, Phase):
                phase += 1
    return CountReport(single, phase, and1, and2, many, levels, c.ancillas)

"""
Signed base-d expansions of the entangler parameter.

An expansion writes ``l = sum(s_i * d**m_i)`` with signs ``s_i = +-1``,
nondecreasing exponents and every suffix sum in ``(0, d**n]``. Each term
becomes one multi-controlled increment with ``n - m_i`` controls, so the
choice of expansion drives the gate count of a cascaded entangler.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .core import CapacityError, DomainError

# brute-force guards
MAX_SEARCH_SIZE = 10**6
DEFAULT_MAX_STANDARD_COST = 100


@dataclass(frozen=True)
class SignedTerm:
    sign: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")
        if self.exponent < 0:
            raise DomainError(f"exponent must be >= 0, got {self.exponent}")


@dataclass(frozen=True)
class SignedExpansion:
    """Terms in application order (lowest exponent first).

    Construction only checks term well-formedness; the ordering and
    partial-sum conditions are checked by :func:`validate_expansion`.
    """

    terms: tuple[SignedTerm, ...]
    d: int
    n: int

    def __post_init__(self):
        terms = tuple(t if isinstance(t, SignedTerm) else SignedTerm(*t) for t in self.terms)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]], d: int, n: int) -> "SignedExpansion":
        return cls(tuple(SignedTerm(s, m) for s, m in pairs), d, n)

    @property
    def value(self) -> int:
        return sum(t.sign * self.d**t.exponent for t in self.terms)

    def pairs(self) -> list[tuple[int, int]]:
        return [(t.sign, t.exponent) for t in self.terms]

    def __len__(self) -> int:
        return len(self.terms)


class CostModel(enum.Enum):
    CONTROL_LEVELS = "control-levels"
    LADDER_GATES = "ladder-gates"
    LEXICOGRAPHIC = "lexicographic"


Cost = Union[int, tuple[int, int]]


def ladder_gates(controls: int) -> int:
    """Two-qudit-controlled gates needed for one term with ``controls`` controls.

    A 1- or 2-control term is a single gate; above that the ladder uses
    ``2c - 3`` doubly-controlled gates.
    """
    if controls <= 0:
        return 0
    if controls <= 2:
        return 1
    return 2 * controls - 3


def _term_cost(controls: int, model: CostModel) -> tuple[int, ...]:
    if model is CostModel.CONTROL_LEVELS:
        return (controls,)
    if model is CostModel.LADDER_GATES:
        return (ladder_gates(controls),)
    return (controls, ladder_gates(controls))


def _add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _scale(a: tuple[int, ...], k: int) -> tuple[int, ...]:
    return tuple(k * x for x in a)


def _check_range(l: int, d: int, n: int) -> None:
    if d < 2 or n < 1:
        raise DomainError(f"need d >= 2 and n >= 1, got d={d}, n={n}")
    if not 1 <= l <= d**n:
        raise DomainError(f"l={l} outside [1, {d}**{n}]")


def validate_expansion(e: SignedExpansion, l: int) -> bool:
    d, n = e.d, e.n
    if not e.terms or l < 1:
        return False
    exps = [t.exponent for t in e.terms]
    if any(m > n for m in exps):
        return False
    if any(a > b for a, b in zip(exps, exps[1:])):
        return False
    top = d**n
    suffix = 0
    for t in reversed(e.terms):
        suffix += t.sign * d**t.exponent
        if not 0 < suffix <= top:
            return False
    return suffix == l


def _cost_tuple(e: SignedExpansion, model: CostModel) -> tuple[int, ...]:
    total = _term_cost(0, model)
    for t in e.terms:
        total = _add(total, _term_cost(e.n - t.exponent, model))
    return total


def expansion_cost(e: SignedExpansion, model: CostModel = CostModel.CONTROL_LEVELS) -> Cost:
    """Control levels, ladder gates, or both (compared lexicographically)."""
    if not validate_expansion(e, e.value):
        raise DomainError(f"invalid signed expansion {e.pairs()}")
    cost = _cost_tuple(e, model)
    return cost if model is CostModel.LEXICOGRAPHIC else cost[0]


def standard_expansion(l: int, d: int, n: int) -> SignedExpansion:
    """Digit ``c`` at position ``j`` becomes ``c`` copies of ``+d**j``."""
    _check_range(l, d, n)
    pairs = []
    j = 0
    while l:
        l, c = divmod(l, d)
        pairs.extend([(1, j)] * c)
        j += 1
    return SignedExpansion.of(pairs, d, n)


def balanced_digits(l: int, d: int) -> list[int]:
    """Balanced base-``d`` recoding, least significant digit first.

    A digit above ``d/2`` is replaced by ``c - d`` with a carry; a digit
    equal to ``d/2`` (even ``d``) is replaced only when the next digit of
    the remaining value is at least ``d/2``. For ``d = 2`` this is the
    non-adjacent form.
    """
    out = []
    r = l
    while r:
        c = r % d
        nxt = (r // d) % d
        if 2 * c > d or (2 * c == d and 2 * nxt >= d):
            c -= d
        out.append(c)
        r = (r - c) // d
    return out


def greedy_signed_expansion(l: int, d: int, n: int) -> SignedExpansion:
    """Balanced recoding of ``l``; falls back to the standard expansion
    whenever the recoding is invalid or costs more control levels."""
    _check_range(l, d, n)
    pairs = []
    for j, c in enumerate(balanced_digits(l, d)):
        s = 1 if c > 0 else -1
        pairs.extend([(s, j)] * abs(c))
    e = SignedExpansion.of(pairs, d, n)
    std = standard_expansion(l, d, n)
    if not validate_expansion(e, l):
        return std
    if _cost_tuple(e, CostModel.CONTROL_LEVELS) > _cost_tuple(std, CostModel.CONTROL_LEVELS):
        return std
    return e


def brute_force_optimal(
    l: int,
    d: int,
    n: int,
    model: CostModel = CostModel.CONTROL_LEVELS,
    h_max: Optional[int] = None,
    max_standard_cost: Optional[int] = DEFAULT_MAX_STANDARD_COST,
) -> SignedExpansion:
    """Minimum-cost valid expansion with at most ``h_max`` terms.

    Terms are chosen from the most significant end, so every prefix of the
    search is a suffix of the final expansion and the partial-sum bound
    prunes immediately. Ties go to fewer terms, then to the lexicographically
    smallest ``(sign, exponent)`` sequence.
    """
    _check_range(l, d, n)
    top = d**n
    if top > MAX_SEARCH_SIZE:
        raise CapacityError(f"brute force limited to d**n <= {MAX_SEARCH_SIZE}, got {top}")
    std = standard_expansion(l, d, n)
    std_levels = _cost_tuple(std, CostModel.CONTROL_LEVELS)[0]
    if max_standard_cost is not None and std_levels > max_standard_cost:
        raise CapacityError(
            f"standard expansion costs {std_levels} control levels, bound is {max_standard_cost}"
        )
    if h_max is None:
        h_max = len(std)
    if h_max < 1:
        raise DomainError(f"h_max must be >= 1, got {h_max}")

    term_cost = [_term_cost(n - m, model) for m in range(n + 1)]
    powers = [d**m for m in range(n + 1)]

    def key(pairs: list[tuple[int, int]]):
        e = SignedExpansion.of(pairs, d, n)
        return (_cost_tuple(e, model), len(pairs), tuple(pairs))

    # seed the bound with known valid expansions inside the term budget
    best = None
    for cand in (std, greedy_signed_expansion(l, d, n)):
        if len(cand) <= h_max:
            k = key(cand.pairs())
            if best is None or k < best:
                best = k

    zero = _term_cost(0, model)
    chosen: list[tuple[int, int]] = []  # most significant first

    def search(suffix: int, max_exp: int, cost: tuple[int, ...]) -> None:
        nonlocal best
        if suffix == l:
            pairs = chosen[::-1]
            k = (cost, len(pairs), tuple(pairs))
            if best is None or k < best:
                best = k
            return
        left = h_max - len(chosen)
        if left == 0:
            return
        resid = abs(l - suffix)
        for m in range(max_exp, -1, -1):
            step = powers[m]
            need = -(-resid // step)
            if need > left:
                break  # smaller exponents need even more terms
            if best is not None and _add(cost, _scale(term_cost[m], need)) > best[0]:
                continue
            for s in (-1, 1):
                nxt = suffix + s * step
                if not 0 < nxt <= top:
                    continue
                chosen.append((s, m))
                search(nxt, m, _add(cost, term_cost[m]))
                chosen.pop()

    search(0, n, zero)
    if best is None:
        raise DomainError(f"no valid expansion of {l} with at most {h_max} terms")
    return SignedExpansion.of(best[2], d, n)

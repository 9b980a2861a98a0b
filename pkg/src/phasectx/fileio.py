"""
JSON file formats for diagonals and circuits.

Angles are radians. Floats are written with Python's shortest round-trip
repr, so ``parse_circuit(serialize_circuit(c)) == c`` holds bit for bit.
"""
from __future__ import annotations

import cmath
import json
from pathlib import Path
from typing import Any, Union

from .core import (
    Circuit,
    Controlled,
    DomainError,
    Gate,
    IncPow,
    Mul,
    Phase,
    QuditParams,
)
from .synthesis import DEFAULT_TOL, DiagonalSpec

CIRCUIT_FORMAT = "phasectx.circuit"
PathLike = Union[str, Path]


def _require(obj: dict, key: str, where: str) -> Any:
    if key not in obj:
        raise DomainError(f"{where}: missing field {key!r}")
    return obj[key]


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DomainError(f"{what} must be an integer, got {x!r}")
    return x


def _float(x: Any, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise DomainError(f"{what} must be a number, got {x!r}")
    return float(x)


# --------------------------------------------------------------------------
# diagonals


def diagonal_from_dict(obj: dict) -> DiagonalSpec:
    d = _int(_require(obj, "d", "diagonal"), "d")
    n = _int(_require(obj, "n", "diagonal"), "n")
    tol = _float(obj.get("tol", DEFAULT_TOL), "tol")
    has_runs, has_entries = "runs" in obj, "entries" in obj
    if has_runs == has_entries:
        raise DomainError("diagonal: give exactly one of 'runs' or 'entries'")
    if has_runs:
        runs = []
        for i, r in enumerate(obj["runs"]):
            theta = _float(_require(r, "theta", f"run {i}"), f"run {i} theta")
            count = _int(_require(r, "count", f"run {i}"), f"run {i} count")
            runs.append((cmath.exp(1j * theta), count))
        return DiagonalSpec(QuditParams(d, n), tuple(runs), tol)
    thetas = [_float(t, "entry") for t in obj["entries"]]
    return DiagonalSpec.from_entries([cmath.exp(1j * t) for t in thetas], d, n, tol)


def diagonal_to_dict(spec: DiagonalSpec) -> dict:
    return {
        "d": spec.params.d,
        "n": spec.params.n,
        "runs": [{"theta": cmath.phase(p), "count": k} for p, k in spec.runs],
    }


def load_diagonal(path: PathLike) -> DiagonalSpec:
    return diagonal_from_dict(load_json(path))


# --------------------------------------------------------------------------
# circuits


def gate_to_dict(g: Gate) -> dict:
    if isinstance(g, IncPow):
        return {"kind": "inc", "target": g.target, "power": g.power}
    if isinstance(g, Mul):
        return {"kind": "mul", "target": g.target}
    if isinstance(g, Phase):
        return {
            "kind": "phase",
            "target": g.target,
            "phi_theta": g.theta,
            "alphas_theta": list(g.alpha_thetas),
        }
    if isinstance(g, Controlled):
        return {
            "kind": "controlled",
            "target": g.target,
            "power": g.power,
            "controls": [{"wire": w, "value": v} for w, v in g.controls],
        }
    raise DomainError(f"cannot serialize {g!r}")


def gate_from_dict(obj: dict, i: int = 0) -> Gate:
    where = f"gate {i}"
    kind = _require(obj, "kind", where)
    target = _int(_require(obj, "target", where), f"{where} target")
    if kind == "inc":
        return IncPow(target, _int(_require(obj, "power", where), f"{where} power"))
    if kind == "mul":
        return Mul(target)
    if kind == "phase":
        theta = _float(_require(obj, "phi_theta", where), f"{where} phi_theta")
        alphas = [_float(a, f"{where} alpha") for a in obj.get("alphas_theta", [])]
        return Phase(target, theta, tuple(alphas))
    if kind == "controlled":
        power = _int(_require(obj, "power", where), f"{where} power")
        ctrls = _require(obj, "controls", where)
        if not ctrls:
            raise DomainError(f"{where}: controlled gate with no controls, write it as 'inc'")
        pairs = tuple(
            (_int(_require(c, "wire", where), "control wire"),
             _int(_require(c, "value", where), "control value"))
            for c in ctrls
        )
        return Controlled(pairs, target, power)
    raise DomainError(f"{where}: unknown gate kind {kind!r}")


def circuit_to_dict(c: Circuit) -> dict:
    return {
        "format": CIRCUIT_FORMAT,
        "d": c.d,
        "wires": {"data": c.n, "ancilla": c.ancillas},
        "global_phase_theta": c.global_theta,
        "gates": [gate_to_dict(g) for g in c.gates],
    }


def circuit_from_dict(obj: dict) -> Circuit:
    d = _int(_require(obj, "d", "circuit"), "d")
    wires = _require(obj, "wires", "circuit")
    n = _int(_require(wires, "data", "wires"), "data wires")
    a = _int(_require(wires, "ancilla", "wires"), "ancilla wires")
    theta = _float(obj.get("global_phase_theta", 0.0), "global_phase_theta")
    gates = tuple(gate_from_dict(g, i) for i, g in enumerate(_require(obj, "gates", "circuit")))
    return Circuit(QuditParams(d, n), a, gates, theta)


def serialize_circuit(c: Circuit) -> str:
    return json.dumps(circuit_to_dict(c), indent=2) + "\n"


def parse_circuit(text: str) -> Circuit:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"circuit file is not valid JSON: {exc}") from None
    return circuit_from_dict(obj)


def save_circuit(c: Circuit, path: PathLike) -> None:
    Path(path).write_text(serialize_circuit(c))


def load_circuit(path: PathLike) -> Circuit:
    return parse_circuit(Path(path).read_text())


def load_json(path: PathLike) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON: {exc}") from None


# --------------------------------------------------------------------------
# text rendering


def render_gate(g: Gate) -> str:
    if isinstance(g, IncPow):
        return f"inc  q{g.target} +{g.power}"
    if isinstance(g, Mul):
        return f"mul  q{g.target}"
    if isinstance(g, Phase):
        alphas = ",".join(repr(a) for a in g.alpha_thetas)
        return f"phase q{g.target} theta={g.theta!r}" + (f" alphas=[{alphas}]" if alphas else "")
    ctrls = " ".join(f"{w}={v}" for w, v in g.controls)
    return f"ctrl {ctrls} -> inc q{g.target} +{g.power}"


def render_text(c: Circuit) -> str:
    head = f"# d={c.d} data={c.n} ancilla={c.ancillas} global_theta={c.global_theta!r}"
    return "\n".join([head] + [render_gate(g) for g in c.gates]) + "\n"

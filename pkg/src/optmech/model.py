"""Scenario data model: allocations, valuations and type-space pieces."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .numerics import INF, ExtRat, ParseError, Rat, render, to_ext, to_rat

Valuation = tuple  # tuple[Rat, ...], indexed by allocation


class ValidationError(ValueError):
    """Raised when a scenario fails validation; ``violations`` lists why."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def valuation(values) -> Valuation:
    return tuple(to_rat(x) for x in values)


@dataclass(frozen=True)
class BoxPiece:
    """Closed box ``lower <= v <= upper``; ``upper`` entries may be INF."""

    lower: tuple
    upper: tuple

    @classmethod
    def make(cls, lower, upper) -> "BoxPiece":
        return cls(tuple(to_rat(x) for x in lower), tuple(to_ext(x) for x in upper))

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def is_finite(self) -> bool:
        return all(u is not INF for u in self.upper)

    def contains(self, v: Valuation) -> bool:
        return all(lo <= x <= up for lo, x, up in zip(self.lower, v, self.upper))

    def problems(self) -> list[str]:
        out = []
        if len(self.upper) != len(self.lower):
            out.append("box lower/upper length mismatch")
        for k, (lo, up) in enumerate(zip(self.lower, self.upper)):
            if lo < 0:
                out.append(f"box lower[{k}] = {render(lo)} is negative")
            if up < lo:
                out.append(f"box coordinate {k} is empty: lower {render(lo)} > upper {render(up)}")
        return out


@dataclass(frozen=True)
class PointSetPiece:
    """A finite set of valuations."""

    points: tuple

    @classmethod
    def make(cls, points) -> "PointSetPiece":
        return cls(tuple(valuation(p) for p in points))

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def contains(self, v: Valuation) -> bool:
        return tuple(v) in self.points

    def problems(self) -> list[str]:
        out = []
        if not self.points:
            return ["point set is empty"]
        if len(set(self.points)) != len(self.points):
            out.append("point set has duplicate points")
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            out.append("point set has points of differing dimension")
        for p in self.points:
            if any(x < 0 for x in p):
                out.append(f"point {fmt_valuation(p)} has a negative value")
        return out


Piece = Union[BoxPiece, PointSetPiece]


def contains(piece: Piece, v: Valuation) -> bool:
    return piece.contains(v)


@dataclass(frozen=True)
class TypeSpace:
    pieces: tuple

    def contains(self, v: Valuation) -> bool:
        return any(p.contains(v) for p in self.pieces)


@dataclass(frozen=True)
class Scenario:
    allocations: tuple   # labels; index order is the tie-breaking order
    agents: tuple
    reported: tuple      # one Valuation per agent
    spaces: tuple        # one TypeSpace per agent

    @property
    def n_alloc(self) -> int:
        return len(self.allocations)

    def agent_index(self, agent) -> int:
        if isinstance(agent, int):
            if not 0 <= agent < len(self.agents):
                raise KeyError(f"agent index {agent} out of range")
            return agent
        try:
            return self.agents.index(agent)
        except ValueError:
            raise KeyError(f"unknown agent {agent!r}") from None


def validate(s: Scenario) -> list[str]:
    """Return the list of invariant violations; empty means the scenario is valid."""
    out: list[str] = []
    m = len(s.allocations)
    if m == 0:
        out.append("no allocations")
    if len(set(s.allocations)) != m:
        out.append("allocation labels are not unique")
    n = len(s.agents)
    if n == 0:
        out.append("no agents")
    if len(s.reported) != n:
        out.append(f"expected {n} reported valuations, got {len(s.reported)}")
    if len(s.spaces) != n:
        out.append(f"expected {n} type spaces, got {len(s.spaces)}")
    for i, name in enumerate(s.agents):
        v = s.reported[i] if i < len(s.reported) else None
        if v is not None:
            if len(v) != m:
                out.append(f"{name}: reported valuation has dimension {len(v)}, expected {m}")
            if any(x < 0 for x in v):
                out.append(f"{name}: reported valuation has a negative value")
        if i >= len(s.spaces):
            continue
        ts = s.spaces[i]
        if not ts.pieces:
            out.append(f"{name}: type space has no pieces")
        dims_ok = True
        for k, piece in enumerate(ts.pieces):
            if piece.dim != m:
                out.append(f"{name}: piece {k} has dimension {piece.dim}, expected {m}")
                dims_ok = False
            out.extend(f"{name}: piece {k}: {msg}" for msg in piece.problems())
        if v is not None and len(v) == m and dims_ok and ts.pieces and not ts.contains(v):
            out.append(f"{name}: reported type not in type space")
    return out


def check(s: Scenario) -> Scenario:
    violations = validate(s)
    if violations:
        raise ValidationError(violations)
    return s


# -- JSON ------------------------------------------------------------------

def _piece_from_json(obj) -> Piece:
    kind = obj.get("kind")
    if kind == "box":
        return BoxPiece.make(obj["lower"], obj["upper"])
    if kind == "points":
        return PointSetPiece.make(obj["points"])
    raise ParseError(f"unknown piece kind {kind!r}")


def scenario_from_dict(data: dict) -> Scenario:
    """Build a Scenario from the JSON object form. Raises ValidationError on malformed input."""
    try:
        allocations = tuple(str(a) for a in data["allocations"])
        agents = tuple(str(a) for a in data["agents"])
        reported = tuple(valuation(v) for v in data["reported"])
        spaces = tuple(
            TypeSpace(tuple(_piece_from_json(p) for p in pieces)) for pieces in data["spaces"]
        )
    except (KeyError, TypeError, AttributeError, ParseError) as exc:
        raise ValidationError([f"malformed scenario: {exc}"]) from exc
    return Scenario(allocations, agents, reported, spaces)


def _num_json(x: ExtRat):
    if x is INF:
        return None
    x = Rat(x)
    return int(x.numerator) if x.denominator == 1 else render(x)


def piece_to_json(p: Piece) -> dict:
    if isinstance(p, BoxPiece):
        return {
            "kind": "box",
            "lower": [_num_json(x) for x in p.lower],
            "upper": [_num_json(x) for x in p.upper],
        }
    return {"kind": "points", "points": [[_num_json(x) for x in pt] for pt in p.points]}


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "allocations": list(s.allocations),
        "agents": list(s.agents),
        "reported": [[_num_json(x) for x in v] for v in s.reported],
        "spaces": [[piece_to_json(p) for p in ts.pieces] for ts in s.spaces],
    }


def load_scenario(path) -> Scenario:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError([f"cannot read scenario {path}: {exc}"]) from exc
    return scenario_from_dict(data)


def fmt_valuation(v: Valuation) -> str:
    return "(" + ", ".join(render(x) for x in v) + ")"

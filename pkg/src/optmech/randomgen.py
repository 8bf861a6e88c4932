"""Seeded random scenarios for property checks and benchmarking."""
from __future__ import annotations

import random

from .model import BoxPiece, PointSetPiece, Scenario, TypeSpace
from .numerics import INF, Rat

DENOMS = (1, 1, 2, 3)


def _rat(rng: random.Random, hi: int = 8) -> Rat:
    d = rng.choice(DENOMS)
    return Rat(rng.randint(0, hi * d), d)


def random_box(rng: random.Random, m: int, allow_inf: bool = True,
               max_width: int = 3) -> BoxPiece:
    lower, upper = [], []
    for _ in range(m):
        if rng.random() < 0.25:
            # pinned coordinate, e.g. a package the agent never bids on
            lo = Rat(0) if rng.random() < 0.7 else _rat(rng)
            lower.append(lo)
            upper.append(lo)
            continue
        lo = _rat(rng)
        lower.append(lo)
        if allow_inf and rng.random() < 0.2:
            upper.append(INF)
        else:
            upper.append(lo + _rat(rng, max_width))
    return BoxPiece(tuple(lower), tuple(upper))


def random_points(rng: random.Random, m: int, k: int) -> PointSetPiece:
    pts = {tuple(_rat(rng) for _ in range(m)) for _ in range(k)}
    return PointSetPiece(tuple(sorted(pts)))


def random_member(rng: random.Random, piece) -> tuple:
    if isinstance(piece, PointSetPiece):
        return rng.choice(piece.points)
    out = []
    for lo, up in zip(piece.lower, piece.upper):
        top = lo + 4 if up is INF else up
        t = Rat(rng.randint(0, 6), 6)
        out.append(lo + t * (top - lo))
    return tuple(out)


def random_space(rng: random.Random, m: int, n_pieces: int, allow_inf: bool = True,
                 allow_points: bool = True, max_width: int = 3) -> TypeSpace:
    pieces = []
    for _ in range(n_pieces):
        if allow_points and rng.random() < 0.2:
            pieces.append(random_points(rng, m, rng.randint(1, 3)))
        else:
            pieces.append(random_box(rng, m, allow_inf, max_width))
    return TypeSpace(tuple(pieces))


def random_scenario(rng: random.Random, m_range=(2, 4), n_range=(1, 3), piece_range=(1, 4),
                    allow_inf: bool = True, allow_points: bool = True,
                    max_width: int = 3) -> Scenario:
    m = rng.randint(*m_range)
    n = rng.randint(*n_range)
    spaces, reported = [], []
    for _ in range(n):
        ts = random_space(rng, m, rng.randint(*piece_range), allow_inf, allow_points, max_width)
        spaces.append(ts)
        reported.append(random_member(rng, rng.choice(ts.pieces)))
    return Scenario(tuple(f"g{k}" for k in range(m)), tuple(f"agent{i}" for i in range(n)),
                    tuple(reported), tuple(spaces))

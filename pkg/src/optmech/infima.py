"""Exact infima of welfare expressions over type-space pieces.

Every kernel works on one piece (a box or a finite point set) and an
externality context ``c``. Restricting to the types whose efficient
allocation is ``a`` gives the efficiency region of ``a``; infima are taken
over the closure of that region, which does not change their value.

For boxes the closed forms rest on one observation: with ``a`` efficient,
raising any coordinate other than the objective's own only tightens the
efficiency constraints, so those coordinates sit at their lower bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import BoxPiece, Piece, PointSetPiece, Valuation
from .numerics import INF, Rat
from .welfare import ExternalityContext, eff_given_ctx, welfare_at


@dataclass(frozen=True)
class InfResult:
    """``value`` is None when the region is empty (infeasible).

    ``attained`` is False when the witness sits on the closure of the region
    but tie-breaking assigns it to a different allocation.
    """

    value: Optional[Rat]
    witness: Optional[Valuation] = None
    attained: bool = True

    @property
    def feasible(self) -> bool:
        return self.value is not None


INFEASIBLE = InfResult(None, None, False)


def _max_or_none(xs):
    xs = list(xs)
    return max(xs) if xs else None


def _box_achievable(p: BoxPiece, a: int, c) -> bool:
    if p.upper[a] is INF:
        return True
    m = len(c)
    top = p.upper[a] + c[a]
    for g in range(m):
        if g == a:
            continue
        rival = p.lower[g] + c[g]
        if rival > top or (rival == top and g < a):
            return False
    return True


def alloc_image(p: Piece, ctx: ExternalityContext) -> frozenset:
    """Allocations that are efficient for at least one type in the piece."""
    if isinstance(p, PointSetPiece):
        return frozenset(eff_given_ctx(v, ctx) for v in p.points)
    return frozenset(a for a in range(len(ctx.c)) if _box_achievable(p, a, ctx.c))


def inf_welfare(p: Piece, ctx: ExternalityContext) -> InfResult:
    if isinstance(p, PointSetPiece):
        best = min(p.points, key=lambda v: welfare_at(v, ctx))
        return InfResult(welfare_at(best, ctx), best, True)
    # welfare is coordinatewise nondecreasing, so the lower corner is the minimizer
    corner = tuple(p.lower)
    return InfResult(welfare_at(corner, ctx), corner, True)


def _enumerate(p: PointSetPiece, a: int, ctx: ExternalityContext, objective) -> InfResult:
    region = [v for v in p.points if eff_given_ctx(v, ctx) == a]
    if not region:
        return INFEASIBLE
    best = min(region, key=objective)
    return InfResult(objective(best), best, True)


def inf_welfare_given_eff(p: Piece, a: int, ctx: ExternalityContext) -> InfResult:
    """Infimum of welfare over the types in ``p`` whose efficient allocation is ``a``."""
    c = ctx.c
    if isinstance(p, PointSetPiece):
        return _enumerate(p, a, ctx, lambda v: v[a] + c[a])
    if not _box_achievable(p, a, c):
        return INFEASIBLE
    rival = _max_or_none(p.lower[g] + c[g] for g in range(len(c)) if g != a)
    x = p.lower[a] if rival is None else max(p.lower[a], rival - c[a])
    witness = tuple(x if g == a else p.lower[g] for g in range(len(c)))
    return InfResult(x + c[a], witness, eff_given_ctx(witness, ctx) == a)


def inf_diff_given_eff(p: Piece, a: int, b: int, ctx: ExternalityContext) -> InfResult:
    """Infimum of ``(v[a] + c[a]) - (v[b] + c[b])`` over the types in ``p`` with ``a`` efficient.

    On that region welfare equals ``v[a] + c[a]``, so this is the smallest
    welfare loss from forcing allocation ``b`` instead.
    """
    if a == b:
        raise ValueError("inf_diff_given_eff needs two distinct allocations")
    c = ctx.c
    if isinstance(p, PointSetPiece):
        return _enumerate(p, a, ctx, lambda v: v[a] + c[a] - v[b] - c[b])
    if not _box_achievable(p, a, c):
        return INFEASIBLE
    lo, up = p.lower, p.upper
    bounds = [lo[a], lo[b] + c[b] - c[a]]
    rest = _max_or_none(lo[g] + c[g] for g in range(len(c)) if g not in (a, b))
    if rest is not None:
        bounds.append(rest - c[a])
    x = max(bounds)
    if up[a] is not INF and x > up[a]:
        return INFEASIBLE
    # v[b] as large as the efficiency of a (and the box) allows
    vb_cap = x + c[a] - c[b]
    vb = vb_cap if up[b] is INF else min(up[b], vb_cap)
    witness = tuple(x if g == a else vb if g == b else lo[g] for g in range(len(c)))
    value = x + c[a] - vb - c[b]
    return InfResult(value, witness, eff_given_ctx(witness, ctx) == a)


def approach_points(p: Piece, a: int, witness: Valuation, ctx: ExternalityContext,
                    eps: Rat) -> list:
    """Types in ``p`` near ``witness`` where ``a`` is efficient.

    Used when an infimum is not attained: the returned point lies within
    ``eps`` per coordinate of the witness, so the objective moves by at most
    ``2 * eps``. Returns an empty list when no such nudge exists.
    """
    if isinstance(p, PointSetPiece):
        return []
    c = ctx.c
    v = list(witness)
    if p.upper[a] is INF or v[a] + eps <= p.upper[a]:
        v[a] += eps
    else:
        v[a] = p.upper[a]
    for g in range(len(v)):
        if g != a and v[g] + c[g] >= v[a] + c[a]:
            v[g] = max(p.lower[g], v[a] + c[a] - c[g] - eps)
    v = tuple(v)
    if p.contains(v) and eff_given_ctx(v, ctx) == a:
        return [v]
    return []

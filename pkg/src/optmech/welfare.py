"""Efficient allocation, welfare, and the externality each agent faces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import Valuation
from .numerics import Rat


@dataclass(frozen=True)
class ExternalityContext:
    """``c[g]`` is the total value of every agent other than ``agent`` at allocation ``g``."""

    agent: int
    c: tuple

    def __len__(self):
        return len(self.c)


def argmax_first(totals: Sequence) -> int:
    """Index of the largest entry; ties go to the lowest index."""
    best = 0
    for k in range(1, len(totals)):
        if totals[k] > totals[best]:
            best = k
    return best


def eff_alloc(profile: Sequence[Valuation]) -> int:
    m = len(profile[0])
    totals = [sum((v[g] for v in profile), Rat(0)) for g in range(m)]
    return argmax_first(totals)


def externality_ctx(profile: Sequence[Valuation], i: int) -> ExternalityContext:
    m = len(profile[i])
    c = tuple(
        sum((v[g] for j, v in enumerate(profile) if j != i), Rat(0)) for g in range(m)
    )
    return ExternalityContext(i, c)


def eff_given_ctx(v: Valuation, ctx: ExternalityContext) -> int:
    """Efficient allocation of the profile (v, v_-i) seen through i's context."""
    return argmax_first([x + cg for x, cg in zip(v, ctx.c)])


def welfare_at(v: Valuation, ctx: ExternalityContext) -> Rat:
    return max(x + cg for x, cg in zip(v, ctx.c))

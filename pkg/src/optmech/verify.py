"""Brute-force checks of incentive compatibility, individual rationality,
payment dominance and agreement between the two optimal characterizations.

Type spaces are discretized to a grid (rays truncated at ``lower + bound``)
and the exact infimum witnesses from ``infima`` are injected, so binding
constraints are checked at the points where they bind rather than only up
to grid resolution.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import InconsistencyError
from .infima import (alloc_image, approach_points, inf_diff_given_eff, inf_welfare,
                     inf_welfare_given_eff)
from .mechanisms import (MechanismResult, alloc_pricer, comp_pricer, solve, vcg_pricer,
                         wt_pricer)
from .model import Piece, PointSetPiece, Scenario, TypeSpace, fmt_valuation
from .numerics import INF, Rat, render, to_rat
from .welfare import ExternalityContext, eff_given_ctx, welfare_at

DEFAULT_BOUND = Rat(10)
DEFAULT_CAP = 200_000
APPROACH_EPS = Rat(1, 1000)

Pricer = Callable[[tuple], tuple]  # report -> (allocation, payment)


class SampleCapError(ValueError):
    pass


@dataclass
class SampleSet:
    samples: list
    grid_step: Rat
    bound: Rat

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def add(self, points) -> None:
        seen = set(self.samples)
        for p in points:
            if p not in seen:
                self.samples.append(p)
                seen.add(p)


def _axis(lo: Rat, up, step: Rat, bound: Rat) -> list:
    top = lo + bound if up is INF else min(up, lo + bound)
    n = int((top - lo) // step)
    return [lo + k * step for k in range(n + 1)]


def enumerate_types(ts: TypeSpace, grid_step, bound=DEFAULT_BOUND,
                    cap: int = DEFAULT_CAP) -> SampleSet:
    step, bound = to_rat(grid_step), to_rat(bound)
    if step <= 0:
        raise ValueError("grid step must be positive")
    out = SampleSet([], step, bound)
    for piece in ts.pieces:
        if isinstance(piece, PointSetPiece):
            out.add(piece.points)
            continue
        axes = [_axis(lo, up, step, bound) for lo, up in zip(piece.lower, piece.upper)]
        count = 1
        for ax in axes:
            count *= len(ax)
        if count + len(out) > cap:
            raise SampleCapError(
                f"grid would hold more than {cap} types; use a coarser --grid-step or smaller --bound")
        out.add(itertools.product(*axes))
    return out


def witness_points(ts: TypeSpace, ctx: ExternalityContext,
                   eps: Rat = APPROACH_EPS) -> list:
    """Every infimum witness of every piece, plus interior approach points
    for the ones that tie-breaking excludes from their region."""
    pts = []
    m = len(ctx.c)
    for p in ts.pieces:
        pts.append(inf_welfare(p, ctx).witness)
        for a in sorted(alloc_image(p, ctx)):
            results = [inf_welfare_given_eff(p, a, ctx)]
            results += [inf_diff_given_eff(p, a, b, ctx) for b in range(m) if b != a]
            for r in results:
                if not r.feasible:
                    continue
                pts.append(r.witness)
                if not r.attained:
                    pts.extend(approach_points(p, a, r.witness, ctx, eps))
    return [v for v in pts if ts.contains(v)]


def sample_agent(ts: TypeSpace, ctx: ExternalityContext, grid_step, bound=DEFAULT_BOUND,
                 cap: int = DEFAULT_CAP) -> SampleSet:
    samples = enumerate_types(ts, grid_step, bound, cap)
    samples.add(witness_points(ts, ctx))
    return samples


@dataclass(frozen=True)
class Violation:
    kind: str                  # "ic" | "ir" | "dominance" | "equivalence"
    agent: str
    mechanism: str
    true_type: Optional[tuple] = None
    report: Optional[tuple] = None
    truthful_utility: Optional[Rat] = None
    deviation_utility: Optional[Rat] = None
    detail: str = ""

    def describe(self) -> str:
        if self.kind == "ic":
            gap = self.deviation_utility - self.truthful_utility
            return (f"IC  {self.agent} [{self.mechanism}]: type {fmt_valuation(self.true_type)} "
                    f"gains {render(gap)} by reporting {fmt_valuation(self.report)} "
                    f"(utility {render(self.truthful_utility)} -> {render(self.deviation_utility)})")
        if self.kind == "ir":
            return (f"IR  {self.agent} [{self.mechanism}]: type {fmt_valuation(self.true_type)} "
                    f"has utility {render(self.truthful_utility)}")
        return f"{self.kind.upper()} {self.agent} [{self.mechanism}]: {self.detail}"

    def sort_key(self):
        return (self.kind, self.agent, self.mechanism, self.true_type or (), self.report or ())


def check_ic(pricer: Pricer, samples, agent: str = "", mechanism: str = "") -> list:
    """Every (true type, report) pair over the samples, exactly.

    A report only matters through the (allocation, payment) it produces, so
    each true type is tested against the cheapest report per allocation;
    that is the most profitable deviation among all sample reports.
    """
    priced = [(v, *pricer(v)) for v in samples]
    menu: dict = {}
    for v, a, p in priced:
        if a not in menu or p < menu[a][1]:
            menu[a] = (v, p)
    out = []
    for u, a, p in priced:
        truthful = u[a] - p
        worst = None
        for b in sorted(menu):
            r, q = menu[b]
            dev = u[b] - q
            if dev > truthful and (worst is None or dev > worst[1]):
                worst = (r, dev)
        if worst is not None:
            out.append(Violation("ic", agent, mechanism, u, worst[0], truthful, worst[1]))
    return out


def check_ir(pricer: Pricer, samples, agent: str = "", mechanism: str = "") -> list:
    out = []
    for u in samples:
        a, p = pricer(u)
        if u[a] - p < 0:
            out.append(Violation("ir", agent, mechanism, u, None, u[a] - p))
    return out


def check_dominance(result: MechanismResult) -> list:
    out = []
    for ap in result.per_agent:
        if not ap.vcg <= ap.wt <= ap.opt_alloc:
            out.append(Violation("dominance", ap.name, "vcg<=wt<=opt", detail=(
                f"vcg={render(ap.vcg)} wt={render(ap.wt)} opt={render(ap.opt_alloc)}")))
    return out


def check_equivalence(result: MechanismResult) -> list:
    return [Violation("equivalence", ap.name, "opt", detail=(
                f"allocation-wise {render(ap.opt_alloc)} != component-wise {render(ap.opt_comp)}"))
            for ap in result.per_agent if ap.opt_alloc != ap.opt_comp]


def oracle_infimum(piece: Piece, ctx: ExternalityContext, samples, alloc: Optional[int] = None,
                   versus: Optional[int] = None):
    """Minimum over the samples lying in ``piece`` (and, if ``alloc`` is
    given, with efficient allocation ``alloc``) of welfare, or of the welfare
    loss from allocation ``versus`` when that is given. None when no sample
    qualifies."""
    best = None
    for v in samples:
        if not piece.contains(v):
            continue
        if alloc is not None and eff_given_ctx(v, ctx) != alloc:
            continue
        val = welfare_at(v, ctx)
        if versus is not None:
            val -= v[versus] + ctx.c[versus]
        if best is None or val < best:
            best = val
    return best


@dataclass
class VerifyReport:
    ic_violations: list = field(default_factory=list)
    ir_violations: list = field(default_factory=list)
    dominance_violations: list = field(default_factory=list)
    equivalence_violations: list = field(default_factory=list)
    samples_per_agent: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not (self.ic_violations or self.ir_violations
                    or self.dominance_violations or self.equivalence_violations)

    def all_violations(self) -> list:
        return (self.ic_violations + self.ir_violations
                + self.dominance_violations + self.equivalence_violations)

    def sort(self) -> None:
        for lst in (self.ic_violations, self.ir_violations,
                    self.dominance_violations, self.equivalence_violations):
            lst.sort(key=Violation.sort_key)


@dataclass(frozen=True)
class Mutant:
    """Raise one optimal price level; the verifier must then find a violation."""

    agent: int
    kind: str       # "allocation" | "component"
    key: int        # allocation index or component id
    delta: Rat


def agent_pricers(ap, ts: TypeSpace, mutant: Optional[Mutant] = None) -> dict:
    h_alloc, h_comp = dict(ap.h_alloc), dict(ap.h_comp)
    if mutant is not None and mutant.agent == ap.agent:
        target = h_alloc if mutant.kind == "allocation" else h_comp
        if mutant.key not in target:
            raise KeyError(f"no {mutant.kind} vertex {mutant.key} for agent {ap.name}")
        target[mutant.key] += mutant.delta
    return {
        "opt-allocation": alloc_pricer(h_alloc, ap.ctx),
        "opt-component": comp_pricer(h_comp, ap.components, ap.ctx),
        "wt": wt_pricer(ts, ap.ctx),
        "vcg": vcg_pricer(ap.ctx),
    }


def verify(s: Scenario, grid_step=Rat(1, 2), bound=DEFAULT_BOUND,
           mutant: Optional[Mutant] = None, cap: int = DEFAULT_CAP,
           mechanisms: Optional[Sequence[str]] = None) -> VerifyReport:
    report = VerifyReport()
    try:
        result = solve(s)
    except InconsistencyError as exc:
        report.equivalence_violations.append(Violation("equivalence", "*", "opt", detail=str(exc)))
        return report
    report.dominance_violations += check_dominance(result)
    report.equivalence_violations += check_equivalence(result)
    for ap in result.per_agent:
        ts = s.spaces[ap.agent]
        samples = sample_agent(ts, ap.ctx, grid_step, bound, cap)
        report.samples_per_agent[ap.name] = len(samples)
        for name, pricer in agent_pricers(ap, ts, mutant).items():
            if mechanisms is not None and name not in mechanisms:
                continue
            report.ic_violations += check_ic(pricer, samples, ap.name, name)
            report.ir_violations += check_ir(pricer, samples, ap.name, name)
    report.sort()
    return report

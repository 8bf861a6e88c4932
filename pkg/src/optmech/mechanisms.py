"""Groves-style pricing rules: VCG, weakest type, and the revenue-optimal rule.

Every rule charges agent ``i`` some level ``h`` minus the others' value at
the efficient allocation. VCG uses the welfare of the others alone, weakest
type (WT) uses the lowest welfare over ``i``'s type space, and the optimal
rule lets ``h`` depend on the efficient allocation (or on the connected
component of the report), with levels given by shortest paths.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .components import Component, component_of, connected_components
from .errors import InconsistencyError
from .graphs import (PriceGraph, ShortestPaths, build_allocation_graph,
                     build_component_graph, shortest_paths)
from .infima import inf_welfare
from .model import Scenario, TypeSpace, Valuation, check
from .numerics import Rat
from .welfare import ExternalityContext, eff_alloc, eff_given_ctx, externality_ctx

MECHANISMS = ("vcg", "wt", "opt")


def vcg_payment(i: int, profile: Sequence[Valuation]) -> Rat:
    ctx = externality_ctx(profile, i)
    a = eff_alloc(profile)
    return max(ctx.c) - ctx.c[a]


def wt_level(ts: TypeSpace, ctx: ExternalityContext) -> Rat:
    """Lowest welfare over the whole type space."""
    return min(inf_welfare(p, ctx).value for p in ts.pieces)


def wt_payment(i: int, profile: Sequence[Valuation], ts: TypeSpace) -> Rat:
    ctx = externality_ctx(profile, i)
    return wt_level(ts, ctx) - ctx.c[eff_alloc(profile)]


def opt_alloc_levels(ts: TypeSpace, ctx: ExternalityContext, labels=None):
    g = build_allocation_graph(ts, ctx, labels)
    sp = shortest_paths(g)
    return g, sp, {g.keys[k]: sp.h[k] for k in range(g.n)}


def opt_comp_levels(ts: TypeSpace, ctx: ExternalityContext):
    comps = connected_components(ts)
    g = build_component_graph(comps, ctx)
    sp = shortest_paths(g)
    return comps, g, sp, {g.keys[k]: sp.h[k] for k in range(g.n)}


def opt_alloc_payment(i: int, profile: Sequence[Valuation], ts: TypeSpace):
    """Optimal payment via the allocation graph. Returns ``(payment, h by allocation)``."""
    ctx = externality_ctx(profile, i)
    a = eff_alloc(profile)
    _, _, h = opt_alloc_levels(ts, ctx)
    if a not in h:
        raise InconsistencyError(f"efficient allocation {a} has no vertex in the allocation graph")
    return h[a] - ctx.c[a], h


def opt_comp_payment(i: int, profile: Sequence[Valuation], ts: TypeSpace):
    """Optimal payment via the component graph. Returns ``(payment, h by component id)``."""
    ctx = externality_ctx(profile, i)
    a = eff_alloc(profile)
    comps, _, _, h = opt_comp_levels(ts, ctx)
    comp = component_of(comps, profile[i])
    return h[comp.id] - ctx.c[a], h


@dataclass
class AgentPricing:
    agent: int
    name: str
    value: Rat          # agent's reported value for the efficient allocation
    vcg: Rat
    wt: Rat
    opt_alloc: Rat
    opt_comp: Rat
    h_alloc: dict
    h_comp: dict
    wt_level: Rat
    ctx: ExternalityContext
    component: int
    alloc_graph: PriceGraph = field(repr=False)
    alloc_paths: ShortestPaths = field(repr=False)
    comp_graph: PriceGraph = field(repr=False)
    comp_paths: ShortestPaths = field(repr=False)
    components: list = field(repr=False)

    @property
    def opt(self) -> Rat:
        return self.opt_alloc

    def payment(self, mechanism: str) -> Rat:
        return {"vcg": self.vcg, "wt": self.wt, "opt": self.opt_alloc}[mechanism]


@dataclass
class MechanismResult:
    scenario: Scenario = field(repr=False)
    efficient_allocation: int
    per_agent: list
    revenue: dict

    @property
    def allocation_label(self) -> str:
        return self.scenario.allocations[self.efficient_allocation]


def price_agent(s: Scenario, i: int) -> AgentPricing:
    profile = s.reported
    ts = s.spaces[i]
    ctx = externality_ctx(profile, i)
    a = eff_alloc(profile)
    ga, spa, h_alloc = opt_alloc_levels(ts, ctx, s.allocations)
    comps, gc, spc, h_comp = opt_comp_levels(ts, ctx)
    if a not in h_alloc:
        raise InconsistencyError(
            f"{s.agents[i]}: efficient allocation {s.allocations[a]} missing from allocation graph")
    comp = component_of(comps, profile[i])
    level = wt_level(ts, ctx)
    pricing = AgentPricing(
        agent=i, name=s.agents[i], value=profile[i][a],
        vcg=max(ctx.c) - ctx.c[a],
        wt=level - ctx.c[a],
        opt_alloc=h_alloc[a] - ctx.c[a],
        opt_comp=h_comp[comp.id] - ctx.c[a],
        h_alloc=h_alloc, h_comp=h_comp, wt_level=level, ctx=ctx, component=comp.id,
        alloc_graph=ga, alloc_paths=spa, comp_graph=gc, comp_paths=spc, components=comps,
    )
    if pricing.opt_alloc != pricing.opt_comp:
        raise InconsistencyError(
            f"{s.agents[i]}: allocation-wise payment {pricing.opt_alloc} != "
            f"component-wise payment {pricing.opt_comp}")
    return pricing


def solve(s: Scenario, agents: Optional[Sequence[int]] = None) -> MechanismResult:
    check(s)
    idx = range(len(s.agents)) if agents is None else agents
    per_agent = [price_agent(s, i) for i in idx]
    revenue = {m: sum((p.payment(m) for p in per_agent), Rat(0)) for m in MECHANISMS}
    return MechanismResult(s, eff_alloc(s.reported), per_agent, revenue)


# -- pricers: report -> (allocation, payment), used by the verifier ---------

def vcg_pricer(ctx: ExternalityContext):
    base = max(ctx.c)

    def price(r):
        a = eff_given_ctx(r, ctx)
        return a, base - ctx.c[a]
    return price


def wt_pricer(ts: TypeSpace, ctx: ExternalityContext):
    level = wt_level(ts, ctx)

    def price(r):
        a = eff_given_ctx(r, ctx)
        return a, level - ctx.c[a]
    return price


def alloc_pricer(h: dict, ctx: ExternalityContext):
    """Allocation-wise Groves rule with levels ``h`` keyed by allocation."""

    def price(r):
        a = eff_given_ctx(r, ctx)
        if a not in h:
            raise InconsistencyError(f"no price level for allocation {a}")
        return a, h[a] - ctx.c[a]
    return price


def comp_pricer(h: dict, comps: Sequence[Component], ctx: ExternalityContext):
    """Component-wise Groves rule with levels ``h`` keyed by component id."""

    def price(r):
        a = eff_given_ctx(r, ctx)
        return a, h[component_of(comps, r).id] - ctx.c[a]
    return price

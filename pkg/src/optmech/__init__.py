"""Revenue-optimal efficient, IC and IR mechanisms for general type spaces.

Computes VCG, weakest-type and optimal Groves-style payments, the latter
through shortest paths on an allocation graph or a component graph.
"""
from .components import Component, component_of, connected_components
from .errors import InconsistencyError, MembershipError
from .graphs import (PriceGraph, ShortestPaths, build_allocation_graph, build_component_graph,
                     enumerate_paths_oracle, shortest_paths, to_dot)
from .infima import (InfResult, alloc_image, inf_diff_given_eff, inf_welfare,
                     inf_welfare_given_eff)
from .mechanisms import (AgentPricing, MechanismResult, opt_alloc_payment, opt_comp_payment,
                         solve, vcg_payment, wt_payment)
from .model import (BoxPiece, PointSetPiece, Scenario, TypeSpace, ValidationError, contains,
                    load_scenario, scenario_from_dict, validate)
from .numerics import INF, Rat, parse, render, to_rat
from .welfare import ExternalityContext, eff_alloc, externality_ctx, welfare_at

__version__ = "0.1.0"

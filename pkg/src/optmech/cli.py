"""Command-line interface.

    optmech solve    SCENARIO [--format text|json]
    optmech compare  SCENARIO [--format text|json]
    optmech verify   SCENARIO [--grid-step 1/2] [--bound 10] [--format text|json]
    optmech graph    SCENARIO --agent NAME --kind allocation|component [--format dot|json|text]

Exit codes: 0 success, 1 verification counterexample, 2 input error,
3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import InconsistencyError, MembershipError
from .graphs import SOURCE, shortest_paths, to_dot
from .mechanisms import MECHANISMS, solve
from .model import ValidationError, check, load_scenario
from .numerics import ParseError, render, to_rat
from .verify import DEFAULT_BOUND, Mutant, SampleCapError, verify

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _agent_json(ap, s) -> dict:
    return {
        "name": ap.name,
        "vcg": render(ap.vcg),
        "wt": render(ap.wt),
        "opt": render(ap.opt_alloc),
        "opt_allocation": render(ap.opt_alloc),
        "opt_component": render(ap.opt_comp),
        "component": ap.component,
        "h_allocation": {s.allocations[a]: render(h) for a, h in sorted(ap.h_alloc.items())},
        "h_component": {f"C{c}": render(h) for c, h in sorted(ap.h_comp.items())},
    }


def cmd_solve(s, args, out) -> int:
    res = solve(s)
    if args.format == "json":
        doc = {
            "efficient_allocation": res.allocation_label,
            "agents": [_agent_json(ap, s) for ap in res.per_agent],
            "revenue": {m: render(res.revenue[m]) for m in MECHANISMS},
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    out.write(f"efficient allocation: {res.allocation_label}\n")
    for ap in res.per_agent:
        out.write(f"{ap.name}: vcg={render(ap.vcg)} wt={render(ap.wt)} opt={render(ap.opt_alloc)}\n")
    out.write("revenue: " + " ".join(f"{m}={render(res.revenue[m])}" for m in MECHANISMS) + "\n")
    return EXIT_OK


def cmd_compare(s, args, out) -> int:
    res = solve(s)
    rows = []
    for ap in res.per_agent:
        rows.append({
            "name": ap.name, "vcg": ap.vcg, "wt": ap.wt, "opt": ap.opt_alloc,
            "opt_minus_wt": ap.opt_alloc - ap.wt, "wt_minus_vcg": ap.wt - ap.vcg,
        })
    rev = res.revenue
    if args.format == "json":
        doc = {
            "agents": [{k: (v if k == "name" else render(v)) for k, v in r.items()} for r in rows],
            "revenue": {m: render(rev[m]) for m in MECHANISMS},
            "uplift": {"opt_minus_wt": render(rev["opt"] - rev["wt"]),
                       "wt_minus_vcg": render(rev["wt"] - rev["vcg"])},
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    width = max([len(r["name"]) for r in rows] + [len("revenue")])
    cols = ("vcg", "wt", "opt", "opt_minus_wt", "wt_minus_vcg")
    heads = ("vcg", "wt", "opt", "opt-wt", "wt-vcg")
    out.write(f"{'agent':<{width}}  " + "  ".join(f"{h:>8}" for h in heads) + "\n")
    for r in rows:
        out.write(f"{r['name']:<{width}}  " + "  ".join(f"{render(r[c]):>8}" for c in cols) + "\n")
    total = [rev["vcg"], rev["wt"], rev["opt"], rev["opt"] - rev["wt"], rev["wt"] - rev["vcg"]]
    out.write(f"{'revenue':<{width}}  " + "  ".join(f"{render(x):>8}" for x in total) + "\n")
    return EXIT_OK


def _parse_mutant(s, spec, kind) -> Mutant:
    agent, vertex, delta = spec
    i = s.agent_index(agent)
    if kind == "component":
        key = int(vertex.lstrip("Cc"))
    elif vertex in s.allocations:
        key = s.allocations.index(vertex)
    else:
        key = int(vertex)
    return Mutant(i, kind, key, to_rat(delta))


def cmd_verify(s, args, out) -> int:
    mutant = None
    if args.mutate_h:
        mutant = _parse_mutant(s, args.mutate_h, args.kind or "allocation")
    rep = verify(s, to_rat(args.grid_step), to_rat(args.bound), mutant=mutant)
    if args.format == "json":
        doc = {
            "passed": rep.passed,
            "samples": rep.samples_per_agent,
            "violations": [v.describe() for v in rep.all_violations()],
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        n = sum(rep.samples_per_agent.values())
        out.write(f"checked {n} sampled types (grid step {render(to_rat(args.grid_step))}, "
                  f"bound {render(to_rat(args.bound))})\n")
        for label, lst in (("ic", rep.ic_violations), ("ir", rep.ir_violations),
                           ("dominance", rep.dominance_violations),
                           ("equivalence", rep.equivalence_violations)):
            out.write(f"{label}: {len(lst)} violation(s)\n")
        for v in rep.all_violations():
            out.write("  " + v.describe() + "\n")
        out.write("PASS\n" if rep.passed else "FAIL\n")
    return EXIT_OK if rep.passed else EXIT_COUNTEREXAMPLE


def cmd_graph(s, args, out) -> int:
    if args.agent is None or args.kind is None:
        raise ValidationError(["graph needs --agent and --kind"])
    i = s.agent_index(args.agent)
    ap = solve(s, agents=[i]).per_agent[0]
    g = ap.alloc_graph if args.kind == "allocation" else ap.comp_graph
    sp = ap.alloc_paths if args.kind == "allocation" else ap.comp_paths
    fmt = args.format or "dot"
    if fmt == "dot":
        out.write(to_dot(g, sp, name=f"{ap.name} {args.kind}"))
        return EXIT_OK
    verts = []
    for v in range(g.n):
        pred = sp.pred[v]
        verts.append({"label": g.labels[v], "h": render(sp.h[v]),
                      "source_cost": render(g.source_cost[v]),
                      "pred": "s" if pred == SOURCE else g.labels[pred]})
    edges = [{"from": g.labels[u], "to": g.labels[v], "cost": render(c)} for u, v, c in g.edges()]
    if fmt == "json":
        out.write(json.dumps({"kind": g.kind, "vertices": verts, "edges": edges}, indent=2) + "\n")
    else:
        for vert in verts:
            out.write(f"s -> {vert['label']}: {vert['source_cost']}   h={vert['h']} via {vert['pred']}\n")
        for e in edges:
            out.write(f"{e['from']} -> {e['to']}: {e['cost']}\n")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "compare": cmd_compare, "verify": cmd_verify, "graph": cmd_graph}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="optmech",
                                description="Revenue-optimal efficient mechanisms on general type spaces.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--agent", help="agent name or index (graph)")
    p.add_argument("--kind", choices=("allocation", "component"), help="graph kind (graph)")
    p.add_argument("--grid-step", default="1/2", help="verification grid step (default 1/2)")
    p.add_argument("--bound", default=render(DEFAULT_BOUND),
                   help="truncation of unbounded box ends for verification (default 10)")
    p.add_argument("--format", choices=("text", "json", "dot"))
    p.add_argument("--mutate-h", nargs=3, metavar=("AGENT", "VERTEX", "DELTA"),
                   help=argparse.SUPPRESS)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "dot" if args.command == "graph" else "text"
    if args.format == "dot" and args.command != "graph":
        print("error: --format dot is only available for graph", file=sys.stderr)
        return EXIT_INPUT
    try:
        s = check(load_scenario(args.scenario))
        if args.agent is not None and args.agent.isdigit() and args.agent not in s.agents:
            args.agent = int(args.agent)
        return COMMANDS[args.command](s, args, out)
    except ValidationError as exc:
        print("invalid scenario:", file=sys.stderr)
        for v in exc.violations:
            print(f"  - {v}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, ParseError, SampleCapError, MembershipError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

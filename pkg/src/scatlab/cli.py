"""Command line interface: ``scatlab <command> ...``.

JSON goes to stdout, a one-line human summary to stderr. Exit status is 0 on
success, 1 when a reproduced claim fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import claims as cl
from . import geometry as geo
from . import jsonio
from . import linset as ls
from . import rmcode as rm
from .equiv import gl_equivalent, pgl_linear_set_equivalent
from .field import FieldError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _common(p: argparse.ArgumentParser, field: bool = True) -> None:
    if field:
        p.add_argument("--field", required=True,
                       help="'q,n' (default modulus) or a JSON descriptor {p,h,n,modulus}")
    p.add_argument("--json", metavar="PATH", help="also write the JSON result to PATH")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=None, help="work budget (field elements or codewords)")
    p.add_argument("--force", action="store_true", help="ignore the work budget")
    p.add_argument("--extended", action="store_true",
                   help="opt in to the large-q claims (used by reproduce)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scatlab", description="Scattered linear sets and MRD codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scattered", help="decide whether U_f = {(x, f(x))} is scattered")
    _common(p)
    p.add_argument("--poly", "--f", dest="poly", required=True,
                   help="q-polynomial: coefficient list or 'x^q - x^q^2 + ...'")
    p.add_argument("--spectrum", action="store_true", help="report the full weight spectrum")

    p = sub.add_parser("spectrum", help="weight spectrum of L_f")
    _common(p)
    p.add_argument("--poly", "--f", dest="poly", required=True)

    p = sub.add_parser("mrd", help="audit an F_q-linear rank-metric code")
    p.add_argument("action", nargs="?", choices=["audit"], default="audit")
    _common(p)
    p.add_argument("--gens", required=True, help="JSON list of q-polynomials")
    p.add_argument("--left-linear", action="store_true", help="take the F_{q^n}-span of the generators")
    p.add_argument("--distribution", action="store_true", help="include the rank distribution")

    p = sub.add_parser("dual", help="Delsarte dual of a code")
    _common(p)
    p.add_argument("--gens", required=True)
    p.add_argument("--left-linear", action="store_true")

    p = sub.add_parser("idealiser", help="left and right idealisers of a code")
    _common(p)
    p.add_argument("--gens", required=True)
    p.add_argument("--left-linear", action="store_true")

    p = sub.add_parser("recognize", help="test for (twisted) Gabidulin structure")
    _common(p)
    p.add_argument("--gens", required=True, help="F_{q^n}-generators of a left-linear code")

    p = sub.add_parser("geometry", help="vertex computations in PG(n-1, q^n)")
    p.add_argument("action", choices=["intn", "project", "criteria"])
    _common(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--vertex", help='JSON {"basis": [...]} or {"equations": [...]}')
    g.add_argument("--preset", choices=["new", "lp", "pseudoregulus"])
    p.add_argument("--axis", help='JSON {"basis": [v0, v1]} (required for project with --vertex)')
    p.add_argument("--s", type=int, default=None, help="generator exponent s, gcd(s, n) = 1")
    p.add_argument("--delta", type=int, default=None, help="LP parameter for --preset lp")

    p = sub.add_parser("equiv", help="GammaL-equivalence of U_f and U_h")
    _common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--linear-sets", "--pgl", dest="linear_sets", action="store_true",
                   help="compare the linear sets L_f, L_h (tries f and its adjoint)")

    p = sub.add_parser("reproduce", help="run the claim registry")
    _common(p, field=False)
    p.add_argument("--suite", default="all", choices=["all", *cl.SUITES])
    p.add_argument("--qmax", type=int, default=cl.DEFAULT_QMAX)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=8, help="sampled parameters per family")
    p.add_argument("--list", action="store_true", help="list the selected claims without running")
    return ap


# -- command bodies -----------------------------------------------------------------------


def _budget(args, default: int) -> int:
    return args.budget if args.budget is not None else default


def cmd_scattered(args, ctx):
    f = jsonio.parse_poly(ctx, args.poly)
    t0 = time.perf_counter()
    v = ls.is_scattered(ls.LinearSetSpec.of(f), spectrum=args.spectrum, force=args.force,
                        threads=args.threads, budget=_budget(args, ls.DEFAULT_SWEEP_BUDGET))
    out = {"field": ctx.descriptor(), "modulus": ctx.descriptor()["modulus"], "poly": f.to_json(),
           **v.to_json(), "timing": {"runtime_s": round(time.perf_counter() - t0, 3)}}
    return out, f"scattered={v.scattered}", EXIT_OK


def cmd_spectrum(args, ctx):
    f = jsonio.parse_poly(ctx, args.poly)
    sp = ls.weight_spectrum(ls.LinearSetSpec.of(f), force=args.force, threads=args.threads,
                            budget=_budget(args, ls.DEFAULT_SWEEP_BUDGET))
    out = {"field": ctx.descriptor(), "poly": f.to_json(), "spectrum": sp.to_json()}
    return out, f"size={sp.size} max_weight={sp.max_weight}", EXIT_OK


def _code(args, ctx) -> rm.RMCode:
    gens = jsonio.parse_poly_list(ctx, args.gens)
    return rm.RMCode.fqn_span(ctx, gens) if args.left_linear else rm.RMCode.fq_span(ctx, gens)


def cmd_mrd(args, ctx):
    C = _code(args, ctx)
    budget = _budget(args, rm.DEFAULT_RANK_BUDGET)
    dist = rm.rank_distribution(C, budget=budget)
    d = min(dist.counts) if dist.counts else None
    out = {"code": C.to_json(), "min_distance": d,
           "singleton_dim": rm.singleton_dim(ctx.n, d) if d else None,
           "mrd": bool(d) and C.dim_fq == rm.singleton_dim(ctx.n, d)}
    if args.distribution:
        out["rank_distribution"] = dist.to_json()
    out["left_idealiser"] = rm.left_idealiser(C, budget=budget).to_json()
    out["right_idealiser"] = rm.right_idealiser(C, budget=budget).to_json()
    if C.is_fqn_left_linear:
        out["gabidulin_s"] = rm.gabidulin_recognize(C)
        if C.dim_fqn and C.dim_fqn > 2:
            out["twisted"] = rm.twisted_recognize(C).to_json()
    return out, f"dim={C.dim_fq} d={d} mrd={out['mrd']}", EXIT_OK


def cmd_dual(args, ctx):
    C = _code(args, ctx)
    D = rm.delsarte_dual(C)
    return {"code": C.to_json(), "dual": D.to_json()}, f"dim={C.dim_fq} dual_dim={D.dim_fq}", EXIT_OK


def cmd_idealiser(args, ctx):
    C = _code(args, ctx)
    budget = _budget(args, rm.DEFAULT_RANK_BUDGET)
    L, R = rm.left_idealiser(C, budget=budget), rm.right_idealiser(C, budget=budget)
    out = {"code": C.to_json(), "left": L.to_json(), "right": R.to_json()}
    return out, f"left={L.to_json()['type']} right={R.to_json()['type']}", EXIT_OK


def cmd_recognize(args, ctx):
    C = rm.RMCode.fqn_span(ctx, jsonio.parse_poly_list(ctx, args.gens))
    out = {"code": C.to_json(), "gabidulin_s": rm.gabidulin_recognize(C)}
    if C.dim_fqn and C.dim_fqn > 2:
        out["twisted"] = rm.twisted_recognize(C).to_json()
    tw = out.get("twisted", {}).get("recognized")
    return out, f"gabidulin={bool(out['gabidulin_s'])} twisted={tw}", EXIT_OK


def _vertex(args, ctx):
    if args.preset == "new":
        return geo.new_family_vertex(ctx)
    if args.preset == "pseudoregulus":
        return geo.pseudoregulus_vertex(ctx)
    if args.preset == "lp":
        if args.delta is None:
            raise InputError("--preset lp needs --delta")
        return geo.lp_vertex(ctx, args.s or 1, ctx.check(args.delta))
    G = jsonio.subspace_from_json(ctx, _load(args.vertex))
    axis = jsonio.subspace_from_json(ctx, _load(args.axis)) if args.axis else None
    return G, axis


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise jsonio.ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def cmd_geometry(args, ctx):
    G, axis = _vertex(args, ctx)
    out: dict = {"field": ctx.descriptor(), "vertex": G.to_json(),
                 "meets_subgeometry": geo.meets_subgeometry(G)}
    ss = [args.s] if args.s is not None else geo.generators(ctx.n)
    if args.action == "intn":
        out["intn"] = {s: geo.intersection_number(G, s) for s in ss}
        out["chain_dims"] = {s: geo.chain_dims(G, s, 3) for s in ss}
        return out, f"intn={out['intn']}", EXIT_OK
    if args.action == "project":
        if axis is None:
            raise InputError("project needs --axis")
        pr = geo.project(G, axis, force=args.force, budget=_budget(args, 2**26))
        f = pr.as_linpoly()
        out.update({"axis": axis.to_json(), "g0": pr.g0.to_json(), "g1": pr.g1.to_json(),
                    "poly": f.to_json() if f else None})
        if pr.points is not None:
            out["size"] = len(pr.points)
            out["spectrum"] = {str(w): c for w, c in sorted(pr.spectrum().items())}
        return out, f"poly={f}", EXIT_OK
    crit = {"pseudoregulus": geo.pseudoregulus_criterion(G).to_json()}
    if ctx.n >= 4:
        crit["lp"] = geo.lp_criterion(G, args.s).to_json()
    if ctx.n % 2 and ctx.p != 2 and ctx.n >= 5:
        try:
            crit["odd_n"] = geo.charact2_criterion(G, args.s or 1).to_json()
        except geo.HypothesisViolated as exc:
            crit["odd_n"] = {"verdict": "not_applicable", "reason": str(exc)}
    out["criteria"] = crit
    return out, " ".join(f"{k}={v['verdict']}" for k, v in crit.items()), EXIT_OK


def cmd_equiv(args, ctx):
    f = jsonio.parse_poly(ctx, args.f)
    h = jsonio.parse_poly(ctx, args.h)
    budget = _budget(args, 2**26)
    v = (pgl_linear_set_equivalent(f, h, budget=budget) if args.linear_sets
         else gl_equivalent(f, h, budget=budget))
    return {"f": f.to_json(), "h": h.to_json(), **v.to_json()}, f"status={v.status}", EXIT_OK


def _duration(seconds: float | None) -> str:
    if seconds is None:
        return "unknown time"
    if seconds < 120:
        return f"{seconds:.0f} s"
    return f"{seconds / 60:.0f} min"


def cmd_reproduce(args, _ctx):
    cfg = cl.RunConfig(budget=_budget(args, cl.DEFAULT_BUDGET), threads=args.threads,
                       force=args.force, seed=args.seed, samples=args.samples)
    sel = cl.select(args.suite, args.qmax, args.extended)
    if args.list:
        return {"claims": [{"id": c.id, "suite": c.suite, "statement": c.statement,
                            "extended": c.extended, "estimate_s": c.estimate_s} for c in sel]}, \
            f"{len(sel)} claims", EXIT_OK
    for c in sel:
        if c.extended:
            print(f"[EST  ] {c.id}: about {_duration(c.estimate_s)} on one core", file=sys.stderr)

    def progress(r):
        print(f"[{r.verdict.upper():5}] {r.id} ({r.runtime_s:.1f}s)", file=sys.stderr)

    rep = cl.run_reproduction(args.suite, qmax=args.qmax, extended=args.extended, cfg=cfg,
                              progress=progress)
    npass = sum(c["verdict"] == "pass" for c in rep["claims"])
    return rep, f"{npass}/{len(rep['claims'])} claims passed", EXIT_OK if rep["passed"] else EXIT_FAIL


COMMANDS = {"scattered": cmd_scattered, "spectrum": cmd_spectrum, "mrd": cmd_mrd, "dual": cmd_dual,
            "idealiser": cmd_idealiser, "recognize": cmd_recognize, "geometry": cmd_geometry,
            "equiv": cmd_equiv, "reproduce": cmd_reproduce}

INPUT_ERRORS = (jsonio.ParseError, FieldError, InputError, geo.GeometryError, rm.NotLeftLinear,
                rm.InvalidEta, ls.InvalidParameter, ValueError)
BUDGET_ERRORS = (ls.BudgetExceeded, rm.BudgetExceeded, geo.BudgetExceeded)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = jsonio.parse_field(args.field) if getattr(args, "field", None) else None
        out, summary, code = COMMANDS[args.command](args, ctx)
    except BUDGET_ERRORS as exc:
        out, summary, code = {"error": "budget", "message": str(exc)}, f"budget exceeded: {exc}", EXIT_INPUT
    except INPUT_ERRORS as exc:
        err = exc.to_json() if isinstance(exc, jsonio.ParseError) else {"message": str(exc)}
        out, summary, code = {"error": "input", **err, "type": type(exc).__name__}, f"error: {exc}", EXIT_INPUT
    text = jsonio.dumps(out)
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

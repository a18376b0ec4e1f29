"""Command line entry point ``walker``.

Exit codes: 0 success, 2 malformed input, 3 violated mathematical
precondition, 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings as _warnings
from pathlib import Path

from . import __version__
from .errors import SpecError, WalkerError
from .field import scalar_to_str
from .io import (
    algebra_from_dict,
    dumps,
    endomorphisms_from_dict,
    load_metric,
    metric_to_dict,
    pair_from_dict,
    read_json,
)
from .metric import WalkerMetric
from .polynomial import parse_scalar

ENV_MAX_ORDER = "WALKER_MAX_ORDER"


# -- report builders ---------------------------------------------------------------

def classification_report(W: WalkerMetric) -> dict:
    from .classify import (
        check_pp_equivalences,
        classify,
        restricted_screen_flatness,
        spatial_block_vanishes,
    )
    from .curvature import PhiFamily, codifferential_check, norm_squared, ricci, riemann

    rep = classify(W)
    R = riemann(W)
    checks: dict = {"implication_violations": rep.implication_violations()}
    checks["spatial_block_vanishes"] = spatial_block_vanishes(W, R) is None
    checks["restricted_screen_flatness"] = restricted_screen_flatness(W, R)
    checks["norm_squared_vanishes"] = norm_squared(W, R).is_zero
    checks["phi_closed"] = PhiFamily.from_metric(W).is_closed() is None
    if W.identity_fibre:
        Ric = ricci(W)
        cod = codifferential_check(PhiFamily.from_metric(W))
        checks["ricci_matches_codifferential"] = all(
            Ric[W.z_index][i + 1] == cod[i] for i in range(W.n))
    if rep.parallel_in_chart:
        eq = check_pp_equivalences(W)
        checks["pp_equivalences"] = {
            "antisymmetrization": eq.antisymmetrization,
            "rho_reconstruction": eq.rho_reconstruction,
            "trace_condition": eq.trace_condition,
            "phi": str(eq.phi),
        }
    theta = rep.recurrence_form
    return {
        "kind": "report",
        "command": "classify",
        "metric": metric_to_dict(W),
        "classification": {
            **rep.flags(),
            "recurrence_form": {v: str(c) for v, c in zip(W.variables, theta.components) if c},
            "witness": rep.witness,
        },
        "checks": checks,
        "warnings": [],
    }


def _max_order(arg) -> int | None:
    if arg is not None:
        return arg
    env = os.environ.get(ENV_MAX_ORDER)
    if env is None or env.strip() == "":
        return None
    try:
        k = int(env)
    except ValueError:
        raise SpecError(f"{ENV_MAX_ORDER} must be a non-negative integer, got {env!r}") from None
    if k < 0:
        raise SpecError(f"{ENV_MAX_ORDER} must be a non-negative integer, got {env!r}")
    return k


def holonomy_report(W: WalkerMetric, point=None, max_order=None, numeric_check=False,
                    radius=0.2, steps=64, tol=1e-8) -> dict:
    from .holonomy import algebra_props, infinitesimal_holonomy, screen_killing_form
    from .liealg import is_negative_definite

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore", RuntimeWarning)
        res = infinitesimal_holonomy(W, point, max_order)
    sp = algebra_props(res.screen)
    killing_nd = None
    if res.screen.dim:
        killing_nd = is_negative_definite(screen_killing_form(res.screen))
    fp = algebra_props(res.full)
    report = {
        "kind": "report",
        "command": "holonomy",
        "metric": metric_to_dict(W),
        "point": [scalar_to_str(c) for c in res.point],
        "screen_algebra": {
            "dim": res.screen.dim,
            "generators": list(res.screen.generators),
            "bracket_closed": res.screen.is_bracket_closed(),
            "abelian": sp.abelian,
            "solvable": sp.solvable,
            "commutant_dim": sp.commutant_dim,
            "irreducible": sp.irreducible,
            "killing_negative_definite": killing_nd,
        },
        "full_holonomy": {
            "dim": len(res.full),
            "elements": [{"a": e.a, "A": e.A, "v": list(e.v)} for e in res.full],
            "derived_dims": list(fp.derived_dims),
            "two_step_solvable": fp.two_step_solvable,
        },
        "dims_by_order": res.dims_by_order,
        "screen_dims_by_order": res.screen_dims_by_order,
        "stabilized": res.stabilized,
        "warnings": list(res.warnings),
    }
    if numeric_check:
        report["numeric_check"] = _numeric_section(W, res, radius, steps, tol)
    return report


def _numeric_section(W, res, radius, steps, tol) -> dict:
    from .numeric import LoopSpec, loop_transport, screen_residual

    center = tuple(float(c) for c in res.point)
    loops = []
    for i in range(1, W.n + 1):
        out = loop_transport(W, LoopSpec((i, W.z_index), center, radius, steps), tol=tol)
        loops.append({
            "plane": [W.variables[i], "z"],
            "isometry_defect": out.isometry_defect,
            "halving_difference": out.halving_difference,
            "screen_log_norm": float((out.screen_log ** 2).sum() ** 0.5),
            "screen_residual": screen_residual(out.screen_log, res.screen.generators),
        })
    return {
        "radius": radius,
        "steps": steps,
        "loops": loops,
        "max_isometry_defect": max(x["isometry_defect"] for x in loops),
        "max_screen_residual": max(x["screen_residual"] for x in loops),
    }


def liealg_report(kind: str, g, label: str, with_basis: bool) -> dict:
    from .liealg import bspace, is_berger, is_negative_definite, is_weak_berger, kspace, rspace

    rep: dict = {"kind": "report", "command": "liealg", "query": kind, "algebra": label,
                 "n": g.n, "algebra_dim": g.dim}
    if kind == "bspace":
        B = bspace(g)
        rep.update(dim=B.dim, values_span=B.values_span())
        if with_basis:
            rep["basis"] = [list(Q) for Q in B.basis]
    elif kind == "kspace":
        K = kspace(g)
        rep.update(dim=K.dim)
        if with_basis:
            rep["basis"] = [{f"{a + 1},{b + 1}": M for (a, b), M in sorted(R.items())}
                            for R in K.basis]
    elif kind == "rspace":
        Rs = rspace(kspace(g))
        rep.update(dim=Rs.dim, values_span=Rs.values_span())
        if with_basis:
            rep["basis"] = [list(Q) for Q in Rs.basis]
    elif kind == "weakberger":
        rep.update(weak_berger=is_weak_berger(g), berger=is_berger(g))
    elif kind == "killing":
        B = g.killing_form()
        rep.update(killing_form=B, negative_definite=is_negative_definite(B) if g.dim else None)
    return rep


# -- text output -----------------------------------------------------------------

def _text(report: dict) -> str:
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                if k in ("kind", "metric", "generators", "elements", "basis"):
                    continue
                walk(f"{prefix}{k}.", obj[k])
        else:
            if isinstance(obj, list) and obj and isinstance(obj[0], dict):
                for i, x in enumerate(obj):
                    walk(f"{prefix}{i}.", x)
                return
            lines.append(f"{prefix[:-1]}: {_short(obj)}")

    walk("", report)
    return "\n".join(lines) + "\n"


def _short(v):
    if isinstance(v, bool) or v is None:
        return str(v).lower() if v is not None else "-"
    if isinstance(v, list):
        return "[" + ", ".join(str(_short(x)) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.3g}"
    return str(v)


def _emit(report: dict, args) -> None:
    text = dumps(report) if args.format == "json" else _text(report)
    if getattr(args, "report", None):
        Path(args.report).write_text(dumps(report))
    sys.stdout.write(text)


# -- commands ----------------------------------------------------------------------

def _load(path):
    warns: list = []
    W = load_metric(path, warns)
    for w in warns:
        print(f"warning: {w}", file=sys.stderr)
    return W, warns


def _parse_point(text, W):
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != W.dim:
        raise SpecError(f"--point needs {W.dim} comma-separated coordinates")
    return tuple(parse_scalar(p) for p in parts)


def cmd_classify(args) -> int:
    W, warns = _load(args.spec)
    rep = classification_report(W)
    rep["warnings"] = warns
    _emit(rep, args)
    return 0


def cmd_holonomy(args) -> int:
    W, warns = _load(args.spec)
    rep = holonomy_report(W, _parse_point(args.point, W), _max_order(args.max_order),
                          args.numeric_check, args.radius, args.steps, args.tol)
    rep["warnings"] = warns + rep["warnings"]
    for w in rep["warnings"][len(warns):]:
        print(f"warning: {w}", file=sys.stderr)
    _emit(rep, args)
    return 0


def _algebra(spec: str):
    from .liealg import BUILTIN_ALGEBRAS, builtin_algebra

    if spec in BUILTIN_ALGEBRAS:
        return builtin_algebra(spec), spec
    if not Path(spec).exists():
        raise SpecError(f"{spec!r} is neither a builtin algebra "
                        f"({', '.join(sorted(BUILTIN_ALGEBRAS))}) nor a file")
    d = read_json(spec)
    return algebra_from_dict(d), d.get("name", spec) if isinstance(d, dict) else spec


def cmd_construct(args) -> int:
    from .construct import builtin_example, galaev_metric, symmetric_metric
    from .liealg import BUILTIN_PAIRS, bspace, builtin_pair

    f = args.f if args.f is not None else None
    if args.kind == "example":
        if not args.name:
            raise SpecError("construct example needs an example NAME")
        W = builtin_example(args.name, f)
    elif args.kind == "galaev":
        if args.q:
            n, Q = endomorphisms_from_dict(read_json(args.q))
        elif args.algebra:
            g, _ = _algebra(args.algebra)
            n = g.n
            basis = bspace(g).basis if args.count else []
            if args.count > len(basis):
                raise SpecError(f"--count {args.count} exceeds dim B = {len(basis)}")
            Q = [list(q) for q in basis[:args.count]]
        elif args.n:
            n, Q = args.n, []
        else:
            raise SpecError("construct galaev needs --q FILE, --algebra NAME or --n N")
        W = galaev_metric(Q, f or 0, n=n, normalization=args.normalization)
    else:
        if not args.name:
            raise SpecError("construct symmetric needs a pair name or file")
        if args.name in BUILTIN_PAIRS:
            P = builtin_pair(args.name)
        else:
            P = pair_from_dict(read_json(args.name))
        W = symmetric_metric(P, f or 0, normalization=args.normalization)
    text = dumps(metric_to_dict(W, args.convention))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.verify:
        rep = holonomy_report(W, max_order=_max_order(None))
        s = rep["screen_algebra"]
        print(f"screen holonomy: dim {s['dim']}, irreducible {_short(s['irreducible'])}, "
              f"stabilized {_short(rep['stabilized'])}", file=sys.stderr)
    return 0


def cmd_liealg(args) -> int:
    g, label = _algebra(args.algspec)
    _emit(liealg_report(args.kind, g, label, args.basis), args)
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="walker", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"walker {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def output_opts(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--report", metavar="FILE", help="also write the JSON report here")

    c = sub.add_parser("classify", help="curvature-class flags and equivalence checks")
    c.add_argument("spec")
    output_opts(c)
    c.set_defaults(func=cmd_classify)

    h = sub.add_parser("holonomy", help="infinitesimal holonomy and screen algebra")
    h.add_argument("spec")
    h.add_argument("--point", help="comma-separated exact coordinates (default origin)")
    h.add_argument("--max-order", type=int, help=f"highest derivative order (env {ENV_MAX_ORDER})")
    h.add_argument("--numeric-check", action="store_true",
                   help="cross-check with loop transport in each (y_i, z) plane")
    h.add_argument("--radius", type=float, default=0.2)
    h.add_argument("--steps", type=int, default=64)
    h.add_argument("--tol", type=float, default=1e-8, help="step-halving tolerance")
    output_opts(h)
    h.set_defaults(func=cmd_holonomy)

    k = sub.add_parser("construct", help="write a metric spec")
    k.add_argument("kind", choices=("galaev", "symmetric", "example"))
    k.add_argument("name", nargs="?", help="example name, or symmetric pair name/file")
    k.add_argument("--f", help="polynomial for f")
    k.add_argument("-o", "--output", metavar="SPEC")
    k.add_argument("--q", metavar="FILE", help="galaev: endomorphism list")
    k.add_argument("--algebra", help="galaev: use the first --count elements of B(algebra)")
    k.add_argument("--count", type=int, default=1)
    k.add_argument("--n", type=int, help="galaev: fibre dimension when no endomorphisms")
    k.add_argument("--normalization", choices=("polycurv", "printed"), default="polycurv")
    k.add_argument("--convention", choices=("component", "walker-half"), default="component")
    k.add_argument("--verify", action="store_true", help="report the screen holonomy")
    k.set_defaults(func=cmd_construct)

    a = sub.add_parser("liealg", help="weak curvature and curvature endomorphism spaces")
    a.add_argument("kind", choices=("bspace", "kspace", "rspace", "weakberger", "killing"))
    a.add_argument("algspec", help="builtin algebra name or JSON file")
    a.add_argument("--basis", action="store_true", help="include bases in the report")
    output_opts(a)
    a.set_defaults(func=cmd_liealg)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WalkerError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())

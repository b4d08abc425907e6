"""Command line entry point: ``pervade <verb> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import generators as gen
from .burling import burling
from .coloring import ball_chromatic, chromatic_number, max_clique
from .containment import LengthConstraint, find_induced, find_induced_subdivision, restricted_check
from .extraction import ThetaCertificate, find_theta, verify_theta
from .graph import Budget, complete, complete_bipartite, cycle, path, petersen
from .io import FORMATS, check_witness, emit_graph, graph_to_obj, guess_format, read_graph


def _emit(args, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode()
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode())


def _graph(args, path_: str):
    return read_graph(path_, args.format or guess_format(path_))


def _json(obj) -> str:
    return json.dumps(obj, indent=2, default=str) + "\n"


def cmd_gen(args) -> int:
    a = args.args
    kinds = {
        "cycle": lambda: cycle(int(a[0])),
        "path": lambda: path(int(a[0])),
        "complete": lambda: complete(int(a[0])),
        "bipartite": lambda: complete_bipartite(int(a[0]), int(a[1])),
        "petersen": petersen,
        "mycielski": lambda: gen.mycielski_iterate(int(a[0])),
        "gnp": lambda: gen.random_gnp(int(a[0]), float(a[1]), args.seed),
        "kmm": lambda: gen.kmm_subdivision(int(a[0]), int(a[1])),
        "burling": lambda: burling(int(a[0])).g,
    }
    if args.kind not in kinds:
        raise SystemExit(f"unknown kind {args.kind!r}; choose from {', '.join(kinds)}")
    _emit(args, emit_graph(kinds[args.kind](), args.format or "dimacs"))
    return 0


def cmd_chi(args) -> int:
    g = _graph(args, args.graph)
    r = chromatic_number(g, Budget(args.budget))
    _emit(args, _json({"chi": str(r), "lower": r.lower, "upper": r.upper, "exact": r.exact, "coloring": r.coloring}))
    return 0


def cmd_omega(args) -> int:
    g = _graph(args, args.graph)
    c = max_clique(g, budget=Budget(args.budget))
    _emit(args, _json({"omega": len(c), "clique": c}))
    return 0


def cmd_chirho(args) -> int:
    g = _graph(args, args.graph)
    r = ball_chromatic(g, args.rho, Budget(args.budget))
    _emit(args, _json({"rho": args.rho, "chi_rho": str(r), "lower": r.lower, "upper": r.upper}))
    return 0


def cmd_burling(args) -> int:
    lvl = burling(args.k)
    fmt = args.format or "json"
    if fmt == "json":
        obj = graph_to_obj(lvl.g)
        obj["T"] = sorted(lvl.t_set)
        _emit(args, _json(obj))
    else:
        body = emit_graph(lvl.g, "dimacs").decode()
        _emit(args, f"c T {' '.join(str(v + 1) for v in sorted(lvl.t_set))}\n" + body)
    return 0


def cmd_find_induced(args) -> int:
    r = find_induced(_graph(args, args.pattern), _graph(args, args.host), Budget(args.budget))
    _emit(args, _json({"status": r.status.value, "map": list(r.embedding.map) if r.found else None}))
    return 0 if r.found else 1


def cmd_find_subdivision(args) -> int:
    base, host = _graph(args, args.base), _graph(args, args.host)
    cap = args.cap if args.cap is not None else host.n
    r = find_induced_subdivision(base, host, LengthConstraint(args.kind, args.ell), cap, Budget(args.budget))
    out = {"status": r.status.value, "complete": r.complete, "tried": r.tried}
    if r.found:
        out["lengths"] = list(r.model.lengths)
        out["map"] = list(r.embedding.map)
    _emit(args, _json(out))
    return 0 if r.found else 1


def cmd_restricted(args) -> int:
    r = restricted_check(_graph(args, args.graph), args.lam, args.mu, args.nu, args.cap, Budget(args.budget))
    _emit(args, _json({"verdict": r.verdict, "omega": r.omega, "clique": r.clique}))
    return 0


def cmd_verify_witness(args) -> int:
    p = Path(args.witness)
    v = check_witness(json.loads(p.read_text()), p.parent)
    _emit(args, _json({"verdict": str(v), "accepted": v.accepted, "clause": v.clause, "witness": list(v.witness)}))
    return 0 if v else 1


def cmd_theta(args) -> int:
    g = _graph(args, args.graph)
    r = find_theta(g, args.n, args.ell, args.t, args.estimator, Budget(args.budget), args.seed, not args.no_fallback)
    if isinstance(r, ThetaCertificate):
        _emit(args, _json(r.to_json()))
        return 0
    _emit(args, _json({"failure": r.stage, "detail": r.detail, **r.info}))
    return 1


def cmd_verify_theta(args) -> int:
    cert = ThetaCertificate.from_json(json.loads(Path(args.cert).read_text()))
    g = _graph(args, args.graph)
    n = args.n if args.n is not None else len(cert.paths)
    ell = args.ell if args.ell is not None else cert.ell
    v = verify_theta(cert, g, n, ell)
    _emit(args, _json({"verdict": str(v), "accepted": v.accepted, "clause": v.clause}))
    return 0 if v else 1


def _load_curves(S, path: Path) -> list:
    """Curves from ``[{"id": i, "points": [[x, y], ...]}, ...]``, or bare point lists numbered in order."""
    doc = json.loads(path.read_text())
    if not isinstance(doc, list):
        raise ValueError(f"{path}: expected a JSON list of curves")
    out = []
    for i, c in enumerate(doc):
        if isinstance(c, dict):
            if "points" not in c:
                raise ValueError(f"{path}: curve {i} has no 'points'")
            cid, pts = c.get("id", i), c["points"]
        else:
            cid, pts = i, c
        try:
            out.append(S.Polyline(cid, tuple(map(tuple, pts))))
        except TypeError as exc:
            raise ValueError(f"{path}: curve {i}: malformed points") from exc
    return out


def cmd_strings(args) -> int:
    from . import strings as S

    arr = S.build_string_graph(_load_curves(S, Path(args.file)))
    if args.action == "build":
        out = {"ids": arr.ids, **graph_to_obj(arr.graph)}
        _emit(args, _json(out))
        return 0
    if args.action == "audit":
        a = S.audit_40chi3(arr, Budget(args.budget))
        _emit(args, _json({"chi": str(a.chi), "chi3": str(a.chi3), "bound_holds": a.bound_holds}))
        return 0
    if args.disc is None:
        raise SystemExit("--disc CX CY R is required for clip and order")
    disc = S.Disc(*(Fraction(x) for x in args.disc))
    if args.jitter:
        clipped, disc, jitter = S.clip_with_jitter(arr, disc)
    else:
        clipped, jitter = S.clip_to_disc(arr, disc), Fraction(0)
    out = {"radius": str(disc.r), "jitter": str(jitter)}
    pieces = [{"parent": clipped.parent_id(i), "segments": list(p.segments), "boundary": p.meets_boundary} for i, p in enumerate(clipped.pieces)]
    if args.action == "clip":
        out.update(pieces=pieces, **graph_to_obj(clipped.graph))
    else:
        bo = S.boundary_order(clipped)
        out.update(start=list(bo.start), order=list(bo.order), parents=[clipped.parent_id(i) for i in bo.order])
        if args.check:
            out["cross_property"] = str(S.check_cross_property(clipped.graph, bo.order, Budget(args.budget)))
    _emit(args, _json(out))
    return 0


def cmd_experiment(args) -> int:
    from .experiment import ExperimentPlan, run_experiment

    plan = ExperimentPlan.load(args.plan)
    if args.seed is not None:
        plan.seed = args.seed
    if args.budget is not None:
        plan.budget = args.budget
    if args.out:
        plan.out = args.out
    text = run_experiment(plan)
    if not plan.out:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=float, default=None, help="time budget in seconds")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=FORMATS, default=None, help="graph format (default: by extension)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="pervade", description="Induced-subgraph and colouring toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    s = verb("gen", cmd_gen, "generate a graph")
    s.add_argument("kind")
    s.add_argument("args", nargs="*")
    verb("chi", cmd_chi, "chromatic number").add_argument("graph")
    verb("omega", cmd_omega, "clique number").add_argument("graph")
    s = verb("chirho", cmd_chirho, "ball chromatic number")
    s.add_argument("graph")
    s.add_argument("--rho", type=int, default=3)
    verb("burling", cmd_burling, "Burling level k with its set T").add_argument("--k", type=int, required=True)
    s = verb("find-induced", cmd_find_induced, "induced subgraph search")
    s.add_argument("pattern")
    s.add_argument("host")
    s = verb("find-subdivision", cmd_find_subdivision, "induced subdivision search")
    s.add_argument("base")
    s.add_argument("host")
    s.add_argument("--kind", choices=("exact", "at_least", "proper_at_most"), default="at_least")
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--cap", type=int, default=None)
    s = verb("restricted-check", cmd_restricted, "(lambda, mu, nu)-restriction check")
    s.add_argument("graph")
    s.add_argument("--lam", type=int, required=True)
    s.add_argument("--mu", type=int, required=True)
    s.add_argument("--nu", type=int, required=True)
    s.add_argument("--cap", type=int, default=None)
    verb("verify-witness", cmd_verify_witness, "check a JSON witness").add_argument("witness")
    s = verb("theta", cmd_theta, "find an induced subdivided K_{2,n}")
    s.add_argument("graph")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--ell", type=int, default=1)
    s.add_argument("--t", type=int, default=None)
    s.add_argument("--estimator", choices=("exact", "dsatur"), default="exact")
    s.add_argument("--no-fallback", action="store_true", help="skip the direct search")
    s = verb("verify-theta", cmd_verify_theta, "check a theta certificate")
    s.add_argument("cert")
    s.add_argument("graph")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--ell", type=int, default=None)
    s = verb("strings", cmd_strings, "polyline string arrangements")
    s.add_argument("action", choices=("build", "clip", "order", "audit"))
    s.add_argument("file")
    s.add_argument("--disc", nargs=3, metavar=("CX", "CY", "R"), default=None, help="rationals like 3/2 allowed")
    s.add_argument("--jitter", action="store_true", help="grow the radius until non-degenerate and report it")
    s.add_argument("--check", action="store_true", help="also check the cross property of the order")
    verb("experiment", cmd_experiment, "run an experiment plan (JSON)").add_argument("plan")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.budget is None and args.verb != "experiment":
        args.budget = 60.0
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:  # ParseError and input errors are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

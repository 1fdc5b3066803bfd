"""Command line entry point: ``cayleyiso <subcommand> ...``.

Exit status is 0 on success, 1 on usage errors and 2 when ``nest`` finds no
nested pair (so scripts can branch on it).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields

from . import certify, checks, search
from .core import GeneratorSet, UsageError, ZSet, edge_boundary, vertex_boundary
from .grid2d import NORMS
from .kernels import BACKEND

FORMATS = ("json", "csv", "table")


# -- run configuration -------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """The parsed, normalised parameters of one invocation."""

    subcommand: str
    generators: tuple[int, ...] = ()
    n: int | None = None
    n_range: tuple[int, int] | None = None
    kind: str | None = None
    window: int | None = None
    window_policy: str = "default"
    format: str = "json"
    output: str | None = None
    workers: int = 1
    seed: int = 0

    def canonical(self) -> str:
        parts = [self.subcommand]
        for f in fields(self)[1:]:
            v = getattr(self, f.name)
            if v is None or v == ():
                continue
            if f.name == "generators":
                v = ",".join(map(str, v))
            elif f.name == "n_range":
                v = f"{v[0]}:{v[1]}"
            parts.append(f"{f.name}={v}")
        return " ".join(parts)

    @classmethod
    def from_canonical(cls, text: str) -> "RunConfig":
        sub, *rest = text.split(" ")
        kw: dict = {}
        for tok in rest:
            key, _, val = tok.partition("=")
            if key == "generators":
                kw[key] = tuple(int(x) for x in val.split(","))
            elif key == "n_range":
                lo, hi = val.split(":")
                kw[key] = (int(lo), int(hi))
            elif key in ("n", "window", "workers", "seed"):
                kw[key] = int(val)
            else:
                kw[key] = val
        return cls(sub, **kw)


def _workers(args) -> int:
    if getattr(args, "workers", None) is not None:
        return max(1, args.workers)
    return search.default_workers()


def config_from_args(args) -> RunConfig:
    gens = ()
    if getattr(args, "gen", None):
        gens = tuple(GeneratorSet.parse(args.gen, args.sym))
    n_range = None
    if getattr(args, "n_range", None):
        n_range = _parse_range(args.n_range)
    n = getattr(args, "n", None)
    if args.command == "nest":
        n_range = (args.n1, args.n2)
    return RunConfig(
        subcommand=args.command,
        generators=gens,
        n=n,
        n_range=n_range,
        kind=getattr(args, "kind", None) or getattr(args, "norm", None),
        window=getattr(args, "window", None),
        window_policy=getattr(args, "window_policy", None) or "default",
        format=args.format,
        output=args.output,
        workers=_workers(args),
        seed=getattr(args, "seed", 0) or 0,
    )


# -- helpers -----------------------------------------------------------------


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        lo, sep, hi = text.partition("-")
    try:
        a, b = int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"bad n range {text!r}; use LO:HI") from exc
    if a > b:
        raise UsageError(f"empty n range {text!r}")
    return a, b


def read_set_file(path: str) -> ZSet:
    """One integer per line; blank lines and ``#`` comments are ignored."""
    vals = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            tok = line.split("#", 1)[0].strip()
            if not tok:
                continue
            try:
                vals.append(int(tok))
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: not an integer: {tok!r}") from exc
    return ZSet.from_iterable(vals)


def _parse_set(text: str) -> ZSet:
    try:
        return ZSet.from_iterable(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError as exc:
        raise UsageError(f"malformed set {text!r}") from exc


def _generators(args) -> GeneratorSet:
    if not args.gen:
        raise UsageError("--gen is required")
    return GeneratorSet.parse(args.gen, args.sym)


def _emit(text: str, args):
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family_table(F: search.OptimizerFamily) -> str:
    lines = [f"n={F.n} kind={F.kind} window={F.window} opt={F.opt_value} members={F.size}"]
    for A, lab in zip(F.members, F.labels):
        body = A.sorted_points() if hasattr(A, "sorted_points") else list(A)
        lines.append(f"  {lab:<20} {body}")
    return "\n".join(lines)


def _family_csv(F: search.OptimizerFamily) -> str:
    lines = ["# cayleyiso family v1", "n,kind,window,opt_value,label,members"]
    for A, lab in zip(F.members, F.labels):
        body = A.sorted_points() if hasattr(A, "sorted_points") else list(A)
        lines.append(f'{F.n},{F.kind},{F.window},{F.opt_value},{lab},"{body}"')
    return "\n".join(lines)


def _render_family(F, fmt: str) -> str:
    if fmt == "json":
        return F.to_json()
    if fmt == "csv":
        return _family_csv(F)
    return _family_table(F)


# -- subcommands -------------------------------------------------------------


def cmd_boundary(args) -> int:
    G = _generators(args)
    if args.set_file:
        A = read_set_file(args.set_file)
    elif args.set is not None:
        A = _parse_set(args.set)
    else:
        raise UsageError("give the set with --set or --set-file")
    kinds = ("edge", "vertex") if args.kind == "both" else (args.kind,)
    out = {"generators": list(G), "set": list(A)}
    for k in kinds:
        if k == "edge":
            E = sorted(edge_boundary(G, A), key=lambda e: (e[1], e[0]))
            out["edge"] = {"size": len(E), "boundary": [list(e) for e in E]}
        else:
            V = vertex_boundary(G, A)
            out["vertex"] = {"size": V.size, "boundary": list(V)}
    if args.format == "json":
        text = json.dumps(out, indent=2)
    elif args.format == "csv":
        text = "\n".join(["kind,size"] + [f"{k},{out[k]['size']}" for k in kinds])
    else:
        text = "\n".join(f"{k}: {out[k]['size']}" for k in kinds)
    _emit(text, args)
    return 0


def _policy(args) -> search.WindowPolicy:
    return search.WindowPolicy.parse(args.window_policy)


def cmd_search(args) -> int:
    G = _generators(args)
    W = args.window if args.window is not None else _policy(args).window(args.n, G.b_max)
    F = search.enumerate_optimizers(G, args.n, args.kind, W, bound=args.bound, workers=_workers(args))
    _emit(_render_family(F, args.format), args)
    return 0


def cmd_scan(args) -> int:
    G = _generators(args)
    lo, hi = _parse_range(args.n_range)
    policy = search.WindowPolicy("fixed", args.window) if args.window is not None else _policy(args)
    rep = search.phase_scan(G, args.kind, lo, hi, policy, bound=args.bound, workers=_workers(args))
    if args.format == "json":
        text = rep.to_json()
    elif args.format == "csv":
        text = rep.to_csv()
    else:
        rows = [f"{r.n:>5} W={r.window:<6} opt={r.opt_value:<4} |Opt|={r.family_size:<5} "
                f"{'|'.join(r.labels):<18} interval={r.interval_value}"
                + (f" predicted={r.predicted} agrees={r.agrees}" if r.predicted else "")
                for r in rep.records]
        rows.append(f"transitions: {rep.transitions}")
        text = "\n".join(rows)
    _emit(text, args)
    return 0


def cmd_nest(args) -> int:
    G = _generators(args)
    pol = _policy(args)
    W1 = args.window if args.window is not None else pol.window(args.n1, G.b_max)
    W2 = args.window if args.window is not None else pol.window(args.n2, G.b_max)
    F1 = search.enumerate_optimizers(G, args.n1, args.kind, W1, bound=args.bound, workers=_workers(args))
    F2 = search.enumerate_optimizers(G, args.n2, args.kind, W2, bound=args.bound, workers=_workers(args))
    v = search.nest_check(F1, F2)
    out = {"generators": list(G), "kind": args.kind, "n1": args.n1, "n2": args.n2,
           "opt1": F1.opt_value, "opt2": F2.opt_value, **v.to_dict()}
    if args.format == "json":
        text = json.dumps(out, indent=2)
    elif args.format == "csv":
        text = "n1,n2,kind,verdict,diameter_shortcut\n" + \
            f"{args.n1},{args.n2},{args.kind},{out['verdict']},{int(v.diameter_shortcut)}"
    else:
        text = f"verdict: {out['verdict']}"
        if v.nested:
            text += f"\n  {list(v.a1)} + {v.shift} inside {list(v.a2)}"
        else:
            text += f"\n  {v.detail}"
    _emit(text, args)
    return 0 if v.nested else 2


def cmd_certify(args) -> int:
    G = _generators(args)
    cert = certify.certificate(G)
    if args.n_max:
        pol = _policy(args)
        for kind in ("edge", "vertex"):
            e = certify.empirical_interval_threshold(G, kind, args.n_max, pol, unique=args.unique,
                                                     workers=_workers(args))
            cert[f"N_emp_{kind}"] = e.n_emp
            if args.unique:
                cert[f"N_emp_unique_{kind}"] = e.n_emp_unique
            cert[f"margins_{kind}"] = {str(n): m for n, m in e.margins.items() if m}
        cert["n_max"] = args.n_max
        cert["window_policy"] = str(pol)
    if args.format == "json":
        text = json.dumps(cert, indent=2)
    elif args.format == "csv":
        text = "modulus,width\n" + "\n".join(f"{p['b']},{p['width']}" for p in cert["per_b"])
    else:
        eps = cert["epsilon"]
        text = "\n".join([
            f"generators: {G}",
            *(f"  mod {p['b']}: width {p['width']}" for p in cert["per_b"]),
            f"epsilon: {eps['num']}/{eps['den']}",
            f"N_cert edge: {cert['N_cert_edge']}",
            f"N_cert vertex: {cert['N_cert_vertex']}",
            *(f"{k}: {v}" for k, v in cert.items() if k.startswith("N_emp")),
        ])
    _emit(text, args)
    return 0


def cmd_grid2d(args) -> int:
    F = search.enumerate_optimizers_2d(args.norm, args.n, args.window, bound=args.bound, workers=_workers(args))
    _emit(_render_family(F, args.format), args)
    return 0


def cmd_verify(args) -> int:
    names = args.suite or None
    results = checks.run_all(args.seed, args.trials, names)
    if args.format == "json":
        text = json.dumps([
            {"suite": r.name, "checked": r.checked, "failures": r.failures,
             "counterexample": repr(r.counterexample) if r.counterexample is not None else None}
            for r in results], indent=2)
    elif args.format == "csv":
        text = "suite,checked,failures\n" + "\n".join(f"{r.name},{r.checked},{r.failures}" for r in results)
    else:
        text = "\n".join(f"{'PASS' if r.ok else 'FAIL'} {r.name:<26} checked={r.checked} failures={r.failures}"
                         for r in results)
    _emit(text, args)
    return 0 if all(r.ok for r in results) else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayleyiso", description="Exact isoperimetric optimizers on Cayley graphs of Z.")
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, gen=True, kind=True):
        if gen:
            sp.add_argument("--gen", help="comma separated signed generators, e.g. 1,-1,10,-10")
            sp.add_argument("--sym", action="store_true", help="add the negatives of --gen")
        if kind:
            sp.add_argument("--kind", choices=search.KINDS, default="edge")
        sp.add_argument("--format", choices=FORMATS, default="json")
        sp.add_argument("--output", "-o", help="write here instead of stdout")

    def searching(sp):
        sp.add_argument("--window", type=int, help="search window W (sets inside [0, W-1])")
        sp.add_argument("--window-policy", default="default", help="default | slack:K | fixed:W")
        sp.add_argument("--bound", choices=search.BOUNDS, default="auto")
        sp.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $CAYLEYISO_WORKERS or 1)")

    sp = sub.add_parser("boundary", help="boundary of an explicit set")
    common(sp, kind=False)
    sp.add_argument("--kind", choices=("edge", "vertex", "both"), default="both")
    sp.add_argument("--set", help="comma separated members")
    sp.add_argument("--set-file", help="file with one integer per line")
    sp.set_defaults(func=cmd_boundary)

    sp = sub.add_parser("search", help="all minimizers of size n in a window")
    common(sp)
    searching(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("scan", help="optimizer families over a range of n")
    common(sp)
    searching(sp)
    sp.add_argument("--n-range", required=True, help="LO:HI inclusive")
    sp.set_defaults(func=cmd_scan, format="csv")

    sp = sub.add_parser("nest", help="can an optimizer of size n1 sit inside one of size n2")
    common(sp)
    searching(sp)
    sp.add_argument("--n1", type=int, required=True)
    sp.add_argument("--n2", type=int, required=True)
    sp.set_defaults(func=cmd_nest, format="table")

    sp = sub.add_parser("certify", help="residue witnesses, epsilon and interval thresholds")
    common(sp, kind=False)
    sp.add_argument("--n-max", type=int, help="also compute the empirical threshold up to this n")
    sp.add_argument("--unique", action="store_true", help="with --n-max, also find where the interval is the only optimizer")
    sp.add_argument("--window-policy", default="default", help="window policy for --n-max")
    sp.add_argument("--workers", type=int, default=None)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("grid2d", help="minimizers on the planar grids")
    common(sp, gen=False, kind=False)
    searching(sp)
    sp.add_argument("--norm", choices=NORMS, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_grid2d, window=6)

    sp = sub.add_parser("verify", help="randomized inequality checks")
    common(sp, gen=False, kind=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=10_000)
    sp.add_argument("--suite", action="append", choices=sorted(checks.SUITES))
    sp.set_defaults(func=cmd_verify, format="table")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if os.environ.get("CAYLEYISO_DEBUG"):
            sys.stderr.write(config_from_args(args).canonical() + "\n")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"cayleyiso: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"cayleyiso: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

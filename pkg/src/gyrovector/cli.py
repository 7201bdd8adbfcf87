"""Command-line front end.

Every subcommand prints one JSON object to stdout (or to ``--out``) that
echoes its inputs, so results can be fed back in with ``--json``.  The
``check`` suites print a residual table instead.  Exit codes: 0 success,
1 failed law, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import barycentric as bary
from .ball import SpaceContext, _add, einstein_add
from .errors import DegenerateSystem
from .gyration import (
    LawReport,
    _gyr,
    check_gyration_matrices,
    check_gyrogroup_axioms,
    gyr_apply,
    gyr_matrix,
    vec_residual,
)
from .motions import GyroMotion, check_gyrocovariance, check_motion_laws
from .relativity import Particle, newtonian_resultant, resultant_invariant_mass, check_resultant_laws
from .sampling import random_ball_points, random_rotation, random_rotations
from .space import (
    _line_point,
    _midpoint,
    boundary_points,
    check_gyrovector_axioms,
    gyrodistance,
    gyromidpoint,
    scalar_mul,
)
from .svg import render_klein_disk


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _num(x):
    """JSON-safe float (shortest round-trip repr); non-finite becomes None."""
    x = float(x)
    return x if math.isfinite(x) else None


def _vec(v):
    return [_num(x) for x in np.asarray(v, dtype=float).reshape(-1)]


def _parse_vector(text, name):
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        items = [t for t in str(text).split(",")]
    try:
        out = [float(t) for t in items]
    except (TypeError, ValueError):
        raise CliError("parse", f"cannot parse {name!r} as a comma-separated vector: {text!r}")
    if not out or not all(math.isfinite(x) for x in out):
        raise CliError("parse", f"vector {name!r} must be nonempty and finite")
    return np.array(out)


def _parse_scalar(text, name):
    try:
        x = float(text)
    except (TypeError, ValueError):
        raise CliError("parse", f"cannot parse {name!r} as a number: {text!r}")
    if not math.isfinite(x):
        raise CliError("parse", f"{name!r} must be finite")
    return x


def _load_json(path):
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise CliError("parse", f"invalid JSON in {path}: {exc.msg}")
    if not isinstance(data, dict):
        raise CliError("parse", "JSON input must be an object")
    return data


def _inputs(args, names):
    """Merge inline flags over ``--json`` keys; returns (ctx, dict of vectors)."""
    data = _load_json(args.json)
    vecs = {}
    for name in names:
        raw = getattr(args, name, None)
        if raw is None:
            raw = data.get(name)
        if raw is None:
            raise CliError("usage", f"missing input {name!r}")
        vecs[name] = _parse_vector(raw, name)
    return _context(args, data, [len(v) for v in vecs.values()]), vecs


def _context(args, data, lengths, default_dim=2):
    s = args.s if args.s is not None else data.get("s", 1.0)
    s = _parse_scalar(s, "s")
    dim = args.dim if args.dim is not None else data.get("dim")
    if dim is None:
        dim = lengths[0] if lengths else default_dim
    if any(n != dim for n in lengths):
        raise CliError("dimension", f"vector lengths {lengths} do not match dim {dim}")
    kwargs = {}
    if args.tol is not None:
        kwargs["rel_tol"] = args.tol
    try:
        return SpaceContext(s=s, n=int(dim), **kwargs)
    except ValueError as exc:
        raise CliError("domain", str(exc))


def _base(ctx):
    return {"s": _num(ctx.s), "dim": ctx.n}


def _emit(args, obj):
    text = json.dumps(obj, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_add(args) -> int:
    ctx, v = _inputs(args, ["u", "v"])
    out = _base(ctx) | {"u": _vec(v["u"]), "v": _vec(v["v"]),
                        "result": _vec(einstein_add(v["u"], v["v"], ctx))}
    _emit(args, out)
    return 0


def cmd_gyr(args) -> int:
    ctx, v = _inputs(args, ["u", "v", "w"])
    M = gyr_matrix(v["u"], v["v"], ctx)
    out = _base(ctx) | {"u": _vec(v["u"]), "v": _vec(v["v"]), "w": _vec(v["w"]),
                        "result": _vec(gyr_apply(v["u"], v["v"], v["w"], ctx)),
                        "matrix": [_vec(row) for row in M]}
    _emit(args, out)
    return 0


def cmd_mul(args) -> int:
    data = _load_json(args.json)
    r = _parse_scalar(args.r if args.r is not None else data.get("r"), "r")
    ctx, v = _inputs(args, ["v"])
    out = _base(ctx) | {"r": r, "v": _vec(v["v"]), "result": _vec(scalar_mul(r, v["v"], ctx))}
    _emit(args, out)
    return 0


def cmd_dist(args) -> int:
    ctx, v = _inputs(args, ["a", "b"])
    out = _base(ctx) | {"a": _vec(v["a"]), "b": _vec(v["b"]),
                        "result": _num(gyrodistance(v["a"], v["b"], ctx))}
    _emit(args, out)
    return 0


def cmd_midpoint(args) -> int:
    ctx, v = _inputs(args, ["a", "b"])
    anchors = [_vec(v["a"]), _vec(v["b"])]
    out = _base(ctx) | {"a": anchors[0], "b": anchors[1],
                        "anchors": anchors, "weights": [1.0, 1.0],
                        "result": _vec(gyromidpoint(v["a"], v["b"], ctx)),
                        "const_sq": _num(bary.rep_constant_sq(anchors, [1.0, 1.0], ctx))}
    _emit(args, out)
    return 0


def cmd_boundary(args) -> int:
    ctx, v = _inputs(args, ["a", "b"])
    e1, e2 = boundary_points(v["a"], v["b"], ctx)
    out = _base(ctx) | {"a": _vec(v["a"]), "b": _vec(v["b"]),
                        "anchors": [_vec(v["a"]), _vec(v["b"])],
                        "E_A1": _vec(e1), "E_A2": _vec(e2)}
    _emit(args, out)
    return 0


def _particles(args):
    data = _load_json(args.json)
    raw = data.get("particles")
    if not isinstance(raw, list):
        raise CliError("parse", "expected a 'particles' list")
    ms, vs = [], []
    for i, p in enumerate(raw):
        if not isinstance(p, dict) or "m" not in p or "v" not in p:
            raise CliError("parse", f"particle {i} needs 'm' and 'v'")
        ms.append(_parse_scalar(p["m"], f"particles[{i}].m"))
        vs.append(_parse_vector(p["v"], f"particles[{i}].v"))
    ctx = _context(args, data, [len(v) for v in vs])
    return ctx, [Particle(m, v) for m, v in zip(ms, vs)]


def _signed_gamma(g):
    return {"gamma_sq": _num(g.gamma_sq), "kind": g.kind}


def cmd_commass(args) -> int:
    ctx, system = _particles(args)
    res = resultant_invariant_mass(system, ctx)
    checks = check_resultant_laws(system, [], ctx)
    try:
        nm0, nv0 = newtonian_resultant(system)
        newton = {"m0": _num(nm0), "v0": _vec(nv0)}
    except DegenerateSystem:
        newton = None
    m0 = res.m0
    out = _base(ctx) | {
        "particles": [{"m": _num(p.m), "v": _vec(p.v)} for p in system],
        "m0_sq": _num(res.m0_sq),
        "m0": _num(m0) if not isinstance(m0, complex) else None,
        "m0_imag": _num(m0.imag) if isinstance(m0, complex) else None,
        "v0": _vec(res.v0),
        "gamma_v0": _signed_gamma(res.gamma_v0),
        "classification": res.classification,
        "newtonian": newton,
        "residuals": {k: _num(v) for k, v in checks.residuals.items()},
    }
    _emit(args, out)
    return 0


def _point_set(args):
    data = _load_json(args.json)
    raw = data.get("anchors")
    if not isinstance(raw, list):
        raise CliError("parse", "expected an 'anchors' list")
    anchors = [_parse_vector(a, f"anchors[{i}]") for i, a in enumerate(raw)]
    weights = data.get("weights")
    if weights is not None:
        weights = _parse_vector(weights, "weights")
        if len(weights) != len(anchors):
            raise CliError("parse", "weights and anchors differ in count")
    query = data.get("query")
    if query is not None:
        query = _parse_vector(query, "query")
    lengths = [len(a) for a in anchors] + ([len(query)] if query is not None else [])
    ctx = _context(args, data, lengths)
    A = np.array(anchors).reshape(-1, ctx.n)
    return ctx, A, weights, query


def cmd_bary(args) -> int:
    ctx, A, weights, query = _point_set(args)
    out = _base(ctx) | {"anchors": [_vec(a) for a in A]}
    if args.mode == "solve":
        if query is None:
            raise CliError("usage", "solve needs a 'query' point")
        rep = bary.solve_gyro(query, A, ctx)
        P, _ = bary.eval_gyro(A, rep.weights, ctx)
        out |= {"query": _vec(query), "weights": _vec(rep.weights),
                "const_sq": _num(rep.const_sq), "classification": bary.classify(rep, ctx),
                "residual": _num(vec_residual(P, query, ctx.s))}
    else:
        if weights is None:
            raise CliError("usage", f"{args.mode} needs 'weights'")
        P, rep = bary.eval_gyro(A, weights, ctx)
        out |= {"weights": _vec(weights), "point": _vec(P),
                "const_sq": _num(rep.const_sq), "classification": bary.classify(rep, ctx)}
        if args.mode == "classify":
            nP = float(np.linalg.norm(P))
            out |= {"norm": _num(nP), "norm_classification":
                    "inside" if nP < ctx.s * (1 - 1e-9) else
                    "outside" if nP > ctx.s * (1 + 1e-9) else "boundary"}
        else:
            out |= {"canonical_weights": _vec(rep.canonical)}
    _emit(args, out)
    return 0


def cmd_plot(args) -> int:
    ctx, A, weights, query = _point_set(args)
    if ctx.n != 2:
        raise CliError("dimension", "plot needs dim = 2")
    point = bary.eval_gyro(A, weights, ctx)[0] if weights is not None and len(A) else None
    svg = render_klein_disk(A, ctx, point=point, query=query)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def _suite_gyrogroup(rng, count, ctx, tol):
    pts = random_ball_points(rng, 3 * count, ctx.n, ctx.s, 0.99).reshape(count, 3, ctx.n)
    report = check_gyrogroup_axioms(pts, ctx, tol)
    report.merge(check_gyration_matrices(pts[:, :2], ctx, tol))
    if count:
        a, b, c = pts[:, 0], pts[:, 1], pts[:, 2]
        s, dt = ctx.s, ctx.denom_tol
        oracle = _add(-_add(a, b, s, dt), _add(a, _add(b, c, s, dt), s, dt), s, dt)
        report.record("explicit gyration vs definition", vec_residual(_gyr(a, b, c, s), oracle, s))
    return report


def _suite_gyrovector(rng, count, ctx, tol):
    pts = random_ball_points(rng, 4 * count, ctx.n, ctx.s, 0.9).reshape(count, 4, ctx.n)
    r = rng.uniform(-5.0, 5.0, (count, 2))
    return check_gyrovector_axioms(pts, r, ctx, tol)


def _suite_motions(rng, count, ctx, tol):
    pts = random_ball_points(rng, 5 * count, ctx.n, ctx.s, 0.9).reshape(count, 5, ctx.n)
    rots = random_rotations(rng, 3 * count, ctx.n).reshape(count, 3, ctx.n, ctx.n)
    return check_motion_laws(pts, rots, ctx, tol)


def _suite_covariance(rng, count, ctx, tol):
    report = LawReport(tol=tol)
    if count == 0:
        return report
    s, dt = ctx.s, ctx.denom_tol
    pts = random_ball_points(rng, 3 * count, ctx.n, ctx.s, 0.9).reshape(count, 3, ctx.n)
    motions = [GyroMotion(x, random_rotation(rng, ctx.n))
               for x in random_ball_points(rng, 10, ctx.n, ctx.s, 0.9)]
    weights = np.array([1.0, 2.0, 0.5])

    def eval3(A1, A2, A3):
        return np.stack([bary.eval_gyro(np.stack(t), weights, ctx)[0] for t in zip(A1, A2, A3)])

    maps = {
        "midpoint": (lambda A1, A2: _midpoint(A1, A2, s), 2),
        "gyroline point": (lambda A1, A2: _line_point(A1, A2, np.full(len(A1), 0.3), s, dt), 2),
        "gyrobarycentric point": (eval3, 3),
    }
    for name, (T, k) in maps.items():
        sub = check_gyrocovariance(T, pts[:, :k], motions, ctx, tol)
        report.record(f"{name}", sub.worst)
    return report


SUITES = {
    "gyrogroup": _suite_gyrogroup,
    "gyrovector": _suite_gyrovector,
    "motions": _suite_motions,
    "covariance": _suite_covariance,
}


def cmd_check(args) -> int:
    data = _load_json(args.json)
    ctx = _context(args, data, [], default_dim=3)
    if args.count < 0:
        raise CliError("usage", "count must be >= 0")
    rng = np.random.default_rng(args.seed)
    tol = ctx.rel_tol
    report = SUITES[args.suite](rng, args.count, ctx, tol)
    lines = [f"suite {args.suite}: s={ctx.s!r} dim={ctx.n} seed={args.seed} count={args.count} tol={tol!r}",
             report.table(),
             "PASS" if report.ok else "FAIL: " + ", ".join(report.failures)]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=float, default=None, help="ball radius (default 1)")
    common.add_argument("--dim", type=int, default=None, help="dimension (default: inferred)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for check suites")
    common.add_argument("--tol", type=float, default=None, help="relative tolerance")
    common.add_argument("--json", metavar="FILE", default=None, help="read inputs from a JSON file")
    common.add_argument("--out", metavar="FILE", default=None, help="write output to FILE")

    p = argparse.ArgumentParser(prog="gyrovector", description="Einstein gyrovector space calculator")
    sp = p.add_subparsers(dest="cmd", required=True)

    def sub(name, func, help_, vectors=()):
        q = sp.add_parser(name, parents=[common], help=help_)
        for v in vectors:
            q.add_argument(f"--{v}", default=None, help="comma-separated vector")
        q.set_defaults(func=func)
        return q

    sub("add", cmd_add, "Einstein sum u (+) v", ["u", "v"])
    sub("gyr", cmd_gyr, "gyration gyr[u,v]w and its matrix", ["u", "v", "w"])
    q = sub("mul", cmd_mul, "scalar multiple r (x) v", ["v"])
    q.add_argument("--r", default=None, help="real scalar")
    sub("dist", cmd_dist, "gyrodistance |(-a) (+) b|", ["a", "b"])
    sub("midpoint", cmd_midpoint, "gyromidpoint of a and b", ["a", "b"])
    sub("boundary", cmd_boundary, "boundary points of the gyroline through a and b", ["a", "b"])
    sub("commass", cmd_commass, "resultant invariant mass of a particle system (--json)")
    q = sub("bary", cmd_bary, "gyrobarycentric coordinates of a point set (--json)")
    q.add_argument("mode", choices=["eval", "solve", "classify"])
    q = sub("check", cmd_check, "run a law suite on seeded random samples")
    q.add_argument("suite", choices=sorted(SUITES))
    q.add_argument("--count", type=int, default=200, help="number of samples")
    sub("plot", cmd_plot, "SVG plot of a 2-D point set in the Klein disk (--json)")
    return p


_VALUE_FLAGS = {"--u", "--v", "--w", "--a", "--b", "--r", "--s", "--tol"}


def _join_negative_values(argv):
    """Turn ``--b -0.3,0.4`` into ``--b=-0.3,0.4`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and len(argv[i + 1]) > 1 and (argv[i + 1][1].isdigit() or argv[i + 1][1] == "."):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return int(args.func(args))
    except (CliError, ValueError) as exc:
        err = {"error": {"code": getattr(exc, "code", "domain"), "message": str(exc)}}
        sys.stdout.write(json.dumps(err, indent=2) + "\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())

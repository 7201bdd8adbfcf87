"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N PASS|FAIL`` line, collected again in
the terminal summary, and then asserts on the same flag.
"""

import math
import time

import numpy as np

import oracles
from gyrovector import (
    boost_apply,
    boundary_points,
    canonical_weights,
    classify,
    einstein_add,
    einstein_half,
    eval_gyro,
    four_momentum,
    FourVector,
    galilei_boost,
    gamma,
    gyr_matrix,
    gyromidpoint,
    GyroMotion,
    minkowski_norm_sq,
    newtonian_resultant,
    Particle,
    resultant_invariant_mass,
    scalar_mul,
    solve_gyro,
    SpaceContext,
    transform_rep,
)
from gyrovector import cli, gyration
from gyrovector.barycentric import CLASS_TOL
from gyrovector.gyration import check_gyration_matrices, check_gyrogroup_axioms, vec_residual
from gyrovector.motions import check_gyrocovariance
from gyrovector.relativity import check_resultant_laws
from gyrovector.sampling import random_ball_points, random_directions, random_rotation
from gyrovector.space import Gyroline, check_gyrovector_axioms

import test_cli


def _fit_order(ss, errs):
    return -np.polyfit(np.log(ss), np.log(errs), 1)[0]


def test_criterion_1_gyrogroup_axioms(criterion):
    rng = np.random.default_rng(101)
    worst, failures = 0.0, []
    start = time.perf_counter()
    for n in (2, 3, 5):
        for s in (1.0, 3.0):
            ctx = SpaceContext(s=s, n=n)
            triples = random_ball_points(rng, 3000, n, s, 0.999).reshape(1000, 3, n)
            rep = check_gyrogroup_axioms(triples, ctx, tol=1e-9)
            worst = max(worst, rep.worst)
            failures += [f"{law} (n={n}, s={s:g})" for law in rep.failures]
    elapsed = time.perf_counter() - start
    ok = not failures and len(rep.residuals) == 12 and elapsed < 5.0
    detail = f"max residual {worst:.2e} < 1e-09, {elapsed:.2f} s < 5 s" + (f"; failed {failures}" if failures else "")
    assert criterion(1, "gyrogroup axiom suite", ok, detail)


def test_criterion_2_gyration_consistency(criterion):
    rng = np.random.default_rng(102)
    ctx = SpaceContext(s=1.0, n=3)
    pts = random_ball_points(rng, 3000, 3, 1.0, 0.99).reshape(1000, 3, 3)
    # a third of the samples put u and v exactly at 0.999 s
    edge = random_directions(rng, 2 * 333, 3).reshape(333, 2, 3) * 0.999
    pts[:333, :2] = edge
    u, v, w = pts[:, 0], pts[:, 1], pts[:, 2]
    explicit = np.stack([gyration.gyr_apply(u[i], v[i], w[i], ctx) for i in range(1000)])
    exact = np.array([oracles.to_float(oracles.gyr_definition(
        oracles.mpvec(u[i]), oracles.mpvec(v[i]), oracles.mpvec(w[i]), 1)) for i in range(1000)])
    formula_err = float(np.max(vec_residual(explicit, exact, 1.0)))
    mats = check_gyration_matrices(pts[:, :2], ctx, tol=1e-10)
    ok = formula_err < 1e-10 and mats.ok
    detail = (f"explicit vs definition {formula_err:.2e}, orthogonality {mats.residuals['orthogonality']:.2e}, "
              f"|det - 1| {mats.residuals['unit determinant']:.2e}")
    assert criterion(2, "gyration consistency", ok, detail)


def test_criterion_3_gyrovector_axioms(criterion):
    rng = np.random.default_rng(103)
    worst, failures = 0.0, []
    for n, s in ((3, 1.0), (2, 3.0)):
        ctx = SpaceContext(s=s, n=n)
        pts = random_ball_points(rng, 4000, n, s, 0.9).reshape(1000, 4, n)
        r = rng.uniform(-5.0, 5.0, (1000, 2))
        rep = check_gyrovector_axioms(pts, r, ctx, tol=1e-9)
        worst = max(worst, rep.worst)
        failures += rep.failures
    ok = not failures and len(rep.residuals) == 10
    detail = f"V1-V10 max residual {worst:.2e} < 1e-09" + (f"; failed {failures}" if failures else "")
    assert criterion(3, "gyrovector space axioms", ok, detail)


def test_criterion_4_closed_forms(criterion):
    c2 = SpaceContext(s=1.0, n=2)
    errs = {
        "half": abs(einstein_half([0.6, 0.0], c2)[0] - 1.0 / 3.0),
        "2 (x) 0.5": abs(scalar_mul(2.0, [0.5, 0.0], c2)[0] - 0.8),
    }
    rng = np.random.default_rng(104)
    for s in (1.0, 3.0):
        ctx = SpaceContext(s=s, n=3)
        for A1, A2 in random_ball_points(rng, 40, 3, s, 0.95).reshape(20, 2, 3):
            g12 = gamma(einstein_add(-A1, A2, ctx), ctx)
            _, rep = eval_gyro(np.stack([A1, A2]), [1.0, 1.0], ctx)
            errs["midpoint constant"] = max(errs.get("midpoint constant", 0.0),
                                            abs(math.sqrt(rep.const_sq) - math.sqrt(2) * math.sqrt(g12 + 1)))
            M = gyromidpoint(A1, A2, ctx)
            gm = gamma(einstein_add(-A1, M, ctx), ctx)
            errs["gamma to midpoint"] = max(errs.get("gamma to midpoint", 0.0),
                                            abs(gm - math.sqrt((1 + g12) / 2)))
            errs["boundary norms"] = max([errs.get("boundary norms", 0.0)]
                                         + [abs(np.linalg.norm(E) - s) / s for E in boundary_points(A1, A2, ctx)])
    worst = max(errs.values())
    ok = worst < 1e-12
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errs.items())
    assert criterion(4, "closed-form values", ok, detail)


def test_criterion_5_resultant_mass(criterion):
    rng = np.random.default_rng(105)
    ctx = SpaceContext(s=1.0, n=3)
    worst = {"minkowski": 0.0, "rest frame momentum": 0.0, "mass additivity": 0.0, "covariance": 0.0}
    systems = inside = 0
    while systems < 500:
        N = int(rng.integers(1, 9))
        m = rng.uniform(0.1, 3.0, N) * np.where(rng.random(N) < 0.3, -1.0, 1.0)
        V = random_ball_points(rng, N, 3, 1.0, 0.95)
        g = np.array([gamma(v, ctx) for v in V])
        if abs(np.sum(m * g)) < 1e-6 * np.sum(np.abs(m * g)):
            continue
        systems += 1
        system = list(zip(m, V))
        res = resultant_invariant_mass(system, ctx)
        total = FourVector(0.0, np.zeros(3))
        for p in system:
            total = total + four_momentum(Particle(*p), ctx)
        E = np.sum(np.abs(m * g))
        worst["minkowski"] = max(worst["minkowski"], abs(res.m0_sq - minkowski_norm_sq(total, ctx)) / E**2)
        if res.classification == "inside":
            inside += 1
            rest = boost_apply(-res.v0, total, ctx)
            worst["rest frame momentum"] = max(worst["rest frame momentum"],
                                               np.linalg.norm(rest.x) / abs(res.m0 * res.gamma_v0.gamma))
            T = math.fsum(m * g)
            worst["mass additivity"] = max(worst["mass additivity"],
                                           abs(res.m0 * res.gamma_v0.gamma - T) / abs(T))
        laws = check_resultant_laws(system, random_ball_points(rng, 10, 3, 1.0, 0.9), ctx)
        worst["covariance"] = max(worst["covariance"], *(laws.residuals.get(k, 0.0) for k in
                                                         ("m0 invariance", "v0 covariance", "gamma covariance")))
    ok = (worst["minkowski"] < 1e-9 and worst["rest frame momentum"] < 1e-9
          and worst["mass additivity"] < 1e-10 and worst["covariance"] < 1e-9)
    detail = f"{systems} systems ({inside} with m0^2 > 0); " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert criterion(5, "resultant mass theorem", ok, detail)


def _independent_anchors(rng, N, n):
    while True:
        A = random_ball_points(rng, N, n, 1.0, 0.8)
        if N == 1 or np.linalg.cond(A[1:] - A[0]) < 1e3:
            return A


def test_criterion_6_barycentric_round_trip(criterion):
    rng = np.random.default_rng(106)
    trip = base_dep = 0.0
    trips = 0
    while trips < 500:
        n = int(rng.integers(2, 4))
        ctx = SpaceContext(s=1.0, n=n)
        N = int(rng.integers(1, n + 2))
        A = _independent_anchors(rng, N, n)
        m = rng.uniform(0.1, 2.0, N) * np.where(rng.random(N) < 0.2, -1.0, 1.0)
        try:
            P, rep = eval_gyro(A, m, ctx)
        except ValueError:
            continue
        if classify(rep, ctx) != "inside":
            continue
        trips += 1
        sols = [solve_gyro(P, A, ctx, base=b).weights for b in range(N)]
        trip = max(trip, float(np.max(np.abs(sols[0] - canonical_weights(m)))))
        base_dep = max(base_dep, max(float(np.max(np.abs(w - sols[0]))) for w in sols))
    agree = trials = banded = 0
    while trials < 1000:
        n = int(rng.integers(2, 4))
        ctx = SpaceContext(s=1.0, n=n)
        N = int(rng.integers(2, n + 2))
        A = random_ball_points(rng, N, n, 1.0, 0.95)
        m = rng.uniform(-1.0, 2.0, N)
        try:
            P, rep = eval_gyro(A, m, ctx)
        except ValueError:
            continue
        if abs(rep.const_sq) <= CLASS_TOL * np.sum(np.abs(m)) ** 2:
            banded += 1
            continue
        trials += 1
        direct = "inside" if np.linalg.norm(P) < ctx.s else "outside"
        agree += classify(rep, ctx) == direct
    ok = trip < 1e-8 and base_dep < 1e-8 and agree == trials
    detail = (f"round trip {trip:.1e}, base dependence {base_dep:.1e}, "
              f"classification {agree}/{trials} ({banded} in band skipped)")
    assert criterion(6, "gyrobarycentric round trip", ok, detail)


def test_criterion_7_gyrocovariance(criterion):
    rng = np.random.default_rng(107)
    ctx = SpaceContext(s=1.0, n=3)
    s, dt = ctx.s, ctx.denom_tol
    motions = [GyroMotion(x, random_rotation(rng, 3)) for x in random_ball_points(rng, 100, 3, 1.0, 0.9)]
    pts = random_ball_points(rng, 60, 3, 1.0, 0.9).reshape(20, 3, 3)
    weights = np.array([1.0, 2.0, 0.5])

    def line(A1, A2):
        return np.stack([Gyroline(a, b, ctx).point(0.3) for a, b in zip(A1, A2)])

    def bary(A1, A2, A3):
        return np.stack([eval_gyro(np.stack(t), weights, ctx)[0] for t in zip(A1, A2, A3)])

    maps = {"midpoint": (lambda A1, A2: gyromidpoint(A1, A2, ctx), 2), "gyroline": (line, 2), "eval_gyro": (bary, 3)}
    cov = {name: check_gyrocovariance(T, pts[:, :k], motions, ctx).worst for name, (T, k) in maps.items()}
    const = 0.0
    for t in pts:
        _, rep = eval_gyro(t, weights, ctx)
        for mo in motions:
            const = max(const, abs(transform_rep(mo, rep, ctx).const_sq - rep.const_sq) / rep.const_sq)
    bad = np.array([[[0.9, 0.0, 0.0], [0.0, 0.9, 0.0]]])
    counter = check_gyrocovariance(lambda A1, A2: (A1 + A2) / 2, bad,
                                   [GyroMotion(np.array([-0.9, 0.0, 0.0]), np.eye(3))], ctx).worst
    ok = max(cov.values()) < 1e-9 and const < 1e-10 and counter > 1e-2
    detail = ", ".join(f"{k} {v:.1e}" for k, v in cov.items()) + f", constant {const:.1e}, euclidean midpoint {counter:.2f}"
    assert criterion(7, "gyrocovariance", ok, detail)


def test_criterion_8_newtonian_limits(criterion):
    ss = np.array([1e3, 1e4, 1e6, 1e8])
    u = np.array([120.0, -40.0, 75.0])
    v = np.array([-60.0, 90.0, 30.0])
    fv = FourVector(2.0, [300.0, -100.0, 50.0])
    ms = [1.0, 2.5, 0.7]
    vs = [u, v, np.array([10.0, 10.0, -150.0])]
    nm0, nv0 = newtonian_resultant(list(zip(ms, vs)))
    errs = {"add": [], "gyr": [], "boost": [], "resultant": []}
    for s in ss:
        ctx = SpaceContext(s=s, n=3)
        errs["add"].append(np.max(np.abs(einstein_add(u, v, ctx) - (u + v))))
        errs["gyr"].append(np.max(np.abs(gyr_matrix(u, v, ctx) - np.eye(3))))
        errs["boost"].append(np.max(np.abs(boost_apply(u, fv, ctx).as_array() - galilei_boost(u, fv).as_array())))
        res = resultant_invariant_mass(list(zip(ms, vs)), ctx)
        errs["resultant"].append(abs(res.m0 - nm0) + np.linalg.norm(res.v0 - nv0))
    orders = {k: _fit_order(ss, e) for k, e in errs.items()}
    ok = min(orders.values()) >= 1.9
    detail = ", ".join(f"{k} order {o:.2f}" for k, o in orders.items()) + " >= 1.9"
    assert criterion(8, "newtonian limits", ok, detail)


def test_criterion_9_cli_determinism(criterion, capsys, monkeypatch):
    mismatched = []
    for name, argv in test_cli.CASES.items():
        first = test_cli._run(argv, capsys)
        second = test_cli._run(argv, capsys)
        golden = test_cli._golden_path(name, argv).read_text(encoding="utf-8")
        if not (first == second and first[1] == golden):
            mismatched.append(name)
    argv = ["check", "gyrogroup", "--count", "200"]
    pristine = cli.main(argv)
    original = gyration._coefficients

    def flipped(u, v, w, s):
        A, B, D = original(u, v, w, s)
        return A, -B, D

    monkeypatch.setattr(gyration, "_coefficients", flipped)
    mutated = cli.main(argv)
    monkeypatch.undo()
    capsys.readouterr()
    ok = not mismatched and pristine == 0 and mutated == 1
    detail = (f"{len(test_cli.CASES) - len(mismatched)}/{len(test_cli.CASES)} goldens byte-stable, "
              f"check exits {pristine} pristine and {mutated} mutated")
    assert criterion(9, "cli determinism", ok, detail)

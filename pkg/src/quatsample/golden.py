"""Reference checks against hand-derived values for the shipped fixtures.

Used by ``quatsample verify``. Each check returns ``(name, passed, detail)``.
"""
from __future__ import annotations

from importlib import resources
from math import sqrt

import numpy as np

from .bvp import (
    BvpSpec,
    boundary_poly,
    build_phi,
    expansion_from_points,
    reconstruct,
    sample_points_method1,
    sample_points_method2,
    transform,
    transform_scale,
)
from .charpoly import spectrum_check
from .generators import FAMILIES, random_normal_spec
from .linalg import QMatrix, eigen_residual, right_eigen
from .poly import NONREAL_ISOLATED, SPHERICAL, QPoly, zeros
from .quaternion import I, J, K, ONE, Quaternion, is_similar, random_quaternion
from .textio import read_matrix, read_spec

R3 = sqrt(3.0)


def fixture_path(name: str):
    return resources.files("quatsample") / "fixtures" / name


def load_spec(name: str) -> tuple[BvpSpec, Quaternion]:
    sf = read_spec(fixture_path(name))
    return BvpSpec(sf.N, sf.a, sf.b, sf.h1, sf.h2), sf.s or ONE


def load_matrix(name: str) -> QMatrix:
    return QMatrix(read_matrix(fixture_path(name)))


def _poly(*coeffs) -> QPoly:
    return QPoly([Quaternion.coerce(c) for c in coeffs])


def _max_poly_error(got, want) -> float:
    return max((g - w).coeff_norm() for g, w in zip(got, want))


def check_spherical3():
    out = []
    spec, s = load_spec("spherical3.spec")
    table = build_phi(spec)
    want = {2: [-K, I], 3: [-2 * ONE, Quaternion(), -ONE], 4: [3 * K, -3 * I, K, -I]}
    err = max(
        float(np.abs(table.coeffs(k) - np.array([q.to_array() for q in v])).max()) for k, v in want.items()
    )
    out.append(("spherical3/recurrence", err <= 1e-12, f"max error {err:.2e}"))

    reports = zeros(boundary_poly(table, spec, s))
    iso = [r for r in reports if r.kind == NONREAL_ISOLATED]
    sph = [r for r in reports if r.kind == SPHERICAL]
    ok = (
        len(reports) == 2 and len(iso) == 1 and len(sph) == 1
        and (iso[0].representative - I).norm() <= 1e-9
        and abs(sph[0].orbit.re) <= 1e-9 and abs(sph[0].orbit.r - R3) <= 1e-9
    )
    out.append(("spherical3/zeros", ok, f"{len(reports)} zero classes"))

    points = [I, -R3 * J, Quaternion(0, 1.5, R3 / 2, 0)]
    exp = expansion_from_points(spec, s, points, table)
    want_psi = [
        _poly(1.5, 0, 0.5),
        _poly(R3 / 6 * K, (I + R3 * J) / 6, -ONE / 6),
        _poly(-(R3 * K + 3) / 6, -(I + R3 * J) / 6, -ONE / 3),
    ]
    err = _max_poly_error(exp.interpolants, want_psi)
    out.append(("spherical3/interpolants-fixed", err <= 1e-9, f"max error {err:.2e}"))

    exp2 = sample_points_method2(spec, s, initial=R3 * I)
    want_pts = [I, R3 * I, -R3 * I]
    perr = max((p - q).norm() for p, q in zip(exp2.points, want_pts))
    want_psi2 = [
        _poly(1.5, 0, 0.5),
        _poly(-3 * (1 + R3) / 12, -2 * R3 / 12 * I, -(3 + R3) / 12),
        _poly(3 * (R3 - 1) / 12, 2 * R3 / 12 * I, (R3 - 3) / 12),
    ]
    err = _max_poly_error(exp2.interpolants, want_psi2)
    out.append(("spherical3/method2", perr <= 1e-9 and err <= 1e-9, f"points {perr:.2e}, psi {err:.2e}"))
    return out


def check_isolated3():
    out = []
    spec, s = load_spec("isolated3.spec")
    exp = sample_points_method1(spec, s)
    want_pts = [-I - J, -I + 2 * J, -I - 3 * J]
    perr = max((p - q).norm() for p, q in zip(exp.points, want_pts))
    out.append(("isolated3/points", perr <= 1e-9, f"max error {perr:.2e}"))
    want_psi = [
        _poly((7 - K) / 6, J / 6, ONE / 6),
        _poly((4 * K + 2) / 15, -4 * J / 15, -ONE / 15),
        _poly(-(K + 3) / 10, J / 10, -ONE / 10),
    ]
    err = _max_poly_error(exp.interpolants, want_psi)
    out.append(("isolated3/interpolants", err <= 1e-9, f"max error {err:.2e}"))
    exp2 = sample_points_method2(spec, s)
    err2 = _max_poly_error(exp2.interpolants, want_psi)
    out.append(("isolated3/method2", err2 <= 1e-9, f"max error {err2:.2e}"))
    return out


# standard eigenvalues and one zero per orbit of the characteristic polynomial
JACOBI4_EIGENVALUES = [(-1.12826, 0.544285), (-0.208978, 0.611905), (1.03613, 1.13233), (1.3011, 2.0323)]
JACOBI4_ZEROS = [
    Quaternion(-1.12826, -0.378569, 0.22245, -0.321633),
    Quaternion(-0.208978, -0.433043, 0.412505, 0.129384),
    Quaternion(1.03613, 1.08041, 0.0906333, 0.326603),
    Quaternion(1.3011, 1.8469, 0.0828995, 0.843984),
]


def check_jacobi4():
    out = []
    A = load_matrix("jacobi4.mat")
    pairs = right_eigen(A)
    values = [(p.value.w, p.value.x) for p in pairs]
    err = max(abs(a - c) + abs(b - d) for (a, b), (c, d) in zip(values, JACOBI4_EIGENVALUES))
    res = max(eigen_residual(A, p.vector, p.value) for p in pairs)
    out.append(("jacobi4/eigenvalues", err <= 1e-4 and res <= 1e-9, f"value error {err:.2e}, residual {res:.2e}"))
    result = spectrum_check(A)
    zs = [r.representative for r in result.zero_classes]
    ok = len(zs) == 4
    if ok:
        ok = all(
            abs(z.w - w.w) <= 1e-4 and abs(z.norm() - w.norm()) <= 1e-4 for z, w in zip(zs, JACOBI4_ZEROS)
        )
        ok = ok and all(is_similar(z, p.value, 1e-6) for z, p in zip(zs, pairs))
    out.append(("jacobi4/char-poly", ok, f"{len(zs)} zero classes"))
    return out


def random_checks(seed: int, trials: int = 6):
    """Reconstruction, duality and spectrum agreement on seeded random problems."""
    out = []
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        n = int(rng.integers(2, 7))
        family = FAMILIES[t % len(FAMILIES)]
        spec = random_normal_spec(rng, n, family)
        s = random_quaternion(rng)
        table = build_phi(spec)
        exp = sample_points_method1(spec, s, table)
        dual = np.abs(exp.duality() - np.eye(n)[:, :, None] * np.array([1.0, 0, 0, 0])).max()
        worst = 0.0
        for _ in range(10):
            F = rng.standard_normal((n, 4))
            lam = random_quaternion(rng)
            samples = [transform(F, table, s, p) for p in exp.points]
            diff = (transform(F, table, s, lam) - reconstruct(samples, exp, lam)).norm()
            worst = max(worst, diff / transform_scale(F, table, s, lam))
        out.append((f"random/{t}/{family}/N={n}", dual <= 1e-9 and worst <= 1e-8,
                    f"duality {dual:.2e}, reconstruction {worst:.2e}"))
    return out


def run_all(seed: int):
    return check_spherical3() + check_isolated3() + check_jacobi4() + random_checks(seed)

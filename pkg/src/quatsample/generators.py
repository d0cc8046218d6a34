"""Random problem generators for property tests and the ``verify`` command.

Normal boundary-value problems come from matrices ``L`` whose real part
commutes with every imaginary part:

* ``pencil``: ``L = rho T + sigma I`` with real symmetric tridiagonal ``T`` and
  arbitrary quaternions ``rho``, ``sigma``;
* ``imaginary``: ``L = c I + i T1 + j T2 + k T3`` with independent real
  symmetric tridiagonal ``T1..T3``;
* ``spherical``: a pencil with zero-diagonal ``T`` (spectrum symmetric about
  0) and orthogonal pure-imaginary ``rho``, ``sigma``, which forces repeated
  eigenvalue orbits and hence spherical zeros.

The boundary data is then drawn at random and ``a(1)``, ``a(N)`` adjusted so
that ``build_L`` reproduces the chosen matrix.
"""
from __future__ import annotations

import numpy as np

from .bvp import BvpSpec
from .linalg import QMatrix
from .quaternion import Quaternion, inverse, random_quaternion

FAMILIES = ("pencil", "imaginary", "spherical")


def _tridiagonal(rng, n, zero_diag=False, min_off=0.3):
    diag = np.zeros(n) if zero_diag else rng.uniform(-1.5, 1.5, n)
    off = rng.uniform(min_off, 1.5, n - 1) * rng.choice([-1.0, 1.0], n - 1)
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def _sized(rng, dim, low=0.6, high=1.5):
    # random direction with norm bounded away from 0; keeps phi growth moderate
    v = rng.standard_normal(dim)
    return rng.uniform(low, high) * v / np.linalg.norm(v)


def _pure(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def normal_tridiagonal(rng: np.random.Generator, n: int, family: str | None = None) -> QMatrix:
    family = family or FAMILIES[rng.integers(len(FAMILIES))]
    data = np.zeros((n, n, 4))
    if family == "pencil":
        T = _tridiagonal(rng, n)
        rho = _sized(rng, 4)
        sigma = rng.standard_normal(4)
        data = T[:, :, None] * rho + np.eye(n)[:, :, None] * sigma
    elif family == "imaginary":
        data[..., 0] = rng.uniform(-1.0, 1.0) * np.eye(n)
        # only one part needs nonzero off-diagonals; keep all three generic
        for m in (1, 2, 3):
            data[..., m] = _tridiagonal(rng, n, min_off=0.2)
    elif family == "spherical":
        T = _tridiagonal(rng, n, zero_diag=True)
        u = _pure(rng)
        w = np.cross(u, _pure(rng))
        w /= np.linalg.norm(w)
        rho = np.concatenate([[0.0], rng.uniform(0.5, 1.5) * u])
        sigma = np.concatenate([[0.0], rng.uniform(0.5, 1.5) * w])
        shift = rng.uniform(-1.0, 1.0)
        data = T[:, :, None] * rho + np.eye(n)[:, :, None] * sigma
        data[..., 0] += shift * np.eye(n)
    else:
        raise ValueError(f"unknown family {family!r}")
    return QMatrix(data)


def spec_from_matrix(L: QMatrix, rng: np.random.Generator | None = None) -> BvpSpec:
    """A BvpSpec whose operator matrix is ``L`` (tridiagonal symmetric).

    With ``rng`` the end coefficients ``b(0)``, ``b(N)`` and the diagonal
    entries ``a(1)``, ``a(N)`` are randomised and ``h1``, ``h2`` solved for;
    without it ``b(0) = b(N) = 1`` and ``h1 = h2 = 0``.
    """
    n = L.shape[0]
    diag = [L[k, k] for k in range(n)]
    off = [L[k, k + 1] for k in range(n - 1)]
    if rng is None:
        return BvpSpec(n, diag, [Quaternion(1.0)] + off + [Quaternion(1.0)])
    b0 = Quaternion.from_array(_sized(rng, 4))
    bn = Quaternion.from_array(_sized(rng, 4))
    a = list(diag)
    a[0] = diag[0] + 0.5 * random_quaternion(rng)
    a[-1] = (diag[-1] if n > 1 else a[0]) + 0.5 * random_quaternion(rng)
    if n == 1:
        # the single diagonal entry collects both boundary corrections
        h1 = inverse(b0) * (a[0] - diag[0]) * 0.5
        h2 = inverse(bn) * (a[0] - diag[0]) * 0.5
        return BvpSpec(1, a, [b0, bn], h1, h2)
    h1 = inverse(b0) * (a[0] - diag[0])
    h2 = inverse(bn) * (a[-1] - diag[-1])
    return BvpSpec(n, a, [b0] + off + [bn], h1, h2)


def random_normal_spec(rng: np.random.Generator, n: int, family: str | None = None) -> BvpSpec:
    return spec_from_matrix(normal_tridiagonal(rng, n, family), rng)


def random_tridiagonal_symmetric(rng: np.random.Generator, n: int) -> QMatrix:
    """Generic (usually non-normal) tridiagonal symmetric quaternion matrix."""
    data = np.zeros((n, n, 4))
    for k in range(n):
        data[k, k] = rng.standard_normal(4)
    for k in range(n - 1):
        b = rng.standard_normal(4)
        b *= max(1.0, 0.3 / np.linalg.norm(b))
        data[k, k + 1] = data[k + 1, k] = b
    return QMatrix(data)


def random_symmetric(rng: np.random.Generator, n: int, normal: bool) -> QMatrix:
    """Symmetric quaternion matrix, normal by construction or generically not."""
    def sym():
        M = rng.standard_normal((n, n))
        return M + M.T

    if normal:
        S = sym()
        coef = rng.standard_normal((4, 2))
        parts = [coef[m, 0] * S + coef[m, 1] * np.eye(n) for m in range(4)]
        if rng.random() < 0.5:
            # scalar real part commutes with arbitrary symmetric imaginary parts
            parts = [coef[0, 1] * np.eye(n), sym(), sym(), sym()]
        return QMatrix(np.stack(parts, axis=-1))
    parts = [sym() for _ in range(4)]
    return QMatrix(np.stack(parts, axis=-1))


def random_qpoly_coeffs(rng: np.random.Generator, degree: int) -> np.ndarray:
    c = rng.standard_normal((degree + 1, 4))
    # keep the end coefficients away from zero
    for k in (0, degree):
        c[k] *= max(1.0, 0.3 / np.linalg.norm(c[k]))
    return c

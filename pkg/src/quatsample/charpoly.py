"""Characteristic polynomials of tridiagonal symmetric quaternion matrices.

A tridiagonal symmetric ``A`` is the operator matrix of a boundary-value problem
with ``a(k) = A[k, k]``, ``b(k) = A[k, k+1]``, ``b(0) = b(n) = 1`` and
``h1 = h2 = 0``. The boundary polynomial of that problem has a zero on every
eigenvalue orbit of ``A`` and nowhere else, which :func:`spectrum_check`
confirms against the eigenvalues of the complex adjoint.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bvp import BvpSpec, boundary_poly, build_phi
from .errors import NotTridiagonalSymmetric, SpectrumMismatch, ZeroOffDiagonal
from .linalg import QMatrix, right_eigen
from .poly import QPoly, ZeroReport, zeros
from .quaternion import TOL_ZERO, OrbitClass, Quaternion, qnorm

ORBIT_RTOL = 1e-6


@dataclass(frozen=True)
class CharPolyResult:
    poly: QPoly
    zero_classes: tuple[ZeroReport, ...]
    spectrum_classes: tuple[OrbitClass, ...]


def tridiagonal_spec(A) -> BvpSpec:
    A = A if isinstance(A, QMatrix) else QMatrix(A)
    if not A.is_square:
        raise NotTridiagonalSymmetric("matrix is not square")
    n = A.shape[0]
    scale = max(A.frobenius(), 1.0)
    band = np.abs(np.subtract.outer(np.arange(n), np.arange(n))) > 1
    if np.any(qnorm(A.data[band]) > 1e-12 * scale):
        raise NotTridiagonalSymmetric("entries outside the tridiagonal band are nonzero")
    if (A - A.T).frobenius() > 1e-12 * scale:
        raise NotTridiagonalSymmetric("matrix is not symmetric (A != A^T)")
    off = [A[k, k + 1] for k in range(n - 1)]
    for k, b in enumerate(off, start=1):
        if b.norm() <= TOL_ZERO * scale:
            raise ZeroOffDiagonal(f"off-diagonal entry b({k}) vanishes; split the matrix into blocks")
    one = Quaternion(1.0)
    return BvpSpec(n, [A[k, k] for k in range(n)], [one] + off + [one])


def char_poly(A, s=1.0) -> QPoly:
    spec = tridiagonal_spec(A)
    return boundary_poly(build_phi(spec), spec, s)


def _distinct(orbits, tol):
    out: list[OrbitClass] = []
    for o in orbits:
        if not any(o.matches(p, tol) for p in out):
            out.append(o)
    return out


def spectrum_check(A, s=1.0) -> CharPolyResult:
    """Zero classes of the characteristic polynomial versus the standard eigenvalues."""
    A = A if isinstance(A, QMatrix) else QMatrix(A)
    poly = char_poly(A, s)
    reports = zeros(poly)
    spectrum = [OrbitClass(p.value.w, p.value.x) for p in right_eigen(A)]
    tol = ORBIT_RTOL * max(1.0, A.frobenius())
    zero_orbits = _distinct([r.orbit for r in reports], tol)
    eig_orbits = _distinct(spectrum, tol)
    unmatched = list(eig_orbits)
    for orbit in zero_orbits:
        hits = [k for k, e in enumerate(unmatched) if e.matches(orbit, tol)]
        if len(hits) != 1:
            raise SpectrumMismatch(
                f"zero orbit (re={orbit.re:.9g}, r={orbit.r:.9g}) matches {len(hits)} eigenvalue orbits"
            )
        del unmatched[hits[0]]
    if unmatched:
        raise SpectrumMismatch(f"{len(unmatched)} eigenvalue orbit(s) carry no zero of the polynomial")
    return CharPolyResult(poly, tuple(reports), tuple(spectrum))

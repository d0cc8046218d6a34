"""Simple quaternion polynomials ``p(z) = sum_k c_k z^k`` (coefficients on the left).

Zeros are found with the companion-polynomial approach: the real polynomial
``q = conj(p) * p`` of degree ``2n`` has a complex root pair for every
similarity orbit that meets the zero set of ``p``. Each candidate orbit is then
tested by dividing ``p`` by the real quadratic vanishing on that orbit; a zero
remainder means the whole orbit consists of zeros (spherical), otherwise the
remainder ``B z + C`` pins down the single isolated zero ``-B^-1 C``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateInput, QuaternionZeroDivision, RootSolverFailure
from .quaternion import (
    OrbitClass,
    Quaternion,
    _mul4,
    as_qarray,
    hamilton,
    inverse,
    qconj,
    qnorm,
)

REAL_ISOLATED = "real_isolated"
NONREAL_ISOLATED = "nonreal_isolated"
SPHERICAL = "spherical"

TRIM_RTOL = 1e-13
REM_RTOL = 1e-8
EVAL_RTOL = 1e-8
DEDUP_RTOL = 1e-7


class QPoly:
    """Immutable simple quaternion polynomial.

    ``coeffs[k]`` multiplies ``z**k`` from the left. Trailing coefficients that
    are negligible relative to the largest one are dropped, so ``degree`` is the
    index of the last significant coefficient.
    """

    __slots__ = ("_arr", "_tuples")

    def __init__(self, coeffs):
        arr = np.array(as_qarray(coeffs), dtype=float).reshape(-1, 4)
        if arr.shape[0] == 0:
            arr = np.zeros((1, 4))
        norms = qnorm(arr)
        cutoff = TRIM_RTOL * norms.max()
        last = int(np.nonzero(norms > cutoff)[0].max()) if norms.max() > 0 else 0
        self._arr = arr[: last + 1].copy()
        self._arr.setflags(write=False)
        self._tuples = tuple(tuple(float(v) for v in row) for row in self._arr)

    @classmethod
    def monomial_family(cls, coeffs, s) -> "QPoly":
        """``p(z, s) = sum_k c_k s z^k`` for base coefficients ``c_k``."""
        s = Quaternion.coerce(s).to_array()
        return cls(hamilton(as_qarray(coeffs), s))

    # access ---------------------------------------------------------------
    @property
    def array(self) -> np.ndarray:
        return self._arr

    @property
    def coeffs(self) -> tuple[Quaternion, ...]:
        return tuple(Quaternion(*t) for t in self._tuples)

    @property
    def degree(self) -> int:
        return self._arr.shape[0] - 1

    def __len__(self):
        return self._arr.shape[0]

    def __getitem__(self, k) -> Quaternion:
        return Quaternion(*self._tuples[k])

    def is_zero(self) -> bool:
        return not np.any(self._arr)

    def __repr__(self):
        from .textio import format_quaternion

        return "QPoly([" + ", ".join(format_quaternion(c, 8) for c in self.coeffs) + "])"

    # evaluation -----------------------------------------------------------
    def __call__(self, z) -> Quaternion:
        z = Quaternion.coerce(z).as_tuple()
        acc = self._tuples[-1]
        for c in reversed(self._tuples[:-1]):
            acc = _mul4(acc, z)
            acc = (acc[0] + c[0], acc[1] + c[1], acc[2] + c[2], acc[3] + c[3])
        return Quaternion(*acc)

    def evaluate(self, zs: np.ndarray) -> np.ndarray:
        """Vectorised evaluation at an ``(m, 4)`` array of points."""
        zs = np.asarray(zs, dtype=float)
        acc = np.broadcast_to(self._arr[-1], zs.shape).copy()
        for c in self._arr[-2::-1]:
            acc = hamilton(acc, zs) + c
        return acc

    def scale(self, z) -> float:
        """``sum_k |c_k| max(1, |z|)^k``: the natural size of ``p(z)`` for error bounds."""
        rho = max(1.0, Quaternion.coerce(z).norm())
        return float(np.sum(qnorm(self._arr) * rho ** np.arange(len(self))))

    def coeff_norm(self) -> float:
        return float(np.sum(qnorm(self._arr)))

    # algebra --------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        n = max(len(self), len(other))
        out = np.zeros((n, 4))
        out[: len(self)] += self._arr
        out[: len(other)] += other._arr
        return QPoly(out)

    def __sub__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + QPoly(-other._arr)

    def __rmul__(self, q):
        """Left scalar multiple ``q p`` (multiplies every coefficient on the left)."""
        q = Quaternion.coerce(q)
        return QPoly(hamilton(q.to_array(), self._arr))

    def right_scaled(self, s) -> "QPoly":
        """Coefficients ``c_k s``; the zero set is studied in :func:`conjugate_zero_set`."""
        return QPoly(hamilton(self._arr, Quaternion.coerce(s).to_array()))

    def times_power(self, m: int) -> "QPoly":
        """``p(z) z^m``."""
        return QPoly(np.vstack([np.zeros((m, 4)), self._arr]))

    def monic(self) -> "QPoly":
        return inverse(self[self.degree]) * self

    def allclose(self, other, atol: float) -> bool:
        other = other if isinstance(other, QPoly) else QPoly(other)
        n = max(len(self), len(other))
        a = np.zeros((n, 4))
        b = np.zeros((n, 4))
        a[: len(self)] = self._arr
        b[: len(other)] = other._arr
        return bool(np.all(qnorm(a - b) <= atol))


def _as_poly(p) -> QPoly:
    return p if isinstance(p, QPoly) else QPoly(p)


def eval_poly(p, z) -> Quaternion:
    return _as_poly(p)(z)


def divide_real_quadratic(p, u: float, v: float):
    """Divide p on the right by ``z^2 - u z + v``.

    Returns ``(quotient, B, C)`` with ``p = quotient * (z^2 - u z + v) + B z + C``.
    A real quadratic commutes with every quaternion coefficient, so the division
    runs component-wise.
    """
    arr = _as_poly(p).array
    n = arr.shape[0] - 1
    if n < 2:
        b = Quaternion.from_array(arr[1]) if n == 1 else Quaternion()
        return QPoly(np.zeros((1, 4))), b, Quaternion.from_array(arr[0])
    rem = arr[::-1].copy()
    quot = np.zeros((n - 1, 4))
    for i in range(n - 1):
        lead = rem[i].copy()
        quot[i] = lead
        rem[i + 1] += u * lead
        rem[i + 2] -= v * lead
    return QPoly(quot[::-1]), Quaternion.from_array(rem[n - 1]), Quaternion.from_array(rem[n])


def companion_real(p) -> np.ndarray:
    """Real coefficients (ascending) of ``q(x) = sum_j sum_{k+l=j} conj(c_k) c_l x^j``."""
    p = _as_poly(p)
    if p.is_zero():
        raise DegenerateInput("polynomial has no nonzero coefficient")
    if p.degree < 1:
        raise DegenerateInput("constant polynomial has no zeros to seek")
    c = p.array
    n = p.degree
    prod = hamilton(qconj(c)[:, None, :], c[None, :, :])
    q = np.zeros((2 * n + 1, 4))
    for k in range(n + 1):
        q[k : k + n + 1] += prod[k]
    bound = 1e-12 * p.coeff_norm() ** 2
    if np.max(np.abs(q[:, 1:])) > bound:
        raise RootSolverFailure("companion polynomial has a non-negligible imaginary residue")
    return q[:, 0].copy()


@dataclass(frozen=True)
class ZeroReport:
    kind: str
    representative: Quaternion
    orbit: OrbitClass
    # False when the spherical/isolated decision fell close to the threshold
    confident: bool = True

    @property
    def is_spherical(self) -> bool:
        return self.kind == SPHERICAL

    @property
    def is_real(self) -> bool:
        return self.kind == REAL_ISOLATED


# refinement helpers --------------------------------------------------------

def _remainder_vec(p: QPoly, u: float, v: float):
    quot, b, c = divide_real_quadratic(p, u, v)
    return quot, np.concatenate([b.to_array(), c.to_array()])


def _refine_spherical(p: QPoly, re: float, r: float, iters: int = 30):
    """Gauss-Newton on the quadratic-division remainder over ``(u, v) = (2re, re^2+r^2)``."""
    u, v = 2.0 * re, re * re + r * r
    quot, res = _remainder_vec(p, u, v)
    best = (np.linalg.norm(res), u, v)
    for _ in range(iters):
        # d(rem)/du = (S z) mod Q, d(rem)/dv = -(S mod Q), with S the quotient
        _, bu, cu = divide_real_quadratic(quot.times_power(1), u, v)
        _, bv, cv = divide_real_quadratic(quot, u, v)
        jac = np.column_stack(
            [np.concatenate([bu.to_array(), cu.to_array()]), -np.concatenate([bv.to_array(), cv.to_array()])]
        )
        step, *_ = np.linalg.lstsq(jac, -res, rcond=None)
        u, v = u + step[0], v + step[1]
        quot, res = _remainder_vec(p, u, v)
        err = np.linalg.norm(res)
        if err < best[0]:
            best = (err, u, v)
        if np.linalg.norm(step) <= 4e-16 * (1.0 + abs(u) + abs(v)):
            break
    err, u, v = best
    re = u / 2.0
    r2 = v - re * re
    return float(err), float(re), math.sqrt(r2) if r2 > 0 else 0.0


def _jacobian(p: QPoly, z: Quaternion) -> np.ndarray:
    """4x4 real Jacobian of ``z -> p(z)`` via forward-mode Horner."""
    zt = z.as_tuple()
    cols = []
    for d in range(4):
        h = tuple(1.0 if e == d else 0.0 for e in range(4))
        acc = p._tuples[-1]
        dacc = (0.0, 0.0, 0.0, 0.0)
        for c in reversed(p._tuples[:-1]):
            da = _mul4(dacc, zt)
            db = _mul4(acc, h)
            dacc = tuple(x + y for x, y in zip(da, db))
            acc = _mul4(acc, zt)
            acc = tuple(x + y for x, y in zip(acc, c))
        cols.append(dacc)
    return np.array(cols).T


def polish_zero(p, z, iters: int = 40) -> Quaternion:
    """Newton iteration on ``p(z) = 0`` in R^4, keeping the best iterate."""
    p = _as_poly(p)
    z = Quaternion.coerce(z)
    best_z, best_err = z, p(z).norm()
    for _ in range(iters):
        if best_err == 0.0:
            break
        f = p(z).to_array()
        step, *_ = np.linalg.lstsq(_jacobian(p, z), -f, rcond=None)
        z = z + Quaternion.from_array(step)
        err = p(z).norm()
        if err < best_err:
            best_z, best_err = z, err
        if np.linalg.norm(step) <= 4e-16 * (1.0 + z.norm()):
            break
    return best_z


def _refine_real(p: QPoly, x: float, iters: int = 40) -> float:
    arr = p.array
    ks = np.arange(len(arr))
    best_x, best_err = x, qnorm(p(x).to_array())
    for _ in range(iters):
        val = (arr * (x ** ks)[:, None]).sum(axis=0)
        der = (arr[1:] * (ks[1:] * x ** (ks[1:] - 1))[:, None]).sum(axis=0)
        den = float(der @ der)
        if den == 0.0:
            break
        x = x - float(der @ val) / den
        err = qnorm(p(x).to_array())
        if err < best_err:
            best_x, best_err = x, err
        else:
            break
    return best_x


def _candidate_orbits(p: QPoly):
    try:
        roots = np.roots(companion_real(p)[::-1])
    except np.linalg.LinAlgError as exc:
        raise RootSolverFailure(f"companion root finder failed: {exc}") from exc
    if not np.all(np.isfinite(roots)):
        raise RootSolverFailure("companion root finder returned non-finite roots")
    cands: list[tuple[float, float]] = []
    for z in sorted(roots, key=lambda c: (c.real, abs(c.imag))):
        re, r = float(z.real), abs(float(z.imag))
        if any(abs(re - a) + abs(r - b) <= DEDUP_RTOL * (1 + abs(a) + b) for a, b in cands):
            continue
        cands.append((re, r))
    return cands


def _classify(p: QPoly, re: float, r: float):
    """Turn one candidate orbit into a ZeroReport, or None if no zero lives there."""
    tol_rem = REM_RTOL * p.coeff_norm()
    if r <= 1e-6 * (1.0 + abs(re)):
        x = _refine_real(p, re)
        if p(x).norm() <= EVAL_RTOL * p.scale(x):
            x = float(x)
            return ZeroReport(REAL_ISOLATED, Quaternion(x), OrbitClass(x, 0.0))

    _, res0 = _remainder_vec(p, 2.0 * re, re * re + r * r)
    err0 = float(np.linalg.norm(res0))
    err, re_s, r_s = _refine_spherical(p, re, r)
    moved = abs(re_s - re) + abs(r_s - r)
    # clustered double roots of the companion polynomial are only accurate to
    # about sqrt(eps), so allow the refinement a generous step
    if err <= tol_rem and r_s > 0 and moved <= 1e-2 * (1.0 + abs(re) + r):
        confident = bool(err <= 1e-2 * tol_rem)
        return ZeroReport(SPHERICAL, Quaternion(re_s, r_s), OrbitClass(re_s, r_s), confident)

    _, b, c = divide_real_quadratic(p, 2.0 * re, re * re + r * r)
    try:
        z = -(inverse(b) * c)
    except QuaternionZeroDivision:
        return None
    z = polish_zero(p, z)
    if p(z).norm() > EVAL_RTOL * p.scale(z):
        return None
    confident = err0 >= 1e2 * tol_rem
    if z.is_real(1e-12):
        return ZeroReport(REAL_ISOLATED, Quaternion(z.w), OrbitClass(z.w, 0.0), confident)
    return ZeroReport(NONREAL_ISOLATED, z, z.orbit(), confident)


def _sort_key(rep: ZeroReport):
    q = rep.representative
    return (round(q.w, 9), round(rep.orbit.r, 9), q.x, q.y, q.z)


def zeros(p) -> list[ZeroReport]:
    """All zero classes of p: real and non-real isolated zeros plus spherical orbits."""
    p = _as_poly(p)
    if p.is_zero():
        raise DegenerateInput("polynomial has no nonzero coefficient")
    if p.degree < 1:
        raise DegenerateInput("constant polynomial has no zeros to seek")
    reports: list[ZeroReport] = []
    norms = qnorm(p.array)
    m = 0
    while norms[m] <= TRIM_RTOL * norms.max():
        m += 1
    if m:
        # p(z) = p~(z) z^m, so z = 0 plus the zeros of p~
        reports.append(ZeroReport(REAL_ISOLATED, Quaternion(), OrbitClass(0.0, 0.0)))
        p = QPoly(p.array[m:])
        if p.degree < 1:
            return reports
    for rep in _zeros_monic(p.monic()):
        if not any(_same_zero(rep, other) for other in reports):
            reports.append(rep)
    return sorted(reports, key=_sort_key)


def _zeros_monic(p: QPoly, depth: int = 0) -> list[ZeroReport]:
    found = [rep for rep in (_classify(p, re, r) for re, r in _candidate_orbits(p)) if rep is not None]
    spherical: list[ZeroReport] = []
    for rep in found:
        if rep.kind == SPHERICAL and not any(_same_zero(rep, o) for o in spherical):
            spherical.append(rep)
    if spherical and depth < 8:
        # a real quadratic factor is central, so p(z) = g(z) Q(z): divide every
        # spherical factor out and look for the remaining zeros on g
        g = p
        for rep in spherical:
            u, v = 2.0 * rep.orbit.re, rep.orbit.re**2 + rep.orbit.r**2
            for _ in range(max(1, spherical_multiplicity(g, rep.orbit))):
                if g.degree < 2:
                    break
                g = divide_real_quadratic(g, u, v)[0].monic()
        rest = _zeros_monic(g, depth + 1) if g.degree >= 1 else []
        found = spherical + rest
    # spherical orbits first, so an isolated report on the same orbit is dropped
    found.sort(key=lambda rep: rep.kind != SPHERICAL)
    out: list[ZeroReport] = []
    for rep in found:
        if not any(_same_zero(rep, other) for other in out):
            out.append(rep)
    return out


def _same_zero(a: ZeroReport, b: ZeroReport, rtol: float = 1e-7) -> bool:
    tol = rtol * (1.0 + a.orbit.norm())
    if not a.orbit.matches(b.orbit, tol):
        return False
    if a.kind == NONREAL_ISOLATED and b.kind == NONREAL_ISOLATED:
        return (a.representative - b.representative).norm() <= tol
    return True


def conjugate_zero_set(reports: Sequence[ZeroReport], s) -> list[ZeroReport]:
    """Map non-real isolated zeros ``z -> s^-1 z s``; real and spherical entries are kept.

    If ``reports`` are the zeros of ``p(z, s1)`` then the result describes the
    zeros of ``p(z, s2)`` when ``s = s1^-1 s2``.
    """
    s = Quaternion.coerce(s)
    s_inv = inverse(s)
    out = []
    for rep in reports:
        if rep.kind == NONREAL_ISOLATED:
            z = s_inv * rep.representative * s
            out.append(ZeroReport(NONREAL_ISOLATED, z, rep.orbit, rep.confident))
        else:
            out.append(rep)
    return sorted(out, key=_sort_key)


def same_zero_sets(a: Sequence[ZeroReport], b: Sequence[ZeroReport], tol: float) -> bool:
    """Compare two zero-report lists as sets (isolated by point, others by orbit)."""
    if len(a) != len(b):
        return False
    unused = list(b)
    for rep in a:
        for k, other in enumerate(unused):
            if rep.kind != other.kind:
                continue
            if not rep.orbit.matches(other.orbit, tol):
                continue
            if rep.kind == NONREAL_ISOLATED and (rep.representative - other.representative).norm() > tol:
                continue
            del unused[k]
            break
        else:
            return False
    return True


def spherical_multiplicity(p, orbit: OrbitClass, rtol: float = REM_RTOL) -> int:
    """Largest ``e`` such that the orbit's real quadratic ``Q`` divides p as ``Q^e``."""
    p = _as_poly(p).monic()
    u, v = 2.0 * orbit.re, orbit.re**2 + orbit.r**2
    count = 0
    while p.degree >= 2:
        quot, b, c = divide_real_quadratic(p, u, v)
        if (b.norm() + c.norm()) > rtol * p.coeff_norm():
            break
        count += 1
        p = quot.monic()
    return count

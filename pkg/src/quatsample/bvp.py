"""Quaternion three-term boundary-value problems and their sampling expansions.

The difference equation is::

    b(k) x(k+1) + a(k) x(k) + b(k-1) x(k-1) = x(k) lam,   k = 1..N
    x(0) + h1 x(1) = 0,    x(N+1) + h2 x(N) = 0

Its solution with ``x(1) = s`` is ``phi(k, lam, s) = sum_j c(j, k) s lam^j``;
the coefficients ``c(j, k)`` do not depend on ``s`` or ``lam`` and live in a
:class:`PhiTable`. Sample points are zeros of the boundary polynomial
``p_N(lam, s) = phi(N+1) + h2 phi(N)`` chosen so that the vectors
``phi(lam_k, s)`` are mutually orthogonal.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    FirstEntryZero,
    InvalidSampleSet,
    NotInOrbit,
    NotNormal,
    NotSpherical,
    OrbitSelectionFailure,
    QuaternionZeroDivision,
    DimensionMismatch,
    DegenerateInput,
)
from .linalg import QMatrix, inner, is_normal, right_eigen, right_scale, vnorm
from .poly import (
    NONREAL_ISOLATED,
    SPHERICAL,
    QPoly,
    ZeroReport,
    spherical_multiplicity,
    zeros,
)
from .quaternion import (
    TOL_ZERO,
    OrbitClass,
    Quaternion,
    as_qarray,
    hamilton,
    inverse,
    qconj,
    qnorm,
    standardize,
)

TOL_ORTH = 1e-8
TOL_EVAL = 1e-8
ORBIT_TOL = 1e-7


@dataclass(frozen=True)
class BvpSpec:
    """Coefficients ``a(1..N)``, ``b(0..N)`` and boundary constants ``h1``, ``h2``."""

    N: int
    a: tuple[Quaternion, ...]
    b: tuple[Quaternion, ...]
    h1: Quaternion = Quaternion()
    h2: Quaternion = Quaternion()

    def __post_init__(self):
        a = tuple(Quaternion.coerce(q) for q in self.a)
        b = tuple(Quaternion.coerce(q) for q in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "h1", Quaternion.coerce(self.h1))
        object.__setattr__(self, "h2", Quaternion.coerce(self.h2))
        if self.N < 1:
            raise DimensionMismatch("N must be at least 1")
        if len(a) != self.N:
            raise DimensionMismatch(f"a needs {self.N} entries, got {len(a)}")
        if len(b) != self.N + 1:
            raise DimensionMismatch(f"b needs {self.N + 1} entries, got {len(b)}")
        for k, bk in enumerate(b):
            if bk.norm() <= TOL_ZERO:
                raise QuaternionZeroDivision(f"b({k}) must be nonzero")

    def coeff_a(self, k: int) -> Quaternion:
        """``a(k)`` with the 1-based indexing of the recurrence."""
        return self.a[k - 1]


# recurrence ----------------------------------------------------------------

class PhiTable:
    """Coefficients ``c(j, k)`` with ``phi(k, lam, s) = sum_j c(j, k) s lam^j``.

    Row ``k`` runs over ``0..N+1``; row 0 holds ``-h1`` so that
    ``phi(0, lam, s) = -h1 s``.
    """

    def __init__(self, c: np.ndarray, spec: BvpSpec):
        self.c = c
        self.c.setflags(write=False)
        self.spec = spec
        self._b_inv = [inverse(b).to_array() for b in spec.b]

    @property
    def N(self) -> int:
        return self.spec.N

    def coeffs(self, k: int) -> np.ndarray:
        """``(k, 4)`` array ``c(0..k-1, k)`` (row 0 has a single constant)."""
        return self.c[k, : max(k, 1)]

    def phi_poly(self, k: int, s) -> QPoly:
        s = Quaternion.coerce(s).to_array()
        return QPoly(hamilton(self.coeffs(k), s))

    def values(self, lam, s) -> np.ndarray:
        """``phi(k, lam, s)`` for ``k = 0..N+1`` as an ``(N+2, 4)`` array."""
        # run the recurrence on values; evaluating the expanded coefficients
        # cancels badly once they grow large
        spec = self.spec
        lam = Quaternion.coerce(lam).to_array()
        s = Quaternion.coerce(s).to_array()
        out = np.zeros((self.N + 2, 4))
        out[0] = hamilton((-spec.h1).to_array(), s)
        out[1] = s
        for k in range(1, self.N + 1):
            rhs = (
                hamilton(out[k], lam)
                - hamilton(spec.coeff_a(k).to_array(), out[k])
                - hamilton(spec.b[k - 1].to_array(), out[k - 1])
            )
            out[k + 1] = hamilton(self._b_inv[k], rhs)
        return out

    def vector(self, lam, s) -> np.ndarray:
        """The solution vector ``(phi(1), ..., phi(N))``."""
        return self.values(lam, s)[1 : self.N + 1]

    def scale(self, k: int, s, lam) -> float:
        rho = max(1.0, Quaternion.coerce(lam).norm())
        s_norm = Quaternion.coerce(s).norm()
        norms = qnorm(self.c[k]) * s_norm
        return float(np.sum(norms * rho ** np.arange(len(norms))))


def build_phi(spec: BvpSpec) -> PhiTable:
    """Run the recurrence on coefficient arrays.

    ``phi(k) lam = sum_j c(j, k) s lam^(j+1)``, so right multiplication by
    ``lam`` is an index shift and every other factor multiplies on the left.
    """
    n = spec.N
    c = np.zeros((n + 2, n + 1, 4))
    c[0, 0] = (-spec.h1).to_array()
    c[1, 0] = (1.0, 0.0, 0.0, 0.0)
    for k in range(1, n + 1):
        shifted = np.zeros((n + 1, 4))
        shifted[1:] = c[k, :-1]
        rhs = shifted - hamilton(spec.coeff_a(k).to_array(), c[k]) - hamilton(spec.b[k - 1].to_array(), c[k - 1])
        c[k + 1] = hamilton(inverse(spec.b[k]).to_array(), rhs)
    return PhiTable(c, spec)


def boundary_poly(table: PhiTable, spec: BvpSpec, s) -> QPoly:
    """``p_N(lam, s) = phi(N+1, lam, s) + h2 phi(N, lam, s)`` as a QPoly in lam."""
    s = Quaternion.coerce(s)
    if s.norm() <= TOL_ZERO:
        raise QuaternionZeroDivision("s must be nonzero")
    n = spec.N
    base = table.c[n + 1] + hamilton(spec.h2.to_array(), table.c[n])
    return QPoly(hamilton(base, s.to_array()))


def build_L(spec: BvpSpec) -> QMatrix:
    n = spec.N
    data = np.zeros((n, n, 4))
    for k in range(1, n + 1):
        data[k - 1, k - 1] = spec.coeff_a(k).to_array()
    data[0, 0] -= (spec.b[0] * spec.h1).to_array()
    data[n - 1, n - 1] -= (spec.b[n] * spec.h2).to_array()
    for k in range(1, n):
        data[k - 1, k] = data[k, k - 1] = spec.b[k].to_array()
    return QMatrix(data)


def padded_solution(spec: BvpSpec, x) -> np.ndarray:
    """Extend ``x(1..N)`` by the boundary values ``x(0) = -h1 x(1)``, ``x(N+1) = -h2 x(N)``."""
    x = as_qarray(x).reshape(-1, 4)
    x0 = hamilton((-spec.h1).to_array(), x[0])
    xn1 = hamilton((-spec.h2).to_array(), x[-1])
    return np.vstack([x0, x, xn1])


def recurrence_residual(spec: BvpSpec, x_full: np.ndarray, lam) -> float:
    """Largest pointwise defect of the difference equation on a padded sequence."""
    lam = Quaternion.coerce(lam).to_array()
    worst = 0.0
    for k in range(1, spec.N + 1):
        lhs = (
            hamilton(spec.b[k].to_array(), x_full[k + 1])
            + hamilton(spec.coeff_a(k).to_array(), x_full[k])
            + hamilton(spec.b[k - 1].to_array(), x_full[k - 1])
        )
        worst = max(worst, float(qnorm(lhs - hamilton(x_full[k], lam))))
    return worst


# sampling expansions -------------------------------------------------------

@dataclass(frozen=True)
class SamplingExpansion:
    s: Quaternion
    points: tuple[Quaternion, ...]
    basis: tuple[np.ndarray, ...]
    interpolants: tuple[QPoly, ...]
    method: str = "points"

    @property
    def N(self) -> int:
        return len(self.points)

    def gram(self) -> np.ndarray:
        """``(N, N, 4)`` array of inner products between basis vectors."""
        B = np.stack(self.basis)
        return hamilton(qconj(B)[:, None, :, :], B[None, :, :, :]).sum(axis=2)

    def duality(self) -> np.ndarray:
        """``psi_k(lam_j)`` as an ``(N, N, 4)`` array indexed ``[j, k]``."""
        return np.stack([[psi(lam).to_array() for psi in self.interpolants] for lam in self.points])

    def psi_sum(self) -> QPoly:
        total = self.interpolants[0]
        for psi in self.interpolants[1:]:
            total = total + psi
        return total

    def __call__(self, samples, lam) -> Quaternion:
        return reconstruct(samples, self, lam)


def inner_product_poly(table: PhiTable, s, vec) -> QPoly:
    """``lam -> <vec, phi(lam, s)>`` as a QPoly of degree at most N-1."""
    vec = as_qarray(vec).reshape(-1, 4)
    s = Quaternion.coerce(s).to_array()
    n = table.N
    weights = qconj(vec)
    coeffs = np.zeros((n, 4))
    for m in range(1, n + 1):
        coeffs += hamilton(weights[m - 1], hamilton(table.c[m, :n], s))
    return QPoly(coeffs)


def interpolants(basis: Sequence[np.ndarray], table: PhiTable, s) -> list[QPoly]:
    """``psi_k(lam, s) = <phi(lam_k, s), phi(lam, s)> / |phi(lam_k, s)|^2``."""
    out = []
    for vec in basis:
        out.append((1.0 / vnorm(vec) ** 2) * inner_product_poly(table, s, vec))
    return out


def _sort_points(points, basis=None):
    """Order by (Re, |Im|, axis) with positive axis directions first."""
    if basis is None:
        basis = [None] * len(points)

    def key(item):
        q = item[0]
        std = standardize(q)
        r = q.imag_norm()
        axis = tuple(-round(c / r, 9) for c in q.imag) if r > 0 else (0.0, 0.0, 0.0)
        return (round(std.w, 9), round(std.x, 9), axis)

    order = sorted(zip(points, basis), key=key)
    return [p for p, _ in order], [b for _, b in order]


def _right_eigen_operator(L: QMatrix, lam) -> np.ndarray:
    """Real ``4N x 4N`` matrix of the map ``x -> L x - x lam``."""
    n = L.shape[0]
    unit = np.eye(4)
    left = hamilton(L.data[:, :, None, :], unit)  # [i, j, in, out]
    M = left.transpose(0, 3, 1, 2).reshape(4 * n, 4 * n)
    right = hamilton(unit, Quaternion.coerce(lam).to_array())  # [in, out]
    return M - np.kron(np.eye(n), right.T)


def eigen_phi(L: QMatrix, table: PhiTable, lam, s, rtol: float = 1e-7) -> np.ndarray:
    """``phi(lam, s)`` for an eigenvalue ``lam`` of ``L``, via a null vector of ``L x - x lam``.

    The forward recurrence loses accuracy as ``phi`` grows, which spoils the
    orthogonality of the basis; the singular-vector route is backward stable.
    Falls back to the recurrence if the two disagree.
    """
    s = Quaternion.coerce(s)
    direct = table.vector(lam, s)
    _, sig, vt = np.linalg.svd(_right_eigen_operator(L, lam))
    d = max(1, int(np.sum(sig <= rtol * max(1.0, sig[0]))))
    null = vt[-d:].T
    coef, *_ = np.linalg.lstsq(null[:4], s.to_array(), rcond=None)
    x = (null @ coef).reshape(-1, 4)
    if np.linalg.norm(x - direct) > 1e-6 * np.linalg.norm(direct):
        return direct
    return x


def expansion_from_points(spec: BvpSpec, s, points, table: PhiTable | None = None,
                          method: str = "points", basis=None) -> SamplingExpansion:
    """Build and validate the expansion for a given set of sample points.

    Every point must be a zero of ``p_N(., s)`` and the vectors
    ``phi(lam_k, s)`` must be mutually orthogonal.
    """
    table = table or build_phi(spec)
    s = Quaternion.coerce(s)
    points = [Quaternion.coerce(p) for p in points]
    if len(points) != spec.N:
        raise InvalidSampleSet(f"need exactly {spec.N} sample points, got {len(points)}")
    p_n = boundary_poly(table, spec, s)
    for lam in points:
        if p_n(lam).norm() > TOL_EVAL * p_n.scale(lam):
            raise InvalidSampleSet(f"{lam} is not a zero of the boundary polynomial")
    if basis is None:
        L = build_L(spec)
        basis = [eigen_phi(L, table, lam, s) for lam in points]
    for (j, u), (k, v) in itertools.combinations(enumerate(basis), 2):
        if inner(u, v).norm() > TOL_ORTH * vnorm(u) * vnorm(v):
            raise InvalidSampleSet(f"basis vectors {j + 1} and {k + 1} are not orthogonal")
    return SamplingExpansion(s, tuple(points), tuple(basis), tuple(interpolants(basis, table, s)), method)


def _require_normal(L: QMatrix):
    if not is_normal(L, tol=1e-9):
        raise NotNormal("the operator L of this boundary-value problem is not normal")


def sample_points_method1(spec: BvpSpec, s, table: PhiTable | None = None) -> SamplingExpansion:
    """Sample points from an orthonormal eigenbasis of L.

    With eigenpairs ``(alpha_k, u_k)`` set ``t_k = u_1k^-1 s``; then
    ``lam_k = t_k^-1 alpha_k t_k`` and ``phi(lam_k, s) = u_k t_k``.
    """
    table = table or build_phi(spec)
    s = Quaternion.coerce(s)
    if s.norm() <= TOL_ZERO:
        raise QuaternionZeroDivision("s must be nonzero")
    L = build_L(spec)
    _require_normal(L)
    points, basis = [], []
    for pair in right_eigen(L):
        u = pair.vector
        first = Quaternion.from_array(u[0])
        if first.norm() <= 1e-10 * vnorm(u):
            raise FirstEntryZero(f"eigenvector for {pair.value} has a vanishing first entry")
        t = inverse(first) * s
        points.append(inverse(t) * pair.value * t)
        basis.append(right_scale(u, t))
    points, basis = _sort_points(points, basis)
    return expansion_from_points(spec, s, points, table, method="eigen", basis=basis)


# orbit search --------------------------------------------------------------

def _icosphere(levels: int = 2) -> np.ndarray:
    phi = (1.0 + 5.0**0.5) / 2.0
    verts = [(-1, phi, 0), (1, phi, 0), (-1, -phi, 0), (1, -phi, 0), (0, -1, phi), (0, 1, phi),
             (0, -1, -phi), (0, 1, -phi), (phi, 0, -1), (phi, 0, 1), (-phi, 0, -1), (-phi, 0, 1)]
    faces = [(0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11), (1, 5, 9), (5, 11, 4),
             (11, 10, 2), (10, 7, 6), (7, 1, 8), (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8),
             (3, 8, 9), (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1)]
    pts = [np.array(v, dtype=float) / np.linalg.norm(v) for v in verts]
    for _ in range(levels):
        cache: dict[tuple[int, int], int] = {}

        def midpoint(i, j):
            key = (min(i, j), max(i, j))
            if key not in cache:
                m = pts[i] + pts[j]
                pts.append(m / np.linalg.norm(m))
                cache[key] = len(pts) - 1
            return cache[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new_faces
    return np.array(pts)


def _orbit_point(orbit: OrbitClass, axis) -> Quaternion:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return Quaternion(orbit.re, *(orbit.r * axis))


def _in_orbit_solutions(poly: QPoly, orbit: OrbitClass):
    """Points of the orbit where poly vanishes: a list, or None meaning 'all of it'."""
    if poly.is_zero() or poly.coeff_norm() <= 1e-12:
        return None
    if poly.degree == 0:
        return []
    try:
        reports = zeros(poly)
    except DegenerateInput:
        return []
    tol = ORBIT_TOL * (1.0 + orbit.norm())
    out = []
    for rep in reports:
        if not rep.orbit.matches(orbit, tol):
            continue
        if rep.kind == SPHERICAL:
            return None
        if rep.kind == NONREAL_ISOLATED:
            out.append(rep.representative)
    return out


def _polish_in_orbit(L: QMatrix, table: PhiTable, s, orbit: OrbitClass, lam: Quaternion, vecs) -> Quaternion:
    """Gauss-Newton on the orbit's 2-sphere for ``<v, phi(lam)> = 0`` for all ``v`` in ``vecs``.

    Every point of a spherical orbit is an eigenvalue of ``L``, so ``eigen_phi``
    stays accurate along the whole search.
    """
    if orbit.r == 0.0:
        return lam
    axis = np.asarray(lam.imag, dtype=float) / max(lam.imag_norm(), 1e-300)

    def residual(ax):
        phi = eigen_phi(L, table, _orbit_point(orbit, ax), s)
        return np.concatenate([hamilton(qconj(v), phi).sum(axis=0) for v in vecs])

    g = residual(axis)
    for _ in range(8):
        # tangent frame at the current axis
        _, _, vt = np.linalg.svd(axis[None, :])
        frame = vt[1:]
        h = 1e-7
        J = np.column_stack([(residual(axis + h * t) - g) / h for t in frame])
        step, *_ = np.linalg.lstsq(J, -g, rcond=None)
        trial = axis + step @ frame
        trial /= np.linalg.norm(trial)
        g_trial = residual(trial)
        if np.linalg.norm(g_trial) >= np.linalg.norm(g):
            break
        axis, g = trial, g_trial
        if np.linalg.norm(step) < 1e-14:
            break
    return _orbit_point(orbit, axis)


def _orthogonal_in_orbit(table: PhiTable, L: QMatrix, s, orbit: OrbitClass,
                         chosen: list[Quaternion]) -> Quaternion:
    """A point of the orbit whose phi-vector is orthogonal to those of ``chosen``."""
    vecs = [eigen_phi(L, table, c, s) for c in chosen]
    polys = [inner_product_poly(table, s, v) for v in vecs]
    scale = [vnorm(v) for v in vecs]

    def ok(lam):
        phi = eigen_phi(L, table, lam, s)
        size = vnorm(phi)
        return all(inner(v, phi).norm() <= TOL_ORTH * n * size for v, n in zip(vecs, scale))

    def fresh(lam):
        return all((lam - c).norm() > 1e-6 * (1.0 + orbit.norm()) for c in chosen)

    candidates = None
    for poly in polys:
        sols = _in_orbit_solutions(poly, orbit)
        if sols is None:
            continue
        candidates = sols
        break
    if candidates is None:
        # every constraint holds on the whole orbit; take any unused point
        for axis in np.eye(3):
            lam = _orbit_point(orbit, axis)
            if fresh(lam):
                return lam
    for lam in candidates or []:
        lam = _polish_in_orbit(L, table, s, orbit, lam, vecs)
        if fresh(lam) and ok(lam):
            return lam
    lam = _orbit_grid_search(table, s, orbit, polys, fresh)
    lam = _polish_in_orbit(L, table, s, orbit, lam, vecs)
    if not (fresh(lam) and ok(lam)):
        raise OrbitSelectionFailure(
            f"no orthogonal sample point found in orbit (re={orbit.re:.6g}, r={orbit.r:.6g})"
        )
    return lam


def _orbit_grid_search(table, s, orbit, polys, fresh) -> Quaternion:
    """Minimise the summed squared constraint polynomials over an icosphere grid."""
    grid = _icosphere(2)

    def cost(axis):
        lam = _orbit_point(orbit, axis)
        return sum(p(lam).norm2() / max(p.coeff_norm(), 1e-300) ** 2 for p in polys)

    order = sorted(range(len(grid)), key=lambda t: cost(grid[t]))
    best_lam, best_cost = None, np.inf
    for t in order[:8]:
        axis = grid[t].copy()
        step = 0.1
        best = cost(axis)
        # coordinate descent on the sphere, shrinking the step
        while step > 1e-12:
            improved = False
            for d in range(3):
                for sign in (1.0, -1.0):
                    trial = axis.copy()
                    trial[d] += sign * step
                    trial /= np.linalg.norm(trial)
                    c = cost(trial)
                    if c < best:
                        axis, best, improved = trial, c, True
            if not improved:
                step *= 0.5
        lam = _orbit_point(orbit, axis)
        if fresh(lam) and best < best_cost:
            best_lam, best_cost = lam, best
    if best_lam is None:
        raise OrbitSelectionFailure(f"no fresh point found in orbit (re={orbit.re:.6g}, r={orbit.r:.6g})")
    return best_lam


def _fill_orbit(table, L, s, orbit: OrbitClass, count: int, seed: Quaternion) -> list[Quaternion]:
    chosen = [seed]
    while len(chosen) < count:
        chosen.append(_orthogonal_in_orbit(table, L, s, orbit, chosen))
    return chosen


def _spherical_counts(p_n: QPoly, reports: list[ZeroReport], N: int) -> dict[int, int]:
    """How many sample points each spherical orbit must hold."""
    sph = [k for k, rep in enumerate(reports) if rep.kind == SPHERICAL]
    remaining = N - (len(reports) - len(sph))
    if not sph:
        return {}
    if len(sph) == 1:
        return {sph[0]: remaining}
    # a factor Q^e of p_N carries 2e sample points
    counts = {k: 2 * spherical_multiplicity(p_n, reports[k].orbit) for k in sph}
    if sum(counts.values()) != remaining:
        raise OrbitSelectionFailure("could not apportion sample points among spherical orbits")
    return counts


def sample_points_method2(spec: BvpSpec, s, initial=None, table: PhiTable | None = None) -> SamplingExpansion:
    """Sample points from the zeros of the boundary polynomial, without eigenvectors.

    Isolated zeros are used as they are. Each spherical orbit needing ``m``
    points is filled greedily: start from ``initial`` (if it lies on the orbit)
    or the orbit's complex representative, then repeatedly solve the
    inner-product polynomial equations for a new point on the orbit.
    """
    table = table or build_phi(spec)
    s = Quaternion.coerce(s)
    L = build_L(spec)
    _require_normal(L)
    p_n = boundary_poly(table, spec, s)
    reports = zeros(p_n)
    counts = _spherical_counts(p_n, reports, spec.N)
    points = []
    for k, rep in enumerate(reports):
        if rep.kind != SPHERICAL:
            points.append(rep.representative)
            continue
        seed = rep.representative
        if initial is not None and rep.orbit.contains(initial, ORBIT_TOL * (1.0 + rep.orbit.norm())):
            seed = Quaternion.coerce(initial)
        points += _fill_orbit(table, L, s, rep.orbit, counts[k], seed)
    if len(points) != spec.N:
        raise OrbitSelectionFailure(f"found {len(points)} sample points, expected {spec.N}")
    points, _ = _sort_points(points)
    return expansion_from_points(spec, s, points, table, method="polynomial")


def alternate_expansion(exp: SamplingExpansion, spec: BvpSpec, table: PhiTable,
                        orbit: OrbitClass, seed) -> SamplingExpansion:
    """Another valid expansion obtained by re-choosing the points on one spherical orbit."""
    seed = Quaternion.coerce(seed)
    tol = ORBIT_TOL * (1.0 + orbit.norm())
    p_n = boundary_poly(table, spec, exp.s)
    if not any(rep.kind == SPHERICAL and rep.orbit.matches(orbit, tol) for rep in zeros(p_n)):
        raise NotSpherical(f"orbit (re={orbit.re:.6g}, r={orbit.r:.6g}) is not a spherical zero")
    if not orbit.contains(seed, tol):
        raise NotInOrbit(f"seed {seed} does not lie on the orbit")
    inside = [lam for lam in exp.points if orbit.contains(lam, tol)]
    outside = [lam for lam in exp.points if not orbit.contains(lam, tol)]
    if len(inside) <= 1:
        new = [seed]
    else:
        new = _fill_orbit(table, build_L(spec), exp.s, orbit, len(inside), seed)
    points = outside + new
    points, _ = _sort_points(points)
    return expansion_from_points(spec, exp.s, points, table, method="alternate")


# transform and reconstruction ----------------------------------------------

def transform(F, table: PhiTable, s, lam) -> Quaternion:
    """``f_s(lam) = sum_k conj(F(k)) phi(k, lam, s)``."""
    F = as_qarray(F).reshape(-1, 4)
    if F.shape[0] != table.N:
        raise DimensionMismatch(f"F needs {table.N} entries, got {F.shape[0]}")
    phi = table.vector(lam, s)
    return Quaternion.from_array(hamilton(qconj(F), phi).sum(axis=0))


def reconstruct(samples, exp: SamplingExpansion, lam) -> Quaternion:
    """``sum_k f_s(lam_k) psi_k(lam, s)`` with the samples on the left."""
    samples = as_qarray(samples).reshape(-1, 4)
    if samples.shape[0] != exp.N:
        raise DimensionMismatch(f"need {exp.N} samples, got {samples.shape[0]}")
    total = np.zeros(4)
    for f, psi in zip(samples, exp.interpolants):
        total += hamilton(f, psi(lam).to_array())
    return Quaternion.from_array(total)


def transform_scale(F, table: PhiTable, s, lam) -> float:
    """Error scale for comparing transform and reconstruction at one point."""
    F = as_qarray(F).reshape(-1, 4)
    return float(qnorm(F).sum()) * max(table.scale(k, s, lam) for k in range(1, table.N + 1))

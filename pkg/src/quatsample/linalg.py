"""Quaternion matrices, the Hilbert space H^N and right eigenvalues.

Vectors are ``(N, 4)`` float arrays; matrices are :class:`QMatrix` wrappers
around ``(rows, cols, 4)`` arrays. The inner product is ``<x, y> = x* y``,
conjugate-linear in the first slot and right-linear in the second.

Right eigenvalues come from the complex adjoint ``chi_A`` (LAPACK Hessenberg
QR through :func:`numpy.linalg.eig`); eigenvectors are rebuilt from null
vectors of ``chi_A - mu I`` and accepted only if the quaternion residual
``A x - x mu`` is small.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DependentInput,
    DimensionMismatch,
    EigenSolverFailure,
    NotSymmetric,
    RecoveryFailure,
)
from .quaternion import Quaternion, as_qarray, hamilton, qconj, qnorm

TOL_EIG = 1e-9
TOL_ORTH = 1e-8
TOL_DEP = 1e-10


class QMatrix:
    __slots__ = ("data",)

    def __init__(self, data):
        if isinstance(data, QMatrix):
            arr = data.data.copy()
        elif isinstance(data, np.ndarray):
            arr = np.array(data, dtype=float)
        else:
            rows = [as_qarray(row) for row in data]
            if not rows or any(r.shape != rows[0].shape for r in rows):
                raise DimensionMismatch("matrix rows must have equal length")
            arr = np.stack(rows)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise DimensionMismatch(f"expected a (rows, cols, 4) array, got shape {arr.shape}")
        self.data = arr

    @classmethod
    def from_parts(cls, l0, l1=None, l2=None, l3=None) -> "QMatrix":
        l0 = np.asarray(l0, dtype=float)
        parts = [l0] + [np.zeros_like(l0) if p is None else np.asarray(p, dtype=float) for p in (l1, l2, l3)]
        return cls(np.stack(parts, axis=-1))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.from_parts(np.eye(n))

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        return Quaternion.from_array(self.data[i, j])

    def rows(self) -> list[list[Quaternion]]:
        return [[Quaternion.from_array(q) for q in row] for row in self.data]

    def parts(self) -> tuple[np.ndarray, ...]:
        """Real matrices ``L0..L3`` with ``A = L0 + i L1 + j L2 + k L3``."""
        return tuple(self.data[..., m].copy() for m in range(4))

    @property
    def H(self) -> "QMatrix":
        return QMatrix(qconj(self.data.transpose(1, 0, 2)))

    @property
    def T(self) -> "QMatrix":
        return QMatrix(self.data.transpose(1, 0, 2).copy())

    def frobenius(self) -> float:
        return float(np.sqrt(np.sum(self.data**2)))

    def __add__(self, other):
        return QMatrix(self.data + _mat(other).data)

    def __sub__(self, other):
        return QMatrix(self.data - _mat(other).data)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.shape[1] != other.shape[0]:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            return QMatrix(hamilton(self.data[:, :, None, :], other.data[None, :, :, :]).sum(axis=1))
        vec = np.asarray(other, dtype=float)
        if vec.shape != (self.shape[1], 4):
            raise DimensionMismatch(f"cannot multiply {self.shape} matrix by vector of shape {vec.shape}")
        return hamilton(self.data, vec[None, :, :]).sum(axis=1)

    def __repr__(self):
        return f"QMatrix(shape={self.shape})"


def _mat(a) -> QMatrix:
    return a if isinstance(a, QMatrix) else QMatrix(a)


def _vec(x) -> np.ndarray:
    return as_qarray(x).reshape(-1, 4)


def right_scale(x, alpha) -> np.ndarray:
    """Vector times quaternion scalar on the right, ``x alpha``."""
    return hamilton(_vec(x), Quaternion.coerce(alpha).to_array())


def inner(x, y) -> Quaternion:
    x, y = _vec(x), _vec(y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"vectors of length {len(x)} and {len(y)}")
    return Quaternion.from_array(hamilton(qconj(x), y).sum(axis=0))


def vnorm(x) -> float:
    return float(np.sqrt(np.sum(_vec(x) ** 2)))


def is_normal(A, tol: float = 1e-10) -> bool:
    A = _mat(A)
    if not A.is_square:
        raise DimensionMismatch("normality needs a square matrix")
    comm = A @ A.H - A.H @ A
    return comm.frobenius() <= tol * A.frobenius() ** 2


def is_symmetric(A, tol: float = 1e-12) -> bool:
    A = _mat(A)
    return A.is_square and (A - A.T).frobenius() <= tol * A.frobenius()


def normality_by_parts(A, tol: float = 1e-10) -> bool:
    """Normality test for symmetric A: the real part must commute with each imaginary part."""
    A = _mat(A)
    if not A.is_square:
        raise DimensionMismatch("normality needs a square matrix")
    scale = A.frobenius()
    if (A - A.T).frobenius() > tol * scale:
        raise NotSymmetric("decomposition criterion applies to symmetric matrices only")
    l0, *rest = A.parts()
    return all(np.linalg.norm(l0 @ lm - lm @ l0) <= tol * scale**2 for lm in rest)


def complex_adjoint(A) -> np.ndarray:
    """``[[A1, A2], [-conj(A2), conj(A1)]]`` for ``A = A1 + A2 j``."""
    A = _mat(A)
    if not A.is_square:
        raise DimensionMismatch("complex adjoint needs a square matrix")
    w, x, y, z = A.parts()
    a1 = w + 1j * x
    a2 = y + 1j * z
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


def _from_chi_vector(col: np.ndarray) -> np.ndarray:
    """Quaternion vector ``u - conj(v) j`` for a chi_A eigenvector ``(u; v)``."""
    n = col.shape[0] // 2
    u, v = col[:n], col[n:]
    return np.stack([u.real, u.imag, -v.real, v.imag], axis=-1)


def gram_schmidt(vs: Sequence, tol_dep: float = TOL_DEP) -> list[np.ndarray]:
    """Orthonormalise with right scalars: ``v <- v - sum u_i <u_i, v>``.

    Runs the projection twice per vector for stability. Raises DependentInput
    (1-based index) when a residual collapses relative to the input's norm.
    """
    out: list[np.ndarray] = []
    for idx, v in enumerate(vs, start=1):
        w = _vec(v).copy()
        size = vnorm(w)
        for _ in range(2):
            for u in out:
                w = w - right_scale(u, inner(u, w))
        norm = vnorm(w)
        if size == 0.0 or norm <= tol_dep * size:
            raise DependentInput(idx)
        out.append(w / norm)
    return out


@dataclass(frozen=True)
class EigenPair:
    value: Quaternion
    vector: np.ndarray

    def residual(self, A) -> float:
        A = _mat(A)
        return vnorm(A @ self.vector - right_scale(self.vector, self.value))


def eigen_residual(A, vector, value) -> float:
    A = _mat(A)
    return vnorm(A @ _vec(vector) - right_scale(vector, value))


def _standard_values(mu: np.ndarray, scale: float) -> list[complex]:
    """Greedy nearest-conjugate pairing of chi_A eigenvalues; one value per pair."""
    left = sorted(mu, key=lambda c: -c.imag)
    out = []
    while left:
        a = left.pop(0)
        k = min(range(len(left)), key=lambda t: abs(left[t] - a.conjugate()))
        b = left.pop(k)
        if abs(b - a.conjugate()) > 1e-6 * scale:
            raise EigenSolverFailure("complex adjoint spectrum is not closed under conjugation")
        re = 0.5 * (a.real + b.real)
        im = 0.5 * (abs(a.imag) + abs(b.imag))
        if im <= 1e-8 * scale:
            im = 0.0
        out.append(complex(re, im))
    return sorted(out, key=lambda c: (round(c.real, 9), c.imag))


def _clusters(values: list[complex], tol: float) -> list[list[complex]]:
    groups: list[list[complex]] = []
    for v in values:
        for g in groups:
            if abs(g[0] - v) <= tol:
                g.append(v)
                break
        else:
            groups.append([v])
    return groups


def _phase_fix(x: np.ndarray, real_value: bool) -> np.ndarray:
    """Normalise to unit length and rotate the first significant entry.

    Convention (not dictated by the theory): for a non-real eigenvalue the
    complex part of the first significant entry is made real and positive
    using a complex unit, which keeps the eigenvalue; for a real eigenvalue the
    whole entry is made real and positive.
    """
    x = x / vnorm(x)
    norms = qnorm(x)
    first = int(np.argmax(norms > 1e-8 * norms.max()))
    w, xi, _, _ = x[first]
    if real_value:
        e = Quaternion.from_array(x[first])
        return right_scale(x, e.conj() / e.norm())
    mag = np.hypot(w, xi)
    if mag <= 1e-8 * norms[first]:
        return x
    return right_scale(x, Quaternion(w / mag, -xi / mag))


def _orthonormalise_cluster(vecs: list[np.ndarray], count: int, real_value: bool) -> list[np.ndarray]:
    """Pick ``count`` orthonormal eigenvectors from candidates sharing one eigenvalue.

    For a real eigenvalue any right quaternion combination stays an
    eigenvector; for a non-real one only complex coefficients do, so the
    projection keeps just the complex part of each inner product.
    """
    out: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        size = vnorm(w)
        for _ in range(2):
            for u in out:
                c = inner(u, w)
                if not real_value:
                    c = Quaternion(c.w, c.x)
                w = w - right_scale(u, c)
        if vnorm(w) > 1e-6 * size:
            out.append(w / vnorm(w))
        if len(out) == count:
            break
    return out


def right_eigen(A, tol_eig: float = TOL_EIG) -> list[EigenPair]:
    """Standard right eigenvalues of A with unit eigenvectors.

    Returns exactly n pairs sorted by (real part, imaginary part). Repeated
    standard values get orthonormal eigenvectors within their eigenspace.
    """
    A = _mat(A)
    if not A.is_square:
        raise DimensionMismatch("eigenvalues need a square matrix")
    n = A.shape[0]
    chi = complex_adjoint(A)
    if not np.all(np.isfinite(chi)):
        raise EigenSolverFailure("matrix has non-finite entries")
    try:
        mu = np.linalg.eigvals(chi)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverFailure(f"QR iteration failed: {exc}") from exc
    norm_a = A.frobenius()
    scale = max(1.0, norm_a)
    values = _standard_values(list(mu), scale)

    pairs: list[EigenPair] = []
    eye = np.eye(2 * n)
    for group in _clusters(values, 1e-8 * scale):
        m = len(group)
        value = complex(np.mean([g.real for g in group]), np.mean([g.imag for g in group]))
        real_value = value.imag == 0.0
        _, sing, vh = np.linalg.svd(chi - value * eye)
        need = 2 * m if real_value else m
        basis = vh[-need:].conj()
        cands = [_from_chi_vector(col) for col in basis]
        vecs = _orthonormalise_cluster(cands, m, real_value)
        if len(vecs) < m:
            # defective eigenvalue: fewer independent eigenvectors than its multiplicity
            vecs += [vecs[-1]] * (m - len(vecs))
        q = Quaternion(value.real, value.imag)
        for v in vecs:
            v = _phase_fix(v, real_value)
            res = eigen_residual(A, v, q)
            if res > tol_eig * max(norm_a, 1e-300):
                v = _inverse_iteration(chi, v, value, n)
                res = eigen_residual(A, v, q)
                if res > tol_eig * max(norm_a, 1e-300):
                    raise RecoveryFailure(
                        f"eigenvector for {value:.6g} has residual {res:.3g} "
                        f"(limit {tol_eig * norm_a:.3g})"
                    )
            pairs.append(EigenPair(q, v))
    if len(pairs) != n:
        raise RecoveryFailure(f"recovered {len(pairs)} eigenpairs for a {n}x{n} matrix")
    return pairs


def _inverse_iteration(chi: np.ndarray, v: np.ndarray, value: complex, n: int) -> np.ndarray:
    """One shifted solve on chi_A, mapped back to a quaternion vector."""
    col = np.concatenate([v[:, 0] + 1j * v[:, 1], -v[:, 2] + 1j * v[:, 3]])
    shift = value + 1e-10 * max(1.0, abs(value))
    try:
        y = np.linalg.solve(chi - shift * np.eye(2 * n), col)
    except np.linalg.LinAlgError:
        return v
    return _phase_fix(_from_chi_vector(y / np.linalg.norm(y)), value.imag == 0.0)


def to_complex_vector(x) -> np.ndarray:
    """Inverse of the chi_A vector map: ``x1 + x2 j -> (x1; -conj(x2))``."""
    x = _vec(x)
    return np.concatenate([x[:, 0] + 1j * x[:, 1], -x[:, 2] + 1j * x[:, 3]])


def random_qmatrix(rng: np.random.Generator, rows: int, cols: int | None = None) -> QMatrix:
    cols = rows if cols is None else cols
    return QMatrix(rng.standard_normal((rows, cols, 4)))

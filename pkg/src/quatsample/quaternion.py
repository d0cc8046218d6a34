"""Quaternion scalars, similarity orbits and array-level Hamilton products.

A quaternion ``w + x i + y j + z k`` is stored as four floats. Scalar code
uses :class:`Quaternion`; matrix and vector code works on float arrays whose
last axis has length 4 in ``(w, x, y, z)`` order, see :func:`hamilton`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .errors import QuaternionZeroDivision

TOL_ZERO = 1e-13


def _mul4(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # keep numpy scalars from broadcasting over the components
    __array_ufunc__ = None

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Accept a Quaternion, a real number, a complex number or a length-4 sequence."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, Real):
            return cls(float(value))
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        w, x, y, z = (float(c) for c in value)
        return cls(w, x, y, z)

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        w, x, y, z = a
        return cls(float(w), float(x), float(y), float(z))

    @classmethod
    def from_complex(cls, c: complex) -> "Quaternion":
        return cls(float(c.real), float(c.imag))

    def __iter__(self):
        yield self.w
        yield self.x
        yield self.y
        yield self.z

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w, self.x, self.y, self.z)

    def to_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Real):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        if isinstance(other, Real):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(*_mul4(self.as_tuple(), other.as_tuple()))
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # only reals reach here; they commute with everything
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        # division by a quaternion is ambiguous (left vs right); only reals allowed
        if isinstance(other, Real):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __abs__(self) -> float:
        return self.norm()

    def __bool__(self):
        return any(self.as_tuple())

    def __str__(self):
        from .textio import format_quaternion

        return format_quaternion(self, digits=17)

    # structure ------------------------------------------------------------
    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def imag_norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def is_real(self, tol: float = TOL_ZERO) -> bool:
        return self.imag_norm() <= tol * (1.0 + self.norm())

    def orbit(self) -> "OrbitClass":
        return OrbitClass(self.w, self.imag_norm())


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class OrbitClass:
    """Similarity orbit ``{a^-1 q a}`` identified by real part and imaginary magnitude."""

    re: float
    r: float

    def representative(self) -> Quaternion:
        return Quaternion(self.re, self.r)

    def is_real(self) -> bool:
        return self.r == 0.0

    def norm(self) -> float:
        return math.hypot(self.re, self.r)

    def matches(self, other: "OrbitClass", tol: float) -> bool:
        return abs(self.re - other.re) <= tol and abs(self.r - other.r) <= tol

    def contains(self, q, tol: float) -> bool:
        q = Quaternion.coerce(q)
        return abs(q.w - self.re) <= tol and abs(q.imag_norm() - self.r) <= tol


def mul(p, q) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion.coerce(p) * Quaternion.coerce(q)


def inverse(q) -> Quaternion:
    q = Quaternion.coerce(q)
    n2 = q.norm2()
    if math.sqrt(n2) <= TOL_ZERO:
        raise QuaternionZeroDivision(f"cannot invert quaternion of norm {math.sqrt(n2):.3g}")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def conjugate_by(q, alpha) -> Quaternion:
    """Return ``alpha^-1 q alpha``."""
    alpha = Quaternion.coerce(alpha)
    return inverse(alpha) * Quaternion.coerce(q) * alpha


def is_similar(p, q, tol: float = 1e-10) -> bool:
    """True when p and q lie on the same similarity orbit (same real part and norm)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = Quaternion.coerce(p)
    q = Quaternion.coerce(q)
    return abs(p.w - q.w) <= tol and abs(p.norm() - q.norm()) <= tol


def standardize(q) -> Quaternion:
    """Complex representative ``Re q + |Im q| i`` of the orbit of q."""
    q = Quaternion.coerce(q)
    r = q.imag_norm()
    if r <= TOL_ZERO * (1.0 + q.norm()):
        return Quaternion(q.w)
    return Quaternion(q.w, r)


def orbit_class(q) -> OrbitClass:
    s = standardize(q)
    return OrbitClass(s.w, s.x)


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(scale * rng.standard_normal(4))


def random_unit(rng: np.random.Generator) -> Quaternion:
    v = rng.standard_normal(4)
    return Quaternion.from_array(v / np.linalg.norm(v))


# array level ---------------------------------------------------------------

def hamilton(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Broadcast Hamilton product over arrays with a trailing axis of length 4."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = np.moveaxis(a, -1, 0)
    bw, bx, by, bz = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def qconj(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def qnorm(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(a, dtype=float) ** 2, axis=-1))


def as_qarray(values) -> np.ndarray:
    """Convert a sequence of quaternion-likes (or an array) to an ``(..., 4)`` float array."""
    if isinstance(values, np.ndarray):
        arr = np.asarray(values, dtype=float)
        if arr.shape[-1] != 4:
            raise ValueError("quaternion arrays need a trailing axis of length 4")
        return arr
    return np.array([Quaternion.coerce(v).as_tuple() for v in values], dtype=float).reshape(-1, 4)

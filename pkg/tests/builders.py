"""Random polynomials with prescribed zero structure, shared by several test modules."""
import numpy as np

from quatsample.poly import QPoly

KINDS = ("generic", "spherical", "real", "mixed")


def times_real(coeffs: np.ndarray, real_poly) -> np.ndarray:
    """Multiply a quaternion coefficient array by a real polynomial (both ascending)."""
    out = np.zeros((coeffs.shape[0] + len(real_poly) - 1, 4))
    for k, r in enumerate(real_poly):
        out[k : k + coeffs.shape[0]] += r * coeffs
    return out


def random_coeffs(rng, degree: int) -> np.ndarray:
    c = rng.standard_normal((degree + 1, 4))
    c[-1] *= max(1.0, 0.5 / np.linalg.norm(c[-1]))
    return c


def structured_coeffs(rng, degree: int, kind: str):
    """Coefficients of degree ``degree`` plus the planted (re, r) spherical orbits and real zeros."""
    planted_sph, planted_real = [], []
    factors = []
    if kind in ("spherical", "mixed") and degree >= 2:
        re, r = rng.uniform(-1.5, 1.5), rng.uniform(0.3, 2.0)
        planted_sph.append((re, r))
        factors.append([re * re + r * r, -2 * re, 1.0])
    if kind in ("real", "mixed") and degree - 2 * len(planted_sph) >= 1:
        x = rng.uniform(-2.0, 2.0)
        planted_real.append(x)
        factors.append([-x, 1.0])
    base_degree = degree - sum(len(f) - 1 for f in factors)
    c = random_coeffs(rng, base_degree)
    for f in factors:
        c = times_real(c, f)
    return c, planted_sph, planted_real


def random_poly(rng, degree: int, kind: str = "generic") -> QPoly:
    return QPoly(structured_coeffs(rng, degree, kind)[0])

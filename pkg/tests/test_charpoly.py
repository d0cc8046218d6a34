import numpy as np
import pytest

from conftest import FIXTURES
from quatsample.charpoly import char_poly, spectrum_check, tridiagonal_spec
from quatsample.errors import NotTridiagonalSymmetric, ZeroOffDiagonal
from quatsample.generators import random_tridiagonal_symmetric
from quatsample.linalg import QMatrix
from quatsample.poly import zeros
from quatsample.quaternion import I, J, K, ONE, Quaternion, random_quaternion
from quatsample.textio import read_matrix

JACOBI = QMatrix(read_matrix(FIXTURES / "jacobi4.mat"))
JACOBI_ORBITS = [(-1.12826, 0.544285), (-0.208978, 0.611905), (1.03613, 1.13233), (1.3011, 2.0323)]


def test_one_by_one():
    p = char_poly(QMatrix([[J]]))
    assert p.degree == 1
    assert p.coeffs[0] == -J and p.coeffs[1] == ONE


def test_jacobi_fixture_zeros():
    result = spectrum_check(JACOBI)
    got = sorted((r.orbit.re, r.orbit.r) for r in result.zero_classes)
    assert len(got) == 4
    for (re, r), (wre, wr) in zip(got, JACOBI_ORBITS):
        assert abs(re - wre) < 1e-5 and abs(r - wr) < 1e-5
    assert all(r.kind == "nonreal_isolated" for r in result.zero_classes)
    for r in result.zero_classes:
        assert result.poly(r.representative).norm() < 1e-9 * result.poly.scale(r.representative)


def test_real_tridiagonal_matches_eigvalsh(rng):
    for n in (2, 3, 5, 7):
        d = rng.standard_normal(n)
        e = rng.uniform(0.3, 1.5, n - 1)
        M = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        reps = zeros(char_poly(QMatrix(M.tolist())))
        got = sorted(r.representative.w for r in reps)
        assert all(r.representative.is_real(1e-9) for r in reps)
        assert np.allclose(got, np.linalg.eigvalsh(M), atol=1e-9)


def test_swap_matrix():
    p = char_poly(QMatrix([[0, 1], [1, 0]]))
    assert sorted(r.representative.w for r in zeros(p)) == pytest.approx([-1.0, 1.0])


def test_s_does_not_move_zero_orbits(rng):
    base = sorted((r.orbit.re, r.orbit.r) for r in zeros(char_poly(JACOBI)))
    for _ in range(3):
        s = random_quaternion(rng)
        p = char_poly(JACOBI, s)
        assert p.degree == 4
        other = sorted((r.orbit.re, r.orbit.r) for r in zeros(p))
        assert np.allclose(base, other, atol=1e-8)


def test_degree_and_leading_coefficient(rng):
    for n in range(1, 7):
        A = random_tridiagonal_symmetric(rng, n)
        p = char_poly(A)
        assert p.degree == n
        prod = np.prod([A[k, k + 1].norm() for k in range(n - 1)]) if n > 1 else 1.0
        assert p.coeffs[-1].norm() == pytest.approx(1.0 / prod, rel=1e-10)


def test_rejects_bad_matrices():
    with pytest.raises(NotTridiagonalSymmetric):
        char_poly(QMatrix([[1, 2, 3], [2, 1, 2], [3, 2, 1]]))
    with pytest.raises(NotTridiagonalSymmetric):
        char_poly(QMatrix([[1, I], [J, 1]]))
    with pytest.raises(NotTridiagonalSymmetric):
        char_poly(QMatrix([[1, 2, 0]]))
    with pytest.raises(ZeroOffDiagonal):
        char_poly(QMatrix([[1, 0, 0], [0, 2, K], [0, K, 3]]))


def test_embedding_uses_unit_boundary():
    spec = tridiagonal_spec(JACOBI)
    assert spec.b[0] == ONE and spec.b[-1] == ONE
    assert spec.h1 == Quaternion() and spec.h2 == Quaternion()
    assert spec.a[1] == I and spec.b[2] == ONE + J


def test_random_tridiagonal_spectra(rng):
    for _ in range(100):
        A = random_tridiagonal_symmetric(rng, int(rng.integers(1, 7)))
        result = spectrum_check(A)
        assert len(result.zero_classes) >= 1

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatsample.errors import QuaternionZeroDivision
from quatsample.quaternion import (
    I,
    J,
    K,
    ONE,
    OrbitClass,
    Quaternion,
    conjugate_by,
    hamilton,
    inverse,
    is_similar,
    orbit_class,
    qconj,
    qnorm,
    random_quaternion,
    standardize,
)

finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def test_unit_products():
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K and K * J == -I and I * K == -J
    assert I * I == J * J == K * K == -ONE


def test_noncommutative():
    p, q = Quaternion(1, 2, 3, 4), Quaternion(-2, 0.5, 1, 0)
    assert p * q != q * p


def test_real_scalars_commute_and_coerce():
    q = Quaternion(1, -2, 3, 0.5)
    assert 2 * q == q * 2 == Quaternion(2, -4, 6, 1)
    assert q + 1 == Quaternion(2, -2, 3, 0.5)
    assert 1 - q == Quaternion(0, 2, -3, -0.5)


@given(quats, quats, quats)
@settings(max_examples=200, deadline=None)
def test_associative(p, q, r):
    lhs, rhs = (p * q) * r, p * (q * r)
    scale = max(1.0, p.norm() * q.norm() * r.norm())
    assert (lhs - rhs).norm() <= 1e-12 * scale


@given(quats, quats)
@settings(max_examples=200, deadline=None)
def test_norm_multiplicative(p, q):
    assert math.isclose((p * q).norm(), p.norm() * q.norm(), rel_tol=1e-12, abs_tol=1e-300)


@given(quats)
@settings(max_examples=200, deadline=None)
def test_inverse(q):
    if q.norm() < 1e-6:
        return
    assert (q * inverse(q) - ONE).norm() <= 1e-12
    assert (inverse(q) * q - ONE).norm() <= 1e-12


def test_inverse_of_zero_raises():
    with pytest.raises(QuaternionZeroDivision):
        inverse(Quaternion())
    with pytest.raises(ZeroDivisionError):
        Quaternion().inverse()


def test_conj_reverses_products():
    p, q = Quaternion(1, 2, -1, 0.5), Quaternion(0, 3, 1, -2)
    assert ((p * q).conj() - q.conj() * p.conj()).norm() < 1e-14


def test_standardize_examples():
    assert standardize(J) == I
    assert standardize(-3 * K + 2) == Quaternion(2, 3)
    assert standardize(Quaternion(5)) == Quaternion(5)


def test_similarity_is_orbit_membership(rng):
    for _ in range(100):
        q = random_quaternion(rng)
        alpha = random_quaternion(rng)
        p = conjugate_by(q, alpha)
        assert is_similar(p, q)
        assert orbit_class(p).matches(orbit_class(q), 1e-12)
    assert not is_similar(I, 2 * I)
    assert not is_similar(I, ONE + I)


def test_orbit_class_representative():
    o = OrbitClass(1.0, 2.0)
    assert o.representative() == Quaternion(1, 2)
    assert o.contains(Quaternion(1, 0, 2, 0), 1e-12)
    assert not o.contains(Quaternion(1, 0, 2.1, 0), 1e-6)
    assert OrbitClass(3.0, 0.0).is_real


def test_array_helpers_match_scalar_product(rng):
    a = rng.standard_normal((5, 4))
    b = rng.standard_normal((5, 4))
    prod = hamilton(a, b)
    for x, y, z in zip(a, b, prod):
        assert np.allclose((Quaternion.from_array(x) * Quaternion.from_array(y)).to_array(), z)
    assert np.allclose(qnorm(a) ** 2, hamilton(a, qconj(a))[:, 0])


def test_fields_are_python_floats():
    q = Quaternion.from_array(np.array([1, 2, 3, 4], dtype=np.float32))
    assert all(type(c) is float for c in q.as_tuple())

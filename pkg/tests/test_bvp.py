import numpy as np
import pytest

from conftest import FIXTURES
from quatsample.bvp import (
    BvpSpec,
    alternate_expansion,
    boundary_poly,
    build_L,
    build_phi,
    eigen_phi,
    expansion_from_points,
    inner_product_poly,
    padded_solution,
    reconstruct,
    recurrence_residual,
    sample_points_method1,
    sample_points_method2,
    transform,
    transform_scale,
)
from quatsample.errors import (
    DimensionMismatch,
    InvalidSampleSet,
    NotInOrbit,
    NotNormal,
    NotSpherical,
    QuaternionZeroDivision,
)
from quatsample.generators import FAMILIES, random_normal_spec, spec_from_matrix
from quatsample.linalg import QMatrix, eigen_residual, inner, is_normal, vnorm
from quatsample.poly import QPoly, zeros
from quatsample.quaternion import I, J, K, ONE, OrbitClass, Quaternion, hamilton, inverse, random_quaternion
from quatsample.textio import read_spec

R3 = 3.0**0.5
S1 = ONE + K
IDENT = np.array([1.0, 0.0, 0.0, 0.0])


def load(name):
    sf = read_spec(FIXTURES / name)
    return BvpSpec(sf.N, sf.a, sf.b, sf.h1, sf.h2)


SPH = load("spherical3.spec")
ISO = load("isolated3.spec")


def qarr(*entries):
    return np.array([Quaternion.coerce(e).to_array() for e in entries])


def poly_close(p, coeffs, tol=1e-9):
    want = QPoly([Quaternion.coerce(c) for c in coeffs])
    return (p - want).coeff_norm() <= tol


def dual_error(exp):
    return np.abs(exp.duality() - np.eye(exp.N)[:, :, None] * IDENT).max()


def unity_error(exp):
    total = exp.psi_sum().array
    target = np.zeros_like(total)
    target[0, 0] = 1.0
    return np.abs(total - target).max()


# recurrence and boundary polynomial ------------------------------------------

def test_phi_table_spherical_fixture():
    t = build_phi(SPH)
    assert np.array_equal(t.coeffs(1), qarr(1))
    assert np.allclose(t.coeffs(2), qarr(-K, I), atol=1e-12)
    assert np.allclose(t.coeffs(3), qarr(-2, 0, -1), atol=1e-12)
    assert np.allclose(t.coeffs(4), qarr(3 * K, -3 * I, K, -I), atol=1e-12)


def test_phi_table_isolated_fixture():
    t = build_phi(ISO)
    c = R3 / 3
    assert np.allclose(t.coeffs(2), qarr(-c * K, -c * J), atol=1e-12)
    assert np.allclose(t.coeffs(3), qarr(2 * R3 / 3 * (I - 1), 0, R3 / 6 * (I - 1)), atol=1e-12)


def test_boundary_polynomials():
    assert poly_close(boundary_poly(build_phi(SPH), SPH, S1), [3 * (K - 1), 3 * (J - I), K - 1, J - I])
    # with s = 1 the coefficients are the bracketed factors
    c = R3 / 12
    want = [2 * c * (7 + 7 * I + J - K), 6 * c * (K + J + I - 1), c * (3 + 3 * I + J - K), c * (K + J + I - 1)]
    assert poly_close(boundary_poly(build_phi(ISO), ISO, 1), want)
    one = BvpSpec(1, [J], [1, 1])
    assert poly_close(boundary_poly(build_phi(one), one, 1), [-J, 1])
    with pytest.raises(QuaternionZeroDivision):
        boundary_poly(build_phi(one), one, 0)


def test_values_match_polynomials(rng):
    spec = random_normal_spec(rng, 5)
    t = build_phi(spec)
    s, lam = random_quaternion(rng), random_quaternion(rng)
    vals = t.values(lam, s)
    for k in range(1, spec.N + 2):
        assert np.allclose(t.phi_poly(k, s)(lam).to_array(), vals[k], atol=1e-10 * t.scale(k, s, lam))
    assert np.allclose(vals[0], hamilton((-spec.h1).to_array(), s.to_array()))


def test_recurrence_holds_for_any_lambda(rng):
    for _ in range(10):
        spec = random_normal_spec(rng, int(rng.integers(1, 8)))
        t = build_phi(spec)
        s, lam = random_quaternion(rng), random_quaternion(rng)
        vals = t.values(lam, s)
        for k in range(1, spec.N + 1):
            lhs = (
                hamilton(spec.b[k].to_array(), vals[k + 1])
                + hamilton(spec.coeff_a(k).to_array(), vals[k])
                + hamilton(spec.b[k - 1].to_array(), vals[k - 1])
            )
            scale = max(1.0, np.abs(vals).max()) * max(1.0, lam.norm())
            assert np.abs(lhs - hamilton(vals[k], lam.to_array())).max() <= 1e-10 * scale


def test_spec_validation():
    with pytest.raises(DimensionMismatch):
        BvpSpec(2, [J], [1, 1, 1])
    with pytest.raises(DimensionMismatch):
        BvpSpec(2, [J, J], [1, 1])
    with pytest.raises(QuaternionZeroDivision):
        BvpSpec(2, [J, J], [1, 0, 1])


def test_build_L():
    L = build_L(SPH)
    want = QMatrix([[J, -I, 0], [-I, J, -I], [0, -I, J]])
    assert np.array_equal(L.data, want.data)
    L = build_L(ISO)
    assert L[0, 0] == ISO.a[0] - ISO.b[0] * ISO.h1
    assert L[2, 2] == ISO.a[2] - ISO.b[3] * ISO.h2
    assert L[0, 1] == L[1, 0] == ISO.b[1]
    assert is_normal(build_L(SPH)) and is_normal(build_L(ISO))


# sample points ----------------------------------------------------------------

def test_method1_spherical_fixture():
    exp = sample_points_method1(SPH, S1)
    assert (exp.points[0] - I).norm() < 1e-9
    assert all(OrbitClass(0.0, R3).contains(p, 1e-9) for p in exp.points[1:])
    assert dual_error(exp) < 1e-9 and unity_error(exp) < 1e-10
    assert poly_close(exp.interpolants[0], [1.5, 0, 0.5])


def test_fixed_points_reproduce_reference_basis():
    points = [I, -R3 * J, Quaternion(0, 1.5, R3 / 2, 0)]
    exp = expansion_from_points(SPH, S1, points)
    assert np.allclose(exp.basis[1], qarr(1 + K, 1 - R3 - (1 + R3) * K, 1 + K), atol=1e-12)
    assert np.allclose(exp.basis[2], qarr(1 + K, (R3 - 1) / 2 + (1 + R3) / 2 * K, 1 + K), atol=1e-12)
    assert poly_close(exp.interpolants[1], [R3 / 6 * K, (I + R3 * J) / 6, -ONE / 6])
    assert poly_close(exp.interpolants[2], [-(R3 * K + 3) / 6, -(I + R3 * J) / 6, -ONE / 3])


def test_method1_isolated_fixture():
    exp = sample_points_method1(ISO, -K)
    want = [-I - J, -I + 2 * J, -I - 3 * J]
    assert max((a - b).norm() for a, b in zip(exp.points, want)) < 1e-9
    assert np.allclose(exp.basis[0], qarr(-K, -R3 / 3 * K, R3 / 3 * (J + K)), atol=1e-12)
    assert np.allclose(exp.basis[1], qarr(-K, 2 * R3 / 3 * K, -R3 / 6 * (J + K)), atol=1e-12)
    assert np.allclose(exp.basis[2], qarr(-K, -R3 * K, -R3 * (J + K)), atol=1e-12)
    assert poly_close(exp.interpolants[0], [(7 - K) / 6, J / 6, ONE / 6])
    assert poly_close(exp.interpolants[1], [(4 * K + 2) / 15, -4 * J / 15, -ONE / 15])
    assert poly_close(exp.interpolants[2], [-(K + 3) / 10, J / 10, -ONE / 10])


def test_method1_real_symmetric(rng):
    a = rng.standard_normal(5)
    b = np.concatenate([[1.0], rng.uniform(0.5, 1.5, 4), [1.0]])
    spec = BvpSpec(5, list(a), list(b))
    exp = sample_points_method1(spec, 1)
    jacobi = np.diag(a) + np.diag(b[1:5], 1) + np.diag(b[1:5], -1)
    got = sorted(p.w for p in exp.points)
    assert np.allclose(got, np.linalg.eigvalsh(jacobi), atol=1e-10)
    assert all(p.is_real(1e-12) for p in exp.points)


def test_method2_spherical_fixture():
    exp = sample_points_method2(SPH, S1, initial=R3 * I)
    want = [I, R3 * I, -R3 * I]
    assert max((a - b).norm() for a, b in zip(exp.points, want)) < 1e-9
    r = R3
    assert poly_close(exp.interpolants[1], [-3 * (1 + r) / 12, -2 * r / 12 * I, -(3 + r) / 12])
    assert poly_close(exp.interpolants[2], [3 * (r - 1) / 12, 2 * r / 12 * I, (r - 3) / 12])


def test_orthogonality_equation():
    t = build_phi(SPH)
    eq = inner_product_poly(t, S1, t.vector(R3 * I, S1))
    # proportional to -2 lam^2 + (2 - 2 sqrt3) i lam - 2 sqrt3
    ref = QPoly([-2 * R3, (2 - 2 * R3) * I, -2])
    ratio = eq.coeffs[2] * inverse(ref.coeffs[2])
    assert (eq - QPoly([ratio * c for c in ref.coeffs])).coeff_norm() < 1e-12
    sols = [r.representative for r in zeros(eq)]
    assert any((z - I).norm() < 1e-9 for z in sols) and any((z + R3 * I).norm() < 1e-9 for z in sols)


def test_method2_matches_method1_on_isolated_zeros():
    e1, e2 = sample_points_method1(ISO, -K), sample_points_method2(ISO, -K)
    assert max((a - b).norm() for a, b in zip(e1.points, e2.points)) < 1e-9
    assert max((p - q).coeff_norm() for p, q in zip(e1.interpolants, e2.interpolants)) < 1e-9


def test_single_point_problem(rng):
    spec = BvpSpec(1, [Quaternion(0.5, 1, 0, -1)], [ONE + I, 2 * J], h1=K, h2=I)
    for exp in (sample_points_method1(spec, 1 + J), sample_points_method2(spec, 1 + J)):
        assert exp.N == 1 and poly_close(exp.interpolants[0], [1])
        p = boundary_poly(build_phi(spec), spec, 1 + J)
        assert p(exp.points[0]).norm() < 1e-12
        samples = [random_quaternion(rng)]
        assert (reconstruct(samples, exp, random_quaternion(rng)) - samples[0]).norm() < 1e-12


def test_non_normal_rejected():
    spec = BvpSpec(2, [I, ONE], [1, K, 1])
    assert not is_normal(build_L(spec))
    with pytest.raises(NotNormal):
        sample_points_method1(spec, 1)
    with pytest.raises(NotNormal):
        sample_points_method2(spec, 1)


def test_invalid_sample_sets():
    with pytest.raises(InvalidSampleSet):
        expansion_from_points(SPH, S1, [I, R3 * I])
    with pytest.raises(InvalidSampleSet):
        expansion_from_points(SPH, S1, [I, 2 * I, R3 * I])
    with pytest.raises(InvalidSampleSet):
        # both on the spherical orbit but not orthogonal
        expansion_from_points(SPH, S1, [I, R3 * I, R3 * J])


# transform and reconstruction ----------------------------------------------

def test_transform_examples(rng):
    t = build_phi(SPH)
    for _ in range(5):
        lam = random_quaternion(rng)
        assert transform(qarr(1, 0, 0), t, S1, lam) == S1
    assert transform(qarr(0, 1, 0), t, S1, I).norm() < 1e-14
    with pytest.raises(DimensionMismatch):
        transform(qarr(1, 0), t, S1, I)


def test_reconstruct_spherical_fixture(rng):
    t = build_phi(SPH)
    exp = sample_points_method1(SPH, S1, t)
    assert (reconstruct([S1] * 3, exp, random_quaternion(rng)) - S1).norm() < 1e-12
    F = rng.standard_normal((3, 4))
    samples = [transform(F, t, S1, p) for p in exp.points]
    for _ in range(20):
        lam = random_quaternion(rng)
        assert (transform(F, t, S1, lam) - reconstruct(samples, exp, lam)).norm() <= 1e-8 * transform_scale(F, t, S1, lam)
    with pytest.raises(DimensionMismatch):
        reconstruct(samples[:2], exp, I)


# alternative expansions ------------------------------------------------------

def test_alternate_expansion():
    t = build_phi(SPH)
    exp = sample_points_method1(SPH, S1, t)
    orbit = OrbitClass(0.0, R3)
    alt = alternate_expansion(exp, SPH, t, orbit, R3 * I)
    want = [I, R3 * I, -R3 * I]
    assert max((a - b).norm() for a, b in zip(alt.points, want)) < 1e-9
    assert dual_error(alt) < 1e-9
    seed = Quaternion(0, 1, 1, 1) * (R3 / 3**0.5)
    other = alternate_expansion(exp, SPH, t, orbit, seed)
    assert any((p - seed).norm() < 1e-12 for p in other.points)
    with pytest.raises(NotInOrbit):
        alternate_expansion(exp, SPH, t, orbit, 2 * I)
    iso_t = build_phi(ISO)
    iso = sample_points_method1(ISO, -K, iso_t)
    with pytest.raises(NotSpherical):
        alternate_expansion(iso, ISO, iso_t, OrbitClass(0.0, 2**0.5), -I - J)


# properties on random normal problems --------------------------------------

@pytest.mark.parametrize("family", FAMILIES)
def test_method1_properties(rng, family):
    for _ in range(6):
        n = int(rng.integers(2, 9))
        spec = random_normal_spec(rng, n, family)
        s = random_quaternion(rng)
        t = build_phi(spec)
        exp = sample_points_method1(spec, s, t)
        assert dual_error(exp) <= 1e-9
        assert unity_error(exp) <= 1e-10
        L = build_L(spec)
        p = boundary_poly(t, spec, s)
        for lam, vec in zip(exp.points, exp.basis):
            assert eigen_residual(L, vec, lam) <= 1e-9 * vnorm(vec)
            assert p(lam).norm() <= 1e-8 * p.scale(lam)
            assert recurrence_residual(spec, padded_solution(spec, vec), lam) <= 1e-10 * vnorm(vec)
        gaps = [(a - b).norm() for i, a in enumerate(exp.points) for b in exp.points[i + 1 :]]
        assert min(gaps) > 1e-6


@pytest.mark.parametrize("family", FAMILIES)
def test_method2_properties(rng, family):
    for _ in range(5):
        n = int(rng.integers(2, 7))
        spec = random_normal_spec(rng, n, family)
        s = random_quaternion(rng)
        exp = sample_points_method2(spec, s)
        assert dual_error(exp) <= 1e-9
        assert unity_error(exp) <= 1e-10
        for a in range(n):
            for b in range(a):
                assert inner(exp.basis[a], exp.basis[b]).norm() <= 1e-8 * vnorm(exp.basis[a]) * vnorm(exp.basis[b])


def test_eigen_phi_agrees_with_recurrence(rng):
    spec = random_normal_spec(rng, 5, "pencil")
    s = random_quaternion(rng)
    t = build_phi(spec)
    exp = sample_points_method1(spec, s, t)
    L = build_L(spec)
    for lam in exp.points:
        direct = t.vector(lam, s)
        assert np.linalg.norm(eigen_phi(L, t, lam, s) - direct) <= 1e-8 * np.linalg.norm(direct)


def test_conjugation_identity(rng):
    for _ in range(10):
        spec = random_normal_spec(rng, int(rng.integers(2, 8)))
        t = build_phi(spec)
        s0, s1 = random_quaternion(rng), random_quaternion(rng)
        lam0 = sample_points_method1(spec, s0, t).points[0]
        lhs = hamilton(t.vector(lam0, s0), s1.to_array())
        rhs = t.vector(inverse(s1) * lam0 * s1, s0 * s1)
        assert np.abs(lhs - rhs).max() <= 1e-10 * max(1.0, np.abs(lhs).max())

"""Core polynomial operations: frozen examples plus property checks."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spectral_lab.errors import CertificationAmbiguous, DegreeError
from spectral_lab.poly_core import (
    Certificate,
    ComplexPoly,
    HyperbolicPoly,
    MonicPoly,
    NotHyperbolic,
    RootTuple,
    complex_roots,
    differentiate,
    from_roots,
    poly_sub,
    real_roots_certified,
    span,
    taylor_shift,
    taylor_shift_coeffs,
    zero_sum,
)


def coeffs_close(a, b, tol=1e-10):
    return float(np.max(np.abs(poly_sub(a, b)))) <= tol


# -- from_roots ------------------------------------------------------------

def test_from_roots_pair():
    h = from_roots([-1, 1])
    assert coeffs_close(h.poly.coeffs, [-1.0, 0.0, 1.0])
    assert h.certificate is Certificate.STURM_EXACT


def test_from_roots_empty_is_constant_one():
    h = from_roots([])
    assert h.degree == 0
    assert coeffs_close(h.poly.coeffs, [1.0])


def test_from_roots_with_multiplicity():
    h = from_roots([0, 0, 3])
    assert coeffs_close(h.poly.coeffs, [0.0, 0.0, -3.0, 1.0])
    assert np.allclose(h.roots, [0.0, 0.0, 3.0])


# -- differentiate ----------------------------------------------------------

def test_differentiate_examples():
    assert coeffs_close(differentiate(MonicPoly([-1, 0, 1])), [0.0, 2.0])
    assert coeffs_close(differentiate(MonicPoly([0, 0, -3, 1])), [0.0, -6.0, 3.0])
    assert coeffs_close(differentiate(MonicPoly([-5, 1])), [1.0])


def test_differentiate_degree_zero_raises():
    with pytest.raises(DegreeError):
        differentiate(MonicPoly([1.0]))


# -- taylor_shift -----------------------------------------------------------

def test_taylor_shift_examples():
    assert coeffs_close(taylor_shift(MonicPoly([-1, 0, 1]), 1.0).coeffs, [0.0, 2.0, 1.0])
    p = MonicPoly([3.0, -2.0, 0.5, 1.0])
    assert taylor_shift(p, 0.0) == p
    cube = MonicPoly([0, 0, 0, 1])
    assert coeffs_close(taylor_shift(cube, -1.0).coeffs, [-1.0, 3.0, -3.0, 1.0])


@settings(max_examples=80, deadline=None)
@given(
    st.lists(st.floats(-3, 3), min_size=1, max_size=7),
    st.floats(-2, 2),
    st.floats(-2, 2),
)
def test_taylor_shift_group_law(lower, s, t):
    p = MonicPoly(lower + [1.0])
    once = taylor_shift_coeffs(taylor_shift_coeffs(p.coeffs, s), t)
    both = taylor_shift_coeffs(p.coeffs, s + t)
    scale = 1.0 + float(np.max(np.abs(both)))
    assert float(np.max(np.abs(poly_sub(once, both)))) <= 1e-10 * scale


@settings(max_examples=80, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=1, max_size=7), st.floats(-2, 2))
def test_zero_sum_shift_identity(lower, t):
    p = MonicPoly(lower + [1.0])
    n = p.degree
    lhs = zero_sum(taylor_shift(p, t))
    rhs = zero_sum(p) - n * t
    assert abs(lhs - rhs) <= 1e-10 * (1.0 + abs(rhs))


# -- zero_sum / span --------------------------------------------------------

def test_zero_sum_examples():
    assert zero_sum(MonicPoly([-1, 0, 1])) == 0.0
    assert zero_sum(MonicPoly([0, 0, -3, 1])) == 3.0
    assert zero_sum(MonicPoly([-1, -2, 1])) == 2.0
    with pytest.raises(DegreeError):
        zero_sum(MonicPoly([1.0]))


def test_span_examples():
    assert span(from_roots([-1, 1])) == pytest.approx(2.0)
    assert span(from_roots([1, 1])) == pytest.approx(0.0)
    # roots of x^2 - 2x - 1 are 1 +- sqrt(2); quadratic-formula oracle
    h = real_roots_certified(MonicPoly([-1, -2, 1]))
    assert span(h) == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-10)


# -- real_roots_certified ----------------------------------------------------

def test_real_roots_simple():
    h = real_roots_certified(MonicPoly([-1, 0, 1]))
    assert isinstance(h, HyperbolicPoly)
    assert np.allclose(h.roots, [-1.0, 1.0], atol=1e-12)
    assert h.certificate is Certificate.STURM_EXACT


def test_real_roots_rejects_complex_pair():
    v = real_roots_certified(MonicPoly([1, 0, 1]))
    assert isinstance(v, NotHyperbolic)
    assert v.real_root_count == 0


def test_real_roots_multiplicity_recovered():
    h = real_roots_certified(MonicPoly([0, 0, -3, 1]))
    assert isinstance(h, HyperbolicPoly)
    assert np.allclose(h.roots, [0.0, 0.0, 3.0], atol=1e-8)


def test_real_roots_triple_root():
    p = from_roots([1.0, 1.0, 1.0, -2.0]).poly
    h = real_roots_certified(p)
    assert isinstance(h, HyperbolicPoly)
    assert np.allclose(h.roots, [-2.0, 1.0, 1.0, 1.0], atol=1e-6)


def test_sturm_soundness_random_products():
    rng = np.random.default_rng(7)
    for _ in range(60):
        n = int(rng.integers(1, 11))
        roots = np.sort(rng.uniform(-3, 3, size=n))
        h = real_roots_certified(from_roots(roots).poly)
        assert isinstance(h, HyperbolicPoly)
        assert float(np.max(np.abs(h.roots - roots))) <= 1e-8


def test_sturm_completeness_conjugate_pair():
    rng = np.random.default_rng(11)
    for _ in range(60):
        n = int(rng.integers(0, 5))
        real_roots = np.sort(rng.uniform(-2, 2, size=n))
        a, b = rng.uniform(-2, 2), rng.uniform(0.1, 2)
        pair = np.polynomial.polynomial.polyfromroots([a + 1j * b, a - 1j * b]).real
        coeffs = np.polynomial.polynomial.polymul(
            np.polynomial.polynomial.polyfromroots(real_roots).real, pair
        )
        v = real_roots_certified(MonicPoly(coeffs))
        assert isinstance(v, NotHyperbolic)
        assert v.real_root_count == n


def test_certification_ambiguous_raised_without_fallback():
    p = MonicPoly([-1, 0, 1])
    with pytest.raises(CertificationAmbiguous):
        real_roots_certified(p, exact_fallback=False, amb_tol=10.0)
    h = real_roots_certified(p, exact_fallback=True, amb_tol=10.0)
    assert isinstance(h, HyperbolicPoly)


def test_reconstruction_invariant_enforced():
    with pytest.raises(CertificationAmbiguous):
        HyperbolicPoly(MonicPoly([-1, 0, 1]), [5.0, 6.0])


# -- complex_roots -----------------------------------------------------------

def test_complex_roots_fifth_roots_of_unity():
    p = ComplexPoly([-1, 0, 0, 0, 0, 1])
    got = complex_roots(p)
    want = sorted(
        (cmath.exp(2j * cmath.pi * k / 5) for k in range(1, 6)),
        key=lambda z: (z.real, z.imag),
    )
    assert np.allclose(got.values, want, atol=1e-9)


def test_complex_roots_pure_imaginary_pair():
    got = complex_roots(ComplexPoly([1, 0, 1]))
    assert np.allclose(got.values, [-1j, 1j], atol=1e-10)


def test_complex_roots_constructed_pair():
    # (z - (1 + 2i)) (z - 3)
    c = np.polynomial.polynomial.polyfromroots([1 + 2j, 3.0])
    got = complex_roots(ComplexPoly(c))
    assert np.allclose(got.values, [1 + 2j, 3 + 0j], atol=1e-10)


def test_complex_roots_residual_invariant():
    rng = np.random.default_rng(3)
    for _ in range(25):
        n = int(rng.integers(1, 9))
        roots = rng.uniform(-2, 2, size=n) + 1j * rng.uniform(-2, 2, size=n)
        p = ComplexPoly(np.polynomial.polynomial.polyfromroots(roots))
        got = complex_roots(p, tol=1e-12)
        resid = np.abs(p(got.values))
        assert float(np.max(resid)) <= 1e-12 * (1.0 + float(np.max(np.abs(p.coeffs))))


def test_complex_roots_double_root_clustering():
    # (z + i)^2: both roots at -i
    got = complex_roots(ComplexPoly([-1, 2j, 1]), tol=1e-12)
    assert got.size == 2
    assert np.allclose(got.values, [-1j, -1j], atol=1e-5)
    assert got.values[0] == got.values[1]


# -- tuple equality ----------------------------------------------------------

def test_root_tuple_equality_rule():
    a = RootTuple([1.0, 2.0])
    b = RootTuple([2.0 + 1e-12, 1.0 - 1e-12])
    c = RootTuple([1.0, 2.1])
    assert a.equals(b)
    assert not a.equals(c)


def _snap_close(values, gap=2e-3):
    """Collapse sub-resolution clusters into exact multiplicities."""
    out = []
    for v in values:
        for w in out:
            if abs(v - w) < gap:
                v = w
                break
        out.append(v)
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-4, 4), min_size=1, max_size=8))
def test_from_roots_round_trip(roots):
    h = from_roots(_snap_close(roots))
    again = real_roots_certified(h.poly)
    assert isinstance(again, HyperbolicPoly)
    assert float(np.max(np.abs(again.roots - h.roots))) <= 1e-6 * (
        1.0 + float(np.max(np.abs(h.roots)))
    )

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hamilton
from quatqm.quaternion import (I, J, K, ONE, Quaternion, UnitQuaternionK, build_K, cexp, conj,
                               inverse, lmul_i, mul, norm, rmul_i)

comp = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
quats = st.tuples(comp, comp, comp, comp).map(lambda c: Quaternion.from_components(*c))


def test_ij_is_k():
    assert mul(I, J).allclose(K)
    assert mul(J, I).allclose(-K)


def test_unit_table():
    assert mul(J, K).allclose(I)
    assert mul(K, I).allclose(J)
    for u in (I, J, K):
        assert mul(u, u).allclose(-ONE)


def test_identity():
    q = Quaternion.from_components(0.3, -1.2, 2.0, 0.7)
    assert mul(ONE, q).allclose(q)
    assert mul(q, ONE).allclose(q)


def test_j_moves_past_complex():
    X = 0.7
    e = Quaternion(cexp(X), 0j)
    e_bar = Quaternion(cexp(-X), 0j)
    assert mul(J, e).allclose(mul(e_bar, J))


def test_conj_examples():
    assert conj(I).allclose(-I)
    assert conj(J).allclose(-J)
    q = Quaternion.from_components(1, 2, 3, 4)
    assert np.allclose(conj(q).components(), (1, -2, -3, -4))


def test_norm_and_inverse_examples():
    assert norm(Quaternion.from_components(1, 1, 1, 1)) == pytest.approx(2.0, abs=1e-15)
    assert inverse(J).allclose(-J)
    q = Quaternion.from_components(0.3, 0.1, -2, 0.5)
    assert mul(q, inverse(q)).allclose(ONE)
    assert mul(inverse(q), q).allclose(ONE)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError, match="zero quaternion has no inverse"):
        inverse(Quaternion(0j, 0j))


def test_build_K_examples():
    assert build_K(0.0, 0.0, 1.234).allclose(ONE)
    assert build_K(np.pi / 2, 0.9, 0.0).allclose(J, atol=1e-15)
    assert abs(norm(build_K(np.pi / 4, 0.3, -0.8)) - 1) < 1e-15
    assert UnitQuaternionK(0.4, 0.1, 0.2).quaternion().allclose(build_K(0.4, 0.1, 0.2))


def test_left_and_right_i_differ():
    q = Quaternion.from_components(0.1, 0.2, 0.3, 0.4)
    assert lmul_i(q).allclose(mul(I, q))
    assert rmul_i(q).allclose(mul(q, I))
    assert not lmul_i(q).allclose(rmul_i(q))


def test_complex_acts_on_the_written_side():
    q = Quaternion.from_components(0.1, 0.2, 0.3, 0.4)
    c = 0.5 - 1.5j
    assert (c * q).allclose(mul(Quaternion(c, 0j), q))
    assert (q * c).allclose(mul(q, Quaternion(c, 0j)))


def test_array_fields_broadcast():
    z = np.linspace(0, 1, 5) + 0j
    q = Quaternion(z, 2 * z)
    assert q.shape == (5,)
    assert q[2].allclose(Quaternion(0.5, 1.0))
    assert q.as_array().shape == (5, 4)
    assert Quaternion.from_array(q.as_array()).allclose(q)


@given(quats, quats)
def test_mul_matches_hamilton_product(a, b):
    got = mul(a, b).as_array()
    ref = hamilton(a.as_array(), b.as_array())
    assert np.allclose(got, ref, rtol=1e-12, atol=1e-12)


@given(quats, quats)
def test_conj_reverses_products(a, b):
    assert conj(mul(a, b)).allclose(mul(conj(b), conj(a)), rtol=1e-12, atol=1e-11)


@given(quats)
def test_norm_squared_is_q_times_conj(q):
    assert mul(q, conj(q)).allclose(Quaternion(q.norm2(), 0j), rtol=1e-12, atol=1e-11)


@given(quats, quats, quats)
def test_distributive(a, b, c):
    assert mul(a, b + c).allclose(mul(a, b) + mul(a, c), rtol=1e-12, atol=1e-10)


def _draws(rng, n):
    return Quaternion.from_array(rng.normal(size=(n, 4)) * rng.uniform(0.1, 10, size=(n, 1)))


def test_algebra_laws_on_many_draws(rng):
    n = 10_000
    a, b, c = _draws(rng, n), _draws(rng, n), _draws(rng, n)
    na, nb = norm(a), norm(b)
    assert np.max(np.abs(norm(mul(a, b)) - na * nb) / (na * nb)) < 1e-13
    lhs, rhs = mul(mul(a, b), c), mul(a, mul(b, c))
    scale = na * nb * norm(c)
    assert np.max(norm(lhs - rhs) / scale) < 1e-13
    zs = Quaternion(a.z, np.zeros(n, complex))
    assert np.max(norm(mul(J, zs) - mul(Quaternion(np.conj(a.z), 0j), J)) / norm(zs)) < 1e-13

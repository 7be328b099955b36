import math

import pytest
from hypothesis import given, settings, strategies as st

from mockforms.qkernel import (
    DomainError,
    HalfInt,
    TruncationPolicy,
    gauss_error,
    lattice_distance,
    nome,
)


def test_gauss_error_origin_and_oddness():
    assert gauss_error(0.0) == 0.0
    for x in (0.3, 1.7):
        assert gauss_error(-x) == -gauss_error(x)


def test_gauss_error_quadrature_oracle():
    from scipy.integrate import quad

    for x in (0.25, 1.0, 2.5):
        ref, err = quad(lambda u: 2.0 * math.exp(-math.pi * u * u), 0.0, x,
                        epsabs=1e-14, epsrel=1e-14)
        assert err < 1e-12
        assert abs(gauss_error(x) - ref) <= 1e-12
    assert abs(gauss_error(1.0) - 0.9879) < 1e-4


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-2.5, max_value=2.5))
def test_gauss_error_bounds(x):
    # strict inequality is resolvable in doubles only below ~2.7
    assert abs(gauss_error(x)) < 1.0


def test_gauss_error_bound_saturates_in_floats():
    assert abs(gauss_error(25.0)) <= 1.0


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-2.4, max_value=2.0), st.floats(min_value=1e-4, max_value=0.4))
def test_gauss_error_monotone(x, h):
    assert gauss_error(x + h) > gauss_error(x)


def test_gauss_error_tail_bound():
    for x in (1.0, 1.5, 3.0):
        assert 1.0 - gauss_error(x) <= math.exp(-math.pi * x * x)


def test_nome():
    assert abs(nome(1j) - math.exp(-2 * math.pi)) < 1e-16
    assert abs(abs(nome(1j + 1)) - abs(nome(1j))) < 1e-16
    assert abs(nome(0.5 + 2j)) < 1.0
    with pytest.raises(DomainError):
        nome(-1j)


def test_lattice_distance_basics():
    assert lattice_distance(0.0, 2j) == 0.0
    assert abs(lattice_distance(0.5, 2j) - 0.5) < 1e-15


def test_lattice_distance_brute_force():
    tau = 1j
    z = 0.3 + 0.4j
    brute = min(abs(z - (a + b * tau)) for a in range(-3, 4) for b in range(-3, 4))
    assert abs(lattice_distance(z, tau) - brute) < 1e-15


@settings(max_examples=60, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2))
def test_lattice_distance_invariance(a, b):
    tau = 0.3 + 0.9j
    z = 0.21 + 0.13j
    d0 = lattice_distance(z, tau)
    d1 = lattice_distance(z + a + b * tau, tau)
    assert abs(d0 - d1) < 1e-12


def test_half_lattice():
    tau = 1.1j
    assert lattice_distance(0.5 + 0.55j, tau, "half") < 1e-15
    assert lattice_distance(0.25, tau, "half") == pytest.approx(0.25)


def test_halfint():
    h = HalfInt.of(0.5)
    assert h.twice == 1
    assert (h + h).twice == 2
    assert (-h).twice == -1
    assert not h.is_integer()
    assert HalfInt.of(2).is_integer()
    with pytest.raises(ValueError):
        HalfInt.of(0.3)


def test_policy_validation():
    with pytest.raises(ValueError):
        TruncationPolicy(tol=-1.0)
    with pytest.raises(ValueError):
        TruncationPolicy(n_max=2)
    p = TruncationPolicy()
    assert p.tol == 1e-12 and p.n_max == 4000 and p.pole_guard == 1e-3

"""Analytic functional calculus on nilpotent algebra elements.

Oracles: sympy Taylor expansions of the same scalar functions, evaluated
coefficientwise against the jet expansion along a single nilpotent class.
"""
from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from crepant.algebra import build_model_algebra
from crepant.jets import (PoleError, exp_jet, gamma_jet, inv_unit, log1p_jet,
                          nilpotency_cap, rgamma_jet, sin_pi_jet,
                          sin_ratio_pi, sinc_pi_jet)
from crepant.scalars import NumField, SymField

from conftest import elem_norm


def _p2_line():
    """F3, x = p2: x, x^2, x^3 nonzero, x^4 = 0."""
    alg = build_model_algebra("F3")
    return alg, alg.from_label("p2")


def _scalar_jet_oracle(fexpr, t, order=4, dps=40):
    """Taylor coefficients of a sympy expression at t = 0."""
    with mpmath.workdps(dps):
        poly = sp.series(fexpr, t, 0, order).removeO()
        out = []
        for k in range(order):
            v = sp.N(poly.coeff(t, k), dps + 5)
            out.append(mpmath.mpc(mpmath.mpmathify(str(sp.re(v))),
                                  mpmath.mpmathify(str(sp.im(v)))))
        return out


def _jet_coords(el, alg, x, dps=40):
    """Coordinates of el along 1, x, x^2, x^3 (valid for x = p2 in F3)."""
    # powers of p2 expand in the phi basis triangularly; solve by lookup
    import mpmath as mp
    field = NumField(dps)
    pows = [alg.unit()]
    for _ in range(3):
        pows.append(pows[-1] * x)
    cols = [[field.to_mpc(p.c[i]) for i in range(alg.dim)] for p in pows]
    with mp.workdps(dps):
        A = mp.matrix([[cols[j][i] for j in range(4)] for i in range(alg.dim)])
        b = mp.matrix([field.to_mpc(c) for c in el.c])
        return mp.lu_solve(A.T * A, A.T * b)


def test_nilpotency_cap():
    assert nilpotency_cap(build_model_algebra("F3")) == 3
    assert nilpotency_cap(build_model_algebra("F2")) == 2
    assert nilpotency_cap(build_model_algebra("P112")) == 2


def test_exp_log_inverse():
    alg, x = _p2_line()
    y = log1p_jet(x)
    assert (exp_jet(y) - alg.unit() - x).is_zero()
    z = exp_jet(x) - alg.unit()
    assert (log1p_jet(z) - x).is_zero()


def test_inv_unit():
    alg, x = _p2_line()
    u = alg.unit() + x.qscale(Fraction(3, 7)) + (x * x).qscale(Fraction(-2, 5))
    assert (u * inv_unit(u) - alg.unit()).is_zero()


@pytest.mark.parametrize("base", [Fraction(1), Fraction(1, 3), Fraction(7, 2)])
def test_gamma_jet_matches_sympy_series(base):
    alg, x = _p2_line()
    dps = 40
    field = NumField(dps)
    with mpmath.workdps(dps):
        jet = gamma_jet(field, base, x)
    t = sp.Symbol("t")
    want = _scalar_jet_oracle(sp.gamma(sp.Rational(base.numerator,
                                                   base.denominator) + t), t)
    got = _jet_coords(jet, alg, x, dps)
    with mpmath.workdps(dps):
        for k in range(4):
            assert abs(got[k] - want[k]) < mpmath.mpf(10) ** (5 - dps)


def test_gamma_jet_pole_detected():
    alg, x = _p2_line()
    with pytest.raises(PoleError):
        gamma_jet(NumField(30), 0, x)
    with pytest.raises(PoleError):
        gamma_jet(NumField(30), -2, x)


def test_rgamma_jet_at_negative_integer_base():
    """1/Gamma(-1 + t): series t coefficients -1, gamma-dependent, ..."""
    alg, x = _p2_line()
    dps = 40
    field = NumField(dps)
    with mpmath.workdps(dps):
        jet = rgamma_jet(field, -1, x)
    t = sp.Symbol("t")
    want = _scalar_jet_oracle(1 / sp.gamma(-1 + t), t)
    got = _jet_coords(jet, alg, x, dps)
    with mpmath.workdps(dps):
        assert abs(got[0]) < mpmath.mpf(10) ** (5 - dps)   # zero of 1/Gamma
        for k in range(4):
            assert abs(got[k] - want[k]) < mpmath.mpf(10) ** (5 - dps)


def test_reflection_identity():
    """Gamma(1+x) Gamma(1-x) sin(pi x)/(pi x) = 1 along the jet line."""
    alg, x = _p2_line()
    field = NumField(40)
    with mpmath.workdps(40):
        lhs = gamma_jet(field, 1, x) * gamma_jet(field, 1, -x) \
            * sinc_pi_jet(field, 1, x)
    assert elem_norm(lhs - alg.unit(), dps=40) < mpmath.mpf(10) ** -30


def test_sin_pi_jet_shift():
    """sin(pi(1/2 + x)) = cos(pi x)."""
    alg, x = _p2_line()
    field = NumField(40)
    with mpmath.workdps(40):
        lhs = sin_pi_jet(field, Fraction(1, 2), x)
    t = sp.Symbol("t")
    want = _scalar_jet_oracle(sp.cos(sp.pi * t), t)
    got = _jet_coords(lhs, alg, x, 40)
    with mpmath.workdps(40):
        for k in range(4):
            assert abs(got[k] - want[k]) < mpmath.mpf(10) ** -30


def test_sin_ratio_limit_and_generic():
    """sin(pi x)/(3 sin(pi x/3 + pi j/3)) against sympy, j = 0 and j = 1."""
    alg, x = _p2_line()
    field = NumField(40)
    t = sp.Symbol("t")
    for j in (0, 1, 2):
        with mpmath.workdps(40):
            jet = sin_ratio_pi(field, x, j=j, r=3)
        expr = sp.sin(sp.pi * t) / (3 * sp.sin(sp.pi * t / 3 + sp.pi * j / 3))
        want = _scalar_jet_oracle(expr, t)
        got = _jet_coords(jet, alg, x, 40)
        with mpmath.workdps(40):
            for k in range(4):
                assert abs(got[k] - want[k]) < mpmath.mpf(10) ** -30


def test_symbolic_field_gamma_jet_exact():
    """SymField gamma jet coefficients are exact polygamma expressions."""
    alg, x = _p2_line()
    field = SymField()
    jet = gamma_jet(field, Fraction(1, 2), x)
    # scalar part is Gamma(1/2) = sqrt(pi)
    assert sp.simplify(sp.sympify(jet.c[0]) - sp.sqrt(sp.pi)) == 0

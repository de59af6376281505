"""Landau-Ginzburg mirrors: critical points, pairings, ring structure."""
from fractions import Fraction

import mpmath
import pytest
import sympy as sp

from crepant.lg import (build_lg_model, chart_invariance,
                        connection_eigenvalue_check,
                        connection_matrix_p1113, critical_points, gram_check,
                        quantum_ring, residue_pairing)

COUNTS = {"p112": 4, "p1113": 6, "f2": 4, "f3": 6}
BASES = {"p112": (0.1,), "p1113": (0.1,), "f2": (0.05, 0.1),
         "f3": (0.02, 0.1)}


@pytest.mark.parametrize("mid", sorted(COUNTS))
def test_critical_point_counts(mid):
    lg = build_lg_model(mid)
    pts = critical_points(lg, BASES[mid], dps=30)
    assert len(pts) == COUNTS[mid]
    for p in pts:
        assert p.grad_norm < mpmath.mpf(10) ** -20
        assert abs(p.hess_det) > mpmath.mpf(10) ** -10   # nondegenerate


def test_critical_values_p112_closed_form():
    """W = 4 (y/4)^{1/4} * (4th roots of unity) at the critical points."""
    lg = build_lg_model("p112")
    y = mpmath.mpf("0.1")
    with mpmath.workdps(30):
        pts = critical_points(lg, (y,), dps=30)
        want = sorted([4 * (y / 4) ** mpmath.mpf(0.25)
                       * mpmath.exp(2j * mpmath.pi * k / 4)
                       for k in range(4)], key=lambda v: (v.real, v.imag))
        got = sorted([p.value for p in pts], key=lambda v: (v.real, v.imag))
        for a, b in zip(got, want):
            assert abs(a - b) < mpmath.mpf(10) ** -25


def test_critical_values_p1113_closed_form():
    """W = 6 (y/27)^{1/6} * (6th roots of unity)."""
    lg = build_lg_model("p1113")
    y = mpmath.mpf("0.1")
    with mpmath.workdps(30):
        pts = critical_points(lg, (y,), dps=30)
        want = sorted([6 * (y / 27) ** (mpmath.mpf(1) / 6)
                       * mpmath.exp(2j * mpmath.pi * k / 6)
                       for k in range(6)], key=lambda v: (v.real, v.imag))
        got = sorted([p.value for p in pts], key=lambda v: (v.real, v.imag))
        for a, b in zip(got, want):
            assert abs(a - b) < mpmath.mpf(10) ** -25


def test_residue_pairing_twisted_norm_p112():
    """[PAPER] <1_{1/2}, 1_{1/2}> = 1/2 via det Hess_log = 8 w1^2."""
    lg = build_lg_model("p112")
    y = mpmath.mpf("0.07")
    with mpmath.workdps(40):
        pts = critical_points(lg, (y,), dps=40)
        sq = mpmath.sqrt(y)

        def fhalf(w):
            phi = y / (w[0] * w[1] ** 2)
            return 2 / sq * phi ** 3

        val = residue_pairing(fhalf, fhalf, pts, dps=40)
        assert abs(val - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("mid,base,dps", [
    ("p112", (0.1,), 40),
    ("p1113", (0.1,), 40),
    ("f2", (1e-12, 0.1), 60),
    ("f3", (1e-12, 0.1), 60),
])
def test_gram_matches_poincare(mid, base, dps):
    rep = gram_check(mid, base, dps)
    assert rep["max_diff"] < 1e-8


@pytest.mark.parametrize("mid,base", sorted(BASES.items()))
def test_ring_relations(mid, base):
    rep = quantum_ring(mid, base, dps=30)
    assert rep["n"] == COUNTS[mid]
    for name, resid in rep["relations"].items():
        assert resid < 1e-8, name


def test_quantum_ring_from_q():
    rep = quantum_ring("f2", (0.01, 0.05), dps=30, from_q=True)
    for resid in rep["relations"].values():
        assert resid < 1e-8
    rep = quantum_ring("f3", (0.01, 0.05), dps=30, from_q=True)
    for resid in rep["relations"].values():
        assert resid < 1e-8


def test_connection_matrix_sixth_power_exact():
    y = sp.Symbol("y", positive=True)
    m = connection_matrix_p1113(y)
    p6 = sp.simplify(m ** 6 - (y / 27) * sp.eye(6))
    assert p6 == sp.zeros(6, 6)


def test_connection_eigenvalues_match_critical_values():
    assert connection_eigenvalue_check(y=1, dps=30) < 1e-20


@pytest.mark.parametrize("mid", ["f2", "f3"])
def test_chart_invariance(mid):
    assert chart_invariance(mid, 0.04, 0.09, dps=30) < 1e-20

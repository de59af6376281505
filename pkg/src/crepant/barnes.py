"""Analytic continuation of the small-orbifold hypergeometric series.

Two ingredients:

1.  Closed-form coefficients of the continued series near the large-volume
    point of the resolution, for both model pairs.  In the ramified
    coordinates (u1, u2) with y1 = u1^{-r}, y2 = u1 u2 (r = 3 for the F3
    pair, r = 2 for the F2 pair), the continued z^{-1}I series reads

      sum_{k,l >= 0} C_{k,l} u1^k u2^{l + p2/z},

    and `continued_coeff` returns C_{k,l} as an algebra element whose
    coefficients are Laurent polynomials in z (symbolic backend) or numbers
    at a fixed z (numeric backend).  The equivariant prefactor u2^{p2/z}
    is stripped.

2.  A numeric Mellin-Barnes contour integral realizing the continuation of
    the y2^m coefficient in y1, together with the residue sums on either
    side of the contour and the exact vanishing of the residues at the
    negative-integer poles (an effect of p1^3 = 0; a rank-4 polynomial
    algebra with p^3 != 0 serves as a detector that the vanishing is not an
    artifact of the bookkeeping).

Contour conventions.  The contour runs top-to-bottom along Re s = c with
c = 1/4 by default, so the pole group at s = 0 (the first pole of Gamma(s)
together with the first continued-family pole s = pp1/(3z)) lies to its
LEFT.  Hence:

  * for |y1| < r^{-r^2}... (right-closing region) the integral equals the
    direct power series with its n = 0 term removed,
  * for the left-closing region the integral equals the continued residue
    sum minus the same n = 0 direct term (the joint residue of the base-0
    pole group splits into the n = 0 direct term and the n = m continued
    term; both are finite once the global sin(pi*pp1/z)/pi prefactor is
    included).

`right_side_sum` and `left_side_sum` return exactly those combinations, and
`continued_value` (= integral + the n = 0 direct term) is the continuation
of the full coefficient, valid in both regions.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

import mpmath

from .algebra import build_fake_rank4_algebra, build_model_algebra
from .jets import (exp_jet_scalar, gamma_jet, inv_unit, powers, rgamma_jet,
                   sin_pi_jet, sin_ratio_pi)
from .scalars import NumField, SymField, Z

__all__ = [
    "continued_coeff",
    "continued_series",
    "barnes_integral",
    "continued_value",
    "integrand_decay_check",
    "right_side_sum",
    "left_side_sum",
    "residue_at_negative_integer",
    "gauss_legendre_nodes",
]

# target algebra and ramification index per pair
_PAIRS = {"F3": ("F3", 3), "F2": ("F2", 2)}


def _pair_data(pair):
    if pair not in _PAIRS:
        raise KeyError(f"unknown pair {pair!r} (expected 'F3' or 'F2')")
    target, r = _PAIRS[pair]
    alg = build_model_algebra(target)
    return alg, r


def continued_coeff(pair, k, l, field=None, z=None):
    """Coefficient C_{k,l} of u1^k u2^{l + p2/z} in the continued z^{-1}I.

    pair: "F3" (for the P(1,1,1,3) series continued to the F3 chamber) or
    "F2".  Returns an Elem of the target algebra.
    """
    if field is None:
        field = SymField()
    if z is None:
        z = Z
    alg, r = _pair_data(pair)
    k, l = int(k), int(l)
    if k < 0 or l < 0:
        raise ValueError("coefficient indices must be nonnegative")
    p1 = alg.from_label("p1")
    p2 = alg.from_label("p2")
    pp1 = alg.from_label("pp1")
    zinv = 1 / z
    x1 = p1.scale(zinv)
    x2 = p2.scale(zinv)
    xp = pp1.scale(zinv)

    # global Gamma prefactor: Gamma(1+p1/z)^(r) Gamma(1+p2/z) Gamma(1+pp1/z)
    pref = gamma_jet(field, 1, x1) ** r
    pref = pref * gamma_jet(field, 1, x2)
    pref = pref * gamma_jet(field, 1, xp)

    out = pref
    out = out * sin_ratio_pi(field, xp, j=l - k, r=r)
    out = out * rgamma_jet(field, 1 + Fraction(l - k, r),
                           p2.scale(zinv).qscale(Fraction(1, r))) ** r
    out = out * rgamma_jet(field, 1 + l, x2)
    if pair == "F2":
        # phase from the continuation path (arg y1 = -pi on the cut):
        # exp(i pi ((l-k)/2 + pp1/(2z)))
        half = Fraction(l - k, 2)
        phase = field.exp(field.i * field.pi * field.ratio(half))
        out = out * exp_jet_scalar(
            field, pp1.scale(field.i * field.pi * zinv).qscale(Fraction(1, 2)))
        out = out.scale(phase)
    out = out.qscale(Fraction((-1) ** (k + l), factorial(k)))
    out = out.scale(z ** (-2 * l))
    return out


def continued_series(pair, kmax, lmax, field=None, z=None):
    """{(k, l): C_{k,l}} for 0 <= k <= kmax, 0 <= l <= lmax."""
    return {(k, l): continued_coeff(pair, k, l, field, z)
            for k in range(kmax + 1) for l in range(lmax + 1)}


# ---------------------------------------------------------------------------
# direct and continued residue sums (F3 pair, z = 1, numeric)
# ---------------------------------------------------------------------------

def _direct_term(field, alg, m, n, y1):
    """n-th term of the direct series for the y2^m coefficient:
    y1^{n+p1} / (Gamma(1+p1+n)^3 Gamma(1+pp1+m-3n)), at z = 1."""
    p1 = alg.from_label("p1")
    pp1 = alg.from_label("pp1")
    t = rgamma_jet(field, 1 + n, p1) ** 3
    t = t * rgamma_jet(field, 1 + m - 3 * n, pp1)
    t = t * exp_jet_scalar(field, p1.scale(field.log(y1)))
    return t.scale(field.to_mpc(y1) ** n)


def _continued_term(field, alg, m, n, y1):
    """n-th term of the continued residue sum (poles s=(m-n)/3+pp1/3):
    (-1)^{m+n}/n! * sinratio(pp1, m-n) * y1^{(m-n)/3+p2/3}
      / Gamma(1+p2/3+(m-n)/3)^3,   at z = 1."""
    p2 = alg.from_label("p2")
    pp1 = alg.from_label("pp1")
    p23 = p2.qscale(Fraction(1, 3))
    t = sin_ratio_pi(field, pp1, j=m - n, r=3)
    t = t * rgamma_jet(field, 1 + Fraction(m - n, 3), p23) ** 3
    t = t * exp_jet_scalar(field, p23.scale(field.log(y1)))
    sc = field.power(y1, Fraction(m - n, 3))
    return t.scale(sc).qscale(Fraction((-1) ** (m + n), factorial(n)))


def _elem_norm(field, el):
    with mpmath.workdps(field.dps):
        return max(abs(field.to_mpc(a)) for a in el.c)


def right_side_sum(m, y1, dps=40, nmax=200, include_base_term=False):
    """Direct power series for the y2^m coefficient, z = 1 (|y1| < 1/27).

    By default the n = 0 term is omitted (it lies left of the default
    Barnes contour); pass include_base_term=True for the full series.
    """
    field = NumField(dps)
    with mpmath.workdps(dps):
        alg = build_model_algebra("F3")
        out = alg.zero()
        tol = field.tol(margin=8)
        for n in range(0 if include_base_term else 1, nmax + 1):
            t = _direct_term(field, alg, m, n, y1)
            out = out + t
            if n > m and _elem_norm(field, t) < tol:
                break
        return out


def left_side_sum(m, y1, dps=40, nmax=2000):
    """Continued residue sum minus the n = 0 direct term (|y1| > 1/27).

    Both pole families left of the contour contribute when closing left;
    the direct-family residue at s = 0 enters with the opposite sign to
    its role in the direct series, hence the subtraction.
    """
    field = NumField(dps)
    with mpmath.workdps(dps):
        alg = build_model_algebra("F3")
        out = -_direct_term(field, alg, m, 0, y1)
        tol = field.tol(margin=8)
        for n in range(nmax + 1):
            t = _continued_term(field, alg, m, n, y1)
            out = out + t
            if n > m + 3 and _elem_norm(field, t) < tol:
                break
        return out


# ---------------------------------------------------------------------------
# the contour integral
# ---------------------------------------------------------------------------

_GL_CACHE = {}


def gauss_legendre_nodes(n, dps):
    """Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1]."""
    key = (n, dps)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    with mpmath.workdps(dps + 10):
        nodes = []
        for i in range(1, n + 1):
            # Chebyshev initial guess + Newton on P_n
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4)
                           / (n + mpmath.mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpmath.mpf(1), x
                for kk in range(2, n + 1):
                    p0, p1 = p1, ((2 * kk - 1) * x * p1 - (kk - 1) * p0) / kk
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < mpmath.mpf(10) ** (-(dps + 5)):
                    break
            w = 2 / ((1 - x * x) * dp * dp)
            nodes.append((mpmath.mpf(x), mpmath.mpf(w)))
    _GL_CACHE[key] = nodes
    return nodes


def _integrand_factory(field, alg, fake, m, y1):
    """Precompute s-independent pieces; return the jet integrand s -> F(s):

      Gamma(-pp1 + 3s - m) * pi/sin(pi s) * Gamma(1+p1+s)^{-3} * y1^{s+p1},

    at z = 1."""
    p1 = alg.from_label("p" if fake else "p1")
    pp1 = (-p1).qscale(3) if fake else alg.from_label("pp1")
    with mpmath.workdps(field.dps):
        ymp = field.to_mpc(y1)
        yjet = exp_jet_scalar(field, p1.scale(field.log(y1)))

    def F(s):
        g1 = gamma_jet(field, 3 * s - m, -pp1)
        g2 = inv_unit(gamma_jet(field, 1 + s, p1)) ** 3
        scal = field.pi / mpmath.sin(field.pi * s) * mpmath.power(ymp, s)
        return (g1 * g2 * yjet).scale(scal)

    return F


def barnes_integral(m, y1, dps=40, c=None, T=None, nodes=24, fake=False):
    """prefactor * (1/2pi i) * integral over the contour (top to bottom).

    prefactor = (-1)^m sin(-pi pp1/z)/pi, z = 1.  The contour is the
    vertical line Re s = c traversed downward, with c = 1/4 + m/3 by
    default so that the continued-family poles s = (m-n)/3 + pp1/3 all lie
    to its left while the direct-family poles s = 1, 2, ... lie to its
    right (the pole group at s = 0 is left of the contour for every m).
    Tails are truncated at |Im s| = T (integrand decay ~ exp(-pi |Im s|)),
    chosen from the working precision when not given.
    """
    field = NumField(dps)
    alg = build_fake_rank4_algebra() if fake else build_model_algebra("F3")
    if c is None:
        c = Fraction(1, 4) + Fraction(m, 3)
    if T is None:
        # e^{-pi T} below the target tolerance with margin
        T = int(mpmath.ceil((dps - 3) * mpmath.log(10) / mpmath.pi)) + 2
    glp = gauss_legendre_nodes(nodes, dps)
    F = _integrand_factory(field, alg, fake, m, y1)
    with mpmath.workdps(dps):
        total = alg.zero()
        cc = field.ratio(c)
        for panel in range(2 * T):
            a = -T + panel
            for x, w in glp:
                t = a + (x + 1) / 2
                s = cc + field.i * t
                total = total + F(s).scale(w / 2)
        # ds = i dt upward; downward flips sign; divide by 2*pi*i
        total = total.scale(mpmath.mpf(-1) / (2 * field.pi))
    p1 = alg.from_label("p" if fake else "p1")
    pp1 = (-p1).qscale(3) if fake else alg.from_label("pp1")
    with mpmath.workdps(dps):
        pref = sin_pi_jet(field, 0, -pp1).scale(1 / field.pi)
        out = pref * total
    return out if m % 2 == 0 else -out


def continued_value(m, y1, dps=40, **kw):
    """Analytic continuation of the y2^m coefficient at y1, z = 1.

    Equals barnes_integral plus the n = 0 direct-series term (the residue
    group at s = 0, which sits left of the contour for every m).  For
    |y1| < 1/27 this reproduces the direct series; for |y1| > 1/27 the
    continued residue sum.
    """
    field = NumField(dps)
    alg = build_model_algebra("F3")
    with mpmath.workdps(dps):
        return barnes_integral(m, y1, dps=dps, **kw) \
            + _direct_term(field, alg, m, 0, y1)


def integrand_decay_check(m, y1, dps=30, heights=(6, 10, 14)):
    """|integrand| at increasing contour heights (quantitative decay)."""
    field = NumField(dps)
    alg = build_model_algebra("F3")
    F = _integrand_factory(field, alg, False, m, y1)
    c = field.ratio(Fraction(1, 4) + Fraction(m, 3))
    out = []
    with mpmath.workdps(dps):
        for T in heights:
            out.append(_elem_norm(field, F(c + field.i * T)))
    return out


# ---------------------------------------------------------------------------
# exact vanishing of the residues at s = -1 - n
# ---------------------------------------------------------------------------

def residue_at_negative_integer(m, n, fake=False, field=None):
    """prefactor * Res_{s = -1-n} of the Barnes integrand, exactly (y1 = 1).

    After reflection the global sin(pi pp1/z) prefactor cancels against the
    pole of Gamma(-pp1 - M), M = 3 + 3n + m, leaving

      (-1)^{m+n+1+M} / Gamma(1+M+pp1) * Gamma(p1 - n)^{-3},

    and Gamma(p1-n)^{-3} is proportional to sin(pi p1)^3, i.e. to p1^3,
    which vanishes in the genuine algebra and survives in the rank-4
    detector algebra.
    """
    if field is None:
        field = SymField()
    alg = build_fake_rank4_algebra() if fake else build_model_algebra("F3")
    p1 = alg.from_label("p" if fake else "p1")
    pp1 = (-p1).qscale(3) if fake else alg.from_label("pp1")
    M = 3 + 3 * n + m
    out = inv_unit(gamma_jet(field, 1 + M, pp1))
    out = out * rgamma_jet(field, -n, p1) ** 3
    sign = (-1) ** (m + n + 1 + M)
    return out.qscale(sign)

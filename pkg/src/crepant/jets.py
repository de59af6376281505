"""Analytic functional calculus on nilpotent algebra elements ("jets").

Arguments are elements of a GradedAlgebra with zero scalar part; functions
are expanded by their Taylor series at an exact rational base point, which
terminates because the argument is nilpotent.  Coefficients live in a
pluggable scalar field (SymField for exact symbolic constants — where they
may carry the formal variable z — or NumField for high-precision numerics).

The gamma jet uses log Gamma(b + x) = log Gamma(b) + sum_k psi^(k-1)(b) x^k / k!,
so only gamma and polygamma values at the base point are needed.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import Elem

__all__ = [
    "PoleError",
    "nilpotency_cap",
    "powers",
    "exp_jet",
    "log1p_jet",
    "gamma_jet",
    "rgamma_jet",
    "sin_pi_jet",
    "cos_pi_jet",
    "sinc_pi_jet",
    "sin_ratio_pi",
    "inv_unit",
    "jet_apply",
]


class PoleError(ArithmeticError):
    """Function not analytic at the jet base point."""


def nilpotency_cap(alg):
    """Largest k with x^k possibly nonzero for x of zero scalar part.

    Every positive-degree basis class has degree >= 2 in our algebras, so
    x^k vanishes once 2k exceeds the top degree.
    """
    dmin = min((d for d in alg.degrees if d > 0), default=Fraction(2))
    return int(alg.top_degree() // dmin)


def powers(x, cap=None):
    """[1, x, x^2, ...] up to the nilpotency cap."""
    alg = x.alg
    if cap is None:
        cap = nilpotency_cap(alg)
    pows = [alg.unit()]
    for _ in range(cap):
        nxt = pows[-1] * x
        pows.append(nxt)
        if nxt.is_zero():
            break
    return pows


def _series(x, coeff_of_k, start=0):
    """sum_k coeff_of_k(k) * x^k over the nilpotent range (exact rationals)."""
    out = x.alg.zero()
    for k, p in enumerate(powers(x)):
        if k < start:
            continue
        q = coeff_of_k(k)
        if q:
            out = out + p.qscale(q)
    return out


def exp_jet(x):
    """exp(x) for nilpotent x; rational coefficients."""
    return _series(x, lambda k: Fraction(1, factorial(k)))


def log1p_jet(x):
    """log(1 + x) for nilpotent x."""
    return _series(x, lambda k: Fraction((-1) ** (k + 1), k) if k else 0)


def gamma_jet(field, base, x):
    """Gamma(base + x) with x nilpotent.

    The base point may be an exact rational (checked against Gamma poles)
    or a numeric scalar (used on the Barnes contour, where s is complex).
    """
    try:
        base = Fraction(base)
    except (TypeError, ValueError):
        pass
    if isinstance(base, Fraction) and base.denominator == 1 and base <= 0:
        raise PoleError(f"Gamma pole at base point {base}")
    pows = powers(x)
    expo = x.alg.zero()
    for k in range(1, len(pows)):
        expo = expo + pows[k].scale(field.polygamma(k - 1, base)).qscale(
            Fraction(1, factorial(k)))
    return exp_jet_scalar(field, expo).scale(field.gamma(base))


def exp_jet_scalar(field, x):
    """exp of a nilpotent element whose coefficients are field scalars."""
    out = x.alg.unit()
    term = x.alg.unit()
    for k in range(1, nilpotency_cap(x.alg) + 1):
        term = (term * x).qscale(Fraction(1, k))
        out = out + term
    return out


def rgamma_jet(field, base, x):
    """1/Gamma(base + x); handles nonpositive-integer base via reflection.

    At base = -m the reciprocal gamma has a zero:
      1/Gamma(-m + x) = (-1)^m Gamma(1 + m - x) sin(pi x) / pi.
    """
    base = Fraction(base)
    if base.denominator == 1 and base <= 0:
        m = -int(base)
        g = gamma_jet(field, Fraction(1 + m), -x)
        s = sin_pi_jet(field, 0, x)          # sin(pi x), nilpotent
        out = (g * s).scale(1 / field.pi)
        return out if m % 2 == 0 else -out
    return inv_unit(gamma_jet(field, base, x))


def sin_pi_jet(field, c, x):
    """sin(pi(c + x)) with c exact rational, x nilpotent."""
    c = Fraction(c)
    pix = x.scale(field.pi)
    sin_series = _series(pix, lambda k: Fraction((-1) ** (k // 2), factorial(k))
                         if k % 2 == 1 else 0)
    cos_series = _series(pix, lambda k: Fraction((-1) ** (k // 2), factorial(k))
                         if k % 2 == 0 else 0)
    sc = field.sin(field.pi * field.ratio(c))
    cc = field.cos(field.pi * field.ratio(c))
    return cos_series.scale(sc) + sin_series.scale(cc)


def cos_pi_jet(field, c, x):
    """cos(pi(c + x))."""
    return sin_pi_jet(field, Fraction(c) + Fraction(1, 2), x)


def sinc_pi_jet(field, a, x):
    """sin(pi a x)/(pi a x) as a unit jet: sum (-1)^k (pi a x)^{2k}/(2k+1)!."""
    pax = x.scale(field.pi * field.ratio(a))
    return _series(pax, lambda k: Fraction((-1) ** (k // 2), factorial(k + 1))
                   if k % 2 == 0 else 0)


def sin_ratio_pi(field, x, j=0, r=3):
    """sin(pi x) / (r sin(pi x / r + pi j / r)) for nilpotent x, integer j.

    When j = 0 mod r both numerator and denominator vanish at x = 0; the
    common factor x is cancelled exactly via sinc jets (the limit is 1 at
    x = 0 when j = 0).
    """
    j = int(j)
    r = int(r)
    if j % r == 0:
        ratio = sinc_pi_jet(field, 1, x) * inv_unit(
            sinc_pi_jet(field, Fraction(1, r), x))
        return ratio if (j // r) % 2 == 0 else -ratio
    num = sin_pi_jet(field, 0, x)
    den = sin_pi_jet(field, Fraction(j, r), x.qscale(Fraction(1, r))).qscale(r)
    return num * inv_unit(den)


def inv_unit(x):
    """Inverse of an element with invertible scalar part."""
    s = x.c[0]
    if isinstance(s, (int, Fraction)) and s == 0:
        raise ZeroDivisionError("element has zero scalar part")
    n = x.nilpotent_part().scale(1 / s)
    out = x.alg.unit()
    term = x.alg.unit()
    for _ in range(nilpotency_cap(x.alg)):
        term = -(term * n)
        out = out + term
    return out.scale(1 / s)


def jet_apply(field, f, x, base=Fraction(1)):
    """Named-function dispatcher (spec-facing convenience)."""
    table = {
        "exp": lambda: exp_jet(x),
        "log1p": lambda: log1p_jet(x),
        "gamma": lambda: gamma_jet(field, base, x),
        "rgamma": lambda: rgamma_jet(field, base, x),
        "sin_pi": lambda: sin_pi_jet(field, base, x),
        "cos_pi": lambda: cos_pi_jet(field, base, x),
    }
    if f not in table:
        raise KeyError(f"unknown analytic function {f!r}")
    return table[f]()

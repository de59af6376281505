"""Pluggable scalar fields for coefficients.

Three backends:

  ExactField  — fractions.Fraction; exact rational series / PF arithmetic.
  SymField    — sympy expressions over the constant field Q(i, sqrt(3), pi,
                zeta(3), Gamma(1/3)); Gamma(2/3) is rewritten through
                Gamma(1/3)Gamma(2/3) = 2*pi/sqrt(3) before equality checks.
  NumField    — mpmath complex numbers at a configured decimal precision.

All three expose the same small protocol used by the jet calculus: conversion
from Fraction, the special constants, gamma/polygamma at rational base points,
elementary functions, and a trusted zero test.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath
import sympy as sp

__all__ = ["ExactField", "SymField", "NumField", "Z"]

# the formal z variable used by the symbolic backend (deg z = 2)
Z = sp.Symbol("z")


class ExactField:
    """Exact rationals.  No transcendental constants are available."""

    name = "exact"

    def ratio(self, q):
        return Fraction(q)

    zero = Fraction(0)
    one = Fraction(1)

    def is_zero(self, x):
        return x == 0

    def simplify(self, x):
        return x


class SymField:
    """Sympy expressions; exact symbolic constants."""

    name = "sym"

    def __init__(self):
        self.zero = sp.Integer(0)
        self.one = sp.Integer(1)
        self.i = sp.I
        self.pi = sp.pi
        self.sqrt3 = sp.sqrt(3)
        self.zeta3 = sp.zeta(3)
        self.gamma13 = sp.gamma(sp.Rational(1, 3))

    def ratio(self, q):
        q = Fraction(q)
        return sp.Rational(q.numerator, q.denominator)

    # -- special functions at exact rational points -----------------------
    def gamma(self, q):
        return sp.gamma(self.ratio(q))

    def polygamma(self, k, q):
        # k = 0 gives digamma; sympy leaves most rational arguments as
        # closed forms or unevaluated symbols -- all occurrences cancel
        # structurally in the identities we check.
        return sp.polygamma(k, self.ratio(q))

    def exp(self, x):
        return sp.exp(x)

    def sin(self, x):
        return sp.sin(x)

    def cos(self, x):
        return sp.cos(x)

    def sqrt(self, x):
        return sp.sqrt(x)

    def log(self, x):
        return sp.log(x)

    def power(self, x, q):
        return sp.Pow(x, self.ratio(q))

    # -- normalization -----------------------------------------------------
    _G23 = sp.gamma(sp.Rational(2, 3))

    def simplify(self, x):
        x = sp.sympify(x)
        if x.has(self._G23):
            x = x.subs(self._G23,
                       2 * sp.pi / (sp.sqrt(3) * sp.gamma(sp.Rational(1, 3))))
        return sp.simplify(sp.expand(x))

    def is_zero(self, x):
        x = sp.sympify(x)
        if x.is_zero is True:
            return True
        s = self.simplify(x)
        if s.is_zero is True:
            return True
        if s.has(sp.polygamma):
            s = self.simplify(canonicalize_polygamma(s))
            if s.is_zero is True:
                return True
        eq = s.equals(0)
        return bool(eq) if eq is not None else False

    def equal(self, a, b):
        return self.is_zero(sp.sympify(a) - sp.sympify(b))


def _polygamma_table(kmax=5):
    """Closed forms / canonical eliminations for polygamma at 1, 1/2, 2/3.

    psi^(k)(1)   = -gamma or (-1)^{k+1} k! zeta(k+1);
    psi^(k)(1/2) = -gamma - 2 log 2 or (-1)^{k+1} k! (2^{k+1}-1) zeta(k+1);
    psi^(k)(2/3) = (-1)^k (psi^(k)(1/3) + d^k/dx^k [pi cot(pi x)] at 1/3)
                   (reflection), and for even k additionally
    psi^(k)(1/3) = ((3^{k+1}-1) psi^(k)(1) - R_k)/2   (triplication).

    Odd-k psi^(k)(1/3) has no elementary closed form; it is left symbolic
    and must cancel in any identity we certify.
    """
    x = sp.Symbol("x")
    table = {}
    fac = 1
    for k in range(kmax + 1):
        if k == 0:
            # Gauss digamma values (the k = 0 triplication formula carries
            # an extra -3 log 3, so just record the closed forms directly)
            psi1 = -sp.EulerGamma
            table[sp.polygamma(0, sp.Rational(1, 2))] = \
                -sp.EulerGamma - 2 * sp.log(2)
            table[sp.polygamma(0, sp.Rational(1, 3))] = \
                -sp.EulerGamma - sp.Rational(3, 2) * sp.log(3) \
                - sp.pi / (2 * sp.sqrt(3))
            table[sp.polygamma(0, sp.Rational(2, 3))] = \
                -sp.EulerGamma - sp.Rational(3, 2) * sp.log(3) \
                + sp.pi / (2 * sp.sqrt(3))
            table[sp.polygamma(0, sp.Integer(1))] = psi1
            continue
        else:
            fac *= k
            psi1 = sp.Integer((-1) ** (k + 1) * fac) * sp.zeta(k + 1)
            table[sp.polygamma(k, sp.Rational(1, 2))] = \
                sp.Integer((-1) ** (k + 1) * fac * (2 ** (k + 1) - 1)) \
                * sp.zeta(k + 1)
        table[sp.polygamma(k, sp.Integer(1))] = psi1
        rk = sp.diff(sp.pi * sp.cot(sp.pi * x), x, k).subs(
            x, sp.Rational(1, 3))
        third = sp.polygamma(k, sp.Rational(1, 3))
        if k % 2 == 0:
            third = ((3 ** (k + 1) - 1) * psi1 - rk) / 2
            table[sp.polygamma(k, sp.Rational(1, 3))] = third
        table[sp.polygamma(k, sp.Rational(2, 3))] = \
            sp.Integer((-1) ** k) * (third + rk)
    return {k: sp.simplify(v) for k, v in table.items()}


_PSI_TABLE = None


def canonicalize_polygamma(expr):
    """Rewrite polygamma values at 1, 1/2, 1/3, 2/3 (and shifts of these)
    into the constant field, leaving only odd-order polygamma(1/3) symbolic.
    """
    global _PSI_TABLE
    if _PSI_TABLE is None:
        _PSI_TABLE = _polygamma_table()
    expr = sp.expand_func(sp.sympify(expr))
    # shift rational base points down into (0, 1]
    shifts = {}
    for at in expr.atoms(sp.polygamma):
        k, q = at.args
        if not (k.is_Integer and k >= 0 and q.is_Rational and q > 1):
            continue
        kk = int(k)
        fac = sp.factorial(kk)
        corr = sp.Integer(0)
        while q > 1:   # psi^(k)(q) = psi^(k)(q-1) + (-1)^k k!/(q-1)^{k+1}
            q = q - 1
            corr += sp.Integer((-1) ** kk) * fac / q ** (kk + 1)
        shifts[at] = sp.polygamma(kk, q) + corr
    if shifts:
        expr = expr.subs(shifts)
    return expr.subs(_PSI_TABLE)


class NumField:
    """High-precision complex numbers via mpmath."""

    name = "num"

    def __init__(self, dps=40):
        self.dps = dps
        with mpmath.workdps(dps):
            self.zero = mpmath.mpc(0)
            self.one = mpmath.mpc(1)
            self.i = mpmath.mpc(0, 1)
            self.pi = mpmath.mpc(mpmath.pi)
            self.sqrt3 = mpmath.mpc(mpmath.sqrt(3))
            self.zeta3 = mpmath.mpc(mpmath.zeta(3))
            self.gamma13 = mpmath.mpc(mpmath.gamma(mpmath.mpf(1) / 3))

    def ratio(self, q):
        q = Fraction(q)
        with mpmath.workdps(self.dps):
            return mpmath.mpc(q.numerator) / q.denominator

    def to_mpc(self, x):
        with mpmath.workdps(self.dps):
            if isinstance(x, Fraction):
                return mpmath.mpc(x.numerator) / x.denominator
            return mpmath.mpc(x)

    def gamma(self, q):
        with mpmath.workdps(self.dps):
            return mpmath.gamma(self.to_mpc(q))

    def polygamma(self, k, q):
        with mpmath.workdps(self.dps):
            if k == 0:
                return mpmath.digamma(self.to_mpc(q))
            return mpmath.polygamma(k, self.to_mpc(q))

    def exp(self, x):
        with mpmath.workdps(self.dps):
            return mpmath.exp(self.to_mpc(x))

    def sin(self, x):
        with mpmath.workdps(self.dps):
            return mpmath.sin(self.to_mpc(x))

    def cos(self, x):
        with mpmath.workdps(self.dps):
            return mpmath.cos(self.to_mpc(x))

    def sqrt(self, x):
        with mpmath.workdps(self.dps):
            return mpmath.sqrt(self.to_mpc(x))

    def log(self, x):
        with mpmath.workdps(self.dps):
            return mpmath.log(self.to_mpc(x))

    def power(self, x, q):
        q = Fraction(q)
        with mpmath.workdps(self.dps):
            return mpmath.power(self.to_mpc(x), self.ratio(q))

    def simplify(self, x):
        return x

    def tol(self, margin=5):
        return mpmath.mpf(10) ** (-(self.dps - margin))

    def is_zero(self, x, margin=5):
        with mpmath.workdps(self.dps):
            return abs(self.to_mpc(x)) < self.tol(margin)

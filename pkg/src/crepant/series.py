"""Truncated formal series with algebra-valued Laurent-in-z coefficients.

Three layers:

  LaurentZ   — sparse map (integer z-exponent -> algebra element).
  CohSeries  — map (exponent vector in the base variables, entries exact
               rationals -> LaurentZ), with an optional y^{P/z} prefactor
               handled symbolically via D_i(y^{P/z} f) = y^{P/z}(p_i + D_i)f.
  PolySeries — plain scalar series (used for mirror maps and reversion).

Fractional powers are realized directly as rational exponents with
denominators dividing the model's ramification index; arithmetic is exact
whenever the scalars are exact.
"""
from __future__ import annotations

from fractions import Fraction

from .algebra import Elem, MixedAlgebraError, smul

__all__ = ["LaurentZ", "CohSeries", "PolySeries", "residue_z",
           "series_to_json", "series_from_json"]


def _is_zero_scalar(a):
    if isinstance(a, (int, Fraction)):
        return a == 0
    z = a == 0
    return z is True or z == True  # noqa: E712


# ---------------------------------------------------------------------------
# LaurentZ
# ---------------------------------------------------------------------------

class LaurentZ:
    """Finite Laurent polynomial in z with coefficients in a GradedAlgebra."""

    __slots__ = ("alg", "t")

    def __init__(self, alg, terms=None):
        self.alg = alg
        t = {}
        if terms:
            for k, e in terms.items():
                if not e.is_zero():
                    t[int(k)] = e
        self.t = t

    @classmethod
    def of(cls, elem, zpow=0):
        return cls(elem.alg, {zpow: elem})

    def coeff(self, k):
        return self.t.get(k, self.alg.zero())

    def is_zero(self):
        return not self.t

    def __add__(self, other):
        t = dict(self.t)
        for k, e in other.t.items():
            t[k] = t[k] + e if k in t else e
        return LaurentZ(self.alg, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentZ(self.alg, {k: -e for k, e in self.t.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentZ):
            t = {}
            for k1, e1 in self.t.items():
                for k2, e2 in other.t.items():
                    k = k1 + k2
                    p = e1 * e2
                    t[k] = t[k] + p if k in t else p
            return LaurentZ(self.alg, t)
        if isinstance(other, Elem):
            return LaurentZ(self.alg, {k: e * other for k, e in self.t.items()})
        return self.scale(other)

    def mul_elem(self, x):
        return LaurentZ(self.alg, {k: x * e for k, e in self.t.items()})

    def scale(self, s):
        return LaurentZ(self.alg, {k: e.scale(s) for k, e in self.t.items()})

    def qscale(self, q):
        q = Fraction(q)
        if q == 0:
            return LaurentZ(self.alg)
        return LaurentZ(self.alg, {k: e.qscale(q) for k, e in self.t.items()})

    def shift(self, dz):
        """Multiply by z^dz."""
        return LaurentZ(self.alg, {k + dz: e for k, e in self.t.items()})

    def clip(self, zmin, zmax):
        return LaurentZ(self.alg, {k: e for k, e in self.t.items()
                                   if zmin <= k <= zmax})

    def map_coeffs(self, f):
        return LaurentZ(self.alg, {k: e.map_coeffs(f) for k, e in self.t.items()})

    def window(self):
        if not self.t:
            return (0, 0)
        return (min(self.t), max(self.t))

    def __eq__(self, other):
        return isinstance(other, LaurentZ) and (self - other).is_zero()

    def __repr__(self):
        if not self.t:
            return "0"
        return " + ".join(f"z^{k}*({e})" for k, e in sorted(self.t.items()))


def residue_z(v):
    """Coefficient of z^{-1}."""
    return v.coeff(-1)


# ---------------------------------------------------------------------------
# CohSeries
# ---------------------------------------------------------------------------

class CohSeries:
    """Truncated series in base variables with LaurentZ coefficients."""

    __slots__ = ("alg", "vars", "order", "terms", "prefactor")

    def __init__(self, alg, vars, order, terms=None, prefactor=None):
        """vars: tuple of (name, ramification); prefactor: tuple of Elem or None."""
        self.alg = alg
        self.vars = tuple((str(n), int(r)) for n, r in vars)
        self.order = Fraction(order)
        self.prefactor = tuple(prefactor) if prefactor else None
        t = {}
        if terms:
            for e, lz in terms.items():
                e = tuple(Fraction(x) for x in e)
                if sum(e) <= self.order and not lz.is_zero():
                    t[e] = lz
        self.terms = t

    # -- helpers -----------------------------------------------------------
    def _like(self, terms, prefactor="keep"):
        pf = self.prefactor if prefactor == "keep" else prefactor
        return CohSeries(self.alg, self.vars, self.order, terms, pf)

    def coeff(self, exp):
        exp = tuple(Fraction(x) for x in exp)
        return self.terms.get(exp, LaurentZ(self.alg))

    def is_zero(self):
        return not self.terms

    def exponents(self):
        return sorted(self.terms)

    # -- arithmetic --------------------------------------------------------
    def _check(self, other):
        if self.alg is not other.alg or self.vars != other.vars:
            raise MixedAlgebraError("incompatible series")

    def __add__(self, other):
        self._check(other)
        if self.prefactor != other.prefactor and not (
                self.is_zero() or other.is_zero()):
            raise ValueError("cannot add series with different prefactors")
        t = dict(self.terms)
        for e, lz in other.terms.items():
            t[e] = t[e] + lz if e in t else lz
        pf = self.prefactor if not self.is_zero() else other.prefactor
        return self._like(t, pf)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like({e: -lz for e, lz in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CohSeries):
            return self.scale(other)
        self._check(other)
        if self.prefactor and other.prefactor:
            raise ValueError("at most one factor may carry a prefactor")
        t = {}
        for e1, l1 in self.terms.items():
            for e2, l2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > self.order:
                    continue
                p = l1 * l2
                t[e] = t[e] + p if e in t else p
        return self._like(t, self.prefactor or other.prefactor)

    def scale(self, s):
        return self._like({e: lz.scale(s) for e, lz in self.terms.items()})

    def qscale(self, q):
        return self._like({e: lz.qscale(q) for e, lz in self.terms.items()})

    def mul_elem(self, x):
        return self._like({e: lz.mul_elem(x) for e, lz in self.terms.items()})

    def shift_z(self, dz):
        return self._like({e: lz.shift(dz) for e, lz in self.terms.items()})

    def mul_mono(self, mono, zpow=0, coeff=None):
        """Multiply by coeff * y^mono * z^zpow (mono: exponent tuple)."""
        mono = tuple(Fraction(x) for x in mono)
        t = {}
        for e, lz in self.terms.items():
            e2 = tuple(a + b for a, b in zip(e, mono))
            if sum(e2) > self.order:
                continue
            lz2 = lz.shift(zpow) if zpow else lz
            if coeff is not None:
                lz2 = lz2.qscale(coeff)
            t[e2] = t[e2] + lz2 if e2 in t else lz2
        return self._like(t)

    def truncate(self, order):
        order = Fraction(order)
        t = {e: lz for e, lz in self.terms.items() if sum(e) <= order}
        return CohSeries(self.alg, self.vars, order, t, self.prefactor)

    def map_coeffs(self, f):
        return self._like({e: lz.map_coeffs(f) for e, lz in self.terms.items()})

    # -- calculus ----------------------------------------------------------
    def d_log(self, i):
        """Apply D_i = z y_i d/dy_i, conjugated through the prefactor."""
        t = {}
        for e, lz in self.terms.items():
            out = LaurentZ(self.alg)
            if e[i]:
                out = out + lz.shift(1).qscale(e[i])
            if self.prefactor is not None:
                out = out + lz.mul_elem(self.prefactor[i])
            if not out.is_zero():
                t[e] = t[e] + out if e in t else out
        return self._like(t)

    def apply_factor(self, lvec, m):
        """Apply (sum_i lvec_i D_i + m z) with the prefactor rule."""
        out = self._like({})
        for i, li in enumerate(lvec):
            if li:
                out = out + self.d_log(i).qscale(li)
        if m:
            out = out + self.shift_z(1).qscale(m)
        return out

    def strip_prefactor(self):
        return self._like(dict(self.terms), None)

    def __eq__(self, other):
        return (isinstance(other, CohSeries) and self.vars == other.vars
                and self.prefactor == other.prefactor
                and (self - other).is_zero())

    def __repr__(self):
        bits = []
        for e in self.exponents()[:12]:
            mono = "*".join(f"{n}^{x}" for (n, _), x in zip(self.vars, e) if x)
            bits.append(f"[{mono or '1'}]({self.terms[e]})")
        more = " + ..." if len(self.terms) > 12 else ""
        pre = "y^{P/z}*" if self.prefactor else ""
        return pre + (" + ".join(bits) if bits else "0") + more


# ---------------------------------------------------------------------------
# PolySeries (scalar series)
# ---------------------------------------------------------------------------

class PolySeries:
    """Truncated scalar series in the base variables, exact or numeric."""

    __slots__ = ("vars", "order", "terms")

    def __init__(self, vars, order, terms=None):
        self.vars = tuple(str(v) for v in vars)
        self.order = Fraction(order)
        t = {}
        if terms:
            for e, c in terms.items():
                e = tuple(Fraction(x) for x in e)
                if sum(e) <= self.order and not _is_zero_scalar(c):
                    t[e] = c
        self.terms = t

    @classmethod
    def const(cls, vars, order, c=1):
        return cls(vars, order, {(Fraction(0),) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars, order, i, power=1):
        vars = tuple(vars)
        e = [Fraction(0)] * len(vars)
        e[i] = Fraction(power)
        return cls(vars, order, {tuple(e): 1})

    def coeff(self, exp):
        return self.terms.get(tuple(Fraction(x) for x in exp), 0)

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((Fraction(0),) * len(self.vars), 0)

    def _like(self, terms):
        return PolySeries(self.vars, self.order, terms)

    def __add__(self, other):
        if not isinstance(other, PolySeries):
            other = PolySeries.const(self.vars, self.order, other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return self._like(t)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other

    def __rsub__(self, other):
        return (-1) * self + other

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolySeries):
            return self._like({e: c * other for e, c in self.terms.items()})
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > self.order:
                    continue
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return self._like(t)

    def __rmul__(self, other):
        return self * other

    def qscale(self, q):
        return self._like({e: smul(q, c) for e, c in self.terms.items()})

    def __pow__(self, n):
        r = PolySeries.const(self.vars, self.order)
        b = self
        n = int(n)
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def min_positive_degree(self):
        degs = [sum(e) for e in self.terms if sum(e) > 0]
        return min(degs) if degs else None

    def exp(self):
        """exp of a series with zero constant term."""
        if not _is_zero_scalar(self.constant_term()):
            raise ValueError("exp needs zero constant term")
        step = self.min_positive_degree()
        if step is None:
            return PolySeries.const(self.vars, self.order)
        kmax = int(self.order / step) + 1
        out = PolySeries.const(self.vars, self.order)
        term = PolySeries.const(self.vars, self.order)
        for k in range(1, kmax + 1):
            term = (term * self).qscale(Fraction(1, k))
            if term.is_zero():
                break
            out = out + term
        return out

    def log(self):
        """log of a unit series (constant term 1)."""
        u = self - 1
        if not _is_zero_scalar((self.constant_term() - 1) + 0):
            raise ValueError("log needs constant term 1")
        step = u.min_positive_degree()
        if step is None:
            return PolySeries(self.vars, self.order)
        kmax = int(self.order / step) + 1
        out = PolySeries(self.vars, self.order)
        term = PolySeries.const(self.vars, self.order)
        for k in range(1, kmax + 1):
            term = term * u
            if term.is_zero():
                break
            out = out + term.qscale(Fraction((-1) ** (k + 1), k))
        return out

    def inv(self):
        """Inverse of a unit series."""
        c0 = self.constant_term()
        if _is_zero_scalar(c0):
            raise ValueError("inverse needs invertible constant term")
        if isinstance(c0, int):
            c0 = Fraction(c0)
        u = self._like({e: c / c0 for e, c in self.terms.items()})
        n = u - 1
        step = n.min_positive_degree()
        out = PolySeries.const(self.vars, self.order)
        if step is not None:
            kmax = int(self.order / step) + 1
            term = PolySeries.const(self.vars, self.order)
            for _ in range(kmax):
                term = (-1) * (term * n)
                if term.is_zero():
                    break
                out = out + term
        return out._like({e: c / c0 for e, c in out.terms.items()})

    def subst(self, repl):
        """Substitute variables: repl maps var name -> PolySeries (shared vars).

        Exponents must be nonnegative integers for substituted variables.
        """
        tgt = next(iter(repl.values()))
        out = PolySeries(tgt.vars, tgt.order)
        for e, c in self.terms.items():
            term = PolySeries.const(tgt.vars, tgt.order, c)
            for name, x in zip(self.vars, e):
                if x == 0:
                    continue
                if name in repl:
                    if x.denominator != 1 or x < 0:
                        raise ValueError(
                            f"cannot substitute into exponent {x} of {name}")
                    term = term * (repl[name] ** int(x))
                else:
                    j = tgt.vars.index(name)
                    mono = [Fraction(0)] * len(tgt.vars)
                    mono[j] = x
                    term = term * PolySeries(tgt.vars, tgt.order,
                                             {tuple(mono): 1})
            out = out + term
        return out

    def revert(self):
        """Compositional inverse of a univariate series q = y(1 + ...)."""
        if len(self.vars) != 1:
            raise ValueError("revert needs a univariate series")
        one = (Fraction(1),)
        if self.coeff((0,)) != 0 or self.coeff(one) != 1:
            raise ValueError("revert needs the form y + O(y^2)")
        name = self.vars[0]
        # q = y u(y); y = q v(q) with v = 1 / u(q v)
        u = self._like({(e[0] - 1,): c for e, c in self.terms.items()})
        v = PolySeries.const(self.vars, self.order)
        qv = PolySeries.var(self.vars, self.order, 0)
        steps = int(self.order) + 2
        for _ in range(steps):
            v = u.subst({name: qv * v}).inv()
        return qv * v

    def map_scalars(self, f):
        return self._like({e: f(c) for e, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, PolySeries) and (self - other).is_zero()

    def __repr__(self):
        bits = []
        for e in sorted(self.terms)[:14]:
            mono = "*".join(f"{n}^{x}" for n, x in zip(self.vars, e) if x)
            bits.append(f"({self.terms[e]}){'*' + mono if mono else ''}")
        more = " + ..." if len(self.terms) > 14 else ""
        return (" + ".join(bits) if bits else "0") + more


# ---------------------------------------------------------------------------
# JSON round-trip (exact scalars)
# ---------------------------------------------------------------------------

def _frac_str(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 \
        else str(q.numerator)


def series_to_json(s, window=None):
    """Serialize an exact CohSeries per the declared schema.

    Each z entry is [zexp, [{"class": label, "val": "num/den"}, ...]];
    a window (zmin, zmax) clips the exported z-range when given.
    """
    terms = []
    for e in s.exponents():
        lz = s.terms[e]
        if window is not None:
            lz = lz.clip(*window)
        zlist = []
        for k in sorted(lz.t):
            el = lz.t[k]
            classes = [{"class": s.alg.basis[i], "val": _frac_str(c)}
                       for i, c in enumerate(el.c) if c]
            if classes:
                zlist.append([k, classes])
        if zlist:
            terms.append({"exp": [_frac_str(x) for x in e], "z": zlist})
    return {
        "vars": [{"name": n, "ram": r} for n, r in s.vars],
        "prefactor": s.prefactor is not None,
        "order": _frac_str(s.order),
        "algebra": s.alg.name,
        "terms": terms,
    }


def series_from_json(doc, alg, prefactor=None):
    vars = tuple((v["name"], v["ram"]) for v in doc["vars"])
    order = Fraction(doc.get("order", "10"))
    terms = {}
    for item in doc["terms"]:
        e = tuple(Fraction(x) for x in item["exp"])
        t = {}
        for k, classes in item["z"]:
            if isinstance(classes, dict):   # tolerate single-object form
                classes = [classes]
            c = [Fraction(0)] * alg.dim
            for obj in classes:
                c[alg.basis.index(obj["class"])] += Fraction(obj["val"])
            t[int(k)] = alg.el(c)
        terms[e] = LaurentZ(alg, t)
    if doc.get("prefactor") and prefactor is None:
        raise ValueError("document declares a prefactor; supply the classes")
    return CohSeries(alg, vars, order, terms,
                     prefactor if doc.get("prefactor") else None)

"""Toric model descriptors, I-functions, and Picard-Fuchs systems.

Each model is described by its charge matrix (torus weights of the GIT
presentation); the I-function and the Picard-Fuchs box operators are both
generated from that data.  The printed operator lists of the source
computations are hardcoded as well and cross-checked against the generic
builder.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from .algebra import build_model_algebra
from .series import CohSeries, LaurentZ

__all__ = ["ToricModel", "PFOperator", "PFTerm", "build_toric_model",
           "i_function", "pf_operators", "hardcoded_pf_operators",
           "generic_pf_operators", "box_operator", "pf_check", "gw_extract"]


# ---------------------------------------------------------------------------
# model descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ToricModel:
    model_id: str
    charges: tuple            # rows: one per base variable
    vars: tuple               # ((name, ramification), ...)
    prefactor_labels: tuple   # named degree-2 class per base variable
    sector_table: tuple       # ((frac_tuple, basis_label), ...)
    pf_degrees: tuple         # curve degrees generating the PF system

    @property
    def ncoords(self):
        return len(self.charges[0])

    @property
    def algebra(self):
        return build_model_algebra(self.model_id)

    def prefactor_elems(self):
        alg = self.algebra
        return tuple(alg.from_label(l) for l in self.prefactor_labels)

    def sector_label(self, fracs):
        fracs = tuple(Fraction(x) - int(Fraction(x) // 1) for x in fracs)
        for f, label in self.sector_table:
            if f == fracs:
                return label
        raise KeyError(f"{self.model_id}: no sector for {fracs}")

    def coord_class(self, j):
        """P_j = sum_i charges[i][j] * p_i as an algebra element."""
        alg = self.algebra
        out = alg.zero()
        for i, row in enumerate(self.charges):
            if row[j]:
                out = out + alg.from_label(self.prefactor_labels[i]).qscale(row[j])
        return out


_MODELS = {
    "F3": ToricModel(
        "F3",
        charges=((1, 1, 1, -3, 0), (0, 0, 0, 1, 1)),
        vars=(("y1", 1), ("y2", 1)),
        prefactor_labels=("p1", "p2"),
        sector_table=(((Fraction(0), Fraction(0)), "phi0"),),
        pf_degrees=((0, 1), (1, 3), (1, 2), (1, 1), (1, 0)),
    ),
    "F2": ToricModel(
        "F2",
        charges=((1, 1, -2, 0), (0, 0, 1, 1)),
        vars=(("y1", 1), ("y2", 1)),
        prefactor_labels=("p1", "p2"),
        sector_table=(((Fraction(0), Fraction(0)), "1"),),
        pf_degrees=((0, 1), (1, 2), (1, 1), (1, 0)),
    ),
    "P1113": ToricModel(
        "P1113",
        charges=((1, 1, 1, 3),),
        vars=(("y", 3),),
        prefactor_labels=("p",),
        sector_table=(((Fraction(0),), "1"),
                      ((Fraction(1, 3),), "1_1/3"),
                      ((Fraction(2, 3),), "1_2/3")),
        pf_degrees=((1,),),
    ),
    "P112": ToricModel(
        "P112",
        charges=((1, 1, 2),),
        vars=(("y", 2),),
        prefactor_labels=("p",),
        sector_table=(((Fraction(0),), "1"),
                      ((Fraction(1, 2),), "1_1/2")),
        pf_degrees=((1,),),
    ),
}


def build_toric_model(model_id):
    return _MODELS[model_id]


# ---------------------------------------------------------------------------
# I-functions
# ---------------------------------------------------------------------------

def _nilpotency(alg):
    dmin = min((d for d in alg.degrees if d > 0), default=Fraction(2))
    return int(alg.top_degree() // dmin)


def _inv_linear(P, b, cap):
    """(P + b z)^{-1} = sum_t (-1)^t P^t b^{-t-1} z^{-t-1}, P nilpotent."""
    alg = P.alg
    t = {}
    pw = alg.unit()
    for k in range(cap + 1):
        t[-k - 1] = pw.qscale(Fraction((-1) ** k, 1) / Fraction(b) ** (k + 1))
        pw = pw * P
        if pw.is_zero():
            break
    return LaurentZ(alg, t)


def _frange(c):
    """Descending b = c, c-1, ... while b > 0 (step 1, keeps fractional part)."""
    b = Fraction(c)
    while b > 0:
        yield b
        b -= 1


def _degree_vectors(model, order):
    """All exponent vectors d_i in (1/r_i) Z>=0 with sum d <= order."""
    order = Fraction(order)
    rams = [r for _, r in model.vars]

    def rec(i, remaining):
        if i == len(rams):
            yield ()
            return
        r = rams[i]
        for n in count(0):
            d = Fraction(n, r)
            if d > remaining:
                break
            for rest in rec(i + 1, remaining - d):
                yield (d,) + rest

    return list(rec(0, order))


def i_function(model, order):
    """z^{-1} I(y, z), normalized so the leading term is the unit class."""
    alg = model.algebra
    cap = _nilpotency(alg)
    coords = [model.coord_class(j) for j in range(model.ncoords)]
    terms = {}
    for d in _degree_vectors(model, order):
        fracs = tuple(x - int(x) for x in d)
        acc = LaurentZ.of(alg.from_label(model.sector_label(fracs)))
        for j, P in enumerate(coords):
            c = sum(Fraction(row[j]) * x for row, x in zip(model.charges, d))
            if c > 0:
                for b in _frange(c):
                    acc = acc * _inv_linear(P, b, cap)
            elif c < 0:
                # numerator factors (P + m z), m = 0, -1, ..., down to c (excl.)
                m = Fraction(0) if c.denominator == 1 else c + int(-c) + 1
                while m > c:
                    acc = acc * LaurentZ(alg, {0: P, 1: alg.unit().qscale(m)}) \
                        if m else acc * LaurentZ(alg, {0: P})
                    m -= 1
            if acc.is_zero():
                break
        if not acc.is_zero():
            terms[d] = acc
    return CohSeries(alg, model.vars, order, terms,
                     prefactor=model.prefactor_elems())


# ---------------------------------------------------------------------------
# Picard-Fuchs operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PFTerm:
    coeff: Fraction
    ymono: tuple              # exponents of the base variables
    zpow: int
    factors: tuple            # ((lvec, m), ...) meaning (sum l_i D_i + m z)


@dataclass(frozen=True)
class PFOperator:
    name: str
    nvars: int
    terms: tuple

    def apply(self, series):
        out = series._like({})
        for t in self.terms:
            s = series
            for lvec, m in reversed(t.factors):
                s = s.apply_factor(lvec, m)
            out = out + s.mul_mono(t.ymono, t.zpow, t.coeff)
        return out

    def normal_form(self):
        acc = {}
        for t in self.terms:
            fs = tuple(sorted(
                (tuple(Fraction(x) for x in lvec), Fraction(m))
                for lvec, m in t.factors))
            key = (tuple(Fraction(x) for x in t.ymono), int(t.zpow), fs)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(t.coeff)
        return {k: v for k, v in sorted(acc.items(),
                                        key=lambda kv: repr(kv[0]))
                if v != 0}

    def __eq__(self, other):
        return isinstance(other, PFOperator) and \
            self.normal_form() == other.normal_form()


def _term(coeff, ymono, factors, zpow=0):
    return PFTerm(Fraction(coeff), tuple(Fraction(x) for x in ymono),
                  int(zpow), tuple((tuple(Fraction(x) for x in l), Fraction(m))
                                   for l, m in factors))


def box_operator(model, d):
    """GKZ box operator for curve degree d: A_d - y^d B_d.

    A_d multiplies the factors (D_j - m z), m = 0..c_j-1, over coordinates
    with c_j > 0; B_d the same over coordinates with c_j < 0 (|c_j| factors).
    Only integral c_j are supported (all our degrees are integral).
    """
    d = tuple(Fraction(x) for x in d)
    nv = len(model.charges)
    a_factors, b_factors = [], []
    for j in range(model.ncoords):
        lvec = tuple(Fraction(row[j]) for row in model.charges)
        c = sum(l * x for l, x in zip(lvec, d))
        if c.denominator != 1:
            raise ValueError("box operator needs integral pairings")
        c = int(c)
        for m in range(abs(c)):
            (a_factors if c > 0 else b_factors).append((lvec, Fraction(-m)))
    zero = (Fraction(0),) * nv
    return PFOperator(
        f"box{d}", nv,
        (_term(1, zero, a_factors), _term(-1, d, b_factors)))


def generic_pf_operators(model):
    return [box_operator(model, d) for d in model.pf_degrees]


def hardcoded_pf_operators(model_id):
    """The printed operator lists, transcribed term by term."""
    if model_id == "F3":
        D1 = (1, 0)
        P4 = (-3, 1)   # D2 - 3 D1
        D2 = (0, 1)
        return [
            PFOperator("F3-1", 2, (
                _term(1, (0, 0), [(D2, 0), (P4, 0)]),
                _term(-1, (0, 1), []))),
            PFOperator("F3-2", 2, (
                _term(1, (0, 0), [(D1, 0)] * 3 + [(D2, 0), (D2, -1), (D2, -2)]),
                _term(-1, (1, 3), []))),
            PFOperator("F3-3", 2, (
                _term(1, (0, 0), [(D1, 0)] * 3 + [(D2, 0), (D2, -1)]),
                _term(-1, (1, 2), [(P4, 0)]))),
            PFOperator("F3-4", 2, (
                _term(1, (0, 0), [(D1, 0)] * 3 + [(D2, 0)]),
                _term(-1, (1, 1), [(P4, 0), (P4, -1)]))),
            PFOperator("F3-5", 2, (
                _term(1, (0, 0), [(D1, 0)] * 3),
                _term(-1, (1, 0), [(P4, 0), (P4, -1), (P4, -2)]))),
        ]
    if model_id == "F2":
        D1 = (1, 0)
        P3 = (-2, 1)   # D2 - 2 D1
        D2 = (0, 1)
        return [
            PFOperator("F2-1", 2, (
                _term(1, (0, 0), [(D2, 0), (P3, 0)]),
                _term(-1, (0, 1), []))),
            PFOperator("F2-2", 2, (
                _term(1, (0, 0), [(D1, 0)] * 2 + [(D2, 0), (D2, -1)]),
                _term(-1, (1, 2), []))),
            PFOperator("F2-3", 2, (
                _term(1, (0, 0), [(D1, 0)] * 2 + [(D2, 0)]),
                _term(-1, (1, 1), [(P3, 0)]))),
            PFOperator("F2-4", 2, (
                _term(1, (0, 0), [(D1, 0)] * 2),
                _term(-1, (1, 0), [(P3, 0), (P3, -1)]))),
        ]
    if model_id == "P1113":
        D = (1,)
        return [PFOperator("P1113-1", 1, (
            _term(1, (0,), [(D, 0)] * 3 + [((3,), 0), ((3,), -1), ((3,), -2)]),
            _term(-1, (1,), [])))]
    if model_id == "P112":
        D = (1,)
        return [PFOperator("P112-1", 1, (
            _term(1, (0,), [(D, 0)] * 2 + [((2,), 0), ((2,), -1)]),
            _term(-1, (1,), [])))]
    raise KeyError(model_id)


def pf_operators(model):
    """Cross-checked Picard-Fuchs system for a model."""
    hard = hardcoded_pf_operators(model.model_id)
    gen = generic_pf_operators(model)
    for h, g in zip(hard, gen):
        if h != g:
            raise AssertionError(
                f"{model.model_id}: generic builder disagrees with the "
                f"hardcoded operator {h.name}")
    return hard


def pf_check(ops, series):
    """Residual of each operator applied to the series (truncated).

    Applying an operator can push support past the truncation order of the
    series (the y^d term of the box operator); residuals are therefore only
    meaningful, and asserted zero, up to order - max|d|.
    """
    residuals = []
    for op in ops:
        r = op.apply(series)
        residuals.append(r)
    return residuals


def pf_residual_order(model, order):
    """Largest total degree through which pf_check residuals are exact."""
    dmax = max(sum(Fraction(x) for x in d) for d in model.pf_degrees)
    return Fraction(order) - dmax


# ---------------------------------------------------------------------------
# descendant coefficients (small J-function table)
# ---------------------------------------------------------------------------

def gw_extract(model, order):
    """Coefficient table of the small J-function in flat coordinates.

    Rewrites z^{-1}I in the flat coordinates q and returns the map
    exponent -> LaurentZ giving the descendant coefficients of each sector.
    For the P models the mirror map is trivial and the table equals the
    I-function's own coefficients.
    """
    from . import mirror  # local import: mirror builds on this module

    iser = i_function(model, order)
    if model.model_id in ("P1113", "P112"):
        return dict(iser.terms)
    return mirror.j_function(model, order).terms

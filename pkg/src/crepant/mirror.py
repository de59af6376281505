"""Mirror maps, their inverses, flat-coordinate rewriting, and the
flat-coordinate comparison series for the P(1,1,1,3)/F3 pair.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import solve_in_span
from .models import build_toric_model, i_function
from .series import CohSeries, LaurentZ, PolySeries

__all__ = ["mirror_map", "inverse_mirror_map", "mirror_map_logs",
           "f2_closed_form_mirror_map", "j_function", "flat_compare_p1113"]


def mirror_map_logs(model, order, iser=None):
    """The series f_i with q_i = y_i exp(f_i), read from z^{-1} of z^{-1}I."""
    alg = model.algebra
    names = [n for n, _ in model.vars]
    pvecs = [alg.from_label(l) for l in model.prefactor_labels]
    fs = [PolySeries(names, order) for _ in names]
    if iser is None:
        iser = i_function(model, order)
    for e in iser.exponents():
        el = iser.terms[e].coeff(-1)
        if el.is_zero():
            continue
        coords = solve_in_span(pvecs, el)   # raises if a twisted part appears
        for i, c in enumerate(coords):
            if c:
                fs[i] = fs[i] + PolySeries(names, order, {e: c})
    for f in fs:
        if f.constant_term() != 0:
            raise ValueError("mirror-map exponent has a constant term")
    return fs


def mirror_map(model, order, iser=None):
    """q_i(y) = y_i exp(f_i(y)) as PolySeries in the y variables."""
    fs = mirror_map_logs(model, order, iser)
    names = [n for n, _ in model.vars]
    out = []
    for i, f in enumerate(fs):
        yi = PolySeries.var(names, order, i)
        out.append(yi * f.exp())
    return out


def inverse_mirror_map(model, order):
    """y_i(q) as PolySeries in q variables (triangular substitution)."""
    fs = mirror_map_logs(model, order)
    names = [n for n, _ in model.vars]
    qnames = ["q" + n[1:] if n.startswith("y") else "q_" + n for n in names]
    if len(names) == 1:
        # P models: trivial map q = y
        return [PolySeries.var(qnames, order, 0)]
    # for both F models f_i depends only on y1; q1 = y1 e^{f1(y1)} is
    # univariate, so y1(q1) comes from reversion and y2 = q2 e^{-f2(y1(q1))}
    f1u = PolySeries(["y1"], order,
                     {(e[0],): c for e, c in fs[0].terms.items()})
    q1_of_y1 = PolySeries.var(["y1"], order, 0) * f1u.exp()
    y1_of_q1 = q1_of_y1.revert()           # univariate in "y1" slot = q1
    # re-embed into the q-variable list
    y1 = PolySeries(qnames, order,
                    {(e[0], Fraction(0)): c for e, c in y1_of_q1.terms.items()})
    f2u = PolySeries(qnames, order,
                     {(e[0], Fraction(0)): c for e, c in fs[1].terms.items()})
    f2_at = f2u.subst({qnames[0]: y1})
    y2 = PolySeries.var(qnames, order, 1) * (-1 * f2_at).exp()
    return [y1, y2]


def f2_closed_form_mirror_map(order):
    """Closed forms q1 = 4y1/(1+s)^2, q2 = y2(1+s)/2 with s = sqrt(1-4y1)."""
    order = Fraction(order)
    names = ["y1", "y2"]
    # sqrt(1 - 4 y1) by the binomial series, exact rationals
    s = PolySeries(names, order)
    for k in range(int(order) + 1):
        # C(1/2, k) (-4)^k = -2 (2k-2 choose k-1)/k for k >= 1; 1 for k = 0
        if k == 0:
            c = Fraction(1)
        else:
            c = Fraction(-2) * Fraction(factorial(2 * k - 2),
                                        factorial(k - 1) ** 2) / k
        s = s + PolySeries(names, order, {(Fraction(k), Fraction(0)): c})
    one_plus_s = s + 1
    y1 = PolySeries.var(names, order, 0)
    y2 = PolySeries.var(names, order, 1)
    q1 = 4 * y1 * (one_plus_s * one_plus_s).inv()
    q2 = y2 * one_plus_s.qscale(Fraction(1, 2))
    return q1, q2


def substitute_base(series, repl_polys, new_vars):
    """Substitute y_i -> PolySeries in new variables into a CohSeries.

    Exponents of substituted variables must be nonnegative integers
    (fractional exponents only occur for the trivial P-model maps, which
    never reach this code path).
    """
    alg = series.alg
    out_terms = {}
    order = series.order
    for e, lz in series.terms.items():
        mono = PolySeries.const([n for n, _ in new_vars], order)
        for x, poly in zip(e, repl_polys):
            if x == 0:
                continue
            if x.denominator != 1 or x < 0:
                raise ValueError(f"cannot substitute into exponent {x}")
            mono = mono * (poly ** int(x))
        for me, c in mono.terms.items():
            add = lz.qscale(c) if isinstance(c, (int, Fraction)) \
                else lz.scale(c)
            out_terms[me] = out_terms[me] + add if me in out_terms else add
    return CohSeries(alg, new_vars, order, out_terms, series.prefactor)


def j_function(model, order):
    """z^{-1}J(q, z): the I-function rewritten in flat coordinates.

    J = q^{P/z} exp(-sum_i f_i(y(q)) p_i / z) * (I-sum)(y(q)).
    """
    alg = model.algebra
    iser = i_function(model, order)
    if len(model.vars) == 1:
        return iser                      # trivial mirror map
    ys = inverse_mirror_map(model, order)
    qvars = tuple((v, r) for (_, r), v in zip(model.vars, ys[0].vars))
    isub = substitute_base(iser, ys, qvars)
    # exponent series X = -sum_i f_i(y(q)) p_i z^{-1}
    fs = mirror_map_logs(model, order)
    pvecs = [alg.from_label(l) for l in model.prefactor_labels]
    X = CohSeries(alg, qvars, order, {})
    names_y = [n for n, _ in model.vars]
    for i, f in enumerate(fs):
        fy = PolySeries(names_y, order, dict(f.terms))
        fq = fy.subst({names_y[0]: ys[0], names_y[1]: ys[1]})
        for e, c in fq.terms.items():
            lz = LaurentZ(alg, {-1: pvecs[i].qscale(-c)})
            X = X + CohSeries(alg, qvars, order, {e: lz})
    # exp(X): nilpotent in the algebra and order-truncated in q
    expX = CohSeries(alg, qvars, order,
                     {(Fraction(0),) * len(qvars): LaurentZ.of(alg.unit())})
    term = expX
    kmax = int(order) * (alg.dim_c + 1) + 2
    for k in range(1, kmax):
        term = (term * X).qscale(Fraction(1, k))
        if term.is_zero():
            break
        expX = expX + term
    return expX * isub


def _prod3(a, n):
    """prod_{k=0}^{n-1} (k + a)^3 as an exact rational."""
    p = Fraction(1)
    for k in range(n):
        p *= (Fraction(k) + a) ** 3
    return p


def flat_compare_p1113(order=12):
    """Flat-coordinate comparison for the P(1,1,1,3)/F3 pair.

    Returns the series t1(u), g(u) = 3 dF0_orb/dt1 as a series in u, the
    composition g as a series in t1, and the linear tau relations, where u
    is the first orbifold B-model coordinate.
    """
    order = Fraction(order)
    t1 = PolySeries(["u"], order)
    g = PolySeries(["u"], order)
    n = 0
    while 3 * n + 1 <= order:
        t1 = t1 + PolySeries(["u"], order, {
            (Fraction(3 * n + 1),):
            Fraction((-1) ** n) * _prod3(Fraction(1, 3), n)
            / factorial(3 * n + 1)})
        n += 1
    n = 0
    while 3 * n + 2 <= order:
        g = g + PolySeries(["u"], order, {
            (Fraction(3 * n + 2),):
            Fraction((-1) ** n) * _prod3(Fraction(2, 3), n)
            / factorial(3 * n + 2)})
        n += 1
    u_of_t1 = t1.revert()
    g_of_t1 = g.subst({"u": u_of_t1})
    return {
        "t1_of_u": t1,
        "g_of_u": g,
        "g_of_t1": g_of_t1,
        "tau_relations": (
            "tau1 = -(2*sqrt(3)*pi/(3*Gamma(2/3)^3)) * t1"
            " + (2*sqrt(3)*pi/Gamma(1/3)^3) * dF0_orb/dt1",
            "tau2 + tau1/3 = t2",
        ),
    }

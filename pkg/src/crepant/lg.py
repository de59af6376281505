"""Landau-Ginzburg mirrors: superpotentials, critical points, residue pairing.

Each model has a torus fibration over its base and a superpotential W that
is a sum of monomials y^a w^b (unit coefficients).  Everything is computed
in logarithmic fiber coordinates u_i = log w_i: the critical equations are
the vanishing of the log-gradient w_i dW/dw_i and the residue pairing uses
the log-coordinate Hessian determinant,

    <f, g> = sum_sigma f(sigma) g(sigma) / det Hess_log W(sigma).

Critical points come from per-model elimination to a binomial univariate
polynomial (roots via mpmath.polyroots) followed by a multivariate Newton
polish, with random torus starts as a fallback.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy as sp

from .algebra import build_model_algebra, poincare_pair

__all__ = [
    "LGModel", "CriticalPoint", "build_lg_model", "critical_points",
    "residue_pairing", "mirror_frame", "gram_check", "quantum_ring",
    "connection_matrix_p1113", "connection_eigenvalue_check",
    "chart_invariance", "q_to_y",
]


@dataclass(frozen=True)
class LGModel:
    """Superpotential as a list of monomials y^a w^b with unit coefficients."""
    model: str                 # "p112" | "p1113" | "f2" | "f3"
    chart: str                 # "y" (Kaehler-cone chart) or "yy" (adjacent cone)
    base_vars: tuple           # names of base coordinates
    fiber_vars: tuple          # names of fiber coordinates
    terms: tuple               # ((base exponents), (fiber exponents)) per monomial

    @property
    def nfiber(self):
        return len(self.fiber_vars)


# (model, chart) -> (base vars, fiber vars, monomials)
_LG_DATA = {
    # W = w1 + y/(w1 w4^2) + w4  on w1 w2 w4^2 = y with w2 eliminated
    ("p112", "y"): (("y",), ("w1", "w4"),
                    (((0,), (1, 0)), ((1,), (-1, -2)), ((0,), (0, 1)))),
    # W = w1 + w2 + y/(w1 w2 w5^3) + w5
    ("p1113", "y"): (("y",), ("w1", "w2", "w5"),
                     (((0,), (1, 0, 0)), ((0,), (0, 1, 0)),
                      ((1,), (-1, -1, -3)), ((0,), (0, 0, 1)))),
    # W = w1 + y1 y2^2/(w1 w4^2) + y2/w4 + w4
    ("f2", "y"): (("y1", "y2"), ("w1", "w4"),
                  (((0, 0), (1, 0)), ((1, 2), (-1, -2)),
                   ((0, 1), (0, -1)), ((0, 0), (0, 1)))),
    # W = w1 + yy2^2/(w1 w4^2) + yy1 yy2/w4 + w4
    ("f2", "yy"): (("yy1", "yy2"), ("w1", "w4"),
                   (((0, 0), (1, 0)), ((0, 2), (-1, -2)),
                    ((1, 1), (0, -1)), ((0, 0), (0, 1)))),
    # W = w1 + w2 + y1 y2^3/(w1 w2 w5^3) + y2/w5 + w5
    ("f3", "y"): (("y1", "y2"), ("w1", "w2", "w5"),
                  (((0, 0), (1, 0, 0)), ((0, 0), (0, 1, 0)),
                   ((1, 3), (-1, -1, -3)), ((0, 1), (0, 0, -1)),
                   ((0, 0), (0, 0, 1)))),
    # W = w1 + w2 + yy2^3/(w1 w2 w5^3) + yy1 yy2/w5 + w5
    ("f3", "yy"): (("yy1", "yy2"), ("w1", "w2", "w5"),
                   (((0, 0), (1, 0, 0)), ((0, 0), (0, 1, 0)),
                    ((0, 3), (-1, -1, -3)), ((1, 1), (0, 0, -1)),
                    ((0, 0), (0, 0, 1)))),
}

_NPOINTS = {"p112": 4, "p1113": 6, "f2": 4, "f3": 6}


def build_lg_model(model_id, chart="y"):
    key = (model_id.lower(), chart)
    if key not in _LG_DATA:
        raise KeyError(f"no LG model for {model_id!r} in chart {chart!r}")
    base, fiber, terms = _LG_DATA[key]
    return LGModel(model_id.lower(), chart, base, fiber, terms)


@dataclass(frozen=True)
class CriticalPoint:
    coords: tuple      # fiber coordinates w_i (mpc)
    value: object      # W(sigma)
    hess_det: object   # det of the log-coordinate Hessian at sigma
    grad_norm: object  # residual of the log-gradient


def _coeffs(lg, base):
    """Numeric coefficient y^a of each monomial at the given base point."""
    out = []
    for a, _ in lg.terms:
        c = mpmath.mpc(1)
        for ai, yi in zip(a, base):
            if ai:
                c *= mpmath.mpc(yi) ** ai
        out.append(c)
    return out


def _w_terms(lg, coeffs, w):
    vals = []
    for c, (_, b) in zip(coeffs, lg.terms):
        t = c
        for bi, wi in zip(b, w):
            if bi:
                t *= wi ** bi
        vals.append(t)
    return vals


def w_value(lg, base, w, dps=30):
    with mpmath.workdps(dps):
        return sum(_w_terms(lg, _coeffs(lg, base), [mpmath.mpc(x) for x in w]))


def _log_grad(lg, coeffs, w):
    tv = _w_terms(lg, coeffs, w)
    n = lg.nfiber
    g = [mpmath.mpc(0)] * n
    for t, (_, b) in zip(tv, lg.terms):
        for i in range(n):
            if b[i]:
                g[i] += b[i] * t
    return g


def _log_hess(lg, coeffs, w):
    tv = _w_terms(lg, coeffs, w)
    n = lg.nfiber
    h = mpmath.matrix(n, n)
    for t, (_, b) in zip(tv, lg.terms):
        for i in range(n):
            if not b[i]:
                continue
            for j in range(n):
                if b[j]:
                    h[i, j] += b[i] * b[j] * t
    return h


def _seeds(lg, base):
    """Closed-form critical seeds from per-model elimination.

    Each elimination ends in a binomial equation w^k = c, whose roots are
    the principal k-th root times the k-th roots of unity.
    """
    model, chart = lg.model, lg.chart

    def roots(k, c):
        r = mpmath.mpc(c) ** (mpmath.mpf(1) / k)
        return [r * mpmath.exp(2j * mpmath.pi * j / k) for j in range(k)]
    if model == "p112":
        # w1 w4^2 * w1 = y/4 with w4 = 2 w1  =>  w1^4 = y/4
        (y,) = base
        return [(w1, 2 * w1) for w1 in roots(4, mpmath.mpc(y) / 4)]
    if model == "p1113":
        # w1 = w2, w5 = 3 w1, w1^6 = y/27
        (y,) = base
        return [(w1, w1, 3 * w1) for w1 in roots(6, mpmath.mpc(y) / 27)]
    if model == "f2":
        # w1 w4 = eps * sqrt(y1) y2 branch, then w4^2 = y2 (1 + 2 eps sqrt(y1))
        # (yy chart: w1 w4 = eps yy2, w4^2 = yy2 (yy1 + 2 eps))
        b1, b2 = mpmath.mpc(base[0]), mpmath.mpc(base[1])
        out = []
        for eps in (1, -1):
            if chart == "y":
                prod, c = eps * mpmath.sqrt(b1) * b2, b2 * (1 + 2 * eps * mpmath.sqrt(b1))
            else:
                prod, c = eps * b2, b2 * (b1 + 2 * eps)
            out += [(prod / w4, w4) for w4 in roots(2, c)]
        return out
    # f3: w1 = w2 = t/w5 with t^3 = y1 y2^3 (resp. yy2^3),
    #     and w5^2 = y2 + 3t (resp. yy1 yy2 + 3t)
    b1, b2 = mpmath.mpc(base[0]), mpmath.mpc(base[1])
    tcubed = b1 * b2 ** 3 if chart == "y" else b2 ** 3
    lin = b2 if chart == "y" else b1 * b2
    out = []
    for t in roots(3, tcubed):
        for w5 in roots(2, lin + 3 * t):
            out.append((t / w5, t / w5, w5))
    return out


def _newton(lg, coeffs, w0, tol, maxit=60):
    """Newton iteration on the log-gradient in log coordinates."""
    n = lg.nfiber
    u = [mpmath.log(x) for x in w0]
    for _ in range(maxit):
        w = [mpmath.exp(x) for x in u]
        g = _log_grad(lg, coeffs, w)
        if mpmath.norm(mpmath.matrix(g)) < tol:
            return w
        h = _log_hess(lg, coeffs, w)
        try:
            step = mpmath.lu_solve(h, mpmath.matrix(g))
        except ZeroDivisionError:
            return None
        u = [ui - si for ui, si in zip(u, step)]
    return None


def _random_starts(lg, coeffs, tol, want, tries=200, seed=20260824):
    rng = random.Random(seed)
    found = []
    for _ in range(tries):
        w0 = [mpmath.exp(mpmath.mpc(rng.uniform(-1, 1),
                                    rng.uniform(-3.2, 3.2)))
              for _ in range(lg.nfiber)]
        w = _newton(lg, coeffs, w0, tol)
        if w is None:
            continue
        if all(max(abs(a - b) for a, b in zip(w, f)) > mpmath.sqrt(tol)
               for f in found):
            found.append(tuple(w))
        if len(found) == want:
            break
    return found


def critical_points(lg, base, dps=30):
    """All critical points of W at the given base point, Newton-polished."""
    want = _NPOINTS[lg.model]
    with mpmath.workdps(dps):
        coeffs = _coeffs(lg, base)
        tol = mpmath.mpf(10) ** (-(dps - 5))
        pts = []
        for w0 in _seeds(lg, base):
            w = _newton(lg, coeffs, w0, tol)
            if w is not None and all(
                    max(abs(a - b) for a, b in zip(w, p.coords))
                    > mpmath.sqrt(tol) for p in pts):
                pts.append(_make_point(lg, coeffs, w))
        if len(pts) != want:       # degenerate seeds: fall back to search
            pts = [_make_point(lg, coeffs, w)
                   for w in _random_starts(lg, coeffs, tol, want)]
        if len(pts) != want:
            raise ArithmeticError(
                f"found {len(pts)} critical points for {lg.model}, "
                f"expected {want} (degenerate base point?)")
        return pts


def _make_point(lg, coeffs, w):
    g = _log_grad(lg, coeffs, w)
    h = _log_hess(lg, coeffs, w)
    det = mpmath.det(h)
    if abs(det) == 0:
        raise ArithmeticError("singular Hessian at critical point")
    return CriticalPoint(tuple(w), sum(_w_terms(lg, coeffs, w)), det,
                         mpmath.norm(mpmath.matrix(g)))


def residue_pairing(f, g, pts, dps=30):
    """sum_sigma f(sigma) g(sigma) / det Hess_log W(sigma)."""
    with mpmath.workdps(dps):
        return sum(f(p.coords) * g(p.coords) / p.hess_det for p in pts)


# ---------------------------------------------------------------------------
# mirror frames: cohomology classes <-> fiber functions
# ---------------------------------------------------------------------------

def _phi(lg, base):
    """Jacobi-ring image of y d/dy W for the one-parameter models."""
    y = mpmath.mpc(base[0])
    if lg.model == "p112":
        return lambda w: y / (w[0] * w[1] ** 2)
    return lambda w: y / (w[0] * w[1] * w[2] ** 3)


def _divisor_classes(lg, base):
    """Jacobi-ring images of y_i d/dy_i W for the two-parameter models."""
    b1, b2 = mpmath.mpc(base[0]), mpmath.mpc(base[1])
    if lg.model == "f2":
        A = lambda w: b1 * b2 ** 2 / (w[0] * w[1] ** 2)
        B = lambda w: b2 / w[1]
        return A, lambda w: 2 * A(w) + B(w)
    A = lambda w: b1 * b2 ** 3 / (w[0] * w[1] * w[2] ** 3)
    B = lambda w: b2 / w[2]
    return A, lambda w: 3 * A(w) + B(w)


def mirror_frame(lg, base, dps=30):
    """(classes, functions): cohomology basis and matching fiber functions.

    For the orbifold models the frame is the z -> 0 symbol of the operators
    P_i(z d) that cut out the flat basis (1, p, ..., twisted units); for the
    resolutions it is the Kodaira-Spencer frame of divisor monomials.
    """
    alg = build_model_algebra(lg.model.upper())
    with mpmath.workdps(dps):
        one = lambda w: mpmath.mpc(1)
        if lg.model == "p112":
            y = mpmath.mpc(base[0])
            f = _phi(lg, base)
            funcs = [one, f, lambda w: f(w) ** 2,
                     lambda w: 2 * f(w) ** 3 / mpmath.sqrt(y)]
            classes = [alg.basis_el(i) for i in range(4)]
        elif lg.model == "p1113":
            y = mpmath.mpc(base[0])
            f = _phi(lg, base)
            funcs = [one, f, lambda w: f(w) ** 2, lambda w: f(w) ** 3,
                     lambda w: 3 * f(w) ** 4 / y ** Fraction(1, 3),
                     lambda w: 9 * f(w) ** 5 / y ** Fraction(2, 3)]
            classes = [alg.basis_el(i) for i in range(6)]
        elif lg.model == "f2":
            F1, F2 = _divisor_classes(lg, base)
            funcs = [one, F1, F2, lambda w: F1(w) * F2(w)]
            classes = [alg.unit(), alg.from_label("p1"), alg.from_label("p2"),
                       alg.from_label("p1") * alg.from_label("p2")]
        else:
            F1, F2 = _divisor_classes(lg, base)
            p1, p2 = alg.from_label("p1"), alg.from_label("p2")
            funcs = [one, F1, F2, lambda w: F1(w) ** 2,
                     lambda w: F1(w) * F2(w), lambda w: F1(w) ** 2 * F2(w)]
            classes = [alg.unit(), p1, p2, p1 * p1, p1 * p2, p1 * p1 * p2]
        return classes, funcs


def gram_check(model_id, base, dps=30):
    """Residue-pairing Gram in the mirror frame vs the Poincare Gram."""
    lg = build_lg_model(model_id)
    with mpmath.workdps(dps):
        pts = critical_points(lg, base, dps)
        classes, funcs = mirror_frame(lg, base, dps)
        n = len(funcs)
        gram = [[residue_pairing(funcs[i], funcs[j], pts, dps)
                 for j in range(n)] for i in range(n)]
        target = [[poincare_pair(classes[i], classes[j]) for j in range(n)]
                  for i in range(n)]
        diff = max(abs(gram[i][j] - mpmath.mpc(
            target[i][j].numerator) / target[i][j].denominator)
            for i in range(n) for j in range(n))
        return {"model": model_id, "base": [str(b) for b in base],
                "gram": gram, "target": target, "max_diff": diff}


# ---------------------------------------------------------------------------
# quantum ring from the semisimple (idempotent) presentation
# ---------------------------------------------------------------------------

def q_to_y(model_id, q, order=24):
    """Inverse mirror map: flat coordinates q -> LG base coordinates y."""
    model_id = model_id.lower()
    if model_id in ("p112", "p1113"):
        return tuple(q)              # trivial mirror map
    if model_id == "f2":             # closed form from sqrt(1-4y1)=(1-q1)/(1+q1)
        q1, q2 = [mpmath.mpc(x) for x in q]
        return (q1 / (1 + q1) ** 2, q2 * (1 + q1))
    from .mirror import inverse_mirror_map
    from .models import build_toric_model
    inv = inverse_mirror_map(build_toric_model("F3"), order)
    q1, q2 = [mpmath.mpc(x) for x in q]
    out = []
    for comp in inv:                 # polynomial series in (q1, q2)
        val = mpmath.mpc(0)
        for mono, coeff in comp.terms.items():
            val += mpmath.mpc(coeff.numerator) / coeff.denominator \
                * q1 ** int(mono[0]) * q2 ** int(mono[1])
        out.append(val)
    return tuple(out)


_RELATIONS = {
    # name, lhs(F1, F2) - rhs(base); evaluated pointwise at critical points
    "f2": (("p2(p2-2p1) = y2", lambda F1, F2, b: lambda w:
            F2(w) * (F2(w) - 2 * F1(w)) - b[1]),
           ("p1^2 = y1 (p2-2p1)^2", lambda F1, F2, b: lambda w:
            F1(w) ** 2 - b[0] * (F2(w) - 2 * F1(w)) ** 2)),
    "f3": (("p2(p2-3p1) = y2", lambda F1, F2, b: lambda w:
            F2(w) * (F2(w) - 3 * F1(w)) - b[1]),
           ("p1^3 = y1 (p2-3p1)^3", lambda F1, F2, b: lambda w:
            F1(w) ** 3 - b[0] * (F2(w) - 3 * F1(w)) ** 3)),
}


def quantum_ring(model_id, base, dps=30, from_q=False):
    """Semisimple presentation of the small quantum ring at one base point.

    Returns the critical values (eigenvalues of E = c1 quantum product up
    to the Euler normalization), the idempotent norms 1/det Hess, and the
    residuals of the z -> 0 Picard-Fuchs ring relations.
    """
    model_id = model_id.lower()
    if from_q:
        base = q_to_y(model_id, base)
    lg = build_lg_model(model_id)
    with mpmath.workdps(dps):
        base = [mpmath.mpc(b) for b in base]
        pts = critical_points(lg, base, dps)
        report = {
            "model": model_id,
            "n": len(pts),
            "critical_values": [p.value for p in pts],
            "idempotent_norms": [1 / p.hess_det for p in pts],
            # e_i o e_j = delta_ij e_i holds identically in the evaluation
            # representation; record the unit decomposition residual instead
            "unit_sum_check": abs(
                sum(mpmath.mpc(1) for _ in pts) - len(pts)),
            "relations": {},
        }
        if model_id == "p112":
            f = _phi(lg, base)
            rels = [("p^4 = y/4", lambda w: f(w) ** 4 - base[0] / 4)]
        elif model_id == "p1113":
            f = _phi(lg, base)
            rels = [("p^6 = y/27", lambda w: f(w) ** 6 - base[0] / 27)]
        else:
            F1, F2 = _divisor_classes(lg, base)
            rels = [(name, mk(F1, F2, base)) for name, mk in
                    _RELATIONS[model_id]]
        for name, func in rels:
            report["relations"][name] = max(abs(func(p.coords)) for p in pts)
        return report


# ---------------------------------------------------------------------------
# rank-6 connection matrix for the one-parameter sextic model
# ---------------------------------------------------------------------------

def connection_matrix_p1113(y=None):
    """Quantum multiplication by p in the flat frame (sympy, exact).

    Subdiagonal 1's on the first three steps, y^(1/3)/3 on the last two,
    and y^(1/3)/3 in the upper-right corner; M^6 = (y/27) Id.
    """
    if y is None:
        y = sp.Symbol("y", positive=True)
    c = sp.Pow(y, sp.Rational(1, 3)) / 3
    m = sp.zeros(6, 6)
    m[1, 0] = m[2, 1] = m[3, 2] = sp.Integer(1)
    m[4, 3] = m[5, 4] = c
    m[0, 5] = c
    return m


def _spectrum_match(a, b):
    """Max distance under a greedy nearest-neighbor pairing of two spectra."""
    b = list(b)
    worst = mpmath.mpf(0)
    for x in a:
        j = min(range(len(b)), key=lambda k: abs(x - b[k]))
        worst = max(worst, abs(x - b.pop(j)))
    return worst


def connection_eigenvalue_check(y=1, dps=30):
    """6 * eigenvalues of the connection matrix == critical values of W."""
    with mpmath.workdps(dps):
        m = connection_matrix_p1113(sp.nsimplify(y))
        num = mpmath.matrix([[mpmath.mpc(sp.N(m[i, j], dps))
                              for j in range(6)] for i in range(6)])
        eigs = [6 * e for e in mpmath.eig(num, left=False, right=False)]
        pts = critical_points(build_lg_model("p1113"), (y,), dps)
        return _spectrum_match(eigs, [p.value for p in pts])


def chart_invariance(model_id, y1, y2, dps=30):
    """Critical-value spectrum agrees between the y- and yy-charts."""
    with mpmath.workdps(dps):
        r = 2 if model_id.lower() == "f2" else 3
        y1, y2 = mpmath.mpc(y1), mpmath.mpc(y2)
        yy = (y1 ** Fraction(-1, r), y1 ** Fraction(1, r) * y2)
        a = [p.value for p in critical_points(
            build_lg_model(model_id, "y"), (y1, y2), dps)]
        b = [p.value for p in critical_points(
            build_lg_model(model_id, "yy"), yy, dps)]
        return _spectrum_match(a, b)

"""Symplectic transformations between orbifold and resolution Fock spaces.

For each pair (P(1,1,1,3), F3) and (P(1,1,2), F2) the transformation U is a
matrix over C[z, z^-1] from the orbifold cohomology basis to the resolution
basis.  Two sources are available:

  * "paper"   — the closed-form matrices;
  * "derived" — columns built from Gamma-function jets: the untwisted
    column is the (0,0) coefficient of the continued series, the p^i
    columns follow from monodromy equivariance (Ubar (r p) = p2 Ubar),
    and the twisted-sector columns are the (0, m) continued coefficients
    divided by the exact leading coefficient of the orbifold I-function
    in the corresponding sector.

Both describe U := Ubar with the sign of z flipped; pass ubar=True for the
continuation transformation Ubar itself.

Structural checks: symplectic form, grading operator, opposite-subspace
(non-)preservation, monodromy equivariance, and a high-precision numeric
verification of the continuation identity defining Ubar.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy as sp

from .algebra import build_model_algebra
from .barnes import continued_coeff
from .models import build_toric_model, i_function
from .scalars import NumField, SymField, Z
from .series import LaurentZ

__all__ = [
    "SympMap",
    "PAIRS",
    "omega",
    "paper_u_matrix",
    "derived_u_matrix",
    "u_matrix",
    "check_symplectic",
    "check_grading",
    "check_opposite",
    "check_monodromy_equivariance",
    "check_factorization_p112",
    "check_continuation_identity",
]

# orbifold -> (resolution, ramification index, leading sector coefficients)
# sector_leading[m] = (exact scalar c, z-power a) with the orbifold
# I-function coefficient of the m-th ramified variable power equal to
# c * z^a * 1_{m/r}.
PAIRS = {
    "P1113": {
        "target": "F3",
        "r": 3,
        "sector_leading": {1: (Fraction(27), -4), 2: (Fraction(27, 16), -5)},
    },
    "P112": {
        "target": "F2",
        "r": 2,
        "sector_leading": {1: (Fraction(4), -3)},
    },
}


@dataclass(frozen=True)
class SympMap:
    """A C[z, z^-1]-linear map between the two Fock spaces."""

    source: object          # GradedAlgebra (orbifold)
    target: object          # GradedAlgebra (resolution)
    mat: sp.Matrix          # entries: Laurent polynomials in Z

    def at_z(self, zval, field=None):
        """Numeric matrix at a given z (list of rows of mpc)."""
        if field is None:
            field = NumField(40)
        with mpmath.workdps(field.dps):
            return [[mpmath.mpc(sp.lambdify((), self.mat[i, j].subs(Z, zval),
                                            "mpmath")())
                     for j in range(self.mat.cols)]
                    for i in range(self.mat.rows)]


def omega(f, g):
    """Symplectic form Omega(f, g) = Res_z <f(-z), g(z)> on Laurent vectors."""
    alg = f.alg
    s = 0
    for k, fk in f.t.items():
        gk = g.t.get(-1 - k)
        if gk is None:
            continue
        val = alg.pair(fk, gk)
        s = s + (val if k % 2 == 0 else -val)
    return s


# ---------------------------------------------------------------------------
# the closed-form matrices
# ---------------------------------------------------------------------------

def paper_u_matrix(pair, ubar=False):
    """The closed-form matrix of U (or Ubar with ubar=True)."""
    if pair == "P1113":
        g13 = sp.gamma(sp.Rational(1, 3)) ** 3
        g23 = sp.gamma(sp.Rational(2, 3)) ** 3
        s3, pi, z3 = sp.sqrt(3), sp.pi, sp.zeta(3)
        m = sp.Matrix([
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 2 * s3 * pi * Z / (3 * g13),
             2 * s3 * pi / (3 * g23)],
            [-pi ** 2 / (3 * Z ** 2), 0, 0, 0, 2 * pi ** 2 / (3 * g13),
             -2 * pi ** 2 / (3 * g23 * Z)],
            [8 * z3 / Z ** 3, 0, 0, 1, 2 * s3 * pi ** 3 / (9 * g13 * Z),
             2 * s3 * pi ** 3 / (9 * g23 * Z ** 2)],
        ])
    elif pair == "P112":
        pi, i = sp.pi, sp.I
        m = sp.Matrix([
            [1, 0, 0, 0],
            [pi * i / Z, 0, 0, i],
            [-pi * i / (2 * Z), sp.Rational(1, 2), 0, -i / 2],
            [pi ** 2 / (4 * Z ** 2), 0, sp.Rational(1, 2), pi / (2 * Z)],
        ])
    else:
        raise KeyError(f"unknown pair {pair!r}")
    if ubar:
        m = m.subs(Z, -Z)   # the closed forms describe U = Ubar|_{z -> -z}
    src = build_model_algebra(pair)
    tgt = build_model_algebra(PAIRS[pair]["target"])
    return SympMap(src, tgt, m)


# ---------------------------------------------------------------------------
# the derived matrices
# ---------------------------------------------------------------------------

def _elem_columns_to_matrix(cols):
    return sp.Matrix([[sp.sympify(col.c[i]) for col in cols]
                      for i in range(len(cols[0].c))])


def _derived_columns(pair, field, z):
    """Columns of Ubar as elements of the target algebra (any backend)."""
    if pair not in PAIRS:
        raise KeyError(f"unknown pair {pair!r}")
    info = PAIRS[pair]
    tgt = build_model_algebra(info["target"])
    r = info["r"]
    p2r = tgt.from_label("p2").qscale(Fraction(1, r))
    # untwisted column and its cup-products (monodromy equivariance)
    col0 = continued_coeff(info["target"], 0, 0, field, z)
    cols = [col0]
    for _ in range(r):
        cols.append(p2r * cols[-1])
    if pair == "P112":
        cols = cols[:3]
    # twisted-sector columns: continued (0, m) / leading orbifold coefficient
    for m, (c, a) in sorted(info["sector_leading"].items()):
        cm = continued_coeff(info["target"], 0, m, field, z)
        cols.append(cm.scale(z ** (-a)).qscale(1 / c))
    return cols


def derived_u_matrix(pair, ubar=False, field=None):
    """U built from Gamma-function jets and the continued coefficients."""
    if field is None:
        field = SymField()
    cols = _derived_columns(pair, field, Z)
    mat = _elem_columns_to_matrix(cols)
    if not ubar:
        mat = mat.subs(Z, -Z)
    mat = mat.applyfunc(lambda e: sp.expand(sp.radsimp(e)))
    src = build_model_algebra(pair)
    tgt = build_model_algebra(PAIRS[pair]["target"])
    return SympMap(src, tgt, mat)


def u_matrix(pair, source="paper", ubar=False):
    if source == "paper":
        return paper_u_matrix(pair, ubar=ubar)
    if source == "derived":
        return derived_u_matrix(pair, ubar=ubar)
    raise KeyError(f"unknown source {source!r}")


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

def _gram_sym(alg):
    return sp.Matrix([[sp.Rational(Fraction(q).numerator,
                                   Fraction(q).denominator) for q in row]
                      for row in alg.gram])


def _is_zero_matrix(field, m):
    return all(field.is_zero(m[i, j])
               for i in range(m.rows) for j in range(m.cols))


def check_symplectic(u, field=None):
    """U(-z)^T G_target U(z) = G_source, exactly."""
    if field is None:
        field = SymField()
    gx = _gram_sym(u.source)
    gy = _gram_sym(u.target)
    res = u.mat.subs(Z, -Z).T * gy * u.mat - gx
    return {"preserved": _is_zero_matrix(field, res), "residual": res}


def check_grading(u, field=None):
    """Equivariance for Gr = 2 z d/dz + Gr0 - 2 c1/z.

    Gr0 acts diagonally by the (real) degree; any common additive shift
    cancels between source and target.  c1 acts by cup product.
    """
    if field is None:
        field = SymField()
    g0x = sp.diag(*[sp.Rational(Fraction(d).numerator, Fraction(d).denominator)
                    for d in u.source.degrees])
    g0y = sp.diag(*[sp.Rational(Fraction(d).numerator, Fraction(d).denominator)
                    for d in u.target.degrees])

    def cup(alg):
        m = alg.cup_matrix(alg.from_label("c1"))
        return sp.Matrix([[sp.Rational(Fraction(q).numerator,
                                       Fraction(q).denominator) for q in row]
                          for row in m])

    c1x, c1y = cup(u.source), cup(u.target)
    res = 2 * Z * u.mat.diff(Z) + g0y * u.mat - u.mat * g0x \
        - 2 * (c1y * u.mat - u.mat * c1x) / Z
    return {"preserved": _is_zero_matrix(field, res), "residual": res}


def _z_monomial_degrees(entry):
    """Exponents of z appearing in a Laurent-polynomial entry."""
    entry = sp.expand(sp.sympify(entry))
    terms = entry.as_ordered_terms() if entry != 0 else []
    degs = set()
    for t in terms:
        e = t.as_coeff_exponent(Z)[1] if t.has(Z) else 0
        degs.add(int(e))
    return sorted(degs)


def check_opposite(u):
    """U preserves H- iff no entry contains a strictly positive z power."""
    witnesses = []
    for i in range(u.mat.rows):
        for j in range(u.mat.cols):
            degs = [d for d in _z_monomial_degrees(u.mat[i, j]) if d > 0]
            if degs:
                witnesses.append((i, j, max(degs)))
    return {"preserved": not witnesses, "witnesses": witnesses}


def check_monodromy_equivariance(u, field=None):
    """U M_{r p} = M_{p2} U (cup-product matrices; z-free).

    This is the infinitesimal form of equivariance with respect to the
    monodromy exp(2 pi i r p / z) around the anticanonical axis.
    """
    if field is None:
        field = SymField()
    r = PAIRS[u.source.name]["r"]

    def cup(alg, el):
        m = alg.cup_matrix(el)
        return sp.Matrix([[sp.Rational(Fraction(q).numerator,
                                       Fraction(q).denominator) for q in row]
                          for row in m])

    mx = cup(u.source, u.source.from_label("p").qscale(r))
    my = cup(u.target, u.target.from_label("p2"))
    res = u.mat * mx - my * u.mat
    return {"equivariant": _is_zero_matrix(field, res), "residual": res}


def check_factorization_p112(field=None):
    """U = exp(-pi i (p2 - 2 p1)/(2z)) o U|_{z=infinity} for the F2 pair."""
    if field is None:
        field = SymField()
    u = paper_u_matrix("P112")
    tgt = u.target
    pp1 = tgt.from_label("pp1")
    cup = sp.Matrix([[sp.Rational(Fraction(q).numerator,
                                  Fraction(q).denominator) for q in row]
                     for row in tgt.cup_matrix(pp1)])
    a = -sp.pi * sp.I / (2 * Z)
    expm = sp.eye(tgt.dim)
    term = sp.eye(tgt.dim)
    for k in range(1, tgt.dim):
        term = term * (a * cup) / k
        expm = expm + term
    uinf = u.mat.applyfunc(lambda e: e.limit(Z, sp.oo))
    res = expm * uinf - u.mat
    return {"holds": _is_zero_matrix(field, res), "u_at_infinity": uinf}


# ---------------------------------------------------------------------------
# continuation identity (numeric, high precision)
# ---------------------------------------------------------------------------

def _orbifold_coeff_at_z(model, m, r, field, zval):
    """Coefficient of the m-th ramified-variable power of z^{-1}I, at z."""
    iser = i_function(model, Fraction(m, r) + 1)
    lz = iser.terms.get((Fraction(m, r),))
    alg = model.algebra
    if lz is None:
        lz = LaurentZ(alg, {})
    out = [field.zero] * alg.dim
    with mpmath.workdps(field.dps):
        for k, el in lz.t.items():
            zk = field.to_mpc(zval) ** k
            for i, a in enumerate(el.c):
                out[i] = out[i] + field.to_mpc(a) * zk
    return out


def check_continuation_identity(pair="P1113", order=6, dps=40, zval=1):
    """Ubar(z^{-1} I_orb), coefficientwise in the ramified variable, equals
    the continued series at u1 = 0 through the given order.

    Returns the maximum absolute entry difference (target: <= 1e-20 at
    40-digit precision) and the per-coefficient differences.
    """
    info = PAIRS[pair]
    field = NumField(dps)
    src = build_model_algebra(pair)
    tgt = build_model_algebra(info["target"])
    r = info["r"]
    model = build_toric_model(pair)
    with mpmath.workdps(dps):
        cols = _derived_columns(pair, field, field.to_mpc(zval))
        umat = [[field.to_mpc(cols[j].c[i]) for j in range(len(cols))]
                for i in range(tgt.dim)]
        diffs = {}
        worst = mpmath.mpf(0)
        for m in range(order + 1):
            vec = _orbifold_coeff_at_z(model, m, r, field, zval)
            lhs = [sum((umat[i][j] * vec[j] for j in range(src.dim)),
                       mpmath.mpc(0)) for i in range(tgt.dim)]
            rhs_el = continued_coeff(info["target"], 0, m, field,
                                     field.to_mpc(zval))
            rhs = [field.to_mpc(a) for a in rhs_el.c]
            d = max(abs(a - b) for a, b in zip(lhs, rhs))
            diffs[m] = d
            worst = max(worst, d)
    return {"max_difference": worst, "per_order": diffs}

"""Graded (orbifold) cohomology algebras for the four models.

The four algebras are stored in the paper-style phi-bases:

  P112  : 1, p, p^2, 1_{1/2}
  F2    : 1, p1, p2, p1p2
  P1113 : 1, p, p^2, p^3, 1_{1/3}, 1_{2/3}
  F3    : phi0..phi5 with phi1 = p2/3, phi2 = p1p2/3, phi3 = (p2-3p1)/3,
          phi4 = -p1(p2-3p1)/3, phi5 = p1^2p2/3

Degrees are real (doubled) and include twice the age shift for twisted
sectors.  Structure constants are exact rationals; products of distinct
twisted-sector classes are not defined by any equation we implement and
raise UndefinedProductError.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

__all__ = [
    "UndefinedProductError",
    "MixedAlgebraError",
    "Elem",
    "GradedAlgebra",
    "build_model_algebra",
    "build_fake_rank4_algebra",
    "poincare_pair",
    "hard_lefschetz_check",
    "MODEL_IDS",
]

MODEL_IDS = ("F2", "F3", "P112", "P1113")


class UndefinedProductError(ValueError):
    """Raised when a product of twisted-sector classes is requested."""


class MixedAlgebraError(ValueError):
    """Raised when elements of different algebras are combined."""


def smul(q, x):
    """Multiply a duck-typed scalar x by an exact rational q using only ints.

    Integer scaling works uniformly for Fraction, sympy and mpmath scalars,
    which lets the exact-rational structure constants act on any field.
    """
    q = Fraction(q)
    if isinstance(x, (int, Fraction)):
        return q * x
    if q.numerator == 0:
        return 0 * x
    y = x * q.numerator
    if q.denominator != 1:
        y = y / q.denominator
    return y


class Elem:
    """Element of a GradedAlgebra: a coefficient vector over a scalar ring."""

    __slots__ = ("alg", "c")

    def __init__(self, alg, coeffs):
        self.alg = alg
        self.c = tuple(coeffs)
        if len(self.c) != alg.dim:
            raise ValueError("coefficient vector has wrong length")

    # -- basic structure ---------------------------------------------------
    def __add__(self, other):
        self._check(other)
        return Elem(self.alg, [a + b for a, b in zip(self.c, other.c)])

    def __sub__(self, other):
        self._check(other)
        return Elem(self.alg, [a - b for a, b in zip(self.c, other.c)])

    def __neg__(self):
        return Elem(self.alg, [-a for a in self.c])

    def scale(self, s):
        """Scalar multiple (duck-typed scalar)."""
        return Elem(self.alg, [s * a for a in self.c])

    def qscale(self, q):
        """Scalar multiple by an exact rational."""
        return Elem(self.alg, [smul(q, a) for a in self.c])

    def __mul__(self, other):
        if not isinstance(other, Elem):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        out = [0] * alg.dim
        for i, a in enumerate(self.c):
            if _struct_zero(a):
                continue
            for j, b in enumerate(other.c):
                if _struct_zero(b):
                    continue
                entry = alg.table[i][j]
                if entry is None:
                    raise UndefinedProductError(
                        f"{alg.name}: product {alg.basis[i]} * {alg.basis[j]} "
                        "is not defined")
                ab = a * b
                for k, q in entry:
                    out[k] = out[k] + smul(q, ab)
        return Elem(alg, out)

    __rmul__ = scale

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        r = self.alg.unit()
        for _ in range(n):
            r = r * self
        return r

    def _check(self, other):
        if self.alg is not other.alg:
            raise MixedAlgebraError(
                f"cannot combine elements of {self.alg.name} and {other.alg.name}")

    # -- queries -----------------------------------------------------------
    def is_zero(self):
        return all(_struct_zero(a) for a in self.c)

    def coeff(self, label):
        return self.c[self.alg.basis.index(label)]

    def map_coeffs(self, f):
        return Elem(self.alg, [f(a) for a in self.c])

    def scalar_part(self):
        """Coefficient of the unit basis vector (index 0 in all our models)."""
        return self.c[0]

    def nilpotent_part(self):
        return Elem(self.alg, (0,) + self.c[1:])

    def degree(self):
        """Degree of a homogeneous element, or None if inhomogeneous/zero."""
        degs = {self.alg.degrees[i] for i, a in enumerate(self.c)
                if not _struct_zero(a)}
        if not degs:
            return None
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, Elem) or self.alg is not other.alg:
            return NotImplemented
        return all(a == b for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash((id(self.alg), self.c))

    def __repr__(self):
        terms = [f"({a})*{l}" for a, l in zip(self.c, self.alg.basis)
                 if not _struct_zero(a)]
        return " + ".join(terms) if terms else "0"


def _struct_zero(a):
    """Structural zero test: safe (never false-positive) for all backends."""
    if isinstance(a, (int, Fraction)):
        return a == 0
    z = a == 0
    return z is True or z == True  # noqa: E712  (sympy returns S.true/S.false)


@dataclass(frozen=True)
class GradedAlgebra:
    """Finite-dimensional graded algebra with Poincare pairing."""

    name: str
    basis: tuple            # labels
    degrees: tuple          # Fractions, real (doubled) convention
    table: tuple            # table[i][j]: tuple((k, Fraction), ...) or None
    gram: tuple             # gram[i][j]: Fraction
    dim_c: int              # complex dimension of the underlying space
    named: dict             # label -> coefficient tuple (named classes)

    @property
    def dim(self):
        return len(self.basis)

    # -- constructors ------------------------------------------------------
    def el(self, coeffs):
        return Elem(self, coeffs)

    def zero(self):
        return Elem(self, (0,) * self.dim)

    def unit(self):
        return self.basis_el(0)

    def basis_el(self, i):
        c = [0] * self.dim
        c[i] = 1
        return Elem(self, c)

    def from_label(self, label):
        """Basis element or named class (e.g. 'p1', 'pp1', 'c1') by name."""
        if label in self.basis:
            return self.basis_el(self.basis.index(label))
        if label in self.named:
            return Elem(self, [Fraction(q) for q in self.named[label]])
        raise KeyError(f"{self.name}: unknown class {label!r}")

    # -- pairing -----------------------------------------------------------
    def pair(self, a, b):
        if a.alg is not self or b.alg is not self:
            raise MixedAlgebraError("pairing arguments from a different algebra")
        s = 0
        for i, x in enumerate(a.c):
            if _struct_zero(x):
                continue
            for j, y in enumerate(b.c):
                q = self.gram[i][j]
                if q:
                    s = s + smul(q, x * y)
        return s

    def gram_matrix(self):
        return [list(row) for row in self.gram]

    def gram_inverse(self):
        return _fraction_inverse([list(row) for row in self.gram])

    def dual_basis(self):
        """phi^i with <phi_i, phi^j> = delta_i^j, as elements."""
        ginv = self.gram_inverse()
        return [Elem(self, [ginv[j][i] for j in range(self.dim)])
                for i in range(self.dim)]

    # -- matrices ----------------------------------------------------------
    def cup_matrix(self, x):
        """Matrix of (x * .) in the stored basis; entries exact rationals."""
        cols = [(x * self.basis_el(j)).c for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def top_degree(self):
        return max(self.degrees)

    def graded_indices(self):
        by_deg = {}
        for i, d in enumerate(self.degrees):
            by_deg.setdefault(d, []).append(i)
        return by_deg


def poincare_pair(a, b):
    """Orbifold Poincare pairing of two elements of the same algebra."""
    if a.alg is not b.alg:
        raise MixedAlgebraError("pairing arguments from different algebras")
    return a.alg.pair(a, b)


# ---------------------------------------------------------------------------
# model construction
# ---------------------------------------------------------------------------

def _mk_table(dim, prods, undefined=()):
    """Build a symmetric structure-constant table.

    prods: {(i,j): {k: Fraction}} for i <= j, omitting zero products.
    undefined: iterable of (i,j) pairs marked as not defined.
    """
    table = [[() for _ in range(dim)] for _ in range(dim)]
    for (i, j) in undefined:
        table[i][j] = table[j][i] = None
    for (i, j), entry in prods.items():
        t = tuple((k, Fraction(q)) for k, q in entry.items() if q != 0)
        table[i][j] = t
        table[j][i] = t
    # unit row/column
    for j in range(dim):
        table[0][j] = table[j][0] = ((j, Fraction(1)),)
    return tuple(tuple(row) for row in table)


def _mk_gram(dim, entries):
    g = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), q in entries.items():
        g[i][j] = g[j][i] = Fraction(q)
    return tuple(tuple(row) for row in g)


def _f(*xs):
    return tuple(Fraction(x) for x in xs)


def _build_p112():
    basis = ("1", "p", "p^2", "1_1/2")
    degrees = _f(0, 2, 4, 2)
    prods = {
        (1, 1): {2: 1},
        # p * p^2 = p^3 = 0 ; p * 1_{1/2} = 0 (point sector) ; etc.
    }
    undefined = [(3, 3)]
    table = _mk_table(4, prods, undefined)
    gram = _mk_gram(4, {(0, 2): Fraction(1, 2),
                        (1, 1): Fraction(1, 2),
                        (3, 3): Fraction(1, 2)})
    named = {
        "p": (0, 1, 0, 0),
        "c1": (0, 4, 0, 0),
        "point": (0, 0, 1, 0),
    }
    return GradedAlgebra("P112", basis, degrees, table, gram, 2, named)


def _build_p1113():
    basis = ("1", "p", "p^2", "p^3", "1_1/3", "1_2/3")
    degrees = _f(0, 2, 4, 6, 4, 2)
    prods = {
        (1, 1): {2: 1},
        (1, 2): {3: 1},
        # p*p^3 = 0, p*1_{1/3} = p*1_{2/3} = 0, p^2*p^2 = 0, ...
    }
    undefined = [(4, 4), (4, 5), (5, 5)]
    table = _mk_table(6, prods, undefined)
    third = Fraction(1, 3)
    gram = _mk_gram(6, {(0, 3): third, (1, 2): third, (4, 5): third})
    named = {
        "p": (0, 1, 0, 0, 0, 0),
        "c1": (0, 6, 0, 0, 0, 0),
        "point": (0, 0, 0, 1, 0, 0),
    }
    return GradedAlgebra("P1113", basis, degrees, table, gram, 3, named)


def _build_f2():
    basis = ("1", "p1", "p2", "p1p2")
    degrees = _f(0, 2, 2, 4)
    prods = {
        (1, 1): {},          # p1^2 = 0
        (1, 2): {3: 1},
        (2, 2): {3: 2},      # p2^2 = 2 p1p2
        # products of degree > 4 vanish
    }
    table = _mk_table(4, prods)
    gram = _mk_gram(4, {(0, 3): 1, (1, 2): 1, (2, 2): 2})
    named = {
        "p1": (0, 1, 0, 0),
        "p2": (0, 0, 1, 0),
        "pp1": (0, -2, 1, 0),     # p2 - 2 p1
        "c1": (0, 0, 2, 0),       # 2 p2
        "point": (0, 0, 0, 1),
    }
    return GradedAlgebra("F2", basis, degrees, table, gram, 2, named)


def _build_f3():
    # phi-basis; in terms of p1, p2 (p1^3 = 0, p2^2 = 3 p1 p2):
    # phi0 = 1, phi1 = p2/3, phi2 = p1p2/3, phi3 = (p2-3p1)/3,
    # phi4 = -p1(p2-3p1)/3 = p1^2 - p1p2/3, phi5 = p1^2p2/3.
    # Products: phi1^2 = phi2, phi1*phi2 = phi5, phi3^2 = phi4,
    # phi3*phi4 = phi5, all other positive-degree products vanish.
    basis = ("phi0", "phi1", "phi2", "phi3", "phi4", "phi5")
    degrees = _f(0, 2, 4, 2, 4, 6)
    prods = {
        (1, 1): {2: 1},
        (1, 2): {5: 1},
        (1, 3): {},
        (1, 4): {},
        (3, 3): {4: 1},
        (3, 4): {5: 1},
        (2, 3): {},
    }
    table = _mk_table(6, prods)
    third = Fraction(1, 3)
    gram = _mk_gram(6, {(0, 5): third, (1, 2): third, (3, 4): third})
    named = {
        "p1": (0, 1, 0, -1, 0, 0),       # p1 = phi1 - phi3
        "p2": (0, 3, 0, 0, 0, 0),        # p2 = 3 phi1
        "pp1": (0, 0, 0, 3, 0, 0),       # p2 - 3 p1 = 3 phi3
        "p1^2": (0, 0, 1, 0, 1, 0),      # p1^2 = phi2 + phi4
        "p1p2": (0, 0, 3, 0, 0, 0),      # p1 p2 = 3 phi2
        "p1^2p2": (0, 0, 0, 0, 0, 3),    # p1^2 p2 = 3 phi5
        "c1": (0, 6, 0, 0, 0, 0),        # 2 p2
        "point": (0, 0, 0, 0, 0, 3),
    }
    return GradedAlgebra("F3", basis, degrees, table, gram, 3, named)


def build_fake_rank4_algebra():
    """C[p]/p^4 with <p^i, p^3-i> = 1: detector algebra where p^3 != 0."""
    basis = ("1", "p", "p^2", "p^3")
    degrees = _f(0, 2, 4, 6)
    prods = {(1, 1): {2: 1}, (1, 2): {3: 1}}
    table = _mk_table(4, prods)
    gram = _mk_gram(4, {(0, 3): 1, (1, 2): 1})
    named = {"p": (0, 1, 0, 0), "c1": (0, 4, 0, 0)}
    return GradedAlgebra("FAKE4", basis, degrees, table, gram, 3, named)


_CACHE = {}


def build_model_algebra(model_id):
    """Return the (cached, immutable) algebra for one of the four models."""
    if model_id not in _CACHE:
        builders = {"F2": _build_f2, "F3": _build_f3,
                    "P112": _build_p112, "P1113": _build_p1113}
        if model_id not in builders:
            raise KeyError(f"unknown model {model_id!r}")
        _CACHE[model_id] = builders[model_id]()
    return _CACHE[model_id]


# ---------------------------------------------------------------------------
# Hard Lefschetz classifier
# ---------------------------------------------------------------------------

def hard_lefschetz_check(alg, omega):
    """Check omega^i : H^{n-i} -> H^{n+i} bijective for i = 1..n (real degrees).

    Returns {"holds": bool, "maps": {i: verdict}, "variance": int} where the
    variance is sum over basis classes of (deg - n)^2.
    """
    n = alg.dim_c
    by_deg = alg.graded_indices()
    maps = {}
    holds = True
    for i in range(1, n + 1):
        src = by_deg.get(Fraction(n - i), [])
        tgt = by_deg.get(Fraction(n + i), [])
        if not src and not tgt:
            maps[i] = "bijective (both zero)"
            continue
        if len(src) != len(tgt):
            maps[i] = f"fails (dim {len(src)} vs {len(tgt)})"
            holds = False
            continue
        # matrix of omega^i restricted to the graded piece
        w = alg.unit()
        for _ in range(i):
            w = w * omega
        mat = []
        for j in src:
            img = w * alg.basis_el(j)
            mat.append([Fraction(img.c[k]) for k in tgt])
        det = _fraction_det([list(r) for r in mat])
        if det == 0:
            maps[i] = "fails (singular)"
            holds = False
        else:
            maps[i] = "bijective"
    variance = sum(int((d - n) ** 2) for d in alg.degrees)
    return {"holds": holds, "maps": maps, "variance": variance}


# ---------------------------------------------------------------------------
# exact linear algebra over Fraction
# ---------------------------------------------------------------------------

def _fraction_det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def _fraction_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def solve_in_span(vectors, target):
    """Exact coordinates of `target` in the span of `vectors` (Elems).

    Raises ValueError if target is not in the span.  Scalars must be exact
    rationals for this to be meaningful.
    """
    alg = target.alg
    cols = [v.c for v in vectors]
    rows = [[Fraction(cols[j][i]) for j in range(len(vectors))]
            for i in range(alg.dim)]
    rhs = [Fraction(x) for x in target.c]
    # gaussian elimination on the (dim x k) system
    aug = [row + [rhs[i]] for i, row in enumerate(rows)]
    k = len(vectors)
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, len(aug)) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    sol = [Fraction(0)] * k
    for i, col in enumerate(pivots):
        sol[col] = aug[i][k]
    for i in range(r, len(aug)):
        if aug[i][k] != 0:
            raise ValueError("target not in span")
    return sol


# ---------------------------------------------------------------------------
# JSON descriptors
# ---------------------------------------------------------------------------

def algebra_to_json(alg):
    def frac(q):
        q = Fraction(q)
        return f"{q.numerator}/{q.denominator}" if q.denominator != 1 \
            else str(q.numerator)

    table = []
    for row in alg.table:
        out_row = []
        for entry in row:
            if entry is None:
                out_row.append(None)
            else:
                vec = [Fraction(0)] * alg.dim
                for k, q in entry:
                    vec[k] = q
                out_row.append([frac(q) for q in vec])
        table.append(out_row)
    return {
        "name": alg.name,
        "basis": list(alg.basis),
        "degrees": [frac(d) for d in alg.degrees],
        "structure_constants": table,
        "gram": [[frac(q) for q in row] for row in alg.gram],
        "dim_c": alg.dim_c,
    }

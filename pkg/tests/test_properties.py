"""Property-based tests of the declared invariants (hypothesis)."""
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from crepant.algebra import build_model_algebra, poincare_pair
from crepant.jets import exp_jet, inv_unit, log1p_jet
from crepant.series import LaurentZ, PolySeries

rationals = st.fractions(
    min_value=Fraction(-10), max_value=Fraction(10), max_denominator=12)


def _elems(mid):
    alg = build_model_algebra(mid)
    return st.builds(lambda cs: alg.el(cs),
                     st.tuples(*([rationals] * alg.dim)))


@settings(max_examples=60)
@given(_elems("F3"), _elems("F3"), _elems("F3"))
def test_f3_ring_axioms(a, b, c):
    zero = (0,) * 6
    assert ((a * b) * c - a * (b * c)).c == zero
    assert (a * b - b * a).c == zero
    assert ((a + b) * c - (a * c + b * c)).c == zero


@settings(max_examples=60)
@given(_elems("F2"), _elems("F2"), _elems("F2"))
def test_f2_frobenius_property(a, b, c):
    """<a*b, c> = <a, b*c>: the pairing is a trace form."""
    assert poincare_pair(a * b, c) == poincare_pair(a, b * c)


@settings(max_examples=60)
@given(_elems("F3"), _elems("F3"), rationals)
def test_pairing_bilinear_symmetric(a, b, q):
    assert poincare_pair(a, b) == poincare_pair(b, a)
    assert poincare_pair(a.qscale(q), b) == q * poincare_pair(a, b)


def _nilpotents(mid):
    alg = build_model_algebra(mid)

    def mk(cs):
        out = alg.zero()
        for i, c in enumerate(cs):
            if alg.degrees[i] > 0:
                out = out + alg.basis_el(i).qscale(c)
        return out
    return st.builds(mk, st.tuples(*([rationals] * alg.dim)))


@settings(max_examples=40)
@given(_nilpotents("F3"), _nilpotents("F3"))
def test_exp_jet_homomorphism(x, y):
    """exp(x) exp(y) = exp(x + y) (the algebra is commutative)."""
    assert (exp_jet(x) * exp_jet(y) - exp_jet(x + y)).is_zero()


@settings(max_examples=40)
@given(_nilpotents("F3"))
def test_exp_log_roundtrip(x):
    alg = x.alg
    assert (log1p_jet(exp_jet(x) - alg.unit()) - x).is_zero()


@settings(max_examples=40)
@given(_nilpotents("F3"), rationals.filter(lambda q: q != 0))
def test_inv_unit_property(x, s):
    u = x + x.alg.unit().qscale(s)
    assert (u * inv_unit(u) - x.alg.unit()).is_zero()


small_polys = st.builds(
    lambda d: PolySeries(["t"], 6, {(Fraction(k),): v
                                    for k, v in d.items()}),
    st.dictionaries(st.integers(min_value=0, max_value=6), rationals,
                    max_size=5))


@settings(max_examples=60)
@given(small_polys, small_polys, small_polys)
def test_polyseries_ring_axioms(f, g, h):
    assert ((f * g) * h - f * (g * h)).terms == {}
    assert (f * g - g * f).terms == {}
    assert ((f + g) * h - (f * h + g * h)).terms == {}


@settings(max_examples=30)
@given(small_polys.map(lambda f: f - PolySeries.const(["t"], 6,
                                                      f.constant_term())))
def test_polyseries_exp_homomorphism(f):
    g = f.qscale(Fraction(1, 3))
    assert ((f + g).exp() - f.exp() * g.exp()).terms == {}


@settings(max_examples=30)
@given(small_polys)
def test_polyseries_reversion(f):
    """f with linear coefficient 1 and no constant term reverts exactly."""
    lin = PolySeries.var(["t"], 6, 0)
    g = lin + (f * lin * lin)          # t + O(t^2)
    inv = g.revert()
    comp = g.subst({"t": inv})
    assert (comp - lin).terms == {}


def test_laurentz_distributivity_sample():
    alg = build_model_algebra("F2")
    a = LaurentZ.of(alg.from_label("p1"), -2)
    b = LaurentZ.of(alg.from_label("p2"), 1)
    c = LaurentZ.of(alg.unit(), 0) + LaurentZ.of(alg.from_label("p1p2"), 3)
    assert ((a + b) * c - (a * c + b * c)).is_zero()

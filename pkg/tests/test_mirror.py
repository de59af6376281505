"""Mirror maps, inverses, and the flat-coordinate comparison series."""
from fractions import Fraction
from math import factorial

from crepant.models import build_toric_model
from crepant.mirror import (f2_closed_form_mirror_map, flat_compare_p1113,
                            inverse_mirror_map, mirror_map)
from crepant.series import PolySeries


def test_p_models_trivial_mirror_map():
    for mid in ("P112", "P1113"):
        model = build_toric_model(mid)
        q, = mirror_map(model, 4)
        assert dict(q.terms) == {(Fraction(1),): 1}


def test_f3_inverse_series_paper_coefficients():
    """[PAPER] y1(q): 1, 6, 9, 56, -300; y2(q)/q2: 1, -2, 5, -32, 286, -3038."""
    model = build_toric_model("F3")
    y1, y2 = inverse_mirror_map(model, 6)
    want1 = {1: 1, 2: 6, 3: 9, 4: 56, 5: -300}
    for k, c in want1.items():
        assert y1.coeff((Fraction(k), Fraction(0))) == c
    want2 = {0: 1, 1: -2, 2: 5, 3: -32, 4: 286, 5: -3038}
    for k, c in want2.items():
        assert y2.coeff((Fraction(k), Fraction(1))) == c
    # no terms outside the q2-degree pattern
    assert all(e[1] in (0, 1) for e in y1.terms if y1.terms[e])


def test_f2_mirror_map_matches_closed_form():
    model = build_toric_model("F2")
    q1, q2 = mirror_map(model, 10)
    c1, c2 = f2_closed_form_mirror_map(10)
    assert (q1 - c1).terms == {}
    assert (q2 - c2).terms == {}


def test_forward_inverse_compose_to_identity():
    for mid in ("F2", "F3"):
        model = build_toric_model(mid)
        order = 7
        q1, q2 = mirror_map(model, order)
        y1, y2 = inverse_mirror_map(model, order)
        qn = y1.vars
        comp1 = q1.subst({"y1": y1, "y2": y2})
        comp2 = q2.subst({"y1": y1, "y2": y2})
        id1 = PolySeries.var(qn, order, 0)
        id2 = PolySeries.var(qn, order, 1)
        assert (comp1 - id1).terms == {}
        assert (comp2 - id2).terms == {}


def test_flat_compare_series():
    """[PAPER] g(t1) = t1^2/2 - t1^5/(9*5!) + t1^8/(3*8!) - 1093 t1^11/(3^5 11!)."""
    rep = flat_compare_p1113(order=11)
    g = rep["g_of_t1"]
    want = {
        2: Fraction(1, 2),
        5: Fraction(-1, 9 * factorial(5)),
        8: Fraction(1, 3 * factorial(8)),
        11: Fraction(-1093, 3 ** 5 * factorial(11)),
    }
    for k, c in want.items():
        assert g.coeff((Fraction(k),)) == c
    for e, c in g.terms.items():
        if c:
            assert e[0] in want


def test_flat_compare_t1_leading():
    rep = flat_compare_p1113(order=7)
    t1 = rep["t1_of_u"]
    assert t1.coeff((Fraction(1),)) == 1
    # only exponents 1 mod 3 appear
    for e, c in t1.terms.items():
        if c:
            assert e[0] % 3 == 1

import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hautus.pointfinder import (
    PointStatus,
    SearchBounds,
    count_real_roots,
    has_integer_points,
    has_rational_points,
    has_real_points,
    isolate_real_roots,
    query,
    sturm_sequence,
)
from hautus.polyring import Poly, is_squarefree, parse_poly

YES, NO, UNKNOWN = PointStatus.YES, PointStatus.NO, PointStatus.UNKNOWN


def P(text, n=2):
    return parse_poly(text, n)


def check_yes(p, answer):
    assert answer.status is YES
    if answer.point is not None:
        assert p.eval(answer.point) == 0


# --- spec examples ------------------------------------------------------------


def test_real_examples():
    a = has_real_points(P("d1^2 + d2^2 + 1"))
    assert a.status is NO and a.certificate == "positivity"
    b = has_real_points(P("d1 + d2 - 1"))
    assert b.status is YES and b.point == (1, 0)
    c = has_real_points(P("d1^2 + 1", 1))
    assert c.status is NO and c.certificate == "sturm(0)"


def test_rational_examples():
    a = has_rational_points(P("d1^2 - 2", 1))
    assert a.status is NO and a.certificate == "rational-root-test"
    b = has_rational_points(P("2*d1 - 1", 1))
    assert b.status is YES and b.point == (Fraction(1, 2),)
    c = has_rational_points(P("d1^2 + d2^2 + 1"))
    assert c.status is NO and c.certificate == "positivity"


def test_integer_examples():
    a = has_integer_points(P("d1^2 + d2^2 - 5"))
    assert a.status is YES and a.point == (1, 2)
    b = has_integer_points(P("d1^2 + d2^2 - 3"))
    assert b.status is NO and b.certificate == "exhaustive-box(1)"
    c = has_integer_points(P("d1 - 1/2", 1))
    assert c.status is NO and c.certificate == "parity"


def test_irrational_real_root_reports_interval():
    a = has_real_points(P("d1^2 - 2", 1))
    assert a.status is YES and a.point is None and a.certificate == "sturm(2)"
    assert "(" in a.detail


def test_real_line_without_rational_point():
    p = P("d1^2 + d2^2 - 3")
    a = has_real_points(p)
    assert a.status is YES and a.certificate.startswith("sturm(")


def test_rational_unknown_is_not_no():
    # 3 is not a sum of two rational squares, but nothing here certifies it
    assert has_rational_points(P("d1^2 + d2^2 - 3")).status is UNKNOWN


def test_modular_certificate():
    a = has_integer_points(P("d1^2 - 3*d2^2 - 2"))
    assert a.status is NO and a.certificate == "modular(3)"


def test_zero_on_a_whole_line():
    p = P("d1*d2 - d2", 2)
    check_yes(p, has_real_points(p))
    check_yes(p, has_integer_points(p))


def test_three_variables():
    p = P("d1^2 + d2^2 + d3^2 - 14", 3)
    a = has_integer_points(p)
    check_yes(p, a)
    assert all(x.denominator == 1 for x in a.point)
    q = P("d1^2 + d2^2 + d3^2 - 7", 3)
    assert has_integer_points(q).status is NO


def test_preconditions():
    with pytest.raises(ValueError):
        has_real_points(Poly.constant(3, 2))
    with pytest.raises(ValueError):
        has_real_points(P("(d1 + d2)^2"))
    with pytest.raises(ValueError):
        query(P("d1"), "complex")


def test_bounds_respected():
    tiny = SearchBounds(real_grid_radius=1, rational_height=1, integer_box=1, max_lines=2)
    a = has_integer_points(P("d1*d2 - 7*d1 + d2^3 - 100"), tiny)
    assert a.status in (YES, UNKNOWN)
    assert tiny.as_dict()["max_lines"] == 2


# --- Sturm -----------------------------------------------------------------------


def test_sturm_counts_match_sympy():
    rng = random.Random(2)
    x = sympy.Symbol("x")
    for _ in range(60):
        coeffs = [rng.randint(-6, 6) for _ in range(rng.randint(2, 6))]
        if not any(coeffs[1:]):
            continue
        while coeffs[-1] == 0:
            coeffs.pop()
        expr = sum(c * x ** i for i, c in enumerate(coeffs))
        expected = len(set(sympy.Poly(expr, x).real_roots()))
        assert count_real_roots(coeffs) == expected
        for a, b in isolate_real_roots(coeffs):
            assert count_real_roots(coeffs, a, b) == 1


def test_sturm_sequence_rejects_zero():
    with pytest.raises(ValueError):
        sturm_sequence([0, 0])


# --- certificate soundness -----------------------------------------------------


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                       st.integers(-6, 6).filter(bool), min_size=2, max_size=4))
@settings(max_examples=80)
def test_answers_are_sound(terms):
    p = Poly(terms, 2)
    if p.is_constant() or not is_squarefree(p):
        return
    bounds = SearchBounds(real_grid_radius=4, rational_height=3, integer_box=6, max_lines=400)
    real = has_real_points(p, bounds)
    rat = has_rational_points(p, bounds)
    integer = has_integer_points(p, bounds)
    for ans in (real, rat, integer):
        if ans.status is YES and ans.point is not None:
            assert p.eval(ans.point) == 0
        if ans.status is NO:
            assert ans.certificate
            for pt in product(range(-4, 5), repeat=2):
                assert p.eval(pt) != 0
    if integer.status is YES and integer.point is not None:
        assert all(x.denominator == 1 for x in integer.point)
    if real.status is NO:
        assert rat.status is NO and integer.status is NO
    if rat.status is NO:
        assert integer.status is NO
    if integer.status is YES:
        assert rat.status is not NO and real.status is not NO

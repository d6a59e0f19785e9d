import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hautus.polymatrix import PolyMatrix
from hautus.polyring import Poly

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


def symbols(n):
    return sympy.symbols(f"d1:{n + 1}")


def to_sympy(p: Poly):
    gens = symbols(p.nvars)
    if p.is_zero():
        return sympy.Poly(0, *gens, domain="QQ")
    data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}
    return sympy.Poly.from_dict(data, *gens, domain="QQ")


def from_sympy(sp, n) -> Poly:
    sp = sympy.Poly(sp, *symbols(n), domain="QQ")
    return Poly({e: Fraction(int(c.p), int(c.q)) for e, c in sp.terms()}, n)


def poly_strategy(nvars, max_degree=3, max_terms=4, coeff=5):
    def exponent(draws):
        # spread a total degree over the variables
        total, slots = draws
        e = [0] * nvars
        for i in slots[:total]:
            e[i] += 1
        return tuple(e)

    exps = st.tuples(st.integers(0, max_degree),
                     st.lists(st.integers(0, nvars - 1), min_size=max_degree,
                              max_size=max_degree)).map(exponent)
    coeffs = st.integers(1, coeff).flatmap(lambda c: st.sampled_from((c, -c)))
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Poly(d, nvars))


def random_poly(rng: random.Random, nvars, max_degree=2, terms=3, coeff=5, const=True):
    out = {}
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(rng.randint(0 if const else 1, max_degree)):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.choice([c for c in range(-coeff, coeff + 1) if c])
    return Poly(out, nvars)


def random_matrix(rng, rows, cols, nvars, **kw):
    return PolyMatrix([[random_poly(rng, nvars, **kw) for _ in range(cols)]
                       for _ in range(rows)], nvars)


@pytest.fixture
def rng():
    return random.Random(20240611)

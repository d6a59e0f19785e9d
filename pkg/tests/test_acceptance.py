"""One test per acceptance criterion; results are echoed in the terminal summary."""

import io
import random
import time
from contextlib import contextmanager
from pathlib import Path

import sympy

import test_analyzer
import test_polymatrix
import test_polyring
from conftest import ACCEPTANCE, random_poly, to_sympy
from hautus.analyzer import (
    SignalSpace,
    Status,
    analyze,
    cancellation_ideal,
    first_nonzero_fitting,
    hautus_verdict,
    signal_space_verdict,
    torsion_witness,
    uncontrollable_factors,
)
from hautus.cli import main
from hautus.genericity import SampleSpec, run_experiment
from hautus.groebner import IdealBasis, buchberger, krull_dimension
from hautus.polymatrix import PolyMatrix, determinant, minors, parse_matrix
from hautus.polyring import Poly, gcd, gcd_list, parse_poly

DEMOS = Path(__file__).resolve().parent.parent / "demos" / "matrices"


@contextmanager
def criterion(key):
    start = time.perf_counter()
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        ACCEPTANCE[key] = (False, f"{type(exc).__name__}: {exc}"[:200])
        raise
    elapsed = time.perf_counter() - start
    ACCEPTANCE[key] = (True, f"{detail.get('msg', '')} ({elapsed:.2f}s)".strip())


def load(name):
    return parse_matrix((DEMOS / name).read_text())


def monic_set(polys):
    return {p.monic() for p in polys if not p.is_zero()}


def test_criterion_1_curl_examples():
    with criterion(1) as d:
        start = time.perf_counter()
        P1, P2 = load("p1.mat"), load("p2.mat")
        fit1 = [parse_poly(t, 3) for t in ["d1^2", "d2^2", "d3^2", "d1*d2", "d1*d3", "d2*d3"]]
        fit2 = [parse_poly(t, 3) for t in ["d1^3", "d3^2", "d1*d3", "d2*d3", "d1*d2^2",
                                            "d1^2*d2"]]
        for P in (P1, P2):
            assert determinant(P).is_zero()
            assert hautus_verdict(P).status is Status.DEGENERATE
        got1 = minors(P1, 2).nonzero()
        got2 = minors(P2, 2).nonzero()
        assert monic_set(got1) == monic_set(fit1)
        # P2 has two further minors lying in the listed ideal; compare as ideals
        assert monic_set(fit2) <= monic_set(got2)
        assert buchberger(IdealBasis(got2)) == buchberger(IdealBasis(fit2))
        assert krull_dimension(IdealBasis(got1)) == 0
        assert krull_dimension(IdealBasis(got2)) == 1
        assert first_nonzero_fitting(P1).dimension == 0
        assert first_nonzero_fitting(P2).dimension == 1
        assert time.perf_counter() - start < 5
        d["msg"] = "det 0, Degenerate, Fitting dims 0 and 1"


def _planted_pairs(rng):
    planted, coprime = [], []
    while len(planted) < 25:
        h = random_poly(rng, 2, max_degree=rng.randint(1, 2), terms=3, const=True)
        if h.is_constant():
            continue
        a, b = (random_poly(rng, 2, max_degree=2, terms=3) for _ in range(2))
        if a.is_zero() or b.is_zero():
            continue
        planted.append((h * a, h * b, h))
    while len(coprime) < 25:
        a, b = (random_poly(rng, 2, max_degree=2, terms=3) for _ in range(2))
        if a.is_zero() or b.is_zero():
            continue
        if sympy.gcd(to_sympy(a), to_sympy(b)).total_degree() > 0:
            continue
        coprime.append((a, b, None))
    return planted + coprime


def test_criterion_2_pole_zero_pairs():
    with criterion(2) as d:
        rng = random.Random(2)
        agree = 0
        for p1, p2, h in _planted_pairs(rng):
            P = PolyMatrix([[p1, -p2]], 2)
            v = hautus_verdict(P)
            if h is None:
                assert v.status in (Status.CONTROLLABLE, Status.STRONGLY_CONTROLLABLE)
            else:
                assert v.status is Status.UNCONTROLLABLE
                product = Poly.one(2)
                for f in v.factors:
                    product = product * f.factor ** f.multiplicity
                assert h.divides(product)
                assert gcd(product, gcd(p1, p2)) == gcd(p1, p2)
                assert gcd(p1, p2).divides(product)
            agree += 1
        assert agree == 50
        d["msg"] = "50/50 agree with planted ground truth"


def test_criterion_3_kalman():
    with criterion(3) as d:
        start = time.perf_counter()
        rng = random.Random(3)
        agree = 0
        for _ in range(100):
            size, m = rng.randint(1, 4), rng.randint(1, 2)
            A = [[rng.randint(-2, 2) for _ in range(size)] for _ in range(size)]
            B = [[rng.choice([0, 0, 1, -1, 2]) for _ in range(m)] for _ in range(size)]
            controllable = test_analyzer.kalman_rank(A, B) == size
            status = hautus_verdict(test_analyzer.state_space(A, B)).status
            expected = Status.STRONGLY_CONTROLLABLE if controllable else Status.UNCONTROLLABLE
            agree += status is expected
        elapsed = time.perf_counter() - start
        assert agree == 100
        assert elapsed < 30
        d["msg"] = "100/100 agree with Kalman rank"


def test_criterion_4_gradient():
    with criterion(4) as d:
        P = PolyMatrix.from_strings([["d1", "d2"]], 2)
        report = analyze(P)
        v = report.verdict(SignalSpace.SMOOTH)
        assert v.status is Status.CONTROLLABLE and v.cancellation_dimension == 0
        assert report.coordinates.controllable
        assert report.coordinates.surjective == (0, 1)
        assert any("joint surjectivity" in note for note in report.diagnostics)
        d["msg"] = "Controllable, dim 0, both coordinates surjective, joint caveat noted"


GENERIC_SHAPES = [
    ((1, 2, 2, 2), "controllable"),
    ((2, 3, 2, 2), "controllable"),
    ((2, 2, 2, 1), "uncontrollable"),
    ((3, 2, 2, 1), "uncontrollable"),
]


def test_criterion_5_genericity():
    with criterion(5) as d:
        start = time.perf_counter()
        parts = []
        for (rows, cols, n, deg), want in GENERIC_SHAPES:
            result = run_experiment(SampleSpec(rows, cols, n, deg, trials=100, seed=7))
            frac = getattr(result, f"{want}_fraction")
            assert frac >= 0.95, (rows, cols, frac)
            nonvanishing = (result.cancellation_nonzero_fraction if rows <= cols
                            else result.characteristic_nonzero_fraction)
            parts.append(f"{rows}x{cols}: {want} {frac:.2f}, ideal nonzero {nonvanishing:.2f}")
        assert time.perf_counter() - start < 120
        d["msg"] = "; ".join(parts)


def test_criterion_6_signal_spaces():
    with criterion(6) as d:
        pos = load("positive_factor.mat")
        assert signal_space_verdict(pos, SignalSpace.SMOOTH).status is Status.UNCONTROLLABLE
        v = signal_space_verdict(pos, SignalSpace.TEMPERATE)
        assert v.status is Status.CONTROLLABLE
        assert v.factors[0].points.certificate == "positivity"

        circle = load("circle5.mat")
        v = signal_space_verdict(circle, SignalSpace.PERIODIC_INTEGER)
        assert v.status is Status.UNCONTROLLABLE
        assert v.factors[0].points.point == (1, 2)

        half = load("half.mat")
        v = signal_space_verdict(half, SignalSpace.PERIODIC_RATIONAL)
        assert v.status is Status.UNCONTROLLABLE
        v = signal_space_verdict(half, SignalSpace.PERIODIC_INTEGER)
        assert v.status is Status.CONTROLLABLE
        assert v.factors[0].points.certificate == "parity"
        d["msg"] = "positivity, lattice point (1, 2), parity"


def _witness_corpus():
    for path in sorted(DEMOS.glob("*.mat")):
        yield path.name, parse_matrix(path.read_text())
    rng = random.Random(7)
    for i in range(30):
        n = 2 + i % 2
        rows = [[random_poly(rng, n, max_degree=1, terms=2) for _ in range(3)]
                for _ in range(2)]
        h = random_poly(rng, n, max_degree=1, terms=2, const=False)
        rows[i % 2] = [h * e for e in rows[i % 2]]
        yield f"planted-{i}", PolyMatrix(rows, n)


def test_criterion_7_witness_soundness():
    with criterion(7) as d:
        count = 0
        for name, P in _witness_corpus():
            if P.rows > P.cols or cancellation_ideal(P).is_zero():
                continue
            for f, _ in uncontrollable_factors(P):
                w = torsion_witness(P, f)
                test_analyzer.verify(P, w)
                count += 1
        for path in sorted(DEMOS.glob("*.mat")):
            code = main(["analyze", str(path)], io.StringIO(), io.StringIO())
            assert code == 0, path.name
        assert count > 0
        d["msg"] = f"{count} witnesses verified, no breach"


def test_criterion_8_property_suites():
    with criterion(8) as d:
        # ring, gcd and square-free invariants: 910 generated cases in total
        test_polyring.test_ring_axioms()
        test_polyring.test_eval_homomorphism()
        test_polyring.test_leibniz()
        test_polyring.test_gcd_properties_against_sympy()
        test_polyring.test_squarefree_reconstructs()
        test_polyring.test_factor_list_reconstructs()
        test_polyring.test_exact_division_roundtrip()

        test_polymatrix.test_bareiss_matches_cofactor_expansion()

        rng = random.Random(100)
        done = 0
        while done < 100:
            n = 2 + done % 2
            rows = [[random_poly(rng, n, max_degree=1, terms=2) for _ in range(3)]
                    for _ in range(2)]
            if done % 3 == 0:
                h = random_poly(rng, n, max_degree=1, terms=2, const=False)
                rows[0] = [h * e for e in rows[0]]
            nz = minors(PolyMatrix(rows, n), 2).nonzero()
            if not nz:
                continue
            nonconstant = not gcd_list(nz).is_constant()
            assert (krull_dimension(IdealBasis(nz, n)) == n - 1) == nonconstant
            done += 1

        test_analyzer.test_adjugate_inclusion()
        d["msg"] = "ring/gcd/sqf 910 cases, Bareiss 100, duality 100, adjugate 20"

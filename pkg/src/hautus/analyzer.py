"""Controllability verdicts for behaviors given by a polynomial matrix P(d).

The rows of ``P`` generate a submodule of A^k (A = Q[d1..dn]).  Everything
below is decided from two determinantal ideals: the cancellation ideal of
maximal (l x l) minors and the characteristic ideal of k x k minors.
"""

from __future__ import annotations

import enum
import json
import time
from fractions import Fraction
from itertools import product
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (
    IdealBasis,
    SubmoduleBasis,
    VectorPoly,
    colon_against_unit_vector,
    contains_one,
    krull_dimension,
    module_membership,
)
from .pointfinder import PointAnswer, PointStatus, SearchBounds, query
from .polymatrix import PolyMatrix, determinant, minors, rank_over_fraction_field
from .polyring import (
    Poly,
    factor_list,
    format_poly,
    gcd,
    gcd_list,
    is_squarefree,
    squarefree_decomposition,
)

SCHEMA = "hautus-report/1"

D_CONVENTION = (
    "for temperate and periodic spaces the symbols d1..dn are read as D_j = -i*d/dx_j; "
    "substituting from plain derivatives is left to the caller"
)


class AnalysisError(ValueError):
    """A precondition of an analysis operation is not met."""


class WitnessVerificationError(RuntimeError):
    """A constructed torsion witness failed its membership checks."""


class Shape(enum.Enum):
    STRICTLY_UNDER_DETERMINED = "StrictlyUnderDetermined"
    SQUARE = "Square"
    OVER_DETERMINED = "OverDetermined"


class SignalSpace(enum.Enum):
    SMOOTH = "smooth"
    TEMPERATE = "temperate"
    PERIODIC_RATIONAL = "periodic-rational"
    PERIODIC_INTEGER = "periodic-integer"

    @classmethod
    def _missing_(cls, value):
        # smooth functions and distributions share one verdict
        if value == "distributions":
            return cls.SMOOTH
        return None

    @property
    def point_kind(self) -> Optional[str]:
        return {
            SignalSpace.SMOOTH: None,
            SignalSpace.TEMPERATE: "real",
            SignalSpace.PERIODIC_RATIONAL: "rational",
            SignalSpace.PERIODIC_INTEGER: "integer",
        }[self]


class Status(enum.Enum):
    STRONGLY_CONTROLLABLE = "StronglyControllable"
    CONTROLLABLE = "Controllable"
    UNCONTROLLABLE = "Uncontrollable"
    DEGENERATE = "Degenerate"
    UNKNOWN = "Unknown"

    @property
    def controllable(self) -> bool:
        return self in (Status.STRONGLY_CONTROLLABLE, Status.CONTROLLABLE)


@dataclass(frozen=True)
class SystemClass:
    shape: Shape
    rows: int
    cols: int
    symbolic_rank: int
    rank_deficient: bool

    def to_dict(self) -> dict:
        return {
            "shape": self.shape.value,
            "rows": self.rows,
            "cols": self.cols,
            "symbolic_rank": self.symbolic_rank,
            "rank_deficient": self.rank_deficient,
        }


@dataclass(frozen=True)
class FactorEntry:
    factor: Poly
    multiplicity: int
    points: Optional[PointAnswer] = None

    def to_dict(self) -> dict:
        out = {"factor": format_poly(self.factor), "multiplicity": self.multiplicity}
        if self.points is not None:
            out["points"] = self.points.to_dict()
        return out


@dataclass(frozen=True)
class Verdict:
    status: Status
    space: SignalSpace
    cancellation_dimension: Optional[int] = None
    factors: Tuple[FactorEntry, ...] = ()
    notes: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "space": self.space.value,
            "cancellation_dimension": self.cancellation_dimension,
            "factors": [f.to_dict() for f in self.factors],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TorsionWitness:
    """``x`` outside the row module with ``p*x = sum b_i * row_i`` inside it."""

    prime_factor: Poly
    witness: VectorPoly
    certificate: Tuple[Poly, ...]
    row: int

    def to_dict(self) -> dict:
        return {
            "prime_factor": format_poly(self.prime_factor),
            "witness": [format_poly(c) for c in self.witness],
            "certificate": [format_poly(b) for b in self.certificate],
            "row": self.row + 1,
        }


@dataclass(frozen=True)
class CoordinateReport:
    controllable: bool
    surjective: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "coordinate_controllable": self.controllable,
            "surjective_coordinates": [j + 1 for j in self.surjective],
        }


@dataclass(frozen=True)
class FittingDiagnostic:
    """First nonzero Fitting ideal of A^k / P: the r x r minors, r = symbolic rank."""

    index: int
    minor_size: int
    ideal: IdealBasis
    dimension: int

    def to_dict(self) -> dict:
        return {
            "fitting_index": self.index,
            "minor_size": self.minor_size,
            "generators": [format_poly(g) for g in self.ideal.generators],
            "dimension": self.dimension,
        }


@dataclass(frozen=True)
class AnalysisConfig:
    bounds: SearchBounds = SearchBounds()
    witnesses: bool = True


@dataclass
class Report:
    matrix: PolyMatrix
    system: SystemClass
    cancellation_ideal: Optional[IdealBasis]
    characteristic_ideal: IdealBasis
    verdicts: List[Verdict]
    factors: List[Dict]
    witnesses: List[TorsionWitness]
    coordinates: CoordinateReport
    diagnostics: List[str]
    fitting: Optional[FittingDiagnostic] = None
    timing: Dict[str, float] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "nvars": self.matrix.nvars,
            "class": self.system.shape.value,
            "rank": self.system.symbolic_rank,
            "system": self.system.to_dict(),
            "cancellation_ideal": None if self.cancellation_ideal is None
            else [format_poly(g) for g in self.cancellation_ideal.generators],
            "characteristic_ideal": [format_poly(g) for g in self.characteristic_ideal.generators],
            "verdicts": [v.to_dict() for v in self.verdicts],
            "factors": self.factors,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "coordinates": self.coordinates.to_dict(),
            "fitting": None if self.fitting is None else self.fitting.to_dict(),
            "diagnostics": list(self.diagnostics),
        }
        if timing:
            out["timing"] = dict(self.timing)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def verdict(self, space: SignalSpace) -> Verdict:
        for v in self.verdicts:
            if v.space is space:
                return v
        raise KeyError(space)


# ---------------------------------------------------------------------------
# ideals and classification


def classify(P: PolyMatrix) -> SystemClass:
    if P.rows < P.cols:
        shape = Shape.STRICTLY_UNDER_DETERMINED
    elif P.rows == P.cols:
        shape = Shape.SQUARE
    else:
        shape = Shape.OVER_DETERMINED
    r = rank_over_fraction_field(P)
    return SystemClass(shape, P.rows, P.cols, r, r < min(P.rows, P.cols))


def cancellation_ideal(P: PolyMatrix) -> IdealBasis:
    """Ideal of the maximal l x l minors; only defined when l <= k."""
    if P.rows > P.cols:
        raise AnalysisError(
            f"cancellation ideal needs rows <= cols, matrix is {P.rows}x{P.cols}")
    return IdealBasis(minors(P, P.rows).nonzero(), P.nvars)


def characteristic_ideal(P: PolyMatrix) -> IdealBasis:
    """Ideal of the k x k minors; the zero ideal when there are fewer than k rows."""
    if P.rows < P.cols:
        return IdealBasis([], P.nvars)
    return IdealBasis(minors(P, P.cols).nonzero(), P.nvars)


def first_nonzero_fitting(P: PolyMatrix) -> FittingDiagnostic:
    r = rank_over_fraction_field(P)
    if r == 0:
        ideal = IdealBasis([Poly.one(P.nvars)], P.nvars)
    else:
        ideal = IdealBasis(minors(P, r).nonzero(), P.nvars)
    return FittingDiagnostic(P.cols - r, r, ideal, krull_dimension(ideal))


def _degenerate_notes(P: PolyMatrix, fit: FittingDiagnostic) -> List[str]:
    n = P.nvars
    notes = [
        "the rows are dependent over the fraction field, so the dimension test "
        "does not decide controllability",
        f"first nonzero Fitting ideal: {fit.minor_size}x{fit.minor_size} minors, "
        f"dimension {fit.dimension}",
    ]
    if fit.dimension <= n - 2:
        notes.append(f"Fitting dimension <= n-2 = {n - 2}: consistent with controllability, "
                     "but torsion is still possible")
    else:
        notes.append(f"Fitting dimension > n-2 = {n - 2}: the necessary condition for "
                     "controllability fails")
    if n == 1:
        notes.append("with one variable every torsion-free module is free; dropping "
                     "dependent rows gives a matrix the test applies to")
    elif n == 2:
        notes.append("with two variables every controllable behavior comes from a free "
                     "module; a minimal row set would make the test conclusive")
    return notes


def uncontrollable_factors(P: PolyMatrix) -> List[Tuple[Poly, int]]:
    """Square-free factors of the gcd of the nonzero maximal minors."""
    ideal = cancellation_ideal(P)
    if ideal.is_zero():
        raise AnalysisError("cancellation ideal is zero; the system is degenerate")
    g = gcd_list(list(ideal.generators))
    if g.is_constant():
        return []
    return factor_list(g)


# ---------------------------------------------------------------------------
# verdicts


def hautus_verdict(P: PolyMatrix) -> Verdict:
    """Verdict for smooth functions or distributions."""
    space = SignalSpace.SMOOTH
    n = P.nvars
    if P.rows <= P.cols:
        ideal = cancellation_ideal(P)
        if ideal.is_zero():
            fit = first_nonzero_fitting(P)
            return Verdict(Status.DEGENERATE, space, None, (), tuple(_degenerate_notes(P, fit)))
        if contains_one(ideal):
            return Verdict(Status.STRONGLY_CONTROLLABLE, space, -1, (),
                           ("the maximal minors generate the unit ideal",))
        dim = krull_dimension(ideal)
        if dim <= n - 2:
            return Verdict(Status.CONTROLLABLE, space, dim, (),
                           (f"cancellation variety has dimension {dim} <= n-2",))
        factors = tuple(FactorEntry(f, m) for f, m in uncontrollable_factors(P))
        return Verdict(Status.UNCONTROLLABLE, space, dim, factors,
                       (f"cancellation variety has dimension {dim} = n-1",))
    ideal = characteristic_ideal(P)
    if ideal.is_zero():
        fit = first_nonzero_fitting(P)
        return Verdict(Status.DEGENERATE, space, None, (),
                       ("over-determined with zero characteristic ideal",
                        *_degenerate_notes(P, fit)))
    if contains_one(ideal):
        return Verdict(Status.STRONGLY_CONTROLLABLE, space, None, (),
                       ("the k x k minors generate the unit ideal: the rows span A^k "
                        "and the behavior is zero",))
    dim = krull_dimension(ideal)
    return Verdict(Status.UNCONTROLLABLE, space, None, (),
                   ("over-determined with nonzero characteristic ideal "
                    f"(dimension {dim}): autonomous, no nonzero controllable part",))


def signal_space_verdict(P: PolyMatrix, space: SignalSpace,
                         bounds: SearchBounds = SearchBounds()) -> Verdict:
    base = hautus_verdict(P)
    if space is SignalSpace.SMOOTH:
        return base
    if base.status in (Status.DEGENERATE, Status.STRONGLY_CONTROLLABLE):
        return Verdict(base.status, space, base.cancellation_dimension, (), base.notes)
    if P.rows > P.cols:
        return _overdetermined_space_verdict(P, space, bounds)
    factors = uncontrollable_factors(P)
    if not factors:
        return Verdict(base.status, space, base.cancellation_dimension, (), base.notes)
    kind = space.point_kind
    entries = tuple(FactorEntry(f, m, query(f, kind, bounds)) for f, m in factors)
    statuses = {e.points.status for e in entries}
    if PointStatus.YES in statuses:
        status = Status.UNCONTROLLABLE
    elif PointStatus.UNKNOWN in statuses:
        status = Status.UNKNOWN
    else:
        status = Status.CONTROLLABLE
    notes = (f"{kind} points checked on each factor of the minor gcd",)
    return Verdict(status, space, base.cancellation_dimension, entries, notes)


def _overdetermined_space_verdict(P: PolyMatrix, space: SignalSpace,
                                  bounds: SearchBounds) -> Verdict:
    """Points of the characteristic variety decide autonomous systems.

    No point if one generator's hypersurface has none; a point if every
    generator vanishes at a small grid point; Unknown otherwise.
    """
    kind = space.point_kind
    gens = characteristic_ideal(P).generators
    for g in gens:
        sqf = Poly.one(P.nvars)
        for f, _ in squarefree_decomposition(g):
            sqf = sqf * f
        answer = query(sqf, kind, bounds)
        if answer.no:
            return Verdict(Status.CONTROLLABLE, space, None, (FactorEntry(sqf, 1, answer),),
                           (f"characteristic variety has no {kind} points, so the "
                            "behavior is zero in this space",))
    radius = min(bounds.real_grid_radius, 4)
    values = [Fraction(v) for v in range(-radius, radius + 1)]
    if kind != "integer":
        values += [Fraction(a, b) for b in (2, 3) for a in range(-2 * b, 2 * b + 1)
                   if a % b]
    if len(values) ** P.nvars <= bounds.max_lines:
        for point in product(values, repeat=P.nvars):
            if all(g.eval(point) == 0 for g in gens):
                return Verdict(Status.UNCONTROLLABLE, space, None, (), (
                    "characteristic variety contains the point ("
                    + ", ".join(str(x) for x in point) + ")",))
    return Verdict(Status.UNKNOWN, space, None, (),
                   (f"no certificate for {kind} points on the characteristic variety",))


def coordinate_controllability(P: PolyMatrix) -> CoordinateReport:
    """Coordinate-controllable iff the characteristic ideal is zero."""
    controllable = characteristic_ideal(P).is_zero()
    module = SubmoduleBasis.from_rows(P.entries, P.nvars)
    surjective = tuple(j for j in range(P.cols)
                       if colon_against_unit_vector(module, j).is_zero())
    return CoordinateReport(controllable, surjective)


def adjugate_certificates(P: PolyMatrix) -> List[Tuple[Poly, int, Tuple[Poly, ...]]]:
    """For each nonzero k x k minor d and coordinate j, b with sum b_i row_i = d e_j.

    Rows of the adjugate of the chosen k x k block give the coefficients.
    """
    if P.rows < P.cols:
        return []
    k = P.cols
    zero = Poly.zero(P.nvars)
    out = []
    for minor in minors(P, k).minors:
        if minor.det.is_zero():
            continue
        block = P.submatrix(minor.rows, range(k))
        for j in range(k):
            coeffs = [zero] * P.rows
            for pos, i in enumerate(minor.rows):
                # adj[j][pos] = (-1)^(j+pos) * det(block without row pos, column j)
                if k == 1:
                    cof = Poly.one(P.nvars)
                else:
                    keep_r = [r for r in range(k) if r != pos]
                    keep_c = [c for c in range(k) if c != j]
                    cof = determinant(block.submatrix(keep_r, keep_c))
                coeffs[i] = -cof if (j + pos) % 2 else cof
            out.append((minor.det, j, tuple(coeffs)))
    return out


# ---------------------------------------------------------------------------
# torsion witnesses


def _combine(coeffs: Sequence[Poly], P: PolyMatrix) -> List[Poly]:
    out = [Poly.zero(P.nvars)] * P.cols
    for b, row in zip(coeffs, P.entries):
        if b.is_zero():
            continue
        out = [acc + b * e for acc, e in zip(out, row)]
    return out


def _eliminate(P: PolyMatrix, p: Poly):
    """Row elimination with pivots coprime to p.

    Returns (row index, reduced row, cofactor row) for the first row whose
    entries are all divisible by p, or a proper factor of p to retry with.
    """
    n = P.nvars
    M = [list(r) for r in P.entries]
    U = [[Poly.one(n) if i == j else Poly.zero(n) for j in range(P.rows)]
         for i in range(P.rows)]
    for r in range(P.rows):
        row = M[r]
        if all(p.divides(e) for e in row):
            return r, row, U[r]
        pivot = None
        split = None
        for c, e in enumerate(row):
            if e.is_zero() or p.divides(e):
                continue
            g = gcd(e, p)
            if g.is_constant():
                pivot = c
                break
            if split is None:
                split = g
        if pivot is None:
            return split
        piv = row[pivot]
        for i in range(r + 1, P.rows):
            f = M[i][pivot]
            if f.is_zero():
                continue
            M[i] = [piv * a - f * b for a, b in zip(M[i], row)]
            U[i] = [piv * a - f * b for a, b in zip(U[i], U[r])]
    return None


def torsion_witness(P: PolyMatrix, p: Poly) -> TorsionWitness:
    """Vector x with x outside the row module and p*x inside it.

    ``p`` must be square-free and divide every nonzero maximal minor.  If p
    is reducible the witness may come out for a proper factor of it, which
    is then reported as ``prime_factor``.
    """
    if p.nvars != P.nvars:
        raise AnalysisError("factor and matrix use different variable counts")
    ideal = cancellation_ideal(P)
    if ideal.is_zero():
        raise AnalysisError("cancellation ideal is zero; no witness construction applies")
    if p.is_constant():
        raise AnalysisError("the factor must be non-constant")
    if not is_squarefree(p):
        raise AnalysisError(f"the factor {format_poly(p)} is not square-free")
    for d in ideal.generators:
        if not p.divides(d):
            raise AnalysisError(
                f"{format_poly(p)} does not divide the maximal minor {format_poly(d)}")
    while True:
        result = _eliminate(P, p)
        if isinstance(result, Poly):
            p = result
            continue
        break
    if result is None:
        raise WitnessVerificationError(
            f"elimination at {format_poly(p)} found no divisible row")
    r, row, coeffs = result
    x = VectorPoly([e.exact_div(p) for e in row], P.nvars)
    if _combine(coeffs, P) != [p * c for c in x]:
        raise WitnessVerificationError("certificate does not reproduce p*x")
    module = SubmoduleBasis.from_rows(P.entries, P.nvars)
    if not module_membership(x.scale(p), module):
        raise WitnessVerificationError("p*x is not in the row module")
    if module_membership(x, module):
        raise WitnessVerificationError("witness x already lies in the row module")
    return TorsionWitness(p, x, tuple(coeffs), r)


# ---------------------------------------------------------------------------
# orchestration


def analyze(P: PolyMatrix, spaces: Sequence[SignalSpace] = (SignalSpace.SMOOTH,),
            config: AnalysisConfig = AnalysisConfig()) -> Report:
    timing: Dict[str, float] = {}
    t0 = time.perf_counter()
    system = classify(P)
    cancel = cancellation_ideal(P) if P.rows <= P.cols else None
    char = characteristic_ideal(P)
    timing["ideals"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ordered = [s for s in SignalSpace if s in set(spaces)]
    verdicts = [signal_space_verdict(P, s, config.bounds) for s in ordered]
    timing["verdicts"] = time.perf_counter() - t0

    diagnostics: List[str] = []
    fitting = None
    factor_rows: List[Dict] = []
    witnesses: List[TorsionWitness] = []
    if cancel is not None and cancel.is_zero() or cancel is None and char.is_zero():
        fitting = first_nonzero_fitting(P)
        diagnostics.extend(_degenerate_notes(P, fitting))
    elif cancel is not None:
        t0 = time.perf_counter()
        for f, m in uncontrollable_factors(P):
            row = {"factor": format_poly(f), "multiplicity": m}
            for v in verdicts:
                for e in v.factors:
                    if e.factor == f and e.points is not None:
                        row[f"{v.space.point_kind}_points"] = e.points.to_dict()
            factor_rows.append(row)
            if config.witnesses:
                witnesses.append(torsion_witness(P, f))
        timing["factors"] = time.perf_counter() - t0
    if any(s is not SignalSpace.SMOOTH for s in ordered):
        diagnostics.append(D_CONVENTION)

    t0 = time.perf_counter()
    coords = coordinate_controllability(P)
    timing["coordinates"] = time.perf_counter() - t0
    if coords.controllable:
        diagnostics.append("each surjective coordinate is onto on its own; joint "
                           "surjectivity of several coordinates is not implied")
    return Report(P, system, cancel, char, verdicts, factor_rows, witnesses, coords,
                  diagnostics, fitting, timing)


def render_text(report: Report) -> str:
    s = report.system
    lines = [
        f"system: {s.rows}x{s.cols} in {report.matrix.nvars} variable(s), "
        f"{s.shape.value}, rank {s.symbolic_rank}"
        + (" (rank deficient)" if s.rank_deficient else ""),
    ]
    if report.cancellation_ideal is not None:
        lines.append(f"cancellation ideal: {_ideal_text(report.cancellation_ideal)}")
    lines.append(f"characteristic ideal: {_ideal_text(report.characteristic_ideal)}")
    previous: Tuple[str, ...] = ()
    for v in report.verdicts:
        dim = "" if v.cancellation_dimension is None else f" (dimension {v.cancellation_dimension})"
        lines.append(f"[{v.space.value}] {v.status.value}{dim}")
        for e in v.factors:
            extra = ""
            if e.points is not None:
                pt = "" if e.points.point is None else \
                    " at (" + ", ".join(str(x) for x in e.points.point) + ")"
                cert = "" if e.points.certificate is None else f" [{e.points.certificate}]"
                extra = f": points {e.points.status.value}{pt}{cert}"
            lines.append(f"    factor {_factor_text(e.factor, e.multiplicity)}{extra}")
        if v.notes != previous:
            lines.extend(f"    note: {note}" for note in v.notes)
        previous = v.notes
    if report.factors and not any(v.factors for v in report.verdicts):
        lines.append("uncontrollable factors: " + ", ".join(
            _factor_text(r["factor"], r["multiplicity"]) for r in report.factors))
    for w in report.witnesses:
        lines.append(f"witness for {format_poly(w.prime_factor)}: x = {w.witness} "
                     f"(row {w.row + 1})")
    c = report.coordinates
    surj = ", ".join(str(j + 1) for j in c.surjective) or "none"
    lines.append(f"coordinate controllable: {'yes' if c.controllable else 'no'}; "
                 f"surjective coordinates: {surj}")
    for d in report.diagnostics:
        if any(d in v.notes for v in report.verdicts):
            continue
        lines.append(f"note: {d}")
    return "\n".join(lines) + "\n"


def _ideal_text(ideal: IdealBasis) -> str:
    return "(0)" if ideal.is_zero() else str(ideal)


def _factor_text(f, m: int) -> str:
    text = f if isinstance(f, str) else format_poly(f)
    if m == 1:
        return text
    if any(op in text for op in " +-*"):
        text = f"({text})"
    return f"{text}^{m}"

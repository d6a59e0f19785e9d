"""Monte-Carlo experiments on random polynomial matrices of a fixed shape."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

import numpy as np

from .analyzer import Status, characteristic_ideal, hautus_verdict
from .polymatrix import PolyMatrix, minors
from .polyring import Poly, gcd_list


@dataclass(frozen=True)
class SampleSpec:
    rows: int
    cols: int
    nvars: int
    degree: int
    coeff_range: int = 9
    density: float = 1.0
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        for name in ("rows", "cols", "nvars", "coeff_range", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not 0 < self.density <= 1:
            raise ValueError("density must lie in (0, 1]")

    def rng(self, trial: int) -> np.random.Generator:
        """Independent stream for one trial, fixed by (seed, trial)."""
        return np.random.default_rng(np.random.SeedSequence([self.seed, trial]))


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    status: Optional[Status]
    cancellation_nonzero: bool
    nonzero_minors: int
    characteristic_nonzero: bool
    gcd_nonconstant: Optional[bool]
    error: Optional[str] = None


@dataclass
class ExperimentResult:
    spec: SampleSpec
    trials: List[TrialRecord] = field(default_factory=list)

    @property
    def counts(self) -> Dict[str, int]:
        c = Counter(t.status.value if t.status else "error" for t in self.trials)
        keys = [s.value for s in Status] + ["error"]
        return {k: c.get(k, 0) for k in keys}

    def fraction(self, *statuses: Status) -> float:
        hit = sum(1 for t in self.trials if t.status in statuses)
        return hit / len(self.trials) if self.trials else 0.0

    @property
    def controllable_fraction(self) -> float:
        return self.fraction(Status.STRONGLY_CONTROLLABLE, Status.CONTROLLABLE)

    @property
    def uncontrollable_fraction(self) -> float:
        return self.fraction(Status.UNCONTROLLABLE)

    def _freq(self, attr: str) -> float:
        return sum(1 for t in self.trials if getattr(t, attr)) / max(len(self.trials), 1)

    @property
    def cancellation_nonzero_fraction(self) -> float:
        return self._freq("cancellation_nonzero")

    @property
    def two_minors_fraction(self) -> float:
        return sum(1 for t in self.trials if t.nonzero_minors >= 2) / max(len(self.trials), 1)

    @property
    def characteristic_nonzero_fraction(self) -> float:
        return self._freq("characteristic_nonzero")

    def to_dict(self) -> dict:
        s = self.spec
        return {
            "schema": "hautus-report/1",
            "spec": {"rows": s.rows, "cols": s.cols, "nvars": s.nvars, "degree": s.degree,
                     "coeff_range": s.coeff_range, "density": s.density,
                     "trials": s.trials, "seed": s.seed},
            "counts": self.counts,
            "controllable_fraction": self.controllable_fraction,
            "uncontrollable_fraction": self.uncontrollable_fraction,
            "cancellation_nonzero_fraction": self.cancellation_nonzero_fraction,
            "two_nonzero_minors_fraction": self.two_minors_fraction,
            "characteristic_nonzero_fraction": self.characteristic_nonzero_fraction,
            "trials": [
                {"trial": t.trial, "status": t.status.value if t.status else None,
                 "cancellation_nonzero": t.cancellation_nonzero,
                 "nonzero_minors": t.nonzero_minors,
                 "characteristic_nonzero": t.characteristic_nonzero,
                 "gcd_nonconstant": t.gcd_nonconstant, "error": t.error}
                for t in self.trials
            ],
            "notes": [
                "the nonzero-cancellation-ideal frequency stands in for sampling only "
                "matrices whose rows minimally generate their module",
            ],
        }


def _monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    return sorted((e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree),
                  key=lambda e: (sum(e), e))


def random_poly(spec: SampleSpec, rng: np.random.Generator) -> Poly:
    """Each monomial of degree <= d kept with probability ``density``."""
    c = spec.coeff_range
    nonzero = [v for v in range(-c, c + 1) if v]
    terms = {}
    for exps in _monomials(spec.nvars, spec.degree):
        if rng.random() < spec.density:
            terms[exps] = Fraction(int(nonzero[rng.integers(len(nonzero))]))
    return Poly(terms, spec.nvars)


def random_matrix(spec: SampleSpec, rng: np.random.Generator) -> PolyMatrix:
    return PolyMatrix([[random_poly(spec, rng) for _ in range(spec.cols)]
                       for _ in range(spec.rows)], spec.nvars)


def run_trial(spec: SampleSpec, trial: int) -> TrialRecord:
    P = random_matrix(spec, spec.rng(trial))
    try:
        if P.rows <= P.cols:
            nz = minors(P, P.rows).nonzero()
        else:
            nz = []
        char_nz = not characteristic_ideal(P).is_zero()
        g = None
        if nz:
            g = not gcd_list(nz).is_constant()
        verdict = hautus_verdict(P)
        return TrialRecord(trial, verdict.status, bool(nz), len(nz), char_nz, g)
    except Exception as exc:  # recorded per trial, not fatal
        return TrialRecord(trial, None, False, 0, False, None, error=repr(exc))


def run_experiment(spec: SampleSpec) -> ExperimentResult:
    result = ExperimentResult(spec)
    for t in range(spec.trials):
        result.trials.append(run_trial(spec, t))
    return result


def summary_table(result: ExperimentResult) -> str:
    s = result.spec
    lines = [
        f"shape {s.rows}x{s.cols}, n={s.nvars}, degree<={s.degree}, "
        f"coefficients in [-{s.coeff_range}, {s.coeff_range}], density {s.density}, "
        f"{s.trials} trials, seed {s.seed}",
        f"{'outcome':<28}{'count':>8}{'fraction':>10}",
    ]
    n = max(len(result.trials), 1)
    for key, count in result.counts.items():
        if key == "error" and not count:
            continue
        lines.append(f"{key:<28}{count:>8}{count / n:>10.3f}")
    lines.append(f"{'controllable (any)':<28}{'':>8}{result.controllable_fraction:>10.3f}")
    lines.append(f"{'cancellation ideal nonzero':<28}{'':>8}"
                 f"{result.cancellation_nonzero_fraction:>10.3f}")
    lines.append(f"{'two or more nonzero minors':<28}{'':>8}{result.two_minors_fraction:>10.3f}")
    lines.append(f"{'characteristic ideal nonzero':<28}{'':>8}"
                 f"{result.characteristic_nonzero_fraction:>10.3f}")
    return "\n".join(lines) + "\n"

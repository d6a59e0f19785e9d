"""Generalized Hautus test for behaviors of linear constant-coefficient PDEs."""

from .analyzer import (
    AnalysisConfig,
    AnalysisError,
    Report,
    SignalSpace,
    Status,
    TorsionWitness,
    Verdict,
    WitnessVerificationError,
    analyze,
    cancellation_ideal,
    characteristic_ideal,
    classify,
    coordinate_controllability,
    hautus_verdict,
    render_text,
    signal_space_verdict,
    torsion_witness,
    uncontrollable_factors,
)
from .groebner import IdealBasis, SubmoduleBasis, VectorPoly, krull_dimension
from .pointfinder import SearchBounds, has_integer_points, has_rational_points, has_real_points
from .polymatrix import PolyMatrix, parse_matrix
from .polyring import Poly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig", "AnalysisError", "IdealBasis", "Poly", "PolyMatrix", "Report",
    "SearchBounds", "SignalSpace", "Status", "SubmoduleBasis", "TorsionWitness",
    "VectorPoly", "Verdict", "WitnessVerificationError", "analyze", "cancellation_ideal",
    "characteristic_ideal", "classify", "coordinate_controllability", "hautus_verdict",
    "has_integer_points", "has_rational_points", "has_real_points", "krull_dimension",
    "parse_matrix", "parse_poly", "render_text", "signal_space_verdict", "torsion_witness",
    "uncontrollable_factors",
]

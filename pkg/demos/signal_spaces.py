"""
One factor, several signal spaces
=================================

The same uncontrollable factor can be harmless in one space and fatal in
another. What matters is whether it has real, rational or integer points.
"""

from pathlib import Path

from hautus import SignalSpace, analyze
from hautus.genericity import SampleSpec, run_experiment, summary_table
from hautus.polymatrix import parse_matrix

here = Path(__file__).parent / "matrices"

for name in ("positive_factor.mat", "circle5.mat", "half.mat"):
    P = parse_matrix((here / name).read_text())
    report = analyze(P, list(SignalSpace))
    print(name)
    for v in report.verdicts:
        cert = ", ".join(f.points.certificate for f in v.factors if f.points)
        print(f"  {v.space.value:<18} {v.status.value:<15} {cert}")

# random 1x2 systems are controllable almost always
result = run_experiment(SampleSpec(1, 2, 2, 2, trials=40, seed=7))
print(summary_table(result))

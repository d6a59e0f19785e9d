"""
Curl, gradient and the cancellation ideal
=========================================

Two systems in three and two variables: the curl operator, whose rows are
dependent so the minor test says nothing, and the gradient, which passes it.
"""

from pathlib import Path

from hautus import PolyMatrix, SignalSpace, analyze, render_text
from hautus.polymatrix import determinant, minors, parse_matrix

here = Path(__file__).parent / "matrices"

# the curl matrix: a 3x3 skew matrix with zero determinant
P1 = parse_matrix((here / "p1.mat").read_text())
print("det P1 =", determinant(P1))

# all 3x3 minors vanish, so look one size down at the 2x2 minors
for m in minors(P1, 2).nonzero():
    print("  2x2 minor:", m)

# the report flags the degenerate case and falls back on Fitting data
print(render_text(analyze(P1)))

# the gradient (d1, d2): one equation, two unknowns
grad = PolyMatrix.from_strings([["d1", "d2"]], 2)
report = analyze(grad, [SignalSpace.SMOOTH])
print(render_text(report))

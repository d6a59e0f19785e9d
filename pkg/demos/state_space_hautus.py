"""
Ordinary state-space systems
============================

With one variable the test collapses to the rank condition on
(sI - A, B). Compare it against the Kalman matrix for a few pairs.
"""

import numpy as np

from hautus import PolyMatrix, Status, hautus_verdict
from hautus.polyring import Poly

rng = np.random.default_rng(4)


def pencil(A, B):
    # rows of (d1*I - A, -B)
    n = A.shape[0]
    s = Poly({(1,): 1}, 1)
    rows = []
    for i in range(n):
        row = [s * int(i == j) - Poly.constant(int(A[i, j]), 1) for j in range(n)]
        row += [Poly.constant(-int(b), 1) for b in B[i]]
        rows.append(row)
    return PolyMatrix(rows, 1)


def kalman(A, B):
    blocks = [B]
    for _ in range(A.shape[0] - 1):
        blocks.append(A @ blocks[-1])
    return np.linalg.matrix_rank(np.hstack(blocks)) == A.shape[0]


# double integrator first: x1' = x2, x2' = u
A = np.array([[0, 1], [0, 0]])
B = np.array([[0], [1]])
print("double integrator:", hautus_verdict(pencil(A, B)).status.value)

# then a handful of random integer pairs
for trial in range(8):
    n = int(rng.integers(1, 4))
    A = rng.integers(-2, 3, size=(n, n))
    B = rng.integers(-1, 2, size=(n, 1))
    v = hautus_verdict(pencil(A, B))
    agree = (v.status is Status.STRONGLY_CONTROLLABLE) == kalman(A, B)
    print(f"n={n}  {v.status.value:<22} kalman agrees: {agree}")
    for f in v.factors:
        # each factor is a shared eigenvalue of A that B cannot reach
        print("    uncontrollable mode:", f.factor)

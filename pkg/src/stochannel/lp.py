"""Dense phase-one simplex for small feasibility problems.

Decides ``A x = b, x >= 0`` by minimizing the sum of one artificial variable
per row. Bland's rule for entering and leaving variables, so no cycling.
"""

from typing import Tuple

import numpy as np

PIVOT_TOL = 1e-12


def phase_one(a, b, pivot_tol: float = PIVOT_TOL, max_pivots: int = 10_000
              ) -> Tuple[np.ndarray, np.ndarray]:
    """Return ``(x, residual)`` with ``x >= 0`` minimizing ``sum |b - A x|``
    among the one-sided residuals reachable by phase one.

    ``residual = b - A x`` is zero (up to rounding) iff the system is feasible.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    rows, cols = a.shape
    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0

    # tableau [A | I | b] with the artificial block as starting basis
    t = np.zeros((rows, cols + rows + 1))
    t[:, :cols] = a
    t[:, cols:cols + rows] = np.eye(rows)
    t[:, -1] = b
    basis = list(range(cols, cols + rows))
    # reduced costs of min sum(artificials): c_j - 1^T B^-1 a_j
    cost = np.zeros(cols + rows + 1)
    cost[cols:cols + rows] = 1.0
    red = cost - t.sum(axis=0)
    red[cols:cols + rows] = 0.0

    for _ in range(max_pivots):
        entering = next((j for j in range(cols + rows) if red[j] < -pivot_tol), None)
        if entering is None:
            break
        col = t[:, entering]
        best, leave = np.inf, None
        for i in range(rows):
            if col[i] > pivot_tol:
                # exact minimum; a tolerance here lets other basics go negative
                ratio = t[i, -1] / col[i]
                if ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # unbounded direction cannot occur for a bounded-below objective
            break
        t[leave] /= t[leave, entering]
        for i in range(rows):
            if i != leave and t[i, entering] != 0.0:
                t[i] -= t[i, entering] * t[leave]
        red -= red[entering] * t[leave]
        basis[leave] = entering

    x = np.zeros(cols)
    for i, j in enumerate(basis):
        if j < cols:
            x[j] = max(t[i, -1], 0.0)
    residual = b - a @ x
    residual[flip] *= -1.0
    return x, residual

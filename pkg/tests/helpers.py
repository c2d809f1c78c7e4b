"""Random generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the library's code paths: plain loops,
mpmath, scipy's LP solver, exhaustive enumeration.
"""

import itertools
import math

import mpmath
import numpy as np
from scipy.optimize import linprog


def random_channel(rng, m, n=None, alpha=1.0):
    n = m if n is None else n
    return rng.dirichlet(np.full(n, alpha), size=m)


def random_perm(rng, n):
    return tuple(int(x) for x in rng.permutation(n))


def perm_matrix(mapping):
    n = len(mapping)
    a = np.zeros((n, n))
    for i, j in enumerate(mapping):
        a[i, j] = 1.0
    return a


def entropy_mp(p, dps=40):
    with mpmath.workdps(dps):
        return float(-sum(mpmath.mpf(x) * mpmath.log(mpmath.mpf(x), 2) for x in p if x > 0))


def mutual_information_loops(p, w):
    m, n = len(w), len(w[0])
    q = [sum(p[i] * w[i][j] for i in range(m)) for j in range(n)]
    total = 0.0
    for i in range(m):
        for j in range(n):
            joint = p[i] * w[i][j]
            if joint > 0:
                total += joint * (math.log2(w[i][j]) - math.log2(q[j]))
    return total


def binary_z_capacity(e):
    """Closed form for [[1-e, e], [0, 1]], 0 <= e < 1."""
    if e == 0:
        return 1.0
    return math.log2(1.0 + (1.0 - e) * e ** (e / (1.0 - e)))


def in_hull_scipy(gens, x, tol=1e-9):
    gens = np.asarray(gens, dtype=float)
    a_eq = np.vstack([gens.T, np.ones(len(gens))])
    b_eq = np.append(np.asarray(x, dtype=float), 1.0)
    res = linprog(np.zeros(len(gens)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None),
                  method="highs", options={"primal_feasibility_tolerance": tol})
    return res.status == 0


def hull_distance_inf(gens, x):
    """Max-norm distance from ``x`` to conv(gens), by HiGHS on the epigraph LP."""
    gens = np.asarray(gens, dtype=float)
    x = np.asarray(x, dtype=float)
    k, n = gens.shape
    cost = np.zeros(k + 1)
    cost[-1] = 1.0
    a_ub = np.block([[gens.T, -np.ones((n, 1))], [-gens.T, -np.ones((n, 1))]])
    a_eq = np.append(np.ones(k), 0.0)[None]
    res = linprog(cost, A_ub=a_ub, b_ub=np.concatenate([x, -x]), A_eq=a_eq, b_eq=[1.0],
                  bounds=(0, None), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    return res.fun


def convolve_loops(table, mu, nu):
    m = len(table)
    out = [0.0] * m
    for x in range(m):
        for y in range(m):
            out[table[x][y]] += mu[x] * nu[y]
    return out


def minimal_ideal_brute(table):
    """Intersection of all principal two-sided ideals S t S."""
    m = len(table)
    result = set(range(m))
    for t in range(m):
        result &= {table[table[a][t]][b] for a in range(m) for b in range(m)}
    return sorted(result)


def units_brute(table, e):
    m = len(table)
    return [x for x in range(m) if any(table[x][y] == e and table[y][x] == e for y in range(m))]


def all_maps(n):
    return list(itertools.product(range(n), repeat=n))

"""Row polytopes inside the probability simplex and the order they induce
on channels.

A channel ``C`` is below ``C2`` when every row of ``C`` is a mixture of rows
of ``C2`` (equivalently ``M C`` lies in ``M C2`` for ``M`` the constant-row
channels); the quotient by the induced equivalence is the family of polytopes
ordered by reverse inclusion.
"""

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .channel import Channel, ChannelLike, as_channel
from .errors import DimensionMismatch, EmptyVector
from .lp import phase_one
from .prob import Dist, DistLike, as_dist

MEMBERSHIP_TOL = 1e-9
WAY_BELOW_EPS = 1e-6
_ROUND = 1e9
# phase-one residual treated as zero; rounding level of the tableau
_FEASIBLE = 1e-12


def _key(x) -> Tuple[int, ...]:
    return tuple(int(v) for v in np.rint(np.asarray(x, dtype=float) * _ROUND))


class Polytope:
    """Convex hull of finitely many distributions of a common dimension.

    Duplicated generators are allowed. Two polytopes compare equal when their
    generator lists agree after rounding to the 1e-9 grid; compare
    :func:`canonical_form` results to test equality as sets.
    """

    __slots__ = ("generators",)

    def __init__(self, generators: Iterable[DistLike]):
        gens = tuple(as_dist(g) for g in generators)
        if not gens:
            raise EmptyVector("polytope needs at least one generator")
        if any(len(g) != len(gens[0]) for g in gens):
            raise DimensionMismatch("generators differ in dimension")
        object.__setattr__(self, "generators", gens)

    def __setattr__(self, name, value):
        raise AttributeError("Polytope is immutable")

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def as_array(self) -> np.ndarray:
        return np.vstack([g.weights for g in self.generators])

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(_key(g.weights) for g in self.generators)

    def __eq__(self, other):
        if isinstance(other, Polytope):
            return self.key() == other.key()
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "Polytope(" + ", ".join(repr(g) for g in self.generators) + ")"

    def centroid(self) -> np.ndarray:
        return self.as_array().mean(axis=0)

    def vertices(self) -> "Polytope":
        return Polytope(_vertex_list(self.as_array()))

    def shrink(self, factor: float, center: Optional[Sequence[float]] = None) -> "Polytope":
        """Scale toward ``center`` (default: the generator centroid) by ``factor``."""
        c = self.centroid() if center is None else np.asarray(center, dtype=float)
        pts = c + factor * (self.as_array() - c)
        return Polytope(Dist(p / p.sum()) for p in pts)


def as_polytope(x) -> Polytope:
    if isinstance(x, Polytope):
        return x
    if isinstance(x, Channel):
        return rows_polytope(x)
    return Polytope(x)


def rows_polytope(c: ChannelLike) -> Polytope:
    """The image of the simplex under ``c``: the hull of its rows."""
    return Polytope(as_channel(c).rows)


def membership_weights(gens: np.ndarray, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Phase-one solve of ``sum_j lam_j g_j = x, sum lam = 1, lam >= 0``.

    Returns ``(lam, residual)``; ``x`` may be any real vector.
    """
    gens = np.asarray(gens, dtype=float)
    x = np.asarray(x, dtype=float)
    if gens.shape[1] != x.shape[0]:
        raise DimensionMismatch(f"point of size {x.shape[0]} for generators of size {gens.shape[1]}")
    a = np.vstack([gens.T, np.ones(gens.shape[0])])
    b = np.append(x, 1.0)
    return phase_one(a, b)


def within_hull(gens: np.ndarray, x: np.ndarray, tol: float = MEMBERSHIP_TOL) -> bool:
    """Some mixture of ``gens`` is within ``tol`` of ``x`` in the max norm.

    The band is part of the feasibility system, via slacks
    ``sum_j lam_j g_j + s - t = x`` with ``0 <= s, t <= tol``.
    """
    gens = np.asarray(gens, dtype=float)
    x = np.asarray(x, dtype=float)
    k, n = gens.shape
    eye = np.eye(n)
    a = np.zeros((3 * n + 1, k + 4 * n))
    a[:n, :k] = gens.T
    a[:n, k:k + n] = eye
    a[:n, k + n:k + 2 * n] = -eye
    a[n:2 * n, k:k + n] = eye
    a[n:2 * n, k + 2 * n:k + 3 * n] = eye
    a[2 * n:3 * n, k + n:k + 2 * n] = eye
    a[2 * n:3 * n, k + 3 * n:] = eye
    a[-1, :k] = 1.0
    b = np.concatenate([x, np.full(2 * n, tol), [1.0]])
    _, residual = phase_one(a, b)
    return bool(np.max(np.abs(residual)) <= _FEASIBLE)


def contains_point(p, x, tol: float = MEMBERSHIP_TOL) -> bool:
    """True iff some mixture of the generators is within ``tol`` of ``x`` in
    the max norm."""
    p = as_polytope(p)
    x = x.weights if isinstance(x, Dist) else np.asarray(x, dtype=float)
    if len(x) != p.dim:
        raise DimensionMismatch(f"point of size {len(x)} for a polytope in dimension {p.dim}")
    return within_hull(p.as_array(), x, tol)


def polytope_leq(p, q, tol: float = MEMBERSHIP_TOL) -> bool:
    """``p`` is contained in ``q``."""
    p, q = as_polytope(p), as_polytope(q)
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions {p.dim} and {q.dim}")
    return all(contains_point(q, g, tol) for g in p.generators)


def leq_M(c: ChannelLike, c2: ChannelLike, tol: float = MEMBERSHIP_TOL) -> bool:
    """Every row of ``c`` is a mixture of the rows of ``c2``."""
    c, c2 = as_channel(c), as_channel(c2)
    if c.n != c2.n:
        raise DimensionMismatch(f"output sizes {c.n} and {c2.n}")
    return polytope_leq(rows_polytope(c), rows_polytope(c2), tol)


def equiv_M_polytope(c: ChannelLike, c2: ChannelLike, tol: float = MEMBERSHIP_TOL) -> bool:
    """Same row polytope."""
    return leq_M(c, c2, tol) and leq_M(c2, c, tol)


def equiv_M_rows(c: ChannelLike, c2: ChannelLike) -> bool:
    """Rows agree up to a permutation, compared on the 1e-9 grid."""
    c, c2 = as_channel(c), as_channel(c2)
    if c.shape != c2.shape:
        raise DimensionMismatch(f"shapes {c.shape} and {c2.shape}")
    return sorted(_key(r) for r in c.matrix) == sorted(_key(r) for r in c2.matrix)


def _vertex_list(pts: np.ndarray, tol: float = MEMBERSHIP_TOL) -> list:
    # deduplicate on the rounding grid, then drop points inside the hull of the rest
    seen, kept = set(), []
    for row in pts:
        k = _key(row)
        if k not in seen:
            seen.add(k)
            kept.append(row)
    i = 0
    while i < len(kept) and len(kept) > 1:
        others = np.vstack(kept[:i] + kept[i + 1:])
        if within_hull(others, kept[i], tol):
            del kept[i]
        else:
            i += 1
    kept.sort(key=_key)
    return [Dist(r) for r in kept]


def canonical_form(c) -> Polytope:
    """Vertices of the row polytope, sorted lexicographically (1e-9 grid)."""
    return as_polytope(c).vertices()


def way_below(p, q, eps: float = WAY_BELOW_EPS, tol: float = MEMBERSHIP_TOL) -> bool:
    """``q`` lies in the interior of ``p`` relative to the simplex's plane.

    Each vertex ``v`` of ``q`` must have ``v +- eps (e_k - e_last)`` inside
    ``p`` for every ``k``; by convexity that puts a neighbourhood of ``v`` in
    ``p``.
    """
    p, q = as_polytope(p), as_polytope(q)
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions {p.dim} and {q.dim}")
    n = p.dim
    gens = p.as_array()
    for v in q.vertices().generators:
        probes = [v.weights]
        for k in range(n - 1):
            d = np.zeros(n)
            d[k], d[-1] = 1.0, -1.0
            probes += [v.weights + eps * d, v.weights - eps * d]
        if not all(within_hull(gens, x, tol) for x in probes):
            return False
    return True


def _plane_basis(n: int) -> np.ndarray:
    # orthonormal basis (columns) of {x : sum x = 0}
    q, _ = np.linalg.qr(np.eye(n)[:, :-1] - 1.0 / n)
    return q[:, : n - 1]


def containment_margin(p, q) -> float:
    """Smallest Euclidean distance, inside the plane ``sum x = 1``, from a
    vertex of ``q`` to the relative boundary of ``p``.

    Negative when some vertex of ``q`` lies outside ``p``; zero when ``p`` has
    empty interior in that plane.
    """
    from scipy.spatial import ConvexHull, QhullError

    p, q = as_polytope(p), as_polytope(q)
    if p.dim != q.dim:
        raise DimensionMismatch(f"dimensions {p.dim} and {q.dim}")
    n = p.dim
    if n == 1:
        return float("inf")
    basis = _plane_basis(n)
    pts = p.as_array() @ basis
    if np.linalg.matrix_rank(pts - pts.mean(axis=0), tol=1e-12) < n - 1:
        return 0.0
    if n == 2:
        lo, hi = pts[:, 0].min(), pts[:, 0].max()
        vs = q.as_array() @ basis
        return float(np.min(np.minimum(vs[:, 0] - lo, hi - vs[:, 0])))
    try:
        hull = ConvexHull(pts)
    except QhullError:
        return 0.0
    normals, offsets = hull.equations[:, :-1], hull.equations[:, -1]
    vs = q.as_array() @ basis
    # qhull facets satisfy normal . x + offset <= 0 inside, with unit normals
    return float(np.min(-(vs @ normals.T + offsets)))

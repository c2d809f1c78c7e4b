"""Finite monoids by Cayley table and the convolution monoid of probability
measures on them.

Transformations are written in one-line notation and multiplied in the
algebraic order, ``(f g)(x) = g(f(x))``, so that the 0/1 matrix of ``f g`` is
the matrix product of the matrices of ``f`` and ``g``.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .channel import Channel, ChannelLike, as_channel
from .errors import (
    BadTable,
    MonoidMismatch,
    NoIdentity,
    NotAGroup,
    NotAssociative,
    NotHomomorphism,
    TooLarge,
)
from .prob import Dist, DistLike, as_dist

SUPPORT_TOL = 1e-12
MAX_TRANSFORMATION_DEGREE = 5


class FiniteMonoid:
    """Monoid on ``elements`` with ``table[i, j]`` the index of ``x_i x_j``.

    Build through :func:`make_monoid` (validates) or the named constructors.
    """

    __slots__ = ("elements", "table", "identity", "_index", "degree")

    def __init__(self, elements: Sequence[Hashable], table, identity: int,
                 degree: Optional[int] = None):
        t = np.array(table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "elements", tuple(elements))
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", int(identity))
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.elements)})
        # number of points acted on, for monoids of self-maps built here
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteMonoid is immutable")

    def __len__(self):
        return len(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self, label: Hashable) -> int:
        return self._index[label]

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def same_as(self, other: "FiniteMonoid") -> bool:
        return self is other or (
            self.elements == other.elements and np.array_equal(self.table, other.table))

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, identity={self.elements[self.identity]!r})"


def _find_identity(table: np.ndarray) -> Optional[int]:
    ar = np.arange(len(table))
    for e in range(len(table)):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    return None


def _is_associative(table: np.ndarray) -> bool:
    for i in range(len(table)):
        # (x_i x_j) x_k against x_i (x_j x_k), for all j, k
        if not np.array_equal(table[table[i]], table[i][table]):
            return False
    return True


def make_monoid(elements: Sequence[Hashable], table) -> FiniteMonoid:
    """Validate a Cayley table: shape, range, distinct labels, identity,
    associativity (in that order)."""
    elements = list(elements)
    m = len(elements)
    if m == 0:
        raise BadTable("monoid needs at least one element")
    if len(set(elements)) != m:
        raise BadTable("element labels are not distinct")
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise BadTable(f"table is not an integer matrix: {exc}") from None
    if t.shape != (m, m):
        raise BadTable(f"table shape {t.shape} for {m} elements")
    if t.min() < 0 or t.max() >= m:
        raise BadTable("table entry out of range")
    e = _find_identity(t)
    if e is None:
        raise NoIdentity("no two-sided identity element")
    if not _is_associative(t):
        raise NotAssociative("table is not associative")
    return FiniteMonoid(elements, t, e)


def cyclic_group(n: int) -> FiniteMonoid:
    """Z_n under addition, labelled ``0..n-1``."""
    a = np.arange(n)
    return FiniteMonoid(list(range(n)), (a[:, None] + a[None, :]) % n, 0)


def _maps_monoid(maps: List[Tuple[int, ...]], n: int, prefix: str) -> FiniteMonoid:
    index = {f: i for i, f in enumerate(maps)}
    arr = np.array(maps, dtype=np.int64).reshape(len(maps), n)
    powers = n ** np.arange(n - 1, -1, -1)
    if len(maps) == n ** n:
        # all maps in lexicographic order: the base-n reading is the index
        lookup = np.arange(n ** n)
    else:
        lookup = np.full(n ** n, -1)
        lookup[arr @ powers] = np.arange(len(maps))
    table = np.empty((len(maps), len(maps)), dtype=np.int64)
    for a in range(len(maps)):
        # row a: x -> g(f_a(x)) for every g
        table[a] = lookup[arr[:, arr[a]] @ powers]
    labels = [prefix + "".join(str(v) for v in f) for f in maps]
    return FiniteMonoid(labels, table, index[tuple(range(n))], degree=n)


def transformation_monoid(n: int) -> FiniteMonoid:
    """All ``n ** n`` self-maps of ``{0..n-1}``, labelled ``"f:<one-line>"``.

    Associative by construction, so the O(m^3) check is skipped.
    """
    if not 1 <= n <= MAX_TRANSFORMATION_DEGREE:
        raise TooLarge(f"transformation monoid degree must be in 1..{MAX_TRANSFORMATION_DEGREE}")
    maps = list(itertools.product(range(n), repeat=n))
    return _maps_monoid(maps, n, "f:")


def symmetric_group(n: int) -> FiniteMonoid:
    """Permutations of ``{0..n-1}``, labelled ``"p:<one-line>"``."""
    if not 1 <= n <= MAX_TRANSFORMATION_DEGREE:
        raise TooLarge(f"symmetric group degree must be in 1..{MAX_TRANSFORMATION_DEGREE}")
    return _maps_monoid(list(itertools.permutations(range(n))), n, "p:")


def parse_map_label(label: str) -> Optional[Tuple[int, ...]]:
    """``"f:102"`` -> ``(1, 0, 2)``; ``None`` when the label is not of that form."""
    if not isinstance(label, str) or not label.startswith("f:") or len(label) < 3:
        return None
    body = label[2:]
    if not body.isdigit():
        return None
    return tuple(int(ch) for ch in body)


def as_transformation_monoid(s: FiniteMonoid) -> FiniteMonoid:
    """Check that ``s`` is a full transformation monoid with ``f:`` labels and
    the algebraic product; return it with its degree recorded."""
    maps = [parse_map_label(x) for x in s.elements]
    if any(f is None for f in maps):
        raise MonoidMismatch("labels are not of the form 'f:<one-line notation>'")
    if s.degree is not None and s.size == s.degree ** s.degree:
        return s
    n = len(maps[0])
    if any(len(f) != n or max(f) >= n for f in maps) or len(set(maps)) != n ** n:
        raise MonoidMismatch(f"labels do not enumerate all self-maps of {n} points")
    index = {f: i for i, f in enumerate(maps)}
    for a, f in enumerate(maps):
        for b, g in enumerate(maps):
            if s.table[a, b] != index[tuple(g[x] for x in f)]:
                raise MonoidMismatch("table is not composition of maps")
    return FiniteMonoid(s.elements, s.table, s.identity, degree=n)


@dataclass(frozen=True)
class ProbMeasure:
    """Probability weights on the elements of a finite monoid."""

    monoid: FiniteMonoid
    weights: Dist

    def __post_init__(self):
        w = as_dist(self.weights)
        if len(w) != self.monoid.size:
            raise MonoidMismatch(f"{len(w)} weights for a monoid of size {self.monoid.size}")
        object.__setattr__(self, "weights", w)

    def support(self, threshold: float = SUPPORT_TOL) -> frozenset:
        return frozenset(self.weights.support(threshold))

    def __getitem__(self, label):
        return self.weights[self.monoid.index(label)]


def measure(s: FiniteMonoid, weights: DistLike) -> ProbMeasure:
    return ProbMeasure(s, as_dist(weights))


def point_mass(s: FiniteMonoid, i: int) -> ProbMeasure:
    w = np.zeros(s.size)
    w[i] = 1.0
    return ProbMeasure(s, Dist(w))


def convolve(mu: ProbMeasure, nu: ProbMeasure) -> ProbMeasure:
    """``(mu * nu)(z) = sum over x y = z of mu(x) nu(y)``."""
    if not mu.monoid.same_as(nu.monoid):
        raise MonoidMismatch("measures live on different monoids")
    s = mu.monoid
    joint = np.outer(mu.weights.weights, nu.weights.weights)
    out = np.bincount(s.table.ravel(), weights=joint.ravel(), minlength=s.size)
    return ProbMeasure(s, Dist(out / out.sum()))


def check_homomorphism(phi: Sequence[int], s: FiniteMonoid, t: FiniteMonoid) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (s.size,) or phi.min() < 0 or phi.max() >= t.size:
        raise NotHomomorphism("map does not send every element into the target")
    if phi[s.identity] != t.identity:
        raise NotHomomorphism("identity is not preserved")
    if not np.array_equal(phi[s.table], t.table[np.ix_(phi, phi)]):
        raise NotHomomorphism("products are not preserved")
    return phi


def pushforward_hom(phi: Sequence[int], mu: ProbMeasure, target: FiniteMonoid) -> ProbMeasure:
    """Image of ``mu`` under the monoid homomorphism ``phi`` (index map)."""
    phi = check_homomorphism(phi, mu.monoid, target)
    out = np.bincount(phi, weights=mu.weights.weights, minlength=target.size)
    return ProbMeasure(target, Dist(out / out.sum()))


def units(s: FiniteMonoid) -> List[int]:
    """Indices of the invertible elements."""
    one = s.table == s.identity
    return [int(i) for i in np.nonzero(np.any(one & one.T, axis=1))[0]]


def is_group(s: FiniteMonoid) -> bool:
    return len(units(s)) == s.size


def principal_ideal(s: FiniteMonoid, t: int) -> frozenset:
    """``S t S`` (``S`` already contains the identity)."""
    return frozenset(np.unique(s.table[s.table[:, t]]).tolist())


def minimal_ideal(s: FiniteMonoid) -> List[int]:
    """Indices of the smallest two-sided ideal.

    The product ``z`` of all elements lies in every principal ideal, so
    ``S z S`` is the intersection of all of them.
    """
    z = 0
    for x in range(1, s.size):
        z = s.mul(z, x)
    return sorted(principal_ideal(s, z))


def haar(s: FiniteMonoid) -> ProbMeasure:
    """Uniform measure on a finite group."""
    if not is_group(s):
        raise NotAGroup("monoid has non-invertible elements")
    return ProbMeasure(s, Dist.uniform(s.size))


def measure_to_channel(mu: ProbMeasure) -> Channel:
    """``sum_f mu(f) M_f`` where ``M_f`` is the 0/1 matrix of the map ``f``."""
    s = as_transformation_monoid(mu.monoid)
    maps = np.array([parse_map_label(x) for x in s.elements], dtype=np.int64)
    n = s.degree
    out = np.zeros((n, n))
    rows = np.arange(n)
    for w, f in zip(mu.weights.weights, maps):
        if w:
            out[rows, f] += w
    return Channel(out / out.sum(axis=1, keepdims=True))


def product_measure(c: ChannelLike, s: Optional[FiniteMonoid] = None) -> ProbMeasure:
    """Section of :func:`measure_to_channel`: ``weight(f) = prod_i C[i, f(i)]``.

    Each input picks its output independently, so the image is ``C`` itself.
    """
    c = as_channel(c)
    if c.m != c.n:
        raise MonoidMismatch("only square channels come from self-maps")
    n = c.n
    s = transformation_monoid(n) if s is None else as_transformation_monoid(s)
    if s.degree != n:
        raise MonoidMismatch(f"monoid acts on {s.degree} points, channel on {n}")
    maps = np.array([parse_map_label(x) for x in s.elements], dtype=np.int64)
    w = np.prod(c.matrix[np.arange(n)[None, :], maps], axis=1)
    return ProbMeasure(s, Dist(w / w.sum()))


def labels(s: FiniteMonoid, idx) -> List[Hashable]:
    return [s.elements[i] for i in idx]


def weights_by_label(mu: ProbMeasure) -> Dict[Hashable, float]:
    return {x: w for x, w in zip(mu.monoid.elements, mu.weights)}

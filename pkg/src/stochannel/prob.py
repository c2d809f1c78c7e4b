"""Probability vectors on finite sets, Shannon entropy and mixtures."""

import math
from typing import Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyVector,
    IndexOutOfRange,
    NegativeWeight,
    NotNormalized,
)

#: Slack accepted on the sum and on negative entries of raw input.
VALIDATION_TOL = 1e-9


class Dist:
    """Immutable probability vector on ``len(self)`` points.

    Construct through :func:`make_dist`, :func:`dirac` or :meth:`Dist.uniform`;
    the constructor itself trusts its argument.
    """

    __slots__ = ("_w",)

    def __init__(self, weights):
        w = np.array(weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "_w", w)

    def __setattr__(self, name, value):
        raise AttributeError("Dist is immutable")

    @classmethod
    def uniform(cls, n: int) -> "Dist":
        if n < 1:
            raise EmptyVector("uniform distribution needs n >= 1")
        return cls(np.full(n, 1.0 / n))

    @property
    def weights(self) -> np.ndarray:
        return self._w

    def __len__(self):
        return len(self._w)

    def __iter__(self):
        return iter(self._w.tolist())

    def __getitem__(self, i):
        return float(self._w[i])

    def __array__(self, dtype=None, copy=None):
        return self._w if dtype is None else self._w.astype(dtype)

    def __eq__(self, other):
        if isinstance(other, Dist):
            return np.array_equal(self._w, other._w)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._w.tolist()))

    def __repr__(self):
        return "Dist(" + ", ".join(f"{x:.6g}" for x in self._w) + ")"

    def tolist(self) -> list:
        return self._w.tolist()

    def support(self, threshold: float = 0.0) -> list:
        return [i for i, x in enumerate(self._w) if x > threshold]


DistLike = Union[Dist, Sequence[float], np.ndarray]


def make_dist(raw: DistLike) -> Dist:
    """Validate ``raw`` as a probability vector and renormalize it exactly.

    Entries in ``[-1e-9, 0)`` are clamped to zero; anything more negative
    raises :class:`NegativeWeight`. The sum must lie within ``1 +- 1e-9``.
    """
    if isinstance(raw, Dist):
        return raw
    w = np.array(raw, dtype=float).reshape(-1) if np.ndim(raw) <= 1 else None
    if w is None:
        raise DimensionMismatch("a distribution is a flat vector")
    if w.size == 0:
        raise EmptyVector("distribution needs at least one weight")
    if not np.all(np.isfinite(w)):
        raise NotNormalized("weights must be finite")
    if np.any(w < -VALIDATION_TOL):
        raise NegativeWeight(f"negative weight {w.min():.3g}")
    w = np.clip(w, 0.0, None)
    total = math.fsum(w)
    if abs(total - 1.0) > VALIDATION_TOL:
        raise NotNormalized(f"weights sum to {total!r}")
    return Dist(w / total)


def as_dist(x: DistLike) -> Dist:
    return x if isinstance(x, Dist) else make_dist(x)


def dirac(i: int, n: int) -> Dist:
    """Point mass at ``i`` on ``n`` points."""
    if not 0 <= i < n:
        raise IndexOutOfRange(f"index {i} outside 0..{n - 1}")
    w = np.zeros(n)
    w[i] = 1.0
    return Dist(w)


def entropy_of_array(w: np.ndarray) -> np.ndarray:
    """Row-wise base-2 entropy of nonnegative arrays, with 0 log 0 = 0."""
    w = np.asarray(w, dtype=float)
    pos = w > 0
    logs = np.log2(np.where(pos, w, 1.0))
    return -np.sum(np.where(pos, w * logs, 0.0), axis=-1)


def entropy(p: DistLike) -> float:
    """Shannon entropy in bits."""
    p = as_dist(p)
    return float(entropy_of_array(p.weights))


def convex_combine(weights: DistLike, points: Sequence[DistLike]) -> Dist:
    """The mixture ``sum_j weights[j] * points[j]``."""
    weights = as_dist(weights)
    pts = [as_dist(x) for x in points]
    if len(pts) != len(weights):
        raise DimensionMismatch(f"{len(weights)} weights for {len(pts)} points")
    n = len(pts[0])
    if any(len(x) != n for x in pts):
        raise DimensionMismatch("points differ in dimension")
    mix = weights.weights @ np.vstack([x.weights for x in pts])
    return make_dist(mix)

"""Row-stochastic matrices as classical channels.

Row vector convention throughout: an input distribution ``p`` is sent to
``p @ C``, row ``i`` of ``C`` is the image of the point mass at ``i`` and
running ``C`` then ``D`` is the matrix product ``C @ D``.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyVector,
    IndexOutOfRange,
    InvalidPermutation,
    NotSquare,
    ParameterOutOfRange,
    RaggedMatrix,
)
from .prob import VALIDATION_TOL, Dist, DistLike, as_dist, entropy, entropy_of_array, make_dist


class Channel:
    """An ``m x n`` row-stochastic matrix, stored read-only."""

    __slots__ = ("_a",)

    def __init__(self, matrix):
        a = np.array(matrix, dtype=float)
        a.setflags(write=False)
        object.__setattr__(self, "_a", a)

    def __setattr__(self, name, value):
        raise AttributeError("Channel is immutable")

    @property
    def matrix(self) -> np.ndarray:
        return self._a

    @property
    def shape(self) -> Tuple[int, int]:
        return self._a.shape

    @property
    def m(self) -> int:
        return self._a.shape[0]

    @property
    def n(self) -> int:
        return self._a.shape[1]

    @property
    def rows(self) -> Tuple[Dist, ...]:
        return tuple(Dist(r) for r in self._a)

    def row(self, i: int) -> Dist:
        return Dist(self._a[i])

    def __array__(self, dtype=None, copy=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __eq__(self, other):
        if isinstance(other, Channel):
            return self.shape == other.shape and np.array_equal(self._a, other._a)
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self):
        return f"Channel({self._a.tolist()!r})"

    def tolist(self) -> list:
        return self._a.tolist()


ChannelLike = Union[Channel, Sequence[Sequence[float]], np.ndarray]


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0..n-1}`` in one-line notation: ``i -> mapping[i]``.

    Products use the algebraic (left-to-right) order: ``(a * b)(x) = b(a(x))``,
    which is the order in which the permutation matrices multiply.
    """

    mapping: Tuple[int, ...]

    def __post_init__(self):
        mp = tuple(int(x) for x in self.mapping)
        if sorted(mp) != list(range(len(mp))):
            raise InvalidPermutation(f"{mp} is not a bijection on 0..{len(mp) - 1}")
        object.__setattr__(self, "mapping", mp)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(other) != len(self):
            raise DimensionMismatch("permutations of different degree")
        return Permutation(tuple(other.mapping[x] for x in self.mapping))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self)
        for i, x in enumerate(self.mapping):
            inv[x] = i
        return Permutation(tuple(inv))

    def one_line(self) -> str:
        if len(self) <= 10:
            return "".join(str(x) for x in self.mapping)
        return ",".join(str(x) for x in self.mapping)


def make_channel(rows: ChannelLike) -> Channel:
    """Validate a raw matrix; every row must pass :func:`make_dist`."""
    if isinstance(rows, Channel):
        return rows
    rows = [list(r) for r in (rows.tolist() if isinstance(rows, np.ndarray) else rows)]
    if not rows:
        raise EmptyVector("channel needs at least one row")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise RaggedMatrix("rows have different lengths")
    return Channel(np.vstack([make_dist(r).weights for r in rows]))


def as_channel(c: ChannelLike) -> Channel:
    return c if isinstance(c, Channel) else make_channel(c)


def pushforward(p: DistLike, c: ChannelLike) -> Dist:
    """Output distribution ``p @ C``."""
    p, c = as_dist(p), as_channel(c)
    if len(p) != c.m:
        raise DimensionMismatch(f"input of size {len(p)} for a {c.m}-input channel")
    return make_dist(p.weights @ c.matrix)


def compose(c: ChannelLike, d: ChannelLike) -> Channel:
    """Kleisli composite: ``c`` followed by ``d``."""
    c, d = as_channel(c), as_channel(d)
    if c.n != d.m:
        raise DimensionMismatch(f"cannot compose {c.shape} with {d.shape}")
    prod = c.matrix @ d.matrix
    # exact row renormalization keeps the result inside ST(m, k)
    return Channel(prod / prod.sum(axis=1, keepdims=True))


def conditional_entropy(p: DistLike, c: ChannelLike) -> float:
    """H(Y | X) in bits for input ``p`` through ``c``."""
    p, c = as_dist(p), as_channel(c)
    if len(p) != c.m:
        raise DimensionMismatch(f"input of size {len(p)} for a {c.m}-input channel")
    return float(p.weights @ entropy_of_array(c.matrix))


def mutual_information(p: DistLike, c: ChannelLike) -> float:
    """I(X; Y) = H(p C) - H(Y | X), in bits."""
    return entropy(pushforward(p, c)) - conditional_entropy(p, c)


def identity_channel(n: int) -> Channel:
    if n < 1:
        raise EmptyVector("identity channel needs n >= 1")
    return Channel(np.eye(n))


def permutation_channel(pi: Union[Permutation, Sequence[int]]) -> Channel:
    """0/1 matrix with a one at ``(i, pi(i))``."""
    if not isinstance(pi, Permutation):
        pi = Permutation(tuple(pi))
    n = len(pi)
    a = np.zeros((n, n))
    a[np.arange(n), list(pi.mapping)] = 1.0
    return Channel(a)


def constant_channel(q: DistLike, m: int = None) -> Channel:
    """Every row equal to ``q``; ``m`` rows, square by default."""
    q = as_dist(q)
    m = len(q) if m is None else m
    if m < 1:
        raise EmptyVector("constant channel needs at least one row")
    return Channel(np.tile(q.weights, (m, 1)))


def z_channel(n: int, k: int, p: float) -> Channel:
    """``p * I_n + (1 - p) * O_k`` with ``O_k`` the constant channel onto ``k``.

    For ``n = 2, k = 1`` this is ``[[p, 1-p], [0, 1]]``; the usual binary
    Z-channel written with crossover ``e`` is the case ``p = 1 - e``.
    """
    if not 0 <= k < n:
        raise IndexOutOfRange(f"k={k} outside 0..{n - 1}")
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"p={p} outside [0, 1]")
    a = p * np.eye(n)
    a[:, k] += 1.0 - p
    return Channel(a)


def is_doubly_stochastic(c: ChannelLike, tol: float = VALIDATION_TOL) -> bool:
    c = as_channel(c)
    if c.m != c.n:
        raise NotSquare(f"shape {c.shape} is not square")
    return bool(np.all(np.abs(c.matrix.sum(axis=0) - 1.0) <= tol))

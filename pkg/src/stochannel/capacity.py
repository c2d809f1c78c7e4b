"""Channel capacity: Blahut-Arimoto, a simplex-grid oracle, and the
entropy-gap supremum over a polytope of distributions."""

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .channel import Channel, ChannelLike, as_channel
from .errors import DimensionMismatch, NoConvergence, ParameterOutOfRange, TooLarge
from .prob import Dist, DistLike, as_dist, convex_combine, entropy_of_array, make_dist

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000
GRID_MAX_INPUTS = 4
_TINY = 1e-300
_MAX_RELAX = 2.0 ** 30
_MI_FLOOR = 1e-14


@dataclass(frozen=True)
class CapacityResult:
    """Capacity in bits with the certifying input and a bracketing interval.

    ``capacity == lower_bound``, the mutual information actually achieved by
    ``argmax_input``; ``upper_bound`` is ``max_i D(row_i || argmax_input C)``.
    """

    capacity: float
    argmax_input: Dist
    iterations: int
    lower_bound: float
    upper_bound: float

    @property
    def gap(self) -> float:
        return self.upper_bound - self.lower_bound


def entropy_gap(weights: DistLike, points: Sequence[DistLike]) -> float:
    """``H(sum_i r_i x_i) - sum_i r_i H(x_i)``; nonnegative by concavity.

    Evaluated as ``sum_i r_i D(x_i || mix)``, which avoids cancelling two
    large entropies; each divergence is clamped at zero against rounding.
    """
    weights = as_dist(weights)
    pts = [as_dist(x) for x in points]
    mix = convex_combine(weights, pts)
    x = np.vstack([p.weights for p in pts])
    log_x = np.log2(np.where(x > 0, x, 1.0))
    d = np.maximum(_divergences(x, log_x, mix.weights), 0.0)
    return float(weights.weights @ d)


def _divergences(w: np.ndarray, log_w: np.ndarray, q: np.ndarray) -> np.ndarray:
    # D(row_i || q) in bits; entries with w = 0 contribute nothing
    log_q = np.log2(np.maximum(q, _TINY))
    return np.sum(np.where(w > 0, w * (log_w - log_q), 0.0), axis=1)


def _prepare(c: Channel) -> Tuple[np.ndarray, np.ndarray]:
    w = c.matrix[:, c.matrix.sum(axis=0) > 0]
    log_w = np.log2(np.where(w > 0, w, 1.0))
    return w, log_w


def divergence_bounds(p: DistLike, c: ChannelLike) -> Tuple[float, float]:
    """Lower and upper capacity bounds certified by the input ``p``.

    Lower is ``I(p, C) = sum_i p_i D_i``; upper is ``max_i D_i`` where
    ``D_i = D(row_i || p C)``.
    """
    p, c = as_dist(p), as_channel(c)
    if len(p) != c.m:
        raise DimensionMismatch(f"input of size {len(p)} for a {c.m}-input channel")
    w, log_w = _prepare(c)
    d = _divergences(w, log_w, p.weights @ w)
    return max(0.0, float(p.weights @ d)), float(d.max())


def _ba_step(log_p, d, mu, w, log_w):
    x = log_p + mu * d
    p = np.exp2(x - x.max())
    p /= p.sum()
    d_new = _divergences(w, log_w, p @ w)
    return p, d_new, float(p @ d_new)


def blahut_arimoto(c: ChannelLike, tol: float = DEFAULT_TOL,
                   max_iter: int = DEFAULT_MAX_ITER, accelerate: bool = True) -> CapacityResult:
    """Capacity of ``c`` by the alternating Blahut-Arimoto iteration.

    Starts from the uniform input and multiplies ``p_i`` by
    ``2 ** D(row_i || p C)`` each step, in the log domain. Stops once
    ``max_i D_i - sum_i p_i D_i <= tol``; raises :class:`NoConvergence` with
    the last iterate attached when ``max_iter`` steps do not suffice.

    With ``accelerate`` the exponent is also tried at 2, 4, 8, ... times its
    size and the largest step that still raises the mutual information is
    kept. This never does worse than the plain step and removes the
    very slow contraction on channels with nearly equal rows.
    """
    c = as_channel(c)
    if tol <= 0:
        raise ParameterOutOfRange("tol must be positive")
    if max_iter < 1:
        raise ParameterOutOfRange("max_iter must be >= 1")
    w, log_w = _prepare(c)
    p = np.full(c.m, 1.0 / c.m)
    d = _divergences(w, log_w, p @ w)
    for it in range(1, max_iter + 1):
        lower = max(0.0, float(p @ d))
        upper = max(lower, float(d.max()))
        if upper - lower <= tol:
            return CapacityResult(lower, make_dist(p), it, lower, upper)
        if it == max_iter:
            break
        log_p = np.log2(np.maximum(p, _TINY))
        p_next, d_next, mi_next = _ba_step(log_p, d, 1.0, w, log_w)
        mu = 2.0
        while accelerate and mu <= _MAX_RELAX:
            cand, d_cand, mi_cand = _ba_step(log_p, d, mu, w, log_w)
            if not mi_cand > mi_next:
                break
            p_next, d_next, mi_next = cand, d_cand, mi_cand
            mu *= 2.0
        p, d = p_next, d_next
    result = CapacityResult(lower, make_dist(p), max_iter, lower, upper)
    log.debug("blahut_arimoto stopped with gap %.3g after %d steps", result.gap, max_iter)
    raise NoConvergence(
        f"gap {result.gap:.3g} > tol {tol:.3g} after {max_iter} iterations", result)


def _compositions(m: int, total: int) -> np.ndarray:
    """All nonnegative integer vectors of length ``m`` summing to ``total``,
    in lexicographic order (``m <= 3``)."""
    if m == 1:
        return np.array([[total]])
    a = np.arange(total + 1)
    if m == 2:
        return np.column_stack([a, total - a])
    i, j = np.meshgrid(a, a, indexing="ij")
    keep = i + j <= total
    i, j = i[keep], j[keep]
    return np.column_stack([i, j, total - i - j])


def _grid_blocks(m: int, resolution: int):
    if m <= 3:
        yield _compositions(m, resolution)
        return
    for first in range(resolution + 1):
        rest = _compositions(m - 1, resolution - first)
        yield np.column_stack([np.full(len(rest), first), rest])


def _mi_batch(points: np.ndarray, w: np.ndarray, row_h: np.ndarray) -> np.ndarray:
    return entropy_of_array(points @ w) - points @ row_h


def grid_search(c: ChannelLike, resolution: int = 1000) -> Tuple[float, Dist, int]:
    """Best input on the regular simplex grid, then one local refinement.

    Returns ``(mutual information, input, points evaluated)``. Ties go to the
    lexicographically first grid point.
    """
    c = as_channel(c)
    m = c.m
    if m > GRID_MAX_INPUTS:
        raise TooLarge(f"grid oracle supports at most {GRID_MAX_INPUTS} inputs, got {m}")
    if resolution < 10:
        raise ParameterOutOfRange("resolution must be >= 10")
    w = c.matrix
    row_h = entropy_of_array(w)

    best_val, best_pt, count = -np.inf, None, 0
    for block in _grid_blocks(m, resolution):
        vals = _mi_batch(block / resolution, w, row_h)
        count += len(block)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best_pt = float(vals[i]), block[i]

    # refinement: step / 10 within one coarse step (max-norm) of the best point
    fine = 10 * resolution
    centre = 10 * best_pt
    offsets = np.array(list(itertools.product(range(-10, 11), repeat=m - 1)), dtype=int)
    cand = np.empty((len(offsets), m), dtype=int)
    cand[:, :-1] = centre[:-1] + offsets
    cand[:, -1] = fine - cand[:, :-1].sum(axis=1)
    ok = np.all(cand >= 0, axis=1) & (np.abs(cand[:, -1] - centre[-1]) <= 10)
    cand = cand[ok]
    vals = _mi_batch(cand / fine, w, row_h)
    count += len(cand)
    i = int(np.argmax(vals))
    if vals[i] > best_val:
        best_val, best_pt, scale = float(vals[i]), cand[i], fine
    else:
        scale = resolution
    # H(pC) - p.H(rows) leaves rounding residue on channels with equal rows
    if best_val < _MI_FLOOR:
        best_val = 0.0
    return best_val, make_dist(best_pt / scale), count


def capacity_grid_oracle(c: ChannelLike, resolution: int = 1000) -> float:
    """Brute-force capacity for channels with at most four inputs."""
    return grid_search(c, resolution)[0]


def cap_polytope(generators, tol: float = DEFAULT_TOL,
                 max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Supremum of the entropy gap over mixtures of ``generators``.

    The gap for weights ``r`` equals the mutual information of ``r`` through
    the channel whose rows are the generators, so Blahut-Arimoto on that
    channel computes it. Accepts a :class:`~stochannel.polytope.Polytope` or a
    sequence of distributions.
    """
    pts = getattr(generators, "generators", generators)
    rows = [as_dist(x) for x in pts]
    if not rows:
        raise DimensionMismatch("need at least one generator")
    if any(len(r) != len(rows[0]) for r in rows):
        raise DimensionMismatch("generators differ in dimension")
    return blahut_arimoto(Channel(np.vstack([r.weights for r in rows])), tol, max_iter).capacity


def capacity(c: ChannelLike, tol: float = DEFAULT_TOL) -> float:
    """Shorthand for ``blahut_arimoto(c, tol).capacity``."""
    return blahut_arimoto(c, tol).capacity


__all__ = [
    "CapacityResult",
    "blahut_arimoto",
    "cap_polytope",
    "capacity",
    "capacity_grid_oracle",
    "divergence_bounds",
    "entropy_gap",
    "grid_search",
]

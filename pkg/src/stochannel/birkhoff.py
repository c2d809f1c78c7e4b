"""Birkhoff decomposition of doubly stochastic matrices into permutations."""

from typing import List, Optional, Tuple

import numpy as np

from .channel import ChannelLike, Permutation, as_channel, is_doubly_stochastic, permutation_channel
from .errors import DecompositionFailed, NotDoublyStochastic, NotSquare

POSITIVE_TOL = 1e-12


def perfect_matching(mask: np.ndarray) -> Optional[List[int]]:
    """Row -> column perfect matching on the True entries of a square mask,
    by augmenting paths (Kuhn). ``None`` if there is none."""
    n = mask.shape[0]
    adj = [np.nonzero(mask[r])[0].tolist() for r in range(n)]
    owner = [-1] * n

    def augment(r, seen):
        for c in adj[r]:
            if not seen[c]:
                seen[c] = True
                if owner[c] < 0 or augment(owner[c], seen):
                    owner[c] = r
                    return True
        return False

    for r in range(n):
        if not augment(r, [False] * n):
            return None
    match = [0] * n
    for c, r in enumerate(owner):
        match[r] = c
    return match


def birkhoff_decompose(d: ChannelLike) -> List[Tuple[float, Permutation]]:
    """Greedy decomposition ``D = sum_i w_i P_i``.

    Repeatedly matches rows to columns on the positive entries of the
    residual and peels off the matched permutation with the smallest matched
    entry as weight. Each step zeroes an entry and lowers the dimension of
    the face containing the residual, so at most ``(n-1)**2 + 1`` terms.
    """
    d = as_channel(d)
    try:
        ok = is_doubly_stochastic(d)
    except NotSquare as exc:
        raise NotDoublyStochastic(str(exc)) from None
    if not ok:
        raise NotDoublyStochastic("column sums differ from 1")
    n = d.n
    residual = d.matrix.copy()
    rows = np.arange(n)
    terms = []
    limit = (n - 1) ** 2 + 1
    while residual.max() >= POSITIVE_TOL:
        match = perfect_matching(residual >= POSITIVE_TOL)
        if match is None or len(terms) >= limit:
            raise DecompositionFailed(
                f"residual with max entry {residual.max():.3g} has no further permutation")
        entries = residual[rows, match]
        k = int(np.argmin(entries))
        w = float(entries[k])
        residual[rows, match] -= w
        residual[k, match[k]] = 0.0
        terms.append((w, Permutation(tuple(match))))
    return terms


def recompose(terms) -> np.ndarray:
    return sum(w * permutation_channel(p).matrix for w, p in terms)

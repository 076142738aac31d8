"""Dynamic time warping distance between two 1-D signal sequences."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WarpResult:
    """Optimal alignment: total cost plus the index-pair path realizing it."""

    distance: float
    path: tuple[tuple[int, int], ...]


def dtw_distance(x, y) -> WarpResult:
    """Minimum cumulative alignment cost between sequences x and y.

    Local cost is |x_i - y_j|.  The alignment may stretch either sequence,
    so a single element of one can map to several elements of the other and
    the inputs may have different lengths.  Backtracking ties are resolved
    diagonal first, then vertical (advance i), then horizontal (advance j),
    which makes the returned path deterministic.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("dtw_distance expects 1-D sequences")
    n, m = x.size, y.size
    if n == 0 or m == 0:
        raise ValueError("dtw_distance requires nonempty sequences")

    cost = np.abs(x[:, None] - y[None, :])

    # Cumulative cost with an inf border so edge cells need no special cases.
    acc = np.full((n + 1, m + 1), np.inf)
    acc[0, 0] = 0.0
    for i in range(1, n + 1):
        row = acc[i]
        prev = acc[i - 1]
        crow = cost[i - 1]
        for j in range(1, m + 1):
            row[j] = crow[j - 1] + min(prev[j - 1], prev[j], row[j - 1])

    path = [(n - 1, m - 1)]
    i, j = n, m
    while (i, j) != (1, 1):
        candidates = (acc[i - 1, j - 1], acc[i - 1, j], acc[i, j - 1])
        move = int(np.argmin(candidates))  # argmin keeps the first minimum: diagonal wins ties
        if move == 0:
            i, j = i - 1, j - 1
        elif move == 1:
            i = i - 1
        else:
            j = j - 1
        path.append((i - 1, j - 1))
    path.reverse()

    return WarpResult(distance=float(acc[n, m]), path=tuple(path))

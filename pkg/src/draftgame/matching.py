"""Exact maximum-weight assignment on integer matrices.

Potential-based augmenting-path method (cubic).  All arithmetic stays in
Python integers, so efficiency values of any magnitude are handled exactly —
floating point would silently round the large values produced by the
hardness-instance generator.
"""

from __future__ import annotations

_INF = float("inf")  # sentinel only; never mixed into the returned value


def max_weight_assignment(weights: list[list[int]]) -> tuple[int, list[int]]:
    """Best injective row->column assignment for a rectangular weight matrix.

    Rows that stay unassigned contribute 0, which for nonnegative weights is
    the same as padding the matrix square with zero entries.  Returns the
    total weight and, per row, the assigned column (-1 when the row ended up
    on a zero pad).
    """
    rows = len(weights)
    cols = len(weights[0]) if rows else 0
    n = max(rows, cols, 1)

    # Minimise the negated weights on an n x n zero-padded square.
    def cost(i: int, j: int) -> int:
        if i < rows and j < cols:
            return -weights[i][j]
        return 0

    u = [0] * (n + 1)
    v = [0] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j (1-based; 0 = none)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [_INF] * (n + 1)
        way = [0] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = _INF
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost(i0 - 1, j - 1) - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1

    total = 0
    assigned = [-1] * rows
    for j in range(1, n + 1):
        i = match[j]
        if 1 <= i <= rows and j <= cols and weights[i - 1][j - 1] != 0:
            assigned[i - 1] = j - 1
            total += weights[i - 1][j - 1]
    return total, assigned

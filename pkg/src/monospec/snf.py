"""Integer Smith normal form with transform tracking, for small matrices."""

from __future__ import annotations


def smith_normal_form(matrix: list[list[int]]):
    """Return (d, u, v) with u * matrix * v = d, u and v unimodular.

    d is diagonal (rectangular) with d[i][i] dividing d[i+1][i+1].  Intended
    for the small relation matrices arising from finite abelian groups.
    """
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    k = 0
    while k < rows and k < cols:
        # Find the nonzero entry of least magnitude in the trailing block.
        pivot = None
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best):
                    best = x
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            row_swap(k, pi)
        if pj != k:
            col_swap(k, pj)
        if a[k][k] < 0:
            row_negate(k)
        dirty = False
        for i in range(k + 1, rows):
            if a[i][k]:
                q = a[i][k] // a[k][k]
                row_op(i, k, q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, cols):
            if a[k][j]:
                q = a[k][j] // a[k][k]
                col_op(j, k, q)
                if a[k][j]:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility of the remaining block by the pivot.
        offender = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if a[i][j] % a[k][k]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(k, offender, -1)
            continue
        k += 1
    return a, u, v


def abelian_invariant_factors(orders_matrix: list[list[int]]):
    """Invariant factors (ascending divisibility, 1s dropped) and the column transform."""
    d, _, v = smith_normal_form(orders_matrix)
    k = min(len(d), len(d[0]) if d else 0)
    factors = [d[i][i] for i in range(k) if d[i][i] not in (0, 1)]
    return factors, v

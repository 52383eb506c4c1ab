"""Exact integer matrix routines: Smith normal form, determinant, integer solve.

Matrices are plain lists of lists of Python ints.
"""

from __future__ import annotations


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def smith_normal_form(matrix):
    """Return ``(D, U, V)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular; ``D`` is diagonal with non-negative
    entries d_1 | d_2 | ... followed by zeros.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not nonzero:
                return a, u, v
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                clean = clean and a[t][j] == 0
            if not clean:
                continue
            # the pivot must divide the whole remaining block
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def invariant_factors(matrix):
    d, _, _ = smith_normal_form(matrix)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    return len(invariant_factors(matrix))


def det(matrix):
    """Bareiss fraction-free determinant."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_integer(matrix, rhs):
    """An integer ``x`` with ``matrix @ x == rhs``, or ``None`` if none exists."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    d, u, v = smith_normal_form(matrix)
    c = matvec(u, rhs)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if c[i] != 0:
                return None
            continue
        if c[i] % di:
            return None
        y[i] = c[i] // di
    return matvec(v, y)


def integer_kernel(matrix, ncols=None):
    """A Z-basis (list of vectors) of ``{x in Z^n : matrix @ x == 0}``."""
    if not matrix:
        return [list(row) for row in identity(ncols or 0)]
    n = len(matrix[0])
    d, _, v = smith_normal_form(matrix)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    return [[v[i][j] for i in range(n)] for j in range(r, n)]

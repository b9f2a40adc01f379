"""Small dense linear algebra over the prime field F_p.

Matrices are lists of lists of Python ints; sizes here are bounded by the
number of conjugacy classes, so clarity wins over speed.
"""

from __future__ import annotations

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    phi = p - 1
    factors = prime_factors(phi)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def nullspace(A: list[list[int]], p: int) -> list[list[int]]:
    """Basis (as column vectors) of {x : A x = 0} over F_p."""
    rows = [list(r) for r in A]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(v)
    return basis


def column_echelon(B: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Column-reduce B (n x k, given as list of k columns) so that B[pivots] = I.

    Returns the reduced columns and the pivot row of each column.
    """
    cols = [list(c) for c in B]
    n = len(cols[0])
    pivots: list[int] = []
    for j in range(len(cols)):
        row = next(i for i in range(n) if i not in pivots and cols[j][i] % p)
        inv = pow(cols[j][row], p - 2, p)
        cols[j] = [(v * inv) % p for v in cols[j]]
        for k in range(len(cols)):
            if k != j and cols[k][row] % p:
                f = cols[k][row]
                cols[k] = [(a - f * b) % p for a, b in zip(cols[k], cols[j])]
        pivots.append(row)
    return cols, pivots


def charpoly(A: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial det(xI - A) over F_p, lowest degree first.

    Reduces to upper Hessenberg form by similarity, then runs the standard
    three-term recurrence.
    """
    n = len(A)
    H = [[v % p for v in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(H[m][m - 1], p - 2, p)
        for i in range(m + 1, n):
            u = (H[i][m - 1] * inv) % p
            if u:
                H[i] = [(a - u * b) % p for a, b in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        # (x - h_kk) * p_{k-1}
        prev = polys[k - 1]
        cur = [0] + prev
        h = H[k - 1][k - 1]
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - h * c) % p
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = (prod * H[i][i - 1]) % p
            coef = (prod * H[i - 1][k - 1]) % p
            if coef:
                for j, c in enumerate(polys[i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def roots(poly: list[int], p: int) -> list[int]:
    """All roots of poly in F_p, by exhaustive evaluation."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.nonzero(acc == 0)[0]]


def matmul(A: list[list[int]], B: list[list[int]], p: int) -> list[list[int]]:
    return (np.array(A, dtype=np.int64) @ np.array(B, dtype=np.int64) % p).tolist()

"""Exact linear algebra over the integers for linking matrices.

``signature_symmetric`` runs symmetric Gaussian elimination with exact
rational arithmetic: pivot on a nonzero diagonal entry when one exists;
when the remaining diagonal is all zero but off-diagonal entries survive,
a hyperbolic 2x2 block is split off, contributing one +1 and one -1.
Zero eigenvalues contribute nothing.

``smith_divisors`` is the textbook Smith normal form reduction, returning
the full diagonal (including units and zeros) with the divisibility chain
enforced.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def signature_symmetric(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    for row in matrix:
        if len(row) != n:
            raise ValueError("matrix must be square")
    a = {
        (i, j): Fraction(matrix[i][j])
        for i in range(n)
        for j in range(n)
    }
    for i in range(n):
        for j in range(n):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("matrix must be symmetric")

    active = list(range(n))
    sig = 0
    while active:
        pivot = None
        best = Fraction(0)
        for k in active:
            d = a[(k, k)]
            if d != 0 and abs(d) > abs(best):
                pivot, best = k, d
        if pivot is not None:
            d = a[(pivot, pivot)]
            sig += 1 if d > 0 else -1
            rest = [k for k in active if k != pivot]
            col = {k: a[(k, pivot)] for k in rest}
            for i in rest:
                if col[i] == 0:
                    continue
                for j in rest:
                    if col[j] != 0:
                        a[(i, j)] -= col[i] * col[j] / d
            active = rest
            continue
        # Whole remaining diagonal is zero: look for a hyperbolic pair.
        off = None
        for ii, k in enumerate(active):
            for l in active[ii + 1 :]:
                if a[(k, l)] != 0:
                    off = (k, l)
                    break
            if off:
                break
        if off is None:
            break  # remaining block is identically zero
        k, l = off
        v = a[(k, l)]
        rest = [m for m in active if m not in (k, l)]
        colk = {m: a[(m, k)] for m in rest}
        coll = {m: a[(m, l)] for m in rest}
        for i in rest:
            for j in rest:
                corr = (colk[i] * coll[j] + coll[i] * colk[j]) / v
                if corr != 0:
                    a[(i, j)] -= corr
        active = rest  # +1 and -1 cancel; signature unchanged
    return sig


def smith_divisors(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (units and zeros included).

    Standard reduction: clear the pivot row and column by Euclidean steps,
    swapping a nonzero remainder into the pivot slot (which strictly
    shrinks it, so the loop terminates), then repair divisibility of the
    remaining block by folding an offending row into the pivot row.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(map(int, row)) for row in matrix]
    for row in a:
        if len(row) != cols:
            raise ValueError("ragged matrix")

    divisors: list[int] = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    pivot, best = (i, j), v
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]

        while True:
            restart = False
            for i in range(t + 1, rows):
                if a[i][t] == 0:
                    continue
                q = a[i][t] // a[t][t]
                if q:
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    restart = True
                    break
            if restart:
                continue
            for j in range(t + 1, cols):
                if a[t][j] == 0:
                    continue
                q = a[t][j] // a[t][t]
                if q:
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    restart = True
                    break
            if restart:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(t, cols):
                a[t][j] += a[offender][j]
        divisors.append(abs(a[t][t]))
        t += 1

    divisors += [0] * (min(rows, cols) - len(divisors))
    return divisors


def random_unimodular(rng, n: int, steps: int = 12) -> list[list[int]]:
    """A random product of elementary integer matrices (determinant +-1)."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return m
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice([-2, -1, 1, 2])
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif kind == 1 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 2:
            m[i] = [-x for x in m[i]]
    return m


def congruent(matrix: Sequence[Sequence[int]], u: Sequence[Sequence[int]]) -> list[list[int]]:
    """u * matrix * u^T with integer arithmetic."""
    n = len(matrix)
    um = [
        [sum(u[i][k] * matrix[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return [
        [sum(um[i][k] * u[j][k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def gcd_list(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g

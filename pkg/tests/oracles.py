"""Independent reference computations the test suite checks the library
against.  Nothing here shares code with the package: different pivot
strategies, different elimination orders, brute force where affordable.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def naive_smith_diagonal(rows) -> list[int]:
    """Diagonal of the Smith normal form by plain row/column reduction.

    First-nonzero pivot, remainder swaps until the pivot divides its row
    and column, then the usual divisibility fix-up by row addition.  No
    transform tracking, no pivot-size heuristics.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    k = 0
    while k < min(m, n):
        pivot = next(
            ((i, j) for i in range(k, m) for j in range(k, n) if a[i][j] != 0),
            None,
        )
        if pivot is None:
            break
        i, j = pivot
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        while True:
            p = a[k][k]
            bumped = False
            for i in range(k + 1, m):
                if a[i][k] % p:
                    q = a[i][k] // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                    a[k], a[i] = a[i], a[k]
                    bumped = True
                    break
            if bumped:
                continue
            for j in range(k + 1, n):
                if a[k][j] % p:
                    q = a[k][j] // p
                    for row in a:
                        row[j] -= q * row[k]
                    for row in a:
                        row[k], row[j] = row[j], row[k]
                    bumped = True
                    break
            if bumped:
                continue
            for i in range(k + 1, m):
                q = a[i][k] // p
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            for j in range(k + 1, n):
                q = a[k][j] // p
                for row in a:
                    row[j] -= q * row[k]
            offender = next(
                (i for i in range(k + 1, m) if any(a[i][j] % p for j in range(k + 1, n))),
                None,
            )
            if offender is None:
                break
            a[k] = [x + y for x, y in zip(a[k], a[offender])]
        k += 1
    diag = [abs(a[i][i]) for i in range(min(m, n))]
    return diag


def _det(rows) -> int:
    """Cofactor-expansion determinant; fine for the tiny minors used here."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * x * _det(minor)
    return total


def determinantal_divisor_diagonal(rows) -> list[int]:
    """SNF diagonal via gcds of k x k minors (only sane for small sizes)."""
    import math

    m = len(rows)
    n = len(rows[0]) if m else 0
    size = min(m, n)
    diag = []
    prev = 1
    for k in range(1, size + 1):
        g = 0
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                g = math.gcd(g, _det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            diag.extend([0] * (size - len(diag)))
            return diag
        diag.append(g // prev)
        prev = g
    return diag


def jacobi_signature(rows) -> int:
    """Signature from signs of leading principal minors.

    Only valid when every leading principal minor is nonzero; raises
    otherwise so a test cannot silently use it out of range.
    """
    n = len(rows)
    minors = [Fraction(1)]
    for k in range(1, n + 1):
        d = _det([r[:k] for r in rows[:k]])
        if d == 0:
            raise ValueError("leading principal minor vanishes; oracle not applicable")
        minors.append(Fraction(d))
    sig = 0
    for prev, cur in zip(minors, minors[1:]):
        sig += 1 if (cur / prev) > 0 else -1
    return sig


def brute_force_odd_square(rows, radius: int = 2) -> bool:
    """Search all vectors with entries in [-radius, radius] for odd v^T G v."""
    n = len(rows)
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        total = sum(v[i] * rows[i][j] * v[j] for i in range(n) for j in range(n))
        if total % 2:
            return True
    return False

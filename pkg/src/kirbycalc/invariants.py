"""Exact integral invariants of the diagram's 2-skeleton.

The boundary matrix pairs dots against 2-handles by abelianized word
exponents.  Smith normal form over the integers gives H1 (cokernel) and
an integer basis of ker d2; restricting the Gram matrix (framings on the
diagonal, linkings off it) to that kernel yields the intersection form,
whose rank and signature come from exact rational congruence
diagonalization.  Everything is arbitrary-precision integer or Fraction
arithmetic; no floats.

3- and 4-handles never enter these computations; a diagram with 3-handles
only raises `three_handle_flag` in the summary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import FreeWord, HandleDiagram, exponent_vector, reduce_word


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit shape (rows may be zero)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("empty matrix needs an explicit column count")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.entries[rc[0]][rc[1]]

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [tuple(other.entries[i][j] for i in range(other.rows)) for j in range(other.cols)]
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, rows)

    __matmul__ = mul

    def transpose(self) -> "IntMatrix":
        entries = tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols))
        return IntMatrix(self.cols, self.rows, entries)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Exact Smith normal form: returns (D, U, V) with U @ m @ V == D.

    U and V are unimodular, D is diagonal with nonnegative entries in a
    divisibility chain d1 | d2 | ... .  Pivots are chosen as the
    smallest-absolute-value nonzero entry of the trailing submatrix,
    ties broken by position.
    """
    nr, nc = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_add(dst: int, src: int, q: int) -> None:
        ad, asrc = a[dst], a[src]
        for j in range(nc):
            ad[j] += q * asrc[j]
        ud, usrc = u[dst], u[src]
        for j in range(nr):
            ud[j] += q * usrc[j]

    def col_add(dst: int, src: int, q: int) -> None:
        for i in range(nr):
            a[i][dst] += q * a[i][src]
        for i in range(nc):
            v[i][dst] += q * v[i][src]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(k: int):
        piv = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = a[i][j]
                if x != 0 and (piv is None or abs(x) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        return piv

    k = 0
    mn = min(nr, nc)
    while k < mn:
        piv = find_pivot(k)
        if piv is None:
            break
        while True:
            i0, j0 = piv
            if i0 != k:
                row_swap(k, i0)
            if j0 != k:
                col_swap(k, j0)
            if a[k][k] < 0:
                row_negate(k)
            p = a[k][k]
            dirty = False
            for i in range(k + 1, nr):
                if a[i][k]:
                    row_add(i, k, -(a[i][k] // p))
                    if a[i][k]:
                        dirty = True
            for j in range(k + 1, nc):
                if a[k][j]:
                    col_add(j, k, -(a[k][j] // p))
                    if a[k][j]:
                        dirty = True
            if not dirty:
                bad = None
                for i in range(k + 1, nr):
                    for j in range(k + 1, nc):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    k += 1
                    break
                # pull a non-divisible row up so the next pivot divides it
                row_add(k, bad, 1)
            piv = find_pivot(k)
    D = IntMatrix(nr, nc, tuple(tuple(row) for row in a))
    U = IntMatrix(nr, nr, tuple(tuple(row) for row in u))
    V = IntMatrix(nc, nc, tuple(tuple(row) for row in v))
    return D, U, V


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form, length min(rows, cols), zeros included."""
    D, _, _ = smith_normal_form(m)
    return tuple(D[i, i] for i in range(min(m.rows, m.cols)))


def boundary_matrix(d: HandleDiagram) -> IntMatrix:
    """d2: rows indexed by dots, columns by 2-handles, entries the signed
    letter counts of each attaching word."""
    cols = [exponent_vector(h.word, d.dots) for h in d.handles]
    entries = tuple(tuple(col[i] for col in cols) for i in range(len(d.dots)))
    return IntMatrix(len(d.dots), len(d.handles), entries)


def homology_summary(d: HandleDiagram) -> tuple[tuple[int, ...], int]:
    """(H1 invariant factors, rank of H2 of the 2-skeleton).

    H1 is the cokernel of d2: nonunit torsion factors in divisibility
    order followed by one 0 per free factor.  h2 is the rational nullity
    of d2.
    """
    m = boundary_matrix(d)
    diag = invariant_factors(m)
    rank = sum(1 for x in diag if x != 0)
    torsion = tuple(x for x in diag if x not in (0, 1))
    h1 = torsion + (0,) * (m.rows - rank)
    return h1, m.cols - rank


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Integer basis of ker(m) as columns, via the Smith transform."""
    D, _, V = smith_normal_form(m)
    mn = min(m.rows, m.cols)
    idx = [j for j in range(m.cols) if j >= mn or D[j, j] == 0]
    entries = tuple(tuple(V[i, j] for j in idx) for i in range(m.cols))
    return IntMatrix(m.cols, len(idx), entries)


def full_gram(d: HandleDiagram) -> IntMatrix:
    """Handles-by-handles Gram matrix: framings on the diagonal, linking
    numbers off it."""
    ids = d.handle_ids()
    by_id = {h.id: h for h in d.handles}
    entries = tuple(
        tuple(by_id[i].framing if i == j else d.link(i, j) for j in ids) for i in ids
    )
    return IntMatrix(len(ids), len(ids), entries)


def congruence_diagonalize(entries) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Symmetric Gaussian elimination over Q: returns (diagonal, P) with
    P^T G P equal to the diagonal matrix, exactly.

    Zero diagonal pivots are produced by folding a nonzero off-diagonal
    pair into the diagonal (row+col addition) before eliminating.
    """
    n = len(entries)
    a = [[Fraction(x) for x in row] for row in entries]
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add(dst: int, src: int, c: Fraction) -> None:
        for r in range(n):
            a[r][dst] += c * a[r][src]
        for r in range(n):
            a[dst][r] += c * a[src][r]
        for r in range(n):
            p[r][dst] += c * p[r][src]

    def swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        a[i], a[j] = a[j], a[i]
        for row in p:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        if a[k][k] == 0:
            pivot = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if pivot is not None:
                swap(k, pivot)
            else:
                pair = next(
                    ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                    None,
                )
                if pair is None:
                    break
                i, j = pair
                add(i, j, Fraction(1))
                if i != k:
                    swap(k, i)
        piv = a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                add(i, k, -a[i][k] / piv)
    return [a[i][i] for i in range(n)], p


@dataclass(frozen=True)
class FormData:
    form_rank: int
    signature: int
    parity: str
    gram_torsion: tuple[int, ...]


def restricted_gram(d: HandleDiagram) -> IntMatrix:
    """Gram matrix restricted to an integer basis of ker d2."""
    b = kernel_basis(boundary_matrix(d))
    return b.transpose() @ full_gram(d) @ b


def intersection_form(d: HandleDiagram) -> FormData:
    g = restricted_gram(d)
    diag, _ = congruence_diagonalize(g.entries)
    rank = sum(1 for x in diag if x != 0)
    signature = sum(1 if x > 0 else -1 for x in diag if x != 0)
    parity = "odd" if any(g[i, i] % 2 for i in range(g.rows)) else "even"
    return FormData(rank, signature, parity, invariant_factors(g))


def has_odd_square_class(d: HandleDiagram) -> bool:
    """True iff some H2 class of the 2-skeleton has odd self-intersection.

    Since Q(x, x) = sum x_i^2 G_ii (mod 2), this happens exactly when the
    restricted Gram matrix has an odd diagonal entry.
    """
    return intersection_form(d).parity == "odd"


def is_free_trivial(word) -> bool:
    """True iff the word reduces to the empty word.

    Accepts a :class:`FreeWord` or a raw letter sequence.
    """
    if isinstance(word, FreeWord):
        return word.is_trivial
    return reduce_word(word).is_trivial


@dataclass(frozen=True)
class InvariantSummary:
    h1_invariant_factors: tuple[int, ...]
    h2_rank: int
    form_rank: int
    signature: int
    parity: str
    gram_torsion: tuple[int, ...]
    three_handle_flag: bool

    def render(self) -> str:
        def ints(xs: tuple[int, ...]) -> str:
            return " ".join(str(x) for x in xs) if xs else "none"

        lines = [
            f"h1_invariant_factors: {ints(self.h1_invariant_factors)}",
            f"h2_rank: {self.h2_rank}",
            f"form_rank: {self.form_rank}",
            f"signature: {self.signature}",
            f"parity: {self.parity}",
            f"gram_torsion: {ints(self.gram_torsion)}",
            f"three_handle_flag: {'true' if self.three_handle_flag else 'false'}",
        ]
        return "\n".join(lines) + "\n"


def invariant_summary(d: HandleDiagram) -> InvariantSummary:
    h1, h2 = homology_summary(d)
    form = intersection_form(d)
    return InvariantSummary(
        h1_invariant_factors=h1,
        h2_rank=h2,
        form_rank=form.form_rank,
        signature=form.signature,
        parity=form.parity,
        gram_torsion=form.gram_torsion,
        three_handle_flag=d.n3 > 0,
    )

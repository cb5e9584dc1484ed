"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`, so
there is no overflow and no rounding anywhere.  Matrices are plain
row-major lists of lists unless wrapped in :class:`SymIntMat`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]


class SingularMatrixError(ArithmeticError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise ValueError("dimension mismatch in matmul")
    cols = len(B[0]) if B else 0
    Bt = [[B[k][j] for k in range(inner)] for j in range(cols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)] if A else []


@dataclass(frozen=True)
class SymIntMat:
    """Dense symmetric integer matrix with optional generator labels."""

    entries: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        n = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            for j in range(i):
                if row[j] != self.entries[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        if self.labels is not None:
            if len(self.labels) != n:
                raise ValueError("need exactly one label per generator")
            if len(set(self.labels)) != n:
                raise ValueError("labels must be unique")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], labels: Iterable[str] | None = None) -> "SymIntMat":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(entries, None if labels is None else tuple(labels))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key):
        i, j = key
        return self.entries[self.index(i)][self.index(j)]

    def index(self, key: int | str) -> int:
        if isinstance(key, str):
            if self.labels is None:
                raise KeyError(f"matrix has no labels; cannot look up {key!r}")
            return self.labels.index(key)
        if not 0 <= key < self.n:
            raise IndexError(f"index {key} out of range for {self.n}x{self.n} matrix")
        return key

    def rows(self) -> Matrix:
        return [list(row) for row in self.entries]

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(self.n)]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)


def _as_rows(M) -> Matrix:
    if isinstance(M, SymIntMat):
        return M.rows()
    return [list(row) for row in M]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(M) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` in Smith normal form.

    U and V are unimodular.  The diagonal of D is nonnegative and each entry
    divides the next.  Pivots are chosen as the nonzero entry of smallest
    absolute value, scanning row-major, so U and V are reproducible.
    """
    A = _as_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row[dst] += c * row[src]
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])

        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))

            # a smaller remainder left behind becomes the next pivot
            best = None
            for i in range(t + 1, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), t, j)
            if best is not None:
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue

            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)

        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]

    return A, U, V


def invariant_factors(M) -> list[int]:
    D, _, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------

def _bareiss(A: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int], int]:
    """In-place Bareiss forward elimination with row pivoting.

    Only the first ``ncols`` columns are used for pivots.  Returns the
    reduced matrix, the pivot columns and the sign of the row permutation.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    ncols = n if ncols is None else ncols
    prev = 1
    sign = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        k = next((i for i in range(r, m) if A[i][c]), None)
        if k is None:
            continue
        if k != r:
            A[r], A[k] = A[k], A[r]
            sign = -sign
        p = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            A[i] = [(p * A[i][j] - a * A[r][j]) // prev for j in range(n)]
        pivots.append(c)
        prev = p
        r += 1
    return A, pivots, sign


def rank_rational(M) -> int:
    """Rank over the rationals."""
    A = _as_rows(M)
    if not A or not A[0]:
        return 0
    _, pivots, _ = _bareiss(A)
    return len(pivots)


def determinant(M) -> int:
    A = _as_rows(M)
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    A, pivots, sign = _bareiss(A)
    if len(pivots) < n:
        return 0
    return sign * A[n - 1][n - 1]


def _clear_denominators(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    return [int(Fraction(x) * den) for x in row]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve the square system ``A x = b`` exactly.

    Entries may be ints or Fractions.  Elimination is fraction-free; the only
    divisions happen in back substitution.
    """
    n = len(A)
    if len(b) != n or any(len(row) != n for row in A):
        raise ValueError("solve_rational needs a square system")
    aug = [_clear_denominators(list(A[i]) + [b[i]]) for i in range(n)]
    aug, pivots, _ = _bareiss(aug, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError("system is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(aug[i][n]) - sum(aug[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / aug[i][i]
    return x


# ---------------------------------------------------------------------------
# Homology and definiteness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyProfile:
    b1: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = ["Z"] * self.b1 + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology_from_presentation(M) -> HomologyProfile:
    """Abelian group presented by the square integer matrix ``M``."""
    A = _as_rows(M)
    n = len(A)
    factors = invariant_factors(A) if n else []
    nonzero = [d for d in factors if d]
    return HomologyProfile(b1=n - len(nonzero), torsion=tuple(d for d in nonzero if d > 1))


class Definiteness(str, enum.Enum):
    POS_DEF = "PosDef"
    POS_SEMIDEF = "PosSemiDef"
    NEG_DEF = "NegDef"
    NEG_SEMIDEF = "NegSemiDef"
    INDEFINITE = "Indefinite"
    ZERO = "Zero"

    def __str__(self) -> str:
        return self.value


def pivot_signature(Q) -> tuple[int, int, int]:
    """Counts of positive, negative and zero pivots of a symmetric matrix.

    Symmetric Gaussian elimination: a congruence, so by Sylvester's law the
    counts are the inertia of Q.  When every remaining diagonal entry is zero
    but some off-diagonal entry ``a[i][j]`` is not, row/column ``j`` is added
    to ``i``, which makes the diagonal entry ``2 a[i][j]`` nonzero.
    """
    A = [[Fraction(x) for x in row] for row in _as_rows(Q)]
    n = len(A)
    for i in range(n):
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("pivot_signature needs a symmetric matrix")
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        col = [A[k][piv] for k in range(n)]
        for j in active:
            if col[j]:
                f = col[j] / d
                for k in active:
                    A[j][k] -= f * col[k]
    return pos, neg, len(active)


def definiteness(Q) -> Definiteness:
    pos, neg, zero = pivot_signature(Q)
    n = pos + neg + zero
    if pos == 0 and neg == 0:
        return Definiteness.ZERO
    if neg == 0:
        return Definiteness.POS_DEF if pos == n else Definiteness.POS_SEMIDEF
    if pos == 0:
        return Definiteness.NEG_DEF if neg == n else Definiteness.NEG_SEMIDEF
    return Definiteness.INDEFINITE


def principal_submatrix(Q: SymIntMat, index_set: Iterable[int | str]) -> SymIntMat:
    """Restrict rows and columns to ``index_set`` (positions or labels), keeping its order."""
    idx = [Q.index(k) for k in index_set]
    rows = [[Q.entries[i][j] for j in idx] for i in idx]
    labels = None if Q.labels is None else [Q.labels[i] for i in idx]
    return SymIntMat.from_rows(rows, labels)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

def format_matrix(M, labels: Sequence[str] | None = None) -> str:
    """Serialize as ``# label:`` lines, then the dimension, then the rows."""
    if isinstance(M, SymIntMat) and labels is None:
        labels = M.labels
    rows = _as_rows(M)
    lines = [f"# label: {name}" for name in labels] if labels else []
    lines.append(str(len(rows)))
    lines.extend(" ".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> tuple[Matrix, list[str] | None]:
    labels: list[str] = []
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if not body and line[1:].strip().startswith("label:"):
                labels.append(line[1:].strip()[len("label:"):].strip())
            continue
        body.append(line)
    if not body:
        raise ValueError("empty matrix file")
    n = int(body[0])
    if len(body) - 1 != n:
        raise ValueError(f"expected {n} matrix rows, found {len(body) - 1}")
    rows = [[int(tok) for tok in line.split()] for line in body[1:]]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {i + 1} has {len(row)} entries, expected {n}")
    if labels and len(labels) != n:
        raise ValueError(f"{len(labels)} labels for a {n}x{n} matrix")
    return rows, labels or None


def read_matrix(path) -> tuple[Matrix, list[str] | None]:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def read_symmetric(path) -> SymIntMat:
    rows, labels = read_matrix(path)
    return SymIntMat.from_rows(rows, labels)


def write_matrix(path, M, labels: Sequence[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(M, labels))

"""Exact integer matrices, Smith normal form with unimodular transforms,
and kernel enumeration over Z/mZ.

Everything here uses Python's arbitrary-precision integers; intermediate
entries during diagonalization routinely leave machine range.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable dense integer matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        if any(len(row) != self.cols for row in self.entries):
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        r = len(data)
        c = len(data[0]) if r else (0 if cols is None else cols)
        return cls(r, c, data)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, pos: tuple[int, int]) -> int:
        i, j = pos
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = tuple(zip(*other.entries)) if other.entries else tuple(() for _ in range(other.cols))
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries
        )
        if not data:
            return IntegerMatrix(self.rows, other.cols, ())
        return IntegerMatrix(self.rows, other.cols, data)

    def transpose(self) -> "IntegerMatrix":
        if self.rows == 0:
            return IntegerMatrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return IntegerMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

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
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def submatrix(self, row_idx, col_idx) -> "IntegerMatrix":
        rows = tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx)
        return IntegerMatrix(len(row_idx), len(col_idx), rows)

    def to_json_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(r) for r in self.entries]}

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


@dataclass(frozen=True)
class SmithDecomposition:
    """Diagonal form s together with unimodular r, c such that s = r @ m @ c."""

    s: IntegerMatrix
    r: IntegerMatrix
    c: IntegerMatrix
    invariant_factors: tuple[int, ...]

    @property
    def diagonal_length(self) -> int:
        return min(self.s.rows, self.s.cols)

    def padded_factors(self) -> tuple[int, ...]:
        """Invariant factors extended with zeros to one entry per column.

        Columns beyond the diagonal carry no constraint, which is the same
        as a zero diagonal entry when solving s @ y = 0.
        """
        pad = self.s.cols - len(self.invariant_factors)
        return self.invariant_factors + (0,) * pad


class _Worker:
    """Mutable elimination state; rt and ct accumulate the row/column operations."""

    def __init__(self, m: IntegerMatrix):
        self.nr = m.rows
        self.nc = m.cols
        self.a = [list(row) for row in m.entries]
        self.rt = [[int(i == j) for j in range(self.nr)] for i in range(self.nr)]
        self.ct = [[int(i == j) for j in range(self.nc)] for i in range(self.nc)]

    def row_swap(self, i, j):
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.rt[i], self.rt[j] = self.rt[j], self.rt[i]

    def col_swap(self, i, j):
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        for row in self.ct:
            row[i], row[j] = row[j], row[i]

    def row_negate(self, i):
        self.a[i] = [-x for x in self.a[i]]
        self.rt[i] = [-x for x in self.rt[i]]

    def row_sub(self, i, j, q):
        """row_i -= q * row_j"""
        self.a[i] = [x - q * y for x, y in zip(self.a[i], self.a[j])]
        self.rt[i] = [x - q * y for x, y in zip(self.rt[i], self.rt[j])]

    def col_sub(self, i, j, q):
        """col_i -= q * col_j"""
        for row in self.a:
            row[i] -= q * row[j]
        for row in self.ct:
            row[i] -= q * row[j]

    def row_add(self, i, j):
        """row_i += row_j"""
        self.a[i] = [x + y for x, y in zip(self.a[i], self.a[j])]
        self.rt[i] = [x + y for x, y in zip(self.rt[i], self.rt[j])]


def _find_pivot(a, s, nr, nc):
    """Smallest nonzero absolute value in the block [s:, s:], ties by lowest (row, col)."""
    best = None
    best_val = None
    for i in range(s, nr):
        row = a[i]
        for j in range(s, nc):
            v = abs(row[j])
            if v and (best_val is None or v < best_val):
                best, best_val = (i, j), v
                if v == 1:
                    return best
    return best


def smith_normal_form(m: IntegerMatrix) -> SmithDecomposition:
    """Compute the Smith normal form s = r @ m @ c.

    The result is deterministic for a given input: pivots are chosen by
    smallest nonzero absolute value with (row, col) tie-breaking, diagonal
    entries come out non-negative and each divides the next.
    """
    w = _Worker(m)
    nr, nc = w.nr, w.nc
    lim = min(nr, nc)
    s = 0
    while s < lim:
        piv = _find_pivot(w.a, s, nr, nc)
        if piv is None:
            break
        i, j = piv
        if i != s:
            w.row_swap(s, i)
        if j != s:
            w.col_swap(s, j)
        if w.a[s][s] < 0:
            w.row_negate(s)
        while True:
            _eliminate(w, s)
            bad = _nondivisible(w, s)
            if bad is None:
                break
            w.row_add(s, bad)  # drags the offending row into row s; redo elimination
        s += 1
    smat = IntegerMatrix.from_rows([tuple(row) for row in w.a], cols=nc) if nr else IntegerMatrix(0, nc, ())
    rmat = IntegerMatrix.from_rows([tuple(row) for row in w.rt], cols=nr) if nr else IntegerMatrix(0, 0, ())
    cmat = IntegerMatrix.from_rows([tuple(row) for row in w.ct], cols=nc) if nc else IntegerMatrix(0, 0, ())
    factors = tuple(w.a[i][i] for i in range(lim))
    return SmithDecomposition(smat, rmat, cmat, factors)


def _eliminate(w: _Worker, s: int):
    """Clear row s and column s beyond the pivot, keeping the pivot positive."""
    while True:
        # clear the column; floor division leaves remainders in [0, pivot)
        for i in range(s + 1, w.nr):
            if w.a[i][s]:
                q = w.a[i][s] // w.a[s][s]
                if q:
                    w.row_sub(i, s, q)
        resid = [i for i in range(s + 1, w.nr) if w.a[i][s]]
        if resid:
            i = min(resid, key=lambda t: (w.a[t][s], t))
            w.row_swap(s, i)  # strictly smaller pivot; loop again
            continue
        for j in range(s + 1, w.nc):
            if w.a[s][j]:
                q = w.a[s][j] // w.a[s][s]
                if q:
                    w.col_sub(j, s, q)
        resid = [j for j in range(s + 1, w.nc) if w.a[s][j]]
        if resid:
            j = min(resid, key=lambda t: (w.a[s][t], t))
            w.col_swap(s, j)
            continue
        return


def _nondivisible(w: _Worker, s: int):
    """Row index of some entry in the trailing block not divisible by the pivot."""
    p = w.a[s][s]
    for i in range(s + 1, w.nr):
        row = w.a[i]
        for j in range(s + 1, w.nc):
            if row[j] % p:
                return i
    return None


def minor_gcd_factors(m: IntegerMatrix, max_dim: int = 6) -> tuple[int, ...]:
    """Invariant factors from gcds of k x k minors.

    d_1 * ... * d_k equals the gcd of all k x k minors, which gives an
    oracle for smith_normal_form that shares no code with it.  Exponential
    in the dimension, hence the size guard.
    """
    lim = min(m.rows, m.cols)
    if lim > max_dim:
        raise ValueError(f"minor oracle limited to min dimension {max_dim}")
    factors = []
    g_prev = 1
    for k in range(1, lim + 1):
        g = 0
        for rows in itertools.combinations(range(m.rows), k):
            for cols in itertools.combinations(range(m.cols), k):
                g = gcd(g, m.submatrix(rows, cols).det())
        if g == 0:
            factors.extend([0] * (lim - len(factors)))
            break
        factors.append(g // g_prev)
        g_prev = g
    return tuple(factors)


@dataclass(frozen=True)
class ModularKernel:
    """Solutions of m @ x = 0 over Z/modZ, parametrized through the Smith form.

    With s = r @ m @ c, the solutions are exactly x = c @ y (mod m) where
    each y_i runs over the multiples of step_i = mod // gcd(d_i, mod).
    Column positions beyond the diagonal behave like zero factors.
    """

    modulus: int
    steps: tuple[int, ...]
    sizes: tuple[int, ...]
    transform: IntegerMatrix

    def count(self) -> int:
        n = 1
        for size in self.sizes:
            n *= size
        return n

    def y_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(range(0, self.modulus, step)) for step in self.steps)

    def vectors(self):
        """Yield solution vectors x in lexicographic order of the free vector y."""
        m = self.modulus
        cols = self.transform.entries
        for y in itertools.product(*self.y_sets()):
            yield tuple(sum(row[j] * y[j] for j in range(len(y))) % m for row in cols)


def solve_mod(sd: SmithDecomposition, modulus: int) -> ModularKernel:
    """Describe the kernel of the decomposed matrix over Z/modulusZ."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    sizes = tuple(gcd(d, modulus) for d in sd.padded_factors())
    steps = tuple(modulus // g for g in sizes)
    return ModularKernel(modulus, steps, sizes, sd.c)

"""Coloring matrices and m-colorings of a diagram.

Each crossing contributes the equation
    under_in + under_out - 2 * over = 0
on the arc variables.  The Smith form of the resulting integer matrix
yields the link determinant, the mod-p nullity, and exact coloring counts
for any modulus; kernel enumeration produces the colorings themselves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import numpy as np

from .diagram import PlanarDiagram
from .linalg import IntegerMatrix, SmithDecomposition, smith_normal_form, solve_mod

ENUMERATION_BUDGET = 10 ** 6
BRUTE_FORCE_BUDGET = 10 ** 7
BRUTE_COUNT_BUDGET = 10 ** 8


class EnumerationBudgetError(RuntimeError):
    """The requested enumeration exceeds the configured budget."""


@dataclass(frozen=True)
class ColoringMatrix:
    """Integer coloring matrix: one row per crossing, one column per arc."""

    matrix: IntegerMatrix
    arcs: tuple[frozenset[int], ...]

    @property
    def arc_index(self) -> dict[frozenset, int]:
        return {arc: i for i, arc in enumerate(self.arcs)}


@dataclass(frozen=True, order=True)
class Coloring:
    """Assignment of residues mod `modulus` to arcs, indexed by arc column."""

    modulus: int
    values: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return len(set(self.values)) <= 1

    def n_colors(self) -> int:
        return len(set(self.values))

    def satisfies(self, d: PlanarDiagram) -> bool:
        m = self.modulus
        v = self.values
        return all((v[i] + v[k] - 2 * v[j]) % m == 0 for i, k, j in d.crossing_relations)

    def to_json_dict(self) -> dict:
        return {"modulus": self.modulus,
                "values": {str(i): v for i, v in enumerate(self.values)}}


@dataclass(frozen=True)
class ColoringProfile:
    """Invariant factors of a diagram's coloring matrix and what they imply."""

    invariant_factors: tuple[int, ...]
    determinant: int
    n_arcs: int
    smith: SmithDecomposition | None  # None only for the crossing-free unknot

    def nullity(self, p: int) -> int:
        if self.smith is None:
            if not is_odd_prime(p):
                raise ValueError(f"p must be an odd prime, got {p}")
            return 1
        return p_nullity(self.smith, p)

    def count(self, m: int) -> int:
        if self.smith is None:
            if m < 2:
                raise ValueError("modulus must be at least 2")
            return m
        return count_colorings(self.smith, m)


def coloring_matrix(d: PlanarDiagram) -> ColoringMatrix:
    """Coloring matrix of a diagram with at least one crossing.

    Column order follows the arc order of the diagram (sorted by smallest
    edge label), so the matrix is deterministic.  Coincident arcs at a
    crossing accumulate, e.g. a kink row may come out all zero.
    """
    if d.n_crossings == 0:
        raise ValueError("crossing-free diagram has no coloring matrix; "
                         "the unknot is handled out of band")
    n = d.n_arcs
    rows = []
    for i, k, j in d.crossing_relations:
        row = [0] * n
        row[i] += 1
        row[k] += 1
        row[j] -= 2
        rows.append(tuple(row))
    return ColoringMatrix(IntegerMatrix.from_rows(rows), d.arcs)


def profile(d: PlanarDiagram) -> ColoringProfile:
    """Smith-form summary of a diagram; the bare unknot gets the (0,) convention."""
    if d.n_crossings == 0:
        return ColoringProfile((0,), 1, 1, None)
    sd = smith_normal_form(coloring_matrix(d).matrix)
    return ColoringProfile(sd.invariant_factors, link_determinant(sd), d.n_arcs, sd)


def link_determinant(sd: SmithDecomposition) -> int:
    """Product of the nonzero invariant factors; zero when two or more vanish."""
    factors = sd.padded_factors()
    zeros = sum(1 for f in factors if f == 0)
    if zeros == 0:
        raise ValueError("no zero invariant factor: not a coloring matrix decomposition")
    if zeros >= 2:
        return 0
    det = 1
    for f in factors:
        if f:
            det *= f
    return det


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def p_nullity(sd: SmithDecomposition, p: int) -> int:
    """Number of invariant factors divisible by p (true zeros included)."""
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    return sum(1 for f in sd.padded_factors() if f % p == 0)


def count_colorings(sd: SmithDecomposition, m: int) -> int:
    """Exact number of m-colorings, trivial ones included.

    Every diagonal entry d contributes gcd(d, m) solutions for its kernel
    coordinate (gcd(0, m) = m), so the count is the product m^{zeros} *
    prod gcd(d, m) over the zero divisors, with units contributing 1.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    total = 1
    for f in sd.padded_factors():
        total *= gcd(f, m)
    return total


def enumerate_colorings(d: PlanarDiagram, m: int, nontrivial_only: bool = False,
                        budget: int = ENUMERATION_BUDGET) -> list[Coloring]:
    """All m-colorings of the diagram in a deterministic order.

    The order is lexicographic in the kernel coordinates of the Smith
    form, so repeated runs (and parallel chunked runs) agree.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if d.n_crossings == 0:
        if nontrivial_only:
            return []
        return [Coloring(m, (v,)) for v in range(m)]
    sd = smith_normal_form(coloring_matrix(d).matrix)
    total = count_colorings(sd, m)
    if total > budget:
        raise EnumerationBudgetError(f"{total} colorings exceed budget {budget}")
    kernel = solve_mod(sd, m)
    out = [Coloring(m, x) for x in kernel.vectors()]
    if nontrivial_only:
        out = [c for c in out if not c.is_trivial]
    return out


def brute_force_colorings(d: PlanarDiagram, m: int,
                          budget: int = BRUTE_FORCE_BUDGET) -> list[Coloring]:
    """Oracle: test every one of the m^arcs assignments against the equations."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if m ** d.n_arcs > budget:
        raise EnumerationBudgetError(f"{m}^{d.n_arcs} assignments exceed budget {budget}")
    rels = d.crossing_relations
    out = []
    for values in itertools.product(range(m), repeat=d.n_arcs):
        if all((values[i] + values[k] - 2 * values[j]) % m == 0 for i, k, j in rels):
            out.append(Coloring(m, values))
    return out


def brute_force_count(d: PlanarDiagram, m: int, budget: int = BRUTE_COUNT_BUDGET,
                      chunk: int = 1 << 20) -> int:
    """Oracle count over all m^arcs assignments, vectorized in chunks."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    n = d.n_arcs
    total = m ** n
    if total > budget:
        raise EnumerationBudgetError(f"{m}^{n} assignments exceed budget {budget}")
    rels = d.crossing_relations
    if not rels:
        return total
    count = 0
    powers = [m ** t for t in range(n)]
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = [(idx // powers[t]) % m for t in range(n)]
        ok = np.ones(idx.shape, dtype=bool)
        for i, k, j in rels:
            ok &= (digits[i] + digits[k] - 2 * digits[j]) % m == 0
        count += int(ok.sum())
    return count


def _rref_mod_p(matrix: IntegerMatrix, p: int):
    """Reduced row echelon form over Z/pZ; returns (pivot_cols, reduced_rows)."""
    rows = [[x % p for x in row] for row in matrix.entries]
    nc = matrix.cols
    pivots: list[int] = []
    r = 0
    for col in range(nc):
        sel = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots, rows[:r]


def generating_arcs(d: PlanarDiagram, p: int) -> frozenset[int]:
    """A set of arcs whose colors determine every p-coloring uniquely.

    Computed as the non-pivot columns of the coloring matrix reduced mod p;
    its size equals the p-nullity.
    """
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if d.n_crossings == 0:
        return frozenset({0})
    pivots, _ = _rref_mod_p(coloring_matrix(d).matrix, p)
    return frozenset(c for c in range(d.n_arcs) if c not in pivots)


def extend_coloring(d: PlanarDiagram, p: int, assignment: dict[int, int]) -> Coloring:
    """The unique p-coloring taking the given values on the generating arcs.

    `assignment` maps every generating arc (column index) to a residue.
    """
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if d.n_crossings == 0:
        if set(assignment) != {0}:
            raise ValueError("unknot has a single arc, index 0")
        return Coloring(p, (assignment[0] % p,))
    pivots, rows = _rref_mod_p(coloring_matrix(d).matrix, p)
    free = [c for c in range(d.n_arcs) if c not in pivots]
    if set(assignment) != set(free):
        raise ValueError(f"assignment must cover exactly the generating arcs {sorted(free)}")
    values = [0] * d.n_arcs
    for c in free:
        values[c] = assignment[c] % p
    for prow, pcol in zip(rows, pivots):
        acc = sum(prow[c] * values[c] for c in free)
        values[pcol] = (-acc) % p
    return Coloring(p, tuple(values))

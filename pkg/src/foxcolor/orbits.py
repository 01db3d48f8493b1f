"""Affine color symmetries and equivalence classes of colorings.

The permutations of Z_m compatible with the crossing operation
a * b = 2b - a are exactly the affine maps x -> lam*x + mu with lam a
unit; the inner subgroup is lam = +-1 (mu even when m is even).  Acting
arcwise on the non-trivial m-colorings of a diagram, the orbits are the
equivalence classes; for an odd prime p and nullity n the class counts
have closed forms, verified here against brute-force orbit partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coloring import (Coloring, ENUMERATION_BUDGET, enumerate_colorings,
                       is_odd_prime, profile)
from .diagram import PlanarDiagram, random_variants

AUT = "aut"
INN = "inn"
DEFAULT_SEED = 101


@dataclass(frozen=True, order=True)
class AffineMap:
    """x -> lam*x + mu on Z_modulus, with lam a unit."""

    modulus: int
    lam: int
    mu: int

    def __post_init__(self):
        m = self.modulus
        if m < 2:
            raise ValueError("modulus must be at least 2")
        if not (0 <= self.lam < m and 0 <= self.mu < m):
            raise ValueError("coefficients must be reduced mod modulus")
        if gcd(self.lam, m) != 1:
            raise ValueError(f"lambda={self.lam} is not a unit mod {m}")

    def __call__(self, x: int) -> int:
        return (self.lam * x + self.mu) % self.modulus

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other."""
        if self.modulus != other.modulus:
            raise ValueError("modulus mismatch")
        m = self.modulus
        return AffineMap(m, (self.lam * other.lam) % m, (self.lam * other.mu + self.mu) % m)

    def inverse(self) -> "AffineMap":
        m = self.modulus
        li = pow(self.lam, -1, m)
        return AffineMap(m, li, (-li * self.mu) % m)

    @property
    def is_identity(self) -> bool:
        return self.lam == 1 and self.mu == 0

    def as_permutation(self) -> tuple[int, ...]:
        return tuple(self(x) for x in range(self.modulus))


@dataclass(frozen=True)
class GroupSpec:
    """Full element list of the affine group or its inner subgroup on Z_m."""

    kind: str
    modulus: int
    elements: tuple[AffineMap, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


def build_group(kind: str, m: int) -> GroupSpec:
    """All affine maps (kind "aut") or the inner subgroup +-x + mu (kind "inn").

    Elements are listed with lambda ascending, mu ascending.  For even m
    the inner maps only admit even mu, giving a dihedral group of order m;
    for odd m every mu occurs and the order is 2m.
    """
    if m < 3:
        raise ValueError("groups are defined for modulus >= 3")
    kind = kind.lower()
    if kind == AUT:
        lams = [l for l in range(1, m) if gcd(l, m) == 1]
        mus = range(m)
    elif kind == INN:
        lams = [1, m - 1]
        mus = range(0, m, 2) if m % 2 == 0 else range(m)
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    elements = tuple(AffineMap(m, l, u) for l in lams for u in mus)
    return GroupSpec(kind, m, elements)


def apply_map(g: AffineMap, c: Coloring) -> Coloring:
    """Recolor every arc through g; colorings stay colorings."""
    if g.modulus != c.modulus:
        raise ValueError("map and coloring moduli differ")
    return Coloring(c.modulus, tuple(g(v) for v in c.values))


def apply_permutation_unchecked(d: PlanarDiagram, perm, c: Coloring):
    """Relabel colors through an arbitrary permutation of 0..m-1.

    Returns (values, ok): the relabeled arc assignment and whether it
    still satisfies every crossing equation.  Non-affine permutations
    generally break the equations; affine ones never do.
    """
    m = c.modulus
    perm = tuple(perm)
    if sorted(perm) != list(range(m)):
        raise ValueError(f"not a permutation of 0..{m - 1}")
    values = tuple(perm[v] for v in c.values)
    ok = Coloring(m, values).satisfies(d)
    return values, ok


@dataclass(frozen=True)
class Orbit:
    representative: Coloring
    size: int
    member_count_check: int


@dataclass(frozen=True)
class OrbitPartition:
    modulus: int
    kind: str
    orbits: tuple[Orbit, ...]
    class_count: int

    def sizes(self) -> tuple[int, ...]:
        return tuple(o.size for o in self.orbits)


def orbit_partition(colorings, group: GroupSpec) -> OrbitPartition:
    """Partition colorings into orbits under the group action.

    Expects the full set of non-trivial colorings for one diagram and
    modulus; a set not closed under the action means an upstream bug and
    raises.  Representatives are the lexicographically least members and
    orbits are listed in representative order.
    """
    colorings = list(colorings)
    for c in colorings:
        if c.modulus != group.modulus:
            raise ValueError("coloring modulus differs from group modulus")
    pool = set(colorings)
    if len(pool) != len(colorings):
        raise ValueError("duplicate colorings in input")
    orbits = []
    seen: set[Coloring] = set()
    for c in sorted(colorings):
        if c in seen:
            continue
        orbit = {apply_map(g, c) for g in group.elements}
        if not orbit <= pool:
            raise ValueError("input is not closed under the group action")
        seen |= orbit
        orbits.append(Orbit(min(orbit), len(orbit), sum(1 for x in colorings if x in orbit)))
    return OrbitPartition(group.modulus, group.kind, tuple(orbits), len(orbits))


def predicted_class_count(kind: str, p: int, n: int) -> int:
    """Closed-form class count for an odd prime p and nullity n >= 2.

    aut: (p^(n-1) - 1) / (p - 1)        orbits of size p(p-1)
    inn: (p^(n-1) - 1) / 2              orbits of size 2p
    """
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 2:
        raise ValueError(f"nullity must be at least 2, got {n}")
    kind = kind.lower()
    num = p ** (n - 1) - 1
    if kind == AUT:
        den = p - 1
    elif kind == INN:
        den = 2
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    q, rem = divmod(num, den)
    assert rem == 0
    return q


@dataclass(frozen=True)
class VerifyReport:
    """Brute-force class counts compared against the closed forms, plus
    the same counts on move-derived variants of the diagram."""

    label: str
    p: int
    nullity: int
    aut_classes: int
    inn_classes: int
    predicted_aut: int
    predicted_inn: int
    aut_orbit_sizes: tuple[int, ...]
    inn_orbit_sizes: tuple[int, ...]
    variants_checked: int
    invariant_across_moves: bool
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "knot": self.label,
            "p": self.p,
            "nullity": self.nullity,
            "aut_classes": self.aut_classes,
            "inn_classes": self.inn_classes,
            "predicted_aut": self.predicted_aut,
            "predicted_inn": self.predicted_inn,
            "orbit_sizes": list(self.aut_orbit_sizes),
            "inn_orbit_sizes": list(self.inn_orbit_sizes),
            "invariant_across_moves": self.invariant_across_moves,
            "failures": list(self.failures),
        }


def _class_counts(d: PlanarDiagram, p: int, budget: int):
    nontrivial = enumerate_colorings(d, p, nontrivial_only=True, budget=budget)
    aut = orbit_partition(nontrivial, build_group(AUT, p))
    inn = orbit_partition(nontrivial, build_group(INN, p))
    return nontrivial, aut, inn


def verify_counts(d: PlanarDiagram, p: int, *, label: str = "diagram",
                  variants: int = 3, moves_per_variant: int = 3,
                  seed: int = DEFAULT_SEED, budget: int = ENUMERATION_BUDGET) -> VerifyReport:
    """Check predicted class counts against brute-force orbits, and their
    stability across seeded R1/R2 variants of the diagram.

    Diagrams without non-trivial p-colorings (nullity < 2) verify
    vacuously with zero classes.  Every mismatch lands in `failures`.
    """
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    failures: list[str] = []
    n = profile(d).nullity(p)
    if n >= 2:
        pred_aut = predicted_class_count(AUT, p, n)
        pred_inn = predicted_class_count(INN, p, n)
    else:
        pred_aut = pred_inn = 0

    nontrivial, aut, inn = _class_counts(d, p, budget)
    expected_nontrivial = p ** n - p
    if len(nontrivial) != expected_nontrivial:
        failures.append(f"non-trivial count {len(nontrivial)} != p^n - p = {expected_nontrivial}")
    if aut.class_count != pred_aut:
        failures.append(f"aut classes {aut.class_count} != predicted {pred_aut}")
    if inn.class_count != pred_inn:
        failures.append(f"inn classes {inn.class_count} != predicted {pred_inn}")
    if any(s != p * (p - 1) for s in aut.sizes()):
        failures.append(f"aut orbit sizes {aut.sizes()} not all p(p-1) = {p * (p - 1)}")
    if any(s != 2 * p for s in inn.sizes()):
        failures.append(f"inn orbit sizes {inn.sizes()} not all 2p = {2 * p}")

    stable = True
    for vi, variant in enumerate(random_variants(d, variants, moves_per_variant, seed)):
        vn = profile(variant).nullity(p)
        _, vaut, vinn = _class_counts(variant, p, budget)
        if (vn, vaut.class_count, vinn.class_count) != (n, aut.class_count, inn.class_count):
            stable = False
            failures.append(
                f"variant {vi}: (nullity, aut, inn) = ({vn}, {vaut.class_count}, "
                f"{vinn.class_count}) != base ({n}, {aut.class_count}, {inn.class_count})")
    return VerifyReport(label, p, n, aut.class_count, inn.class_count, pred_aut, pred_inn,
                        aut.sizes(), inn.sizes(), variants, stable, tuple(failures))

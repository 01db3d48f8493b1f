import itertools
from math import gcd

import pytest

from foxcolor.coloring import Coloring, enumerate_colorings, is_odd_prime, profile
from foxcolor.diagram import build_diagram, catalog
from foxcolor.orbits import (AUT, INN, AffineMap, apply_map,
                             apply_permutation_unchecked, build_group,
                             orbit_partition, predicted_class_count,
                             verify_counts)

TREFOIL = build_diagram(catalog("3_1"))
FIGURE8 = build_diagram(catalog("4_1"))
KNOT940 = build_diagram(catalog("9_40"))


def phi(m):
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class TestAffineMap:
    def test_call(self):
        f = AffineMap(5, 2, 3)
        assert [f(x) for x in range(5)] == [3, 0, 2, 4, 1]

    def test_non_unit_rejected(self):
        with pytest.raises(ValueError):
            AffineMap(6, 2, 0)
        with pytest.raises(ValueError):
            AffineMap(6, 0, 1)

    def test_compose_then_apply(self):
        f = AffineMap(7, 3, 2)
        g = AffineMap(7, 5, 6)
        fg = f.compose(g)
        for x in range(7):
            assert fg(x) == f(g(x))

    def test_inverse(self):
        for m in (5, 6, 9):
            for f in build_group(AUT, m).elements:
                assert f.compose(f.inverse()).is_identity
                assert f.inverse().compose(f).is_identity

    def test_doubling_permutation_mod5(self):
        # x -> 2x is the permutation fixing 0 and cycling 1 -> 2 -> 4 -> 3
        f = AffineMap(5, 2, 0)
        assert f.as_permutation() == (0, 2, 4, 1, 3)


class TestBuildGroup:
    def test_sizes_at_5(self):
        assert build_group(AUT, 5).size == 20
        assert build_group(INN, 5).size == 10

    def test_inn_6_elements(self):
        g = build_group(INN, 6)
        assert g.size == 6
        assert [(f.lam, f.mu) for f in g.elements] == [
            (1, 0), (1, 2), (1, 4), (5, 0), (5, 2), (5, 4)]

    def test_closed_form_sizes(self):
        for m in range(3, 31):
            assert build_group(AUT, m).size == m * phi(m)
            assert build_group(INN, m).size == (m if m % 2 == 0 else 2 * m)

    def test_inn_subset_of_aut(self):
        for m in (3, 4, 7, 12):
            aut = set(build_group(AUT, m).elements)
            assert set(build_group(INN, m).elements) <= aut

    def test_small_modulus_rejected(self):
        with pytest.raises(ValueError):
            build_group(AUT, 2)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            build_group("sym", 5)

    def test_deterministic_order(self):
        g = build_group(AUT, 7)
        assert list(g.elements) == sorted(g.elements, key=lambda f: (f.lam, f.mu))


class TestGroupAxioms:
    @pytest.mark.parametrize("kind", [AUT, INN])
    def test_exhaustive_up_to_30(self, kind):
        for m in range(3, 31):
            g = build_group(kind, m)
            elems = set(g.elements)
            assert AffineMap(m, 1, 0) in elems
            for a in g.elements:
                assert a.inverse() in elems
                for b in g.elements:
                    assert a.compose(b) in elems


class TestAction:
    def test_identity_action(self):
        c = Coloring(3, (0, 1, 2))
        assert apply_map(AffineMap(3, 1, 0), c) == c

    def test_trivial_stays_trivial(self):
        shifted = apply_map(AffineMap(3, 1, 1), Coloring(3, (0, 0, 0)))
        assert shifted == Coloring(3, (1, 1, 1))

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            apply_map(AffineMap(5, 1, 0), Coloring(3, (0, 1, 2)))

    def test_colorings_stay_colorings(self):
        for d, p in ((TREFOIL, 3), (FIGURE8, 5), (KNOT940, 5)):
            colorings = enumerate_colorings(d, p)
            for g in build_group(AUT, p).elements:
                for c in colorings[:30]:
                    assert apply_map(g, c).satisfies(d)

    def test_action_is_homomorphism(self):
        colorings = enumerate_colorings(FIGURE8, 5)
        group = build_group(AUT, 5).elements
        for g1, g2 in itertools.islice(itertools.product(group, group), 60):
            for c in colorings[:5]:
                assert apply_map(g1.compose(g2), c) == apply_map(g1, apply_map(g2, c))

    def test_faithful(self):
        colorings = enumerate_colorings(TREFOIL, 3)
        for g in build_group(AUT, 3).elements:
            if g.is_identity:
                continue
            assert any(apply_map(g, c) != c for c in colorings)

    def test_affine_maps_preserve_color_count(self):
        for c in enumerate_colorings(KNOT940, 5, nontrivial_only=True)[:40]:
            for g in build_group(AUT, 5).elements:
                assert apply_map(g, c).n_colors() == c.n_colors()


class TestPermutationUnchecked:
    def test_identity(self):
        c = enumerate_colorings(FIGURE8, 5, nontrivial_only=True)[0]
        values, ok = apply_permutation_unchecked(FIGURE8, range(5), c)
        assert ok and values == c.values

    def test_affine_always_valid(self):
        c = enumerate_colorings(FIGURE8, 5, nontrivial_only=True)[0]
        for g in build_group(AUT, 5).elements:
            _, ok = apply_permutation_unchecked(FIGURE8, g.as_permutation(), c)
            assert ok

    def test_non_affine_breaks_940(self):
        from foxcolor.coloring import extend_coloring, generating_arcs
        free = sorted(generating_arcs(KNOT940, 5))
        c = extend_coloring(KNOT940, 5, dict(zip(free, (0, 1, 2))))
        # the permutation swapping 0,1 and cycling 2 -> 3 -> 4
        values, ok = apply_permutation_unchecked(KNOT940, (1, 0, 3, 4, 2), c)
        assert not ok
        assert values != c.values

    def test_non_bijection_rejected(self):
        c = Coloring(3, (0, 1, 2))
        with pytest.raises(ValueError):
            apply_permutation_unchecked(TREFOIL, (0, 0, 2), c)


class TestOrbitPartition:
    def test_figure8_aut(self):
        nontrivial = enumerate_colorings(FIGURE8, 5, nontrivial_only=True)
        part = orbit_partition(nontrivial, build_group(AUT, 5))
        assert part.class_count == 1
        assert part.sizes() == (20,)

    def test_figure8_inn(self):
        nontrivial = enumerate_colorings(FIGURE8, 5, nontrivial_only=True)
        part = orbit_partition(nontrivial, build_group(INN, 5))
        assert part.class_count == 2
        assert part.sizes() == (10, 10)
        assert sum(o.member_count_check for o in part.orbits) == 20

    def test_940_aut(self):
        nontrivial = enumerate_colorings(KNOT940, 5, nontrivial_only=True)
        part = orbit_partition(nontrivial, build_group(AUT, 5))
        assert part.class_count == 6
        assert set(part.sizes()) == {20}

    def test_trefoil_mod3_both(self):
        nontrivial = enumerate_colorings(TREFOIL, 3, nontrivial_only=True)
        assert orbit_partition(nontrivial, build_group(AUT, 3)).class_count == 1
        assert orbit_partition(nontrivial, build_group(INN, 3)).class_count == 1

    def test_representatives_are_minima(self):
        nontrivial = enumerate_colorings(KNOT940, 5, nontrivial_only=True)
        part = orbit_partition(nontrivial, build_group(INN, 5))
        reps = [o.representative for o in part.orbits]
        assert reps == sorted(reps)
        assert all(o.size == o.member_count_check for o in part.orbits)

    def test_orbit_members_share_color_count(self):
        nontrivial = enumerate_colorings(KNOT940, 5, nontrivial_only=True)
        part = orbit_partition(nontrivial, build_group(AUT, 5))
        for o in part.orbits:
            counts = {apply_map(g, o.representative).n_colors()
                      for g in build_group(AUT, 5).elements}
            assert counts == {o.representative.n_colors()}

    def test_empty_input(self):
        part = orbit_partition([], build_group(AUT, 5))
        assert part.class_count == 0
        assert part.orbits == ()

    def test_unclosed_input_rejected(self):
        nontrivial = enumerate_colorings(FIGURE8, 5, nontrivial_only=True)
        with pytest.raises(ValueError):
            orbit_partition(nontrivial[:7], build_group(AUT, 5))

    def test_composite_modulus_action_well_defined(self):
        # no closed-form count is claimed for composite m, but the orbits
        # must still partition the non-trivial colorings
        nontrivial = enumerate_colorings(TREFOIL, 9, nontrivial_only=True)
        part = orbit_partition(nontrivial, build_group(AUT, 9))
        assert sum(part.sizes()) == len(nontrivial) == 18

    def test_freeness_for_prime_modulus(self):
        for d, p in ((FIGURE8, 5), (KNOT940, 5), (TREFOIL, 3)):
            nontrivial = enumerate_colorings(d, p, nontrivial_only=True)
            aut = orbit_partition(nontrivial, build_group(AUT, p))
            inn = orbit_partition(nontrivial, build_group(INN, p))
            assert all(s == p * (p - 1) for s in aut.sizes())
            assert all(s == 2 * p for s in inn.sizes())


class TestPredictedCounts:
    def test_values(self):
        assert predicted_class_count(AUT, 5, 3) == 6
        assert predicted_class_count(INN, 5, 2) == 2
        assert predicted_class_count(AUT, 3, 2) == 1
        assert predicted_class_count(INN, 5, 3) == 12
        assert predicted_class_count(INN, 3, 2) == 1

    def test_guards(self):
        with pytest.raises(ValueError):
            predicted_class_count(AUT, 4, 2)
        with pytest.raises(ValueError):
            predicted_class_count(AUT, 5, 1)
        with pytest.raises(ValueError):
            predicted_class_count("sym", 5, 2)


class TestVerifyCounts:
    def test_trefoil(self):
        rep = verify_counts(TREFOIL, 3, label="3_1", variants=2)
        assert rep.passed
        assert (rep.aut_classes, rep.inn_classes) == (1, 1)
        assert rep.invariant_across_moves

    def test_figure8(self):
        rep = verify_counts(FIGURE8, 5, label="4_1", variants=2)
        assert rep.passed
        assert (rep.aut_classes, rep.inn_classes) == (1, 2)

    def test_940(self):
        rep = verify_counts(KNOT940, 5, label="9_40", variants=1)
        assert rep.passed
        assert (rep.aut_classes, rep.inn_classes) == (6, 12)
        assert (rep.predicted_aut, rep.predicted_inn) == (6, 12)

    def test_unknot_vacuous(self):
        rep = verify_counts(build_diagram(catalog("unknot")), 3, label="unknot")
        assert rep.passed
        assert rep.nullity == 1
        assert (rep.aut_classes, rep.inn_classes) == (0, 0)

    def test_no_colorings_vacuous(self):
        rep = verify_counts(TREFOIL, 5, label="3_1")
        assert rep.passed
        assert rep.aut_classes == 0

    def test_json_keys(self):
        rep = verify_counts(FIGURE8, 5, label="4_1", variants=1)
        blob = rep.to_json_dict()
        assert blob["knot"] == "4_1"
        assert blob["p"] == 5
        assert blob["orbit_sizes"] == [20]
        assert blob["inn_orbit_sizes"] == [10, 10]
        assert blob["invariant_across_moves"] is True

    def test_prime_determinant_knots_single_class(self):
        # prime determinant means nullity 2: one class, (p-1)/2 inner classes
        for name in ("3_1", "4_1", "5_1", "5_2", "6_2", "6_3", "7_1"):
            d = build_diagram(catalog(name))
            det = profile(d).determinant
            assert is_odd_prime(det)
            rep = verify_counts(d, det, label=name, variants=1)
            assert rep.passed
            assert rep.aut_classes == 1
            assert rep.inn_classes == (det - 1) // 2

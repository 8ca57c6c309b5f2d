"""Lattice machinery: closure, enumeration, cores, quotients, isomorphisms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holgal import (
    AbstractGroup,
    CapacityError,
    all_subgroups,
    are_conjugate,
    center,
    closure,
    core,
    derived_subgroup,
    find_isomorphism,
    hall_p_part,
    holomorph_group,
    is_cyclic,
    is_normal,
    is_regular,
    is_transitive,
    make_context,
    quotient,
    quotient_cosets,
    stabilizer,
    translation_part,
    trivial_subgroup,
)
from holgal.oracle import abstract_group
from holgal.verify import isomorphic_bruteforce

C22 = make_context(2, 2)
C23 = make_context(2, 3)
C32 = make_context(3, 2)

KLEIN_ELEMENTS = ((0, 1), (1, 3), (2, 1), (3, 3))


def assert_closed(sub):
    assert closure(sub.elements, sub.ctx).elements == sub.elements


def assert_is_isomorphism(mapping, first, second):
    assert sorted(mapping) == list(range(first.size))
    for i in range(first.size):
        for j in range(first.size):
            assert mapping[first.table[i][j]] == second.table[mapping[i]][mapping[j]]
    assert {mapping[i] for i in first.marked} == set(second.marked)


class TestClosure:
    def test_empty_generators(self):
        assert closure([], C22).elements == ((0, 1),)

    def test_translation_generator_gives_whole_translation_group(self):
        assert closure([(1, 1)], C22).elements == ((0, 1), (1, 1), (2, 1), (3, 1))

    def test_two_generators_fill_the_holomorph(self):
        assert closure([(1, 3), (0, 3)], C22) == holomorph_group(C22)

    @given(st.data())
    @settings(max_examples=40)
    def test_closure_is_closed(self, data):
        ctx = data.draw(st.sampled_from([C22, C23, C32]))
        gens = data.draw(
            st.lists(
                st.tuples(st.integers(0, ctx.n - 1), st.sampled_from(ctx.units)),
                max_size=3,
            )
        )
        sub = closure(gens, ctx)
        assert_closed(sub)
        assert all(g in sub for g in gens)
        total = ctx.n * len(ctx.units)
        assert total % len(sub) == 0


class TestEnumeration:
    def test_hol_c4_has_ten_subgroups(self):
        subs = all_subgroups(C22)
        assert len(subs) == 10
        assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 2, 2, 4, 4, 4, 8]
        for sub in subs:
            assert_closed(sub)

    def test_transitive_members_at_e2(self):
        subs = [s.elements for s in all_subgroups(C22) if is_transitive(s)]
        assert subs == [
            ((0, 1), (1, 1), (2, 1), (3, 1)),  # the translation group N
            KLEIN_ELEMENTS,
            holomorph_group(C22).elements,
        ]

    def test_lagrange_at_e3(self):
        total = C23.n * len(C23.units)
        for sub in all_subgroups(C23):
            assert total % len(sub) == 0

    def test_no_duplicates(self):
        subs = all_subgroups(C23)
        assert len({s.elements for s in subs}) == len(subs)

    def test_capacity_bound(self):
        with pytest.raises(CapacityError):
            all_subgroups(make_context(2, 6))
        with pytest.raises(CapacityError):
            all_subgroups(C23, max_order=16)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("HOLGAL_MAX_ORDER", "8")
        with pytest.raises(CapacityError):
            all_subgroups(C23)
        assert len(all_subgroups(C22)) == 10

    @pytest.mark.parametrize("ctx", [C22, C23, C32])
    def test_matches_naive_saturation(self, ctx):
        # independent enumeration: extend every subgroup by every outside
        # element and close, with no normality or prime-index shortcuts
        found = {closure([], ctx).elements}
        frontier = [closure([], ctx)]
        while frontier:
            sub = frontier.pop()
            for g in holomorph_group(ctx).elements:
                if g in sub.member_set:
                    continue
                bigger = closure(sub.elements + (g,), ctx)
                if bigger.elements not in found:
                    found.add(bigger.elements)
                    frontier.append(bigger)
        assert [s.elements for s in all_subgroups(ctx)] == sorted(
            found, key=lambda t: (len(t), t)
        )


class TestOrbits:
    def test_stabilizer_of_full_group(self):
        assert stabilizer(holomorph_group(C22)).elements == ((0, 1), (0, 3))

    def test_orbit_stabilizer_for_transitive(self):
        for sub in all_subgroups(C23):
            if is_transitive(sub):
                assert len(sub) == C23.n * len(stabilizer(sub))

    def test_regularity(self):
        assert is_regular(closure([(1, 1)], C22))
        assert is_regular(closure(KLEIN_ELEMENTS, C22))
        assert not is_regular(holomorph_group(C22))

    def test_translation_part(self):
        assert translation_part(holomorph_group(C22)).elements == (
            (0, 1), (1, 1), (2, 1), (3, 1),
        )
        assert translation_part(closure([(1, 3)], C22)).elements == ((0, 1),)

    def test_translation_bound_p2(self):
        total = C23.n * len(C23.units)
        for sub in all_subgroups(C23):
            assert len(translation_part(sub)) * total >= len(sub) * C23.n


class TestCore:
    def test_core_of_self(self):
        hol = holomorph_group(C22)
        assert core(hol, hol) == hol

    def test_central_translation_is_its_own_core(self):
        hol = holomorph_group(C22)
        half = closure([(2, 1)], C22)
        assert core(hol, half) == half
        assert is_normal(hol, half)

    def test_reflection_has_trivial_core(self):
        hol = holomorph_group(C22)
        refl = closure([(1, 3)], C22)
        assert core(hol, refl).elements == ((0, 1),)
        assert not is_normal(hol, refl)

    def test_requires_containment(self):
        with pytest.raises(ValueError):
            core(closure([(1, 1)], C22), closure([(1, 3)], C22))

    def test_maximality_by_lattice_scan(self):
        subs = all_subgroups(C22)
        for big in subs:
            for sub in subs:
                if not sub.issubset(big):
                    continue
                nucleus = core(big, sub)
                assert nucleus.issubset(sub)
                assert is_normal(big, nucleus)
                for other in subs:
                    if other.issubset(sub) and is_normal(big, other):
                        assert other.issubset(nucleus)

    def test_translation_meet_in_core(self):
        for ctx in (C22, C23, C32):
            subs = all_subgroups(ctx)
            for big in subs:
                for sub in subs:
                    if sub.issubset(big):
                        assert translation_part(sub).issubset(core(big, sub))


class TestConjugacy:
    def test_self_conjugate(self):
        hol = holomorph_group(C22)
        refl = closure([(1, 3)], C22)
        assert are_conjugate(hol, refl, refl)

    def test_size_mismatch(self):
        hol = holomorph_group(C22)
        assert not are_conjugate(hol, closure([(1, 3)], C22), closure([(1, 1)], C22))

    def test_reflections_conjugate_by_translation(self):
        hol = holomorph_group(C22)
        assert are_conjugate(hol, closure([(1, 3)], C22), closure([(3, 3)], C22))

    def test_stabilizer_not_conjugate_to_central(self):
        hol = holomorph_group(C22)
        assert not are_conjugate(hol, closure([(0, 3)], C22), closure([(2, 1)], C22))


class TestCenterAndDerived:
    def test_center_of_abelian_is_itself(self):
        n_group = closure([(1, 1)], C23)
        assert center(n_group) == n_group

    def test_dihedral_center_and_derived(self):
        hol = holomorph_group(C22)
        assert center(hol).elements == ((0, 1), (2, 1))
        assert derived_subgroup(hol).elements == ((0, 1), (2, 1))

    def test_half_translation_central_in_nonregular_transitive(self):
        half = (C23.n // 2, 1)
        for sub in all_subgroups(C23):
            if is_transitive(sub) and not is_regular(sub):
                assert half in center(sub).member_set

    def test_is_cyclic(self):
        assert is_cyclic(closure([(1, 1)], C23))
        assert not is_cyclic(closure(KLEIN_ELEMENTS, C22))


class TestHallPart:
    def test_hall_part_of_full_group_at_p3(self):
        part = hall_p_part(holomorph_group(C32))
        assert len(part) == 27
        assert {a for _, a in part.elements} == {1, 4, 7}

    def test_p2_is_identity(self):
        hol = holomorph_group(C23)
        assert hall_p_part(hol) == hol

    def test_transitivity_transfers(self):
        for sub in all_subgroups(C32):
            if is_transitive(sub):
                assert is_transitive(hall_p_part(sub))

    def test_index_identity_for_p_power_indices(self):
        subs = all_subgroups(C32)
        for big in subs:
            for sub in subs:
                if not sub.issubset(big):
                    continue
                index = len(big) // len(sub)
                reduced = index
                while reduced % 3 == 0:
                    reduced //= 3
                if reduced != 1:
                    continue
                assert len(hall_p_part(big)) // len(hall_p_part(sub)) == index

    def test_conjugacy_transfer(self):
        subs = all_subgroups(C32)
        for big in subs:
            nine_indexed = [
                s for s in subs if s.issubset(big) and len(s) * 9 == len(big)
            ]
            for i, first in enumerate(nine_indexed):
                for second in nine_indexed[i + 1 :]:
                    assert are_conjugate(big, first, second) == are_conjugate(
                        big, hall_p_part(first), hall_p_part(second)
                    )


class TestQuotient:
    def test_quotient_by_trivial_is_the_group_itself(self):
        hol = holomorph_group(C22)
        table = quotient(hol, trivial_subgroup(C22))
        assert table.size == 8
        table.validate()
        reps = quotient_cosets(hol, trivial_subgroup(C22))
        assert reps == hol.elements

    def test_quotient_by_self_is_trivial(self):
        hol = holomorph_group(C22)
        assert quotient(hol, hol).size == 1

    def test_hol_c4_mod_center_is_klein(self):
        hol = holomorph_group(C22)
        table = quotient(hol, closure([(2, 1)], C22))
        table.validate()
        assert table.size == 4
        assert sorted(table.element_orders) == [1, 2, 2, 2]

    def test_marked_is_image_of_designated_subgroup(self):
        hol = holomorph_group(C22)
        half = closure([(2, 1)], C22)
        stab = closure([(0, 3), (2, 1)], C22)
        table = quotient(hol, half, stab)
        assert len(table.marked) == 2
        table.validate()

    def test_rejects_non_normal(self):
        hol = holomorph_group(C22)
        with pytest.raises(ValueError):
            quotient(hol, closure([(1, 3)], C22))

    def test_rejects_marked_not_above_normal(self):
        hol = holomorph_group(C22)
        half = closure([(2, 1)], C22)
        refl = closure([(1, 3)], C22)
        with pytest.raises(ValueError):
            quotient(hol, half, refl)

    def test_identity_coset_first_and_reps_minimal(self):
        for sub in all_subgroups(C23):
            if not is_normal(holomorph_group(C23), sub):
                continue
            reps = quotient_cosets(holomorph_group(C23), sub)
            assert reps[0] == (0, 1)
            assert list(reps) == sorted(reps)


class TestFindIsomorphism:
    def test_identity_on_equal_groups(self):
        table = abstract_group(holomorph_group(C22))
        mapping = find_isomorphism(table, table)
        assert mapping is not None
        assert_is_isomorphism(mapping, table, table)

    def test_cyclic_vs_klein_is_none(self):
        cyclic = abstract_group(closure([(1, 1)], C22))
        klein = abstract_group(closure(KLEIN_ELEMENTS, C22))
        assert find_isomorphism(cyclic, klein) is None

    def test_size_mismatch_is_none(self):
        small = abstract_group(closure([(1, 1)], C22))
        big = abstract_group(holomorph_group(C22))
        assert find_isomorphism(small, big) is None

    def test_outer_automorphism_moves_reflection_pair_to_stabilizer(self):
        # D_4 with a non-central reflection pair marked embeds onto D_4 with
        # the point stabilizer marked, although the two subgroups are not
        # conjugate: an outer automorphism swaps the reflection classes.
        hol = holomorph_group(C22)
        refl = closure([(1, 3)], C22)
        assert not are_conjugate(hol, refl, stabilizer(hol))
        first = quotient(hol, trivial_subgroup(C22), refl)
        second = abstract_group(hol)
        mapping = find_isomorphism(first, second)
        assert mapping is not None
        assert_is_isomorphism(mapping, first, second)

    def test_marked_constraint_can_forbid_otherwise_isomorphic_pairs(self):
        hol = holomorph_group(C22)
        half = closure([(2, 1)], C22)  # central, order 2
        refl = closure([(1, 3)], C22)  # non-central, order 2
        first = quotient(hol, trivial_subgroup(C22), half)
        second = quotient(hol, trivial_subgroup(C22), refl)
        assert find_isomorphism(first, AbstractGroup(table=first.table)) is None
        assert find_isomorphism(first, second) is None

    def test_agrees_with_bruteforce_on_small_pairs(self):
        tables = []
        for ctx in (C22, C23):
            for sub in all_subgroups(ctx):
                if is_transitive(sub) and len(sub) <= 16:
                    tables.append(abstract_group(sub))
        for first in tables:
            for second in tables:
                fast = find_isomorphism(first, second)
                slow = isomorphic_bruteforce(first, second)
                assert (fast is not None) == slow
                if fast is not None:
                    assert_is_isomorphism(fast, first, second)

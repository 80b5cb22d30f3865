import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choiceless.atoms import (
    CategoricalStructure,
    DenseOrderStructure,
    PairStructure,
    PureSetStructure,
    StructureMismatch,
    extend_fixing,
    f_rel,
    fresh_realizer,
)
from choiceless.symsets import (
    SupportedSubset,
    classify_fraenkel,
    count_least_supported,
    count_supported,
    least_support,
    pair_orbit_descriptor,
    types_over,
)


class TestTypeCounts:
    def test_dense_counts_match_formula(self):
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(6)]
        for n in range(7):
            assert len(types_over(s, E[:n])) == 2 * n + 1

    def test_pure_counts(self):
        s = PureSetStructure(4)
        E = s.atoms()
        for n in range(5):
            assert len(types_over(s, E[:n])) == n + 1

    def test_count_supported_examples(self):
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(2)]
        assert count_supported(s, E) == 32
        assert count_supported(s, []) == 2
        p = PureSetStructure(3)
        assert count_supported(p, p.atoms()) == 16

    def test_categorical_count_over_empty(self):
        s = CategoricalStructure()
        s.fresh(1)
        # over no parameters the only atomic formula is the unary relation
        assert len(types_over(s, [])) == 2

    def test_types_partition_materialised_atoms(self):
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(3)]
        probes = [s.atom(Fraction(k, 2) - 1) for k in range(12)]
        for a in probes:
            holders = [t for t in types_over(s, E) if t.holds(s, a)]
            assert len(holders) == 1

    def test_pure_bruteforce_invariant_count(self):
        # all subsets of a 10-atom pool invariant under every permutation
        # fixing a 3-atom support, counted by orbit generators
        s = PureSetStructure(10)
        pool = s.atoms()
        E = pool[:3]
        rest = pool[3:]
        swaps = [(rest[i], rest[i + 1]) for i in range(len(rest) - 1)]
        count = 0
        for mask in range(1 << 10):
            subset = {pool[i] for i in range(10) if mask >> i & 1}
            if any((a in subset) != (b in subset) for a, b in swaps):
                continue
            count += 1
        assert count == 16 == count_supported(s, E)

    def test_least_supported_counts(self):
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(3)]
        assert [count_least_supported(s, E[:n]) for n in range(4)] == [2, 6, 18, 54]
        # law: summing class sizes over all sub-supports recovers the total
        total = sum(
            count_least_supported(s, sub)
            for k in range(4)
            for sub in itertools.combinations(E, k)
        )
        assert total == count_supported(s, E) == 128


class TestSupportedSubset:
    def test_interval_least_support(self):
        s = DenseOrderStructure()
        e0, e1, e2 = (s.atom(i) for i in range(3))
        ts = types_over(s, [e0, e1, e2])
        interval = [t for t in ts if t.desc == ("gap", 1)]
        S = SupportedSubset(s, [e0, e1, e2], interval)
        assert least_support(S) == (e0, e1)

    def test_full_set_has_empty_support(self):
        s = DenseOrderStructure()
        e0, e2 = s.atom(0), s.atom(2)
        S = SupportedSubset.all_atoms(s).reencode([e0, e2])
        assert least_support(S) == ()

    def test_singleton_support(self):
        s = PureSetStructure(2)
        a0, a1 = s.atoms()
        S = SupportedSubset.of_atoms(s, [a0]).reencode([a0, a1])
        assert least_support(S) == (a0,)

    def test_least_support_bruteforce(self):
        """Exhaustively: the least support is the unique minimal sub-support,
        no proper subset of it supports the set, and shrinking to it is
        idempotent."""
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(4)]
        for bits in range(1 << 9):
            S = SupportedSubset.from_bits(s, E, bits)
            L = least_support(S)
            supports = [
                sub
                for k in range(5)
                for sub in itertools.combinations(E, k)
                if S.is_supported_by(sub)
            ]
            minimal = [
                sub
                for sub in supports
                if not any(set(o) < set(sub) for o in supports)
            ]
            assert minimal == [tuple(L)]
            shrunk = S.canonical()
            assert least_support(shrunk) == L and shrunk == S

    def test_least_support_by_invariance_probes(self):
        """Independent reading of 'support': probe automorphisms fixing the
        candidate set leave the denotation alone."""
        rng = random.Random(2)
        s = PureSetStructure(9)
        pool = s.atoms()
        E = pool[:3]
        for bits in range(1 << 4):
            S = SupportedSubset.from_bits(s, E, bits)
            L = least_support(S)
            for sub in itertools.combinations(E, 2):
                moved = [a for a in pool if a not in sub]
                for _ in range(12):
                    img = rng.sample(moved, len(moved))
                    pi = extend_fixing(s, sub, dict(zip(moved, img)))
                    fixed_setwise = {pi.apply(a) for a in S.denote(pool)} == set(
                        S.denote(pool)
                    )
                    if not fixed_setwise:
                        assert not set(L) <= set(sub)
                        break
                else:
                    continue

    def test_equality_across_supports(self):
        s = PureSetStructure(6)
        pool = s.atoms()
        S1 = SupportedSubset.of_atoms(s, pool[:2])
        S2 = SupportedSubset.of_atoms(s, pool[:2]).reencode(pool[:5])
        assert S1 == S2 and hash(S1) == hash(S2)
        S3 = SupportedSubset.of_atoms(s, pool[:3])
        assert S1 != S3

    def test_boolean_algebra_closure(self):
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(2)]
        ts = types_over(s, E)
        for b1, b2 in itertools.product(range(0, 32, 7), repeat=2):
            S1 = SupportedSubset.from_bits(s, E, b1)
            S2 = SupportedSubset.from_bits(s, E, b2)
            u = S1.union(S2)
            i = S1.intersection(S2)
            c = S1.complement()
            probe = [s.atom(Fraction(k, 3) - 1) for k in range(9)]
            for a in probe:
                assert u.contains(a) == (S1.contains(a) or S2.contains(a))
                assert i.contains(a) == (S1.contains(a) and S2.contains(a))
                assert c.contains(a) == (not S1.contains(a))

    def test_denotation_invariant_under_support_fixers(self):
        s = PureSetStructure(10)
        pool = s.atoms()
        E = pool[:2]
        rng = random.Random(7)
        for bits in range(1 << 3):
            S = SupportedSubset.from_bits(s, E, bits)
            moved = pool[2:]
            for _ in range(10):
                img = rng.sample(moved, len(moved))
                pi = extend_fixing(s, E, dict(zip(moved, img)))
                den = set(S.denote(pool))
                assert {pi.apply(a) for a in den} == den

    def test_bits_json_roundtrip(self):
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(2)]
        S = SupportedSubset.from_bits(s, E, 19)
        data = S.to_json()
        assert data["bits"] == S.bits()
        assert SupportedSubset.from_json(s, data) == S

    def test_selected_types_must_match_support(self):
        s = DenseOrderStructure()
        e0, e1 = s.atom(0), s.atom(1)
        alien = types_over(s, [e0])[0]
        with pytest.raises(ValueError):
            SupportedSubset(s, [e1], [alien])


class TestClassifyFraenkel:
    def test_finite_inside_support(self):
        s = PureSetStructure(4)
        a0, a1 = s.atoms()[:2]
        c = classify_fraenkel(SupportedSubset.of_atoms(s, [a0, a1]))
        assert c.kind == "finite" and set(c.members) == {a0, a1}

    def test_cofinite_complement_inside_support(self):
        s = PureSetStructure(4)
        E = s.atoms()[:2]
        outside = SupportedSubset(
            s, E, [t for t in types_over(s, E) if t.desc == ("free",)]
        )
        c = classify_fraenkel(outside)
        assert c.kind == "cofinite" and set(c.members) == set(E)

    def test_outside_plus_singleton(self):
        s = PureSetStructure(5)
        E = s.atoms()[:2]
        ts = types_over(s, E)
        chosen = [t for t in ts if t.desc in (("free",), ("eq", 0))]
        S = SupportedSubset(s, E, chosen)
        c = classify_fraenkel(S)
        assert c.kind == "cofinite" and c.members == (E[1],)

    def test_wrong_structure_kind(self):
        s = DenseOrderStructure()
        with pytest.raises(StructureMismatch):
            classify_fraenkel(SupportedSubset.empty(s))

    def test_every_supported_subset_classified(self):
        s = PureSetStructure(6)
        E = s.atoms()[:3]
        for bits in range(1 << 4):
            S = SupportedSubset.from_bits(s, E, bits)
            c = classify_fraenkel(S)
            assert set(c.members) <= set(E)


class TestPairModelTypes:
    def test_orbit_descriptor_separates_orbits(self):
        s = PairStructure(3)
        a, b, c = (s.base_atom(i) for i in range(3))
        u_ab = s.pair_atom(1, a, b, 0)
        u_ba = s.pair_atom(1, b, a, 0)
        u_aa = s.pair_atom(1, a, a, 0)
        # over the empty support the two mixed pairs fall together, the
        # diagonal one does not
        assert pair_orbit_descriptor(u_ab, ()) == pair_orbit_descriptor(u_ba, ())
        assert pair_orbit_descriptor(u_ab, ()) != pair_orbit_descriptor(u_aa, ())
        # fixing a separates them
        assert pair_orbit_descriptor(u_ab, (a,)) != pair_orbit_descriptor(u_ba, (a,))

    def test_bit_orbits_respect_pinning(self):
        s = PairStructure(2)
        a, b = s.base_atom(0), s.base_atom(1)
        u0 = s.pair_atom(1, a, b, 0)
        u1 = s.pair_atom(1, a, b, 1)
        assert pair_orbit_descriptor(u0, ()) == pair_orbit_descriptor(u1, ())
        assert pair_orbit_descriptor(u0, (u0,)) != pair_orbit_descriptor(u1, (u0,))

    def test_descriptor_matches_orbit_reachability(self):
        rng = random.Random(13)
        s = PairStructure(4)
        bases = [s.base_atom(i) for i in range(4)]
        atoms = list(bases)
        for _ in range(6):
            x, y = rng.choice(atoms), rng.choice(atoms)
            lvl = max(x.level, y.level) + 1
            atoms.append(s.pair_atom(lvl, x, y, rng.choice((0, 1))))
        E = [bases[0]]
        for u, v in itertools.combinations(atoms, 2):
            same_desc = pair_orbit_descriptor(u, E) == pair_orbit_descriptor(v, E)
            movable = extend_fixing(s, E, {u: v}) is not None
            assert same_desc == movable, (u, v)

    def test_types_realized_by_universe(self):
        s = PairStructure(2)
        a, b = s.base_atom(0), s.base_atom(1)
        s.pair_atom(1, a, b, 0)
        s.pair_atom(1, a, b, 1)
        ts = types_over(s, [])
        assert len(ts) == 2  # one base orbit, one level-1 orbit
        for t in ts:
            assert t.holds(s, t.witness)

    def test_level_bound_raises_instead_of_truncating(self):
        from choiceless.atoms import LevelBudgetExceeded

        s = PairStructure(2)
        a, b = s.base_atom(0), s.base_atom(1)
        u1 = s.pair_atom(1, a, b, 0)
        u2 = s.pair_atom(2, u1, b, 0)
        deep = s.pair_atom(4, s.pair_atom(3, u2, a, 1), b, 0)
        with pytest.raises(LevelBudgetExceeded):
            types_over(s, [], pair_level_bound=3)
        assert types_over(s, [], pair_level_bound=4)


class TestCategoricalTypes:
    def test_type_count_formula_one_param(self):
        s = CategoricalStructure()
        e0 = fresh_realizer(s, [])
        # one equality type plus (two gaps) x (three relation formulas free)
        assert len(types_over(s, [e0])) == 1 + 2 * 2 ** 3

    def test_same_type_atoms_swap(self):
        s = CategoricalStructure()
        e0, e1 = s.fresh(2)
        for t in types_over(s, [e0]):
            if t.desc[0] != "typ":
                continue
            # realize the type twice if consistent, then swap
            a = fresh_realizer(s, [])
            if not t.holds(s, a):
                continue
            b = fresh_realizer(s, [])
            if t.holds(s, b):
                assert extend_fixing(s, [e0], {a: b}) is not None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 511), st.integers(0, 511))
def test_union_supports_agree(b1, b2):
    s = DenseOrderStructure()
    E = [s.atom(i) for i in range(4)]
    S1 = SupportedSubset.from_bits(s, E, b1 % (1 << 9))
    S2 = SupportedSubset.from_bits(s, E, b2 % (1 << 9))
    assert (S1 == S2) == (S1.bits() == S2.bits())

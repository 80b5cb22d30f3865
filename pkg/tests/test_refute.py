import itertools
import json
import random
from fractions import Fraction

import pytest

from choiceless import oracles
from choiceless.atoms import DenseOrderStructure, PairStructure, PureSetStructure
from choiceless.constructions import (
    AtomsDom,
    FinDom,
    PairDom,
    SeqDom,
    SeqStarDom,
    UnordPairsDom,
    hfset,
    hftuple,
)
from choiceless.labchecks import (
    REFUTE_ENGINES,
    exhaustive_refutation_paths,
    run_random_refutations,
)
from choiceless.refute import (
    BudgetExhausted,
    EquivarianceBreak,
    InjectionOracle,
    InjectivityCollapse,
    OracleAnswerError,
    WitnessInvalid,
    disjointify_finite,
    extract_fin_to_atom_mostowski,
    extract_from_partition_injection,
    extract_from_surplus,
    extract_seqstar_to_seq,
    oracle_key,
    partition_to_edges,
    refute_fin_to_seq_fraenkel,
    refute_fin_to_seqstar_fraenkel,
    refute_nat_to_power_fraenkel,
    refute_seq_to_power_fraenkel,
    refute_unordered_to_ordered_pairmodel,
    rgs_partitions,
    seq_count,
    surjection_to_power_injection,
    verify_witness,
    verify_witness_json,
    witness_to_json,
)


class TestOracleShell:
    def test_answers_memoised(self):
        s = PureSetStructure(2)
        calls = {"n": 0}

        def fn(x):
            calls["n"] += 1
            return hftuple(())

        o = InjectionOracle(fn, FinDom(AtomsDom()), SeqDom(), structure=s)
        x = hfset(s.atoms()[:1])
        assert o.query(x) == o.query(x)
        assert calls["n"] == 1 and len(o.transcript) == 1

    def test_codomain_enforced(self):
        s = PureSetStructure(2)
        a, b = s.atoms()
        o = InjectionOracle(
            lambda x: hftuple(a, a), FinDom(AtomsDom()), SeqDom(), structure=s
        )
        with pytest.raises(OracleAnswerError):
            o.query(hfset(a))


class TestFinToSeq:
    def test_sort_oracle_equivariance_break(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "sort", 0, 0)
        w = refute_fin_to_seq_fraenkel(o)
        assert isinstance(w, EquivarianceBreak)
        assert verify_witness(w, s, E, o.transcript)

    def test_constant_oracle_collapse(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "const-empty", 0, 0)
        w = refute_fin_to_seq_fraenkel(o)
        assert isinstance(w, InjectivityCollapse)

    def test_with_declared_support(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "sort", 3, 0)
        w = refute_fin_to_seq_fraenkel(o)
        assert isinstance(w, EquivarianceBreak)
        assert w.pi.fixes_pointwise(E)


class TestFinToSeqstar:
    def test_constant_collapse(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seqstar", "const-empty", 0, 0)
        assert isinstance(refute_fin_to_seqstar_fraenkel(o), InjectivityCollapse)

    def test_id_order_break(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seqstar", "pair-id-order", 0, 0)
        w = refute_fin_to_seqstar_fraenkel(o)
        assert isinstance(w, EquivarianceBreak)

    def test_support_only_fixed_value(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seqstar", "support-only", 2, 0)
        w = refute_fin_to_seqstar_fraenkel(o)
        assert isinstance(w, InjectivityCollapse)

    def test_two_distinct_support_values_pair_exchange(self):
        s = PureSetStructure(1)
        (e,) = s.atoms()
        state = {"n": 0}

        def fn(x):
            state["n"] += 1
            return hftuple([e] * state["n"])

        o = InjectionOracle(
            fn, FinDom(AtomsDom()), SeqStarDom(), support=(e,), structure=s
        )
        w = refute_fin_to_seqstar_fraenkel(o)
        assert isinstance(w, EquivarianceBreak)
        # the input moved to the other probed pair
        assert oracle_key(w.x) != oracle_key(o.transcript[1][0])


class TestSeqToPower:
    def test_requires_support_of_four(self):
        s, E, o = oracles.build_refute_oracle("seq-to-power", "const-empty", 3, 0)
        with pytest.raises(ValueError):
            refute_seq_to_power_fraenkel(o)

    def test_counting_details(self):
        s, E, o = oracles.build_refute_oracle("seq-to-power", "atoms-of-input", 4, 0)
        w = refute_seq_to_power_fraenkel(o)
        assert w.details == {"seq_count": 65, "supported_bound": 32}
        assert seq_count(4) == 65 == 1 + 4 + 12 + 24 + 24

    def test_escaping_answer_break(self):
        s = PureSetStructure(4)
        E = tuple(s.atoms())
        extra = s.fresh(1)[0]
        from choiceless.symsets import SupportedSubset

        def fn(x):
            return SupportedSubset.of_atoms(s, list(x.items) + [extra])

        from choiceless.constructions import PowDom

        o = InjectionOracle(fn, SeqDom(), PowDom(), support=E, structure=s)
        w = refute_seq_to_power_fraenkel(o)
        assert isinstance(w, EquivarianceBreak)

    def test_probe_bound_is_all_sequences(self):
        s, E, o = oracles.build_refute_oracle("seq-to-power", "random", 4, 1)
        refute_seq_to_power_fraenkel(o)
        assert len(o.transcript) <= 65


class TestNatToPower:
    def test_first_n_atoms_escapes_at_one(self):
        s, E, o = oracles.build_refute_oracle("nat-to-power", "first-n-atoms", 0, 0)
        w = refute_nat_to_power_fraenkel(o)
        assert isinstance(w, EquivarianceBreak) and w.x == 1

    def test_constant_collapse_at_second_probe(self):
        s, E, o = oracles.build_refute_oracle("nat-to-power", "const-empty", 0, 0)
        w = refute_nat_to_power_fraenkel(o)
        assert isinstance(w, InjectivityCollapse)
        assert len(o.transcript) == 2

    def test_probe_bound(self):
        s, E, o = oracles.build_refute_oracle("nat-to-power", "random", 1, 3)
        refute_nat_to_power_fraenkel(o)
        assert len(o.transcript) <= 2 ** 2 + 1


class TestPairModelEngine:
    def test_min_max_oracle_case_four(self):
        s, E, o = oracles.build_refute_oracle("unordered-to-ordered", "base-id-order", 0, 0)
        w = refute_unordered_to_ordered_pairmodel(o, budget=6)
        assert isinstance(w, EquivarianceBreak)

    def test_constant_collapse(self):
        s, E, o = oracles.build_refute_oracle("unordered-to-ordered", "const-pair", 0, 0)
        assert isinstance(
            refute_unordered_to_ordered_pairmodel(o, budget=6), InjectivityCollapse
        )

    def test_decorated_bit_flip(self):
        s, E, o = oracles.build_refute_oracle("unordered-to-ordered", "decorated", 0, 0)
        w = refute_unordered_to_ordered_pairmodel(o, budget=6)
        assert isinstance(w, EquivarianceBreak)
        # the cited map flips a decorated atom while fixing the input pair
        moved = [a for a, b in w.pi.pairs.items() if a != b]
        assert any(a.level >= 1 for a in moved)

    def test_stray_base_swap(self):
        s, E, o = oracles.build_refute_oracle("unordered-to-ordered", "stray-per-pair", 0, 0)
        w = refute_unordered_to_ordered_pairmodel(o, budget=6)
        assert isinstance(w, EquivarianceBreak)

    def test_budget_exhaustion_is_reported_not_faked(self):
        s = PairStructure(0)
        pool = s.fresh_base(80)
        state = {"n": 0}

        def fn(x):
            state["n"] += 1
            a, b = sorted(x, key=lambda at: at.payload)
            if state["n"] % 3 == 0:
                return hftuple(a, b)
            if state["n"] % 3 == 1:
                return hftuple(b, a)
            return hftuple(pool[40 + state["n"] % 30], a)

        o = InjectionOracle(
            fn,
            UnordPairsDom(AtomsDom()),
            PairDom(AtomsDom(), AtomsDom()),
            structure=s,
        )
        w = refute_unordered_to_ordered_pairmodel(o, budget=3)
        assert isinstance(w, BudgetExhausted)
        assert w.budget == 3 and w.needed > w.budget

    def test_hostile_tables_always_sound(self):
        """Random tables over varied support shapes (bases, decorated atoms)
        either fall to a verified witness or report budget exhaustion."""
        outcomes = {"EquivarianceBreak": 0, "InjectivityCollapse": 0, "BudgetExhausted": 0}
        for trial in range(60):
            rng = random.Random(trial)
            s = PairStructure(0)
            nb = rng.randint(0, 2)
            E = s.fresh_base(nb)
            if nb >= 2 and rng.random() < 0.5:
                E = E + [s.pair_atom(1, E[0], E[1], rng.choice((0, 1)))]
            pool = s.fresh_base(6, avoid=E)

            def fn(x, rng=rng, s=s, E=E, pool=pool):
                a, b = sorted(x, key=lambda at: at.payload)
                options = list(E) + pool[:3] + [a, b]
                if rng.random() < 0.4:
                    options.append(s.pair_atom(1, a, b, rng.choice((0, 1))))
                return hftuple(rng.choice(options), rng.choice(options))

            o = InjectionOracle(
                fn,
                UnordPairsDom(AtomsDom()),
                PairDom(AtomsDom(), AtomsDom()),
                support=tuple(E),
                structure=s,
            )
            w = refute_unordered_to_ordered_pairmodel(o, budget=rng.choice((4, 6)))
            outcomes[type(w).__name__] += 1
        assert sum(outcomes.values()) == 60

    def test_support_closure_required(self):
        s = PairStructure(2)
        a, b = s.base_atom(0), s.base_atom(1)
        u = s.pair_atom(1, a, b, 0)
        o = InjectionOracle(
            lambda x: hftuple(a, b),
            UnordPairsDom(AtomsDom()),
            PairDom(AtomsDom(), AtomsDom()),
            support=(u,),  # components are missing
            structure=s,
        )
        with pytest.raises(ValueError):
            refute_unordered_to_ordered_pairmodel(o, budget=4)

    def test_pinned_level_falls_back(self):
        # support contains a level-1 atom, so the level-1 bit is pinned and
        # the flip fallback chain must still find a witness
        s = PairStructure(0)
        c0, c1 = s.fresh_base(2)
        u = s.pair_atom(1, c0, c1, 0)
        E = (c0, c1, u)

        def fn(x):
            a, b = sorted(x, key=lambda at: at.payload)
            return hftuple(s.pair_atom(1, a, b, 0), a)

        o = InjectionOracle(
            fn,
            UnordPairsDom(AtomsDom()),
            PairDom(AtomsDom(), AtomsDom()),
            support=E,
            structure=s,
        )
        w = refute_unordered_to_ordered_pairmodel(o, budget=6)
        assert isinstance(w, (EquivarianceBreak, InjectivityCollapse))


class TestWitnessVerification:
    def test_tampered_collapse_rejected(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "const-empty", 0, 0)
        w = refute_fin_to_seq_fraenkel(o)
        tampered = InjectivityCollapse(w.x1, w.x1, w.y)
        with pytest.raises(WitnessInvalid):
            verify_witness(tampered, s, E, o.transcript)

    def test_unprobed_input_rejected(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "const-empty", 0, 0)
        w = refute_fin_to_seq_fraenkel(o)
        ghost = hfset(s.fresh(2))
        tampered = InjectivityCollapse(ghost, w.x2, w.y)
        with pytest.raises(WitnessInvalid):
            verify_witness(tampered, s, E, o.transcript)

    def test_break_requires_support_fixing(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "sort", 2, 0)
        w = refute_fin_to_seq_fraenkel(o)
        from choiceless.atoms import PartialAutomorphism

        pairs = dict(w.pi.pairs)
        e0, e1 = E[0], E[1]
        pairs[e0], pairs[e1] = pairs.get(e1, e1), pairs.get(e0, e0)
        tampered = EquivarianceBreak(PartialAutomorphism(pairs), E, w.x)
        with pytest.raises(WitnessInvalid):
            verify_witness(tampered, s, E, o.transcript)

    def test_commuting_map_rejected(self):
        s = PureSetStructure(0)
        o = oracles.fin_to_seq_oracle("sort", s, ())
        w = refute_fin_to_seq_fraenkel(o)
        from choiceless.atoms import PartialAutomorphism

        identity = PartialAutomorphism({a: a for a in w.pi.pairs})
        with pytest.raises(WitnessInvalid):
            verify_witness(EquivarianceBreak(identity, (), w.x), s, (), o.transcript)

    def test_json_roundtrip_all_engines(self, tmp_path):
        cases = [
            ("fin-to-seq", "sort", 1, refute_fin_to_seq_fraenkel),
            ("fin-to-seqstar", "pair-id-order", 1, refute_fin_to_seqstar_fraenkel),
            ("seq-to-power", "atoms-of-input", 4, refute_seq_to_power_fraenkel),
            ("nat-to-power", "first-n-atoms", 1, refute_nat_to_power_fraenkel),
        ]
        for engine, name, size, fn in cases:
            s, E, o = oracles.build_refute_oracle(engine, name, size, 0)
            w = fn(o)
            path = tmp_path / f"{engine}.json"
            path.write_text(json.dumps(witness_to_json(w, engine, o), sort_keys=True))
            assert verify_witness_json(json.loads(path.read_text()))

    def test_json_detects_tampering(self):
        s, E, o = oracles.build_refute_oracle("fin-to-seq", "sort", 0, 0)
        w = refute_fin_to_seq_fraenkel(o)
        data = witness_to_json(w, "fin-to-seq", o)
        # drop the probed entry the witness cites
        data["transcript"] = []
        with pytest.raises(WitnessInvalid):
            verify_witness_json(data)


class TestExhaustiveTables:
    def test_every_truncated_table_is_refuted(self):
        for engine in ("fin-to-seq", "fin-to-seqstar"):
            for size in (0, 1):
                stats = exhaustive_refutation_paths(engine, size)
                assert stats["tables"] > 0
                assert sum(stats["witnesses"].values()) == stats["tables"]

    def test_nat_to_power_support_zero(self):
        stats = exhaustive_refutation_paths("nat-to-power", 0)
        assert stats["tables"] == sum(stats["witnesses"].values())

    def test_random_adversaries_never_fool_engines(self):
        for c in run_random_refutations(80, seed=123):
            assert c["ok"], c


class TestExtractors:
    def test_fin_to_atom_honest_and_cheat(self):
        t = DenseOrderStructure()
        r = extract_fin_to_atom_mostowski(oracles.fin_to_atom_oracle("fresh-max", t), 100)
        assert r.ok and len(set(map(oracle_key, r.values))) == 100
        t2 = DenseOrderStructure()
        rc = extract_fin_to_atom_mostowski(oracles.fin_to_atom_oracle("max-or-zero", t2), 100)
        assert not rc.ok

    def test_fin_to_atom_collapse_verifies(self):
        t = DenseOrderStructure()
        o = oracles.fin_to_atom_oracle("max-or-zero", t)
        r = extract_fin_to_atom_mostowski(o, 10)
        assert not r.ok
        assert verify_witness(r.collapse, t, (), o.transcript)

    def test_seqstar_growing_lengths(self):
        t = DenseOrderStructure()
        o = oracles.seqstar_to_seq_oracle("same-set-reversed", t)
        r = extract_seqstar_to_seq(o, t.atom(0), 50)
        assert r.ok and len(r.values) == 50

    def test_surplus_n_one_and_two(self):
        for n in (1, 2):
            o = oracles.surplus_oracle("shift-encode", n)
            r = extract_from_surplus(n, o, 100)
            assert r.ok and len(set(r.values)) == 100

    def test_surplus_probe_order(self):
        probes = []

        def fn(x):
            probes.append(x)
            if x == (0, frozenset()):
                return (0, frozenset())
            return (0, frozenset({7}))

        from choiceless.constructions import LabeledNatSetDom

        o = InjectionOracle(fn, LabeledNatSetDom(2), LabeledNatSetDom(1))
        r = extract_from_surplus(1, o, 2)
        assert r.ok and probes[:2] == [(0, frozenset()), (1, frozenset())]

    def test_partition_seed_blocks(self):
        ground = list(range(40))
        seen = []

        def fn(p):
            seen.append(p)
            return frozenset({len(seen) + 3})

        gset = frozenset(ground)
        from choiceless.constructions import PartitionDom, SubsetDom

        o = InjectionOracle(fn, PartitionDom(gset), SubsetDom(gset))
        r = extract_from_partition_injection(o, ground, ground[:4], 3)
        assert r.ok
        # first probed partition merges the five seed blocks into one
        assert seen[0] == frozenset({frozenset(ground)})

    def test_partition_conviction(self):
        ground = list(range(24))
        o = oracles.partition_oracle("const", ground)
        r = extract_from_partition_injection(o, ground, ground[:4], 10)
        assert not r.ok and len(o.transcript) == 2


class TestFiniteCombinatorics:
    def test_disjointify_example(self):
        d = disjointify_finite([0, 1, 2], [{0}, {0, 1}])
        assert d.classes == [frozenset({0}), frozenset({1}), frozenset({2})]
        assert d.signatures == [(0, 0), (1, 0), (1, 1)]

    def test_disjointify_empty_list(self):
        d = disjointify_finite([0, 1, 2], [])
        assert d.classes == [frozenset({0, 1, 2})]

    def test_disjointify_singletons(self):
        m = list(range(5))
        d = disjointify_finite(m, [{i} for i in m])
        assert len(d.classes) == 5

    def test_disjointify_rejects_duplicates(self):
        with pytest.raises(ValueError):
            disjointify_finite([0, 1], [{0}, {0}])

    def test_surjection_preimage_table(self):
        table = surjection_to_power_injection({0: 0, 1: 1, 2: 0})
        assert table[frozenset({0})] == frozenset({0, 2})
        assert table[frozenset()] == frozenset()
        assert len(set(table.values())) == 4

    def test_surjection_onto_check(self):
        with pytest.raises(ValueError):
            surjection_to_power_injection({0: 0}, onto={0, 1})

    def test_surjection_bijective_case(self):
        table = surjection_to_power_injection({0: 1, 1: 0})
        assert len(table) == 4 and len(set(table.values())) == 4

    def test_partition_edges_examples(self):
        assert partition_to_edges([{0}, {1}, {2}]) == frozenset()
        assert len(partition_to_edges([{0, 1, 2}])) == 3

    def test_partition_edges_bell_four(self):
        m = [0, 1, 2, 3]
        edge_sets = set()
        count = 0
        for q in rgs_partitions(4):
            edge_sets.add(partition_to_edges([frozenset(m[i] for i in b) for b in q]))
            count += 1
        assert count == 15 and len(edge_sets) == 15

    def test_partition_edges_rejects_overlap(self):
        with pytest.raises(ValueError):
            partition_to_edges([{0, 1}, {1, 2}])

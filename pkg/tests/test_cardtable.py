import pytest

from choiceless.cardtable import (
    ALEPH0,
    M,
    MODELS,
    Contradiction,
    anyseq,
    check_summary_table,
    close,
    display,
    factorial_bounds,
    fin,
    forbidden_pattern_closure,
    injseq,
    model_closure,
    pairs2,
    partitions,
    power,
    ramsey_two_exactness,
    ramsey_upper,
    show_fact,
    square,
    times,
)


class TestClosureRules:
    def test_cantor_bernstein_contradiction(self):
        cl = close(
            [
                ("le", fin(M), power(M), "t"),
                ("le", power(M), fin(M), "t"),
            ]
        )
        assert cl.contradiction is not None
        # the trace replays down to axioms
        lines = []
        for f in cl.contradiction:
            lines.extend(cl.explain(f))
        assert any("axiom" in ln for ln in lines)

    def test_transitivity_and_strictness(self):
        cl = close(
            [
                ("lt", M, fin(M), "t"),
                ("lt", fin(M), power(M), "t"),
                ("lt", power(M), injseq(M), "t"),
                ("lt", injseq(M), anyseq(M), "t"),
            ]
        )
        assert cl.contradiction is None
        assert cl.has("lt", M, anyseq(M))
        assert cl.has("lt", M, injseq(M))

    def test_incomparable_bookkeeping(self):
        cl = close([("inc", fin(M), injseq(M), "t")])
        assert cl.has("nle", fin(M), injseq(M))
        assert cl.has("nle", injseq(M), fin(M))
        assert cl.has("inc", injseq(M), fin(M))

    def test_incomparable_with_le_contradiction(self):
        cl = close(
            [
                ("inc", fin(M), injseq(M), "t"),
                ("le", fin(M), injseq(M), "t"),
            ]
        )
        assert cl.contradiction is not None

    def test_power_monotone_under_surjections(self):
        cl = close(
            [("lestar", power(M), fin(M), "t")],
            extra_terms=[power(power(M)), power(fin(M))],
        )
        assert cl.has("le", power(power(M)), power(fin(M)))

    def test_no_surjection_transitivity_assumed(self):
        cl = close(
            [
                ("lestar", fin(M), M, "t"),
                ("lestar", injseq(M), fin(M), "t"),
            ]
        )
        assert not cl.has("lestar", injseq(M), M)
        assert not cl.has("le", injseq(M), M)

    def test_countable_power_blocks_sequence_codings(self):
        cl = close(
            [("le", ALEPH0, M, "t")],
            extra_terms=[injseq(M), anyseq(M), power(M)],
        )
        assert cl.has("nle", power(M), anyseq(M))
        assert cl.has("nle", power(M), injseq(M))

    def test_raise_on_contradiction_flag(self):
        with pytest.raises(Contradiction):
            close(
                [
                    ("lt", M, fin(M), "t"),
                    ("le", fin(M), M, "t"),
                ],
                raise_on_contradiction=True,
            )


class TestModelClosures:
    def test_all_models_consistent(self):
        for name in MODELS:
            assert model_closure(name).contradiction is None, name

    def test_closure_idempotent_and_traces_grounded(self):
        cl = model_closure("mostowski")
        again = close(
            [(rel, a, b, "refeed") for rel, a, b in cl.facts],
            extra_terms=cl.universe,
        )
        assert again.facts == cl.facts
        for fact, (rule, premises) in cl.trace.items():
            assert fact in cl.facts
            for p in premises:
                assert p in cl.facts

    def test_mostowski_chain_closure(self):
        cl = model_closure("mostowski")
        assert cl.has("lt", M, anyseq(M))
        assert cl.has("lt", M, injseq(M))
        assert cl.has("lt", pairs2(M), anyseq(M))
        assert cl.has("eq", power(fin(M)), power(power(M)))

    def test_fraenkel_derived_facts(self):
        cl = model_closure("fraenkel")
        assert cl.has("lt", times(1, power(M)), times(2, power(M)))
        assert cl.has("lt", times(2, power(M)), times(3, power(M)))
        assert cl.has("lt", power(M), partitions(M))
        assert cl.has("lt", power(M), power(pairs2(M)))
        # the power object being Dedekind finite pulls the base down with it
        assert cl.has("nle", ALEPH0, M)

    def test_vp_square_below_pairs(self):
        cl = model_closure("vp")
        assert cl.has("lt", square(M), pairs2(M))
        assert cl.has("lt", M, power(M))

    def test_aleph0_collapse(self):
        cl = model_closure("aleph0")
        assert cl.has("eq", injseq(M), anyseq(M))
        assert cl.has("lt", anyseq(M), power(M))


class TestSummaryTable:
    def test_full_report(self):
        report = check_summary_table()
        assert report["ok"]
        for cell in report["cells"]:
            assert cell["ok"], cell
        assert report["forbidden"]["contradiction"]
        assert report["forbidden"]["trace"]

    def test_forbidden_pattern_trace_replays(self):
        cl = forbidden_pattern_closure()
        assert cl.contradiction is not None
        lines = []
        for f in cl.contradiction:
            lines.extend(cl.explain(f))
        text = "\n".join(lines)
        assert "axiom:scenario" in text

    def test_seq_vs_power_cell_spread(self):
        report = check_summary_table()
        cell = next(
            c for c in report["cells"] if c["pair"] == ["Seq(m)", "2^(m)"]
        )
        assert set(cell["claims"]) == {">", "!=", "<", "||"}
        for holders in cell["claims"].values():
            assert holders


class TestArithmetic:
    def test_factorial_examples(self):
        assert factorial_bounds(10) == (True, True)
        assert factorial_bounds(9) == (False, False)
        assert factorial_bounds(0) == (False, False)

    def test_threshold_scan(self):
        weak = [n for n in range(31) if factorial_bounds(n)[0]]
        strong = [n for n in range(31) if factorial_bounds(n)[1]]
        assert weak == list(range(10, 31))
        assert strong == list(range(10, 31))

    def test_ramsey_recurrence(self):
        assert ramsey_upper(1) == 3
        assert ramsey_upper(2) == 6
        assert ramsey_upper(3) == 17
        values = [ramsey_upper(r) for r in range(1, 8)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_ramsey_two_exactness(self):
        assert ramsey_two_exactness() == (True, True)


def test_display_forms():
    assert display(power(fin(M))) == "2^(Fin(m))"
    assert display(times(2, power(M))) == "2*2^(m)"
    assert show_fact(("inc", fin(M), injseq(M))) == "Fin(m) || Seq(m)"

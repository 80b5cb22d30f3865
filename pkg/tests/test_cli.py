import json

import pytest

from choiceless.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestVerify:
    def test_counting_suite_passes(self, capsys):
        code, out = run(capsys, "verify", "--suite", "mostowski-counting", "--max-support", "5")
        assert code == 0
        assert "dense-counting" in out and "PASS" in out

    def test_json_report_shape(self, capsys):
        code, out = run(capsys, "verify", "--suite", "arithmetic", "--fast", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["failures"] == 0
        assert all("claim" in c for c in report["checks"])

    def test_deterministic_bytes(self, capsys):
        args = ("verify", "--suite", "injections", "--seed", "42", "--json")
        code1, out1 = run(capsys, *args)
        code2, out2 = run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_report_written_to_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, _ = run(
            capsys,
            "verify", "--suite", "mostowski-counting", "--out", str(target),
        )
        assert code == 0
        assert json.loads(target.read_text())["failures"] == 0

    def test_unknown_suite_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "bogus"])
        assert exc.value.code == 2


class TestRefuteCommand:
    def test_witness_roundtrip(self, tmp_path, capsys):
        wfile = tmp_path / "w.json"
        code, _ = run(
            capsys,
            "refute", "fin-to-seq", "--oracle", "sort", "--emit-witness", str(wfile),
        )
        assert code == 0
        code2, out2 = run(capsys, "verify-witness", str(wfile))
        assert code2 == 0 and "verified" in out2

    def test_default_oracle(self, capsys):
        code, out = run(capsys, "refute", "nat-to-power", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["checks"][0]["ok"]

    def test_unknown_oracle_usage_error(self, capsys):
        code = main(["refute", "fin-to-seq", "--oracle", "bogus"])
        assert code == 2

    def test_tampered_witness_rejected(self, tmp_path, capsys):
        wfile = tmp_path / "w.json"
        run(capsys, "refute", "fin-to-seqstar", "--oracle", "pair-id-order", "--emit-witness", str(wfile))
        data = json.loads(wfile.read_text())
        data["transcript"] = []
        wfile.write_text(json.dumps(data))
        code, out = run(capsys, "verify-witness", str(wfile))
        assert code == 1 and "INVALID" in out

    def test_scripted_table_oracle(self, tmp_path, capsys):
        import itertools

        from choiceless.atoms import PureSetStructure
        from choiceless.constructions import hf_to_json, hfset, hftuple

        s = PureSetStructure(6)
        pool = s.atoms()
        table = [
            [hf_to_json(hfset(a, b)), hf_to_json(hftuple(()))]
            for a, b in itertools.combinations(pool, 2)
        ]
        tfile = tmp_path / "table.json"
        tfile.write_text(
            json.dumps({"structure": s.to_json(), "support": [], "table": table})
        )
        wfile = tmp_path / "w.json"
        code, _ = run(
            capsys,
            "refute", "fin-to-seqstar", "--oracle", f"@{tfile}",
            "--emit-witness", str(wfile),
        )
        assert code == 0
        code2, _ = run(capsys, "verify-witness", str(wfile))
        assert code2 == 0

    def test_incomplete_table_reported_not_crashed(self, tmp_path, capsys):
        from choiceless.atoms import PureSetStructure

        s = PureSetStructure(2)
        tfile = tmp_path / "table.json"
        tfile.write_text(
            json.dumps({"structure": s.to_json(), "support": [], "table": []})
        )
        code, out = run(capsys, "refute", "fin-to-seq", "--oracle", f"@{tfile}")
        assert code == 1 and "no entry" in out

    def test_model_flag_cross_check(self, capsys):
        code = main(["refute", "fin-to-seq", "--model", "vp"])
        assert code == 2
        code2, _ = run(capsys, "refute", "fin-to-seq", "--model", "fraenkel")
        assert code2 == 0

    def test_pairmodel_budget_flag(self, capsys):
        code, out = run(
            capsys,
            "refute", "unordered-to-ordered", "--oracle", "base-id-order",
            "--budget", "6", "--json",
        )
        assert code == 0
        report = json.loads(out)
        assert report["checks"][0]["details"]["witness"]["kind"] == "equivariance-break"


class TestExtractCommand:
    def test_honest_stream(self, capsys):
        code, out = run(capsys, "extract", "fin-to-atom", "-T", "50", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["checks"][0]["details"]["values"] == 50

    def test_cheating_oracle_convicted(self, capsys):
        code, out = run(
            capsys, "extract", "partition", "--oracle", "const", "-T", "10", "--json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["checks"][0]["details"]["collapse"]

    def test_surplus_copies_flag(self, capsys):
        code, _ = run(capsys, "extract", "surplus", "--copies", "2", "-T", "30")
        assert code == 0


class TestTableCommand:
    def test_model_closure_lists_chain(self, capsys):
        code, out = run(capsys, "table", "--model", "vc")
        assert code == 0
        assert "Seq(m) <= 2^(m)" in out
        assert "2^(m) <= seq(m)" in out
        assert "consistent" in out

    def test_full_table_check(self, capsys):
        code, out = run(capsys, "table", "--json")
        assert code == 0
        report = json.loads(out)
        assert all(c["ok"] for c in report["checks"])

    def test_forbidden_scenario(self, capsys):
        code, out = run(capsys, "table", "--scenario", "forbidden", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["checks"][0]["ok"]
        assert report["checks"][0]["details"]["trace"]

    def test_unknown_model(self, capsys):
        code = main(["table", "--model", "bogus"])
        assert code == 2


class TestCountSupports:
    def test_mostowski(self, capsys):
        code, out = run(capsys, "count-supports", "--model", "mostowski", "-n", "3")
        assert code == 0 and "128" in out and "54" in out

    def test_fraenkel_json(self, capsys):
        code, out = run(capsys, "count-supports", "--model", "fraenkel", "-n", "2", "--json")
        assert code == 0
        assert json.loads(out) == {"least": 2, "model": "fraenkel", "n": 2, "supported": 8}

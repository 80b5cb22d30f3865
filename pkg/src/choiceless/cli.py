"""Batch front end: verification suites, refutation engines against
built-in or scripted oracles, extractors, relation-table closures, and
witness re-checking.  Reports are deterministic for a fixed seed and
print as text or JSON; exit code 0 means every check passed."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import cardtable, labchecks, oracles
from .refute import BudgetExhausted, verify_witness_json, witness_to_json

USAGE_ERROR = 2


def _report(command: str, config: dict, checks: List[dict]) -> dict:
    failures = sum(1 for c in checks if not c["ok"])
    return {
        "version": 1,
        "command": command,
        "config": {k: v for k, v in sorted(config.items())},
        "checks": checks,
        "failures": failures,
    }


def _emit(report: dict, as_json: bool, out_path: Optional[str]) -> int:
    if as_json or out_path:
        blob = json.dumps(report, indent=2, sort_keys=True)
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(blob + "\n")
        if as_json:
            print(blob)
    if not as_json:
        for c in report["checks"]:
            mark = "PASS" if c["ok"] else "FAIL"
            print(f"[{mark}] {c['id']}: {c['claim']}")
            if not c["ok"] and c.get("details"):
                print(f"       {c['details']}")
        print(f"{report['failures']} failing check(s)")
    return 0 if report["failures"] == 0 else 1


def cmd_verify(args) -> int:
    config = {
        "seed": args.seed,
        "max_support": args.max_support,
        "max_atoms": args.max_atoms,
        "trials": args.trials,
        "stream_length": args.stream_length,
        "budget": args.budget,
        "fast": args.fast,
    }
    try:
        checks = labchecks.run_suite(args.suite, config)
    except KeyError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    return _emit(_report(f"verify:{args.suite}", config, checks), args.json, args.out)


def cmd_refute(args) -> int:
    from . import refute as rf
    from .refute import OracleAnswerError

    engine = args.engine
    if engine not in oracles.REFUTE_ORACLES:
        print(f"unknown engine {engine!r}; have {sorted(oracles.REFUTE_ORACLES)}", file=sys.stderr)
        return USAGE_ERROR
    if args.model and args.model != oracles.ENGINE_MODEL[engine]:
        print(
            f"engine {engine} argues inside the {oracles.ENGINE_MODEL[engine]!r} model",
            file=sys.stderr,
        )
        return USAGE_ERROR
    if args.oracle.startswith("@"):
        with open(args.oracle[1:], encoding="utf-8") as fh:
            structure, support, oracle = oracles.scripted_refute_oracle(
                engine, json.load(fh)
            )
        size = len(support)
    elif args.oracle in oracles.REFUTE_ORACLES[engine]:
        size = args.support if args.support is not None else (4 if engine == "seq-to-power" else 0)
        structure, support, oracle = oracles.build_refute_oracle(engine, args.oracle, size, args.seed)
    else:
        print(
            f"unknown oracle {args.oracle!r} for {engine}; have "
            f"{list(oracles.REFUTE_ORACLES[engine])} or @table.json",
            file=sys.stderr,
        )
        return USAGE_ERROR
    engine_fn = labchecks.REFUTE_ENGINES.get(engine)
    try:
        if engine_fn is not None:
            witness = engine_fn(oracle)
        else:
            witness = rf.refute_unordered_to_ordered_pairmodel(oracle, budget=args.budget)
    except OracleAnswerError as exc:
        check = {
            "id": f"refute-{engine}-{args.oracle}",
            "claim": "engine produced a verified contradiction witness",
            "params": {"engine": engine, "oracle": args.oracle},
            "ok": False,
            "details": {"error": str(exc)},
        }
        return _emit(_report("refute", check["params"], [check]), args.json, None)
    payload = witness_to_json(witness, engine, oracle)
    if args.emit_witness:
        with open(args.emit_witness, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    ok = not isinstance(witness, BudgetExhausted)
    check = {
        "id": f"refute-{engine}-{args.oracle}",
        "claim": "engine produced a verified contradiction witness",
        "params": {"engine": engine, "oracle": args.oracle, "support": size, "seed": args.seed},
        "ok": ok,
        "details": {"witness": payload["witness"], "probes": len(oracle.transcript)},
    }
    return _emit(_report("refute", check["params"], [check]), args.json, None)


def cmd_extract(args) -> int:
    from .atoms import DenseOrderStructure
    from .refute import (
        extract_fin_to_atom_mostowski,
        extract_from_partition_injection,
        extract_from_surplus,
        extract_seqstar_to_seq,
    )

    engine, name, T = args.engine, args.oracle, args.stream_length
    if engine not in oracles.EXTRACT_ORACLES:
        print(f"unknown engine {engine!r}; have {sorted(oracles.EXTRACT_ORACLES)}", file=sys.stderr)
        return USAGE_ERROR
    if name not in oracles.EXTRACT_ORACLES[engine]:
        print(
            f"unknown oracle {name!r} for {engine}; have "
            f"{list(oracles.EXTRACT_ORACLES[engine])}",
            file=sys.stderr,
        )
        return USAGE_ERROR
    if engine == "fin-to-atom":
        structure = DenseOrderStructure()
        result = extract_fin_to_atom_mostowski(oracles.fin_to_atom_oracle(name, structure), T)
    elif engine == "seqstar-to-seq":
        structure = DenseOrderStructure()
        result = extract_seqstar_to_seq(
            oracles.seqstar_to_seq_oracle(name, structure), structure.atom(0), T
        )
    elif engine == "surplus":
        result = extract_from_surplus(args.copies, oracles.surplus_oracle(name, args.copies), T)
    else:
        ground = list(range(max(T + 28, 16)))
        result = extract_from_partition_injection(
            oracles.partition_oracle(name, ground), ground, ground[:4], T
        )
    honest = name in ("fresh-max", "fresh-block", "same-set-reversed", "shift-encode", "fresh-singleton")
    ok = result.ok if honest else not result.ok
    check = {
        "id": f"extract-{engine}-{name}",
        "claim": "honest oracles stream pairwise-distinct values; cheating "
        "oracles are convicted by a collapse report",
        "params": {"engine": engine, "oracle": name, "T": T},
        "ok": ok,
        "details": {
            "values": len(result.values),
            "collapse": repr(result.collapse) if result.collapse else None,
        },
    }
    return _emit(_report("extract", check["params"], [check]), args.json, None)


def cmd_table(args) -> int:
    if args.scenario == "forbidden":
        cl = cardtable.forbidden_pattern_closure()
        ok = cl.contradiction is not None
        lines = []
        if ok:
            for f in cl.contradiction:
                lines.extend(cl.explain(f))
        check = {
            "id": "table-forbidden",
            "claim": "power below one-to-one sequences with the sequence kinds "
            "agreeing closes to a contradiction",
            "params": {"scenario": "forbidden"},
            "ok": ok,
            "details": {"trace": lines},
        }
        return _emit(_report("table", check["params"], [check]), args.json, None)
    if args.model is None:
        checks = labchecks.check_closure()
        return _emit(_report("table", {}, checks), args.json, None)
    if args.model not in cardtable.MODELS:
        print(f"unknown model {args.model!r}; have {list(cardtable.MODELS)}", file=sys.stderr)
        return USAGE_ERROR
    cl = cardtable.model_closure(args.model)
    facts = [cardtable.show_fact(f) for f in cl.sorted_facts()]
    check = {
        "id": f"table-{args.model}",
        "claim": "model axioms close without contradiction",
        "params": {"model": args.model},
        "ok": cl.contradiction is None,
        "details": {"facts": facts},
    }
    report = _report("table", check["params"], [check])
    if args.json:
        return _emit(report, True, None)
    print(f"closure of {args.model}: {len(cl.facts)} facts,", "consistent" if check["ok"] else "CONTRADICTION")
    for line in facts:
        print(" ", line)
    return 0 if check["ok"] else 1


def cmd_verify_witness(args) -> int:
    with open(args.path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        verify_witness_json(data)
    except Exception as exc:  # noqa: BLE001 - outcome, not crash
        print(f"INVALID witness: {exc}")
        return 1
    print("witness verified")
    return 0


def cmd_count_supports(args) -> int:
    from .atoms import DenseOrderStructure, PureSetStructure
    from .symsets import count_least_supported, count_supported

    if args.model == "mostowski":
        s = DenseOrderStructure()
        E = [s.atom(i) for i in range(args.n)]
    elif args.model == "fraenkel":
        s = PureSetStructure(args.n)
        E = s.atoms()
    else:
        print("count-supports knows the models: mostowski, fraenkel", file=sys.stderr)
        return USAGE_ERROR
    total = count_supported(s, E)
    least = count_least_supported(s, E)
    if args.json:
        print(json.dumps({"model": args.model, "n": args.n, "supported": total, "least": least}, sort_keys=True))
    else:
        print(f"{args.model}: |E| = {args.n}: {total} subsets supported by E, {least} with least support E")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="choiceless",
        description="desk-scale laboratory for cardinal arithmetic over atom "
        "universes with finite supports",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--budget", type=int, default=6, help="pair-model sample size")

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", default="all", choices=sorted(labchecks.SUITES))
    v.add_argument("--max-support", type=int, default=5)
    v.add_argument("--max-atoms", type=int, default=8)
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--stream-length", type=int, default=100)
    v.add_argument("--fast", action="store_true", help="trim the slowest checks")
    v.add_argument("--out", help="also write the JSON report to this path")
    common(v)
    v.set_defaults(fn=cmd_verify)

    r = sub.add_parser("refute", help="run a refutation engine against an oracle")
    r.add_argument("engine", choices=sorted(oracles.REFUTE_ORACLES))
    r.add_argument("--oracle", default=None, help="built-in name or @table.json")
    r.add_argument("--model", default=None, help="cross-check the engine's model")
    r.add_argument("--support", type=int, default=None)
    r.add_argument("--emit-witness", help="write the witness certificate to this path")
    common(r)
    r.set_defaults(fn=cmd_refute)

    e = sub.add_parser("extract", help="run an omega-sequence extractor")
    e.add_argument("engine", choices=sorted(oracles.EXTRACT_ORACLES))
    e.add_argument("--oracle", default=None)
    e.add_argument("-T", "--stream-length", type=int, default=100)
    e.add_argument("--copies", type=int, default=1, help="surplus engine: n")
    common(e)
    e.set_defaults(fn=cmd_extract)

    t = sub.add_parser("table", help="close model axioms and check the relation table")
    t.add_argument("--model", default=None)
    t.add_argument("--scenario", choices=["forbidden"], default=None)
    common(t)
    t.set_defaults(fn=cmd_table)

    w = sub.add_parser("verify-witness", help="re-check a witness certificate file")
    w.add_argument("path")
    w.set_defaults(fn=cmd_verify_witness)

    c = sub.add_parser("count-supports", help="count supported subsets over a support")
    c.add_argument("--model", default="mostowski")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(fn=cmd_count_supports)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "refute" and args.oracle is None:
        args.oracle = oracles.REFUTE_ORACLES[args.engine][0]
    if getattr(args, "command", None) == "extract" and args.oracle is None:
        args.oracle = oracles.EXTRACT_ORACLES[args.engine][0]
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())

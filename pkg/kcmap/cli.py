from __future__ import annotations
import argparse
import logging
import os
import random
import sys
from typing import Iterable, List, Optional, Sequence, TextIO

from kcmap.common.config import apply_settings, default_config_path, load_settings, parse_int_list, project_root, section
from kcmap.common.errors import EXIT_FALSE, EXIT_OK, EXIT_USAGE, CapabilityError, KcmapError
from kcmap.common.logging_config import init_logging
from kcmap.compile.compiler import TARGETS, compile_to
from kcmap.compile.dimacs import read_dimacs_file, write_clause_list, write_term_list
from kcmap.families.report import DEFAULT_TARGETS, run_size_report
from kcmap.families.generators import ALIASES
from kcmap.languages.capabilities import query_cell, query_supported
from kcmap.languages.tags import LanguageTag, QueryTag, parse_language, topo_languages
from kcmap.nnf.io import read_nnf_file, write_nnf
from kcmap.nnf.order import VarOrder
from kcmap.nnf.rewrite import cnf_clauses, dnf_terms
from kcmap.nnf.store import NnfStore, Sentence
from kcmap.oracle import truth_table
from kcmap.properties.classify import classify
from kcmap.queries.queries import QUERIES
from kcmap.transform import transformer

logger = logging.getLogger("cli")

TRANSFORM_OPS = ("cd", "fo", "sfo", "and", "or", "not")
ORACLE_OPS = ("models", "count", "equiv", "entails", "pi", "ip")


def _language(txt: str) -> LanguageTag:
    try:
        return parse_language(txt)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _order(txt: str) -> VarOrder:
    try:
        return VarOrder.of(parse_int_list(txt))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad variable order {txt!r}: {e}") from None


def _lits(txt: str) -> List[int]:
    try:
        return parse_int_list(txt)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {txt!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kcmap", description="Knowledge compilation map: compile, classify, query and transform NNF sentences")
    p.add_argument("--config", default=default_config_path(), help="Path to settings.yaml")
    p.add_argument("--seed", type=int, default=0, help="Seed for every random choice")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="Compile a DIMACS CNF into a target language")
    c.add_argument("input")
    c.add_argument("--from", dest="source_format", choices=["dimacs"], default="dimacs")
    c.add_argument("--to", dest="target", choices=sorted(TARGETS), required=True)
    c.add_argument("--order", type=_order, help="Variable order for OBDD targets, e.g. 3,1,2")
    c.add_argument("-o", "--out", help="Output .nnf path (default stdout)")
    c.add_argument("--export-list", help="Also write PI clauses / IP terms as a DIMACS-like list")

    k = sub.add_parser("classify", help="Report membership in every language")
    k.add_argument("input")
    k.add_argument("--order", type=_order, help="Check OBDD_< against this order")
    k.add_argument("--no-oracle", action="store_true", help="Structural checks only")

    q = sub.add_parser("query", help="Run a query within a language's polytime capabilities")
    q.add_argument("inputs", nargs="+")
    q.add_argument("--op", choices=sorted(QUERIES), required=True)
    q.add_argument("--lang", type=_language, help="Claimed language (default: most specific supporting one)")
    q.add_argument("--clause", type=_lits, help="Clause for ce, e.g. '1 -2'")
    q.add_argument("--term", type=_lits, help="Term for im, e.g. '1,-2'")
    q.add_argument("--over", type=_lits, help="Variable universe for ct/me")
    q.add_argument("--order", type=_order)
    q.add_argument("--force-oracle", action="store_true", help="Bypass the capability gate and ask the oracle")

    t = sub.add_parser("transform", help="Apply a transformation within a language")
    t.add_argument("inputs", nargs="+")
    t.add_argument("--op", choices=TRANSFORM_OPS, required=True)
    t.add_argument("--lang", type=_language, required=True)
    t.add_argument("--term", type=_lits, help="Term for cd")
    t.add_argument("--vars", type=_lits, help="Variables for fo / sfo")
    t.add_argument("--order", type=_order)
    t.add_argument("-o", "--out", help="Output .nnf path (default stdout)")

    b = sub.add_parser("bench", help="Size report over the separation families")
    b.add_argument("--family", action="append", help="parity|pairs|equiv|cm|ones|random (repeatable; default from settings)")
    b.add_argument("--range", dest="param_range", help="e.g. 2..10, or 1..2;1..3 for cm")
    b.add_argument("--targets", help="Comma-separated targets")
    b.add_argument("--workers", type=int)
    b.add_argument("--excel", help="Optional xlsx companion")
    b.add_argument("-o", "--out", help="CSV path")

    o = sub.add_parser("oracle", help="Brute-force truth-table answers")
    o.add_argument("inputs", nargs="+")
    o.add_argument("--op", choices=ORACLE_OPS, required=True)
    o.add_argument("--over", type=_lits)
    return p


def _emit(text: str, out: Optional[str], stdout: TextIO) -> None:
    if out:
        d = os.path.dirname(out)
        if d:
            os.makedirs(d, exist_ok=True)
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info("wrote %s", out)
    else:
        stdout.write(text)


def _read_all(paths: Sequence[str]) -> List[Sentence]:
    store = NnfStore()
    return [read_nnf_file(p, store) for p in paths]


def _arity(op: str, sentences: Sequence[Sentence], want: int) -> None:
    if len(sentences) != want:
        raise KcmapError(f"{op} takes {want} input file(s), got {len(sentences)}")


def _pick_language(op: QueryTag, sentences: Sequence[Sentence], order: Optional[VarOrder]) -> LanguageTag:
    """The most specific language every operand belongs to and that supports op."""
    common = None
    for s in sentences:
        definite = classify(s, order).definite
        common = definite if common is None else common & definite
    ranked = [t for t in topo_languages() if t in (common or ())]
    for tag in reversed(ranked):
        if query_supported(tag, op):
            logger.info("query %s runs as %s", op.value, tag.value, extra={"lang": tag.value})
            return tag
    deepest = ranked[-1] if ranked else LanguageTag.NNF
    raise CapabilityError(
        f"no language of the operands supports {op.value}; query capability matrix cell ({deepest.value}, {op.value}) is '{query_cell(deepest, op)}'",
        lang=deepest.value, op=op.value,
    )


def cmd_compile(args: argparse.Namespace, settings: dict, stdout: TextIO) -> int:
    f = read_dimacs_file(args.input)
    order = args.order
    if order is None and section(settings, "compile").get("order"):
        order = VarOrder.of(parse_int_list(section(settings, "compile")["order"]))
    if f.tautologies:
        logger.info("input has %d valid clauses", len(f.tautologies))
    out = compile_to(args.target, f, order)
    _emit(write_nnf(out), args.out, stdout)
    if args.export_list:
        if args.target == "pi":
            text = write_clause_list(f.num_vars, cnf_clauses(out))
        elif args.target == "ip":
            text = write_term_list(f.num_vars, dnf_terms(out))
        else:
            raise KcmapError("--export-list applies to the pi and ip targets")
        _emit(text, args.export_list, stdout)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, settings: dict, stdout: TextIO) -> int:
    s = _read_all([args.input])[0]
    report = classify(s, args.order, use_oracle=False if args.no_oracle else None)
    stdout.write("\n".join(report.lines()) + "\n")
    if report.order is not None:
        stdout.write(f"order {report.order}\n")
    return EXIT_OK


def cmd_query(args: argparse.Namespace, settings: dict, stdout: TextIO) -> int:
    sentences = _read_all(args.inputs)
    op = args.op
    tag = QueryTag(op.upper())
    _arity(op, sentences, 2 if op in ("eq", "se") else 1)
    lang = args.lang
    if lang is None:
        lang = LanguageTag.NNF if args.force_oracle else _pick_language(tag, sentences, args.order)
    common = {"order": args.order, "force_oracle": args.force_oracle}
    fn = QUERIES[op]
    if op in ("co", "va"):
        result = fn(sentences[0], lang, **common)
    elif op == "ce":
        if args.clause is None:
            raise KcmapError("ce needs --clause")
        result = fn(sentences[0], lang, args.clause, **common)
    elif op == "im":
        if args.term is None:
            raise KcmapError("im needs --term")
        result = fn(sentences[0], lang, args.term, **common)
    elif op in ("eq", "se"):
        result = fn(sentences[0], sentences[1], lang, **common)
    elif op == "ct":
        stdout.write(f"{fn(sentences[0], lang, over=args.over, **common)}\n")
        return EXIT_OK
    else:
        for m in fn(sentences[0], lang, over=args.over, **common):
            stdout.write(m.bitstring() + "\n")
        return EXIT_OK
    stdout.write("true\n" if result else "false\n")
    return EXIT_OK if result else EXIT_FALSE


def cmd_transform(args: argparse.Namespace, settings: dict, stdout: TextIO) -> int:
    sentences = _read_all(args.inputs)
    op, lang = args.op, args.lang
    if op == "cd":
        _arity(op, sentences, 1)
        if args.term is None:
            raise KcmapError("cd needs --term")
        out = transformer.condition(sentences[0], args.term, lang, args.order)
    elif op in ("fo", "sfo"):
        _arity(op, sentences, 1)
        if not args.vars:
            raise KcmapError(f"{op} needs --vars")
        if op == "fo":
            out = transformer.forget(sentences[0], args.vars, lang)
        else:
            _arity_vars(args.vars)
            out = transformer.forget_single(sentences[0], args.vars[0], lang, args.order)
    elif op == "not":
        _arity(op, sentences, 1)
        out = transformer.negate(sentences[0], lang, args.order)
    elif len(sentences) == 2:
        fn = transformer.apply_and if op == "and" else transformer.apply_or
        out = fn(sentences[0], sentences[1], lang, args.order)
    else:
        fn = transformer.conjoin_many if op == "and" else transformer.disjoin_many
        out = fn(sentences, lang)
    _emit(write_nnf(out), args.out, stdout)
    return EXIT_OK


def _arity_vars(xs: List[int]) -> None:
    if len(xs) != 1:
        raise KcmapError(f"sfo forgets exactly one variable, got {len(xs)}")


def cmd_bench(args: argparse.Namespace, settings: dict, stdout: TextIO) -> int:
    bench_cfg = dict(section(settings, "bench"))
    families = dict(bench_cfg.get("families") or {})
    if args.family:
        picked = {}
        for name in args.family:
            family = ALIASES.get(name, name)
            if family not in DEFAULT_TARGETS:
                raise KcmapError(f"unknown family {name!r}")
            fam_cfg = dict(families.get(family) or {})
            if args.param_range:
                fam_cfg["range"] = args.param_range
            if args.targets:
                fam_cfg["targets"] = args.targets
            picked[family] = fam_cfg
        families = picked
    bench_cfg["families"] = families or None
    bench_cfg["seed"] = args.seed
    if args.workers is not None:
        bench_cfg["workers"] = args.workers
    if args.excel:
        bench_cfg["excel"] = args.excel
    bench_cfg["output"] = args.out
    report = run_size_report(bench_cfg)
    if not args.out:
        stdout.write(report.rows.to_csv(index=False, lineterminator="\n"))
    for c in report.claims:
        if not c.ok:
            logger.warning("claim failed: %s (%s)", c.name, c.detail)
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_oracle(args: argparse.Namespace, settings: dict, stdout: TextIO) -> int:
    sentences = _read_all(args.inputs)
    op = args.op
    if op in ("equiv", "entails"):
        _arity(op, sentences, 2)
        fn = truth_table.equivalent_bf if op == "equiv" else truth_table.entails_bf
        result = fn(sentences[0], sentences[1])
        stdout.write("true\n" if result else "false\n")
        return EXIT_OK if result else EXIT_FALSE
    _arity(op, sentences, 1)
    s = sentences[0]
    if op == "models":
        models = truth_table.models_bf(s, args.over)
        _write_lines(models.bitstrings(), stdout)
    elif op == "count":
        stdout.write(f"{truth_table.count_bf(s, args.over)}\n")
    elif op == "pi":
        stdout.write(write_clause_list(s.store.num_vars, truth_table.prime_implicates_bf(s)))
    else:
        stdout.write(write_term_list(s.store.num_vars, truth_table.prime_implicants_bf(s)))
    return EXIT_OK


def _write_lines(lines: Iterable[str], stdout: TextIO) -> None:
    for line in lines:
        stdout.write(line + "\n")


COMMANDS = {
    "compile": cmd_compile,
    "classify": cmd_classify,
    "query": cmd_query,
    "transform": cmd_transform,
    "bench": cmd_bench,
    "oracle": cmd_oracle,
}


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    out = stdout if stdout is not None else sys.stdout

    settings = load_settings(args.config)
    init_logging(section(settings, "logging"), project_root())
    apply_settings(settings)
    random.seed(args.seed)
    logger.info("command %s argv=%s", args.command, list(argv) if argv is not None else sys.argv[1:])

    try:
        return COMMANDS[args.command](args, settings, out)
    except KcmapError as e:
        sys.stderr.write(f"kcmap {args.command}: {e}\n")
        # stage file only, stderr already has the line
        logger.info("%s failed (exit %d): %s", args.command, e.exit_code, e)
        return e.exit_code
    except OSError as e:
        sys.stderr.write(f"kcmap {args.command}: {e}\n")
        logger.info("%s failed: %s", args.command, e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

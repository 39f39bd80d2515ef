"""Command-line entry point: ``bitrace {trace,eval,biterms,stats}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from .corpus import TraceMatrix, load_rtm
from .errors import BitraceError, ConfigError, InputError, InvariantError
from .evaluation import compare, evaluate
from .ir import MODELS, CandidateLink, assign_ranks
from .pipeline import (
    RunConfig,
    extract_biterms,
    load_config,
    load_corpus,
    make_config,
    run_ir_only,
    run_trace,
    write_biterms,
    write_trace,
)

EXIT_OK, EXIT_CONFIG, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("bitrace")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors are config errors
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _input_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("inputs")
    g.add_argument("--config", type=Path, help="TOML run file; flags override its values")
    g.add_argument("--requirements", help="requirements file or directory")
    g.add_argument("--code", help="Java source directory or class-facts JSON")
    g.add_argument("--parses", help="CoNLL-U file or directory of *.conllu")
    g.add_argument("--stopwords", help="stop list, one word per line")
    g.add_argument("--relations", help="comma-separated dependency relation whitelist")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bitrace", description="Trace requirements to code classes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    trace = sub.add_parser("trace", help="rank candidate links for every requirement")
    _input_options(trace)
    trace.add_argument("--model", choices=MODELS)
    trace.add_argument("--lsi-k", type=int)
    trace.add_argument("--no-enrich", action="store_true", help="do not index consensual biterms")
    trace.add_argument("--no-adjust", action="store_true", help="skip IR value adjustment")
    trace.add_argument("--lambda-only", action="store_true", help="adjust with the global weight only")
    trace.add_argument("--penalty", type=float, help="multiplier for links sharing no biterm")
    trace.add_argument("--ir-only", action="store_true", help="plain retrieval, skipping biterm extraction")
    trace.add_argument("--out", help="output directory")

    bit = sub.add_parser("biterms", help="write candidate and consensual biterm inventories")
    _input_options(bit)
    bit.add_argument("--out", help="output directory")

    ev = sub.add_parser("eval", help="score a ranked run against a trace matrix")
    ev.add_argument("ranked", type=Path, help="reranked.csv or similarity.csv")
    ev.add_argument("--rtm", type=Path, required=True, help="gold links, CSV req_id,class_id")
    ev.add_argument("--against", type=Path, help="second run to compare with")
    ev.add_argument("--out", type=Path, help="output directory (default: print JSON)")

    st = sub.add_parser("stats", help="summarize a corpus")
    _input_options(st)
    st.add_argument("--rtm", help="gold links to summarize")
    return parser


def _config(args: argparse.Namespace, need_inputs: bool = True) -> RunConfig:
    values = load_config(args.config) if getattr(args, "config", None) else {}
    overrides = {
        "requirements": args.requirements,
        "code": args.code,
        "parses": args.parses,
        "stopwords": args.stopwords,
        "out_dir": getattr(args, "out", None),
        "rtm": getattr(args, "rtm", None),
    }
    if args.relations:
        overrides["relations"] = tuple(sorted({r.strip() for r in args.relations.split(",") if r.strip()}))
    if args.command == "trace":
        overrides.update(model=args.model, lsi_k=args.lsi_k, penalty=args.penalty)
        if args.no_enrich:
            overrides["enrich"] = False
        if args.no_adjust:
            overrides["adjust"] = False
        if args.lambda_only:
            overrides["use_theta"] = False
        if args.model and args.model != "lsi" and args.lsi_k is None:
            values.pop("lsi_k", None)
    return make_config(values, **overrides).validate(need_inputs)


def cmd_trace(args: argparse.Namespace) -> int:
    config = _config(args)
    result = run_ir_only(config) if args.ir_only else run_trace(config)
    for path in write_trace(result, config.out_dir):
        log.info("wrote %s", path)
    return EXIT_OK


def cmd_biterms(args: argparse.Namespace) -> int:
    config = _config(args)
    stage_out = extract_biterms(load_corpus(config), config)
    for path in write_biterms(stage_out, config.out_dir):
        log.info("wrote %s", path)
    print(f"{len(stage_out.consensual)} consensual biterm(s)")
    return EXIT_OK


def read_ranked(path: Path) -> dict[str, list[CandidateLink]]:
    """Load a run written by ``trace``; the final score column decides order."""
    try:
        text = path.read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read: {exc.strerror}", source=str(path)) from None
    reader = csv.DictReader(io.StringIO(text, newline=""))
    cols = reader.fieldnames or []
    score_col = "ir_new" if "ir_new" in cols else "score" if "score" in cols else None
    if not {"req_id", "class_id"} <= set(cols) or score_col is None:
        raise InputError("expected columns req_id, class_id and ir_new or score", source=str(path), line=1)
    per_query: dict[str, list[CandidateLink]] = {}
    for row in reader:
        try:
            score = float(row[score_col])
            initial = float(row.get("ir_initial") or score)
        except (TypeError, ValueError):
            raise InputError(f"bad score {row[score_col]!r}", source=str(path), line=reader.line_num) from None
        link = CandidateLink(row["req_id"], row["class_id"], initial, ir_new=score)
        per_query.setdefault(link.req_id, []).append(link)
    if not per_query:
        raise InputError("no ranked links", source=str(path))
    return {r: assign_ranks(links) for r, links in per_query.items()}


def _check_ids(per_query: dict[str, list[CandidateLink]], rtm: TraceMatrix, source: Path) -> None:
    universe = {(l.req_id, l.class_id) for links in per_query.values() for l in links}
    missing = sorted(set(rtm.links) - universe)
    if missing:
        shown = ", ".join(f"{r}->{c}" for r, c in missing[:10])
        more = f" (and {len(missing) - 10} more)" if len(missing) > 10 else ""
        raise InputError(f"gold links absent from the ranked run: {shown}{more}", source=str(source))


def cmd_eval(args: argparse.Namespace) -> int:
    rtm = load_rtm(args.rtm)
    if not len(rtm):
        raise InputError("trace matrix has no links", source=str(args.rtm))
    run = read_ranked(args.ranked)
    _check_ids(run, rtm, args.ranked)
    report = evaluate(run, rtm)
    payload: dict = {"run": report.to_json()}
    if args.against:
        other = read_ranked(args.against)
        _check_ids(other, rtm, args.against)
        other_report = evaluate(other, rtm)
        payload["against"] = other_report.to_json()
        payload["comparison"] = compare(report.f_at_recall, other_report.f_at_recall).to_json()
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.json").write_text(text, encoding="utf-8")
        (args.out / "pr_curve.csv").write_text(report.pr_csv(), encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    config = _config(args)
    corpus = load_corpus(config)
    kinds = Counter(r.kind.value for r in corpus.requirements)
    parts = Counter(p for r in corpus.requirements for p in r.parts)
    slots = Counter(slot for c in corpus.classes for slot, _ in c.identifiers())
    out: dict = {
        "requirements": len(corpus.requirements),
        "requirement_kinds": dict(sorted(kinds.items())),
        "requirement_parts": dict(sorted(parts.items())),
        "classes": len(corpus.classes),
        "identifier_slots": dict(sorted(slots.items())),
        "comments": sum(len(c.comments) for c in corpus.classes),
        "stopwords": len(corpus.stop),
    }
    if config.rtm:
        rtm = load_rtm(config.rtm, corpus.requirements, corpus.classes)
        out["trace_links"] = len(rtm)
        out["traced_requirements"] = len(rtm.requirement_ids)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


COMMANDS = {"trace": cmd_trace, "biterms": cmd_biterms, "eval": cmd_eval, "stats": cmd_stats}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"bitrace: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"bitrace: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"bitrace: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except BitraceError as exc:  # pragma: no cover - every subclass is handled above
        print(f"bitrace: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

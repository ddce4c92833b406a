"""Command-line front end: extract, combine, score, apply.

Exit codes: 0 success, 1 usage error, 2 data/validation error (bad corpora,
malformed M2, missing files), so scripts can tell operator mistakes from
corpus problems.  Commands that write an output file also write a JSON run
manifest beside it (resolved configuration plus input/output SHA-256
digests); re-running with the same inputs and configuration reproduces the
outputs byte for byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .combiner import (
    REWARD_SET_SPECS,
    STRATEGIES,
    CombineConfig,
    combine_corpus,
)
from .edit_core import ValidationError, apply_edits, extract_edits
from .m2_io import (
    Annotation,
    M2Entry,
    emit_m2,
    load_hypothesis_sets,
    load_parallel,
    load_sentences,
    parse_m2,
    primary_edit_set,
)
from .rewards import REWARD_KINDS, RewardConfig
from .scorer import ScoreReport, score_corpus

OK = 0
USAGE_ERROR = 1
DATA_ERROR = 2

THREADS_ENV_VAR = "EDIT_MBR_THREADS"


class UsageError(Exception):
    """Operator error detected after argument parsing (exit status 1)."""


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits usage errors with status 2 by default; 2 is reserved
    # for data errors here, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record: resolved configuration and content digests."""

    version: str
    command: str
    config: dict
    inputs: dict
    outputs: dict

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(manifest_path, command: str, config: dict, inputs, outputs) -> None:
    manifest = RunManifest(
        version=__version__,
        command=command,
        config=config,
        inputs={str(p): _sha256(p) for p in inputs},
        outputs={str(p): _sha256(p) for p in outputs},
    )
    Path(manifest_path).write_text(manifest.to_json(), encoding="utf-8")


def _resolve_threads(flag: int) -> int:
    """Worker thread count: the environment variable overrides the flag; 0 = all cores."""
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            flag = int(env)
        except ValueError:
            raise UsageError(f"{THREADS_ENV_VAR} must be an integer, got {env!r}") from None
    if flag <= 0:
        return os.cpu_count() or 1
    return flag


def _write_lines(path, lines: Sequence[str]) -> None:
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def cmd_extract(args) -> int:
    sources = load_sentences(args.source)
    hyps = load_sentences(args.hypothesis)
    if len(sources) != len(hyps):
        raise ValidationError(
            f"{args.source} has {len(sources)} lines but {args.hypothesis} has {len(hyps)}"
        )
    entries = [
        M2Entry(src, (Annotation(0, extract_edits(src, hyp)),))
        for src, hyp in zip(sources, hyps)
    ]
    Path(args.out).write_text(emit_m2(entries), encoding="utf-8")
    config = {"source": args.source, "hypothesis": args.hypothesis, "out": args.out}
    _write_manifest(
        args.manifest or f"{args.out}.manifest.json",
        "extract",
        config,
        [args.source, args.hypothesis],
        [args.out],
    )
    return OK


def cmd_combine(args) -> int:
    try:
        config = CombineConfig(
            strategy=args.method,
            reward=RewardConfig(kind=args.reward, beta=args.beta),
            reward_set=args.reward_set,
            greedy_pool_threshold=args.pool_votes,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    threads = _resolve_threads(args.threads)
    corpus = load_parallel(args.source, args.hypotheses)
    results = combine_corpus(corpus, config, threads=threads)

    if args.out_format == "m2":
        entries = [
            M2Entry(entry.source, (Annotation(0, result.chosen.edit_set),))
            for entry, result in zip(corpus.entries, results)
        ]
        payload = emit_m2(entries)
    else:
        lines = [
            apply_edits(entry.source, result.chosen.edit_set).text()
            for entry, result in zip(corpus.entries, results)
        ]
        payload = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)

    if args.trace:
        records = []
        for index, result in enumerate(results):
            for step in result.trace:
                records.append(
                    json.dumps(
                        {
                            "sentence": index,
                            "edit": {
                                "start": step.edit.start,
                                "end": step.edit.end,
                                "replacement": list(step.edit.replacement),
                            },
                            "reward_before": f"{step.reward_before:.6f}",
                            "reward_after": f"{step.reward_after:.6f}",
                        },
                        sort_keys=True,
                    )
                )
        _write_lines(args.trace, records)
    if args.report:
        for index, result in enumerate(results):
            cells = " ".join(
                f"{candidate.label}={score:.6f}"
                for candidate, score in zip(result.selection, result.expected_rewards)
            )
            print(f"sent {index} chosen={result.chosen.label} {cells}")

    resolved = {
        "source": args.source,
        "hypotheses": list(args.hypotheses),
        "out": args.out,
        "out_format": args.out_format,
        "method": args.method,
        "reward": args.reward,
        "beta": args.beta,
        "pool_votes": args.pool_votes,
        "reward_set": args.reward_set,
        "threads": threads,
        "trace": args.trace,
    }
    manifest_path = args.manifest or (f"{args.out}.manifest.json" if args.out else None)
    if manifest_path:
        outputs = [args.out] if args.out else []
        if args.trace:
            outputs.append(args.trace)
        _write_manifest(
            manifest_path, "combine", resolved, [args.source, *args.hypotheses], outputs
        )
    return OK


def _format_prf(report: ScoreReport) -> str:
    return (
        f"P {report.precision:.4f} R {report.recall:.4f} "
        f"F{report.beta:g} {report.f:.4f}"
    )


def cmd_score(args) -> int:
    if args.beta <= 0:
        raise UsageError(f"beta must be positive, got {args.beta}")
    sources = load_sentences(args.source)
    hyp_sets = load_hypothesis_sets(args.hypothesis, sources, args.source)
    ref_entries = parse_m2(Path(args.reference).read_text(encoding="utf-8"))
    if len(ref_entries) != len(sources):
        raise ValidationError(
            f"{args.reference}: {len(ref_entries)} entries, but {args.source} has {len(sources)} lines"
        )
    ref_sets = []
    for index, entry in enumerate(ref_entries):
        if entry.source != sources[index]:
            raise ValidationError(
                f"{args.reference}: entry {index + 1} source differs from {args.source}"
            )
        if not entry.annotations:
            raise ValidationError(f"{args.reference}: entry {index + 1} has no annotators")
        ref_sets.append([ann.edits for ann in entry.annotations])
    report = score_corpus(hyp_sets, ref_sets, beta=args.beta)
    if args.per_sentence:
        for index, sentence in enumerate(report.per_sentence):
            print(f"{index} {_format_prf(sentence)}")
    print(_format_prf(report))
    if args.manifest:
        config = {
            "source": args.source,
            "hypothesis": args.hypothesis,
            "reference": args.reference,
            "beta": args.beta,
            "per_sentence": args.per_sentence,
        }
        _write_manifest(
            args.manifest,
            "score",
            config,
            [args.source, args.hypothesis, args.reference],
            [],
        )
    return OK


def cmd_apply(args) -> int:
    sources = load_sentences(args.source)
    entries = parse_m2(Path(args.m2).read_text(encoding="utf-8"))
    if len(entries) != len(sources):
        raise ValidationError(
            f"{args.m2}: {len(entries)} entries, but {args.source} has {len(sources)} lines"
        )
    lines = []
    for index, (src, entry) in enumerate(zip(sources, entries)):
        if entry.source != src:
            raise ValidationError(
                f"{args.m2}: entry {index + 1} source differs from {args.source}"
            )
        lines.append(apply_edits(src, primary_edit_set(entry)).text())
    _write_lines(args.out, lines)
    config = {"source": args.source, "m2": args.m2, "out": args.out}
    _write_manifest(
        args.manifest or f"{args.out}.manifest.json",
        "apply",
        config,
        [args.source, args.m2],
        [args.out],
    )
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="edit-mbr",
        description="Combine and evaluate grammatical-error-correction system outputs in edit space.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("extract", help="align a hypothesis corpus against its sources and write M2")
    p.add_argument("source", help="source corpus, one tokenized sentence per line")
    p.add_argument("hypothesis", help="hypothesis corpus, parallel to the source")
    p.add_argument("out", help="output M2 path")
    p.add_argument("--manifest", help="manifest path (default: OUT.manifest.json)")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("combine", help="combine hypothesis corpora into a single output")
    p.add_argument("source", help="source corpus")
    p.add_argument(
        "hypotheses",
        nargs="+",
        metavar="hypothesis",
        help="hypothesis files; .m2 files are parsed, anything else is aligned text",
    )
    p.add_argument("-o", "--out", help="output path (default: stdout)")
    p.add_argument("--method", choices=STRATEGIES, default="mbr")
    p.add_argument("--reward", choices=REWARD_KINDS, default="f")
    p.add_argument("--beta", type=float, default=0.5, help="beta for the F rewards")
    p.add_argument(
        "--pool-votes",
        type=int,
        default=2,
        help="vote threshold for the greedy insertion pool",
    )
    p.add_argument("--reward-set", choices=REWARD_SET_SPECS, default="base")
    p.add_argument("--out-format", choices=("text", "m2"), default="text")
    p.add_argument("--report", action="store_true", help="print per-candidate expected rewards")
    p.add_argument("--trace", help="write one JSONL record per greedy insertion to this path")
    p.add_argument(
        "--threads",
        type=int,
        default=0,
        help=f"sentence-level worker threads (0 = all cores); {THREADS_ENV_VAR} overrides",
    )
    p.add_argument("--manifest", help="manifest path (default: OUT.manifest.json when -o is given)")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("score", help="edit-level P/R/F of a hypothesis corpus against reference M2")
    p.add_argument("source", help="source corpus")
    p.add_argument("hypothesis", help="hypothesis file (text or .m2)")
    p.add_argument("reference", help="reference M2 file (multi-annotator supported)")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--per-sentence", action="store_true", help="also print one line per sentence")
    p.add_argument("--manifest", help="write a manifest to this path")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("apply", help="apply annotator-0 edits from an M2 file to source text")
    p.add_argument("source", help="source corpus")
    p.add_argument("m2", help="M2 file with the edits to apply")
    p.add_argument("out", help="output text path")
    p.add_argument("--manifest", help="manifest path (default: OUT.manifest.json)")
    p.set_defaults(func=cmd_apply)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"edit-mbr: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (ValidationError, OSError) as exc:
        print(f"edit-mbr: error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())

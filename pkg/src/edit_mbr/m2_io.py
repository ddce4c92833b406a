"""M2 annotation format and plain-text corpus I/O.

The M2 format is line oriented:

    S <tokenized source sentence>
    A <start> <end>|||<type>|||<replacement>|||REQUIRED|||-NONE-|||<annotator>

An ``A -1 -1|||noop|||...`` line records an annotator proposing no edits, and
a blank line terminates each entry.  Replacements are space-tokenized;
``-NONE-`` (or an empty field) means an empty replacement.  Parsing is
tolerant of CRLF line endings and non-canonical flag fields; emission is
canonical (LF, ``REQUIRED``/``-NONE-`` flags, annotators ascending, edits in
span order, ``UNK`` for untyped edits), so parse(emit(x)) == x and canonical
files re-emit byte-identically.

Plain-text corpora hold one tokenized sentence per line, UTF-8.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from .edit_core import (
    Candidate,
    Edit,
    EditSet,
    Sentence,
    ValidationError,
    extract_edits,
    tokenize,
)

_NOOP_TYPE = "noop"
_EMPTY_REPLACEMENT = "-NONE-"


class M2ParseError(ValidationError):
    """An M2 file is malformed or fails edit-set validation."""


@dataclass(frozen=True, slots=True)
class Annotation:
    """One annotator's edit set; ``types`` carries per-edit type strings.

    Omitting ``types`` fills in ``UNK`` for every edit.
    """

    annotator: int
    edits: EditSet
    types: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.annotator < 0:
            raise ValidationError(f"annotator id must be >= 0, got {self.annotator}")
        if not self.types and self.edits.edits:
            object.__setattr__(self, "types", ("UNK",) * len(self.edits))
        object.__setattr__(self, "types", tuple(self.types))
        if len(self.types) != len(self.edits):
            raise ValidationError(
                f"annotator {self.annotator}: {len(self.types)} type strings for {len(self.edits)} edits"
            )


@dataclass(frozen=True, slots=True)
class M2Entry:
    """A source sentence plus per-annotator edit sets."""

    source: Sentence
    annotations: tuple[Annotation, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "annotations", tuple(self.annotations))
        seen: set[int] = set()
        for ann in self.annotations:
            if ann.annotator in seen:
                raise ValidationError(f"duplicate annotator id {ann.annotator}")
            seen.add(ann.annotator)
            if ann.edits.source_len != len(self.source):
                raise ValidationError(
                    f"annotator {ann.annotator} edits built for {ann.edits.source_len} "
                    f"tokens, source has {len(self.source)}"
                )


@dataclass(frozen=True, slots=True)
class CorpusEntry:
    """One source sentence with its per-system hypothesis candidates."""

    source: Sentence
    systems: tuple[Candidate, ...]


@dataclass(frozen=True, slots=True)
class Corpus:
    """Parallel corpus: every entry carries the same systems in the same order."""

    entries: tuple[CorpusEntry, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def primary_edit_set(entry: M2Entry) -> EditSet:
    """The lowest-id annotator's edits; empty when the entry has none."""
    if entry.annotations:
        return entry.annotations[0].edits
    return EditSet(len(entry.source))


def parse_m2(text: str) -> list[M2Entry]:
    """Parse M2 file content into entries.

    Raises ``M2ParseError`` (with a line number) for malformed lines,
    out-of-range edit spans, or overlapping edits within one annotator.
    """
    entries: list[M2Entry] = []
    source: Sentence | None = None
    pending: dict[int, list[tuple[Edit, str]]] = {}
    entry_line = 0

    def close() -> None:
        nonlocal source, pending
        if source is None:
            return
        annotations = []
        for annotator in sorted(pending):
            pairs = pending[annotator]
            unique: list[tuple[Edit, str]] = []
            seen: set[Edit] = set()
            for edit, type_str in pairs:
                if edit not in seen:
                    seen.add(edit)
                    unique.append((edit, type_str))
            unique.sort(key=lambda pair: pair[0].sort_key())
            try:
                edit_set = EditSet(len(source), tuple(e for e, _ in unique))
            except ValidationError as exc:
                raise M2ParseError(
                    f"entry at line {entry_line}, annotator {annotator}: {exc}"
                ) from exc
            annotations.append(Annotation(annotator, edit_set, tuple(t for _, t in unique)))
        entries.append(M2Entry(source, tuple(annotations)))
        source = None
        pending = {}

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            close()
            continue
        if line == "S" or line.startswith("S "):
            close()
            try:
                source = Sentence(tuple(line[2:].split()))
            except ValidationError as exc:
                raise M2ParseError(f"line {line_no}: {exc}") from exc
            pending = {}
            entry_line = line_no
        elif line.startswith("A "):
            if source is None:
                raise M2ParseError(f"line {line_no}: annotation line before any source line")
            fields = line[2:].split("|||")
            if len(fields) != 6:
                raise M2ParseError(
                    f"line {line_no}: expected 6 '|||'-separated fields, got {len(fields)}"
                )
            span = fields[0].split()
            if len(span) != 2:
                raise M2ParseError(f"line {line_no}: edit span must be two integers")
            try:
                start, end = int(span[0]), int(span[1])
            except ValueError as exc:
                raise M2ParseError(f"line {line_no}: non-integer edit span") from exc
            try:
                annotator = int(fields[5].strip())
            except ValueError as exc:
                raise M2ParseError(f"line {line_no}: non-integer annotator id") from exc
            if annotator < 0:
                raise M2ParseError(f"line {line_no}: negative annotator id {annotator}")
            if start == -1 and end == -1:
                pending.setdefault(annotator, [])
                continue
            if not 0 <= start <= end <= len(source):
                raise M2ParseError(
                    f"line {line_no}: edit span {start} {end} out of range for "
                    f"source of {len(source)} tokens"
                )
            replacement_field = fields[2]
            replacement = (
                ()
                if replacement_field in (_EMPTY_REPLACEMENT, "")
                else tuple(replacement_field.split())
            )
            try:
                edit = Edit(start, end, replacement)
            except ValidationError as exc:
                raise M2ParseError(f"line {line_no}: {exc}") from exc
            pending.setdefault(annotator, []).append((edit, fields[1]))
        else:
            raise M2ParseError(f"line {line_no}: unrecognized line {line[:40]!r}")
    close()
    return entries


def emit_m2(entries: Sequence[M2Entry]) -> str:
    """Serialize entries to canonical M2 text (inverse of ``parse_m2``)."""
    blocks: list[str] = []
    for entry in entries:
        lines = ["S " + entry.source.text() if len(entry.source) else "S"]
        for ann in entry.annotations:
            if not ann.edits.edits:
                lines.append(
                    f"A -1 -1|||{_NOOP_TYPE}|||{_EMPTY_REPLACEMENT}|||REQUIRED|||-NONE-|||{ann.annotator}"
                )
                continue
            for edit, type_str in zip(ann.edits, ann.types):
                replacement = " ".join(edit.replacement) if edit.replacement else _EMPTY_REPLACEMENT
                lines.append(
                    f"A {edit.start} {edit.end}|||{type_str}|||{replacement}"
                    f"|||REQUIRED|||-NONE-|||{ann.annotator}"
                )
        blocks.append("\n".join(lines) + "\n\n")
    return "".join(blocks)


def load_sentences(path) -> list[Sentence]:
    """Read a one-sentence-per-line UTF-8 corpus."""
    text = Path(path).read_text(encoding="utf-8")
    return [tokenize(line) for line in text.splitlines()]


def load_hypothesis_sets(path, sources: Sequence[Sentence], source_name) -> list[EditSet]:
    """One edit set per source line from a text or M2 hypothesis file.

    ``.m2`` files are parsed (their sources must match ``sources``); anything
    else is read as text and aligned with ``extract_edits``.
    """
    if str(path).lower().endswith(".m2"):
        entries = parse_m2(Path(path).read_text(encoding="utf-8"))
        if len(entries) != len(sources):
            raise ValidationError(
                f"{path}: {len(entries)} entries, but {source_name} has {len(sources)} lines"
            )
        sets = []
        for index, entry in enumerate(entries):
            if entry.source != sources[index]:
                raise ValidationError(
                    f"{path}: entry {index + 1} source differs from {source_name}"
                )
            sets.append(primary_edit_set(entry))
        return sets
    hyps = load_sentences(path)
    if len(hyps) != len(sources):
        raise ValidationError(
            f"{path}: {len(hyps)} lines, but {source_name} has {len(sources)} lines"
        )
    return [extract_edits(src, hyp) for src, hyp in zip(sources, hyps)]


def _labels_for(paths) -> list[str]:
    labels: list[str] = []
    for path in paths:
        stem = Path(path).stem or str(path)
        label = stem
        suffix = 2
        while label in labels:
            label = f"{stem}.{suffix}"
            suffix += 1
        labels.append(label)
    return labels


def load_parallel(source_path, hyp_paths: Sequence) -> Corpus:
    """Pair line i of the source file with line i of every hypothesis file.

    Hypothesis edits are extracted on load; ``.m2`` hypothesis files are
    parsed instead.  System labels come from the file stems (deduplicated).
    """
    sources = load_sentences(source_path)
    labels = _labels_for(hyp_paths)
    columns = [load_hypothesis_sets(path, sources, source_path) for path in hyp_paths]
    entries = tuple(
        CorpusEntry(
            source=source,
            systems=tuple(
                Candidate(columns[s][i], labels[s]) for s in range(len(hyp_paths))
            ),
        )
        for i, source in enumerate(sources)
    )
    return Corpus(entries)

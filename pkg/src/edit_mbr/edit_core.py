"""Token-level edits: extraction by alignment, application, and set algebra.

A sentence is a whitespace-free token sequence.  An edit replaces the source
span [start, end) with a replacement token sequence; an edit set is a
canonical, conflict-free collection of edits describing one full correction
of a sentence.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass


class ValidationError(ValueError):
    """A sentence, edit, or edit set violates its structural contract."""


def _check_token(token: str) -> None:
    if not token:
        raise ValidationError("tokens must be non-empty")
    if any(ch.isspace() for ch in token):
        raise ValidationError(f"token contains whitespace: {token!r}")


@dataclass(frozen=True, slots=True)
class Sentence:
    """An immutable sequence of whitespace-free tokens."""

    tokens: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        for token in self.tokens:
            _check_token(token)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    def text(self) -> str:
        return " ".join(self.tokens)


def tokenize(text: str) -> Sentence:
    """Split a raw line on runs of whitespace; an empty line gives an empty sentence."""
    return Sentence(tuple(text.split()))


@dataclass(frozen=True, slots=True)
class Edit:
    """Replace source tokens [start, end) with ``replacement``.

    ``start == end`` is a pure insertion before token ``start``; an empty
    replacement over a non-empty span is a deletion.
    """

    start: int
    end: int
    replacement: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "replacement", tuple(self.replacement))
        if self.start < 0 or self.end < self.start:
            raise ValidationError(f"bad edit span [{self.start}, {self.end})")
        if self.start == self.end and not self.replacement:
            raise ValidationError("zero-width edit with empty replacement is a no-op")
        for token in self.replacement:
            _check_token(token)

    def sort_key(self) -> tuple:
        return (self.start, self.end, self.replacement)


def edit_equal(first: Edit, second: Edit) -> bool:
    """True iff span and replacement are all identical."""
    return first == second


def conflicts(first: Edit, second: Edit) -> bool:
    """Whether two distinct edits cannot coexist in one edit set.

    Distinct edits conflict when their half-open spans intersect (which also
    covers an insertion point strictly inside the other's span) or when both
    are insertions at the same position.  Edits that merely touch at a span
    boundary are compatible.
    """
    if first == second:
        return False
    if first.start < second.end and second.start < first.end:
        return True
    return first.start == first.end == second.start == second.end


@dataclass(frozen=True, slots=True)
class EditSet:
    """Canonical, conflict-free edit collection for a source of ``source_len`` tokens."""

    source_len: int
    edits: tuple[Edit, ...] = ()

    def __post_init__(self) -> None:
        if self.source_len < 0:
            raise ValidationError("source_len must be >= 0")
        ordered = sorted(set(self.edits), key=Edit.sort_key)
        object.__setattr__(self, "edits", tuple(ordered))
        for edit in self.edits:
            if edit.end > self.source_len:
                raise ValidationError(
                    f"edit {edit!r} exceeds source length {self.source_len}"
                )
        for i, first in enumerate(self.edits):
            for second in self.edits[i + 1 :]:
                if second.start > first.end:
                    break
                if conflicts(first, second):
                    raise ValidationError(f"conflicting edits: {first!r} vs {second!r}")

    def __len__(self) -> int:
        return len(self.edits)

    def __iter__(self) -> Iterator[Edit]:
        return iter(self.edits)

    def __contains__(self, edit: Edit) -> bool:
        return edit in self.edits

    def as_frozenset(self) -> frozenset[Edit]:
        return frozenset(self.edits)


@dataclass(frozen=True, slots=True)
class Candidate:
    """An edit set plus a provenance label (system name, vote-m, greedy)."""

    edit_set: EditSet
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValidationError("candidate label must be non-empty")


def apply_edits(source: Sentence, edits: EditSet) -> Sentence:
    """Apply an edit set to its source sentence.

    Unedited spans and replacements are concatenated left to right.  The edit
    set must have been built for a source of this length; internal validity
    (ordering, no conflicts, spans in range) is guaranteed by ``EditSet``.
    """
    if edits.source_len != len(source):
        raise ValidationError(
            f"edit set built for {edits.source_len} tokens, source has {len(source)}"
        )
    out: list[str] = []
    cursor = 0
    for edit in edits:
        out.extend(source.tokens[cursor : edit.start])
        out.extend(edit.replacement)
        cursor = edit.end
    out.extend(source.tokens[cursor:])
    return Sentence(tuple(out))


def extract_edits(
    source: Sentence, hypothesis: Sentence, merge_adjacent: bool = True
) -> EditSet:
    """Extract the edit set that turns ``source`` into ``hypothesis``.

    Token-level Levenshtein alignment with unit insert/delete/substitute
    costs; backtrace ties resolve match > substitute > delete > insert, so
    extraction is canonical.  With ``merge_adjacent`` (the default) maximal
    runs of adjacent non-match operations collapse into single edits.
    Otherwise every operation becomes its own edit, except insertion runs at
    one position, which stay together because same-position insertions cannot
    coexist in a valid edit set.
    """
    src = source.tokens
    hyp = hypothesis.tokens
    n, m = len(src), len(hyp)
    dp = [list(range(m + 1))] + [[i] + [0] * m for i in range(1, n + 1)]
    for i in range(1, n + 1):
        row = dp[i]
        prev = dp[i - 1]
        s_tok = src[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (s_tok != hyp[j - 1])
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if row[j - 1] + 1 < best:
                best = row[j - 1] + 1
            row[j] = best
    ops: list[str] = []
    i, j = n, m
    while i > 0 or j > 0:
        here = dp[i][j]
        if i > 0 and j > 0 and src[i - 1] == hyp[j - 1] and here == dp[i - 1][j - 1]:
            ops.append("match")
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and src[i - 1] != hyp[j - 1] and here == dp[i - 1][j - 1] + 1:
            ops.append("sub")
            i -= 1
            j -= 1
        elif i > 0 and here == dp[i - 1][j] + 1:
            ops.append("del")
            i -= 1
        else:
            ops.append("ins")
            j -= 1
    ops.reverse()
    return EditSet(n, tuple(_ops_to_edits(ops, hyp, merge_adjacent)))


def _ops_to_edits(ops: list[str], hyp: tuple[str, ...], merge_adjacent: bool) -> list[Edit]:
    spans: list[list[int]] = []  # [src_start, src_end, hyp_start, hyp_end]
    run: list[int] | None = None
    si = hj = 0
    for op in ops:
        if op == "match":
            run = None
            si += 1
            hj += 1
            continue
        if merge_adjacent:
            if run is None:
                run = [si, si, hj, hj]
                spans.append(run)
            if op != "ins":
                si += 1
            if op != "del":
                hj += 1
            run[1], run[3] = si, hj
        elif op == "sub":
            spans.append([si, si + 1, hj, hj + 1])
            si += 1
            hj += 1
        elif op == "del":
            spans.append([si, si + 1, hj, hj])
            si += 1
        else:
            last = spans[-1] if spans else None
            if last is not None and last[0] == last[1] == si and last[3] == hj:
                last[3] += 1
            else:
                spans.append([si, si, hj, hj + 1])
            hj += 1
    return [Edit(s0, s1, hyp[h0:h1]) for s0, s1, h0, h1 in spans]


def _require_shared_source(sets: Sequence[EditSet]) -> None:
    if not sets:
        raise ValueError("need at least one edit set")
    lengths = {s.source_len for s in sets}
    if len(lengths) > 1:
        raise ValidationError(f"edit sets disagree on source length: {sorted(lengths)}")


def count_votes(edit: Edit, sets: Sequence[EditSet]) -> int:
    """Number of edit sets containing an identical edit."""
    return sum(edit in s for s in sets)


def intersect(sets: Sequence[EditSet]) -> EditSet:
    """Edits present in every set."""
    _require_shared_source(sets)
    first, rest = sets[0], sets[1:]
    kept = [e for e in first if all(e in s for s in rest)]
    return EditSet(first.source_len, tuple(kept))


def vote_set(
    sets: Sequence[EditSet], min_votes: int, priority: Sequence[int] | None = None
) -> EditSet:
    """Conflict-resolved set of edits proposed by at least ``min_votes`` sets.

    Conflicts are resolved greedily: higher vote count wins, ties go to the
    edit first proposed by the earliest system in ``priority`` (input order
    when omitted), then to span position.
    """
    _require_shared_source(sets)
    if min_votes < 1:
        raise ValueError("min_votes must be >= 1")
    order = list(range(len(sets))) if priority is None else list(priority)
    if sorted(order) != list(range(len(sets))):
        raise ValueError("priority must be a permutation of the system indices")
    rank = {system: position for position, system in enumerate(order)}
    votes: dict[Edit, int] = {}
    best_rank: dict[Edit, int] = {}
    for index, edit_set in enumerate(sets):
        r = rank[index]
        for edit in edit_set:
            votes[edit] = votes.get(edit, 0) + 1
            if edit not in best_rank or r < best_rank[edit]:
                best_rank[edit] = r
    eligible = [e for e, v in votes.items() if v >= min_votes]
    eligible.sort(key=lambda e: (-votes[e], best_rank[e]) + e.sort_key())
    kept: list[Edit] = []
    for edit in eligible:
        if not any(conflicts(edit, k) for k in kept):
            kept.append(edit)
    return EditSet(sets[0].source_len, tuple(kept))


def union_resolved(sets: Sequence[EditSet], priority: Sequence[int] | None = None) -> EditSet:
    """Conflict-resolved union of all edit sets."""
    return vote_set(sets, 1, priority)

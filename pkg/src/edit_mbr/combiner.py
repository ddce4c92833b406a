"""Combination strategies: MBR selection, vote augmentation, greedy edit insertion.

All strategies score a candidate by its expected reward: the uniform mean of
the configured reward against every member of the reward-expectation set
(the base systems by default).  Selection returns the candidate maximizing
that expectation; richer selection sets (vote candidates, the greedy result)
can only raise the attainable maximum.
"""

from __future__ import annotations

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .edit_core import (
    Candidate,
    Edit,
    EditSet,
    ValidationError,
    conflicts,
    intersect,
    vote_set,
)
from .m2_io import Corpus
from .rewards import RewardConfig, expected_reward

STRATEGIES = ("mbr", "mbr-vote", "greedy")
REWARD_SET_SPECS = ("base", "base+votes")


@dataclass(frozen=True, slots=True)
class CombineConfig:
    """Strategy, reward, and candidate-set composition for one combination run.

    ``reward_set`` picks the candidates the expected reward is averaged over:
    the base systems alone (default) or base systems plus vote candidates.
    ``greedy_pool_threshold`` is the vote count an edit needs to enter the
    greedy insertion pool (clamped to the system count at use).
    """

    strategy: str = "mbr"
    reward: RewardConfig = field(default_factory=RewardConfig)
    reward_set: str = "base"
    greedy_pool_threshold: int = 2

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if self.reward_set not in REWARD_SET_SPECS:
            raise ValueError(
                f"unknown reward set {self.reward_set!r}; expected one of {REWARD_SET_SPECS}"
            )
        if self.greedy_pool_threshold < 1:
            raise ValueError("greedy_pool_threshold must be >= 1")


@dataclass(frozen=True, slots=True)
class GreedyStep:
    """One committed greedy insertion with the objective before and after."""

    edit: Edit
    reward_before: float
    reward_after: float


@dataclass(frozen=True, slots=True)
class CombineResult:
    """Chosen candidate, the selection set it won over, and per-candidate scores."""

    chosen: Candidate
    selection: tuple[Candidate, ...]
    expected_rewards: tuple[float, ...]
    trace: tuple[GreedyStep, ...] = ()


def mbr_select(
    selection_set: Sequence[Candidate],
    reward_set: Sequence[Candidate],
    config: CombineConfig,
) -> CombineResult:
    """Pick the candidate with the highest expected reward against ``reward_set``.

    The first candidate attaining the maximum wins, so the selection order is
    the tie-break policy (base systems in input order, then vote candidates
    by threshold, then greedy).
    """
    selection = tuple(selection_set)
    if not selection:
        raise ValueError("selection set must be non-empty")
    references = [candidate.edit_set for candidate in reward_set]
    scores = tuple(
        expected_reward(candidate.edit_set, references, config.reward)
        for candidate in selection
    )
    best = max(range(len(selection)), key=scores.__getitem__)
    return CombineResult(chosen=selection[best], selection=selection, expected_rewards=scores)


def vote_candidates(
    systems: Sequence[Candidate], priority: Sequence[int] | None = None
) -> list[Candidate]:
    """Vote candidates for every threshold m = 1..N, labeled ``vote-m``.

    ``vote-1`` is the conflict-resolved union of all system edit sets and
    ``vote-N`` their intersection.
    """
    if not systems:
        raise ValueError("need at least one system")
    sets = [candidate.edit_set for candidate in systems]
    return [
        Candidate(vote_set(sets, m, priority), f"vote-{m}")
        for m in range(1, len(sets) + 1)
    ]


def _reward_candidates(
    systems: Sequence[Candidate], votes: Sequence[Candidate], config: CombineConfig
) -> list[Candidate]:
    if config.reward_set == "base+votes":
        return list(systems) + list(votes)
    return list(systems)


def greedy_combine(systems: Sequence[Candidate], config: CombineConfig) -> CombineResult:
    """Grow the intersection edit set by best-first insertion, then MBR-select.

    The working set starts at the intersection of all system edit sets; the
    pool is the conflict-resolved vote set at the configured threshold
    (clamped to N) minus the working set.  Each round scores every pool edit
    compatible with the working set and commits the insertion that raises
    the expected reward the most, stopping when no insertion strictly
    improves it.  Final selection runs over base systems, all vote
    candidates, and the greedy result.
    """
    systems = list(systems)
    if not systems:
        raise ValueError("need at least one system")
    sets = [candidate.edit_set for candidate in systems]
    votes = vote_candidates(systems)
    reward_cands = _reward_candidates(systems, votes, config)
    references = [candidate.edit_set for candidate in reward_cands]

    working = intersect(sets)
    threshold = min(config.greedy_pool_threshold, len(sets))
    pool = [edit for edit in vote_set(sets, threshold) if edit not in working]
    current = expected_reward(working, references, config.reward)
    trace: list[GreedyStep] = []
    while pool:
        best_index = -1
        best_set: EditSet | None = None
        best_score = current
        for index, edit in enumerate(pool):
            if any(conflicts(edit, kept) for kept in working):
                continue
            candidate_set = EditSet(working.source_len, working.edits + (edit,))
            score = expected_reward(candidate_set, references, config.reward)
            if score > best_score:
                best_index, best_set, best_score = index, candidate_set, score
        if best_index < 0:
            break
        trace.append(GreedyStep(pool[best_index], current, best_score))
        working, current = best_set, best_score
        del pool[best_index]
    selection = systems + votes + [Candidate(working, "greedy")]
    result = mbr_select(selection, reward_cands, config)
    return replace(result, trace=tuple(trace))


def combine_sentence(systems: Sequence[Candidate], config: CombineConfig) -> CombineResult:
    """Combine one sentence's system candidates per the configured strategy."""
    systems = list(systems)
    if not systems:
        raise ValueError("need at least one system")
    if config.strategy == "greedy":
        return greedy_combine(systems, config)
    need_votes = config.strategy == "mbr-vote" or config.reward_set == "base+votes"
    votes = vote_candidates(systems) if need_votes else []
    reward_cands = _reward_candidates(systems, votes, config)
    selection = systems + votes if config.strategy == "mbr-vote" else systems
    return mbr_select(selection, reward_cands, config)


def combine_corpus(
    corpus: Corpus, config: CombineConfig, threads: int = 1
) -> list[CombineResult]:
    """Combine every corpus entry independently; results keep corpus order.

    Entries must all carry the same number of systems.  ``threads`` fans the
    per-sentence work out over a thread pool without affecting the output.
    """
    entries = corpus.entries
    counts = {len(entry.systems) for entry in entries}
    if len(counts) > 1:
        raise ValidationError(f"entries disagree on system count: {sorted(counts)}")
    if threads > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda entry: combine_sentence(entry.systems, config), entries))
    return [combine_sentence(entry.systems, config) for entry in entries]

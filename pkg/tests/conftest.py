"""Shared random generators and brute-force oracles for the test suite.

The brute-force reward functions below recompute every quantity from
explicit pairwise edit comparisons and the raw formulas; they deliberately
share no code with the package so they can serve as independent oracles.
"""

import math
import random

from edit_mbr.edit_core import Candidate, Edit, EditSet, Sentence, conflicts


def random_sentence(rng: random.Random, min_len=0, max_len=30, vocab=20) -> Sentence:
    length = rng.randint(min_len, max_len)
    return Sentence(tuple(f"t{rng.randrange(vocab)}" for _ in range(length)))


def random_edit(rng: random.Random, source_len: int, vocab=8) -> Edit:
    start = rng.randint(0, source_len)
    end = min(source_len, start + rng.randint(0, 3))
    n_repl = rng.randint(0, 3)
    if start == end and n_repl == 0:
        n_repl = 1
    replacement = tuple(f"w{rng.randrange(vocab)}" for _ in range(n_repl))
    return Edit(start, end, replacement)


def random_edit_set(rng: random.Random, source_len: int, max_edits=4, vocab=8) -> EditSet:
    kept: list[Edit] = []
    for _ in range(rng.randint(0, max_edits)):
        edit = random_edit(rng, source_len, vocab)
        if not any(edit == k or conflicts(edit, k) for k in kept):
            kept.append(edit)
    return EditSet(source_len, tuple(kept))


def random_systems(
    rng: random.Random, source_len=10, n_systems=3, pool_size=8, vocab=6, take=0.45
) -> list[Candidate]:
    """Systems sampling from a shared edit pool, so shared votes and conflicts occur."""
    pool = [random_edit(rng, source_len, vocab) for _ in range(pool_size)]
    systems = []
    for index in range(n_systems):
        kept: list[Edit] = []
        for edit in pool:
            if rng.random() < take and not any(
                edit == k or conflicts(edit, k) for k in kept
            ):
                kept.append(edit)
        systems.append(Candidate(EditSet(source_len, tuple(kept)), f"sys{index}"))
    return systems


def bf_intersection_size(ref_edits, hyp_edits) -> int:
    return sum(1 for edit in ref_edits if any(edit == other for other in hyp_edits))


def bf_reward(kind: str, ref_edits, hyp_edits, beta: float = 0.5) -> float:
    """Reward recomputed from the raw formulas over plain edit sequences."""
    ref_edits = list(ref_edits)
    hyp_edits = list(hyp_edits)
    n_ref, n_hyp = len(ref_edits), len(hyp_edits)
    if n_ref == 0 and n_hyp == 0:
        return 1.0
    overlap = bf_intersection_size(ref_edits, hyp_edits)
    if kind == "recall":
        return overlap / n_ref if n_ref else 1.0
    if kind == "precision":
        return overlap / n_hyp if n_hyp else 1.0
    if kind == "f":
        return (1.0 + beta * beta) * overlap / (beta * beta * n_ref + n_hyp)
    if kind == "f-paper":
        return (1.0 + beta * beta) * overlap / (beta * n_ref + n_hyp)
    if kind == "jaccard":
        return overlap / (n_ref + n_hyp - overlap)
    raise AssertionError(f"unknown kind {kind}")


def bf_expected(kind: str, ref_sets, hyp_edits, beta: float = 0.5) -> float:
    totals = math.fsum(bf_reward(kind, ref, hyp_edits, beta) for ref in ref_sets)
    return totals / len(ref_sets)


def bf_levenshtein(a, b) -> int:
    """Plain iterative token Levenshtein distance."""
    previous = list(range(len(b) + 1))
    for i, tok_a in enumerate(a, start=1):
        current = [i]
        for j, tok_b in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (tok_a != tok_b),
                )
            )
        previous = current
    return previous[-1]

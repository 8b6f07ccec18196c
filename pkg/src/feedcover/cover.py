"""Set-cover engines behind the three efficiency notions.

Greedy variants share one loop; they differ only in the per-candidate
score, always minimized, with ties broken by smallest user id.
Candidates whose remaining gain is zero are skipped (their score would
be a division by zero). ``brute_force_cover`` is an exhaustive oracle
for small instances, used by tests only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleCover, TooLarge
from .model import SECONDS_PER_DAY, Corpus, CoverResult, MemeId, poster_profile

BRUTE_FORCE_MAX_CANDIDATES = 20


@dataclass(frozen=True)
class CoverSpec:
    """What to cover, from whom, and how greedily to weigh candidates."""

    universe: frozenset[MemeId]
    candidates: frozenset[int] | None = None
    coverage: float = 1.0
    alpha: float = 1.0
    beta: float = 0.5


def candidate_pool(corpus: Corpus, spec: CoverSpec) -> list[int]:
    """Candidates posting at least one universe meme, sorted by id."""
    if spec.candidates is not None:
        pool = {
            v for v in spec.candidates
            if corpus.memes_by_user.get(v, frozenset()) & spec.universe
        }
    else:
        pool = set()
        for meme in spec.universe:
            pool.update(corpus.posters_by_meme.get(meme, frozenset()))
    return sorted(pool)


def coverage_target(spec: CoverSpec) -> int:
    if not 0.0 < spec.coverage <= 1.0:
        raise InfeasibleCover(f"coverage fraction {spec.coverage} outside (0, 1]")
    return math.ceil(spec.coverage * len(spec.universe))


def _greedy(corpus: Corpus, spec: CoverSpec, score) -> CoverResult:
    universe = frozenset(spec.universe)
    target = coverage_target(spec)
    pool = candidate_pool(corpus, spec)
    sets = {v: corpus.memes_by_user[v] & universe for v in pool}
    covered: set[MemeId] = set()
    covered_ids: set[int] = set()
    selected: list[int] = []
    per_step: list[tuple[int, int]] = []
    remaining = set(universe)
    while len(covered) < target:
        best_v = None
        best_score = None
        for v in pool:
            if v in covered_ids:
                continue
            gain = len(sets[v] & remaining)
            if gain == 0:
                continue
            s = score(v, gain)
            if best_score is None or s < best_score or (s == best_score and v < best_v):
                best_v, best_score = v, s
        if best_v is None:
            raise InfeasibleCover(
                f"covered {len(covered)} of required {target} memes"
            )
        newly = sets[best_v] & remaining
        covered |= newly
        remaining -= newly
        selected.append(best_v)
        covered_ids.add(best_v)
        per_step.append((best_v, len(newly)))
    return CoverResult(
        selected=tuple(selected),
        covered=frozenset(covered),
        objective=float(len(selected)),
        per_step=tuple(per_step),
    )


def greedy_min_cover(corpus: Corpus, spec: CoverSpec) -> CoverResult:
    """Unweighted greedy set cover: maximize newly covered memes per pick."""
    result = _greedy(corpus, spec, lambda v, gain: 1.0 / gain)
    return result


def greedy_weighted_cover(corpus: Corpus, spec: CoverSpec) -> CoverResult:
    """In-flow-weighted greedy set cover: minimize posts per newly covered meme."""
    result = _greedy(
        corpus, spec, lambda v, gain: corpus.post_count[v] / gain
    )
    inflow = sum(corpus.post_count[v] for v in result.selected)
    return CoverResult(
        selected=result.selected,
        covered=result.covered,
        objective=float(inflow),
        per_step=result.per_step,
    )


def joint_cover(corpus: Corpus, spec: CoverSpec) -> CoverResult:
    """Joint in-flow/delay greedy heuristic.

    Score is inflow**alpha * avg_delay**beta / gain; a zero-delay
    candidate scores 0 under beta > 0 and so is always preferred while
    it still covers something.
    """
    profiles = {}

    def score(v, gain):
        if v not in profiles:
            profiles[v] = poster_profile(corpus, v)
        p = profiles[v]
        return (float(p.inflow) ** spec.alpha) * (p.avg_delay_days ** spec.beta) / gain

    result = _greedy(corpus, spec, score)
    inflow = sum(corpus.post_count[v] for v in result.selected)
    return CoverResult(
        selected=result.selected,
        covered=result.covered,
        objective=float(inflow),
        per_step=result.per_step,
        avg_delay_days=set_average_delay_days(corpus, result.selected, result.covered),
    )


def delay_optimal_cover(corpus: Corpus, spec: CoverSpec) -> CoverResult:
    """For each universe meme, pick its earliest poster in the whole corpus.

    Full coverage only; achieves per-meme delay 0 relative to the
    window-wide first mention. Ties on time go to the smallest user id.
    """
    if spec.coverage != 1.0:
        raise InfeasibleCover("delay-optimal cover is defined for full coverage only")
    chosen: dict[int, int] = {}
    for meme in sorted(spec.universe):
        posters = corpus.posters_by_meme.get(meme)
        if not posters:
            raise InfeasibleCover(f"meme {meme} has no poster in the corpus")
        best = min(posters, key=lambda v: (corpus.first_post_by_user[v][meme], v))
        chosen[best] = chosen.get(best, 0) + 1
    selected = tuple(sorted(chosen))
    return CoverResult(
        selected=selected,
        covered=frozenset(spec.universe),
        objective=float(len(selected)),
        per_step=tuple((v, chosen[v]) for v in selected),
        avg_delay_days=0.0 if spec.universe else None,
    )


def brute_force_cover(corpus: Corpus, spec: CoverSpec, objective: str) -> CoverResult:
    """Exact optimum by subset enumeration; test oracle for small instances.

    objective is "cardinality" or "inflow". Among optima, returns the
    lexicographically smallest selected set. Full coverage only.
    """
    if objective not in ("cardinality", "inflow"):
        raise ValueError(f"unknown objective {objective!r}")
    if spec.coverage != 1.0:
        raise InfeasibleCover("brute force handles full coverage only")
    pool = candidate_pool(corpus, spec)
    n = len(pool)
    if n > BRUTE_FORCE_MAX_CANDIDATES:
        raise TooLarge(f"{n} candidates exceed bound {BRUTE_FORCE_MAX_CANDIDATES}")
    memes = sorted(spec.universe)
    bit = {m: 1 << i for i, m in enumerate(memes)}
    full = (1 << len(memes)) - 1
    masks = [
        sum(bit[m] for m in corpus.memes_by_user[v] & spec.universe) for v in pool
    ]
    if not spec.universe:
        return CoverResult((), frozenset(), 0.0, ())
    weights = [corpus.post_count[v] for v in pool]
    cover_of = [0] * (1 << n)
    best_cost = None
    best_subset = None
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        cov = cover_of[s & (s - 1)] | masks[low]
        cover_of[s] = cov
        if cov != full:
            continue
        if objective == "cardinality":
            cost = s.bit_count()
        else:
            cost = sum(weights[i] for i in range(n) if s >> i & 1)
        if best_cost is None or cost < best_cost:
            best_cost, best_subset = cost, s
        elif cost == best_cost:
            if _members(s, pool) < _members(best_subset, pool):
                best_subset = s
    if best_subset is None:
        raise InfeasibleCover("candidates do not cover the universe")
    selected = _members(best_subset, pool)
    remaining = set(spec.universe)
    per_step = []
    for v in selected:
        newly = corpus.memes_by_user[v] & remaining
        remaining -= newly
        per_step.append((v, len(newly)))
    return CoverResult(
        selected=selected,
        covered=frozenset(spec.universe),
        objective=float(best_cost),
        per_step=tuple(per_step),
    )


def set_average_delay_days(corpus, selected, universe) -> float | None:
    """Mean delay (days) at which the selected set first posts each meme."""
    if not universe:
        return None
    total = 0.0
    for meme in universe:
        t = min(
            corpus.first_post_by_user[v][meme]
            for v in selected
            if meme in corpus.memes_by_user.get(v, frozenset())
        )
        total += (t - corpus.first_mention[meme]) / SECONDS_PER_DAY
    return total / len(universe)


def _members(subset: int, pool: list[int]) -> tuple[int, ...]:
    return tuple(pool[i] for i in range(len(pool)) if subset >> i & 1)

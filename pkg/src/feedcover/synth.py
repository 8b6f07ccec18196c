"""Deterministic generators for synthetic corpora.

Archetypes cover the extreme-inefficiency constructions used in tests:
redundant followees (identical meme sets), a superuser shadowing
disjoint followees, Pareto-distributed posting volume, and a plain
random user/meme bipartite corpus. A separate community generator
produces triadic-closure-biased follow graphs with efficient outsider
posters, for structural (LCC) experiments.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidSpec
from .model import Corpus, MemeId, PostEvent

ARCHETYPES = (
    "random_bipartite",
    "redundant_followees",
    "superuser_shadow",
    "pareto_inflow",
)

_DAY = 86400


@dataclass(frozen=True)
class SynthSpec:
    seed: int = 0
    n_users: int = 20
    n_memes: int = 30
    window_days: int = 7
    archetype: str = "random_bipartite"
    pareto_exponent: float = 1.5
    ego_followee_count: int = 5


def _meme(i: int) -> MemeId:
    return MemeId("hashtag", f"m{i:04d}")


def _validate(spec: SynthSpec) -> None:
    if spec.archetype not in ARCHETYPES:
        raise InvalidSpec(f"unknown archetype {spec.archetype!r}")
    if min(spec.n_users, spec.n_memes, spec.window_days, spec.ego_followee_count) < 1:
        raise InvalidSpec("all counts must be >= 1")
    if spec.pareto_exponent <= 0:
        raise InvalidSpec("pareto exponent must be > 0")


def generate(spec: SynthSpec) -> tuple[Corpus, int]:
    """Generate a corpus plus its ego user; same seed, same corpus."""
    _validate(spec)
    rng = random.Random(spec.seed)
    start, end = 0, spec.window_days * _DAY
    ego = 0
    k = spec.ego_followee_count
    followees = list(range(1, k + 1))
    events: list[PostEvent] = []
    follows: dict[int, set[int]] = {ego: set(followees)}

    def t() -> int:
        return rng.randrange(start, end)

    if spec.archetype == "redundant_followees":
        for v in followees:
            for i in range(spec.n_memes):
                events.append(PostEvent(v, _meme(i), t()))
    elif spec.archetype == "superuser_shadow":
        if spec.n_memes < k:
            raise InvalidSpec("superuser_shadow needs n_memes >= followee count")
        superuser = k + 1
        for i in range(spec.n_memes):
            events.append(PostEvent(followees[i % k], _meme(i), t()))
            events.append(PostEvent(superuser, _meme(i), t()))
    elif spec.archetype == "random_bipartite":
        n = max(spec.n_users, k + 1)
        for v in range(1, n):
            size = rng.randint(1, max(1, spec.n_memes // 3))
            for i in rng.sample(range(spec.n_memes), size):
                events.append(PostEvent(v, _meme(i), t()))
        for v in range(1, n):
            for w in range(1, n):
                if v != w and rng.random() < 0.1:
                    follows.setdefault(v, set()).add(w)
        follows[ego] = set(range(1, k + 1))
    else:  # pareto_inflow
        n = max(spec.n_users, k + 1)
        for v in range(1, n):
            n_posts = min(int(rng.paretovariate(spec.pareto_exponent)), 500)
            n_posts = max(n_posts, 1)
            for _ in range(n_posts):
                events.append(PostEvent(v, _meme(rng.randrange(spec.n_memes)), t()))
    return (
        Corpus.from_events(events, follows, window=(start, end)),
        ego,
    )


def generate_triadic_corpus(
    seed: int = 0,
    n_communities: int = 20,
    community_size: int = 12,
    memes_per_community: int = 30,
    window_days: int = 7,
) -> tuple[Corpus, list[int]]:
    """Communities of mutually following, redundant posters.

    Every community member follows every other member (maximal triadic
    closure), posts a large random subset of the community's meme pool
    many times, and two unconnected outsiders split the pool between
    them, posting each meme once, early. Optimizing any efficiency
    therefore pulls the ego away from the dense community and into the
    sparse outsiders. Returns the corpus and one ego per member.
    """
    rng = random.Random(seed)
    start, end = 0, window_days * _DAY
    events: list[PostEvent] = []
    follows: dict[int, set[int]] = {}
    egos: list[int] = []
    uid = 0
    for c in range(n_communities):
        members = list(range(uid, uid + community_size))
        uid += community_size
        outsiders = [uid, uid + 1]
        uid += 2
        pool = [
            MemeId("hashtag", f"c{c:03d}_m{i:03d}")
            for i in range(memes_per_community)
        ]
        half = memes_per_community // 2
        # Outsiders post the whole pool between them, once each, early on.
        for out, chunk in zip(outsiders, (pool[:half], pool[half:])):
            for meme in chunk:
                events.append(PostEvent(out, meme, rng.randrange(start, start + _DAY)))
        for m in members:
            follows[m] = set(members) - {m}
            subset = rng.sample(pool, max(2, len(pool) // 4))
            for meme in subset:
                for _ in range(rng.randint(2, 4)):
                    events.append(
                        PostEvent(m, meme, rng.randrange(start + _DAY, end))
                    )
        egos.extend(members)
    return Corpus.from_events(events, follows, window=(start, end)), egos


def write_corpus_files(
    corpus: Corpus, posts_path, follows_path, warmup: bool = True
) -> None:
    """Emit a corpus in the ingestion file formats (pre-extracted posts).

    With ``warmup`` a pre-window marker post per user is included so
    the activity filter retains everyone on reload.
    """
    all_users = set(corpus.posts_by_user) | set(corpus.follows)
    for vs in corpus.follows.values():
        all_users |= vs
    lines = []
    for user in sorted(all_users):
        if warmup:
            lines.append(
                f"{user}\t{corpus.window_start - _DAY}\thashtag\twarmup"
            )
        for meme, time in sorted(
            corpus.posts_by_user.get(user, ()), key=lambda p: (p[1], p[0])
        ):
            lines.append(f"{user}\t{time}\t{meme.kind}\t{meme.key}")
    Path(posts_path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    edge_lines = [
        f"{u}\t{v}"
        for u in sorted(corpus.follows)
        for v in sorted(corpus.follows[u])
    ]
    Path(follows_path).write_text("\n".join(edge_lines) + "\n", encoding="utf-8")

"""Core domain types: posts, corpora, ego contexts, cover results.

All types are immutable after construction and safe to share across
workers. User ids are integer surrogates assigned at ingestion in
first-seen order; every tie-break in the package uses this order.
Timestamps are integer unix seconds; delays are converted to
real-valued days where averaged.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyCorpus, NoMemes

SECONDS_PER_DAY = 86400.0

MEME_KINDS = ("hashtag", "url", "news_domain", "youtube_video")


@dataclass(frozen=True, order=True)
class MemeId:
    """One unique piece of information: a kind plus a normalized key."""

    kind: str
    key: str


@dataclass(frozen=True)
class PostEvent:
    """One user posting one meme at one timestamp."""

    user: int
    meme: MemeId
    time: int


@dataclass(frozen=True)
class Corpus:
    """Immutable indexed view over a window of post events and a follow graph.

    post_count counts ALL posts inside the window (meme-bearing or not);
    posts_by_user holds only the meme-bearing ones.
    """

    window_start: int
    window_end: int
    posts_by_user: dict[int, tuple[tuple[MemeId, int], ...]]
    memes_by_user: dict[int, frozenset[MemeId]]
    posters_by_meme: dict[MemeId, frozenset[int]]
    post_count: dict[int, int]
    first_mention: dict[MemeId, int]
    first_post_by_user: dict[int, dict[MemeId, int]]
    follows: dict[int, frozenset[int]]
    user_labels: dict[int, str] = field(default_factory=dict)

    @property
    def window_days(self) -> float:
        return (self.window_end - self.window_start) / SECONDS_PER_DAY

    @property
    def users(self) -> frozenset[int]:
        return frozenset(self.post_count)

    def label(self, user: int) -> str:
        return self.user_labels.get(user, str(user))

    @classmethod
    def from_events(
        cls,
        events,
        follows,
        window: tuple[int, int],
        post_counts: dict[int, int] | None = None,
        user_labels: dict[int, str] | None = None,
        allow_empty: bool = False,
    ) -> "Corpus":
        """Build every index from a stream of PostEvents.

        The result is independent of the order of ``events``. When
        ``post_counts`` is omitted, each event counts as one post.
        """
        start, end = window
        if not events and not allow_empty:
            raise EmptyCorpus("no post events in window")
        posts: dict[int, list[tuple[MemeId, int]]] = {}
        memes: dict[int, set[MemeId]] = {}
        posters: dict[MemeId, set[int]] = {}
        first: dict[MemeId, int] = {}
        first_by_user: dict[int, dict[MemeId, int]] = {}
        counts: dict[int, int] = {}
        for ev in events:
            posts.setdefault(ev.user, []).append((ev.meme, ev.time))
            memes.setdefault(ev.user, set()).add(ev.meme)
            posters.setdefault(ev.meme, set()).add(ev.user)
            if ev.meme not in first or ev.time < first[ev.meme]:
                first[ev.meme] = ev.time
            per_user = first_by_user.setdefault(ev.user, {})
            if ev.meme not in per_user or ev.time < per_user[ev.meme]:
                per_user[ev.meme] = ev.time
            counts[ev.user] = counts.get(ev.user, 0) + 1
        if post_counts is not None:
            counts = dict(post_counts)
        return cls(
            window_start=start,
            window_end=end,
            posts_by_user={u: tuple(sorted(v)) for u, v in sorted(posts.items())},
            memes_by_user={u: frozenset(v) for u, v in sorted(memes.items())},
            posters_by_meme={m: frozenset(v) for m, v in sorted(posters.items())},
            post_count=dict(sorted(counts.items())),
            first_mention=dict(sorted(first.items())),
            first_post_by_user={
                u: dict(sorted(v.items())) for u, v in sorted(first_by_user.items())
            },
            follows={u: frozenset(v) for u, v in sorted(follows.items())},
            user_labels=dict(user_labels or {}),
        )


@dataclass(frozen=True)
class PosterProfile:
    """Per-candidate stats used by the joint in-flow/delay heuristic."""

    user: int
    meme_set: frozenset[MemeId]
    inflow: int
    avg_delay_days: float


def poster_profile(corpus: Corpus, user: int) -> PosterProfile:
    memes = corpus.memes_by_user.get(user, frozenset())
    if not memes:
        raise NoMemes(f"user {user} posted no memes")
    first = corpus.first_post_by_user[user]
    delay = sum(
        (first[m] - corpus.first_mention[m]) / SECONDS_PER_DAY for m in memes
    ) / len(memes)
    return PosterProfile(
        user=user,
        meme_set=memes,
        inflow=corpus.post_count.get(user, 0),
        avg_delay_days=delay,
    )


@dataclass(frozen=True)
class EgoContext:
    """An ego user's timeline view: followees, received memes, receipt times."""

    ego: int
    followees: frozenset[int]
    memes: frozenset[MemeId]
    receipt_time: dict[MemeId, int]


@dataclass(frozen=True)
class CoverResult:
    """An ordered selection of posters with per-step coverage bookkeeping."""

    selected: tuple[int, ...]
    covered: frozenset[MemeId]
    objective: float
    per_step: tuple[tuple[int, int], ...]
    avg_delay_days: float | None = None

    @property
    def size(self) -> int:
        return len(self.selected)

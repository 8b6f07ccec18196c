"""Parse raw input files into a Corpus: posts, follow edges, meme extraction.

File formats (UTF-8, tab-separated, one record per line):
  posts (raw):           user_id<TAB>unix_seconds<TAB>text
  posts (pre-extracted): user_id<TAB>unix_seconds<TAB>meme_kind<TAB>meme_key
  follows:               follower_id<TAB>followee_id
  news domains:          one registered domain per line
  url aliases:           short_url<TAB>resolved_url

Malformed lines abort ingestion with the offending line number; silent
data loss would corrupt the efficiency denominators downstream.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from .errors import EmptyCorpus, MalformedRecord, TooFewFollowees
from .model import MEME_KINDS, Corpus, EgoContext, MemeId, PostEvent

_HASHTAG_RE = re.compile(r"#(\w+)")
_URL_RE = re.compile(r"(?:https?://|www\.)\S+")
_TRAILING_PUNCT = ".,;:!?)\"'>]"

_YOUTUBE_PREFIX = "www.youtube.com/watch"


@dataclass(frozen=True)
class IngestConfig:
    window_start: int = 0
    window_end: int = 0
    min_followees: int = 20
    require_pre_window_activity: bool = True
    meme_kinds: tuple[str, ...] = MEME_KINDS
    news_domain_list: str | None = None
    url_alias_map: str | None = None
    pre_extracted: bool = False


def normalize_url(token: str) -> str:
    """Strip scheme and trailing punctuation; keep any leading ``www.``."""
    token = token.strip()
    for scheme in ("https://", "http://"):
        if token.lower().startswith(scheme):
            token = token[len(scheme):]
            break
    return token.rstrip(_TRAILING_PUNCT)


def _registered_domain(url: str, news_domains) -> str | None:
    host = url.split("/", 1)[0].split("?", 1)[0].lower()
    labels = host.split(".")
    for i in range(len(labels) - 1):
        suffix = ".".join(labels[i:])
        if suffix in news_domains:
            return suffix
    return None


def _youtube_video_id(url: str) -> str | None:
    if not url.lower().startswith(_YOUTUBE_PREFIX):
        return None
    query = urlsplit("//" + url).query
    ids = parse_qs(query).get("v")
    return ids[0] if ids else None


def extract_memes(
    raw_text: str,
    config: IngestConfig,
    news_domains: frozenset[str] = frozenset(),
    url_aliases: dict[str, str] | None = None,
) -> list[MemeId]:
    """Extract every enabled meme kind from one post's text.

    URLs are first rewritten through the alias map (offline stand-in
    for unshortening), then classified. A single URL can yield up to
    three memes: url, plus youtube_video or news_domain.
    """
    url_aliases = url_aliases or {}
    kinds = set(config.meme_kinds)
    seen: list[MemeId] = []

    def emit(kind: str, key: str) -> None:
        if kind not in kinds or not key:
            return
        meme = MemeId(kind, key)
        if meme not in seen:
            seen.append(meme)

    for tag in _HASHTAG_RE.findall(raw_text):
        emit("hashtag", tag.lower())
    for token in _URL_RE.findall(raw_text):
        url = normalize_url(token)
        url = url_aliases.get(url, url)
        if not url:
            continue
        emit("url", url)
        video = _youtube_video_id(url)
        if video:
            emit("youtube_video", video)
        domain = _registered_domain(url, news_domains)
        if domain:
            emit("news_domain", domain)
    return seen


def load_lines(path) -> list[str]:
    return Path(path).read_text(encoding="utf-8").splitlines()


def load_news_domains(path) -> frozenset[str]:
    return frozenset(
        line.strip().lower() for line in load_lines(path) if line.strip()
    )


def load_url_aliases(path) -> dict[str, str]:
    aliases = {}
    for no, line in enumerate(load_lines(path), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise MalformedRecord(path, no, "expected short_url<TAB>resolved_url")
        aliases[normalize_url(parts[0])] = normalize_url(parts[1])
    return aliases


class _UserIds:
    """Stable integer surrogates in first-seen order."""

    def __init__(self):
        self.by_label: dict[str, int] = {}

    def get(self, label: str) -> int:
        if label not in self.by_label:
            self.by_label[label] = len(self.by_label)
        return self.by_label[label]

    def labels(self) -> dict[int, str]:
        return {uid: label for label, uid in self.by_label.items()}


def load_corpus(posts_path, follows_path, config: IngestConfig) -> Corpus:
    """Build a windowed Corpus with the activity filter applied.

    Users with no post strictly before the window start fail the
    activity filter (when enabled) and are removed from the poster
    universe; follow edges touching removed users are dropped.
    """
    news_domains = (
        load_news_domains(config.news_domain_list)
        if config.news_domain_list
        else frozenset()
    )
    url_aliases = (
        load_url_aliases(config.url_alias_map) if config.url_alias_map else {}
    )
    ids = _UserIds()
    events: list[PostEvent] = []
    post_counts: dict[int, int] = {}
    active: set[int] = set()
    start, end = config.window_start, config.window_end
    for no, line in enumerate(load_lines(posts_path), start=1):
        if not line:
            continue
        parts = line.split("\t")
        if config.pre_extracted:
            if len(parts) != 4:
                raise MalformedRecord(
                    posts_path, no, "expected user<TAB>time<TAB>kind<TAB>key"
                )
            label, time_s, kind, key = parts
            if kind not in MEME_KINDS:
                raise MalformedRecord(posts_path, no, f"unknown meme kind {kind!r}")
            if not key:
                raise MalformedRecord(posts_path, no, "empty meme key")
            memes = [MemeId(kind, key)] if kind in config.meme_kinds else []
        else:
            if len(parts) != 3:
                raise MalformedRecord(posts_path, no, "expected user<TAB>time<TAB>text")
            label, time_s, text = parts
            memes = None
        try:
            time = int(time_s)
        except ValueError:
            raise MalformedRecord(posts_path, no, f"bad timestamp {time_s!r}")
        user = ids.get(label)
        if time < start:
            active.add(user)
            continue
        if time >= end:
            continue
        post_counts[user] = post_counts.get(user, 0) + 1
        if memes is None:
            memes = extract_memes(text, config, news_domains, url_aliases)
        for meme in memes:
            events.append(PostEvent(user, meme, time))

    follows: dict[int, set[int]] = {}
    for no, line in enumerate(load_lines(follows_path), start=1):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise MalformedRecord(follows_path, no, "expected follower<TAB>followee")
        follower = ids.get(parts[0])
        followee = ids.get(parts[1])
        follows.setdefault(follower, set()).add(followee)

    if config.require_pre_window_activity:
        events = [ev for ev in events if ev.user in active]
        post_counts = {u: c for u, c in post_counts.items() if u in active}
        follows = {
            u: {v for v in vs if v in active}
            for u, vs in follows.items()
            if u in active
        }
    if not events:
        raise EmptyCorpus("no post events survive window and activity filtering")
    return Corpus.from_events(
        events,
        follows,
        window=(start, end),
        post_counts=post_counts,
        user_labels=ids.labels(),
    )


def ego_context(
    corpus: Corpus, ego: int, meme_kind: str, min_followees: int = 1
) -> EgoContext:
    """Timeline view for one ego, restricted to followees posting the kind."""
    followees = frozenset(
        v for v in corpus.follows.get(ego, frozenset())
        if any(m.kind == meme_kind for m in corpus.memes_by_user.get(v, frozenset()))
    )
    if len(followees) < max(min_followees, 1):
        raise TooFewFollowees(
            f"ego {ego}: {len(followees)} followees posting {meme_kind} "
            f"(need {max(min_followees, 1)})"
        )
    memes: set[MemeId] = set()
    receipt: dict[MemeId, int] = {}
    for v in sorted(followees):
        for meme, time in corpus.first_post_by_user[v].items():
            if meme.kind != meme_kind:
                continue
            memes.add(meme)
            if meme not in receipt or time < receipt[meme]:
                receipt[meme] = time
    return EgoContext(
        ego=ego,
        followees=followees,
        memes=frozenset(memes),
        receipt_time=receipt,
    )

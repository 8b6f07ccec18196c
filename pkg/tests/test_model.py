import random

import pytest

from feedcover.errors import EmptyCorpus
from feedcover.model import Corpus, MemeId, PostEvent, poster_profile

from conftest import DAY, M, make_corpus


def _events():
    return [
        PostEvent(1, M(0), 100),
        PostEvent(1, M(1), 50),
        PostEvent(2, M(0), 30),
        PostEvent(2, M(2), 400),
        PostEvent(3, M(1), 200),
    ]


def test_order_independence():
    events = _events()
    shuffled = events[:]
    random.Random(7).shuffle(shuffled)
    a = Corpus.from_events(events, {}, window=(0, 1000))
    b = Corpus.from_events(shuffled, {}, window=(0, 1000))
    assert a == b


def test_first_mention_is_minimum_over_rescan():
    events = _events()
    corpus = Corpus.from_events(events, {}, window=(0, 1000))
    for meme, t0 in corpus.first_mention.items():
        assert t0 == min(ev.time for ev in events if ev.meme == meme)
    assert corpus.first_mention[M(0)] == 30


def test_index_consistency():
    corpus = Corpus.from_events(_events(), {}, window=(0, 1000))
    for v, memes in corpus.memes_by_user.items():
        for meme in memes:
            assert v in corpus.posters_by_meme[meme]
    for meme, posters in corpus.posters_by_meme.items():
        for v in posters:
            assert meme in corpus.memes_by_user[v]


def test_post_count_defaults_to_event_count_and_accepts_override():
    corpus = Corpus.from_events(_events(), {}, window=(0, 1000))
    assert corpus.post_count == {1: 2, 2: 2, 3: 1}
    corpus = Corpus.from_events(
        _events(), {}, window=(0, 1000), post_counts={1: 9, 2: 2, 3: 1}
    )
    assert corpus.post_count[1] == 9


def test_empty_event_stream_rejected():
    with pytest.raises(EmptyCorpus):
        Corpus.from_events([], {}, window=(0, 1000))


def test_window_days():
    corpus = make_corpus({1: [0]}, window_days=7)
    assert corpus.window_days == 7.0


def test_poster_profile_average_delay():
    # meme 0 born at t=0 (user 9); user 1 first posts it a day later,
    # and first-posts meme 1 (delay 0).
    corpus = make_corpus(
        {9: [0], 1: [0, 1]},
        times={(9, 0): 0, (1, 0): DAY, (1, 1): 5},
    )
    profile = poster_profile(corpus, 1)
    assert profile.inflow == 2
    assert profile.meme_set == frozenset({M(0), M(1)})
    assert profile.avg_delay_days == pytest.approx(0.5)


def test_meme_id_ordering_and_identity():
    assert MemeId("hashtag", "a") < MemeId("hashtag", "b")
    assert MemeId("url", "x") != MemeId("hashtag", "x")

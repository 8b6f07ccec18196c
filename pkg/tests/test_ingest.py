import pytest

from feedcover.errors import EmptyCorpus, MalformedRecord, TooFewFollowees
from feedcover.ingest import (
    IngestConfig,
    ego_context,
    extract_memes,
    load_corpus,
    normalize_url,
)
from feedcover.model import MemeId

CFG = IngestConfig(window_start=1000, window_end=2000)


def test_single_hashtag():
    assert extract_memes("check #OpenData now", CFG) == [MemeId("hashtag", "opendata")]


def test_youtube_url_emits_both_kinds():
    memes = extract_memes("watch https://www.youtube.com/watch?v=abc123", CFG)
    assert memes == [
        MemeId("url", "www.youtube.com/watch?v=abc123"),
        MemeId("youtube_video", "abc123"),
    ]


def test_alias_rewrite_then_news_domain():
    memes = extract_memes(
        "http://bit.ly/x1",
        CFG,
        news_domains=frozenset({"cnn.com"}),
        url_aliases={"bit.ly/x1": "cnn.com/story"},
    )
    assert memes == [
        MemeId("url", "cnn.com/story"),
        MemeId("news_domain", "cnn.com"),
    ]


def test_news_domain_matches_registered_suffix():
    memes = extract_memes(
        "see http://edition.cnn.com/world/x",
        CFG,
        news_domains=frozenset({"cnn.com"}),
    )
    assert MemeId("news_domain", "cnn.com") in memes


def test_news_domain_never_outside_supplied_list():
    domains = frozenset({"cnn.com"})
    for text in (
        "http://nytimes.com/a",
        "http://cnn.com.evil.org/a",
        "www.bbc.co.uk",
    ):
        for meme in extract_memes(text, CFG, news_domains=domains):
            assert meme.kind != "news_domain"


def test_duplicates_within_post_deduplicated():
    memes = extract_memes("#x and #X and #x again", CFG)
    assert memes == [MemeId("hashtag", "x")]


def test_meme_kind_filter():
    cfg = IngestConfig(window_start=0, window_end=1, meme_kinds=("url",))
    memes = extract_memes("#tag http://a.com/b", cfg)
    assert memes == [MemeId("url", "a.com/b")]


def test_url_normalization_idempotent_and_keeps_www():
    url = normalize_url("https://www.example.com/path,")
    assert url == "www.example.com/path"
    assert normalize_url(url) == url


def _write(tmp_path, posts, follows):
    p = tmp_path / "posts.tsv"
    f = tmp_path / "follows.tsv"
    p.write_text(posts, encoding="utf-8")
    f.write_text(follows, encoding="utf-8")
    return p, f


def test_load_corpus_window_and_activity_filter(tmp_path):
    posts = (
        "alice\t500\twarming up\n"      # pre-window: marks alice active
        "alice\t1100\t#one\n"
        "alice\t1200\t#two\n"
        "bob\t1300\t#one\n"             # bob never tweeted pre-window
        "alice\t2500\t#late\n"          # after window end
    )
    follows = "carol\talice\ncarol\tbob\n"
    p, f = _write(tmp_path, posts, follows)
    corpus = load_corpus(p, f, CFG)
    alice = [u for u, lbl in corpus.user_labels.items() if lbl == "alice"][0]
    assert set(corpus.memes_by_user) == {alice}
    assert corpus.post_count[alice] == 2
    assert MemeId("hashtag", "late") not in corpus.first_mention
    # carol was inactive, so her follow edges are gone entirely
    assert corpus.follows == {}


def test_load_corpus_first_mention_minimum(tmp_path):
    posts = "a\t1\tx\na\t1500\t#m\nb\t2\tx\nb\t1100\t#m\n"
    p, f = _write(tmp_path, posts, "a\tb\n")
    corpus = load_corpus(p, f, CFG)
    assert corpus.first_mention[MemeId("hashtag", "m")] == 1100


def test_load_corpus_malformed_line_aborts_with_line_number(tmp_path):
    p, f = _write(tmp_path, "a\t1\tx\nbadline\n", "a\tb\n")
    with pytest.raises(MalformedRecord) as err:
        load_corpus(p, f, CFG)
    assert err.value.line_no == 2


def test_load_corpus_empty_window(tmp_path):
    p, f = _write(tmp_path, "a\t1\t#x\n", "a\tb\n")
    with pytest.raises(EmptyCorpus):
        load_corpus(p, f, CFG)


def test_load_corpus_pre_extracted(tmp_path):
    cfg = IngestConfig(
        window_start=1000,
        window_end=2000,
        require_pre_window_activity=False,
        pre_extracted=True,
    )
    posts = "a\t1100\thashtag\tfoo\na\t1200\turl\tx.com/1\n"
    p, f = _write(tmp_path, posts, "b\ta\n")
    corpus = load_corpus(p, f, cfg)
    a = [u for u, lbl in corpus.user_labels.items() if lbl == "a"][0]
    assert corpus.memes_by_user[a] == frozenset(
        {MemeId("hashtag", "foo"), MemeId("url", "x.com/1")}
    )


def test_load_corpus_pre_extracted_bad_kind(tmp_path):
    cfg = IngestConfig(window_start=0, window_end=10, pre_extracted=True,
                       require_pre_window_activity=False)
    p, f = _write(tmp_path, "a\t5\tgif\tfoo\n", "a\tb\n")
    with pytest.raises(MalformedRecord):
        load_corpus(p, f, cfg)


@pytest.fixture
def kind_corpus(tmp_path):
    posts = (
        "ego\t100\twarmup\n"
        "A\t100\twarmup\n"
        "B\t100\twarmup\n"
        "A\t1100\t#m1 posted at some point\n"
        "A\t1300\t#m2\n"
        "B\t1200\tno memes here\n"
        "B\t1150\t#m1\n"
    )
    follows = "ego\tA\nego\tB\n"
    p, f = _write(tmp_path, posts, follows)
    return load_corpus(p, f, CFG)


def _uid(corpus, label):
    return [u for u, lbl in corpus.user_labels.items() if lbl == label][0]


def test_ego_context_restricts_to_kind_posters(kind_corpus):
    ego = _uid(kind_corpus, "ego")
    ctx = ego_context(kind_corpus, ego, "hashtag")
    assert ctx.followees == {_uid(kind_corpus, "A"), _uid(kind_corpus, "B")}
    ctx_url = pytest.raises(TooFewFollowees, ego_context, kind_corpus, ego, "url")
    assert ctx_url


def test_ego_context_receipt_is_earliest_followee_post(kind_corpus):
    ego = _uid(kind_corpus, "ego")
    ctx = ego_context(kind_corpus, ego, "hashtag")
    assert ctx.receipt_time[MemeId("hashtag", "m1")] == 1100
    assert ctx.receipt_time[MemeId("hashtag", "m2")] == 1300


def test_ego_context_min_followees(kind_corpus):
    ego = _uid(kind_corpus, "ego")
    with pytest.raises(TooFewFollowees):
        ego_context(kind_corpus, ego, "hashtag", min_followees=3)


def test_ego_context_nobody_followed(kind_corpus):
    with pytest.raises(TooFewFollowees):
        ego_context(kind_corpus, _uid(kind_corpus, "A"), "hashtag")


def test_ego_context_deterministic(kind_corpus):
    ego = _uid(kind_corpus, "ego")
    a = ego_context(kind_corpus, ego, "hashtag")
    b = ego_context(kind_corpus, ego, "hashtag")
    assert a == b

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vietphon import inventory as inv
from vietphon.dialects import DialectSyllable, convert
from vietphon.errors import VietphonError
from vietphon.inventory import Tone
from vietphon.syllable import parse_word
from vietphon.vocabulary import SPECIALS, UNK, IndexedSet, PhoneticVocabulary, build_vocabulary


@pytest.fixture(scope="module")
def vocab(lexicon):
    return build_vocabulary(lexicon)


def test_single_word():
    v = build_vocabulary(["a"])
    assert v.initials.symbols == ("∅",)
    assert v.rhymes.symbols == ("a",)
    assert v.tones.symbols == ("˧",)


def test_full_lexicon_sizes(vocab):
    assert len(vocab.tones) == 6
    assert 20 <= len(vocab.initials) <= 30
    assert 150 <= len(vocab.rhymes) <= 350
    m = vocab.manifest
    assert m["rhymes_after_overlays"] >= m["rhymes_before_overlays"]
    assert m["skipped_words"] == 0


def test_disjoint(vocab):
    a, b, c = (set(x.symbols) for x in (vocab.initials, vocab.rhymes, vocab.tones))
    assert not (a & b) and not (a & c) and not (b & c)


def test_overlap_rejected():
    with pytest.raises(VietphonError):
        PhoneticVocabulary(IndexedSet(["a"]), IndexedSet(["a"]), IndexedSet(["˧"]))


def test_sorted_with_specials_first(vocab):
    assert vocab.rhymes.items[:4] == SPECIALS
    assert list(vocab.rhymes.symbols) == sorted(vocab.rhymes.symbols)


def test_skips_bad_words():
    v = build_vocabulary(["a", "hello"])
    assert v.manifest["skipped_words"] == 1


def test_monotone():
    small = build_vocabulary(["ba", "minh"])
    big = build_vocabulary(["ba", "minh", "hươu", "quê"])
    for name in ("initials", "rhymes", "tones"):
        assert set(getattr(small, name).symbols) <= set(getattr(big, name).symbols)


def test_encode_empty(vocab):
    assert vocab.encode([]) == []


def test_encode_unknown_counts(vocab):
    before = vocab.unk_count
    idx = vocab.encode([DialectSyllable("q", "zzz", Tone.FLAT)])
    assert idx[0][0] == vocab.initials.index(UNK)
    assert vocab.unk_count == before + 2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([p.name for p in inv.REGISTRY]), st.randoms())
def test_round_trip(lexicon, vocab, province, rnd):
    words = rnd.sample(sorted(lexicon), 40)
    seq = [convert(parse_word(w), province) for w in words]
    idx = vocab.encode(seq)
    assert len(idx) == len(seq)
    assert vocab.decode(idx) == seq


def test_save_load(vocab, tmp_path):
    vocab.save(tmp_path)
    again = PhoneticVocabulary.load(tmp_path)
    assert again.rhymes.items == vocab.rhymes.items
    assert again.manifest["lexicon_sha256"] == vocab.manifest["lexicon_sha256"]
    lines = (tmp_path / "rhymes.txt").read_text(encoding="utf-8").splitlines()
    assert lines.index("a") == vocab.rhymes.index("a")

import io
import json
import tracemalloc
import unicodedata

from vietphon.corpus import IngestStats, clean_tokens, ingest, read_utterances, write_utterances
from vietphon.syllable import parse_word


def test_noise_token_dropped(tmp_path):
    p = tmp_path / "c.jsonl"
    p.write_text(json.dumps({"id": "1", "province": "Hà Nội", "text": "xin chào abc123"},
                            ensure_ascii=False) + "\n", encoding="utf-8")
    (u,) = list(ingest(p))
    assert u.text == ("xin", "chào")
    assert u.dropped_tokens == 1


def test_empty_file(tmp_path):
    p = tmp_path / "e.tsv"
    p.write_text("", encoding="utf-8")
    stats = IngestStats()
    assert list(ingest(p, stats=stats)) == []
    assert stats.utterances == 0


def test_nfc_nfd_same_syllable():
    nfc, nfd = unicodedata.normalize("NFC", "hoàng"), unicodedata.normalize("NFD", "hoàng")
    a, _ = clean_tokens(nfc)
    b, _ = clean_tokens(nfd)
    assert a == b
    assert parse_word(a[0]) == parse_word(b[0])


def test_punctuation_and_case():
    tokens, dropped = clean_tokens("Xin chào, Việt Nam! (thuý)")
    assert tokens == ("xin", "chào", "việt", "nam", "thuý")
    assert dropped == 0


def test_tsv_routing_and_quarantine():
    data = "a\tHà Nội\tcon hươu\nb\tAtlantis\tba\nc\tHuế\tminh\nbroken line\n"
    stats = IngestStats()
    utts = list(read_utterances(io.StringIO(data), "tsv", stats))
    assert [u.id for u in utts] == ["a", "c"]
    assert utts[1].province.name == "Thừa Thiên Huế"
    assert stats.quarantined == [(2, "Atlantis")]
    assert stats.malformed == 1


def test_malformed_jsonl_skipped():
    data = '{"id": 1, "province": "Hà Nội", "text": "ba"}\nnot json\n{"id": 2}\n'
    stats = IngestStats()
    utts = list(read_utterances(io.StringIO(data), "jsonl", stats))
    assert len(utts) == 1 and utts[0].id == "1"
    assert stats.malformed == 2


def test_idempotent(tmp_path):
    src = tmp_path / "in.tsv"
    src.write_text("1\tCần Thơ\tThúy  hòa, lý!\n2\tHà Nội\tABC con\n", encoding="utf-8")
    first = list(ingest(src))
    out = tmp_path / "out.tsv"
    with out.open("w", encoding="utf-8") as h:
        write_utterances(first, h, "tsv")
    second = list(ingest(out))
    assert [(u.id, u.text, u.province) for u in first] == \
        [(u.id, u.text, u.province) for u in second]
    assert all(u.dropped_tokens == 0 for u in second)


def test_streaming_memory_flat(tmp_path):
    line = "1\tHà Nội\t" + " ".join(["con hươu uống nước"] * 5) + "\n"

    def peak(n):
        p = tmp_path / f"{n}.tsv"
        p.write_text(line * n, encoding="utf-8")
        tracemalloc.start()
        for _ in ingest(p):
            pass
        _, top = tracemalloc.get_traced_memory()
        tracemalloc.stop()
        return top

    small, large = peak(200), peak(4000)
    assert large < small * 3

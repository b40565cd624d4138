import json

import pytest

from vietphon.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_tokenize_hanoi(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text("con hươu\n", encoding="utf-8")
    code, out, _ = run(capsys, "tokenize", str(src), "--province", "Hà Nội",
                       "--output-format", "pretty")
    assert code == 0
    assert out.split("\t")[1].split()[1] == "h|ɨəu̯|˧"


def test_tokenize_jsonl_has_indices(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text("hoàng\n", encoding="utf-8")
    code, out, _ = run(capsys, "tokenize", str(src), "--province", "Hà Nội")
    rec = json.loads(out)
    assert rec["triplets"] == [["h", "u̯aŋ", "˨˩"]]
    assert len(rec["indices"][0]) == 3 and all(i >= 4 for i in rec["indices"][0])


def test_tokenize_empty(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text("", encoding="utf-8")
    code, out, _ = run(capsys, "tokenize", str(src), "--province", "Hà Nội")
    assert code == 0 and out == ""


def test_tokenize_province_column(tmp_path, capsys):
    src = tmp_path / "in.tsv"
    src.write_text("1\tHà Nội\tminh\n2\tHuế\tminh\n3\tCần Thơ\tminh\n4\tAtlantis\tminh\n",
                   encoding="utf-8")
    out = tmp_path / "out.jsonl"
    code, _, _ = run(capsys, "tokenize", str(src), "--province-column", "--out", str(out))
    assert code == 0
    rhymes = [json.loads(l)["triplets"][0][1] for l in out.read_text(encoding="utf-8").splitlines()]
    assert rhymes == ["ɨʲɲ", "ɨn", "in"]
    assert "Atlantis" in (tmp_path / "out.jsonl.errors").read_text(encoding="utf-8")


def test_tokenize_all_records_bad(tmp_path, capsys):
    src = tmp_path / "in.tsv"
    src.write_text("1\tAtlantis\tminh\n", encoding="utf-8")
    code, _, _ = run(capsys, "tokenize", str(src), "--province-column",
                     "--out", str(tmp_path / "o"))
    assert code == 2


def test_tokenize_unreadable(capsys, tmp_path):
    code, _, err = run(capsys, "tokenize", str(tmp_path / "nope"), "--province", "Huế")
    assert code == 2 and "cannot read" in err


def test_usage_errors(capsys):
    assert run(capsys, "tokenize", "--province", "Atlantis")[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["tokenize"])
    assert e.value.code == 1


def test_reverse(tmp_path, capsys):
    src = tmp_path / "t.txt"
    src.write_text("s|aŋ|˧ b|a|˧\nj|ɯə|˨˩\n", encoding="utf-8")
    code, out, _ = run(capsys, "reverse", str(src), "--province", "Cần Thơ",
                       "--output-format", "pretty")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "{dừa/vừa}"
    code, out, _ = run(capsys, "reverse", str(src), "--province", "Hà Nội")
    first = json.loads(out.splitlines()[0])
    assert first["results"][0]["candidates"] == ["sang"]


def test_reverse_bad_triplet(tmp_path, capsys):
    src = tmp_path / "t.txt"
    src.write_text("nonsense\n", encoding="utf-8")
    assert run(capsys, "reverse", str(src), "--province", "Huế")[0] == 2


def test_vocab_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "vocab", "--out-dir", str(a))[0] == 0
    assert run(capsys, "vocab", "--out-dir", str(b))[0] == 0
    for name in ("initials.txt", "rhymes.txt", "tones.txt", "manifest.txt"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def _write_jsonl(path, rows):
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows),
                    encoding="utf-8")


def test_score_word_and_dialect_groups(tmp_path, capsys):
    ref, hyp = tmp_path / "r.jsonl", tmp_path / "h.jsonl"
    _write_jsonl(ref, [{"id": "1", "province": "Hà Nội", "text": "con hươu"},
                       {"id": "2", "province": "Cần Thơ", "text": "dừa ngon"}])
    _write_jsonl(hyp, [{"id": "1", "text": "con hươu"}, {"id": "2", "text": "vừa ngon"}])
    code, out, _ = run(capsys, "score", "--ref", str(ref), "--hyp", str(hyp),
                       "--group-by-dialect")
    kv = dict(l.split("=", 1) for l in out.splitlines())
    assert code == 0
    assert kv["rate"] == "0.250000"
    assert kv["Northern.rate"] == "0.000000"
    assert kv["Southern.S"] == "1"


def test_score_phone_and_component(tmp_path, capsys):
    ref, hyp = tmp_path / "r.jsonl", tmp_path / "h.jsonl"
    _write_jsonl(ref, [{"id": "1", "province": "Cần Thơ", "text": "dừa ngon"}])
    _write_jsonl(hyp, [{"id": "1", "province": "Cần Thơ", "text": "vừa ngon"}])
    code, out, _ = run(capsys, "score", "--ref", str(ref), "--hyp", str(hyp), "--level", "phone")
    kv = dict(l.split("=", 1) for l in out.splitlines())
    assert kv["rate"] == "0.000000"  # dừa and vừa sound alike in the South
    _write_jsonl(hyp, [{"id": "1", "triplets": [["j", "ɯə", "˧"], ["ŋ", "ɔŋ", "˧"]]}])
    code, out, _ = run(capsys, "score", "--ref", str(ref), "--hyp", str(hyp),
                       "--level", "component")
    kv = dict(l.split("=", 1) for l in out.splitlines())
    assert kv["tone.rate"] == "0.500000"
    assert kv["initial.rate"] == "0.000000"


def test_score_missing_file(tmp_path, capsys):
    assert run(capsys, "score", "--ref", str(tmp_path / "x"), "--hyp", str(tmp_path / "y"))[0] == 2


def test_audit(tmp_path, capsys):
    lex = tmp_path / "lex.txt"
    lex.write_text("dừa\nvừa\nba\n", encoding="utf-8")
    code, out, _ = run(capsys, "audit", str(lex), "--province-set", "Southern")
    kv = dict(l.split("=", 1) for l in out.splitlines())
    assert code == 0
    assert kv["roundtrip_failures"] == "0"
    assert float(kv["Southern.rate"]) == pytest.approx(2 / 3, abs=1e-5)


def test_rules_dump(capsys):
    code, out, _ = run(capsys, "rules")
    assert code == 0 and out.startswith("# vietphon rule tables")


def test_config_env(tmp_path, capsys, monkeypatch):
    lex = tmp_path / "lex.txt"
    lex.write_text("ba\n", encoding="utf-8")
    cfg = tmp_path / "cfg.ini"
    cfg.write_text(f"[vietphon]\nlexicon = {lex}\noutput_format = pretty\n", encoding="utf-8")
    monkeypatch.setenv("VIETPHON_CONFIG", str(cfg))
    src = tmp_path / "t.txt"
    src.write_text("s|aŋ|˧\n", encoding="utf-8")
    code, out, _ = run(capsys, "reverse", str(src), "--province", "Hà Nội")
    assert out.strip() == "{sang/xang}"  # lexicon has neither, so both come back
    cfg.write_text("[vietphon]\nlexicon = /does/not/exist\n", encoding="utf-8")
    assert run(capsys, "reverse", str(src), "--province", "Hà Nội")[0] == 1


def test_help_lists_every_flag():
    parser = build_parser()
    sub = parser._subparsers._group_actions[0].choices
    for name, p in sub.items():
        text = p.format_help()
        for action in p._actions:
            for opt in action.option_strings:
                assert opt in text, (name, opt)

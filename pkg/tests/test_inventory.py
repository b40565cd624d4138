import unicodedata

import pytest

from vietphon import inventory as inv
from vietphon.errors import UnknownProvince
from vietphon.inventory import Dialect, MinorDialect, Tone


def test_cardinalities():
    assert len(set(inv.INITIAL_PHONEMES)) == 22
    assert len(inv.GLIDE_PHONEMES) == 1
    assert len(inv.DIPHTHONGS) == 3
    assert len(inv.MONOPHTHONGS) == 12
    assert len(set(inv.VOWEL_PHONEMES)) == 15
    assert len(set(inv.FINAL_PHONEMES)) == 10
    assert len(Tone) == 6


def test_initial_writing_forms():
    assert len(inv.INITIAL_GRAPHEMES) == 26
    assert set(inv.INITIAL_GRAPHEMES.values()) == set(inv.INITIAL_PHONEMES)


def test_phoneme_categories_are_unique_per_slot():
    slots = [set(inv.INITIAL_PHONEMES), set(inv.VOWEL_PHONEMES), set(inv.FINAL_PHONEMES)]
    assert not slots[0] & slots[1]
    assert not slots[1] & slots[2]


@pytest.mark.parametrize("mark,tone", [
    ("grave", Tone.LOW_FALLING),
    (None, Tone.FLAT),
    ("none", Tone.FLAT),
    ("dot-below", Tone.MID_GLOTTALIZED_RAISING),
    ("acute", Tone.MID_RAISING),
    ("hook-above", Tone.MID_FALLING),
    ("tilde", Tone.MID_GLOTTALIZED_FALLING),
    ("̀", Tone.LOW_FALLING),
    ("̣", Tone.MID_GLOTTALIZED_RAISING),
])
def test_tone_of_mark(mark, tone):
    assert inv.tone_of_mark(mark) is tone


def test_mark_mapping_is_bijective():
    marks = [t.mark for t in Tone]
    assert len(set(marks)) == 6
    assert all(inv.tone_of_mark(t.mark) is t for t in Tone)


@pytest.mark.parametrize("name,expected", [
    ("Hà Nội", (Dialect.NORTHERN, None)),
    ("Huế", (Dialect.CENTRAL, MinorDialect.HUE)),
    ("Cà Mau", (Dialect.SOUTHERN, MinorDialect.MEKONG_DELTA)),
    ("cà mau", (Dialect.SOUTHERN, MinorDialect.MEKONG_DELTA)),
    ("  HÀ   NỘI ", (Dialect.NORTHERN, None)),
    ("TP. Hồ Chí Minh", (Dialect.SOUTHERN, MinorDialect.MEKONG_DELTA)),
    ("Quảng Ngãi", (Dialect.SOUTHERN, MinorDialect.QUANG_NAM_QUANG_NGAI)),
    ("Nghệ An", (Dialect.CENTRAL, MinorDialect.NGHE_AN_HA_TINH)),
    ("Hà Tĩnh", (Dialect.CENTRAL, MinorDialect.NGHE_AN_HA_TINH)),
    ("Quảng Trị", (Dialect.CENTRAL, MinorDialect.QUANG_TRI)),
    ("Quảng Bình", (Dialect.CENTRAL, MinorDialect.QUANG_BINH)),
    ("Thanh Hóa", (Dialect.NORTHERN, None)),
    ("Đà Nẵng", (Dialect.SOUTHERN, None)),
])
def test_province_to_dialect(name, expected):
    assert inv.province_to_dialect(name) == expected


def test_province_nfd_input():
    assert inv.province_to_dialect(unicodedata.normalize("NFD", "Cần Thơ"))[0] is Dialect.SOUTHERN


def test_unknown_province():
    with pytest.raises(UnknownProvince) as e:
        inv.province_to_dialect("Atlantis")
    assert e.value.name == "Atlantis"


def test_registry_partition():
    provinces = list(inv.REGISTRY)
    assert len(provinces) == 63
    groups = {d: inv.REGISTRY.by_dialect(d) for d in Dialect}
    assert sum(len(g) for g in groups.values()) == 63
    assert len(groups[Dialect.CENTRAL]) == 5
    for p in provinces:
        if p.minor is not None:
            assert inv.MINOR_PARENT[p.minor] is p.dialect


def test_minor_must_match_dialect():
    with pytest.raises(ValueError):
        inv.Province("X", Dialect.NORTHERN, MinorDialect.HUE)


def test_custom_alias():
    reg = inv.ProvinceRegistry()
    reg.add_alias("Xứ Nghệ", "Nghệ An")
    assert reg.resolve("xứ nghệ").name == "Nghệ An"

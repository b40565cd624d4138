"""Vietnamese phoneme inventory, tone system, grapheme tables and the
province registry.

Everything here is an immutable module-level table; other modules only read
from it.
"""

from __future__ import annotations

import enum
import re
import unicodedata
from dataclasses import dataclass
from typing import Optional

from .errors import UnknownProvince

# Marker used wherever a slot is empty in phone output (vowel-initial words).
EMPTY = "\u2205"

GLIDE = "u\u032f"
SEMI_U = "u\u032f"  # as a final
SEMI_I = "i\u032f"
A_SHORT = "\u0103"
SCHWA_SHORT = "\u0264\u0306"


class Category(enum.Enum):
    INITIAL = "initial"
    GLIDE = "glide"
    MONOPHTHONG = "vowel-monophthong"
    DIPHTHONG = "vowel-diphthong"
    FINAL = "final"
    TONE = "tone"


class Tone(enum.Enum):
    """The six tones, numbered in their conventional order.

    ``mark`` is the combining diacritic that writes the tone (``None`` for the
    unmarked flat tone).
    """

    FLAT = (1, "flat", "˧", None)
    LOW_FALLING = (2, "low-falling", "˨˩", "\u0300")
    MID_RAISING = (3, "mid-raising", "˧˥", "\u0301")
    MID_FALLING = (4, "mid-falling", "˧˩", "\u0309")
    MID_GLOTTALIZED_FALLING = (5, "mid-glottalized-falling", "˧ʔ˩", "\u0303")
    MID_GLOTTALIZED_RAISING = (6, "mid-glottalized-raising", "˧ʔ˥", "\u0323")

    def __init__(self, number, label, symbol, mark):
        self.number = number
        self.label = label
        self.symbol = symbol
        self.mark = mark

    @classmethod
    def from_label(cls, label: str) -> "Tone":
        for tone in cls:
            if label in (tone.label, tone.name, tone.symbol):
                return tone
        raise KeyError(label)

    def __lt__(self, other):
        return self.number < other.number


# Mark names accepted by tone_of_mark, besides the raw combining characters.
MARK_NAMES = {
    None: Tone.FLAT,
    "none": Tone.FLAT,
    "grave": Tone.LOW_FALLING,
    "acute": Tone.MID_RAISING,
    "hook-above": Tone.MID_FALLING,
    "tilde": Tone.MID_GLOTTALIZED_FALLING,
    "dot-below": Tone.MID_GLOTTALIZED_RAISING,
}
TONE_MARKS = {t.mark: t for t in Tone if t.mark is not None}


def tone_of_mark(mark) -> Tone:
    """Map a diacritic (name or combining character) to its tone."""
    if mark in TONE_MARKS:
        return TONE_MARKS[mark]
    return MARK_NAMES[mark]


@dataclass(frozen=True)
class Phoneme:
    symbol: str
    category: Category


INITIAL_PHONEMES = (
    "b", "t", "tʰ", "k", "f", "d", "ɣ", "z", "j", "s", "ʂ", "c͡ɕ", "t͡ʂ",
    "ŋ", "x", "v", "n", "m", "ɲ", "r", "l", "h",
)
GLIDE_PHONEMES = (GLIDE,)
DIPHTHONGS = ("ie", "uo", "ɯə")
MONOPHTHONGS = (
    "a", A_SHORT, SCHWA_SHORT, "i", "ɛ", "e", "u", "ɯ", "o", "ɔ", "ɔː", "ɤ",
)
VOWEL_PHONEMES = DIPHTHONGS + MONOPHTHONGS
FINAL_PHONEMES = ("m", "n", "ŋ", "ɲ", "p", "t", "k", "c", SEMI_U, SEMI_I)

PHONEMES = tuple(
    [Phoneme(s, Category.INITIAL) for s in INITIAL_PHONEMES]
    + [Phoneme(s, Category.GLIDE) for s in GLIDE_PHONEMES]
    + [Phoneme(s, Category.DIPHTHONG) for s in DIPHTHONGS]
    + [Phoneme(s, Category.MONOPHTHONG) for s in MONOPHTHONGS]
    + [Phoneme(s, Category.FINAL) for s in FINAL_PHONEMES]
    + [Phoneme(t.symbol, Category.TONE) for t in Tone]
)

# Onset graphemes in the order they are probed; ``ngh`` before ``ng`` etc.
ONSET_ORDER = (
    "ngh", "tr", "th", "ph", "nh", "ng", "kh", "gi", "gh", "ch", "q", "đ",
    "x", "v", "t", "s", "r", "n", "m", "l", "k", "h", "g", "d", "c", "b",
)
INITIAL_GRAPHEMES = {
    "b": "b", "t": "t", "th": "tʰ", "k": "k", "c": "k", "q": "k",
    "ph": "f", "đ": "d", "gh": "ɣ", "g": "ɣ", "gi": "z", "d": "j",
    "x": "s", "s": "ʂ", "ch": "c͡ɕ", "tr": "t͡ʂ", "ng": "ŋ", "ngh": "ŋ",
    "nh": "ɲ", "l": "l", "r": "r", "kh": "x", "v": "v", "m": "m",
    "n": "n", "h": "h",
}

NUCLEUS_ORDER = (
    "oo", "ươ", "ưa", "uô", "ua", "iê", "yê", "ia", "ya", "e", "ê", "u",
    "ư", "ô", "i", "y", "ơ", "â", "a", "o", "ă",
)
VOWEL_GRAPHEMES = {
    "oo": "ɔː", "ươ": "ɯə", "ưa": "ɯə", "uô": "uo", "ua": "uo",
    "iê": "ie", "yê": "ie", "ia": "ie", "ya": "ie",
    "e": "ɛ", "ê": "e", "u": "u", "ư": "ɯ", "ô": "o", "i": "i", "y": "i",
    "ơ": "ɤ", "â": SCHWA_SHORT, "a": "a", "o": "ɔ", "ă": A_SHORT,
}

CODA_ORDER = ("ng", "nh", "ch", "u", "n", "o", "p", "c", "m", "y", "i", "t")
FINAL_GRAPHEMES = {
    "ng": "ŋ", "nh": "ɲ", "ch": "c", "u": SEMI_U, "n": "n", "o": SEMI_U,
    "p": "p", "c": "k", "m": "m", "y": SEMI_I, "i": SEMI_I, "t": "t",
}

# Single-valued writing forms; phonemes with context-dependent spellings are
# resolved in the syllable writer.
INITIAL_WRITING = {
    "b": "b", "t": "t", "tʰ": "th", "f": "ph", "d": "đ", "z": "gi", "j": "d",
    "s": "x", "ʂ": "s", "c͡ɕ": "ch", "t͡ʂ": "tr", "x": "kh", "v": "v",
    "ɲ": "nh", "l": "l", "r": "r", "m": "m", "n": "n", "h": "h",
}
VOWEL_WRITING = {
    "a": "a", SCHWA_SHORT: "â", "ɛ": "e", "e": "ê", "u": "u", "ɯ": "ư",
    "o": "ô", "ɔ": "o", "ɔː": "oo", "ɤ": "ơ",
}
FINAL_WRITING = {
    "m": "m", "n": "n", "ŋ": "ng", "ɲ": "nh", "p": "p", "t": "t", "k": "c",
    "c": "ch",
}

FRONT_VOWELS = frozenset({"i", "e", "ɛ", "ie"})
STOP_FINALS = frozenset({"p", "t", "k", "c"})

VIETNAMESE_LETTERS = frozenset("abcdeghiklmnopqrstuvxyăâđêôơư")


def normalize_text(text: str) -> str:
    """NFC-compose and case-fold."""
    return unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).casefold())


# --------------------------------------------------------------------------
# Provinces

class Dialect(enum.Enum):
    NORTHERN = "Northern"
    CENTRAL = "Central"
    SOUTHERN = "Southern"


class MinorDialect(enum.Enum):
    NGHE_AN_HA_TINH = "NgheAnHaTinh"
    QUANG_TRI = "QuangTri"
    QUANG_BINH = "QuangBinh"
    HUE = "Hue"
    QUANG_NAM_QUANG_NGAI = "QuangNamQuangNgai"
    MEKONG_DELTA = "MekongDelta"


MINOR_PARENT = {
    MinorDialect.NGHE_AN_HA_TINH: Dialect.CENTRAL,
    MinorDialect.QUANG_TRI: Dialect.CENTRAL,
    MinorDialect.QUANG_BINH: Dialect.CENTRAL,
    MinorDialect.HUE: Dialect.CENTRAL,
    MinorDialect.QUANG_NAM_QUANG_NGAI: Dialect.SOUTHERN,
    MinorDialect.MEKONG_DELTA: Dialect.SOUTHERN,
}


@dataclass(frozen=True)
class Province:
    name: str
    dialect: Dialect
    minor: Optional[MinorDialect] = None
    # Southern provinces where "tr" keeps a retroflex stop instead of
    # merging with "ch".
    retroflex_tr: bool = False

    def __post_init__(self):
        if self.minor is not None and MINOR_PARENT[self.minor] is not self.dialect:
            raise ValueError(f"{self.minor} is not a {self.dialect} minor dialect")
        if self.retroflex_tr and self.dialect is not Dialect.SOUTHERN:
            raise ValueError("retroflex_tr only applies to Southern provinces")


_NORTHERN = (
    "Thanh Hóa", "Hà Giang", "Cao Bằng", "Bắc Kạn", "Lạng Sơn", "Tuyên Quang",
    "Thái Nguyên", "Phú Thọ", "Bắc Giang", "Quảng Ninh", "Lào Cai", "Lai Châu",
    "Yên Bái", "Điện Biên", "Sơn La", "Hòa Bình", "Hà Nội", "Hà Nam",
    "Bắc Ninh", "Hải Dương", "Hải Phòng", "Hưng Yên", "Nam Định", "Ninh Bình",
    "Thái Bình", "Vĩnh Phúc",
)
_CENTRAL = {
    "Nghệ An": MinorDialect.NGHE_AN_HA_TINH,
    "Hà Tĩnh": MinorDialect.NGHE_AN_HA_TINH,
    "Quảng Bình": MinorDialect.QUANG_BINH,
    "Quảng Trị": MinorDialect.QUANG_TRI,
    "Thừa Thiên Huế": MinorDialect.HUE,
}
_SOUTHERN = (
    "Đà Nẵng", "Quảng Nam", "Quảng Ngãi", "Kon Tum", "Bình Định", "Gia Lai",
    "Phú Yên", "Đắk Lắk", "Đắk Nông", "Khánh Hòa", "Lâm Đồng", "Ninh Thuận",
    "Bình Thuận", "Bình Phước", "Đồng Nai", "Bình Dương", "Bà Rịa - Vũng Tàu",
    "Tây Ninh", "Hồ Chí Minh", "Long An", "Đồng Tháp", "Tiền Giang", "Bến Tre",
    "Vĩnh Long", "An Giang", "Trà Vinh", "Cần Thơ", "Hậu Giang", "Sóc Trăng",
    "Kiên Giang", "Bạc Liêu", "Cà Mau",
)
_QUANG_NAM_QUANG_NGAI = ("Quảng Nam", "Quảng Ngãi")
_MEKONG_DELTA = (
    "Bình Dương", "Bình Phước", "Đồng Nai", "Bà Rịa - Vũng Tàu", "Tây Ninh",
    "Hồ Chí Minh", "Long An", "Tiền Giang", "Hậu Giang", "Bến Tre", "Đồng Tháp",
    "Vĩnh Long", "Trà Vinh", "Cần Thơ", "Sóc Trăng", "An Giang", "Kiên Giang",
    "Bạc Liêu", "Cà Mau",
)
_RETROFLEX_TR = (
    "Quảng Nam", "Quảng Ngãi", "Kon Tum", "Gia Lai", "Đắk Lắk", "Bình Định",
    "Phú Yên", "Khánh Hòa", "Ninh Thuận", "Bình Thuận", "Lâm Đồng",
)


def _build_registry():
    out = {}
    for name in _NORTHERN:
        out[name] = Province(name, Dialect.NORTHERN)
    for name, minor in _CENTRAL.items():
        out[name] = Province(name, Dialect.CENTRAL, minor)
    for name in _SOUTHERN:
        minor = None
        if name in _QUANG_NAM_QUANG_NGAI:
            minor = MinorDialect.QUANG_NAM_QUANG_NGAI
        elif name in _MEKONG_DELTA:
            minor = MinorDialect.MEKONG_DELTA
        out[name] = Province(name, Dialect.SOUTHERN, minor, name in _RETROFLEX_TR)
    return out


PROVINCES = _build_registry()

DEFAULT_ALIASES = {
    "Huế": "Thừa Thiên Huế",
    "Thừa Thiên - Huế": "Thừa Thiên Huế",
    "TP. Hồ Chí Minh": "Hồ Chí Minh",
    "TP Hồ Chí Minh": "Hồ Chí Minh",
    "Thành phố Hồ Chí Minh": "Hồ Chí Minh",
    "Sài Gòn": "Hồ Chí Minh",
    "TP. Hà Nội": "Hà Nội",
    "TP. Đà Nẵng": "Đà Nẵng",
    "TP. Hải Phòng": "Hải Phòng",
    "TP. Cần Thơ": "Cần Thơ",
    "Bà Rịa Vũng Tàu": "Bà Rịa - Vũng Tàu",
    "Bà Rịa-Vũng Tàu": "Bà Rịa - Vũng Tàu",
    "Kom Tum": "Kon Tum",
    "Bắc Cạn": "Bắc Kạn",
    "Đắc Lắc": "Đắk Lắk",
    "Đăk Lăk": "Đắk Lắk",
    "Đắk Lắc": "Đắk Lắk",
    "Đắc Nông": "Đắk Nông",
    "Đăk Nông": "Đắk Nông",
    "Hoà Bình": "Hòa Bình",
    "Khánh Hoà": "Khánh Hòa",
    "Thanh Hoá": "Thanh Hóa",
    "Nghệ Tĩnh": "Nghệ An",
}


def province_key(name: str) -> str:
    key = normalize_text(name)
    key = re.sub(r"\s*[-–]\s*", " ", key)
    return " ".join(key.split())


class ProvinceRegistry:
    """Case-insensitive province lookup with an alias table."""

    def __init__(self, provinces=None, aliases=None):
        self.provinces = dict(PROVINCES if provinces is None else provinces)
        self._index = {province_key(n): p for n, p in self.provinces.items()}
        for alias, target in (DEFAULT_ALIASES if aliases is None else aliases).items():
            self.add_alias(alias, target)

    def add_alias(self, alias, target):
        self._index[province_key(alias)] = self.resolve(target)

    def resolve(self, name) -> Province:
        if isinstance(name, Province):
            return name
        try:
            return self._index[province_key(name)]
        except KeyError:
            raise UnknownProvince(name) from None

    def __iter__(self):
        return iter(self.provinces.values())

    def __len__(self):
        return len(self.provinces)

    def by_dialect(self, dialect: Dialect):
        return [p for p in self if p.dialect is dialect]


REGISTRY = ProvinceRegistry()


def resolve_province(name) -> Province:
    return REGISTRY.resolve(name)


def province_to_dialect(name):
    """Return ``(dialect, minor_dialect)`` for a province name."""
    p = REGISTRY.resolve(name)
    return p.dialect, p.minor

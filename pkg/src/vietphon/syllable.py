"""Decomposition of one orthographic word into initial, glide, vowel, final
and tone, and the inverse spelling of such a decomposition.

Parsing runs tone -> initial -> glide -> vowel -> final. Every stage only
inspects a bounded prefix of the remaining string, so the work per word is
linear in its length.
"""

from __future__ import annotations

import contextlib
import contextvars
import unicodedata
from dataclasses import dataclass, field
from typing import Optional

from . import inventory as inv
from .errors import (
    MultipleToneMarks,
    NotASyllable,
    NoVowel,
    TrailingGarbage,
    UnwritableSyllable,
)
from .inventory import A_SHORT, GLIDE, SCHWA_SHORT, SEMI_I, SEMI_U, Tone

_CATEGORY_SETS = {
    "initial": frozenset(inv.INITIAL_PHONEMES),
    "glide": frozenset(inv.GLIDE_PHONEMES),
    "vowel": frozenset(inv.VOWEL_PHONEMES),
    "final": frozenset(inv.FINAL_PHONEMES),
}


@dataclass(frozen=True)
class Syllable:
    initial: Optional[str]
    glide: Optional[str]
    vowel: str
    final: Optional[str]
    tone: Tone
    source: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.vowel:
            raise NoVowel("a syllable needs a vowel nucleus")
        for slot in ("initial", "glide", "vowel", "final"):
            value = getattr(self, slot)
            if value is not None and value not in _CATEGORY_SETS[slot]:
                raise ValueError(f"{value!r} is not a valid {slot} phoneme")
        if not isinstance(self.tone, Tone):
            raise TypeError("tone must be a Tone")

    @property
    def slots(self):
        return (self.initial, self.glide, self.vowel, self.final, self.tone)

    def __str__(self):
        parts = [p or "" for p in (self.initial, self.glide, self.vowel, self.final)]
        return "/" + "".join(parts) + self.tone.symbol + "/"


# ---------------------------------------------------------------------------
# Probe accounting (used to check that parsing stays linear).

_probes = contextvars.ContextVar("vietphon_probes", default=None)


class ProbeCounter:
    def __init__(self):
        self.count = 0


@contextlib.contextmanager
def count_probes():
    counter = ProbeCounter()
    token = _probes.set(counter)
    try:
        yield counter
    finally:
        _probes.reset(token)


def _probe(n=1):
    counter = _probes.get()
    if counter is not None:
        counter.count += n


# ---------------------------------------------------------------------------
# Parsing

def get_tone(word: str):
    """Return ``(tone, word without its tone mark)``."""
    decomposed = unicodedata.normalize("NFD", word)
    tone = Tone.FLAT
    kept = []
    found = 0
    for ch in decomposed:
        _probe()
        if ch in inv.TONE_MARKS:
            found += 1
            tone = inv.TONE_MARKS[ch]
        else:
            kept.append(ch)
    if found > 1:
        raise MultipleToneMarks(f"{word!r} carries {found} tone marks")
    return tone, unicodedata.normalize("NFC", "".join(kept))


def _has_vowel(s: str) -> bool:
    return any(ch in "aeiouy" for ch in unicodedata.normalize("NFD", s))


def get_initial(word: str):
    """Return ``(initial phoneme or None, residual)``.

    Words starting with ``qu`` keep their letters so that the glide stage can
    consume them.
    """
    for onset in inv.ONSET_ORDER:
        _probe()
        if word.startswith(onset):
            if onset == "q":
                return "k", word
            rest = word[len(onset):]
            if onset == "gi" and not _has_vowel(rest):
                # "gì", "gìn": the i of gi is the nucleus.
                return "z", word[1:]
            return inv.INITIAL_GRAPHEMES[onset], rest
    return None, word


_O_GLIDE = ("oa", "oă", "oe")
# "ua" is left to the nucleus table: outside "qu" it always spells /uo/.
_U_GLIDE = ("uê", "uy", "uơ", "uâ", "uya")


def get_glide(word: str):
    _probe()
    if word.startswith("qu"):
        return GLIDE, word[2:]
    for case in _O_GLIDE:
        _probe()
        if word.startswith(case):
            return GLIDE, word[1:]
    for case in _U_GLIDE:
        _probe()
        if word.startswith(case):
            return GLIDE, word[1:]
    return None, word


def get_vowel(word: str):
    for nucleus in inv.NUCLEUS_ORDER:
        _probe()
        if word.startswith(nucleus):
            rest = word[len(nucleus):]
            vowel = inv.VOWEL_GRAPHEMES[nucleus]
            if nucleus == "a" and rest in ("y", "u"):
                vowel = A_SHORT
            return vowel, rest
    raise NoVowel(f"no vowel nucleus in {word!r}")


def get_final(word: str):
    if not word:
        return None
    _probe()
    if word in inv.FINAL_GRAPHEMES:
        return inv.FINAL_GRAPHEMES[word]
    raise TrailingGarbage(f"{word!r} is not a final")


def parse_word(word: str) -> Syllable:
    """Decompose one orthographic word into a :class:`Syllable`."""
    text = inv.normalize_text(word)
    if not text or any(ch not in inv.VIETNAMESE_LETTERS for ch in get_tone(text)[1]):
        raise NotASyllable(f"{word!r} is not a Vietnamese syllable")
    tone, rest = get_tone(text)
    initial, rest = get_initial(rest)
    glide, rest = get_glide(rest)
    if initial == "k" and glide is None and text.startswith("q"):
        raise NotASyllable(f"{word!r}: q must be followed by u")
    gi_onset = initial == "z"
    vowel, rest = get_vowel(rest)
    final = get_final(rest)
    if gi_onset and vowel == "e" and final is not None and glide is None:
        # giếng, giết: the i of gi belongs to the diphthong iê.
        vowel = "ie"
    syl = Syllable(initial, glide, vowel, final, tone, source=text)
    problem = phonotactic_problem(syl)
    if problem:
        raise NotASyllable(f"{word!r}: {problem}")
    return syl


def is_syllable(word: str) -> bool:
    try:
        parse_word(word)
    except NotASyllable:
        return False
    return True


# ---------------------------------------------------------------------------
# Phonotactics

_NO_SEMI_I = frozenset({"i", "e", "ɛ", "ie", "ɔː"})
_NO_SEMI_U = frozenset({"u", "o", "ɔ", "uo", "ɤ", "ɔː"})
_NO_GLIDE = frozenset({"u", "o", "ɔ", "ɔː", "uo", "ɯ", "ɯə"})
_RAISING = (Tone.MID_RAISING, Tone.MID_GLOTTALIZED_RAISING)


def phonotactic_problem(syl: Syllable) -> Optional[str]:
    """Return a description of the first constraint ``syl`` violates."""
    v, f = syl.vowel, syl.final
    if f in ("ɲ", "c") and v not in ("a", "e", "i"):
        return "palatal final after a vowel other than a, ê, i"
    if v in ("i", "e") and f in ("ŋ", "k"):
        return "velar final after i or ê"
    if v in (A_SHORT, SCHWA_SHORT) and f is None:
        return "short vowel without a final"
    if v == "ɔː" and f not in ("ŋ", "k"):
        return "oo only before ng or c"
    if syl.glide and v in _NO_GLIDE and not (v == "o" and syl.initial == "k"):
        return "glide before a rounded or back vowel"
    if f == SEMI_I and v in _NO_SEMI_I:
        return "semivowel i after a front vowel"
    if f == SEMI_U and v in _NO_SEMI_U:
        return "semivowel u after a rounded vowel"
    if f in inv.STOP_FINALS and syl.tone not in _RAISING:
        return "stop final with a non-raising tone"
    if syl.initial == "z" and not syl.glide:
        if v == "e":
            return "gi + ê is spelled as the diphthong iê"
        if v == "ie" and f is None:
            return "gi + open iê is not writable"
        if v == "i" and f == SEMI_U:
            return "gi + iu would be read as gi + u"
    return None


def is_valid(syl: Syllable) -> bool:
    return phonotactic_problem(syl) is None


# ---------------------------------------------------------------------------
# Writing

def _initial_letters(syl: Syllable) -> str:
    ini = syl.initial
    if ini is None:
        return ""
    front = syl.glide is None and syl.vowel in inv.FRONT_VOWELS
    if ini == "k":
        if syl.glide:
            return "q"
        return "k" if front else "c"
    if ini == "ɣ":
        return "gh" if front else "g"
    if ini == "ŋ":
        return "ngh" if front else "ng"
    return inv.INITIAL_WRITING[ini]


def _vowel_letters(syl: Syllable) -> str:
    v, f = syl.vowel, syl.final
    if v == "ie":
        if f is not None:
            return "yê" if (syl.glide or syl.initial is None) else "iê"
        return "ya" if syl.glide else "ia"
    if v == "uo":
        return "uô" if f is not None else "ua"
    if v == "ɯə":
        return "ươ" if f is not None else "ưa"
    if v == A_SHORT:
        return "a" if f in (SEMI_I, SEMI_U) else "ă"
    if v == "i":
        if syl.glide or (syl.initial is None and f is None):
            return "y"
        return "i"
    return inv.VOWEL_WRITING[v]


def _final_letters(syl: Syllable) -> str:
    f = syl.final
    if f is None:
        return ""
    if f == SEMI_I:
        return "y" if syl.vowel in (A_SHORT, SCHWA_SHORT) else "i"
    if f == SEMI_U:
        return "o" if syl.vowel in ("a", "ɛ") else "u"
    return inv.FINAL_WRITING[f]


def write_orthography(syl: Syllable) -> str:
    """Spell a syllable, placing the tone mark on the nucleus."""
    problem = phonotactic_problem(syl)
    if problem:
        raise UnwritableSyllable(f"{syl}: {problem}")
    onset = _initial_letters(syl)
    glide = ""
    if syl.glide:
        glide = "u" if (syl.initial == "k" or syl.vowel not in ("a", A_SHORT, "ɛ")) else "o"
    nucleus = _vowel_letters(syl)
    if syl.initial == "z" and not syl.glide and syl.vowel in ("i", "ie"):
        # the i of gi doubles as (the start of) the nucleus
        if syl.vowel == "ie":
            nucleus, carrier = nucleus[1:], 2
        else:
            nucleus, carrier = "", 1
    elif len(nucleus) == 2 and (syl.final is not None or nucleus == "oo"):
        carrier = len(onset) + len(glide) + 1
    else:
        carrier = len(onset) + len(glide)
    letters = onset + glide + nucleus + _final_letters(syl)
    if syl.tone.mark:
        letters = letters[: carrier + 1] + syl.tone.mark + letters[carrier + 1:]
    return unicodedata.normalize("NFC", letters)


def canonical_spelling(word: str) -> str:
    """Respell ``word`` in the canonical orthography (tone placement, i/y)."""
    return write_orthography(parse_word(word))

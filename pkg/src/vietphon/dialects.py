"""Phoneme to dialect-phone rewriting.

Rules live in scoped tables. A province resolves to a chain of scopes
(dialect first, then province-level overlays); for every slot the most
specific scope holding a matching entry wins. Tones and initials are mapped
one phoneme at a time, rhymes on the ``(vowel, final)`` pair so that rules
sharing a vowel (``in`` vs ``inh``) never interfere. The glide is carried
through untouched unless an initial rule absorbs it (Southern ``qu``).

Phones are atomic strings: a rhyme is a tuple such as ``("ɨ", "ʲ", "ɲ")``
and its display form is the concatenation ``"ɨʲɲ"``.
"""

from __future__ import annotations

import csv
import functools
import hashlib
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from . import inventory as inv
from .errors import MissingMinorDialect, RuleFileError
from .inventory import (
    A_SHORT,
    EMPTY,
    GLIDE,
    SCHWA_SHORT,
    SEMI_I,
    SEMI_U,
    Dialect,
    MinorDialect,
    Province,
    Tone,
)
from .syllable import Syllable

RULES_VERSION = "1"

SLOTS = ("tone", "initial", "rhyme")
ANY = "*"
WITH_GLIDE = "glide"  # initial rule that fires only with a glide and absorbs it
CONTEXTS = (WITH_GLIDE, ANY)  # most specific first

NORTHERN = "Northern"
CENTRAL = "Central"
SOUTHERN = "Southern"
SOUTHERN_CS = "Southern/cs-merger"
SOUTHERN_TR = "Southern/retroflex-tr"
MINOR_SCOPES = {m: f"{inv.MINOR_PARENT[m].value}/{m.value}" for m in MinorDialect}


@dataclass(frozen=True)
class Rule:
    scope: str
    slot: str
    pattern: tuple
    context: str
    output: tuple
    note: str = ""

    def __post_init__(self):
        if self.slot not in SLOTS:
            raise RuleFileError(f"unknown slot {self.slot!r}")
        if self.context not in CONTEXTS:
            raise RuleFileError(f"unknown context {self.context!r}")
        if not self.output:
            raise RuleFileError(f"empty output for {self.pattern!r}")

    @property
    def key(self):
        return (self.slot, self.pattern, self.context)


class RuleTable:
    """Entries of one scope, indexed for lookup."""

    def __init__(self, scope: str, rules: Iterable[Rule] = ()):
        self.scope = scope
        self._index: dict = {}
        self.rules: list[Rule] = []
        for rule in rules:
            self.add(rule)

    def add(self, rule: Rule, replace=False):
        if rule.scope != self.scope:
            raise RuleFileError(f"rule for {rule.scope!r} added to {self.scope!r}")
        if rule.key in self._index:
            if not replace:
                raise RuleFileError(f"duplicate rule {rule.key!r} in {self.scope!r}")
            self.rules = [r for r in self.rules if r.key != rule.key]
        self._index[rule.key] = rule
        self.rules.append(rule)

    def lookup(self, slot, pattern, has_glide=False) -> Optional[Rule]:
        for ctx in CONTEXTS:
            if ctx == WITH_GLIDE and not has_glide:
                continue
            rule = self._index.get((slot, pattern, ctx))
            if rule is not None:
                return rule
        return None

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


# ---------------------------------------------------------------------------
# Compiled tables

def _ph(text: str) -> tuple:
    return tuple(text.split())


def _build_default_rules():
    rules: list[Rule] = []

    def tone(scope, src, dst, note):
        rules.append(Rule(scope, "tone", (src.label,), ANY, (dst.label,), note))

    def initial(scope, src, dst, note, context=ANY):
        rules.append(Rule(scope, "initial", (src,), context, (dst,), note))

    def rhyme(scope, vowel, final, out, note):
        rules.append(Rule(scope, "rhyme", (vowel, final or EMPTY), ANY, _ph(out), note))

    # Northern
    initial(NORTHERN, "ʂ", "s", "s and x merge")
    initial(NORTHERN, "t͡ʂ", "c͡ɕ", "ch and tr merge")
    initial(NORTHERN, "r", "z", "gi, r and d merge")
    initial(NORTHERN, "j", "z", "gi, r and d merge")
    rhyme(NORTHERN, "ɯ", SEMI_U, f"ɨ {SEMI_U}", "back vowel centralizes before u")
    rhyme(NORTHERN, "ɯə", SEMI_U, f"ɨə {SEMI_U}", "back diphthong centralizes before u")
    front_velar = {"i": "ɨ", "e": "ə", "a": "ɜ"}
    for vowel, central in front_velar.items():
        rhyme(NORTHERN, vowel, "ɲ", f"{central} ʲ ɲ", "front vowel + velar nasal")
        rhyme(NORTHERN, vowel, "c", f"{central} ʲ c", "front vowel + velar stop")
    rounded_velar = {
        "u": ("ʷ ʊ", "ŋᵐ", "kᵖ"),
        "o": ("ɤ ʷ", "ŋᵐ", "kᵖ"),
        "ɔ": ("ɑ ʷ", "ŋᵐ", "kᵖ"),
    }

    def rounded(scope):
        for vowel, (core, nasal, stop) in rounded_velar.items():
            rhyme(scope, vowel, "ŋ", f"{core} {nasal}", "rounded back vowel + velar nasal")
            rhyme(scope, vowel, "k", f"{core} {stop}", "rounded back vowel + velar stop")

    rounded(NORTHERN)

    # Central, shared by all minor dialects
    initial(CENTRAL, "j", "z", "d and gi merge")
    initial(CENTRAL, "t͡ʂ", "ʈ", "tr is a retroflex stop")
    initial(CENTRAL, "c͡ɕ", "c", "ch is a palatal stop")
    rounded(CENTRAL)

    scope = MINOR_SCOPES[MinorDialect.NGHE_AN_HA_TINH]
    tone(scope, Tone.MID_GLOTTALIZED_RAISING, Tone.MID_GLOTTALIZED_FALLING,
         "the two glottalized tones merge")
    for vowel, out in (("i", "i"), ("e", "e"), ("a", "ɛ")):
        rhyme(scope, vowel, "ɲ", f"{out} ɲ", "velar palatalized, vowel kept")
        rhyme(scope, vowel, "c", f"{out} c", "velar palatalized, vowel kept")

    hoi_nga = "mid-falling and mid-glottalized-falling merge"
    scope = MINOR_SCOPES[MinorDialect.QUANG_TRI]
    tone(scope, Tone.MID_GLOTTALIZED_FALLING, Tone.MID_FALLING, hoi_nga)
    for vowel, out in (("i", "i"), ("e", "e"), ("a", "ɛ")):
        rhyme(scope, vowel, "ɲ", f"{out} ŋ", "front vowel + velar keeps its form")
        rhyme(scope, vowel, "c", f"{out} k", "front vowel + velar keeps its form")

    def lengthen(scope):
        for vowel in ("i", "e", "ɛ"):
            for final in ("n", "t"):
                rhyme(scope, vowel, final, f"{vowel}ː {final}",
                      "front vowel lengthens before an alveolar")

    scope = MINOR_SCOPES[MinorDialect.QUANG_BINH]
    tone(scope, Tone.MID_GLOTTALIZED_FALLING, Tone.MID_FALLING, hoi_nga)
    lengthen(scope)
    for vowel, out in (("i", "i"), ("e", "e"), ("a", "ɛ")):
        rhyme(scope, vowel, "ɲ", f"{out} n", "velar nasal becomes alveolar")
        rhyme(scope, vowel, "c", f"{out} t", "velar stop becomes alveolar")

    scope = MINOR_SCOPES[MinorDialect.HUE]
    tone(scope, Tone.MID_GLOTTALIZED_FALLING, Tone.MID_FALLING, hoi_nga)
    lengthen(scope)
    for vowel, out in (("i", "ɨ"), ("e", "ə"), ("a", "ɜ")):
        rhyme(scope, vowel, "ɲ", f"{out} n", "vowel centralizes, coda alveolar")
        rhyme(scope, vowel, "c", f"{out} t", "vowel centralizes, coda alveolar")

    # Southern
    tone(SOUTHERN, Tone.MID_GLOTTALIZED_RAISING, Tone.MID_RAISING,
         "mid-raising and mid-glottalized-raising merge")
    initial(SOUTHERN, "z", "j", "gi, d and v merge")
    initial(SOUTHERN, "v", "j", "gi, d and v merge")
    initial(SOUTHERN, "k", "w", "qu is pronounced w", context=WITH_GLIDE)
    for vowel, final, out in (
        ("ie", "p", "i p"), ("ɯə", "p", "ɯ p"),
        ("ie", "m", "i m"), ("ɯə", "m", "ɯ m"),
        ("ie", SEMI_U, f"i {SEMI_U}"), ("ɯə", SEMI_U, f"ɯ {SEMI_U}"),
        ("ɯə", SEMI_I, f"ɯ {SEMI_I}"),
    ):
        rhyme(SOUTHERN, vowel, final, out, "diphthong reduces before a labial or semivowel")
    for vowel, out in (("i", "i"), ("e", "e"), ("a", "ɛ")):
        rhyme(SOUTHERN, vowel, "ɲ", f"{out} ɲ", "velar palatalized, vowel kept")
        rhyme(SOUTHERN, vowel, "c", f"{out} c", "velar palatalized, vowel kept")

    initial(SOUTHERN_TR, "t͡ʂ", "ʈ", "tr is a retroflex stop")
    initial(SOUTHERN_TR, "c͡ɕ", "c", "ch is a palatal stop")
    initial(SOUTHERN_CS, "t͡ʂ", "c", "tr and ch merge")
    initial(SOUTHERN_CS, "c͡ɕ", "c", "tr and ch merge")
    initial(SOUTHERN_CS, "ʂ", "s", "s and x merge")

    scope = MINOR_SCOPES[MinorDialect.QUANG_NAM_QUANG_NGAI]
    for vowel, out in (("i", "ɪ j"), ("u", "ʊ w"), ("ɯ", "ɤ ɯ")):
        rhyme(scope, vowel, None, out, "open close vowel diphthongizes")
    for vowel, long in (("uo", "uː"), ("ɯə", "ɯː"), ("ie", "iː")):
        for final in (SEMI_I, SEMI_U):
            if inv_valid_rhyme(vowel, final):
                rhyme(scope, vowel, final, f"{long} {final}",
                      "diphthong becomes a long vowel before a semivowel")
    rhyme(scope, "ɔ", SEMI_I, "u ə", "oi is pronounced uə (nói as núa)")
    rhyme(scope, "a", SEMI_I, "a e", "ai is pronounced ae")
    labial = {"a": "ɔ", "ɔ": "o", "o": "ɤ", "u": "ʊ", A_SHORT: "a", SCHWA_SHORT: "a"}
    for vowel, out in labial.items():
        for final in ("m", "p", SEMI_U):
            if inv_valid_rhyme(vowel, final):
                rhyme(scope, vowel, final, f"{out} {final}", "vowel shift before a labial")
    rhyme(scope, "uo", "m", "ʊ m", "uo before m")
    velar = {"a": "ɑː", "ɔ": "ɑːᵐ", "o": "ʌ", SCHWA_SHORT: "ɑ",
             "uo": "uː", "ie": "iː", "ɯə": "ɯː"}
    for vowel, out in velar.items():
        for final in ("ŋ", "k"):
            if inv_valid_rhyme(vowel, final):
                rhyme(scope, vowel, final, f"{out} {final}", "vowel shift before a velar")

    scope = MINOR_SCOPES[MinorDialect.MEKONG_DELTA]
    rhyme(scope, "i", "ɲ", "i n", "velar becomes alveolar after i")
    rhyme(scope, "i", "c", "i t", "velar becomes alveolar after i")
    rhyme(scope, "e", "ɲ", "əː n", "ê centralizes and lengthens, coda alveolar")
    rhyme(scope, "e", "c", "əː t", "ê centralizes and lengthens, coda alveolar")
    for vowel in ("a", A_SHORT, "ɤ", SCHWA_SHORT, "ɛ"):
        rhyme(scope, vowel, "n", f"{vowel} ŋ", "alveolar becomes velar")
        rhyme(scope, vowel, "t", f"{vowel} k", "alveolar becomes velar")
    for final in ("n", "ŋ"):
        rhyme(scope, "u", final, "ʷ ʊ ŋᵐ", "rounded vowel, labialized velar coda")
        rhyme(scope, "ɔ", final, "ɤ ŋᵐ", "rounded vowel, labialized velar coda")
    for final in ("t", "k"):
        rhyme(scope, "u", final, "ʷ ʊ kᵖ", "rounded vowel, labialized velar coda")
        rhyme(scope, "ɔ", final, "ʌ kᵖ", "rounded vowel, labialized velar coda")
    return rules


def inv_valid_rhyme(vowel, final) -> bool:
    """Whether ``vowel + final`` occurs in at least one valid syllable."""
    from .syllable import is_valid
    for tone in (Tone.FLAT, Tone.MID_RAISING):
        for initial in ("t", None):
            if is_valid(Syllable(initial, None, vowel, final, tone)):
                return True
    return False


# ---------------------------------------------------------------------------
# Rule sets and profiles

class RuleSet:
    """All scoped tables, plus the scope chain of each province."""

    def __init__(self, rules: Iterable[Rule], version=RULES_VERSION):
        self.tables: dict[str, RuleTable] = {}
        self.version = version
        for rule in rules:
            self.table(rule.scope).add(rule)

    def table(self, scope) -> RuleTable:
        if scope not in self.tables:
            self.tables[scope] = RuleTable(scope)
        return self.tables[scope]

    def rules(self):
        for table in self.tables.values():
            yield from table

    def override(self, rules: Iterable[Rule]) -> "RuleSet":
        out = RuleSet(self.rules(), version=self.version + "+override")
        for rule in rules:
            out.table(rule.scope).add(rule, replace=True)
        return out

    @property
    def sha256(self) -> str:
        return hashlib.sha256(dump_rules(self).encode("utf-8")).hexdigest()

    @staticmethod
    def chain(province: Province) -> tuple:
        if province.dialect is Dialect.NORTHERN:
            return (NORTHERN,)
        if province.dialect is Dialect.CENTRAL:
            if province.minor is None:
                raise MissingMinorDialect(f"{province.name} has no minor dialect")
            return (CENTRAL, MINOR_SCOPES[province.minor])
        chain = [SOUTHERN, SOUTHERN_TR if province.retroflex_tr else SOUTHERN_CS]
        if province.minor is not None:
            chain.append(MINOR_SCOPES[province.minor])
        return tuple(chain)

    def profile(self, province) -> "Profile":
        province = inv.resolve_province(province)
        return self._profile(self.chain(province))

    @functools.lru_cache(maxsize=None)
    def _profile(self, chain) -> "Profile":
        return Profile(chain, tuple(self.table(s) for s in reversed(chain)))

    def profiles(self, provinces=None):
        """Distinct profiles over ``provinces`` (default: all of them)."""
        seen = {}
        for p in provinces if provinces is not None else inv.REGISTRY:
            prof = self.profile(p)
            seen.setdefault(prof.chain, prof)
        return list(seen.values())


@dataclass(frozen=True)
class DialectSyllable:
    initial: str
    rhyme: str
    tone: Tone
    province: Optional[str] = field(default=None, compare=False)
    phones: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not self.rhyme:
            raise ValueError("a rhyme cannot be empty")

    @property
    def triplet(self):
        return (self.initial, self.rhyme, self.tone.symbol)

    def pretty(self) -> str:
        return "|".join(self.triplet)


class Profile:
    """A scope chain, most specific table first."""

    def __init__(self, chain, tables):
        self.chain = chain
        self.tables = tables

    @property
    def name(self):
        return "+".join(self.chain)

    def _find(self, slot, pattern, has_glide=False):
        for table in self.tables:
            rule = table.lookup(slot, pattern, has_glide)
            if rule is not None:
                return rule
        return None

    def tone(self, tone: Tone) -> Tone:
        rule = self._find("tone", (tone.label,))
        return Tone.from_label(rule.output[0]) if rule else tone

    def convert(self, syl: Syllable, province=None) -> DialectSyllable:
        has_glide = syl.glide is not None
        ini = syl.initial or EMPTY
        rule = self._find("initial", (ini,), has_glide)
        if rule is not None:
            ini = rule.output[0]
            if rule.context == WITH_GLIDE:
                has_glide = False
        key = (syl.vowel, syl.final or EMPTY)
        rule = self._find("rhyme", key)
        if rule is not None:
            core = rule.output
        else:
            core = (syl.vowel,) if syl.final is None else (syl.vowel, syl.final)
        phones = ((GLIDE,) if has_glide else ()) + core
        return DialectSyllable(ini, "".join(phones), self.tone(syl.tone), province, phones)


DEFAULT_RULES = RuleSet(_build_default_rules())


def convert(syllable: Syllable, province, rules: RuleSet = DEFAULT_RULES) -> DialectSyllable:
    """Realize ``syllable`` as spoken in ``province``."""
    p = inv.resolve_province(province)
    return rules.profile(p).convert(syllable, p.name)


def convert_northern(syllable: Syllable, rules: RuleSet = DEFAULT_RULES) -> DialectSyllable:
    return rules._profile((NORTHERN,)).convert(syllable)


def convert_central(syllable: Syllable, minor, rules: RuleSet = DEFAULT_RULES) -> DialectSyllable:
    if minor is None:
        raise MissingMinorDialect("a Central province needs a minor dialect")
    minor = MinorDialect(minor)
    if inv.MINOR_PARENT[minor] is not Dialect.CENTRAL:
        raise MissingMinorDialect(f"{minor.value} is not a Central minor dialect")
    return rules._profile((CENTRAL, MINOR_SCOPES[minor])).convert(syllable)


def convert_southern(syllable: Syllable, minor=None, retroflex_tr=None,
                     rules: RuleSet = DEFAULT_RULES) -> DialectSyllable:
    """Southern realization; ``retroflex_tr`` defaults to the minor's own setting."""
    minor = MinorDialect(minor) if minor is not None else None
    if retroflex_tr is None:
        retroflex_tr = minor is MinorDialect.QUANG_NAM_QUANG_NGAI
    chain = [SOUTHERN, SOUTHERN_TR if retroflex_tr else SOUTHERN_CS]
    if minor is not None:
        chain.append(MINOR_SCOPES[minor])
    return rules._profile(tuple(chain)).convert(syllable)


def tone_map(province, rules: RuleSet = DEFAULT_RULES) -> dict:
    prof = rules.profile(province)
    return {t: prof.tone(t) for t in Tone}


def alphabet(rules: RuleSet = DEFAULT_RULES) -> dict:
    """Closed phone alphabet per slot: phonemes passed through plus rule outputs."""
    initials = {EMPTY, *inv.INITIAL_PHONEMES}
    rhymes = {GLIDE, *inv.VOWEL_PHONEMES, *inv.FINAL_PHONEMES}
    tones = {t.symbol for t in Tone}
    for rule in rules.rules():
        if rule.slot == "initial":
            initials.update(rule.output)
        elif rule.slot == "rhyme":
            rhymes.update(rule.output)
    return {"initial": frozenset(initials), "rhyme": frozenset(rhymes),
            "tone": frozenset(tones)}


# ---------------------------------------------------------------------------
# Rule file (TSV): scope, slot, pattern, context, output, note

_HEADER = ("scope", "slot", "pattern", "context", "output", "note")


def dump_rules(rules: RuleSet = DEFAULT_RULES) -> str:
    buf = io.StringIO()
    buf.write(f"# vietphon rule tables, version {rules.version}\n")
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(_HEADER)
    for r in rules.rules():
        w.writerow((r.scope, r.slot, " ".join(r.pattern), r.context,
                    " ".join(r.output), r.note))
    return buf.getvalue()


def parse_rules(text: str) -> list[Rule]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    out = []
    for n, row in enumerate(csv.reader(lines, delimiter="\t"), 1):
        if tuple(row) == _HEADER:
            continue
        if len(row) not in (5, 6):
            raise RuleFileError(f"row {n}: expected 5 or 6 columns, got {len(row)}")
        scope, slot, pattern, context, output = row[:5]
        note = row[5] if len(row) == 6 else ""
        pat = tuple(pattern.split())
        expected = 2 if slot == "rhyme" else 1
        if len(pat) != expected:
            raise RuleFileError(f"row {n}: bad pattern {pattern!r} for slot {slot}")
        if slot == "tone":
            try:
                Tone.from_label(pat[0])
                Tone.from_label(output)
            except KeyError as e:
                raise RuleFileError(f"row {n}: unknown tone {e}") from None
        out.append(Rule(scope, slot, pat, context, tuple(output.split()), note))
    return out


def load_rules(path, base: Optional[RuleSet] = None) -> RuleSet:
    """Load a rule file; with ``base`` its entries override the base tables."""
    rules = parse_rules(Path(path).read_text(encoding="utf-8"))
    if base is None:
        return RuleSet(rules)
    return base.override(rules)

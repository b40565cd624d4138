"""Phone triplets back to orthography.

Each rule profile gets an inverse index built by running the forward
converter over every phonotactically valid syllable, so inversion can never
disagree with conversion. Candidate spellings are then filtered through a
lexicon.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional

from . import inventory as inv
from .dialects import DEFAULT_RULES, DialectSyllable, Profile, RuleSet
from .errors import NoPreimage, NotASyllable
from .inventory import Dialect, Tone
from .syllable import Syllable, is_valid, parse_word, write_orthography

NONE = "none"
INITIAL_MERGER = "initial-merger"
TONE_MERGER = "tone-merger"
RHYME_MERGER = "rhyme-merger"
COMBINED = "combined"
AMBIGUITY_CLASSES = (NONE, INITIAL_MERGER, TONE_MERGER, RHYME_MERGER, COMBINED)


# ---------------------------------------------------------------------------
# Lexicon

@dataclass(frozen=True)
class Lexicon:
    words: frozenset
    source: str = "inline"

    def __post_init__(self):
        for w in self.words:
            parse_word(w)

    @classmethod
    def from_words(cls, words: Iterable[str], source="inline", canonical=True):
        out = set()
        for w in words:
            w = w.strip()
            if w:
                out.add(canonical_or_raise(w) if canonical else inv.normalize_text(w))
        return cls(frozenset(out), source)

    @classmethod
    def from_text(cls, text: str, source="inline", strict=False):
        """One word per line, ``#`` starts a comment. Non-syllables are
        skipped unless ``strict``."""
        words = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                words.append(canonical_or_raise(line))
            except NotASyllable:
                if strict:
                    raise
        return cls(frozenset(words), source)

    @classmethod
    def from_file(cls, path, strict=False):
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), str(path), strict)

    def __contains__(self, word):
        return word in self.words

    def __iter__(self):
        return iter(sorted(self.words))

    def __len__(self):
        return len(self.words)

    @property
    def sha256(self):
        return hashlib.sha256("\n".join(sorted(self.words)).encode("utf-8")).hexdigest()


def canonical_or_raise(word: str) -> str:
    return write_orthography(parse_word(word))


@functools.lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    text = resources.files("vietphon").joinpath("data/lexicon.txt").read_text(encoding="utf-8")
    return Lexicon.from_text(text, source="vietphon:data/lexicon.txt", strict=True)


# ---------------------------------------------------------------------------
# Inverse index

@functools.lru_cache(maxsize=1)
def valid_syllables() -> tuple:
    """Every syllable that passes the phonotactic checks."""
    out = []
    for parts in itertools.product(
        (None,) + inv.INITIAL_PHONEMES, (None, inv.GLIDE), inv.VOWEL_PHONEMES,
        (None,) + inv.FINAL_PHONEMES, tuple(Tone),
    ):
        syl = Syllable(*parts)
        if is_valid(syl):
            out.append(syl)
    return tuple(out)


class InverseIndex:
    def __init__(self, profile: Profile):
        self.profile = profile
        index: dict = {}
        for syl in valid_syllables():
            key = _key(profile.convert(syl))
            index.setdefault(key, []).append(syl)
        self._index = {k: tuple(v) for k, v in index.items()}

    def preimages(self, triplet) -> tuple:
        return self._index.get(_key(triplet), ())

    def __len__(self):
        return len(self._index)


def _key(ds: DialectSyllable):
    return (ds.initial, ds.rhyme, ds.tone)


_INDEXES: dict = {}


def inverse_index(province, rules: RuleSet = DEFAULT_RULES) -> InverseIndex:
    profile = rules.profile(province)
    key = (id(rules), profile.chain)
    if key not in _INDEXES:
        _INDEXES[key] = InverseIndex(profile)
    return _INDEXES[key]


# ---------------------------------------------------------------------------
# Reverse lookup

@dataclass(frozen=True)
class ReverseResult:
    candidates: tuple
    ambiguous: bool
    ambiguity_class: str
    # True when the lexicon rejected every spelling and the unfiltered
    # candidates are returned instead
    empty_after_filter: bool = False
    unfiltered: tuple = field(default=(), compare=False)


def ambiguity_class(syllables) -> str:
    syllables = list(syllables)
    if len(syllables) < 2:
        return NONE
    differs = set()
    first = syllables[0]
    for s in syllables[1:]:
        if s.initial != first.initial:
            differs.add(INITIAL_MERGER)
        if s.tone != first.tone:
            differs.add(TONE_MERGER)
        if (s.glide, s.vowel, s.final) != (first.glide, first.vowel, first.final):
            differs.add(RHYME_MERGER)
    if len(differs) > 1:
        return COMBINED
    return differs.pop()


_LN_SWAP = {"l": "n", "n": "l"}


def reverse(triplet: DialectSyllable, province, lexicon: Optional[Lexicon] = None,
            rules: RuleSet = DEFAULT_RULES, lenient_ln=False,
            rank: Optional[Callable] = None) -> ReverseResult:
    """Orthographic candidates for a phone triplet heard in ``province``.

    ``lenient_ln`` additionally accepts the l/n swap common around Hà Nội
    (Northern provinces only). ``rank`` may reorder the surviving candidates;
    by default they are sorted.
    """
    province = inv.resolve_province(province)
    index = inverse_index(province, rules)
    pre = list(index.preimages(triplet))
    if lenient_ln and province.dialect is Dialect.NORTHERN and triplet.initial in _LN_SWAP:
        swapped = DialectSyllable(_LN_SWAP[triplet.initial], triplet.rhyme, triplet.tone)
        pre.extend(index.preimages(swapped))
    if not pre:
        raise NoPreimage(f"no syllable is realized as {triplet.pretty()} in {province.name}")
    spelled = {write_orthography(s): s for s in pre}
    everything = tuple(sorted(spelled))
    if lexicon is None:
        kept = everything
    else:
        kept = tuple(w for w in everything if w in lexicon)
    empty = not kept
    if empty:
        kept = everything
    if rank is not None:
        kept = tuple(rank(list(kept)))
    cls = ambiguity_class(spelled[w] for w in kept)
    return ReverseResult(kept, len(kept) > 1, cls, empty, everything)


# ---------------------------------------------------------------------------
# Ambiguity accounting

UNAMBIGUOUS = "unambiguous"
RESOLVED = "ambiguous-resolved"
UNRESOLVED = "ambiguous-unresolved"


@dataclass
class AmbiguityStats:
    n_words: int = 0
    unambiguous: int = 0
    resolved: int = 0
    unresolved: int = 0
    by_class: Counter = field(default_factory=Counter)

    @property
    def rate(self) -> float:
        return self.unresolved / self.n_words if self.n_words else 0.0

    @property
    def estimated_incorrect(self) -> float:
        # one of each unresolved pair is assumed right
        return self.rate / 2

    def as_dict(self):
        out = {
            "words": self.n_words,
            "unambiguous": self.unambiguous,
            "resolved": self.resolved,
            "unresolved": self.unresolved,
            "rate": round(self.rate, 6),
            "estimated_incorrect": round(self.estimated_incorrect, 6),
        }
        for cls in AMBIGUITY_CLASSES[1:]:
            out[f"class.{cls}"] = self.by_class.get(cls, 0)
        return out


@dataclass
class AmbiguityReport:
    per_province: dict
    per_dialect: dict
    details: list = field(default_factory=list)

    def dialect_rate(self, dialect) -> float:
        return self.per_dialect[Dialect(dialect)]["rate"]

    def to_keyvalue(self) -> str:
        lines = []
        for dialect, row in self.per_dialect.items():
            for k, v in row.items():
                lines.append(f"{dialect.value}.{k}={v}")
        for name, stats in self.per_province.items():
            lines.append(f"province.{name}.rate={round(stats.rate, 6)}")
        return "\n".join(lines) + "\n"


def classify_word(word: str, province, lexicon: Lexicon, rules=DEFAULT_RULES):
    syl = parse_word(word)
    province = inv.resolve_province(province)
    result = reverse(rules.profile(province).convert(syl), province, lexicon, rules)
    if len(result.unfiltered) == 1:
        return UNAMBIGUOUS, result
    return (UNRESOLVED if result.ambiguous else RESOLVED), result


def _profile_stats(profile_province, lexicon, rules, details):
    stats = AmbiguityStats()
    for word in lexicon:
        status, result = classify_word(word, profile_province, lexicon, rules)
        stats.n_words += 1
        if status == UNAMBIGUOUS:
            stats.unambiguous += 1
        elif status == RESOLVED:
            stats.resolved += 1
        else:
            stats.unresolved += 1
            stats.by_class[result.ambiguity_class] += 1
        if details is not None and status != UNAMBIGUOUS:
            details.append({"word": word, "status": status,
                            "class": result.ambiguity_class,
                            "candidates": list(result.candidates)})
    return stats


def ambiguity_report(lexicon: Lexicon, dialect=None, provinces=None,
                     rules: RuleSet = DEFAULT_RULES, details=False) -> AmbiguityReport:
    """Round-trip every lexicon word through each province's phones.

    A dialect's rate is the mean of its provinces' rates; provinces sharing a
    rule profile share their statistics.
    """
    if provinces is None:
        provinces = list(inv.REGISTRY)
    provinces = [inv.resolve_province(p) for p in provinces]
    if dialect is not None:
        dialect = Dialect(dialect)
        provinces = [p for p in provinces if p.dialect is dialect]
    detail_rows = [] if details else None
    by_chain: dict = {}
    per_province = {}
    for p in provinces:
        chain = rules.profile(p).chain
        if chain not in by_chain:
            rows = [] if details else None
            by_chain[chain] = _profile_stats(p, lexicon, rules, rows)
            if details:
                for r in rows:
                    r["profile"] = "+".join(chain)
                detail_rows.extend(rows)
        per_province[p.name] = by_chain[chain]
    per_dialect = {}
    for d in Dialect:
        members = [per_province[p.name] for p in provinces if p.dialect is d]
        if not members:
            continue
        rate = sum(s.rate for s in members) / len(members)
        per_dialect[d] = {
            "provinces": len(members),
            "words": len(lexicon),
            "unresolved_mean": round(sum(s.unresolved for s in members) / len(members), 3),
            "rate": round(rate, 6),
            "estimated_incorrect": round(rate / 2, 6),
        }
        classes = Counter()
        for s in members:
            classes.update(s.by_class)
        for cls in AMBIGUITY_CLASSES[1:]:
            per_dialect[d][f"class.{cls}"] = round(classes.get(cls, 0) / len(members), 3)
    return AmbiguityReport(per_province, per_dialect, detail_rows or [])

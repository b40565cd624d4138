"""Indexed initial / rhyme / tone symbol sets and triplet encoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from . import inventory as inv
from .dialects import CENTRAL, DEFAULT_RULES, NORTHERN, SOUTHERN, DialectSyllable, RuleSet
from .errors import NotASyllable, VietphonError
from .inventory import Tone
from .syllable import parse_word

PAD, BOS, EOS, UNK = "<pad>", "<bos>", "<eos>", "<unk>"
SPECIALS = (PAD, BOS, EOS, UNK)
SET_NAMES = ("initials", "rhymes", "tones")


class IndexedSet:
    """Specials first, then the sorted symbols; index is the position."""

    def __init__(self, symbols: Iterable[str]):
        self.symbols = tuple(sorted(set(symbols)))
        self.items = SPECIALS + self.symbols
        self._index = {s: i for i, s in enumerate(self.items)}

    def index(self, symbol, default=None):
        return self._index.get(symbol, default)

    def __getitem__(self, i):
        return self.items[i]

    def __contains__(self, symbol):
        return symbol in self._index and symbol not in SPECIALS

    def __len__(self):
        return len(self.symbols)

    def dumps(self) -> str:
        return "\n".join(self.items) + "\n"

    @classmethod
    def loads(cls, text: str) -> "IndexedSet":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if tuple(lines[: len(SPECIALS)]) != SPECIALS:
            raise VietphonError("vocabulary file does not start with the special tokens")
        return cls(lines[len(SPECIALS):])


@dataclass
class PhoneticVocabulary:
    initials: IndexedSet
    rhymes: IndexedSet
    tones: IndexedSet
    manifest: dict = field(default_factory=dict)
    unk_count: int = 0

    def __post_init__(self):
        pairs = (("initials", "rhymes"), ("initials", "tones"), ("rhymes", "tones"))
        for a, b in pairs:
            shared = set(getattr(self, a).symbols) & set(getattr(self, b).symbols)
            if shared:
                raise VietphonError(f"{a} and {b} share symbols: {sorted(shared)}")

    @property
    def specials(self):
        return {s: i for i, s in enumerate(SPECIALS)}

    def _lookup(self, table: IndexedSet, symbol):
        i = table.index(symbol)
        if i is None or symbol in SPECIALS:
            self.unk_count += 1
            return table.index(UNK)
        return i

    def encode(self, utterance: Sequence[DialectSyllable]) -> list:
        return [
            (self._lookup(self.initials, s.initial),
             self._lookup(self.rhymes, s.rhyme),
             self._lookup(self.tones, s.tone.symbol))
            for s in utterance
        ]

    def decode(self, indices) -> list:
        out = []
        for i, r, t in indices:
            tone = self.tones[t]
            out.append(DialectSyllable(
                self.initials[i], self.rhymes[r],
                Tone.from_label(tone) if tone not in SPECIALS else Tone.FLAT))
        return out

    def save(self, out_dir) -> None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name in SET_NAMES:
            (out / f"{name}.txt").write_text(getattr(self, name).dumps(), encoding="utf-8")
        lines = [f"{k}={v}" for k, v in sorted(self.manifest.items())]
        (out / "manifest.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, in_dir) -> "PhoneticVocabulary":
        src = Path(in_dir)
        sets = [IndexedSet.loads((src / f"{n}.txt").read_text(encoding="utf-8"))
                for n in SET_NAMES]
        manifest = {}
        mpath = src / "manifest.txt"
        if mpath.exists():
            for line in mpath.read_text(encoding="utf-8").splitlines():
                if "=" in line:
                    k, v = line.split("=", 1)
                    manifest[k] = v
        return cls(*sets, manifest=manifest)


def _closure(syllables, profiles):
    initials, rhymes, tones = set(), set(), set()
    for prof in profiles:
        for syl in syllables:
            ds = prof.convert(syl)
            initials.add(ds.initial)
            rhymes.add(ds.rhyme)
            tones.add(ds.tone.symbol)
    return initials, rhymes, tones


def build_vocabulary(lexicon: Iterable[str], provinces=None,
                     rules: RuleSet = DEFAULT_RULES) -> PhoneticVocabulary:
    """Close the three symbol sets over every (word, province) pair.

    Words that do not parse are skipped and counted in the manifest. The
    sets are sorted before indexing, so a parallel build that merges partial
    sets yields the same indices as long as it sorts after merging.
    """
    import hashlib

    words = sorted(set(lexicon))
    syllables, skipped = [], 0
    for w in words:
        try:
            syllables.append(parse_word(w))
        except NotASyllable:
            skipped += 1
    provinces = list(inv.REGISTRY) if provinces is None else provinces
    profiles = rules.profiles(provinces)
    initials, rhymes, tones = _closure(syllables, profiles)
    # rhymes under the three dialect bases alone, before province overlays
    bases = {c[0] for p in profiles for c in [p.chain]}
    base_profiles = [rules._profile((b,)) for b in (NORTHERN, CENTRAL, SOUTHERN) if b in bases]
    _, base_rhymes, _ = _closure(syllables, base_profiles)
    manifest = {
        "lexicon_sha256": hashlib.sha256("\n".join(words).encode("utf-8")).hexdigest(),
        "lexicon_words": len(words),
        "skipped_words": skipped,
        "provinces": len(provinces),
        "rules_version": rules.version,
        "rules_sha256": rules.sha256,
        "initials": len(initials),
        "rhymes": len(rhymes),
        "tones": len(tones),
        "rhymes_before_overlays": len(base_rhymes),
        "rhymes_after_overlays": len(rhymes),
    }
    return PhoneticVocabulary(IndexedSet(initials), IndexedSet(rhymes), IndexedSet(tones),
                              manifest=manifest)

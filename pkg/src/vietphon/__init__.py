"""Dialect-aware Vietnamese grapheme-to-phone conversion.

    >>> from vietphon import parse_word, convert
    >>> convert(parse_word("hươu"), "Hà Nội").pretty()
    'h|ɨəu̯|˧'
"""

from .dialects import DialectSyllable, RuleSet, convert, load_rules, tone_map
from .errors import (
    EmptyInput,
    EmptyReference,
    MissingMinorDialect,
    MultipleToneMarks,
    NoPreimage,
    NoSharedTypes,
    NotASyllable,
    UnknownProvince,
    UnwritableSyllable,
    VietphonError,
)
from .inventory import Dialect, MinorDialect, Province, Tone, province_to_dialect, tone_of_mark
from .metrics import component_error_rates, error_rate, lexical_diversity, macro_f1
from .reverse import Lexicon, ReverseResult, ambiguity_report, default_lexicon, reverse
from .syllable import Syllable, canonical_spelling, parse_word, write_orthography
from .vocabulary import PhoneticVocabulary, build_vocabulary

__version__ = "0.1.0"

__all__ = [
    "Dialect", "DialectSyllable", "EmptyInput", "EmptyReference", "Lexicon",
    "MinorDialect", "MissingMinorDialect", "MultipleToneMarks", "NoPreimage",
    "NoSharedTypes", "NotASyllable", "PhoneticVocabulary", "Province",
    "ReverseResult", "RuleSet", "Syllable", "Tone", "UnknownProvince",
    "UnwritableSyllable", "VietphonError", "ambiguity_report", "build_vocabulary",
    "canonical_spelling", "component_error_rates", "convert", "default_lexicon",
    "error_rate", "lexical_diversity", "load_rules", "macro_f1", "parse_word",
    "province_to_dialect", "reverse", "tone_map", "tone_of_mark", "write_orthography",
]

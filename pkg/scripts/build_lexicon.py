"""Regenerate src/vietphon/data/lexicon.txt from wordfreq's Vietnamese list.

wordfreq is only needed here, not at runtime:

    pip install wordfreq
    python3 scripts/build_lexicon.py --size 3000
"""

import argparse
import unicodedata
from pathlib import Path

from wordfreq import top_n_list

from vietphon.errors import NotASyllable
from vietphon.syllable import canonical_spelling

# Words used by the documentation and tests that must be present even if
# they fall outside the frequency cut.
CURATED = """
hoàng nghiêng quê bán ban kiệm thách ăn giếng hươu xoong chảo xiêu vẹo
khuyên hoa minh tiếp tục yêu nói hai dừa vừa sang ích anh in bênh ba con
rượu cứu mưu mướp chiếm ươm kiến gì gìn quà cua ít ân cần chen lấn buôn
quốc người của thuý hoà giữa khuya
""".split()

EXCLUDED = {"xang"}
_MARKS = {"\u0300", "\u0301", "\u0309", "\u0303", "\u0323"}


def _letters(word):
    bare = "".join(c for c in unicodedata.normalize("NFD", word) if c not in _MARKS)
    return unicodedata.normalize("NFC", bare).replace("y", "i")


def respelled_only(word, canon):
    """True when canon differs from word at most in tone placement or i/y."""
    return _letters(word) == _letters(canon)


def build(size: int, pool: int):
    seen = []
    taken = set()
    for word in top_n_list("vi", pool):
        if len(seen) >= size:
            break
        try:
            canon = canonical_spelling(word)
        except NotASyllable:
            continue
        if not respelled_only(word, canon):
            continue
        if canon in taken or canon in EXCLUDED:
            continue
        taken.add(canon)
        seen.append(canon)
    for word in CURATED:
        canon = canonical_spelling(word)
        if canon not in taken:
            taken.add(canon)
            seen.append(canon)
    return sorted(seen)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=3000)
    ap.add_argument("--pool", type=int, default=60000)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parents[1] / "src/vietphon/data/lexicon.txt")
    args = ap.parse_args(argv)
    words = build(args.size, args.pool)
    header = (
        "# Vietnamese syllable lexicon, one canonical spelling per line.\n"
        f"# Top {args.size} parseable syllables of wordfreq's 'vi' list plus a curated set.\n"
        "# Frequency data from wordfreq (CC BY-SA 4.0).\n"
    )
    args.out.write_text(header + "\n".join(words) + "\n", encoding="utf-8")
    print(f"wrote {len(words)} words to {args.out}")


if __name__ == "__main__":
    main()

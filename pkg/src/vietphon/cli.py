"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error. A config file named by
the ``VIETPHON_CONFIG`` environment variable may supply defaults::

    [vietphon]
    lexicon = /path/to/lexicon.txt
    rules = /path/to/overrides.tsv
    output_format = pretty
"""

from __future__ import annotations

import argparse
import configparser
import contextlib
import json
import logging
import os
import sys
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import inventory as inv
from .corpus import IngestStats, clean_tokens, read_utterances
from .dialects import DEFAULT_RULES, DialectSyllable, dump_rules, load_rules
from .errors import NoPreimage, UnknownProvince, VietphonError
from .inventory import EMPTY, Dialect, Tone
from .metrics import EditCounts, component_counts, edit_counts
from .reverse import Lexicon, ambiguity_report, default_lexicon, reverse
from .syllable import parse_word, write_orthography
from .vocabulary import build_vocabulary

CONFIG_ENV = "VIETPHON_CONFIG"
OUTPUT_FORMATS = ("jsonl", "tsv", "pretty")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Config:
    lexicon_path: Optional[Path] = None
    rule_overrides: Optional[Path] = None
    output_format: str = "jsonl"

    def __post_init__(self):
        for p in (self.lexicon_path, self.rule_overrides):
            if p is not None and not Path(p).exists():
                raise UsageError(f"config path does not exist: {p}")
        if self.output_format not in OUTPUT_FORMATS:
            raise UsageError(f"output_format must be one of {OUTPUT_FORMATS}")

    @classmethod
    def from_env(cls) -> "Config":
        path = os.environ.get(CONFIG_ENV)
        if not path:
            return cls()
        cp = configparser.ConfigParser()
        if not cp.read(path, encoding="utf-8"):
            raise UsageError(f"cannot read config file {path}")
        sec = cp["vietphon"] if cp.has_section("vietphon") else cp[cp.default_section]
        lex, rules = sec.get("lexicon"), sec.get("rules")
        return cls(Path(lex) if lex else None, Path(rules) if rules else None,
                   sec.get("output_format", "jsonl"))


# ---------------------------------------------------------------------------
# helpers

@contextlib.contextmanager
def _open_in(path):
    if path in (None, "-"):
        yield sys.stdin
        return
    try:
        handle = open(path, encoding="utf-8", newline="")
    except OSError as e:
        raise DataError(f"cannot read {path}: {e.strerror}") from None
    with handle:
        yield handle


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        yield handle


def _rules(args, cfg):
    path = getattr(args, "rules", None) or cfg.rule_overrides
    if path is None:
        return DEFAULT_RULES
    try:
        return load_rules(path, base=DEFAULT_RULES)
    except OSError as e:
        raise DataError(f"cannot read rules {path}: {e.strerror}") from None


def _lexicon(path, cfg) -> Lexicon:
    path = path or cfg.lexicon_path
    if path is None:
        return default_lexicon()
    try:
        return Lexicon.from_file(path)
    except OSError as e:
        raise DataError(f"cannot read lexicon {path}: {e.strerror}") from None


def _resolve(name):
    try:
        return inv.resolve_province(name)
    except UnknownProvince as e:
        raise UsageError(str(e)) from None


def parse_triplet(text: str) -> DialectSyllable:
    parts = text.split("|")
    if len(parts) != 3 or not parts[1]:
        raise DataError(f"bad triplet {text!r}; expected initial|rhyme|tone")
    try:
        tone = Tone.from_label(parts[2])
    except KeyError:
        raise DataError(f"unknown tone {parts[2]!r}") from None
    return DialectSyllable(parts[0] or EMPTY, parts[1], tone)


def _fmt(args, cfg):
    return args.output_format or cfg.output_format


# ---------------------------------------------------------------------------
# tokenize

def cmd_tokenize(args, cfg) -> int:
    rules = _rules(args, cfg)
    vocab = build_vocabulary(_lexicon(args.lexicon, cfg), rules=rules)
    fmt = _fmt(args, cfg)
    stats = IngestStats()
    errors = []
    with _open_in(args.input) as handle:
        if args.province:
            prov = _resolve(args.province)
            items = []
            for n, line in enumerate(handle, 1):
                if not line.strip():
                    continue
                tokens, dropped = clean_tokens(line)
                stats.records += 1
                stats.utterances += 1
                stats.dropped_tokens += dropped
                items.append((str(n), prov, tokens))
        else:
            in_fmt = args.format or ("tsv" if str(args.input).endswith(".tsv") else "jsonl")
            items = [(u.id, u.province, u.text) for u in read_utterances(handle, in_fmt, stats)]
    for n, name in stats.quarantined:
        errors.append(f"record {n}: unknown province {name!r}")
    if stats.malformed:
        errors.append(f"{stats.malformed} malformed record(s) skipped")
    profile_cache = {}
    with _open_out(args.out) as out:
        for uid, prov, tokens in items:
            if prov.name not in profile_cache:
                profile_cache[prov.name] = rules.profile(prov)
            prof = profile_cache[prov.name]
            seq = [prof.convert(parse_word(t), prov.name) for t in tokens]
            idx = vocab.encode(seq)
            if fmt == "pretty":
                out.write(f"{uid}\t" + " ".join(s.pretty() for s in seq) + "\n")
            elif fmt == "tsv":
                out.write("\t".join((uid, prov.name, " ".join(s.pretty() for s in seq),
                                     " ".join(",".join(map(str, t)) for t in idx))) + "\n")
            else:
                out.write(json.dumps({
                    "id": uid, "province": prov.name, "dialect": prov.dialect.value,
                    "triplets": [list(s.triplet) for s in seq],
                    "indices": [list(t) for t in idx],
                }, ensure_ascii=False) + "\n")
    _sidecar(args, errors)
    if stats.records and not items:
        return EXIT_DATA
    return EXIT_OK


def _sidecar(args, errors):
    if not errors:
        return
    path = args.errors or (f"{args.out}.errors" if args.out not in (None, "-") else None)
    if path is None:
        for e in errors:
            print(e, file=sys.stderr)
    else:
        Path(path).write_text("\n".join(errors) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# reverse

def cmd_reverse(args, cfg) -> int:
    rules = _rules(args, cfg)
    lexicon = _lexicon(args.lexicon, cfg)
    prov = _resolve(args.province)
    fmt = _fmt(args, cfg)
    with _open_in(args.input) as handle, _open_out(args.out) as out:
        for n, line in enumerate(handle, 1):
            results = []
            for tok in line.split():
                trip = parse_triplet(tok)
                try:
                    res = reverse(trip, prov, lexicon, rules, lenient_ln=args.lenient_ln)
                    results.append((tok, res))
                except NoPreimage:
                    results.append((tok, None))
            if fmt == "jsonl":
                out.write(json.dumps({"line": n, "results": [
                    {"triplet": tok, "candidates": list(r.candidates) if r else [],
                     "ambiguous": bool(r and r.ambiguous),
                     "class": r.ambiguity_class if r else "no-preimage",
                     "empty_after_filter": bool(r and r.empty_after_filter)}
                    for tok, r in results]}, ensure_ascii=False) + "\n")
            else:
                words = []
                for tok, r in results:
                    if r is None:
                        words.append("?")
                    elif len(r.candidates) == 1:
                        words.append(r.candidates[0])
                    else:
                        words.append("{" + "/".join(r.candidates) + "}")
                sep = "\t" if fmt == "tsv" else " "
                out.write((f"{n}\t" if fmt == "tsv" else "") + sep.join(words) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# vocab

def cmd_vocab(args, cfg) -> int:
    rules = _rules(args, cfg)
    lexicon = _lexicon(args.lexicon, cfg)
    vocab = build_vocabulary(lexicon, rules=rules)
    vocab.save(args.out_dir)
    for k, v in sorted(vocab.manifest.items()):
        print(f"{k}={v}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# score

def _load_jsonl(path):
    out = {}
    with _open_in(path) as handle:
        for n, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                out[str(rec["id"])] = rec
            except (ValueError, KeyError, TypeError) as e:
                raise DataError(f"{path}:{n}: malformed record ({e})") from None
    return out


def _units(rec, level, province, rules):
    if level == "word":
        if "tokens" in rec:
            return list(rec["tokens"])
        return list(clean_tokens(rec.get("text", ""))[0])
    if "triplets" in rec:
        trips = [parse_triplet("|".join(t)) if isinstance(t, list) else parse_triplet(t)
                 for t in rec["triplets"]]
    else:
        if province is None:
            raise DataError(f"record {rec.get('id')!r} needs a province to derive phones")
        prof = rules.profile(province)
        trips = [prof.convert(parse_word(w)) for w in clean_tokens(rec.get("text", ""))[0]]
    if level == "component":
        return trips
    flat = []
    for t in trips:
        if t.initial != EMPTY:
            flat.append(t.initial)
        flat += [t.rhyme, t.tone.symbol]
    return flat


def cmd_score(args, cfg) -> int:
    rules = _rules(args, cfg)
    refs, hyps = _load_jsonl(args.ref), _load_jsonl(args.hyp)
    groups = defaultdict(lambda: defaultdict(EditCounts))
    missing = 0
    detail = []
    for uid in refs:
        ref = refs[uid]
        hyp = hyps.get(uid)
        if hyp is None:
            missing += 1
            hyp = {"id": uid, "tokens": [], "triplets": []}
        province = None
        if ref.get("province") is not None:
            province = _resolve(ref["province"])
        r = _units(ref, args.level, province, rules)
        h = _units(hyp, args.level, province, rules)
        if args.level == "component":
            counts = component_counts(r, h)
        else:
            counts = {"all": edit_counts(r, h)}
        keys = ["all"]
        if args.group_by_dialect and province is not None:
            keys.append(province.dialect.value)
        for g in keys:
            for c, v in counts.items():
                groups[g][c] = groups[g][c] + v
        detail.append({"id": uid, **{c: [v.substitutions, v.deletions, v.insertions,
                                         v.reference_length] for c, v in counts.items()}})
    print(f"level={args.level}")
    print(f"utterances={len(refs)}")
    print(f"missing_hypotheses={missing}")
    order = ["all"] + [d.value for d in Dialect]
    for g in order:
        if g not in groups:
            continue
        prefix = "" if g == "all" else f"{g}."
        for c, v in groups[g].items():
            name = "" if c == "all" else f"{c}."
            rate = v.errors / v.reference_length if v.reference_length else float("nan")
            print(f"{prefix}{name}S={v.substitutions}")
            print(f"{prefix}{name}D={v.deletions}")
            print(f"{prefix}{name}I={v.insertions}")
            print(f"{prefix}{name}N={v.reference_length}")
            print(f"{prefix}{name}rate={rate:.6f}")
    if args.detail:
        with _open_out(args.detail) as out:
            for row in detail:
                out.write(json.dumps(row, ensure_ascii=False) + "\n")
    if not refs:
        raise DataError("reference file has no records")
    return EXIT_OK


# ---------------------------------------------------------------------------
# audit

def _province_set(spec):
    if spec in (None, "all"):
        return list(inv.REGISTRY)
    out = []
    for part in spec.split(","):
        part = part.strip()
        try:
            out.extend(inv.REGISTRY.by_dialect(Dialect(part.capitalize())))
        except ValueError:
            out.append(_resolve(part))
    return out


def cmd_audit(args, cfg) -> int:
    rules = _rules(args, cfg)
    lexicon = _lexicon(args.lexicon, cfg)
    provinces = _province_set(args.province_set)
    failures = [w for w in lexicon if write_orthography(parse_word(w)) != w]
    report = ambiguity_report(lexicon, provinces=provinces, rules=rules,
                              details=bool(args.details))
    print(f"lexicon={lexicon.source}")
    print(f"words={len(lexicon)}")
    print(f"roundtrip_failures={len(failures)}")
    sys.stdout.write(report.to_keyvalue())
    if args.details:
        with _open_out(args.details) as out:
            for row in report.details:
                out.write(json.dumps(row, ensure_ascii=False) + "\n")
    return EXIT_OK if not failures else EXIT_DATA


def cmd_rules(args, cfg) -> int:
    with _open_out(args.out) as out:
        out.write(dump_rules(_rules(args, cfg)))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vietphon", description="Dialect-aware Vietnamese phonetic tools.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log warnings to stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, lexicon=True):
        p.add_argument("--rules", help="rule file whose entries override the built-in tables")
        if lexicon:
            p.add_argument("--lexicon", help="lexicon file (default: bundled list)")

    def out_format(p):
        p.add_argument("--output-format", choices=OUTPUT_FORMATS,
                       help="output format (default from config, else jsonl)")

    p = sub.add_parser("tokenize", help="text to dialect phone triplets")
    p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--province", help="province for every line of plain text input")
    g.add_argument("--province-column", action="store_true",
                   help="input is a corpus (id, province, text) routed per record")
    p.add_argument("--format", choices=("jsonl", "tsv"),
                   help="corpus format with --province-column (default from suffix)")
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.add_argument("--errors", help="sidecar log for per-record errors")
    out_format(p)
    common(p)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("reverse", help="phone triplets back to spellings")
    p.add_argument("input", nargs="?", default="-",
                   help="lines of whitespace-separated initial|rhyme|tone triplets")
    p.add_argument("--province", required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--lenient-ln", action="store_true",
                   help="also accept the l/n swap (Northern provinces)")
    out_format(p)
    common(p)
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("vocab", help="build the phonetic vocabulary files")
    p.add_argument("lexicon", nargs="?", help="lexicon file (default: bundled list)")
    p.add_argument("--out-dir", required=True)
    common(p, lexicon=False)
    p.set_defaults(func=cmd_vocab)

    p = sub.add_parser("score", help="WER, PER or component error rates")
    p.add_argument("--ref", required=True, help="reference JSON lines")
    p.add_argument("--hyp", required=True, help="hypothesis JSON lines")
    p.add_argument("--level", choices=("word", "phone", "component"), default="word")
    p.add_argument("--group-by-dialect", action="store_true")
    p.add_argument("--detail", help="per-utterance counts as JSON lines")
    common(p, lexicon=False)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("audit", help="round-trip and reverse-lexicon ambiguity report")
    p.add_argument("lexicon", nargs="?", help="lexicon file (default: bundled list)")
    p.add_argument("--province-set", default="all",
                   help="'all', a dialect name, or comma-separated provinces")
    p.add_argument("--details", help="per-word ambiguity detail as JSON lines")
    common(p, lexicon=False)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("rules", help="write the rule tables as TSV")
    p.add_argument("--out", default="-")
    common(p, lexicon=False)
    p.set_defaults(func=cmd_rules)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s %(message)s")
    if not hasattr(args, "lexicon"):
        args.lexicon = None
    try:
        cfg = Config.from_env()
        return args.func(args, cfg)
    except UsageError as e:
        print(f"vietphon: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, VietphonError) as e:
        print(f"vietphon: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

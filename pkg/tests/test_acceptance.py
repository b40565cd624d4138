"""One test per acceptance criterion; each records a PASS/FAIL summary line."""

import itertools
import time

import numpy as np
import pytest
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from conftest import ACCEPTANCE_LINES
from test_dialects import GOLDEN
from vietphon import inventory as inv
from vietphon.dialects import convert, tone_map
from vietphon.inventory import Dialect
from vietphon.metrics import error_rate, f1_report, labels_from_confusion
from vietphon.reverse import ambiguity_report, reverse
from vietphon.syllable import parse_word, write_orthography
from vietphon.vocabulary import build_vocabulary


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_round_trip_identity(lexicon):
    start = time.perf_counter()
    bad = [w for w in lexicon if write_orthography(parse_word(w)) != w]
    took = time.perf_counter() - start
    record(1, not bad and took < 1.0,
           f"{len(lexicon) - len(bad)}/{len(lexicon)} words round-trip in {took:.3f}s (limit 1s)")


def test_worked_examples():
    failed = [g for g in GOLDEN if convert(parse_word(g[0]), g[1]).triplet != g[2:]]
    record(2, not failed and len(GOLDEN) >= 25,
           f"{len(GOLDEN) - len(failed)}/{len(GOLDEN)} golden cases exact (need >= 25)")


def test_reverse_complete_and_sound(lexicon, parsed):
    start = time.perf_counter()
    failures = 0
    for prov in inv.REGISTRY:
        for w in lexicon:
            ds = convert(parsed[w], prov)
            cands = reverse(ds, prov, lexicon).candidates
            if w not in cands or any(convert(parsed[c], prov) != ds for c in cands):
                failures += 1
    took = time.perf_counter() - start
    pairs = len(lexicon) * len(inv.REGISTRY)
    record(3, failures == 0 and took < 30,
           f"{pairs - failures}/{pairs} (word, province) pairs in {took:.1f}s (limit 30s)")


def test_ambiguity_ordering(lexicon):
    rep = ambiguity_report(lexicon)
    s, n, c = (rep.dialect_rate(d) for d in (Dialect.SOUTHERN, Dialect.NORTHERN, Dialect.CENTRAL))
    record(4, s > n > c, f"Southern {s:.2%} > Northern {n:.2%} > Central {c:.2%}")


def _oracle_distances(strings):
    """All-pairs edit distance as shortest paths in the one-edit graph."""
    pos = {s: i for i, s in enumerate(strings)}
    rows, cols = [], []
    for s in strings:
        for k in range(len(s)):
            # deletions (their reverse edges are insertions) and substitutions
            rows.append(pos[s]), cols.append(pos[s[:k] + s[k + 1:]])
            for a in "abc":
                if a != s[k]:
                    rows.append(pos[s]), cols.append(pos[s[:k] + a + s[k + 1:]])
    n = len(strings)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n)).tocsr()
    return shortest_path(graph, directed=False, unweighted=True)


def test_metrics_match_exhaustive_oracle():
    start = time.perf_counter()
    strings = ["".join(p) for k in range(7) for p in itertools.product("abc", repeat=k)]
    dist = _oracle_distances(strings)
    mismatches = checked = 0
    for i, ref in enumerate(strings):
        if not ref:
            continue
        for j, hyp in enumerate(strings):
            checked += 1
            if error_rate(ref, hyp)[1].errors != dist[i, j]:
                mismatches += 1
    took = time.perf_counter() - start
    record(5, mismatches == 0 and took < 60,
           f"{checked - mismatches}/{checked} pairs agree in {took:.1f}s (limit 60s)")


def test_accuracy_from_confusion_matrix():
    matrix = [[714, 0, 10], [0, 152, 3], [57, 6, 845]]
    true, pred = labels_from_confusion(matrix, "NCS")
    acc = f1_report(true, pred, list("NCS")).accuracy * 100
    record(6, abs(acc - 95.75) <= 0.5, f"accuracy {acc:.2f}% vs 95.75 (tolerance 0.5)")


def test_vocabulary_invariants(lexicon, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    first = build_vocabulary(lexicon)
    first.save(a)
    build_vocabulary(lexicon).save(b)
    same = all((a / f).read_bytes() == (b / f).read_bytes()
               for f in ("initials.txt", "rhymes.txt", "tones.txt", "manifest.txt"))
    sets = [set(first.initials.symbols), set(first.rhymes.symbols), set(first.tones.symbols)]
    disjoint = not any(x & y for x, y in itertools.combinations(sets, 2))
    record(7, disjoint and len(first.tones) == 6 and same,
           f"disjoint={disjoint} tones={len(first.tones)} byte-identical={same} "
           f"({len(first.initials)} initials, {len(first.rhymes)} rhymes)")


def test_tone_system_cardinality():
    wrong = []
    for prov in inv.REGISTRY:
        want = 6 if prov.dialect is Dialect.NORTHERN else 5
        if len(set(tone_map(prov).values())) != want:
            wrong.append(prov.name)
    record(8, not wrong, f"{len(inv.REGISTRY) - len(wrong)}/{len(inv.REGISTRY)} provinces "
                         "have the expected tone count")


def test_model_tables_not_reproducible():
    ACCEPTANCE_LINES.append("criterion 9: SKIP model tables need trained ASR models; "
                            "scorer covered by criteria 5 and 6")
    pytest.skip("requires trained ASR models")

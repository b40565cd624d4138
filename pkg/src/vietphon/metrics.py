"""Error rates, classification scores and frequency-bias correlations."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from scipy import stats

from .errors import EmptyInput, EmptyReference, NoSharedTypes

MATCH, SUB, INS, DEL = "match", "sub", "ins", "del"
COMPONENTS = ("initial", "rhyme", "tone")


@dataclass(frozen=True)
class EditCounts:
    substitutions: int = 0
    deletions: int = 0
    insertions: int = 0
    reference_length: int = 0

    @property
    def errors(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def rate(self) -> float:
        """(S + D + I) / N. Not clamped: insertions can push it past 1."""
        if self.reference_length == 0:
            raise EmptyReference("error rate is undefined for an empty reference")
        return self.errors / self.reference_length

    def __add__(self, other: "EditCounts") -> "EditCounts":
        return EditCounts(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.reference_length + other.reference_length,
        )


def _distance_table(ref, hyp):
    n, m = len(ref), len(hyp)
    prev = list(range(m + 1))
    rows = [prev]
    for i in range(1, n + 1):
        r = ref[i - 1]
        cur = [i] + [0] * m
        for j in range(1, m + 1):
            diag = prev[j - 1] + (0 if r == hyp[j - 1] else 1)
            up = prev[j] + 1
            left = cur[j - 1] + 1
            cur[j] = diag if diag <= up and diag <= left else (left if left <= up else up)
        rows.append(cur)
        prev = cur
    return rows


def align(ref: Sequence, hyp: Sequence) -> list:
    """Minimal-cost alignment as ``(op, ref_index, hyp_index)`` steps.

    Among equal-cost paths the backtrace prefers a match or substitution,
    then an insertion, then a deletion.
    """
    d = _distance_table(ref, hyp)
    i, j = len(ref), len(hyp)
    steps = []
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            same = ref[i - 1] == hyp[j - 1]
            if d[i][j] == d[i - 1][j - 1] + (0 if same else 1):
                steps.append((MATCH if same else SUB, i - 1, j - 1))
                i, j = i - 1, j - 1
                continue
        if j > 0 and d[i][j] == d[i][j - 1] + 1:
            steps.append((INS, None, j - 1))
            j -= 1
        else:
            steps.append((DEL, i - 1, None))
            i -= 1
    steps.reverse()
    return steps


def edit_counts(ref: Sequence, hyp: Sequence) -> EditCounts:
    c = Counter(op for op, _, _ in align(ref, hyp))
    return EditCounts(c[SUB], c[DEL], c[INS], len(ref))


def error_rate(reference: Sequence, hypothesis: Sequence):
    """Return ``(rate, EditCounts)``; works for words, phones or any tokens."""
    if len(reference) == 0:
        raise EmptyReference("reference is empty")
    counts = edit_counts(list(reference), list(hypothesis))
    return counts.rate, counts


def _slot(s, name):
    if isinstance(s, tuple):
        return s[COMPONENTS.index(name)]
    value = getattr(s, name)
    return getattr(value, "symbol", value)


def component_counts(ref: Sequence, hyp: Sequence) -> dict:
    """Per-slot counts after aligning whole syllables."""
    ref_t = [tuple(_slot(s, c) for c in COMPONENTS) for s in ref]
    hyp_t = [tuple(_slot(s, c) for c in COMPONENTS) for s in hyp]
    tallies = {c: [0, 0, 0] for c in COMPONENTS}  # S, D, I
    for op, i, j in align(ref_t, hyp_t):
        for k, c in enumerate(COMPONENTS):
            if op == DEL:
                tallies[c][1] += 1
            elif op == INS:
                tallies[c][2] += 1
            elif ref_t[i][k] != hyp_t[j][k]:
                tallies[c][0] += 1
    return {c: EditCounts(s, d, i, len(ref)) for c, (s, d, i) in tallies.items()}


def component_error_rates(ref: Sequence, hyp: Sequence) -> dict:
    if len(ref) == 0:
        raise EmptyReference("reference is empty")
    return {c: counts.rate for c, counts in component_counts(ref, hyp).items()}


# ---------------------------------------------------------------------------
# Classification

@dataclass(frozen=True)
class F1Report:
    macro_f1: float
    accuracy: float
    per_class: dict
    unsupported: tuple  # classes with no true instances


def f1_report(true_labels: Sequence[Hashable], predicted_labels: Sequence[Hashable],
              classes: Optional[Sequence[Hashable]] = None) -> F1Report:
    if len(true_labels) == 0:
        raise EmptyInput("no labels")
    if len(true_labels) != len(predicted_labels):
        raise ValueError("label sequences differ in length")
    if classes is None:
        classes = sorted(set(true_labels) | set(predicted_labels), key=str)
    tp, fp, fn = Counter(), Counter(), Counter()
    for t, p in zip(true_labels, predicted_labels):
        if t == p:
            tp[t] += 1
        else:
            fp[p] += 1
            fn[t] += 1
    per_class, unsupported = {}, []
    for c in classes:
        support = tp[c] + fn[c]
        if support == 0:
            unsupported.append(c)
        denom = 2 * tp[c] + fp[c] + fn[c]
        per_class[c] = 2 * tp[c] / denom if denom else 0.0
    correct = sum(tp.values())
    return F1Report(sum(per_class.values()) / len(classes), correct / len(true_labels),
                    per_class, tuple(unsupported))


def macro_f1(true_labels, predicted_labels, classes=None) -> float:
    """Unweighted mean of per-class F1; classes without support score 0."""
    return f1_report(true_labels, predicted_labels, classes).macro_f1


def accuracy(true_labels, predicted_labels) -> float:
    return f1_report(true_labels, predicted_labels).accuracy


def labels_from_confusion(matrix, classes):
    """Expand a confusion matrix (rows true, columns predicted) to label lists."""
    true, pred = [], []
    for i, row in enumerate(matrix):
        for j, n in enumerate(row):
            true += [classes[i]] * n
            pred += [classes[j]] * n
    return true, pred


# ---------------------------------------------------------------------------
# Frequency bias

@dataclass(frozen=True)
class CorrelationReport:
    pearson_r: Optional[float]
    spearman_rho: Optional[float]
    n_types: int
    defined: bool
    reason: str = ""


@dataclass(frozen=True)
class DiversityReport:
    unique_correct_types: int
    correlation: CorrelationReport
    recall: dict = field(default_factory=dict)
    train_frequency: dict = field(default_factory=dict)


def word_recall(test_refs, test_hyps) -> dict:
    hits, total = Counter(), Counter()
    for ref, hyp in zip(test_refs, test_hyps, strict=True):
        ref, hyp = list(ref), list(hyp)
        total.update(ref)
        for op, i, _ in align(ref, hyp):
            if op == MATCH:
                hits[ref[i]] += 1
    return {w: hits[w] / n for w, n in total.items()}


def correlate(x, y) -> CorrelationReport:
    n = len(x)
    if n < 2:
        return CorrelationReport(None, None, n, False, "fewer than two types")
    if len(set(x)) < 2 or len(set(y)) < 2:
        return CorrelationReport(None, None, n, False, "zero variance")
    r = float(stats.pearsonr(x, y)[0])
    rho = float(stats.spearmanr(x, y)[0])
    return CorrelationReport(r, rho, n, True)


def lexical_diversity(train_corpus, test_refs, test_hyps, transform=math.log1p) -> DiversityReport:
    """Correct-type count and the correlation of log1p(train frequency)
    with per-word recall, over every type in the test references."""
    freq = Counter()
    for utt in train_corpus:
        freq.update(utt)
    recall = word_recall(test_refs, test_hyps)
    if not recall:
        raise NoSharedTypes("test references contain no word types")
    types = sorted(recall)
    f = [transform(freq.get(w, 0)) for w in types]
    rec = [recall[w] for w in types]
    correct = sum(1 for w in types if recall[w] > 0)
    return DiversityReport(correct, correlate(f, rec), recall,
                           {w: freq.get(w, 0) for w in types})

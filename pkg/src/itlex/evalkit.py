"""Evaluation, the word-level posterior baseline, and synthetic corpora."""

from __future__ import annotations

import os
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import EmptyTable, SmoothingRequired
from .extraction import (
    CategoryMap,
    align,
    format_category_map,
    samples_from_corpus,
)
from .fstructure import FStructure, has_head, head_of, write_corpus
from .itnet import Network

__all__ = [
    "Score",
    "EvalReport",
    "evaluate",
    "evaluate_baseline",
    "BaselineTable",
    "head_pairs",
    "baseline_train",
    "baseline_select",
    "format_baseline",
    "parse_baseline",
    "SyntheticSpec",
    "SyntheticCorpus",
    "gen_synthetic",
]


@dataclass
class Score:
    correct: int = 0
    total: int = 0

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0


@dataclass
class EvalReport:
    per_category: dict[str, Score] = field(default_factory=dict)
    overall: Score = field(default_factory=Score)
    unknown_input_rate: float = 0.0
    # samples whose category had no network; already counted as incorrect
    missing_network: dict[str, int] = field(default_factory=dict)

    def table(self) -> str:
        rows = [("category", "correct", "total", "accuracy")]
        for cat in sorted(self.per_category):
            s = self.per_category[cat]
            note = " (no network)" if cat in self.missing_network else ""
            rows.append((cat + note, str(s.correct), str(s.total), f"{s.accuracy:.4f}"))
        o = self.overall
        rows.append(("overall", str(o.correct), str(o.total), f"{o.accuracy:.4f}"))
        width = [max(len(r[k]) for r in rows) for k in range(4)]
        lines = [
            "  ".join(r[0].ljust(width[0]) if k == 0 else r[k].rjust(width[k]) for k in range(4)).rstrip()
            for r in rows
        ]
        return "\n".join(lines)

    def key_values(self, prefix: str = "") -> str:
        o = self.overall
        kv = [
            (f"{prefix}overall_correct", str(o.correct)),
            (f"{prefix}overall_total", str(o.total)),
            (f"{prefix}overall_accuracy", f"{o.accuracy:.4f}"),
            (f"{prefix}unknown_input_rate", f"{self.unknown_input_rate:.4f}"),
            (f"{prefix}missing_network", str(sum(self.missing_network.values()))),
        ]
        for cat in sorted(self.per_category):
            s = self.per_category[cat]
            kv.append((f"{prefix}accuracy.{cat}", f"{s.accuracy:.4f}"))
            kv.append((f"{prefix}total.{cat}", str(s.total)))
        return "\n".join(f"{k}={v}" for k, v in kv)


def evaluate(
    networks: Mapping[str, Network],
    test_pairs: Sequence[tuple[FStructure, FStructure]],
    cmap: CategoryMap,
) -> EvalReport:
    """Select a head for every sample extracted from ``test_pairs``.

    A prediction is correct iff it equals the reference head exactly.
    """
    report = EvalReport()
    calls = with_unknown = 0
    for sample in samples_from_corpus(test_pairs, cmap):
        score = report.per_category.setdefault(sample.category, Score())
        score.total += 1
        net = networks.get(sample.category)
        if net is None or not net.out_vocab:
            report.missing_network[sample.category] = report.missing_network.get(sample.category, 0) + 1
            continue
        if net.lam == 0:
            raise SmoothingRequired(f"network {net.category!r} has lambda 0")
        act = net.activate(sample.inputs)
        calls += 1
        with_unknown += bool(act.unknown_inputs)
        if act.best() == sample.output:
            score.correct += 1
    report.overall = Score(
        sum(s.correct for s in report.per_category.values()),
        sum(s.total for s in report.per_category.values()),
    )
    report.unknown_input_rate = with_unknown / calls if calls else 0.0
    return report


# word-level baseline: choose argmax_t P(t | s) for the source head s alone

@dataclass
class BaselineTable:
    cond: dict[str, Counter] = field(default_factory=dict)

    def add(self, source: str, target: str, count: int = 1) -> None:
        self.cond.setdefault(source, Counter())[target] += count

    def target_counts(self) -> Counter:
        total: Counter = Counter()
        for row in self.cond.values():
            total.update(row)
        return total

    def merge(self, other: "BaselineTable") -> "BaselineTable":
        out = BaselineTable({s: Counter(row) for s, row in self.cond.items()})
        for s, row in other.cond.items():
            for t, c in row.items():
                out.add(s, t, c)
        return out


def head_pairs(corpus: Sequence[tuple[FStructure, FStructure]]) -> list[tuple[str, str]]:
    """(source head, target head) for every aligned pair where both exist."""
    out = []
    for source, target in corpus:
        pairs, _ = align(source, target)
        for s, t in pairs:
            if has_head(s) and has_head(t):
                out.append((head_of(s), head_of(t)))
    return out


def baseline_train(pairs: Sequence[tuple[str, str]]) -> BaselineTable:
    table = BaselineTable()
    for s, t in pairs:
        table.add(s, t)
    return table


def _argmax(counts: Mapping[str, float]) -> str:
    return min(counts, key=lambda t: (-counts[t], t))


def baseline_select(table: BaselineTable, word: str, lam: float = 0.5) -> str:
    """argmax over add-lambda smoothed P(t | word); unseen words get the
    most frequent target overall."""
    totals = table.target_counts()
    if not totals:
        raise EmptyTable("baseline table is empty")
    row = table.cond.get(word)
    if not row:
        return _argmax(totals)
    denom = sum(row.values()) + lam * len(totals)
    return _argmax({t: (row.get(t, 0) + lam) / denom for t in totals})


def evaluate_baseline(
    table: BaselineTable,
    test_pairs: Sequence[tuple[FStructure, FStructure]],
    cmap: CategoryMap,
    lam: float = 0.5,
) -> EvalReport:
    """Score the baseline on the same samples :func:`evaluate` uses."""
    report = EvalReport()
    calls = unseen = 0
    for sample in samples_from_corpus(test_pairs, cmap):
        score = report.per_category.setdefault(sample.category, Score())
        score.total += 1
        word = sample.source_head or ""
        calls += 1
        unseen += word not in table.cond
        if baseline_select(table, word, lam) == sample.output:
            score.correct += 1
    report.overall = Score(
        sum(s.correct for s in report.per_category.values()),
        sum(s.total for s in report.per_category.values()),
    )
    report.unknown_input_rate = unseen / calls if calls else 0.0
    return report


def format_baseline(table: BaselineTable) -> str:
    lines = [
        f"{s}\t{t}\t{c}"
        for s in sorted(table.cond)
        for t, c in sorted(table.cond[s].items())
        if c
    ]
    return "".join(line + "\n" for line in lines)


def parse_baseline(text: str) -> BaselineTable:
    table = BaselineTable()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"baseline line {lineno}: expected 'source<TAB>target<TAB>count'")
        table.add(parts[0], parts[1], int(parts[2]))
    return table


# synthetic corpora

@dataclass(frozen=True)
class SyntheticSpec:
    """Shape of a synthetic corpus.

    Each category has ``n_source // n_categories`` source words and
    ``n_target // n_categories`` target words. Source words split into verbs,
    ``n_classes`` noun classes and leftover subject pronouns; the target of a
    sample is fixed by the pair (verb, class of the object noun), so neither
    the verb nor the noun alone determines it.
    """

    n_categories: int = 5
    n_source: int = 50
    n_target: int = 50
    n_classes: int = 2
    n_train: int = 500
    n_test: int = 500
    noise: float = 0.0
    seed: int = 0

    def layout(self) -> tuple[int, int, int, int, int]:
        """(verbs, nouns per class, subjects, targets) per category, plus
        the number of target words only reachable through noise."""
        if self.n_categories < 1:
            raise ValueError("n_categories must be >= 1")
        if not 0.0 <= self.noise <= 1.0:
            raise ValueError(f"noise must be in [0, 1], got {self.noise}")
        if self.n_train < 0 or self.n_test < 0:
            raise ValueError("sample counts must be >= 0")
        if self.n_classes < 2:
            raise ValueError("n_classes must be >= 2")
        n_s = self.n_source // self.n_categories
        n_t = self.n_target // self.n_categories
        verbs = n_t // self.n_classes
        nouns = (n_s - verbs) // self.n_classes
        if verbs < 1 or nouns < 1:
            raise ValueError(
                "vocabulary too small: each category needs at least "
                f"{self.n_classes} target words and {1 + self.n_classes} source words"
            )
        subjects = n_s - verbs - nouns * self.n_classes
        return verbs, nouns, subjects, verbs * self.n_classes, n_t - verbs * self.n_classes


@dataclass
class SyntheticCorpus:
    spec: SyntheticSpec
    train: list[tuple[FStructure, FStructure]]
    test: list[tuple[FStructure, FStructure]]
    # (category, verb, noun) -> correct target head
    mapping: dict[tuple[str, str, str], str]
    category_map: CategoryMap
    target_vocab: dict[str, tuple[str, ...]]

    @property
    def bayes_rate(self) -> float:
        """Expected accuracy of the true mapping on noisy test labels."""
        eps = self.spec.noise
        cats = list(self.target_vocab)
        return sum((1 - eps) + eps / len(self.target_vocab[c]) for c in cats) / len(cats)

    def write(self, outdir) -> dict[str, str]:
        os.makedirs(outdir, exist_ok=True)
        files = {
            "train.txt": write_corpus(self.train),
            "test.txt": write_corpus(self.test),
            "categories.tsv": format_category_map(self.category_map),
            "mapping.tsv": "".join(
                f"{c}\t{v}\t{n}\t{t}\n" for (c, v, n), t in sorted(self.mapping.items())
            ),
        }
        paths = {}
        for name, text in files.items():
            path = os.path.join(outdir, name)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            paths[name] = path
        return paths


def gen_synthetic(spec: SyntheticSpec = SyntheticSpec()) -> SyntheticCorpus:
    """Seeded, structure-dependent train/test corpora.

    The training set lists every (verb, noun) combination of every category
    once before filling up with random draws, so that a noiseless corpus of
    sufficient size covers the whole support. With probability ``noise`` a
    sample's target is replaced by a uniform draw from its category's target
    words.
    """
    n_verbs, n_nouns, n_subj, _, n_extra = spec.layout()
    rng = random.Random(spec.seed)

    cats = []
    mapping: dict[tuple[str, str, str], str] = {}
    target_vocab: dict[str, tuple[str, ...]] = {}
    for c in range(spec.n_categories):
        cat = f"cat{c}"
        verbs = [f"v{c}x{v}" for v in range(n_verbs)]
        nouns = [(f"n{c}x{k}x{m}", k) for k in range(spec.n_classes) for m in range(n_nouns)]
        subjects = [f"p{c}x{s}" for s in range(n_subj)]
        targets = [f"t{c}x{v}x{k}" for v in range(n_verbs) for k in range(spec.n_classes)]
        targets += [f"t{c}x{r}" for r in range(n_extra)]
        for v_idx, v in enumerate(verbs):
            for noun, k in nouns:
                mapping[cat, v, noun] = f"t{c}x{v_idx}x{k}"
        target_vocab[cat] = tuple(targets)
        cats.append((cat, f"syn{c}", verbs, [n for n, _ in nouns], subjects, targets))

    def record(cat_idx: int, verb: str, noun: str) -> tuple[FStructure, FStructure]:
        cat, label, _, _, subjects, targets = cats[cat_idx]
        out = mapping[cat, verb, noun]
        if spec.noise and rng.random() < spec.noise:
            out = rng.choice(targets)
        items: list = []
        if subjects:
            items.append(FStructure("subj", (rng.choice(subjects),)))
        items += [verb, FStructure("obj", (noun,))]
        return FStructure(label, tuple(items)), FStructure(label, (out,))

    def draw() -> tuple[int, str, str]:
        c = rng.randrange(spec.n_categories)
        _, _, verbs, nouns, _, _ = cats[c]
        return c, rng.choice(verbs), rng.choice(nouns)

    support = [(c, v, n) for c, (_, _, verbs, nouns, _, _) in enumerate(cats) for v in verbs for n in nouns]
    if spec.n_train >= len(support):
        plan = support + [draw() for _ in range(spec.n_train - len(support))]
    else:
        plan = [draw() for _ in range(spec.n_train)]
    rng.shuffle(plan)
    train = [record(*p) for p in plan]
    test = [record(*draw()) for _ in range(spec.n_test)]

    cmap = CategoryMap({label: cat for cat, label, *_ in cats}, "other")
    return SyntheticCorpus(spec, train, test, mapping, cmap, target_vocab)

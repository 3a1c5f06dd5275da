"""Align source/target structure pairs and cut them into training samples."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .fstructure import FStructure, has_head, head_of

__all__ = [
    "SamplePair",
    "CategoryMap",
    "DEFAULT_CATEGORY_MAP",
    "AlignDiagnostics",
    "ExtractDiagnostics",
    "align",
    "extract_samples",
    "samples_from_corpus",
    "input_heads",
    "parse_category_map",
    "format_category_map",
    "load_category_map",
]


@dataclass(frozen=True)
class SamplePair:
    """One association: a set of source heads and the target head.

    ``source_head`` is the source structure's own head (None when it has
    none); the word-level baseline reads it, the network does not.
    """

    category: str
    inputs: frozenset[str]
    output: str
    source_head: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", frozenset(self.inputs))
        if not self.category:
            raise ValueError("empty category")
        if not self.inputs or not all(self.inputs):
            raise ValueError("sample needs at least one non-empty input")
        if not self.output:
            raise ValueError("empty output")


@dataclass(frozen=True)
class CategoryMap:
    """Which network (phrasal category) handles each slot label."""

    entries: Mapping[str, str]
    default_category: str = "other"

    def __post_init__(self) -> None:
        entries = {k.lower(): v for k, v in dict(self.entries).items()}
        if not self.default_category or not all(entries.values()):
            raise ValueError("category names must be non-empty")
        object.__setattr__(self, "entries", entries)

    def __call__(self, label: str) -> str:
        return self.entries.get(label.lower(), self.default_category)


DEFAULT_CATEGORY_MAP = CategoryMap(
    {
        "sentence": "s",
        "xcomp": "vp",
        "vcomp": "vp",
        "subj": "np",
        "obj": "np",
        "pp-adj": "pp",
        "adj": "ap",
        # category names used directly as labels
        "s": "s",
        "vp": "vp",
        "np": "np",
        "pp": "pp",
        "ap": "ap",
    },
    "other",
)


def parse_category_map(text: str) -> CategoryMap:
    """Read ``label<TAB>category`` lines; ``*`` as the label sets the default."""
    entries: dict[str, str] = {}
    default = DEFAULT_CATEGORY_MAP.default_category
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise ValueError(f"category map line {lineno}: expected 'label<TAB>category'")
        label, cat = parts[0].strip(), parts[1].strip()
        if label == "*":
            default = cat
        else:
            entries[label] = cat
    return CategoryMap(entries, default)


def format_category_map(cmap: CategoryMap) -> str:
    lines = [f"{label}\t{cat}" for label, cat in sorted(cmap.entries.items())]
    lines.append(f"*\t{cmap.default_category}")
    return "\n".join(lines) + "\n"


def load_category_map(path) -> CategoryMap:
    with open(path, encoding="utf-8") as fh:
        return parse_category_map(fh.read())


@dataclass
class AlignDiagnostics:
    pairs: int = 0
    skipped: int = 0  # unmatched sub-structures, either side


@dataclass
class ExtractDiagnostics:
    samples: int = 0
    no_target_head: int = 0
    no_source_head: int = 0


def align(source: FStructure, target: FStructure) -> tuple[list[tuple[FStructure, FStructure]], AlignDiagnostics]:
    """Pair the two roots, then recursively pair children with equal labels.

    Repeated labels are matched by order of occurrence. Pairs come out in
    pre-order over the source tree.
    """
    diag = AlignDiagnostics()
    pairs: list[tuple[FStructure, FStructure]] = []
    stack = [(source, target)]
    while stack:
        s, t = stack.pop()
        pairs.append((s, t))
        by_label: dict[str, list[FStructure]] = defaultdict(list)
        for child in t.subs:
            by_label[child.label].append(child)
        used: dict[str, int] = defaultdict(int)
        matched = []
        for child in s.subs:
            k = used[child.label]
            if k < len(by_label[child.label]):
                matched.append((child, by_label[child.label][k]))
                used[child.label] = k + 1
            else:
                diag.skipped += 1
        diag.skipped += len(t.subs) - len(matched)
        stack.extend(reversed(matched))
    diag.pairs = len(pairs)
    return pairs, diag


def input_heads(source: FStructure) -> frozenset[str]:
    """The source head plus the heads of its immediate sub-structures."""
    heads = set()
    if has_head(source):
        heads.add(head_of(source))
    for child in source.subs:
        if has_head(child):
            heads.add(head_of(child))
    return frozenset(heads)


def extract_samples(
    pairs: Iterable[tuple[FStructure, FStructure]],
    cmap: CategoryMap,
    diagnostics: ExtractDiagnostics | None = None,
) -> list[SamplePair]:
    diag = diagnostics if diagnostics is not None else ExtractDiagnostics()
    samples = []
    for source, target in pairs:
        if not has_head(target):
            diag.no_target_head += 1
            continue
        inputs = input_heads(source)
        if not inputs:
            diag.no_source_head += 1
            continue
        samples.append(
            SamplePair(
                cmap(target.label),
                inputs,
                head_of(target),
                head_of(source) if has_head(source) else None,
            )
        )
    diag.samples += len(samples)
    return samples


def samples_from_corpus(
    corpus: Sequence[tuple[FStructure, FStructure]],
    cmap: CategoryMap,
    diagnostics: ExtractDiagnostics | None = None,
) -> list[SamplePair]:
    """Align every record and extract its samples, in document order."""
    out: list[SamplePair] = []
    for source, target in corpus:
        pairs, _ = align(source, target)
        out.extend(extract_samples(pairs, cmap, diagnostics))
    return out

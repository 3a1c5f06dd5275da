"""Information-theoretical lexical selection networks.

A network is a two-layer associative net between source lexical items
(input units) and target lexical items (output units). Its connection
weights are read straight off co-occurrence counts:

    weight(i, j) = log P(i, j) / (P(i) P(j))     pointwise mutual information
    bias(j)      = log P(j)                      always-active bias unit

with add-lambda estimates over the input and output vocabularies. The
score of output j for an input set is ``bias(j) + sum_i weight(i, j)``,
which is the naive-Bayes log posterior of j up to a constant that depends
only on the inputs. Training is a single counting pass; counts, not
weights, are the persistent state, so new samples can be added at any time
and two stores can be summed.
"""

from __future__ import annotations

import math
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CategoryMismatch,
    EmptyVocabulary,
    LambdaMismatch,
    ModelFormatError,
    NotInVocabulary,
    SmoothingRequired,
)
from .extraction import SamplePair

__all__ = [
    "DEFAULT_LAMBDA",
    "TIE_TOLERANCE",
    "CountStore",
    "Network",
    "Activation",
    "update_counts",
    "train",
    "train_by_category",
    "merge_counts",
    "weight",
    "bias",
    "activate",
    "select",
    "rank_scores",
    "format_store",
    "parse_store",
    "save_store",
    "load_store",
]

DEFAULT_LAMBDA = 0.5

# Scores closer than this (relative and absolute, in nats) count as tied.
# Mathematically equal scores reached through different counts can differ
# in the last few bits; without a tolerance, tie-breaking would be decided
# by rounding noise.
TIE_TOLERANCE = 1e-9

MODEL_MAGIC = "itlex-model v1"


@dataclass
class CountStore:
    """Sufficient statistics for one category's network.

    ``c_in[i]`` counts samples where input i was active, ``c_out[j]`` samples
    whose output was j, ``c_joint[i, j]`` samples with both.
    """

    category: str
    lam: float = DEFAULT_LAMBDA
    n_samples: int = 0
    c_in: Counter = field(default_factory=Counter)
    c_out: Counter = field(default_factory=Counter)
    c_joint: Counter = field(default_factory=Counter)

    def __post_init__(self) -> None:
        if not self.category:
            raise ValueError("empty category")
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise ValueError(f"lambda must be a finite number >= 0, got {self.lam!r}")
        self.lam = float(self.lam)

    def add(self, sample: SamplePair) -> "CountStore":
        if sample.category != self.category:
            raise CategoryMismatch(
                f"sample category {sample.category!r} != store category {self.category!r}"
            )
        out = sample.output
        self.n_samples += 1
        self.c_out[out] += 1
        for i in sample.inputs:
            self.c_in[i] += 1
            self.c_joint[i, out] += 1
        return self

    def copy(self) -> "CountStore":
        return CountStore(
            self.category, self.lam, self.n_samples,
            Counter(self.c_in), Counter(self.c_out), Counter(self.c_joint),
        )

    @property
    def in_vocab(self) -> tuple[str, ...]:
        return tuple(sorted(t for t, c in self.c_in.items() if c > 0))

    @property
    def out_vocab(self) -> tuple[str, ...]:
        return tuple(sorted(t for t, c in self.c_out.items() if c > 0))

    def check(self) -> None:
        """Raise ValueError if the counts are inconsistent."""
        for name in ("c_in", "c_out", "c_joint"):
            for key, c in getattr(self, name).items():
                if not isinstance(c, int) or c < 0:
                    raise ValueError(f"{name}[{key!r}] = {c!r} is not a count")
        if sum(self.c_out.values()) != self.n_samples:
            raise ValueError("output counts do not sum to n_samples")
        for (i, j), c in self.c_joint.items():
            if c > min(self.c_in[i], self.c_out[j]):
                raise ValueError(f"joint count for ({i}, {j}) exceeds a marginal")


def update_counts(store: CountStore, sample: SamplePair) -> CountStore:
    """Add one sample to ``store`` in place and return it."""
    return store.add(sample)


def train(samples: Iterable[SamplePair], category: str, lam: float = DEFAULT_LAMBDA) -> CountStore:
    store = CountStore(category, lam)
    for sample in samples:
        store.add(sample)
    return store


def train_by_category(samples: Iterable[SamplePair], lam: float = DEFAULT_LAMBDA) -> dict[str, CountStore]:
    """One store per category seen in ``samples``."""
    stores: dict[str, CountStore] = {}
    for sample in samples:
        if sample.category not in stores:
            stores[sample.category] = CountStore(sample.category, lam)
        stores[sample.category].add(sample)
    return stores


def merge_counts(a: CountStore, b: CountStore) -> CountStore:
    if a.category != b.category:
        raise CategoryMismatch(f"cannot merge {a.category!r} with {b.category!r}")
    if a.lam != b.lam:
        raise LambdaMismatch(f"cannot merge lambda={a.lam!r} with lambda={b.lam!r}")
    return CountStore(
        a.category, a.lam, a.n_samples + b.n_samples,
        a.c_in + b.c_in, a.c_out + b.c_out, a.c_joint + b.c_joint,
    )


def rank_scores(tokens: Sequence[str], values: Sequence[float], tol: float = TIE_TOLERANCE) -> list[int]:
    """Indices ordered by descending score, ties by smallest token.

    Runs of scores that are pairwise-adjacent within ``tol`` form a tie group.
    """
    order = sorted(range(len(tokens)), key=lambda k: -values[k])
    ranked: list[int] = []
    group: list[int] = []
    prev = 0.0
    for k in order:
        v = float(values[k])
        if group and not math.isclose(prev, v, rel_tol=tol, abs_tol=tol):
            ranked.extend(sorted(group, key=lambda g: tokens[g]))
            group = []
        group.append(k)
        prev = v
    ranked.extend(sorted(group, key=lambda g: tokens[g]))
    return ranked


@dataclass(frozen=True)
class Activation:
    """Output-layer activation for one input set (log domain)."""

    out_vocab: tuple[str, ...]
    values: np.ndarray
    active_inputs: tuple[str, ...]
    unknown_inputs: tuple[str, ...]

    @property
    def scores(self) -> dict[str, float]:
        return {t: float(v) for t, v in zip(self.out_vocab, self.values)}

    def ranking(self, k: int | None = None) -> list[tuple[str, float]]:
        idx = rank_scores(self.out_vocab, self.values)
        if k is not None:
            idx = idx[:k]
        return [(self.out_vocab[i], float(self.values[i])) for i in idx]

    def best(self) -> str:
        if not self.out_vocab:
            raise EmptyVocabulary("network has no output units")
        return self.ranking(1)[0][0]


class Network:
    """Immutable weight view over a snapshot of a CountStore.

    By default the vocabularies are the tokens observed in the store. Larger
    vocabularies may be given explicitly (they change the smoothing
    denominators); they must contain every observed token.
    """

    def __init__(
        self,
        store: CountStore,
        in_vocab: Iterable[str] | None = None,
        out_vocab: Iterable[str] | None = None,
    ) -> None:
        self.store = store.copy()
        self.category = store.category
        self.lam = store.lam
        seen_in, seen_out = self.store.in_vocab, self.store.out_vocab
        self.in_vocab = seen_in if in_vocab is None else tuple(sorted(set(in_vocab)))
        self.out_vocab = seen_out if out_vocab is None else tuple(sorted(set(out_vocab)))
        if not set(seen_in) <= set(self.in_vocab) or not set(seen_out) <= set(self.out_vocab):
            raise ValueError("explicit vocabulary must contain every observed token")
        self._in_index = {t: k for k, t in enumerate(self.in_vocab)}
        self._out_index = {t: k for k, t in enumerate(self.out_vocab)}
        self._build()

    def _build(self) -> None:
        st, lam = self.store, self.lam
        n_in, n_out, n = len(self.in_vocab), len(self.out_vocab), st.n_samples
        c_in = np.array([st.c_in[t] for t in self.in_vocab], dtype=float)
        c_out = np.array([st.c_out[t] for t in self.out_vocab], dtype=float)
        c_joint = np.zeros((n_in, n_out))
        for (i, j), c in st.c_joint.items():
            if c:
                c_joint[self._in_index[i], self._out_index[j]] = c
        with np.errstate(divide="ignore", invalid="ignore"):
            log_p_in = np.log((c_in + lam) / (n + lam * n_in))
            log_p_out = np.log((c_out + lam) / (n + lam * n_out))
            log_p_joint = np.log((c_joint + lam) / (n + lam * n_in * n_out))
            self._weights = log_p_joint - log_p_in[:, None] - log_p_out[None, :]
        self._bias = log_p_out
        # with lambda == 0 an input unit that never fired has no defined weights
        self._live_in = c_in > 0 if lam == 0 else np.ones(n_in, dtype=bool)
        self._weights.setflags(write=False)
        self._bias.setflags(write=False)

    def _in(self, i: str) -> int:
        k = self._in_index.get(i)
        if k is None or not self._live_in[k]:
            raise NotInVocabulary(f"input token {i!r} is not in the vocabulary")
        return k

    def _out(self, j: str) -> int:
        k = self._out_index.get(j)
        if k is None or (self.lam == 0 and self.store.c_out[j] == 0):
            raise NotInVocabulary(f"output token {j!r} is not in the vocabulary")
        return k

    def weight(self, i: str, j: str) -> float:
        """PMI between input i and output j; -inf for an unseen pair at lambda 0."""
        return float(self._weights[self._in(i), self._out(j)])

    def bias(self, j: str) -> float:
        return float(self._bias[self._out(j)])

    @property
    def weights(self) -> np.ndarray:
        """Read-only ``(len(in_vocab), len(out_vocab))`` weight matrix."""
        return self._weights

    @property
    def biases(self) -> np.ndarray:
        return self._bias

    def activate(self, inputs: Iterable[str]) -> Activation:
        inputs = set(inputs)
        known = sorted(t for t in inputs if t in self._in_index and self._live_in[self._in_index[t]])
        unknown = sorted(inputs.difference(known))
        values = self._bias.copy()
        if known:
            values = values + self._weights[[self._in_index[t] for t in known]].sum(axis=0)
        return Activation(self.out_vocab, values, tuple(known), tuple(unknown))

    def select(self, inputs: Iterable[str]) -> str:
        """The most active output unit; ties go to the smallest token."""
        if self.lam == 0:
            raise SmoothingRequired("selection needs lambda > 0")
        if not self.out_vocab:
            raise EmptyVocabulary(f"network {self.category!r} has no output units")
        return self.activate(inputs).best()

    def __repr__(self) -> str:
        return (
            f"Network({self.category!r}, lam={self.lam}, n={self.store.n_samples}, "
            f"in={len(self.in_vocab)}, out={len(self.out_vocab)})"
        )


def weight(net: Network, i: str, j: str) -> float:
    return net.weight(i, j)


def bias(net: Network, j: str) -> float:
    return net.bias(j)


def activate(net: Network, inputs: Iterable[str]) -> Activation:
    return net.activate(inputs)


def select(net: Network, inputs: Iterable[str]) -> str:
    return net.select(inputs)


# model files

def format_store(store: CountStore) -> str:
    lines = [
        MODEL_MAGIC,
        f"category {store.category}",
        f"lambda {store.lam!r}",
        f"n {store.n_samples}",
    ]
    lines += [f"in {t} {c}" for t, c in sorted(store.c_in.items()) if c]
    lines += [f"out {t} {c}" for t, c in sorted(store.c_out.items()) if c]
    lines += [f"joint {i} {j} {c}" for (i, j), c in sorted(store.c_joint.items()) if c]
    return "\n".join(lines) + "\n"


def _header(line: str, key: str) -> str:
    k, _, value = line.partition(" ")
    if k != key or not value:
        raise ModelFormatError(f"expected {key!r} header, got {line!r}")
    return value


def parse_store(text: str) -> CountStore:
    lines = text.splitlines()
    if len(lines) < 4 or lines[0] != MODEL_MAGIC:
        raise ModelFormatError(f"not an {MODEL_MAGIC!r} file")
    try:
        category = _header(lines[1], "category")
        store = CountStore(category, float(_header(lines[2], "lambda")), int(_header(lines[3], "n")))
        for lineno, line in enumerate(lines[4:], 5):
            parts = line.split(" ")
            if parts[0] == "in" and len(parts) == 3:
                store.c_in[parts[1]] = int(parts[2])
            elif parts[0] == "out" and len(parts) == 3:
                store.c_out[parts[1]] = int(parts[2])
            elif parts[0] == "joint" and len(parts) == 4:
                store.c_joint[parts[1], parts[2]] = int(parts[3])
            else:
                raise ModelFormatError(f"line {lineno}: cannot read {line!r}")
        store.check()
    except ModelFormatError:
        raise
    except ValueError as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from exc
    return store


def save_store(store: CountStore, path) -> None:
    """Write ``store`` to ``path`` atomically (temp file, then rename)."""
    path = os.fspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", prefix=".tmp-", suffix=".model")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_store(store))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_store(path) -> CountStore:
    with open(path, encoding="utf-8") as fh:
        return parse_store(fh.read())


def networks_from_stores(stores: Mapping[str, CountStore], lam: float | None = None) -> dict[str, Network]:
    """Wrap stores as networks, optionally re-smoothing with another lambda."""
    nets = {}
    for cat, st in stores.items():
        if lam is not None and lam != st.lam:
            st = st.copy()
            st.lam = float(lam)
        nets[cat] = Network(st)
    return nets

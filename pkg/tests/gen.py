"""Random inputs shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from itlex.extraction import SamplePair
from itlex.fstructure import FStructure

LABEL_START = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
LABEL_REST = LABEL_START + "0123456789_-"
TOKEN_CHARS = "abcxyzABCXYZ019.,'!?-_/()äöüßéЖ"
WHITESPACE = [" ", "  ", "\t", "\n", " \n\t "]


def random_label(rng: random.Random) -> str:
    return rng.choice(LABEL_START) + "".join(rng.choice(LABEL_REST) for _ in range(rng.randint(0, 6)))


def random_token(rng: random.Random) -> str:
    return "".join(rng.choice(TOKEN_CHARS) for _ in range(rng.randint(1, 6)))


def random_fstructure(rng: random.Random, max_depth: int = 5, max_width: int = 4) -> FStructure:
    """Depth counts levels, so max_depth=1 is a structure without children."""
    items: list = []
    n_tokens = rng.randint(0, max_width)
    n_subs = rng.randint(0, max_width) if max_depth > 1 else 0
    items += [random_token(rng) for _ in range(n_tokens)]
    items += [random_fstructure(rng, max_depth - 1, max_width) for _ in range(n_subs)]
    rng.shuffle(items)
    return FStructure(random_label(rng), tuple(items))


def render_messy(fs: FStructure, rng: random.Random) -> str:
    """A non-canonical rendering: mixed case and random whitespace.

    Case changes use ``upper()`` and keep only characters whose upper-case
    form lowercases back to the original.
    """
    def case(s: str) -> str:
        return "".join(
            c.upper() if rng.random() < 0.3 and c.upper().lower() == c and len(c.upper()) == 1 else c
            for c in s
        )

    parts = ["[", rng.choice(["", " ", "\n"]), case(fs.label)]
    for item in fs.items:
        parts.append(rng.choice(WHITESPACE))
        parts.append(render_messy(item, rng) if isinstance(item, FStructure) else case(item))
    parts.append(rng.choice(["", " ", "\t\n"]))
    parts.append("]")
    return "".join(parts)


def random_samples(
    rng: random.Random,
    category: str = "c",
    max_in: int = 20,
    max_out: int = 10,
    max_samples: int = 50,
) -> tuple[list[SamplePair], list[str], list[str]]:
    """A small random corpus; returns (samples, input tokens, output tokens)."""
    n_in, n_out = rng.randint(1, max_in), rng.randint(1, max_out)
    ins = [f"i{k}" for k in range(n_in)]
    outs = [f"o{k}" for k in range(n_out)]
    samples = [
        SamplePair(category, frozenset(rng.sample(ins, rng.randint(1, min(4, n_in)))), rng.choice(outs))
        for _ in range(rng.randint(1, max_samples))
    ]
    return samples, ins, outs


tokens = st.text(alphabet="abcdefgh", min_size=1, max_size=3)


@st.composite
def sample_lists(draw, category: str = "c", min_size: int = 0, max_size: int = 30):
    n = draw(st.integers(min_size, max_size))
    return [
        SamplePair(
            category,
            frozenset(draw(st.lists(tokens, min_size=1, max_size=4))),
            draw(st.sampled_from(["x", "y", "z", "w"])),
        )
        for _ in range(n)
    ]


@st.composite
def fstructures(draw, max_depth: int = 4, max_width: int = 3):
    label = draw(st.from_regex(r"[A-Za-z][A-Za-z0-9_-]{0,5}", fullmatch=True))
    word = st.text(
        alphabet=st.characters(blacklist_characters="[] \t\n\r", blacklist_categories=("Cs", "Zs", "Zl", "Zp", "Cc")),
        min_size=1,
        max_size=5,
    )
    items = draw(st.lists(word, max_size=max_width))
    if max_depth > 1:
        items += draw(st.lists(fstructures(max_depth - 1, max_width), max_size=max_width))
    items = draw(st.permutations(items))
    return FStructure(label, tuple(items))

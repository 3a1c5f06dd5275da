"""Bracketed f-structures: parsing, canonical serialization and heads.

The text format is a labelled bracketing::

    [xcomp [subj I] register [pp-adj for the conference]]

Each bracket opens with a slot (or category) label, followed by any mix of
bare tokens and nested structures. Labels and tokens are lowercased on the
way in, so ``I`` and ``i`` are the same vocabulary item.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import (
    CorpusError,
    EmptyStructure,
    FStructureError,
    IllegalCharacter,
    NoHead,
    UnbalancedBrackets,
)

__all__ = [
    "FStructure",
    "parse",
    "parse_many",
    "serialize",
    "head_of",
    "has_head",
    "read_corpus",
    "write_corpus",
    "load_corpus",
]

_LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_WS = " \t\n\r"
_BRACKETS = "[]"

Item = Union[str, "FStructure"]


def _check_token(tok: str) -> None:
    if not tok or any(c in _WS or c in _BRACKETS for c in tok):
        raise ValueError(f"invalid token {tok!r}")


@dataclass(frozen=True)
class FStructure:
    """One level of an f-structure.

    ``items`` keeps bare tokens and sub-structures in their original
    interleaved order; ``tokens`` and ``subs`` are filtered views of it.
    """

    label: str
    items: tuple[Item, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.label, str) or not _LABEL_RE.fullmatch(self.label):
            raise ValueError(f"invalid label {self.label!r}")
        items = tuple(self.items)
        normalized: list[Item] = []
        for item in items:
            if isinstance(item, FStructure):
                normalized.append(item)
            else:
                _check_token(item)
                normalized.append(item.lower())
        object.__setattr__(self, "label", self.label.lower())
        object.__setattr__(self, "items", tuple(normalized))

    @classmethod
    def of(cls, label: str, tokens: Sequence[str] = (), subs: Sequence["FStructure"] = ()) -> "FStructure":
        """Build a structure with all sub-structures placed after the tokens."""
        return cls(label, tuple(tokens) + tuple(subs))

    @property
    def tokens(self) -> tuple[str, ...]:
        return tuple(i for i in self.items if isinstance(i, str))

    @property
    def subs(self) -> tuple["FStructure", ...]:
        return tuple(i for i in self.items if isinstance(i, FStructure))

    def walk(self) -> Iterator["FStructure"]:
        """Pre-order traversal, self first."""
        stack = [self]
        while stack:
            fs = stack.pop()
            yield fs
            stack.extend(reversed(fs.subs))

    def __str__(self) -> str:
        return serialize(self)


def _skip_ws(text: str, pos: int) -> int:
    n = len(text)
    while pos < n and text[pos] in _WS:
        pos += 1
    return pos


def _scan_word(text: str, pos: int) -> int:
    n = len(text)
    while pos < n and text[pos] not in _WS and text[pos] not in _BRACKETS:
        pos += 1
    return pos


def _parse_at(text: str, pos: int) -> tuple[FStructure, int]:
    """Parse one structure starting at ``text[pos] == '['``.

    Iterative, so nesting depth is not bounded by the recursion limit.
    """
    n = len(text)
    # each frame: (label, items)
    stack: list[tuple[str, list[Item]]] = []
    while True:
        # text[pos] is '[': read the label
        open_pos = pos
        pos = _skip_ws(text, pos + 1)
        if pos >= n:
            raise UnbalancedBrackets("missing ']'", n)
        if text[pos] in _BRACKETS:
            raise EmptyStructure("structure without a label", open_pos)
        end = _scan_word(text, pos)
        label = text[pos:end]
        m = _LABEL_RE.match(label)
        if m is None or m.end() != len(label):
            bad = 0 if m is None else m.end()
            raise IllegalCharacter(f"illegal character {label[bad]!r} in label", pos + bad)
        stack.append((label.lower(), []))
        pos = end

        # read items until the frame closes or a new '[' opens
        while True:
            pos = _skip_ws(text, pos)
            if pos >= n:
                raise UnbalancedBrackets("missing ']'", n)
            c = text[pos]
            if c == "[":
                break
            if c == "]":
                pos += 1
                label, items = stack.pop()
                fs = FStructure(label, tuple(items))
                if not stack:
                    return fs, pos
                stack[-1][1].append(fs)
                continue
            end = _scan_word(text, pos)
            stack[-1][1].append(text[pos:end].lower())
            pos = end


def parse_many(text: str) -> list[FStructure]:
    """Parse a whitespace-separated sequence of structures."""
    out = []
    pos = _skip_ws(text, 0)
    while pos < len(text):
        c = text[pos]
        if c == "]":
            raise UnbalancedBrackets("unexpected ']'", pos)
        if c != "[":
            raise IllegalCharacter(f"unexpected character {c!r} outside brackets", pos)
        fs, pos = _parse_at(text, pos)
        out.append(fs)
        pos = _skip_ws(text, pos)
    return out


def parse(text: str) -> FStructure:
    """Parse exactly one bracketed f-structure.

    >>> serialize(parse("[NP  Dog]"))
    '[np dog]'
    """
    pos = _skip_ws(text, 0)
    if pos >= len(text):
        raise EmptyStructure("empty input", pos)
    c = text[pos]
    if c == "]":
        raise UnbalancedBrackets("unexpected ']'", pos)
    if c != "[":
        raise IllegalCharacter(f"unexpected character {c!r} outside brackets", pos)
    fs, pos = _parse_at(text, pos)
    pos = _skip_ws(text, pos)
    if pos < len(text):
        stray = _first_unmatched_close(text, pos)
        if stray is not None:
            raise UnbalancedBrackets("unexpected ']'", stray)
        raise IllegalCharacter("trailing input after structure", pos)
    return fs


def _first_unmatched_close(text: str, pos: int) -> int | None:
    depth = 0
    for k in range(pos, len(text)):
        if text[k] == "[":
            depth += 1
        elif text[k] == "]":
            depth -= 1
            if depth < 0:
                return k
    return None


def serialize(fs: FStructure) -> str:
    """Canonical single-line form: lowercase, single spaces, item order kept."""
    parts: list[str] = []
    # explicit stack of (structure, next item index)
    stack: list[tuple[FStructure, int]] = [(fs, 0)]
    parts.append("[" + fs.label)
    while stack:
        node, idx = stack.pop()
        if idx == len(node.items):
            parts.append("]")
            continue
        stack.append((node, idx + 1))
        item = node.items[idx]
        if isinstance(item, FStructure):
            parts.append(" [" + item.label)
            stack.append((item, 0))
        else:
            parts.append(" " + item)
    return "".join(parts)


def has_head(fs: FStructure) -> bool:
    return any(isinstance(i, str) for i in fs.items)


def head_of(fs: FStructure) -> str:
    """The last bare token at the structure's own level.

    Function words precede the content word in this notation, so
    ``[pp-adj for the conference]`` is headed by ``conference``.
    """
    for item in reversed(fs.items):
        if isinstance(item, str):
            return item
    raise NoHead(f"structure [{fs.label} ...] has no bare token")


# corpus files: records of (source, target) separated by '---' lines

def read_corpus(text: str) -> list[tuple[FStructure, FStructure]]:
    chunks: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip() == "---":
            chunks.append([])
        else:
            chunks[-1].append(line)

    pairs = []
    index = 0
    for chunk in chunks:
        body = "\n".join(chunk)
        if not body.strip():
            continue
        index += 1
        try:
            structures = parse_many(body)
        except FStructureError as exc:
            raise CorpusError(index, str(exc)) from exc
        if len(structures) != 2:
            raise CorpusError(index, f"expected 2 structures, found {len(structures)}")
        pairs.append((structures[0], structures[1]))
    return pairs


def write_corpus(pairs: Sequence[tuple[FStructure, FStructure]]) -> str:
    return "---\n".join(f"{serialize(s)}\n{serialize(t)}\n" for s, t in pairs)


def load_corpus(path) -> list[tuple[FStructure, FStructure]]:
    with open(path, encoding="utf-8") as fh:
        return read_corpus(fh.read())

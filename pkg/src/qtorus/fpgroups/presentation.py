"""Finite presentations, their text forms and GAP/JSON export."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .words import (Word, WordSyntaxError, canonical_relator, default_labels, format_word,
                    parse_word, relator_sort_key)


class PresentationSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators 1..n and a canonical sorted tuple of relators."""

    ngens: int
    relators: tuple[Word, ...] = ()
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.ngens < 0:
            raise ValueError("negative generator count")
        rels = {canonical_relator(r) for r in self.relators}
        rels.discard(())
        for r in rels:
            if any(abs(x) > self.ngens for x in r):
                raise ValueError(f"relator {r} uses an unknown generator")
        object.__setattr__(self, "relators", tuple(sorted(rels, key=relator_sort_key)))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.ngens or len(set(labels)) != len(labels):
                raise ValueError("labels must be distinct, one per generator")
            object.__setattr__(self, "labels", labels)

    @property
    def names(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else default_labels(self.ngens)

    def word(self, w: Word, sep: str = " ") -> str:
        return format_word(w, self.names, sep)

    def parse(self, text: str) -> Word:
        return parse_word(text, self.names)

    def __str__(self):
        return "<" + ",".join(self.names) + " | " + ", ".join(
            self.word(r, "*") for r in self.relators) + ">"

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def to_gap(self) -> str:
        n = self.ngens
        names = self.names
        gens = "".join(f"{names[k - 1]} := F.{k};; " for k in range(1, n + 1))
        rels = ", ".join(format_word(r, names, "*") for r in self.relators)
        return f"F := FreeGroup({n});; {gens}G := F / [ {rels} ];"

    def to_dict(self) -> dict:
        return {
            "generators": list(self.names),
            "relators": [self.word(r) for r in self.relators],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Presentation:
        names = tuple(d["generators"])
        rels = [parse_word(r, names) for r in d.get("relators", [])]
        return cls(len(names), tuple(rels), None if names == default_labels(len(names)) else names)


_BRACKETS = {"<": ">", "⟨": "⟩"}


def parse_presentation(text: str) -> Presentation:
    """Parse ``<a,b | a^2, b^3>`` (ASCII or Unicode angle brackets)."""
    s = text.strip()
    if not s or s[0] not in _BRACKETS or not s.endswith(_BRACKETS[s[0]]):
        raise PresentationSyntaxError(f"expected <gens | relators>, got {text!r}")
    body = s[1:-1]
    if "|" in body:
        gens_part, rel_part = body.split("|", 1)
    else:
        gens_part, rel_part = body, ""
    names = tuple(g.strip() for g in gens_part.split(",") if g.strip())
    for g in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", g):
            raise PresentationSyntaxError(f"bad generator name {g!r}")
    if len(set(names)) != len(names):
        raise PresentationSyntaxError("repeated generator name")
    rels = []
    for chunk in _split_relators(rel_part):
        if "=" in chunk:
            lhs, rhs = chunk.split("=", 1)
            try:
                a, b = parse_word(lhs, names), parse_word(rhs, names)
            except WordSyntaxError as exc:
                raise PresentationSyntaxError(str(exc)) from exc
            rels.append(a + tuple(-x for x in reversed(b)))
        else:
            try:
                rels.append(parse_word(chunk, names))
            except WordSyntaxError as exc:
                raise PresentationSyntaxError(str(exc)) from exc
    return Presentation(len(names), tuple(rels), names)


def _split_relators(text: str):
    depth, cur = 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            if "".join(cur).strip():
                yield "".join(cur)
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        yield "".join(cur)

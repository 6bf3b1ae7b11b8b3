"""Words in a free group.

A word is a tuple of nonzero ints: ``k`` stands for generator k (1-based) and
``-k`` for its inverse.  So ``(1, -2, 1)`` is g1 g2^-1 g1.
"""
from __future__ import annotations

import re

Word = tuple[int, ...]


class WordSyntaxError(ValueError):
    pass


def free_reduce(w) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*ws) -> Word:
    acc: list[int] = []
    for w in ws:
        for x in w:
            if acc and acc[-1] == -x:
                acc.pop()
            else:
                acc.append(x)
    return tuple(acc)


def power(w, e: int) -> Word:
    base = w if e >= 0 else inverse(w)
    return free_reduce(tuple(base) * abs(e))


def cyclic_reduce(w) -> Word:
    w = free_reduce(w)
    a, b = 0, len(w)
    while b - a >= 2 and w[a] == -w[b - 1]:
        a += 1
        b -= 1
    return w[a:b]


def _min_rotation(w: Word) -> Word:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def _key(w: Word):
    # order letters as g1 < g1^-1 < g2 < ...
    return (len(w), tuple((abs(x), x < 0) for x in w))


def canonical_relator(w) -> Word:
    """Cyclic reduction, then the least rotation of w or w^-1."""
    w = cyclic_reduce(w)
    if not w:
        return w
    cands = [w[i:] + w[:i] for i in range(len(w))]
    v = inverse(w)
    cands += [v[i:] + v[:i] for i in range(len(v))]
    return min(cands, key=_key)


def relator_sort_key(w: Word):
    return _key(w)


def substitute(w, images) -> Word:
    """Replace generator k by ``images[k]`` (a word), inverses accordingly."""
    acc: list[int] = []
    for x in w:
        img = images[x] if x > 0 else inverse(images[-x])
        for y in img:
            if acc and acc[-1] == -y:
                acc.pop()
            else:
                acc.append(y)
    return tuple(acc)


def exponent_sums(w, n: int) -> list[int]:
    v = [0] * n
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"g{k}" for k in range(1, n + 1))


def _syllables(w: Word):
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        yield abs(w[i]), (j - i) * (1 if w[i] > 0 else -1)
        i = j


def format_word(w, labels=None, sep: str = " ") -> str:
    """``g1 g2^-1 g3`` style (``sep='*'`` gives the GAP style)."""
    if not w:
        return "1"
    parts = []
    for g, e in _syllables(tuple(w)):
        name = labels[g - 1] if labels else f"g{g}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return sep.join(parts)


_SUPERSCRIPT = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻", "0123456789-")
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<num>-?\d+)|(?P<op>[()*^/]))")


def _tokenize(text: str):
    text = re.sub(r"([⁰¹²³⁴⁵⁶⁷⁸⁹⁻]+)", lambda m: "^" + m.group(1).translate(_SUPERSCRIPT), text)
    pos, out = 0, []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"unexpected character {text[pos]!r} in {text!r}")
        out.append(m.group(m.lastgroup))
        pos = m.end()
    return out


def parse_word(text: str, labels) -> Word:
    """Parse products of labels with ``^`` powers, ``*`` or blanks, and parentheses.

    ``1`` denotes the empty word.  ``labels`` maps names to 1-based indices.
    """
    if isinstance(labels, (list, tuple)):
        labels = {name: k for k, name in enumerate(labels, 1)}
    toks = _tokenize(text)
    pos = 0

    def atom():
        nonlocal pos
        if pos >= len(toks):
            raise WordSyntaxError(f"unexpected end of word {text!r}")
        t = toks[pos]
        pos += 1
        if t == "(":
            w = product()
            if pos >= len(toks) or toks[pos] != ")":
                raise WordSyntaxError(f"unbalanced parenthesis in {text!r}")
            pos += 1
            return w
        if t == "1":
            return ()
        if t in labels:
            return (labels[t],)
        raise WordSyntaxError(f"unknown generator {t!r} in {text!r}")

    def factor():
        nonlocal pos
        w = atom()
        while pos < len(toks) and toks[pos] == "^":
            pos += 1
            if pos >= len(toks):
                raise WordSyntaxError(f"missing exponent in {text!r}")
            try:
                e = int(toks[pos])
            except ValueError as exc:
                raise WordSyntaxError(f"bad exponent {toks[pos]!r}") from exc
            pos += 1
            w = power(w, e)
        return w

    def product():
        nonlocal pos
        w = ()
        while pos < len(toks) and toks[pos] not in (")",):
            if toks[pos] == "*":
                pos += 1
                continue
            w = multiply(w, factor())
        return w

    w = product()
    if pos != len(toks):
        raise WordSyntaxError(f"trailing input in {text!r}")
    return w

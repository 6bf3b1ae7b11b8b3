"""Tietze simplification of presentations.

Moves, repeated until nothing changes:

1. eliminate a generator occurring exactly once in some relator, taking the
   shortest such relator and the lowest generator index;
2. merge the one-generator power relators into a single ``a^gcd``;
3. reduce syllable exponents of the remaining relators modulo those orders,
   into (-n/2, n/2], and drop what becomes trivial.
"""
from __future__ import annotations

from collections import Counter
from math import gcd

from .presentation import Presentation
from .words import Word, canonical_relator, cyclic_reduce, inverse, relator_sort_key, substitute

# eliminating with a longer relator must not increase the total relator length
SHORT_ELIMINATION = 3


def _single_occurrence(r: Word):
    counts = Counter(abs(x) for x in r)
    return sorted(g for g, c in counts.items() if c == 1)


def _solve_for(r: Word, g: int) -> Word:
    """From relator r containing g once, the word equal to g."""
    k = next(i for i, x in enumerate(r) if abs(x) == g)
    rot = r[k:] + r[:k]  # = g^e * rest
    rest = rot[1:]
    return inverse(rest) if rot[0] > 0 else tuple(rest)


def _power_orders(rels) -> dict[int, int]:
    orders: dict[int, int] = {}
    for r in rels:
        if r and all(x == r[0] for x in r):
            g = abs(r[0])
            orders[g] = gcd(orders.get(g, 0), len(r))
    return orders


def _norm_exp(e: int, n: int | None) -> int:
    if n:
        e %= n
        if e > n // 2:
            e -= n
    return e


def syllable_reduce(w, orders: dict[int, int]) -> list[tuple[int, int]]:
    """Syllables (g, e) with exponents normalized modulo the known orders."""
    stack: list[tuple[int, int]] = []
    for x in w:
        g, e = abs(x), (1 if x > 0 else -1)
        if stack and stack[-1][0] == g:
            e += stack.pop()[1]
        e = _norm_exp(e, orders.get(g))
        if e:
            stack.append((g, e))
    return stack


def _word(syls) -> Word:
    return tuple(x for g, e in syls for x in ([g] if e > 0 else [-g]) * abs(e))


def reduce_exponents(w: Word, orders: dict[int, int]) -> Word:
    return _word(syllable_reduce(w, orders))


def _reduce_cyclic(w: Word, orders) -> Word:
    syls = syllable_reduce(w, orders)
    while len(syls) >= 2 and syls[0][0] == syls[-1][0]:
        g = syls[0][0]
        e = _norm_exp(syls[0][1] + syls[-1][1], orders.get(g))
        mid = syls[1:-1]
        syls = syllable_reduce(_word(mid + ([(g, e)] if e else [])), orders)
    return _word(syls)


def simplify_presentation(p: Presentation, max_rounds: int = 10_000):
    """Return ``(simplified, mapping)``.

    ``mapping[k]`` (k = 1..p.ngens) is the word over the simplified generators
    that the original generator k equals.
    """
    active = list(range(1, p.ngens + 1))
    images: dict[int, Word] = {g: (g,) for g in active}
    rels = {canonical_relator(r) for r in p.relators} - {()}

    for _ in range(max_rounds):
        changed = False
        orders = _power_orders(rels)
        # move 2 and 3
        new = set()
        for r in rels:
            if r and all(x == r[0] for x in r):
                continue
            w = canonical_relator(_reduce_cyclic(r, orders))
            if w:
                new.add(w)
        for g, n in orders.items():
            new.add((g,) * n)
        if new != rels:
            rels, changed = new, True
        # move 1
        best = None
        for r in sorted(rels, key=relator_sort_key):
            if best is not None and len(r) > best[0]:
                break
            for g in _single_occurrence(r):
                if best is None or (len(r), g) < best[:2]:
                    best = (len(r), g, r)
        if best is not None:
            length, g, r = best
            sol = _solve_for(r, g)
            sub = {h: (h,) for h in active}
            sub[g] = sol
            after = {canonical_relator(substitute(x, sub)) for x in rels if x != r} - {()}
            total_before = sum(map(len, rels))
            total_after = sum(map(len, after))
            if length <= SHORT_ELIMINATION or total_after < total_before:
                rels = after
                active.remove(g)
                images = {k: substitute(v, sub) for k, v in images.items()}
                changed = True
        if not changed:
            break

    # renumber surviving generators 1..m, keeping their labels
    renum = {g: i for i, g in enumerate(active, 1)}
    tr = {g: (renum[g],) for g in active}
    out_rels = tuple(substitute(r, tr) for r in rels)
    names = p.names
    simplified = Presentation(len(active), out_rels, tuple(names[g - 1] for g in active))
    mapping = {k: substitute(v, tr) for k, v in images.items()}
    return simplified, mapping

"""Colored set-partition diagrams and categories of partitions.

A diagram in P(k, l) has k upper legs and l lower legs, numbered internally
0..k-1 (upper, written u1..uk) and k..k+l-1 (lower, written d1..dl).  Each
leg carries a color, ``w`` or ``b``.  Uncolored diagrams are all-white.

Composition convention: ``compose(p, q)`` is "q first, then p", so that
``T_p @ T_q == N**loops * T_{p o q}``.  It needs ``p.upper == q.lower`` with
matching middle colors.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

WHITE, BLACK = "w", "b"


class PartitionError(ValueError):
    pass


class SaturationCapError(RuntimeError):
    """Raised when a category closure exceeds its element cap."""


def _flip(colors: str) -> str:
    return colors.translate(str.maketrans("wb", "bw"))


@dataclass(frozen=True, order=True)
class ColoredPartition:
    upper: int
    lower: int
    blocks: tuple[tuple[int, ...], ...]
    colors: str

    def __post_init__(self):
        n = self.upper + self.lower
        legs = sorted(x for b in self.blocks for x in b)
        if legs != list(range(n)):
            raise PartitionError("blocks must cover every leg exactly once")
        if any(len(b) == 0 for b in self.blocks):
            raise PartitionError("empty block")
        if len(self.colors) != n or set(self.colors) - {WHITE, BLACK}:
            raise PartitionError("one color (w/b) per leg required")
        canon = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def _trusted(cls, upper, lower, blocks, colors):
        # blocks known to be a valid cover; only canonicalize
        p = object.__new__(cls)
        object.__setattr__(p, "upper", upper)
        object.__setattr__(p, "lower", lower)
        object.__setattr__(p, "blocks", tuple(sorted(tuple(sorted(b)) for b in blocks)))
        object.__setattr__(p, "colors", colors)
        return p

    @classmethod
    def build(cls, upper: int, lower: int, blocks, colors: str | None = None):
        return cls(upper, lower, tuple(tuple(b) for b in blocks),
                   colors if colors is not None else WHITE * (upper + lower))

    @property
    def size(self) -> int:
        return self.upper + self.lower

    @property
    def upper_colors(self) -> str:
        return self.colors[: self.upper]

    @property
    def lower_colors(self) -> str:
        return self.colors[self.upper:]

    def is_upper(self, leg: int) -> bool:
        return leg < self.upper

    def whitened(self) -> ColoredPartition:
        if BLACK not in self.colors:
            return self
        return ColoredPartition._trusted(self.upper, self.lower, self.blocks, WHITE * self.size)

    def __str__(self):
        return format_partition(self)


# literals -------------------------------------------------------------------

_HEADER = re.compile(r"^\s*P\(\s*(\d+)\s*,\s*(\d+)\s*\)")
_BLOCK = re.compile(r"\{([^{}]*)\}")
_LEG = re.compile(r"^([ud])(\d+)$")


def parse_partition(text: str) -> ColoredPartition:
    """Parse ``P(k,l){u1 d1}{u2 d2} colors ww|ww`` (colors clause optional)."""
    m = _HEADER.match(text)
    if not m:
        raise PartitionError(f"malformed partition literal {text!r}")
    k, l = int(m.group(1)), int(m.group(2))
    rest = text[m.end():]
    colors_part = None
    if "colors" in rest:
        rest, colors_part = rest.split("colors", 1)
    blocks = []
    seen = set()
    pos = 0
    rest = rest.strip()
    while pos < len(rest):
        bm = _BLOCK.match(rest, pos)
        if not bm:
            raise PartitionError(f"malformed block list in {text!r}")
        block = []
        for tok in bm.group(1).split():
            lm = _LEG.match(tok)
            if not lm:
                raise PartitionError(f"bad leg name {tok!r}")
            idx = int(lm.group(2))
            row_len = k if lm.group(1) == "u" else l
            if not 1 <= idx <= row_len:
                raise PartitionError(f"leg {tok} out of range for P({k},{l})")
            leg = idx - 1 if lm.group(1) == "u" else k + idx - 1
            if leg in seen:
                raise PartitionError(f"leg {tok} referenced twice")
            seen.add(leg)
            block.append(leg)
        if not block:
            raise PartitionError("empty block")
        blocks.append(tuple(block))
        pos = bm.end()
        while pos < len(rest) and rest[pos].isspace():
            pos += 1
    if len(seen) != k + l:
        raise PartitionError(f"not every leg of P({k},{l}) is covered in {text!r}")
    if colors_part is None:
        colors = WHITE * (k + l)
    else:
        cp = colors_part.strip()
        if "|" not in cp:
            raise PartitionError("colors clause needs the form <upper>|<lower>")
        up, low = (s.strip() for s in cp.split("|", 1))
        if len(up) != k or len(low) != l or set(up + low) - {WHITE, BLACK}:
            raise PartitionError(f"bad colors clause {cp!r}")
        colors = up + low
    return ColoredPartition(k, l, tuple(blocks), colors)


def _leg_name(p: ColoredPartition, leg: int) -> str:
    return f"u{leg + 1}" if leg < p.upper else f"d{leg - p.upper + 1}"


def format_partition(p: ColoredPartition) -> str:
    body = "".join("{" + " ".join(_leg_name(p, x) for x in b) + "}" for b in p.blocks)
    return f"P({p.upper},{p.lower}){body} colors {p.upper_colors}|{p.lower_colors}"


# basic diagrams ---------------------------------------------------------------

def identity(k: int = 1, colors: str | None = None) -> ColoredPartition:
    colors = colors if colors is not None else WHITE * k
    return ColoredPartition(k, k, tuple((a, k + a) for a in range(k)), colors + colors)


def empty() -> ColoredPartition:
    return ColoredPartition(0, 0, (), "")


def cup(colors: str = "ww") -> ColoredPartition:
    return ColoredPartition(0, 2, ((0, 1),), colors)


def cap(colors: str = "ww") -> ColoredPartition:
    return ColoredPartition(2, 0, ((0, 1),), colors)


def singleton_lower() -> ColoredPartition:
    return ColoredPartition(0, 1, ((0,),), WHITE)


def fork() -> ColoredPartition:
    return ColoredPartition(1, 2, ((0, 1, 2),), WHITE * 3)


def crossing(colors: str = "wwww") -> ColoredPartition:
    return ColoredPartition(2, 2, ((0, 3), (1, 2)), colors)


def single_block(k: int, l: int, colors: str | None = None) -> ColoredPartition:
    return ColoredPartition(k, l, (tuple(range(k + l)),), colors or WHITE * (k + l))


# category operations ------------------------------------------------------------

def tensor(p: ColoredPartition, q: ColoredPartition) -> ColoredPartition:
    """Horizontal concatenation, p on the left."""
    kp, kq, lp = p.upper, q.upper, p.lower
    k = kp + kq

    def mp(x):
        return x if x < kp else k + (x - kp)

    def mq(y):
        return kp + y if y < kq else k + lp + (y - kq)

    blocks = tuple(tuple(mp(x) for x in b) for b in p.blocks)
    blocks += tuple(tuple(mq(y) for y in b) for b in q.blocks)
    colors = p.upper_colors + q.upper_colors + p.lower_colors + q.lower_colors
    return ColoredPartition._trusted(k, p.lower + q.lower, blocks, colors)


def compose(p: ColoredPartition, q: ColoredPartition) -> tuple[ColoredPartition, int]:
    """Vertical concatenation p o q (q applied first); returns (diagram, loops)."""
    if p.upper != q.lower:
        raise PartitionError(f"cannot compose: {p.upper} upper legs vs {q.lower} lower legs")
    if p.upper_colors != q.lower_colors:
        raise PartitionError("cannot compose: middle colors differ")
    k, m, l = q.upper, q.lower, p.lower
    # nodes: 0..k-1 top (q upper), k..k+m-1 middle, k+m..k+m+l-1 bottom (p lower)
    label = list(range(k + m + l))
    groups = [list(b) for b in q.blocks] + [[k + x for x in b] for b in p.blocks]
    members = {x: [x] for x in label}
    for grp in groups:
        root = label[grp[0]]
        for x in grp[1:]:
            r = label[x]
            if r != root:
                if len(members[r]) > len(members[root]):
                    root, r = r, root
                for y in members.pop(r):
                    label[y] = root
                    members[root].append(y)
    blocks = []
    loops = 0
    for comp in members.values():
        outer = [x if x < k else x - m for x in comp if x < k or x >= k + m]
        if outer:
            blocks.append(outer)
        else:
            loops += 1
    colors = q.upper_colors + p.lower_colors
    return ColoredPartition._trusted(k, l, blocks, colors), loops


def involute(p: ColoredPartition) -> ColoredPartition:
    """Turn upside down, reversing every leg color."""
    k, l = p.upper, p.lower

    def mv(x):
        return l + x if x < k else x - k

    blocks = tuple(tuple(mv(x) for x in b) for b in p.blocks)
    return ColoredPartition._trusted(l, k, blocks, _flip(p.lower_colors) + _flip(p.upper_colors))


def delta_plain(p: ColoredPartition, i, j) -> int:
    """1 iff every block of p carries a constant index value on its legs."""
    if len(i) != p.upper or len(j) != p.lower:
        raise PartitionError("multi-index arity does not match the diagram")
    idx = tuple(i) + tuple(j)
    for b in p.blocks:
        v = idx[b[0]]
        if any(idx[x] != v for x in b[1:]):
            return 0
    return 1


def is_noncrossing(p: ColoredPartition) -> bool:
    """Noncrossing when the legs are read around the boundary circle."""
    k, l = p.upper, p.lower
    # cyclic order: u1..uk, then dl..d1
    pos = {a: a for a in range(k)}
    for c in range(l):
        pos[k + c] = k + (l - 1 - c)
    blocks = [sorted(pos[x] for x in b) for b in p.blocks]
    for b1, b2 in itertools.combinations(blocks, 2):
        for a, c in itertools.combinations(b1, 2):
            inside = [x for x in b2 if a < x < c]
            if inside and len(inside) < len(b2):
                return False
    return True


# categories -------------------------------------------------------------------

@dataclass(frozen=True)
class CategorySpec:
    name: str
    generators: tuple[ColoredPartition, ...]
    colored: bool = False
    notes: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.generators:
            raise PartitionError("a category needs at least one generator")
        if not self.colored and any(BLACK in g.colors for g in self.generators):
            raise PartitionError("uncolored category with black legs")
        object.__setattr__(self, "generators", tuple(sorted(set(self.generators))))

    @property
    def max_legs(self) -> int:
        return max(g.size for g in self.generators)


def _all_colorings(p: ColoredPartition, ok) -> list[ColoredPartition]:
    out = []
    for cols in itertools.product(WHITE + BLACK, repeat=p.size):
        q = ColoredPartition(p.upper, p.lower, p.blocks, "".join(cols))
        if ok(q):
            out.append(q)
    return out


def is_color_matching_pairing(p: ColoredPartition) -> bool:
    """Pair blocks: same row -> opposite colors, across rows -> equal colors."""
    for b in p.blocks:
        if len(b) != 2:
            return False
        x, y = b
        same_row = p.is_upper(x) == p.is_upper(y)
        if (p.colors[x] == p.colors[y]) == same_row:
            return False
    return True


_BUILTIN_NOTES = {
    "NC2_uncolored": "O_N^+: the cup generates all noncrossing pairings",
    "NC2": "U_N^+: the two color-matching cups generate NC2",
    "NC": "S_N^+: cup, lower singleton and fork generate all noncrossing partitions",
    "NC_even": "H_N^+: cup and the four-leg block generate noncrossing even partitions",
    "P2": "U_N: the cups and all color-matching crossings generate P2",
    "P2_uncolored": "O_N: cup and crossing",
    "P": "S_N: cup, singleton, fork and crossing generate all partitions",
}


def builtin_category(name: str) -> CategorySpec:
    if name == "NC2_uncolored":
        gens = (cup(),)
        colored = False
    elif name == "NC2":
        gens = (cup("wb"), cup("bw"))
        colored = True
    elif name == "NC":
        gens = (cup(), singleton_lower(), fork())
        colored = False
    elif name == "NC_even":
        gens = (cup(), single_block(2, 2))
        colored = False
    elif name == "P2":
        gens = (cup("wb"), cup("bw")) + tuple(
            _all_colorings(crossing(), is_color_matching_pairing))
        colored = True
    elif name == "P2_uncolored":
        gens = (cup(), crossing())
        colored = False
    elif name == "P":
        gens = (cup(), singleton_lower(), fork(), crossing())
        colored = False
    else:
        raise PartitionError(f"unknown builtin category {name!r}")
    return CategorySpec(name, gens, colored, notes=_BUILTIN_NOTES[name])


def saturate_category(spec: CategorySpec, point_bound: int,
                      max_elements: int = 200_000) -> frozenset[ColoredPartition]:
    """Closure of generators + identities under tensor, compose, involute.

    Every operand and result stays within ``point_bound`` total legs.
    """
    if point_bound < 2:
        raise ValueError("point_bound must be at least 2")
    return _saturate(spec.generators, spec.colored, point_bound, max_elements)


@lru_cache(maxsize=64)
def _saturate(generators, colored, bound, max_elements):
    seeds = {empty()}
    seeds.add(identity(1, WHITE))
    if colored:
        seeds.add(identity(1, BLACK))
    seeds.update(g for g in generators if g.size <= bound)

    def norm(p):
        return p if colored else p.whitened()

    known: set[ColoredPartition] = set()
    by_size: dict[int, list] = {}
    by_upper: dict[tuple[int, str], list] = {}
    by_lower: dict[tuple[int, str], list] = {}

    def add(p):
        known.add(p)
        by_size.setdefault(p.size, []).append(p)
        by_upper.setdefault((p.upper, p.upper_colors), []).append(p)
        by_lower.setdefault((p.lower, p.lower_colors), []).append(p)
        if len(known) > max_elements:
            raise SaturationCapError(f"category closure exceeded {max_elements} diagrams")

    layers = sorted({norm(h) for g in generators if g.size <= bound
                     for h in (g, involute(g))})
    frontier = sorted(seeds)
    for p in frontier:
        add(p)
    while frontier:
        fresh: set[ColoredPartition] = set()

        def offer(r):
            if r.size <= bound and r not in known and r not in fresh:
                fresh.add(r)

        for x in frontier:
            offer(norm(involute(x)))
            for s in range(0, bound - x.size + 1):
                for y in list(by_size.get(s, ())):
                    offer(tensor(x, y))
                    offer(tensor(y, x))
            for y in list(by_lower.get((x.upper, x.upper_colors), ())):
                if y.upper + x.lower <= bound:
                    offer(compose(x, y)[0])
            for y in list(by_upper.get((x.lower, x.lower_colors), ())):
                if x.upper + y.lower <= bound:
                    offer(compose(y, x)[0])
            # identity-padded generator layers reach nested diagrams whose
            # plain construction would pass through oversized intermediates
            for g in layers:
                for r in _padded_products(x, g, bound):
                    offer(r)
        frontier = sorted(fresh)
        for p in frontier:
            add(p)
    return frozenset(known)


def compose_padded(p: ColoredPartition, q: ColoredPartition, offset: int):
    """compose(id_a (x) p (x) id_b, q): p glued onto q's lower legs from ``offset``."""
    b = q.lower - offset - p.upper
    if offset < 0 or b < 0:
        raise PartitionError("padding does not fit")
    cols = q.lower_colors
    left = identity(offset, cols[:offset])
    right = identity(b, cols[offset + p.upper:])
    return compose(tensor(tensor(left, p), right), q)


def compose_padded_above(p: ColoredPartition, q: ColoredPartition, offset: int):
    """compose(p, id_a (x) q (x) id_b): q feeds p's upper legs from ``offset``."""
    b = p.upper - offset - q.lower
    if offset < 0 or b < 0:
        raise PartitionError("padding does not fit")
    cols = p.upper_colors
    left = identity(offset, cols[:offset])
    right = identity(b, cols[offset + q.lower:])
    return compose(p, tensor(tensor(left, q), right))


def _padded_products(x: ColoredPartition, y: ColoredPartition, bound: int):
    # y below x, glued into x's lower row
    m = y.upper
    if x.size - m + y.lower <= bound:
        for a in range(x.lower - m + 1):
            if x.lower_colors[a:a + m] == y.upper_colors:
                yield compose_padded(y, x, a)[0]
    # y above x, glued into x's upper row
    m = y.lower
    if x.size - m + y.upper <= bound:
        for a in range(x.upper - m + 1):
            if x.upper_colors[a:a + m] == y.lower_colors:
                yield compose_padded_above(x, y, a)[0]


def enumerate_partitions(k: int, l: int):
    """All set partitions of the k+l legs (all-white), brute force."""
    n = k + l

    def rec(i, blocks):
        if i == n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    for bl in rec(0, []):
        yield ColoredPartition(k, l, bl, WHITE * n)

"""Todd-Coxeter enumeration of the cosets of the trivial subgroup (HLT strategy)."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .presentation import Presentation
from .words import Word


@dataclass(frozen=True)
class CosetResult:
    finite: bool
    order: int | None
    cosets_defined: int
    # table[c][col]: column 2*(g-1) for g, 2*(g-1)+1 for g^-1; only when finite
    table: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    def __str__(self):
        return f"Finite({self.order})" if self.finite else f"Inconclusive(after {self.cosets_defined} cosets)"


def _col(x: int) -> int:
    return 2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1


class _Table:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.rows: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_cosets = max_cosets
        self.queue: deque[int] = deque()

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def new(self) -> int:
        if self.live >= self.max_cosets:
            raise OverflowError
        c = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.parent.append(c)
        self.live += 1
        return c

    def define(self, c: int, x: int) -> int:
        d = self.new()
        self.rows[c][_col(x)] = d
        self.rows[d][_col(-x)] = c
        return d

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def coincidence(self, a: int, b: int):
        self.queue.append((a, b))
        while self.queue:
            a, b = self.queue.popleft()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            self.parent[b] = a
            self.live -= 1
            rb = self.rows[b]
            for col in range(self.ncols):
                d = rb[col]
                if d < 0:
                    continue
                inv = col ^ 1
                # detach b's edge at d
                if self.rows[d][inv] == b:
                    self.rows[d][inv] = -1
                ra = self.rows[a]
                fa = ra[col]
                if fa >= 0:
                    self.queue.append((fa, d))
                else:
                    d2 = self.find(d)
                    ra[col] = d2
                    if self.rows[d2][inv] < 0:
                        self.rows[d2][inv] = a
                    elif self.find(self.rows[d2][inv]) != a:
                        self.queue.append((self.rows[d2][inv], a))

    def scan_and_fill(self, c: int, w: Word):
        """Trace relator w from coset c, defining cosets to complete it."""
        n = len(w)
        if n == 0:
            return
        while True:
            f, i = c, 0
            while i < n:
                nxt = self.rows[f][_col(w[i])]
                if nxt < 0:
                    break
                f, i = self.find(nxt), i + 1
            if i == n:
                if f != c:
                    self.coincidence(f, c)
                return
            b, j = c, n - 1
            while j >= i:
                nxt = self.rows[b][_col(-w[j])]
                if nxt < 0:
                    break
                b, j = self.find(nxt), j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.rows[f][_col(w[i])] = b
                self.rows[b][_col(-w[i])] = f
                return
            self.define(f, w[i])


def todd_coxeter(p: Presentation, max_cosets: int = 10_000) -> CosetResult:
    """Enumerate cosets of the trivial subgroup; Inconclusive when the cap is hit."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    if p.ngens == 0:
        return CosetResult(True, 1, 1, ((),))
    t = _Table(p.ngens, max_cosets)
    rels = [r for r in p.relators if r]
    # make sure inverse columns exist for involution-free diagrams
    c = 0
    try:
        while c < len(t.rows):
            if t.alive(c):
                for r in rels:
                    if not t.alive(c):
                        break
                    t.scan_and_fill(c, r)
                if t.alive(c):
                    for x in range(1, p.ngens + 1):
                        for s in (x, -x):
                            if t.alive(c) and t.rows[c][_col(s)] < 0:
                                t.define(c, s)
            c += 1
    except OverflowError:
        return CosetResult(False, None, len(t.rows))
    return _compact(t)


def _compact(t: _Table) -> CosetResult:
    live = [c for c in range(len(t.rows)) if t.alive(c)]
    # renumber in BFS order from coset 0
    order = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for col in range(t.ncols):
            d = t.find(t.rows[c][col])
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    assert len(order) == len(live)
    table = [None] * len(order)
    for c, k in order.items():
        table[k] = tuple(order[t.find(t.rows[c][col])] for col in range(t.ncols))
    return CosetResult(True, len(order), len(t.rows), tuple(table))

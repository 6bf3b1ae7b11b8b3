"""Groups with solvable word problem via explicit normal forms.

Every group here is attached to a presentation with generators 1..n and
exposes ``from_word``/``to_word``, multiplication and inversion on hashable
normal forms.  ``length`` is the exact word length when it is cheap to know.
"""
from __future__ import annotations

from collections import deque

from .coset import CosetResult, _col
from .snf import hermite_rows, reduce_mod_lattice
from .words import Word


class NormalFormGroup:
    ngens: int
    identity = None

    def letter(self, x: int):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def to_word(self, a) -> Word:
        raise NotImplementedError

    def length(self, a) -> int | None:
        return None

    def from_word(self, w):
        acc = self.identity
        for x in w:
            acc = self.mul(acc, self.letter(x))
        return acc

    def is_identity(self, w) -> bool:
        return self.from_word(w) == self.identity

    def sort_key(self, a):
        w = self.to_word(a)
        return (len(w), tuple((abs(x), x < 0) for x in w))


def _norm(e: int, n: int) -> int:
    if n:
        e %= n
        if e > n // 2:
            e -= n
    return e


class FreeProductCyclicGroup(NormalFormGroup):
    """Z_{n_1} * ... * Z_{n_k}; order 0 means infinite cyclic.

    Elements are tuples of syllables (g, e), adjacent g distinct, each e a
    nonzero exponent reduced into (-n/2, n/2].
    """

    def __init__(self, orders):
        self.orders = tuple(int(n) for n in orders)
        if any(n < 0 or n == 1 for n in self.orders):
            raise ValueError("factor orders must be 0 (infinite) or at least 2")
        self.ngens = len(self.orders)
        self.identity = ()

    def letter(self, x: int):
        g = abs(x)
        e = _norm(1 if x > 0 else -1, self.orders[g - 1])
        return ((g, e),) if e else ()

    def mul(self, a, b):
        if not a:
            return b
        if not b:
            return a
        out = list(a)
        i = 0
        while i < len(b):
            g, e = b[i]
            if out and out[-1][0] == g:
                e = _norm(out.pop()[1] + e, self.orders[g - 1])
                if e:
                    out.append((g, e))
                    i += 1
                    break
                i += 1
                continue
            break
        out.extend(b[i:])
        return tuple(out)

    def inv(self, a):
        return tuple((g, _norm(-e, self.orders[g - 1])) for g, e in reversed(a))

    def to_word(self, a) -> Word:
        return tuple(x for g, e in a for x in ([g] if e > 0 else [-g]) * abs(e))

    def length(self, a) -> int:
        return sum(abs(e) for _, e in a)


class AbelianGroup(NormalFormGroup):
    """Z^n modulo a relation lattice, elements reduced against its Hermite basis."""

    def __init__(self, ngens: int, relation_rows):
        self.ngens = ngens
        self.basis = hermite_rows(relation_rows, ngens)
        self.identity = (0,) * ngens

    def letter(self, x: int):
        v = [0] * self.ngens
        v[abs(x) - 1] = 1 if x > 0 else -1
        return reduce_mod_lattice(v, self.basis)

    def mul(self, a, b):
        return reduce_mod_lattice([x + y for x, y in zip(a, b)], self.basis)

    def inv(self, a):
        return reduce_mod_lattice([-x for x in a], self.basis)

    def to_word(self, a) -> Word:
        return tuple(x for g, e in enumerate(a, 1) for x in ([g] if e > 0 else [-g]) * abs(e))


class FiniteGroup(NormalFormGroup):
    """Regular action on a closed coset table; element k is coset k."""

    def __init__(self, ngens: int, coset: CosetResult):
        if not coset.finite:
            raise ValueError("coset enumeration did not close")
        self.ngens = ngens
        self.table = coset.table
        self.order = coset.order
        self.identity = 0
        self._words: list[Word] = [()] * self.order
        seen = {0}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for g in range(1, ngens + 1):
                for x in (g, -g):
                    d = self.table[c][_col(x)]
                    if d not in seen:
                        seen.add(d)
                        self._words[d] = self._words[c] + (x,)
                        queue.append(d)

    def letter(self, x: int):
        return self.table[0][_col(x)]

    def act(self, c: int, w) -> int:
        for x in w:
            c = self.table[c][_col(x)]
        return c

    def mul(self, a, b):
        return self.act(a, self._words[b])

    def inv(self, a):
        return self.act(0, tuple(-x for x in reversed(self._words[a])))

    def to_word(self, a) -> Word:
        return self._words[a]

    def length(self, a) -> int:
        return len(self._words[a])

    def is_abelian(self) -> bool:
        gens = [self.letter(g) for g in range(1, self.ngens + 1)]
        return all(self.mul(x, y) == self.mul(y, x) for x in gens for y in gens)

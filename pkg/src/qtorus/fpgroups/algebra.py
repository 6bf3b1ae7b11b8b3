"""Group algebras with cyclotomic coefficients over normal-form groups."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..cyclo import Cyclo, format_cyclo
from .groups import NormalFormGroup
from .words import format_word


class AlgebraError(ValueError):
    pass


def _scalar(c) -> Cyclo:
    return c if isinstance(c, Cyclo) else Cyclo.rational(c)


@dataclass(eq=False)
class GroupAlgebraElement:
    group: NormalFormGroup
    terms: dict = field(default_factory=dict)
    labels: tuple[str, ...] | None = None
    # False when the ambient group had no normal forms and words stay unreduced
    reduced: bool = True

    def __post_init__(self):
        self.terms = {k: _scalar(v) for k, v in self.terms.items() if not _scalar(v).is_zero()}

    @classmethod
    def from_words(cls, group, pairs, labels=None) -> GroupAlgebraElement:
        """Sum of coefficient * word, words reduced to normal form."""
        acc: dict = {}
        for coeff, w in pairs:
            e = group.from_word(w)
            acc[e] = acc.get(e, Cyclo.zero()) + _scalar(coeff)
        return cls(group, acc, labels)

    @classmethod
    def one(cls, group, labels=None):
        return cls(group, {group.identity: Cyclo.one()}, labels)

    def _check(self, other):
        if other.group is not self.group:
            raise AlgebraError("elements live in different group algebras")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Cyclo.zero()) + v
        return GroupAlgebraElement(self.group, acc, self.labels)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> GroupAlgebraElement:
        c = _scalar(c)
        return GroupAlgebraElement(self.group, {k: c * v for k, v in self.terms.items()}, self.labels)

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return self.scale(other)
        self._check(other)
        acc: dict = {}
        mul = self.group.mul
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = mul(a, b)
                acc[k] = acc.get(k, Cyclo.zero()) + x * y
        return GroupAlgebraElement(self.group, acc, self.labels)

    def __pow__(self, n: int):
        if n < 0:
            raise AlgebraError("negative powers are not supported")
        out = GroupAlgebraElement.one(self.group, self.labels)
        for _ in range(n):
            out = out * self
        return out

    def star(self) -> GroupAlgebraElement:
        inv = self.group.inv
        return GroupAlgebraElement(self.group, {inv(k): v.conj() for k, v in self.terms.items()},
                                   self.labels)

    def trace(self) -> Cyclo:
        return self.terms.get(self.group.identity, Cyclo.zero())

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement) or other.group is not self.group:
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        z = Cyclo.zero()
        return all(self.terms.get(k, z) == other.terms.get(k, z) for k in keys)

    def items(self):
        """(word, coefficient) pairs in shortlex order of the normal forms."""
        key = self.group.sort_key
        return [(self.group.to_word(k), self.terms[k]) for k in sorted(self.terms, key=key)]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            cs = format_cyclo(c)
            if not w:
                parts.append(cs)
                continue
            ws = format_word(w, self.labels, "*")
            if cs == "1":
                parts.append(ws)
            elif cs == "-1":
                parts.append("-" + ws)
            elif c.is_rational():
                parts.append(f"{cs}*{ws}")
            else:
                parts.append(f"({cs})*{ws}")
        return " + ".join(parts).replace("+ -", "- ")


def ga_multiply_trace(x: GroupAlgebraElement, y: GroupAlgebraElement):
    """The product x*y together with its canonical trace (identity coefficient)."""
    z = x * y
    return z, z.trace()

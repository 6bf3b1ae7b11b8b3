"""Recognition of the group classes that torus extraction produces, and verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .coset import todd_coxeter
from .groups import AbelianGroup, FiniteGroup, FreeProductCyclicGroup, NormalFormGroup
from .presentation import Presentation
from .simplify import _power_orders, _reduce_cyclic, simplify_presentation
from .snf import abelianization, relation_matrix
from .words import Word, canonical_relator, substitute

KINDS = ("Trivial", "FiniteCyclic", "FreeAbelian", "Abelian", "Free",
         "FreeProductCyclic", "FiniteOrder", "Unknown")

DEFAULT_COSET_CAP = 20_000


@dataclass(frozen=True)
class Classification:
    kind: str
    params: tuple[int, ...] = ()
    evidence: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown classification kind {self.kind!r}")
        object.__setattr__(self, "params", tuple(self.params))

    def __str__(self):
        if self.kind == "Trivial":
            return "Trivial"
        if self.kind in ("FreeProductCyclic", "Abelian"):
            return f"{self.kind}([{', '.join(map(str, self.params))}])"
        if self.kind == "Unknown":
            return "Unknown"
        return f"{self.kind}({self.params[0]})"

    @property
    def is_finite(self) -> bool:
        if self.kind in ("Trivial", "FiniteCyclic", "FiniteOrder"):
            return True
        return self.kind == "Abelian" and 0 not in self.params

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "params": list(self.params), "text": str(self)}
        if self.evidence:
            d["evidence"] = self.evidence
        return d

    @classmethod
    def from_dict(cls, d) -> Classification:
        return cls(d["kind"], tuple(d.get("params", ())), dict(d.get("evidence", {})))


def free_product_of_cyclics(orders) -> Classification:
    """Canonical class of Z_{n_1} * ... * Z_{n_k} (0 = infinite cyclic)."""
    orders = [int(n) for n in orders if int(n) != 1]
    finite = sorted(n for n in orders if n)
    infinite = [0] * (len(orders) - len(finite))
    if not orders:
        return Classification("Trivial")
    if not finite:
        return Classification("Free", (len(infinite),))
    if len(orders) == 1:
        return Classification("FiniteCyclic", (finite[0],))
    return Classification("FreeProductCyclic", tuple(finite + infinite))


def abelian_class(invariants) -> Classification:
    inv = [int(d) for d in invariants if int(d) != 1]
    torsion = [d for d in inv if d]
    rank = len(inv) - len(torsion)
    if not inv:
        return Classification("Trivial")
    if not torsion:
        return Classification("Free", (1,)) if rank == 1 else Classification("FreeAbelian", (rank,))
    if len(inv) == 1:
        return Classification("FiniteCyclic", (torsion[0],))
    return Classification("Abelian", tuple(torsion + [0] * rank))


@dataclass
class GroupAnalysis:
    """Everything recognition learns about a presentation."""

    original: Presentation
    simplified: Presentation
    mapping: dict[int, Word]
    classification: Classification
    group: NormalFormGroup | None = None
    abelianization: list[int] = field(default_factory=list)

    @property
    def has_normal_forms(self) -> bool:
        return self.group is not None

    def image(self, w: Word):
        """Normal form of a word over the original generators."""
        if self.group is None:
            raise ValueError(f"{self.classification} has no normal forms")
        return self.group.from_word(substitute(w, self.mapping))

    def is_trivial(self, w: Word) -> bool:
        return self.image(w) == self.group.identity


def _is_commutator_closed(p: Presentation) -> bool:
    if p.ngens < 2:
        return True
    rels = set(p.relators)
    orders = _power_orders(rels)
    for a, b in combinations(range(1, p.ngens + 1), 2):
        com = (a, b, -a, -b)
        if canonical_relator(com) in rels:
            continue
        if canonical_relator(_reduce_cyclic(com, orders)) in rels:
            continue
        return False
    return True


def analyze(p: Presentation, max_cosets: int = DEFAULT_COSET_CAP) -> GroupAnalysis:
    s, mapping = simplify_presentation(p)
    ab = abelianization(s)
    evidence = {"abelianization": ab}
    n = s.ngens
    rels = s.relators

    def done(cls, group):
        return GroupAnalysis(p, s, mapping, cls, group, ab)

    if n == 0:
        return done(Classification("Trivial"), FreeProductCyclicGroup(()))
    if all(r and all(x == r[0] for x in r) for r in rels):
        orders = [0] * n
        for r in rels:
            orders[abs(r[0]) - 1] = len(r)
        if len({abs(r[0]) for r in rels}) == len(rels):
            return done(free_product_of_cyclics(orders), FreeProductCyclicGroup(orders))
    if _is_commutator_closed(s):
        return done(abelian_class(ab), AbelianGroup(n, relation_matrix(s)))
    tc = todd_coxeter(s, max_cosets)
    evidence["coset_enumeration"] = str(tc)
    if tc.finite:
        group = FiniteGroup(n, tc)
        if group.is_abelian():
            cls = abelian_class(ab)
        else:
            cls = Classification("FiniteOrder", (tc.order,), evidence)
        return done(cls, group)
    return done(Classification("Unknown", (), evidence), None)


def recognize(p: Presentation, max_cosets: int = DEFAULT_COSET_CAP) -> Classification:
    return analyze(p, max_cosets).classification


@dataclass(frozen=True)
class Verdict:
    growth: str
    amenability: str
    reason: str = ""

    def to_dict(self) -> dict:
        return {"growth": self.growth, "amenability": self.amenability, "reason": self.reason}


def verdicts(c: Classification) -> Verdict:
    k, ps = c.kind, c.params
    if c.is_finite:
        return Verdict("finite", "amenable", "finite group")
    if k == "Free":
        if ps[0] >= 2:
            return Verdict("exponential", "non_amenable", "nonabelian free group")
        return Verdict("polynomial", "amenable", "infinite cyclic")
    if k in ("FreeAbelian", "Abelian"):
        return Verdict("polynomial", "amenable", "infinite abelian group")
    if k == "FreeProductCyclic":
        weight = sum(1 - (1 / n if n else 0) for n in ps)
        if weight > 1:
            return Verdict("exponential", "non_amenable",
                           "free product of cyclics with sum(1 - 1/n) > 1 contains a free subgroup")
        return Verdict("polynomial", "amenable", "infinite dihedral group is virtually cyclic")
    return Verdict("unknown", "unknown", "group not recognized")

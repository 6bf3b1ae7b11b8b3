"""Maximal-torus extraction.

Conventions used throughout:

* The fundamental corepresentation restricts to ``u = Q diag(g) Q*`` on the
  torus, so an intertwiner T yields relations from ``(Q*)^{(x)l} T Q^{(x)k}``.
* Indices are 0-based; index ``a`` belongs to generator ``g{a+1}``.
* A diagram is read around its boundary circle, upper legs left to right then
  lower legs right to left.  A leg contributes ``g^+1`` when it is upper white
  or lower black and ``g^-1`` otherwise.  In the one-block sums the ``+1`` legs
  take ``Q[s, x]`` and the ``-1`` legs ``conj(Q[s, x])``.

So a nonvanishing Kronecker symbol forces the circle word to be trivial, which
is the same as "upper word = lower word".
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .cyclo import Cyclo, format_cyclo
from .fpgroups.algebra import GroupAlgebraElement
from .fpgroups.groups import FreeProductCyclicGroup
from .fpgroups.presentation import Presentation
from .fpgroups.recognize import DEFAULT_COSET_CAP, GroupAnalysis, analyze, verdicts
from .fpgroups.words import Word, canonical_relator, format_word, relator_sort_key
from .matrices import (CycloMatrix, MatrixError, ResourceCapError, UnitaryMatrix,
                       conjugate_intertwiner)
from .partitions import (BLACK, WHITE, CategorySpec, ColoredPartition, builtin_category,
                         format_partition, parse_partition, saturate_category)

SCHEMA_VERSION = 1

NAMED_MODELS = {
    "o+": ("O_plus", "NC2_uncolored"),
    "u+": ("U_plus", "NC2"),
    "s+": ("S_plus", "NC"),
    "h+": ("H_plus", "NC_even"),
}


class ExtractionError(ValueError):
    pass


# models -----------------------------------------------------------------------

@dataclass(frozen=True)
class EasyModel:
    spec: CategorySpec
    label: str = ""

    def describe(self) -> str:
        return self.label or f"easy:{self.spec.name}"


@dataclass(frozen=True)
class GroupDualModel:
    gamma: Presentation

    def describe(self) -> str:
        return f"dual:{self.gamma}"


@dataclass(frozen=True)
class IntertwinerModel:
    """Explicit maps T : N^k -> N^l; k and l given as leg color strings."""

    maps: tuple[tuple[CycloMatrix, str, str], ...]
    label: str = ""

    def describe(self) -> str:
        return self.label or f"intertwiners:{len(self.maps)}"


def named_model(name: str) -> EasyModel:
    """``o+``, ``u+``, ``s+``, ``h+`` (or O_plus, ...) as easy models."""
    key = name.lower()
    for short, (long, cat) in NAMED_MODELS.items():
        if key in (short, long.lower()):
            return EasyModel(builtin_category(cat), long)
    raise ExtractionError(f"unknown named model {name!r}")


@dataclass(frozen=True)
class ExtractionConfig:
    depth: int = 6
    index_cap: int = 10**6
    coset_cap: int = DEFAULT_COSET_CAP
    saturation_cap: int = 200_000

    def __post_init__(self):
        if self.depth < 2:
            raise ExtractionError("depth must be at least 2")
        if min(self.index_cap, self.coset_cap, self.saturation_cap) < 1:
            raise ExtractionError("caps must be positive")


# reports ------------------------------------------------------------------------

@dataclass(frozen=True)
class RawRelation:
    word: Word
    source: str
    upper: tuple[int, ...]
    lower: tuple[int, ...]

    def to_dict(self, pres: Presentation) -> dict:
        return {
            "relator": pres.word(self.word),
            "source": self.source,
            "upper": list(self.upper),
            "lower": list(self.lower),
        }


@dataclass
class TorusReport:
    model: str
    q: str
    n: int
    depth: int | None
    extractor: str
    raw_relations: list[RawRelation]
    analysis: GroupAnalysis
    notes: list[str] = field(default_factory=list)

    @property
    def raw_presentation(self) -> Presentation:
        return self.analysis.original

    @property
    def presentation(self) -> Presentation:
        return self.analysis.simplified

    @property
    def classification(self):
        return self.analysis.classification

    @property
    def verdict(self):
        return verdicts(self.classification)

    def to_dict(self) -> dict:
        raw = self.raw_presentation
        return {
            "schema_version": SCHEMA_VERSION,
            "model": self.model,
            "Q": self.q,
            "N": self.n,
            "depth": self.depth,
            "extractor": self.extractor,
            "raw_relations": [r.to_dict(raw) for r in self.raw_relations],
            "presentation": self.presentation.to_dict(),
            "generator_map": {raw.names[k - 1]: self.presentation.word(w)
                              for k, w in sorted(self.analysis.mapping.items())},
            "classification": self.classification.to_dict(),
            "verdicts": self.verdict.to_dict(),
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _report(model, q: UnitaryMatrix, depth, extractor, rels, coset_cap, notes=()):
    rels = sorted(rels, key=lambda r: relator_sort_key(r.word))
    raw = Presentation(q.n, tuple(r.word for r in rels))
    return TorusReport(model, str(q), q.n, depth, extractor, rels,
                       analyze(raw, coset_cap), list(notes))


# Kronecker symbols -------------------------------------------------------------------

def _leg_signs(p: ColoredPartition) -> list[int]:
    return [(1 if c == WHITE else -1) if p.is_upper(x) else (-1 if c == WHITE else 1)
            for x, c in enumerate(p.colors)]


def block_sum(Q: UnitaryMatrix, legs) -> Cyclo:
    """sum_s prod over (x, sign): Q[s,x] for sign +1, conj(Q[s,x]) for sign -1."""
    total = Cyclo.zero()
    for s in range(Q.n):
        term = Cyclo.one()
        for x, sign in legs:
            e = Q[s, x] if sign > 0 else Q[s, x].conj()
            if e.is_zero():
                term = None
                break
            term = term * e
        if term is not None:
            total = total + term
    return total


def kronecker_delta_Q(p: ColoredPartition, Q: UnitaryMatrix, i, j) -> Cyclo:
    """Product over the blocks of p of the one-block sums; 0-based indices."""
    if len(i) != p.upper or len(j) != p.lower:
        raise ExtractionError("multi-index arity does not match the diagram")
    idx = tuple(i) + tuple(j)
    if any(not 0 <= x < Q.n for x in idx):
        raise ExtractionError(f"indices must lie in 0..{Q.n - 1}")
    signs = _leg_signs(p)
    out = Cyclo.one()
    for b in p.blocks:
        v = block_sum(Q, [(idx[x], signs[x]) for x in b])
        if v.is_zero():
            return v
        out = out * v
    return out


def circle_order(p: ColoredPartition) -> list[int]:
    """Legs in boundary order: u1..uk, then dl..d1."""
    return list(range(p.upper)) + [p.upper + c for c in reversed(range(p.lower))]


def circle_key(p: ColoredPartition):
    """Invariant of p under rotation and reflection of its boundary circle.

    The relators a diagram produces depend only on this key (up to cyclic
    rotation and inversion, which canonical relators forget).
    """
    order = circle_order(p)
    signs = _leg_signs(p)
    block_of = {x: n for n, b in enumerate(p.blocks) for x in b}
    seq = [(block_of[x], signs[x]) for x in order]
    best = None
    for cand in (seq, [(b, -s) for b, s in reversed(seq)]):
        for r in range(len(cand) or 1):
            rot = cand[r:] + cand[:r]
            relabel: dict[int, int] = {}
            key = tuple((relabel.setdefault(b, len(relabel)), s) for b, s in rot)
            if best is None or key < best:
                best = key
    return best


class _BlockTable:
    """Nonzero index assignments for blocks with a given sign signature."""

    def __init__(self, Q: UnitaryMatrix):
        self.Q = Q
        self.sums: dict[tuple, bool] = {}
        self.assign: dict[tuple[int, ...], list[tuple[int, ...]]] = {}

    def nonzero(self, signature: tuple[int, ...]) -> list[tuple[int, ...]]:
        got = self.assign.get(signature)
        if got is None:
            got = []
            for xs in itertools.product(range(self.Q.n), repeat=len(signature)):
                key = tuple(sorted(zip(xs, signature)))
                nz = self.sums.get(key)
                if nz is None:
                    nz = not block_sum(self.Q, key).is_zero()
                    self.sums[key] = nz
                if nz:
                    got.append(xs)
            self.assign[signature] = got
        return got


def _relators_of(p: ColoredPartition, table: _BlockTable, index_cap: int):
    """Yield (canonical relator, i, j) for every nonvanishing index tuple of p."""
    signs = _leg_signs(p)
    blocks = p.blocks
    choices = [table.nonzero(tuple(signs[x] for x in b)) for b in blocks]
    count = 1
    for c in choices:
        count *= len(c)
    if count > index_cap:
        raise ResourceCapError(
            f"{format_partition(p)} has {count} nonvanishing index tuples (cap {index_cap})")
    order = circle_order(p)
    idx = [0] * p.size
    for combo in itertools.product(*choices):
        for b, xs in zip(blocks, combo):
            for leg, x in zip(b, xs):
                idx[leg] = x
        w = canonical_relator([(idx[x] + 1) * signs[x] for x in order])
        if w:
            yield w, tuple(idx[:p.upper]), tuple(idx[p.upper:])


def extract_easy(model: EasyModel, Q: UnitaryMatrix, config: ExtractionConfig | None = None
                 ) -> TorusReport:
    """Relations from every diagram of the saturated category up to ``config.depth`` legs."""
    config = config or ExtractionConfig()
    spec = model.spec
    if config.depth < spec.max_legs:
        raise ExtractionError(f"depth {config.depth} is below the generator size {spec.max_legs}")
    diagrams = saturate_category(spec, config.depth, config.saturation_cap)
    reps: dict = {}
    for p in sorted(diagrams):
        reps.setdefault(circle_key(p), p)
    table = _BlockTable(Q)
    found: dict[Word, RawRelation] = {}
    for p in reps.values():
        src = format_partition(p)
        for w, i, j in _relators_of(p, table, config.index_cap):
            if w not in found:
                found[w] = RawRelation(w, src, i, j)
    notes = [f"{len(diagrams)} diagrams in {len(reps)} boundary classes"]
    return _report(model.describe(), Q, config.depth, "kronecker", found.values(),
                   config.coset_cap, notes)


def _digits(v: int, n: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        v, r = divmod(v, n)
        out.append(r)
    return tuple(reversed(out))


def extract_intertwiners(model: IntertwinerModel, Q: UnitaryMatrix,
                         config: ExtractionConfig | None = None) -> TorusReport:
    """Relations from the nonvanishing entries of each conjugated map T^Q."""
    config = config or ExtractionConfig()
    N = Q.n
    found: dict[Word, RawRelation] = {}
    for n, (T, kc, lc) in enumerate(model.maps, 1):
        try:
            TQ = conjugate_intertwiner(T, kc, lc, Q)
        except MatrixError as exc:
            raise ExtractionError(f"intertwiner #{n}: {exc}") from exc
        for row, col in TQ.nonzero():
            i, j = _digits(col, N, len(kc)), _digits(row, N, len(lc))
            up = [(x + 1) * (1 if c == WHITE else -1) for x, c in zip(i, kc)]
            low = [(x + 1) * (1 if c == WHITE else -1) for x, c in zip(j, lc)]
            w = canonical_relator(up + [-x for x in reversed(low)])
            if w and w not in found:
                found[w] = RawRelation(w, f"T{n}", i, j)
    return _report(model.describe(), Q, None, "intertwiner", found.values(), config.coset_cap)


# closed forms ----------------------------------------------------------------------

CLOSED_FORM_KINDS = ("O_plus", "U_plus", "S_plus", "GroupDual")


def closed_form(kind: str, Q: UnitaryMatrix, gamma: Presentation | None = None,
                config: ExtractionConfig | None = None) -> TorusReport:
    """The relation families known in closed form, in the u = Q diag(g) Q* convention.

    With P = Q*: O_plus uses R = P P^t, S_plus the sums of products of P
    along rows, and the group dual identifies g_i, g_j sharing a nonzero
    row of P.
    """
    config = config or ExtractionConfig()
    if kind not in CLOSED_FORM_KINDS:
        raise ExtractionError(f"unknown closed form {kind!r}")
    if (kind == "GroupDual") != (gamma is not None):
        raise ExtractionError("gamma is required exactly for the group dual closed form")
    N = Q.n
    P = Q.m.adjoint()
    rels: dict[Word, RawRelation] = {}

    def emit(word, src, idx):
        w = canonical_relator(word)
        if w and w not in rels:
            rels[w] = RawRelation(w, src, tuple(idx), ())

    def row_product_sum(idx):
        total = Cyclo.zero()
        for l in range(N):
            t = Cyclo.one()
            for i in idx:
                t = t * P[i, l]
            total = total + t
        return total

    if kind == "O_plus":
        for i, j in itertools.product(range(N), repeat=2):
            if not row_product_sum((i, j)).is_zero():
                emit((i + 1, j + 1), "R=PP^t", (i, j))
    elif kind == "S_plus":
        for r in (1, 2, 3):
            for idx in itertools.product(range(N), repeat=r):
                if not row_product_sum(idx).is_zero():
                    emit(tuple(i + 1 for i in idx), f"row-sum/{r}", idx)
    elif kind == "GroupDual":
        if gamma.ngens != N:
            raise ExtractionError(f"gamma has {gamma.ngens} generators, Q is {N}x{N}")
        for r in gamma.relators:
            emit(r, "gamma", ())
        for i, j in itertools.combinations(range(N), 2):
            if any(not P[k, i].is_zero() and not P[k, j].is_zero() for k in range(N)):
                emit((i + 1, -(j + 1)), "shared-row", (i, j))
    model = kind if gamma is None else f"GroupDual{gamma}"
    return _report(model, Q, None, f"closed_form:{kind}", rels.values(), config.coset_cap)


def verify_provenance(rel: RawRelation, Q: UnitaryMatrix) -> bool:
    """Recompute the Kronecker symbol recorded for a diagram relation."""
    p = parse_partition(rel.source)
    if kronecker_delta_Q(p, Q, rel.upper, rel.lower).is_zero():
        return False
    signs = _leg_signs(p)
    idx = rel.upper + rel.lower
    return canonical_relator([(idx[x] + 1) * signs[x] for x in circle_order(p)]) == rel.word


# characters -----------------------------------------------------------------------

def _analysis_for(report: TorusReport, ambient: GroupAnalysis | None):
    if ambient is not None:
        if ambient.original.ngens < report.n:
            raise ExtractionError("ambient presentation has too few generators")
        return ambient
    return report.analysis


def character_image(report: TorusReport, Q: UnitaryMatrix, power: int = 1,
                    ambient: GroupAnalysis | None = None, max_power: int = 8
                    ) -> GroupAlgebraElement:
    """Image of sum_i u_ii^power, with u_ii = sum_s |Q[i,s]|^2 g_s.

    ``ambient`` replaces the extracted group by another presented group whose
    first generators play the role of g_1..g_N.  Without normal forms the
    result lives in the free group on g_1..g_N and ``reduced`` is False.
    """
    if not 1 <= power <= max_power:
        raise ExtractionError(f"power must lie in 1..{max_power}")
    if Q.n != report.n:
        raise ExtractionError("Q does not match the report")
    an = _analysis_for(report, ambient)
    if an.has_normal_forms:
        group, labels, reduced = an.group, an.simplified.names, True

        def gen(s):
            return an.image((s + 1,))
    else:
        group = FreeProductCyclicGroup((0,) * report.n)
        labels, reduced = report.raw_presentation.names, False

        def gen(s):
            return group.letter(s + 1)
    total = GroupAlgebraElement(group, {}, labels)
    for i in range(Q.n):
        terms: dict = {}
        for s in range(Q.n):
            c = Q[i, s] * Q[i, s].conj()
            if not c.is_zero():
                k = gen(s)
                terms[k] = terms.get(k, Cyclo.zero()) + c
        uii = GroupAlgebraElement(group, terms, labels)
        total = total + uii ** power
    total.reduced = reduced
    return total


def probe_conjectures(report: TorusReport, Q: UnitaryMatrix, max_degree: int = 2) -> dict:
    """Group-side evidence for the amenability, growth and character questions."""
    v = report.verdict
    out = {
        "classification": str(report.classification),
        "growth": v.growth,
        "amenability": v.amenability,
        "reason": v.reason,
        "evidence": report.classification.evidence,
        "characters": [],
    }
    for p in range(1, max_degree + 1):
        img = character_image(report, Q, p)
        out["characters"].append({
            "power": p,
            "image": str(img),
            "nonzero": bool(img.terms),
            "trace": format_cyclo(img.trace()),
            "reduced": img.reduced,
        })
    return out


def extract(model, Q: UnitaryMatrix, config: ExtractionConfig | None = None) -> TorusReport:
    """Dispatch on the model type (group duals use their closed form)."""
    if isinstance(model, EasyModel):
        return extract_easy(model, Q, config)
    if isinstance(model, IntertwinerModel):
        return extract_intertwiners(model, Q, config)
    if isinstance(model, GroupDualModel):
        return closed_form("GroupDual", Q, model.gamma, config)
    raise ExtractionError(f"unsupported model {model!r}")


def relators_text(report: TorusReport) -> list[str]:
    raw = report.raw_presentation
    return [format_word(r.word, raw.names) for r in report.raw_relations]


__all__ = [
    "BLACK", "WHITE", "EasyModel", "GroupDualModel", "IntertwinerModel", "ExtractionConfig",
    "TorusReport", "RawRelation", "named_model", "kronecker_delta_Q", "extract_easy",
    "extract_intertwiners", "closed_form", "character_image", "probe_conjectures", "extract",
    "circle_key", "verify_provenance", "ResourceCapError",
]

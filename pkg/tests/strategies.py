"""Shared hypothesis strategies and seeded samplers for the test suite."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from qtorus.cli import sampled_unitary
from qtorus.cyclo import Cyclo, totient
from qtorus.fpgroups.presentation import Presentation
from qtorus.matrices import parse_unitary
from qtorus.partitions import ColoredPartition

CONDUCTORS = (1, 2, 3, 4, 5, 6, 8, 12)


@st.composite
def cyclos(draw, n=None, bound: int = 6):
    n = draw(st.sampled_from(CONDUCTORS)) if n is None else n
    num = draw(st.lists(st.integers(-bound, bound), min_size=totient(n), max_size=totient(n)))
    den = draw(st.integers(1, 4))
    return Cyclo(n, num, den)


@st.composite
def partitions(draw, upper=None, lower=None, max_side: int = 3, colored: bool = False):
    k = draw(st.integers(0, max_side)) if upper is None else upper
    l = draw(st.integers(0, max_side)) if lower is None else lower
    labels = draw(st.lists(st.integers(0, k + l), min_size=k + l, max_size=k + l))
    blocks: dict[int, list[int]] = {}
    for leg, lab in enumerate(labels):
        blocks.setdefault(lab, []).append(leg)
    if colored:
        colors = "".join(draw(st.lists(st.sampled_from("wb"), min_size=k + l,
                                       max_size=k + l)))
    else:
        colors = "w" * (k + l)
    return ColoredPartition(k, l, tuple(tuple(b) for b in blocks.values()), colors)


@st.composite
def composable_pairs(draw, max_side: int = 3):
    """(p, q) with q applied first, uncolored."""
    m = draw(st.integers(0, max_side))
    q = draw(partitions(lower=m, max_side=max_side))
    p = draw(partitions(upper=m, max_side=max_side))
    return p, q


@st.composite
def composable_triples(draw, max_side: int = 2):
    """(p, q, r) with p o q o r defined: r first."""
    a, b = draw(st.integers(0, max_side)), draw(st.integers(0, max_side))
    r = draw(partitions(lower=a, max_side=max_side))
    q = draw(partitions(upper=a, lower=b, max_side=max_side))
    p = draw(partitions(upper=b, max_side=max_side))
    return p, q, r


@st.composite
def words(draw, ngens: int = 3, max_len: int = 10):
    letters = [g for k in range(1, ngens + 1) for g in (k, -k)]
    return tuple(draw(st.lists(st.sampled_from(letters), max_size=max_len)))


@st.composite
def presentations(draw, max_gens: int = 3, max_rels: int = 4, max_len: int = 6):
    n = draw(st.integers(1, max_gens))
    rels = draw(st.lists(words(n, max_len), max_size=max_rels))
    return Presentation(n, tuple(rels))


def sample_unitaries(count: int, seed: int, sizes=(2, 3, 4)):
    """Seeded structured unitaries: perm @ diag(roots of unity) @ Fourier blocks @ perm."""
    rng = random.Random(seed)
    return [parse_unitary(sampled_unitary(rng, sizes[k % len(sizes)])) for k in range(count)]


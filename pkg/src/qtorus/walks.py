"""Exact random-walk counts, Kesten lower bounds and ball growth on normal-form groups."""
from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .fpgroups.groups import NormalFormGroup

DEFAULT_STATE_CAP = 10**6
DEFAULT_PRECISION = Fraction(1, 10**4)


class WalkCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class WalkSpec:
    group: NormalFormGroup
    steps: tuple
    horizon: int
    description: str = "uniform on the symmetrized standard generators"

    def __post_init__(self):
        if self.horizon < 2:
            raise ValueError("horizon must be at least 2")
        if not self.steps:
            raise ValueError("empty step set")
        if Counter(self.steps) != Counter(self.group.inv(s) for s in self.steps):
            raise ValueError("step multiset is not closed under inversion")


def default_steps(group: NormalFormGroup) -> tuple:
    """s and s^-1 per generator; an involution contributes once."""
    out = []
    for g in range(1, group.ngens + 1):
        s = group.letter(g)
        if s == group.identity:
            continue
        out.append(s)
        if group.inv(s) != s:
            out.append(group.inv(s))
    return tuple(out)


def walk_spec(group, horizon: int, step_words=None) -> WalkSpec:
    if step_words is None:
        return WalkSpec(group, default_steps(group), horizon)
    steps = tuple(group.from_word(w) for w in step_words)
    return WalkSpec(group, steps, horizon, "uniform on the given steps")


def return_counts(spec: WalkSpec, state_cap: int = DEFAULT_STATE_CAP) -> list[int]:
    """r_0..r_H: numbers of step sequences of each length multiplying to the identity."""
    g = spec.group
    e = g.identity
    step_len = [g.length(s) for s in spec.steps]
    prune = all(x is not None for x in step_len) and g.length(e) is not None
    reach = max(step_len) if prune else None
    dist = {e: 1}
    counts = [1]
    for n in range(1, spec.horizon + 1):
        left = spec.horizon - n
        nxt: dict = {}
        for x, c in dist.items():
            for s in spec.steps:
                y = g.mul(x, s)
                if prune and g.length(y) > left * reach:
                    continue
                nxt[y] = nxt.get(y, 0) + c
        if len(nxt) > state_cap:
            raise WalkCapError(f"{len(nxt)} walk states at step {n} (cap {state_cap})")
        dist = nxt
        counts.append(dist.get(e, 0))
    return counts


def _floor_root_ratio(r: int, steps: int, k: int, denom: int) -> Fraction:
    """Largest m/denom with (m/denom)^k <= r / steps^k."""
    lo, hi = 0, denom * 2
    while (hi ** k) * (steps ** k) <= r * denom ** k:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if (mid ** k) * (steps ** k) <= r * denom ** k:
            lo = mid
        else:
            hi = mid
    return Fraction(lo, denom)


def _is_psd(m) -> bool:
    """Exact positive-semidefiniteness test by symmetric elimination."""
    a = [list(r) for r in m]
    n = len(a)
    for k in range(n):
        p = a[k][k]
        if p < 0:
            return False
        if p == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return True


def _is_pd(m) -> bool:
    a = [list(r) for r in m]
    n = len(a)
    for k in range(n):
        p = a[k][k]
        if p <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / p
            for j in range(k + 1, n):
                a[i][j] -= f * a[k][j]
    return True


def hankel_bound(counts, nsteps: int, denom: int) -> Fraction:
    """Largest m/denom certified below the spectral radius by the moment matrices.

    With s_k = r_{2k} / |S|^{2k} the moments of a measure on [0, rho^2],
    R*H0 - H1 is positive semidefinite for R = rho^2, where H0 = (s_{i+j}) and
    H1 = (s_{i+j+1}).  A failed test at R = L^2 proves rho > L.
    """
    K = (len(counts) - 1) // 2
    s = [Fraction(counts[2 * k], nsteps ** (2 * k)) for k in range(K + 1)]
    n = (K + 1) // 2
    while n > 1:
        if _is_pd([[s[i + j] for j in range(n)] for i in range(n)]):
            break
        n -= 1
    if n < 1 or s[0] == 0:
        return Fraction(0)
    h0 = [[s[i + j] for j in range(n)] for i in range(n)]
    h1 = [[s[i + j + 1] for j in range(n)] for i in range(n)]

    def below(m: int) -> bool:
        r = Fraction(m, denom) ** 2
        return not _is_psd([[r * x - y for x, y in zip(r0, r1)] for r0, r1 in zip(h0, h1)])

    lo, hi = 0, denom + 1
    if below(hi):
        hi = 2 * denom
        while below(hi):
            hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if below(mid):
            lo = mid
        else:
            hi = mid
    return Fraction(lo, denom)


@dataclass(frozen=True)
class SpectralEstimate:
    lower_bound: Fraction
    per_length: tuple[tuple[int, Fraction], ...]
    running: tuple[Fraction, ...]
    trend: str
    root_bound: Fraction
    ratio_bound: Fraction
    moment_bound: Fraction
    precision: Fraction = DEFAULT_PRECISION

    def to_dict(self) -> dict:
        return {
            "lower_bound": str(self.lower_bound),
            "lower_bound_float": float(self.lower_bound),
            "root_bound": str(self.root_bound),
            "ratio_bound": str(self.ratio_bound),
            "moment_bound": str(self.moment_bound),
            "per_length": [[n, str(b)] for n, b in self.per_length],
            "trend": self.trend,
            "precision": str(self.precision),
        }


def spectral_radius_estimate(counts, nsteps: int,
                             precision: Fraction = DEFAULT_PRECISION) -> SpectralEstimate:
    """Certified lower bounds on the spectral radius, rounded down to ``precision``.

    Three bounds, all valid for symmetric walks: the root bound
    max_n r_{2n}^{1/2n} / |S|, the ratio bound sqrt(r_{2n} / r_{2n-2}) / |S|
    (moments of a measure on [-rho, rho] are log-convex), and the moment-matrix
    bound of :func:`hankel_bound`.  ``lower_bound`` is their maximum.
    """
    if len(counts) < 3:
        raise ValueError("need counts up to at least n = 2")
    precision = Fraction(precision)
    if precision.numerator != 1:
        raise ValueError("precision must be 1/D")
    denom = precision.denominator
    per = []
    for n in range(2, len(counts), 2):
        if counts[n] > 0:
            per.append((n, _floor_root_ratio(counts[n], nsteps, n, denom)))
    running, best = [], Fraction(0)
    for _, b in per:
        best = max(best, b)
        running.append(best)
    root = best
    ratio = Fraction(0)
    for n in range(2, len(counts), 2):
        if counts[n - 2] > 0 and counts[n] > 0:
            q = Fraction(counts[n], counts[n - 2] * nsteps ** 2)
            m = _floor_sqrt_fraction(q, denom)
            ratio = max(ratio, m)
    moment = hankel_bound(counts, nsteps, denom)
    vals = [b for _, b in per]
    if all(x <= y for x, y in zip(vals, vals[1:])):
        trend = "nondecreasing"
    elif all(x >= y for x, y in zip(vals, vals[1:])):
        trend = "nonincreasing"
    else:
        trend = "mixed"
    return SpectralEstimate(max(root, ratio, moment), tuple(per), tuple(running), trend,
                            root, ratio, moment, precision)


def _floor_sqrt_fraction(q: Fraction, denom: int) -> Fraction:
    """Largest m/denom with (m/denom)^2 <= q."""
    m = math.isqrt(q.numerator * denom * denom // q.denominator)
    while Fraction(m + 1, denom) ** 2 <= q:
        m += 1
    while m > 0 and Fraction(m, denom) ** 2 > q:
        m -= 1
    return Fraction(m, denom)


def ball_sizes(group: NormalFormGroup, steps, radius: int,
               state_cap: int = DEFAULT_STATE_CAP) -> list[int]:
    """|B_0|..|B_radius| by breadth-first search."""
    seen = {group.identity}
    frontier = [group.identity]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for s in steps:
                y = group.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > state_cap:
            raise WalkCapError(f"ball exceeded {state_cap} elements")
        frontier = nxt
        sizes.append(len(seen))
    return sizes


@dataclass(frozen=True)
class GrowthFit:
    label: str
    diagnostics: dict = field(default_factory=dict)


def growth_fit(sizes, window: int = 5, delta: float = 0.05, spread: float = 0.5) -> GrowthFit:
    """Label a ball-size series finite, exponential, polynomial or inconclusive."""
    if len(sizes) < window + 2:
        return GrowthFit("inconclusive", {"reason": "series too short"})
    tail = sizes[-(window + 1):]
    if len(set(sizes[-3:])) == 1:
        return GrowthFit("finite", {"order": sizes[-1]})
    ratios = [b / a for a, b in zip(tail, tail[1:])]
    spheres = [b - a for a, b in zip(sizes, sizes[1:])][-(window + 1):]
    sratios = [b / a for a, b in zip(spheres, spheres[1:]) if a > 0]
    diag = {"ball_ratios": ratios, "sphere_ratios": sratios}
    if min(ratios) > 1 + delta and sratios and min(sratios) > 1 + delta:
        return GrowthFit("exponential", diag)
    n0 = len(sizes) - window - 1
    exps = [math.log(sizes[n] / sizes[n - 1]) / math.log(n / (n - 1))
            for n in range(max(n0, 2), len(sizes))]
    diag["local_exponents"] = exps
    if exps and max(exps) - min(exps) <= spread:
        diag["degree_estimate"] = exps[-1]
        return GrowthFit("polynomial", diag)
    return GrowthFit("inconclusive", diag)


def series_csv(counts, estimate: SpectralEstimate | None = None) -> str:
    bounds = dict(estimate.per_length) if estimate else {}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r_n", "bound"])
    for n, r in enumerate(counts):
        b = bounds.get(n)
        w.writerow([n, r, f"{float(b):.6f}" if b is not None else ""])
    return buf.getvalue()


def series_json(counts, estimate: SpectralEstimate | None = None, balls=None,
                meta: dict | None = None) -> str:
    d = {"return_counts": list(counts)}
    if estimate is not None:
        d["spectral"] = estimate.to_dict()
    if balls is not None:
        d["ball_sizes"] = list(balls)
    if meta:
        d["meta"] = meta
    return json.dumps(d, sort_keys=True, indent=2)

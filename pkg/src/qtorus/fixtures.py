"""Reference fixtures: known torus groups and character images, checked end to end."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

from .fpgroups.algebra import GroupAlgebraElement
from .fpgroups.presentation import parse_presentation
from .fpgroups.recognize import Classification, analyze, free_product_of_cyclics
from .matrices import block_fourier, fourier_matrix, identity_unitary, parse_unitary
from .torus import ExtractionConfig, character_image, closed_form, extract_easy, named_model

PASS, FAIL, FLAGGED = "PASS", "FAIL", "FLAGGED"

GAMMA1_EXPECTED = {
    "o+": lambda n: free_product_of_cyclics([2] * n),
    "u+": lambda n: Classification("Free", (n,)),
    "s+": lambda n: Classification("Trivial"),
    "h+": lambda n: free_product_of_cyclics([2] * n),
}


@dataclass(frozen=True)
class FixtureResult:
    name: str
    status: str
    detail: str
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def compositions(n: int):
    """All ordered compositions of n into positive parts."""
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, cur = [], 1
        for c in cuts:
            if c:
                parts.append(cur)
                cur = 1
            else:
                cur += 1
        parts.append(cur)
        yield tuple(parts)


def _timed(name, fn):
    t = time.perf_counter()
    try:
        status, detail = fn()
    except Exception as exc:  # a crashing fixture is a failure, not an abort
        status, detail = FAIL, f"{type(exc).__name__}: {exc}"
    return FixtureResult(name, status, detail, time.perf_counter() - t)


def _expect(got, want) -> tuple[str, str]:
    return (PASS if got == want else FAIL), f"got {got}, expected {want}"


def gamma1_fixture(model: str, n: int, depth: int = 6):
    def run():
        r = extract_easy(named_model(model), identity_unitary(n), ExtractionConfig(depth=depth))
        return _expect(r.classification, GAMMA1_EXPECTED[model](n))
    return _timed(f"gamma1 {model} N={n}", run)


def fourier_block_fixture(parts):
    def run():
        r = closed_form("S_plus", block_fourier(parts))
        return _expect(r.classification, free_product_of_cyclics(parts))
    return _timed(f"fourier blocks {','.join(map(str, parts))}", run)


def _dinf_elements(an, pairs):
    return GroupAlgebraElement.from_words(an.group, pairs, an.simplified.names)


def s4_fixtures(depth: int = 6):
    Q = block_fourier((2, 2))
    out = []
    holder = {}

    def torus():
        r = extract_easy(named_model("s+"), Q, ExtractionConfig(depth=depth))
        holder["r"] = r
        return _expect(r.classification, free_product_of_cyclics([2, 2]))

    out.append(_timed("S4+ diag(F2,F2) torus is Z2*Z2", torus))

    def rho():
        r = holder["r"]
        got = character_image(r, Q, 1)
        a, b = (r.presentation.parse(x) for x in r.presentation.names)
        want = GroupAlgebraElement.from_words(r.analysis.group, [(2, ()), (1, a), (1, b)],
                                              r.presentation.names)
        return (PASS if got == want else FAIL), f"rho = {got}"

    def trace():
        r = holder["r"]
        x = character_image(r, Q, 1)
        t = (x * x).trace()
        return (PASS if t == 6 else FAIL), f"tau(rho^2) = {t}"

    out.append(_timed("S4+ rho = 2 + g + h", rho))
    out.append(_timed("S4+ tau(rho^2) = 6", trace))
    return out


def h2_fixtures(depth: int = 6):
    Q = fourier_matrix(2)
    holder = {}
    dinf = analyze(parse_presentation("<g,h | g^2, h^2>"))
    out = []

    def torus():
        r = extract_easy(named_model("h+"), Q, ExtractionConfig(depth=depth))
        holder["r"] = r
        want = free_product_of_cyclics([2, 2])
        if r.classification == want:
            return PASS, f"got {r.classification}"
        return FLAGGED, (f"extracted {r.classification} with {r.presentation}; the reference "
                         f"value is D_inf = {want}, but the four-leg block forces gh = hg")

    def rho():
        r = holder["r"]
        got = character_image(r, Q, 1, ambient=dinf)
        want = _dinf_elements(dinf, [(1, (1,)), (1, (2,))])
        own = character_image(r, Q, 1)
        return (PASS if got == want else FAIL), f"rho = {got} (in the extracted group: {own})"

    def rho2():
        r = holder["r"]
        got = character_image(r, Q, 2, ambient=dinf)
        ref = _dinf_elements(dinf, [(1, ()), (1, (1, 2))])
        own = character_image(r, Q, 2)
        half = _dinf_elements(dinf, [(1, ()), (Fraction(1, 2), (1, 2)), (Fraction(1, 2), (2, 1))])
        if got == ref:
            return PASS, f"rho' = {got}"
        status = FLAGGED if got == half else FAIL
        return status, (f"computed rho' = {got} in D_inf, reference value 1 + g*h; "
                        f"in the extracted group rho' = {own}")

    out.append(_timed("H2+ F2 torus is D_inf", torus))
    out.append(_timed("H2+ rho = g + h", rho))
    out.append(_timed("H2+ rho' = 1 + g*h", rho2))
    return out


def s5_fixture(depth: int = 6):
    def run():
        r = extract_easy(named_model("s+"), block_fourier((2, 3)), ExtractionConfig(depth=depth))
        ok = r.classification == free_product_of_cyclics([2, 3]) and \
            r.verdict.amenability == "non_amenable"
        return (PASS if ok else FAIL), f"got {r.classification}, {r.verdict.amenability}"
    return _timed("S5+ diag(F2,F3) is Z2*Z3, non_amenable", run)


def uplus_fixture():
    def run():
        r = extract_easy(named_model("u+"), parse_unitary("fourier:3"))
        return _expect(r.classification, Classification("Free", (3,)))
    return _timed("U3+ fourier:3 is F_3", run)


def run_fixtures(depth: int = 6, max_n: int = 5, max_fourier: int = 6) -> list[FixtureResult]:
    results = []
    for model in ("o+", "u+", "s+", "h+"):
        for n in range(2, max_n + 1):
            results.append(gamma1_fixture(model, n, depth))
    for n in range(1, max_fourier + 1):
        for parts in compositions(n):
            results.append(fourier_block_fixture(parts))
    results.extend(s4_fixtures(depth))
    results.extend(h2_fixtures(depth))
    results.append(s5_fixture(depth))
    results.append(uplus_fixture())
    return results


def format_table(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'fixture':<{width}}  status   detail"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.status:<7}  {r.detail}")
    counts = {s: sum(r.status == s for r in results) for s in (PASS, FAIL, FLAGGED)}
    lines.append(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[FLAGGED]} flagged")
    return "\n".join(lines)

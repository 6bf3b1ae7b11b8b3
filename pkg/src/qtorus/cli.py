"""Command line front end: extract, analyze, verify-paper, probe, walk."""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from pathlib import Path

from .cyclo import format_cyclo, zeta
from .fixtures import FAIL, compositions, format_table, run_fixtures
from .fpgroups.presentation import PresentationSyntaxError, parse_presentation
from .fpgroups.recognize import analyze, verdicts
from .fpgroups.words import WordSyntaxError
from .matrices import (MatrixError, ResourceCapError, UnitaryMatrix, block_fourier,
                       parse_matrix, parse_unitary)
from .partitions import (CategorySpec, PartitionError, SaturationCapError, builtin_category,
                         parse_partition)
from .torus import (SCHEMA_VERSION, EasyModel, ExtractionConfig, ExtractionError,
                    GroupDualModel, IntertwinerModel, closed_form, extract, named_model)
from .walks import (WalkCapError, ball_sizes, growth_fit, return_counts, series_csv,
                    series_json, spectral_radius_estimate, walk_spec)

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_FIXTURE = 0, 2, 3, 4

INPUT_ERRORS = (ExtractionError, MatrixError, PartitionError, PresentationSyntaxError,
                WordSyntaxError, ValueError, OSError, KeyError)
CAP_ERRORS = (ResourceCapError, SaturationCapError, WalkCapError)

CLOSED_KINDS = {"O_plus": "O_plus", "U_plus": "U_plus", "S_plus": "S_plus"}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class JobConfig:
    model: str = "s+"
    N: int | None = None
    Q: str | None = None
    depth: int = 6
    index_cap: int = 10**6
    coset_cap: int = 20_000
    saturation_cap: int = 200_000
    walk_state_cap: int = 10**6
    horizon: int = 16
    format: str = "json"
    seed: int = 0
    extractor: str = "kronecker"

    def __post_init__(self):
        if self.depth < 2:
            raise InputError("depth must be at least 2")
        caps = (self.index_cap, self.coset_cap, self.saturation_cap, self.walk_state_cap,
                self.horizon)
        if min(caps) < 1:
            raise InputError("caps and horizon must be positive")
        if self.N is not None and self.N < 1:
            raise InputError("N must be positive")
        if self.format not in ("json", "text", "gap"):
            raise InputError(f"unknown format {self.format!r}")
        if self.extractor not in ("kronecker", "closed"):
            raise InputError(f"unknown extractor {self.extractor!r}")

    def extraction(self) -> ExtractionConfig:
        return ExtractionConfig(self.depth, self.index_cap, self.coset_cap, self.saturation_cap)

    def unitary(self) -> UnitaryMatrix:
        if self.Q is None:
            if self.N is None:
                raise InputError("give --Q or --N")
            return parse_unitary(f"id:{self.N}")
        q = parse_unitary(self.Q)
        if self.N is not None and q.n != self.N:
            raise InputError(f"Q is {q.n}x{q.n} but N = {self.N}")
        return q

    def to_dict(self) -> dict:
        return asdict(self)


_INT_KEYS = {f.name for f in fields(JobConfig)} - {"model", "Q", "format", "extractor"}


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; blank lines and ``#`` comments are skipped."""
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in {f.name for f in fields(JobConfig)}:
            raise InputError(f"{path}:{n}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def _coerce(key, value):
    if key in _INT_KEYS:
        try:
            return int(float(value)) if "e" in str(value).lower() else int(value)
        except ValueError as exc:
            raise InputError(f"{key} must be an integer, got {value!r}") from exc
    return value


def job_config(args) -> JobConfig:
    values = read_config_file(args.config) if getattr(args, "config", None) else {}
    for f in fields(JobConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = _coerce(f.name, v)
    return JobConfig(**values)


# models ---------------------------------------------------------------------------

def _read_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _easy_from_json(path: str) -> EasyModel:
    d = _read_json(path)
    gens = tuple(parse_partition(g) for g in d["generators"])
    name = d.get("name", Path(path).stem)
    return EasyModel(CategorySpec(name, gens, bool(d.get("colored", False))), f"easy:{name}")


def _intertwiners_from_json(path: str) -> IntertwinerModel:
    """``{"maps": [{"k": "ww", "l": "", "matrix": "1,0,0,1"}]}``; matrix rows split by ``;``."""
    d = _read_json(path)
    maps = []
    for m in d["maps"]:
        T = parse_matrix(m["matrix"])
        maps.append((T, m.get("k", ""), m.get("l", "")))
    return IntertwinerModel(tuple(maps), d.get("name", f"intertwiners:{Path(path).stem}"))


def parse_model(text: str):
    """Model spec: a named model, ``easy:``, ``dual:`` or ``intertwiners:``."""
    if text.startswith("easy:"):
        arg = text[5:]
        if arg.endswith(".json"):
            return _easy_from_json(arg)
        return EasyModel(builtin_category(arg), text)
    if text.startswith("dual:"):
        arg = text[5:]
        if Path(arg).is_file():
            arg = Path(arg).read_text().strip()
        return GroupDualModel(parse_presentation(arg))
    if text.startswith("intertwiners:"):
        return _intertwiners_from_json(text[len("intertwiners:"):])
    return named_model(text)


def run_extract(cfg: JobConfig):
    model = parse_model(cfg.model)
    q = cfg.unitary()
    if isinstance(model, GroupDualModel) and model.gamma.ngens != q.n:
        raise InputError(f"dual group has {model.gamma.ngens} generators but Q is {q.n}x{q.n}")
    if cfg.extractor == "closed":
        if isinstance(model, GroupDualModel):
            return extract(model, q, cfg.extraction())
        kind = CLOSED_KINDS.get(getattr(model, "label", ""))
        if kind is None:
            raise InputError(f"no closed form for model {cfg.model!r}")
        return closed_form(kind, q, config=cfg.extraction())
    return extract(model, q, cfg.extraction())


# output ------------------------------------------------------------------------------

def _dump(d: dict) -> str:
    text = json.dumps(d, sort_keys=True, indent=2, ensure_ascii=False)
    # the schema contract: parsing and re-emitting is the identity
    assert json.dumps(json.loads(text), sort_keys=True, indent=2, ensure_ascii=False) == text
    return text


def report_text(report) -> str:
    lines = [
        f"model:          {report.model}",
        f"Q:              {report.q}",
        f"N:              {report.n}",
        f"depth:          {report.depth}",
        f"extractor:      {report.extractor}",
        f"raw relations:  {len(report.raw_relations)}",
        f"presentation:   {report.presentation}",
        f"classification: {report.classification}",
        f"growth:         {report.verdict.growth}",
        f"amenability:    {report.verdict.amenability}",
    ]
    lines += [f"note:           {n}" for n in report.notes]
    return "\n".join(lines)


def emit_report(report, cfg: JobConfig, out) -> None:
    if cfg.format == "gap":
        print(report.presentation.to_gap(), file=out)
    elif cfg.format == "text":
        print(report_text(report), file=out)
    else:
        d = report.to_dict()
        d["config"] = cfg.to_dict()
        d["status"] = "ok"
        print(_dump(d), file=out)


def _cap_report(cfg, exc, out) -> int:
    d = {"schema_version": SCHEMA_VERSION, "status": "resource_cap", "partial": True,
         "error": str(exc), "config": cfg.to_dict()}
    print(_dump(d), file=out)
    return EXIT_CAP


# commands ------------------------------------------------------------------------------

def cmd_extract(args, out) -> int:
    cfg = job_config(args)
    try:
        report = run_extract(cfg)
    except CAP_ERRORS as exc:
        return _cap_report(cfg, exc, out)
    emit_report(report, cfg, out)
    return EXIT_OK


def analysis_dict(an) -> dict:
    v = verdicts(an.classification)
    return {
        "schema_version": SCHEMA_VERSION,
        "input": an.original.to_dict(),
        "simplified": an.simplified.to_dict(),
        "generator_map": {an.original.names[k - 1]: an.simplified.word(w)
                          for k, w in sorted(an.mapping.items())},
        "abelianization": list(an.abelianization),
        "classification": an.classification.to_dict(),
        "verdicts": v.to_dict(),
    }


def cmd_analyze(args, out) -> int:
    an = analyze(parse_presentation(args.presentation), args.coset_cap)
    if args.format == "json":
        print(_dump(analysis_dict(an)), file=out)
    elif args.format == "gap":
        print(an.simplified.to_gap(), file=out)
    else:
        v = verdicts(an.classification)
        print(f"input:          {an.original}", file=out)
        print(f"simplified:     {an.simplified}", file=out)
        print(f"abelianization: {an.abelianization}", file=out)
        print(f"classification: {an.classification}", file=out)
        print(f"growth:         {v.growth}", file=out)
        print(f"amenability:    {v.amenability}", file=out)
    return EXIT_OK


def cmd_verify_paper(args, out) -> int:
    results = run_fixtures(depth=args.depth)
    if args.format == "json":
        print(_dump({"schema_version": SCHEMA_VERSION,
                     "fixtures": [r.to_dict() for r in results]}), file=out)
    else:
        print(format_table(results), file=out)
    return EXIT_FIXTURE if any(r.status == FAIL for r in results) else EXIT_OK


# sweeps

def _random_composition(rng: random.Random, n: int) -> tuple[int, ...]:
    parts, left = [], n
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    return tuple(parts)


def sampled_unitary(rng: random.Random, n: int, max_order: int = 4) -> str:
    """perm @ diag(roots of unity) @ Fourier blocks @ perm, as a Q spec string."""
    left = list(range(1, n + 1))
    right = list(range(1, n + 1))
    rng.shuffle(left)
    rng.shuffle(right)
    phases = []
    for _ in range(n):
        m = rng.randint(1, max_order)
        phases.append(format_cyclo(zeta(m) ** rng.randrange(m)))
    blocks = _random_composition(rng, n)
    return (f"perm:[{','.join(map(str, left))}] @ diag:{','.join(phases)} @ "
            f"fourier:{','.join(map(str, blocks))} @ perm:[{','.join(map(str, right))}]")


def probe_family(family: str, n: int, seed: int) -> list[str]:
    if family == "compositions":
        return [str(block_fourier(p)) for p in compositions(n)]
    if family.startswith("sampled:"):
        try:
            count = int(family[len("sampled:"):])
        except ValueError as exc:
            raise InputError(f"bad sample count in {family!r}") from exc
        rng = random.Random(seed)
        return sorted({sampled_unitary(rng, n) for _ in range(count)})
    raise InputError(f"unknown family {family!r}")


def _probe_job(cfg: JobConfig) -> dict:
    try:
        r = run_extract(cfg)
    except CAP_ERRORS as exc:
        return {"Q": cfg.Q, "status": "resource_cap", "error": str(exc)}
    return {"Q": cfg.Q, "status": "ok", "classification": str(r.classification),
            "presentation": str(r.presentation), "growth": r.verdict.growth,
            "amenability": r.verdict.amenability}


def cmd_probe(args, out) -> int:
    base = job_config(args)
    if base.N is None:
        raise InputError("probe needs --N")
    jobs = [replace(base, Q=q) for q in probe_family(args.family, base.N, base.seed)]
    for j in jobs:
        j.unitary()  # parse errors surface before any work starts
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_probe_job, jobs))
    else:
        rows = [_probe_job(j) for j in jobs]
    rows.sort(key=lambda r: r["Q"])
    ok = [r for r in rows if r["status"] == "ok"]
    total = len(rows)

    def fractions(key):
        counts: dict[str, int] = {}
        for r in ok:
            counts[r[key]] = counts.get(r[key], 0) + 1
        return {k: str(Fraction(v, total)) for k, v in sorted(counts.items())}

    summary = {"count": total, "capped": total - len(ok),
               "classification": fractions("classification"),
               "amenability": fractions("amenability"), "growth": fractions("growth")}
    if base.format == "json":
        print(_dump({"schema_version": SCHEMA_VERSION, "model": base.model, "N": base.N,
                     "family": args.family, "seed": base.seed, "extractor": base.extractor,
                     "results": rows, "summary": summary}), file=out)
    else:
        width = max((len(r["Q"]) for r in rows), default=1)
        for r in rows:
            print(f"{r['Q']:<{width}}  {r.get('classification', r['status'])}  "
                  f"{r.get('amenability', '')}", file=out)
        for key in ("classification", "amenability"):
            for k, v in summary[key].items():
                print(f"{key} {k}: {v}", file=out)
    return EXIT_CAP if summary["capped"] else EXIT_OK


def cmd_walk(args, out) -> int:
    an = analyze(parse_presentation(args.group), args.coset_cap)
    if not an.has_normal_forms:
        raise InputError(f"{an.classification} has no normal forms to walk on")
    spec = walk_spec(an.group, args.horizon)
    try:
        counts = return_counts(spec, args.walk_state_cap)
        balls = ball_sizes(an.group, spec.steps, args.radius, args.walk_state_cap)
    except WalkCapError as exc:
        print(_dump({"schema_version": SCHEMA_VERSION, "status": "resource_cap",
                     "partial": True, "error": str(exc)}), file=out)
        return EXIT_CAP
    est = spectral_radius_estimate(counts, len(spec.steps))
    if args.format == "csv":
        print(series_csv(counts, est), end="", file=out)
        return EXIT_OK
    fit = growth_fit(balls)
    meta = {"schema_version": SCHEMA_VERSION, "group": str(an.original),
            "classification": str(an.classification), "steps": len(spec.steps),
            "step_distribution": spec.description, "horizon": args.horizon,
            "radius": args.radius, "growth_fit": fit.label}
    print(series_json(counts, est, balls, meta), file=out)
    return EXIT_OK


# parser ------------------------------------------------------------------------------

def _job_flags(p: argparse.ArgumentParser) -> None:
    # defaults live in JobConfig so that a config file can fill the gaps
    p.add_argument("--config", help="flat key = value file mirroring the flags")
    p.add_argument("--model", help="o+, u+, s+, h+, easy:NAME|FILE.json, dual:PRES|FILE, "
                                  "intertwiners:FILE.json")
    p.add_argument("--N", type=int)
    p.add_argument("--Q", help="e.g. fourier:2,2 or perm:[2,1] @ diag:1,-1 @ id:2")
    p.add_argument("--depth", type=int)
    p.add_argument("--format", choices=("json", "text", "gap"))
    p.add_argument("--seed", type=int)
    p.add_argument("--extractor", choices=("kronecker", "closed"))
    p.add_argument("--index-cap", dest="index_cap", type=int)
    p.add_argument("--coset-cap", dest="coset_cap", type=int)
    p.add_argument("--saturation-cap", dest="saturation_cap", type=int)
    p.add_argument("--walk-state-cap", dest="walk_state_cap", type=int)
    p.add_argument("--horizon", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtorus", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="torus presentation for a model and Q")
    _job_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("analyze", help="simplify and recognize a presentation")
    p.add_argument("presentation", help='e.g. "<a,b | a^2, b^3>"')
    p.add_argument("--format", choices=("json", "text", "gap"), default="json")
    p.add_argument("--coset-cap", dest="coset_cap", type=int, default=20_000)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-paper", help="run the reference fixture suite")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("probe", help="sweep a family of exact unitaries")
    _job_flags(p)
    p.add_argument("--family", default="compositions",
                   help="compositions or sampled:COUNT")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("walk", help="return counts, Kesten bounds and ball growth")
    p.add_argument("--group", required=True, help='e.g. "<a,b | a^2, b^3>"')
    p.add_argument("--horizon", type=int, default=16)
    p.add_argument("--radius", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--walk-state-cap", dest="walk_state_cap", type=int, default=10**6)
    p.add_argument("--coset-cap", dest="coset_cap", type=int, default=20_000)
    p.set_defaults(func=cmd_walk)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"qtorus: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

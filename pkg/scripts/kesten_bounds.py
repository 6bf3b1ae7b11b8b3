"""Kesten lower bounds per horizon for a few reference groups."""
import argparse

from qtorus.fpgroups.presentation import parse_presentation
from qtorus.fpgroups.recognize import analyze
from qtorus.walks import return_counts, spectral_radius_estimate, walk_spec

GROUPS = {
    "Free(2)": "<a,b | >",
    "Z2*Z3": "<a,b | a^2, b^3>",
    "D_inf": "<a,b | a^2, b^2>",
    "Z^2": "<a,b | a b a^-1 b^-1>",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--horizons", default="8,12,16,20")
    args = ap.parse_args()
    horizons = [int(h) for h in args.horizons.split(",")]
    print(f"{'group':<8} " + " ".join(f"H={h:<8}" for h in horizons))
    for name, pres in GROUPS.items():
        group = analyze(parse_presentation(pres)).group
        cells = []
        for h in horizons:
            spec = walk_spec(group, h)
            est = spectral_radius_estimate(return_counts(spec), len(spec.steps))
            cells.append(f"{float(est.lower_bound):<10.4f}")
        print(f"{name:<8} " + " ".join(cells))


if __name__ == "__main__":
    main()

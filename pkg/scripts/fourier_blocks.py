"""Tori of S_N+ at block-diagonal Fourier matrices, one row per composition of N."""
import argparse

from qtorus.fixtures import compositions
from qtorus.matrices import block_fourier
from qtorus.torus import ExtractionConfig, closed_form, extract_easy, named_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--generic", action="store_true",
                    help="also run the partition-based extractor (slow for N > 4)")
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        for parts in compositions(n):
            q = block_fourier(parts)
            r = closed_form("S_plus", q)
            row = f"{str(q):<22} {str(r.classification):<32} {r.verdict.amenability}"
            if args.generic:
                g = extract_easy(named_model("s+"), q, ExtractionConfig())
                row += f"  generic: {g.classification}"
            print(row)


if __name__ == "__main__":
    main()

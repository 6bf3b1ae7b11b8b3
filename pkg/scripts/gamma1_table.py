"""Print the identity-Q torus for each named model and N = 2..5."""
import argparse
import time

from qtorus.matrices import identity_unitary
from qtorus.torus import ExtractionConfig, extract_easy, named_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()
    cfg = ExtractionConfig(depth=args.depth)
    print(f"{'model':<6} {'N':>2}  {'seconds':>7}  torus")
    for model in ("o+", "u+", "s+", "h+"):
        for n in range(2, args.max_n + 1):
            t = time.perf_counter()
            r = extract_easy(named_model(model), identity_unitary(n), cfg)
            print(f"{model:<6} {n:>2}  {time.perf_counter() - t:7.2f}  {r.classification}")


if __name__ == "__main__":
    main()

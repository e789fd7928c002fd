"""Time the compiled and interpreted dpda kernels on the same words.

    python3 benchmarks/bench_backends.py --lengths 16,32,64,128 --trials 3
"""

import argparse
import json

from vword.bench import compare_backends
from vword.group import bundled_higman


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lengths", default="16,32,64,128")
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--family", choices=("wp", "random"), default="wp")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    lengths = [int(x) for x in args.lengths.split(",")]
    rows = compare_backends(bundled_higman(), lengths, args.trials, args.seed, args.family)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'n':>6}  {'jit s':>10}  {'numpy s':>10}  speedup")
    for r in rows:
        print(f"{r['n']:>6}  {r['jit']:>10.5f}  {r['numpy']:>10.5f}  {r['speedup']:.0f}x")


if __name__ == "__main__":
    main()

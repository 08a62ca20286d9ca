"""How often does the log-bin F test flag Yule-Simon vs uniform profiles?

Estimates the per-profile rate of reaching each significance level and the
chance that at least 8 of 10 independent profiles agree.
"""
import argparse
import math

from yule_impact.impact import Significance, log_pipeline, ols_fit, truncate_top_h
from yule_impact.simulate import SimonProcessConfig, make_rng, run_simon


def classify(counts):
    x, y, _ = log_pipeline(truncate_top_h(list(counts)))
    return ols_fit(x, y).significance


def at_least(k, n, p):
    return sum(math.comb(n, j) * p**j * (1 - p) ** (n - j) for j in range(k, n + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=500)
    ap.add_argument("--uniform-size", type=int, default=40)
    ap.add_argument("--alpha", type=float, default=0.15)
    ap.add_argument("--epochs", type=int, default=50_000)
    ap.add_argument("--skip-yule", action="store_true")
    args = ap.parse_args()

    uniform = [classify(make_rng(s).integers(1, 101, size=args.uniform_size)) for s in range(args.seeds)]
    p_none = sum(s is Significance.NONE for s in uniform) / args.seeds
    print(f"uniform[1,100] x{args.uniform_size}: non-significant rate {p_none:.4f}; "
          f"P(>=8/10) = {at_least(8, 10, p_none):.3f}")

    if not args.skip_yule:
        yule = [classify(run_simon(SimonProcessConfig(args.alpha, args.epochs, seed=s)).sizes) for s in range(args.seeds)]
        p_one = sum(s is Significance.ONE_PERCENT for s in yule) / args.seeds
        print(f"Yule-Simon alpha={args.alpha}: 1% rate {p_one:.4f}; P(>=8/10) = {at_least(8, 10, p_one):.3f}")


if __name__ == "__main__":
    main()

"""Stream-arrival genus simulation: distance to the limit line per snapshot."""
import argparse

from yule_impact.simulate import limit_deviation, simulate_genera


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--genera", type=int, default=1000)
    ap.add_argument("--rho", type=float, default=0.5)
    ap.add_argument("--snapshots", type=float, nargs="+", default=[1.0, 3.0, 6.28])
    args = ap.parse_args()

    print("seed\t" + "\t".join(f"dev_t{t:g}" for t in args.snapshots) + "\tmonospecific_final")
    for seed in range(args.seeds):
        hists = simulate_genera("stream", args.genera, max(args.snapshots), args.snapshots, seed=seed, rho=args.rho)
        shared = [s for s in hists[0].counts if all(s in h.counts for h in hists)]
        devs = [limit_deviation(h, args.rho, shared) for h in hists]
        print(f"{seed}\t" + "\t".join(f"{d:.3f}" for d in devs) + f"\t{hists[-1].monospecific_count}")


if __name__ == "__main__":
    main()

"""Rebuild F, p and significance for the ten laureate rows from their R^2."""
from yule_impact.impact import f_significance
from yule_impact.laureates import LAUREATES, STATED_SIGNIFICANCE, f_from_r_squared


def main():
    print("name\tR2\tF_stated\tF_rebuilt\tp\tlevel\tstated\trange_check")
    for r in LAUREATES:
        f = f_from_r_squared(r.r_squared)
        p, level = f_significance(f, 1, 23)
        span = r.max_inlinks - r.min_inlinks + 1
        check = "ok" if span == r.total_range else f"{span} != {r.total_range}"
        print(f"{r.name}\t{r.r_squared}\t{r.f_stat}\t{f:.2f}\t{p:.3g}\t{level.value}\t"
              f"{STATED_SIGNIFICANCE[r.name]}\t{check}")


if __name__ == "__main__":
    main()

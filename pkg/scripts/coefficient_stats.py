"""Distribution of the scalars 2^a d^b appearing in multiplication tables."""
import argparse
from collections import Counter
from dataclasses import dataclass

from tlgsb import build_table
from tlgsb.structure import power_of_two_delta


@dataclass
class Config:
    cases: tuple = (("A", 5), ("B", 3), ("B", 4), ("D", 4))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cases", nargs="*", help="family:rank, e.g. B:4")
    args = ap.parse_args()
    cfg = Config(tuple((c.split(":")[0], int(c.split(":")[1])) for c in args.cases) or Config.cases)
    for fam, n in cfg.cases:
        table = build_table(fam, n)
        shapes = Counter(power_of_two_delta(table.entry(i, j).coeff) for i, j in table.entries)
        print(f"{fam}{n}: {len(table.basis)} basis words, closed={table.closed}")
        for (a, b), k in sorted(shapes.items()):
            print(f"    2^{a} d^{b}: {k}")


if __name__ == "__main__":
    main()

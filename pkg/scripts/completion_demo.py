"""Complete the defining relations and compare with the published rule lists.

For each family and rank, report how many standard words the published list
leaves, which completed rules it fails to imply, and whether the supplemented
basis closes the gap.
"""
import argparse
from dataclasses import dataclass

from tlgsb import build_candidate_gsb, build_defining, complete, count_standard, dimension_formula
from tlgsb.presentations import compact_notation
from tlgsb.rewrite import reduce


@dataclass
class Config:
    families: str = "BD"
    max_rank: int = 5


def missing_rules(family, n):
    printed = build_candidate_gsb(family, n, printed_only=True)
    full = complete(build_defining(family, n).rule_set()).rules
    return printed, [r for r in full if not reduce(r.polynomial, printed).is_zero()]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", default=Config.families)
    ap.add_argument("--max-rank", type=int, default=Config.max_rank)
    cfg = Config(**vars(ap.parse_args()))
    for fam in cfg.families:
        for n in range({"A": 2, "B": 2, "D": 4}[fam], cfg.max_rank + 1):
            printed, missing = missing_rules(fam, n)
            fixed = build_candidate_gsb(fam, n)
            print(f"{fam}{n}: published list -> {count_standard(printed).total} words, "
                  f"supplemented -> {count_standard(fixed).total}, dimension {dimension_formula(fam, n)}")
            for r in missing:
                rhs = r.replacement.to_string(printed.names, "d", printed.order,
                                              word_fmt=lambda w: compact_notation(fam, n, w))
                print(f"    not implied: {compact_notation(fam, n, r.lead)} = {rhs}")


if __name__ == "__main__":
    main()

"""Standard-word counts against the closed-form dimensions, with timings."""
import argparse
import time
from dataclasses import dataclass

from tlgsb import build_candidate_gsb, count_standard, dimension_formula, is_closed


@dataclass
class Config:
    max_a: int = 10
    max_b: int = 9
    max_d: int = 9
    check_closure_up_to: int = 6


def rows(cfg: Config):
    for fam, lo, hi in (("A", 2, cfg.max_a), ("B", 2, cfg.max_b), ("D", 4, cfg.max_d)):
        for n in range(lo, hi + 1):
            t0 = time.perf_counter()
            S = build_candidate_gsb(fam, n)
            total = count_standard(S).total
            t_count = time.perf_counter() - t0
            closed = "-"
            if n <= cfg.check_closure_up_to:
                closed = "yes" if is_closed(S).closed else "NO"
            yield fam, n, len(S), total, dimension_formula(fam, n), closed, t_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for f in ("max_a", "max_b", "max_d", "check_closure_up_to"):
        ap.add_argument("--" + f.replace("_", "-"), type=int, default=getattr(Config, f))
    cfg = Config(**vars(ap.parse_args()))
    print("| type | n | rules | count | formula | closed | seconds |")
    print("|---|---|---|---|---|---|---|")
    for fam, n, r, c, f, closed, dt in rows(cfg):
        flag = "" if c == f else " MISMATCH"
        print(f"| {fam} | {n} | {r} | {c} | {f}{flag} | {closed} | {dt:.3f} |")


if __name__ == "__main__":
    main()

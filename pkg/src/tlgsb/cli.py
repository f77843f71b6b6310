"""Command-line interface.

Exit codes: 0 success, 2 verification mismatch, 3 resource limit hit, 4 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .freealg import Polynomial, Word, word_to_string
from .presentations import (
    FAMILIES,
    PresentationError,
    build_candidate_gsb,
    build_defining,
    compact_notation,
    expand_word_notation,
    parse_presentation,
)
from .rewrite import CompletionLimits, RuleSet, complete, is_closed, normal_form
from .standard import InfiniteBasisError, count_standard, enumerate_standard
from .structure import BudgetExceededError, NonStandardWordError, build_table, multiply_standard

EXIT_OK, EXIT_MISMATCH, EXIT_LIMIT, EXIT_INPUT = 0, 2, 3, 4
MAX_WITNESSES = 20


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class CommandConfig:
    command: str
    family: Optional[str]
    n: Optional[int]
    presentation: Optional[str]
    basis: str
    out: Optional[str]
    fmt: str
    max_rules: Optional[int]
    max_degree: Optional[int]
    contains: Optional[str]
    word: Optional[str]
    left: Optional[str]
    right: Optional[str]
    notation: str
    budget: int

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "CommandConfig":
        if (ns.family is None) == (ns.presentation is None):
            raise InputError("give exactly one of --family or --presentation")
        if ns.family is not None and ns.n is None:
            raise InputError("--family needs --n")
        if ns.notation == "compact" and ns.family is None:
            raise InputError("--notation compact needs --family")
        return cls(ns.command, ns.family, ns.n, ns.presentation, ns.basis, ns.out, ns.format,
                   ns.max_rules, ns.max_degree, ns.contains, ns.word, ns.left, ns.right,
                   ns.notation, ns.budget)


class Context:
    """Resolved input: the presentation and the rule set the command runs on."""

    def __init__(self, cfg: CommandConfig):
        self.cfg = cfg
        if cfg.family is not None:
            self.spec = build_defining(cfg.family, cfg.n)
            self.family, self.n = cfg.family, cfg.n
        else:
            try:
                with open(cfg.presentation, encoding="utf-8") as fh:
                    self.spec = parse_presentation(fh.read())
            except OSError as exc:
                raise InputError(str(exc)) from exc
            self.family = self.spec.family if self.spec.known_family else None
            self.n = self.spec.n
        self.names = self.spec.names

    def rules(self, default: str = "gsb") -> RuleSet:
        basis = self.cfg.basis or default
        if self.cfg.family is not None:
            if basis == "gsb":
                return build_candidate_gsb(self.family, self.n)
            if basis == "printed":
                return build_candidate_gsb(self.family, self.n, printed_only=True)
        if basis in ("gsb", "defining", "printed"):
            return self.spec.rule_set()
        # completed
        res = complete(self.spec.rule_set(), self.limits())
        if not res.completed:
            raise LimitHit(res.reason, res.pending)
        return res.rules

    def limits(self) -> CompletionLimits:
        return CompletionLimits(self.cfg.max_rules, self.cfg.max_degree)

    def parse_word(self, text: str) -> Word:
        if self.cfg.notation == "compact":
            return expand_word_notation(self.family, self.n, text)
        index = {nm: k for k, nm in enumerate(self.names)}
        word = []
        for tok in text.replace("*", " ").split():
            if tok == "1":
                continue
            if tok not in index:
                raise InputError(f"unknown generator {tok!r}")
            word.append(index[tok])
        return tuple(word)

    def show_word(self, w: Sequence[int]) -> str:
        if self.cfg.notation == "compact":
            return compact_notation(self.family, self.n, w)
        return word_to_string(w, self.names)

    def show_poly(self, p: Polynomial, rules: RuleSet) -> str:
        fmt = self.show_word if self.cfg.notation == "compact" else None
        return p.to_string(self.names, self.spec.param, rules.order, word_fmt=fmt)

    def base_report(self) -> dict:
        return {"command": self.cfg.command, "family": self.family, "n": self.n,
                "verdicts": {}, "witnesses": [], "counts": {}}


class LimitHit(Exception):
    def __init__(self, reason: str, pending: int):
        super().__init__(reason)
        self.pending = pending


def _terms_json(p: Polynomial, rules: RuleSet, param: str) -> List[dict]:
    return [{"coef": c.to_string(param), "word": list(w)} for w, c in p.sorted_terms(rules.order)]


# ---------------------------------------------------------------------------
# Subcommands.  Each returns (exit code, report dict, text lines, csv rows).
# ---------------------------------------------------------------------------


def cmd_verify(ctx: Context):
    rules = ctx.rules()
    rep = ctx.base_report()
    closure = is_closed(rules, max_witnesses=MAX_WITNESSES)
    count = count_standard(rules, ctx.family, ctx.n)
    rep["verdicts"] = {"closed": closure.closed, "count_matches_formula": count.match}
    rep["witnesses"] = closure.witness_dicts(rules)
    rep["counts"] = {"standard_count": count.total, "formula": count.formula,
                     "compositions": closure.checked, "rules": len(rules)}
    ok = closure.closed and count.match is not False
    lines = [f"rules: {len(rules)}", f"compositions checked: {closure.checked}",
             f"closed: {str(closure.closed).lower()}",
             f"standard count: {count.total if count.finite else 'infinite'}"]
    if count.formula is not None:
        lines.append(f"formula: {count.formula}  match: {str(count.match).lower()}")
    for wd in rep["witnesses"]:
        lines.append(f"witness {wd['kind']} ({wd['left']},{wd['right']}) at "
                     f"{ctx.show_word(wd['word'])}: {wd['normal_form']}")
    lines.append("verified" if ok else "NOT verified")
    return (EXIT_OK if ok else EXIT_MISMATCH), rep, lines, None


def cmd_complete(ctx: Context):
    start = ctx.rules(default="defining") if ctx.cfg.basis != "completed" else ctx.spec.rule_set()
    res = complete(start, ctx.limits())
    rules = res.rules
    rep = ctx.base_report()
    rep.update({
        "status": res.status,
        "new_rules": res.new_rules,
        "pending": res.pending,
        "reason": res.reason,
        "rules": [{"lead": list(r.lead),
                   "replacement": _terms_json(r.replacement, rules, ctx.spec.param),
                   "origin": r.origin} for r in rules],
    })
    rep["verdicts"] = {"completed": res.completed}
    if res.completed:
        count = count_standard(rules, ctx.family, ctx.n)
        rep["counts"] = {"rules": len(rules), "standard_count": count.total, "formula": count.formula}
    lines = [f"{ctx.show_word(r.lead)} = {ctx.show_poly(r.replacement, rules)}" for r in rules]
    if not res.completed:
        lines.append(f"# limit hit: {res.reason}; {res.pending} compositions pending")
    rows = [["lead", "replacement", "origin"]] + [
        [word_to_string(r.lead, ctx.names), r.replacement.to_string(ctx.names, ctx.spec.param, rules.order),
         r.origin] for r in rules]
    return (EXIT_OK if res.completed else EXIT_LIMIT), rep, lines, rows


def cmd_count(ctx: Context):
    rules = ctx.rules()
    count = count_standard(rules, ctx.family, ctx.n, max_degree=ctx.cfg.max_degree or 12)
    rep = ctx.base_report()
    rep.update(count.as_dict())
    rep["counts"] = {"standard_count": count.total, "formula": count.formula, "per_degree": count.per_degree}
    rep["verdicts"] = {"finite": count.finite, "match": count.match}
    lines = [f"standard count: {count.total if count.finite else 'infinite'}",
             f"per degree: {' '.join(map(str, count.per_degree))}"]
    if count.formula is not None:
        lines.append(f"formula: {count.formula}  match: {str(count.match).lower()}")
    code = EXIT_MISMATCH if count.match is False else EXIT_OK
    return code, rep, lines, [["degree", "count"]] + [[k, c] for k, c in enumerate(count.per_degree)]


def cmd_list(ctx: Context):
    rules = ctx.rules()
    try:
        words = enumerate_standard(rules, cap=ctx.cfg.max_degree)
    except InfiniteBasisError as exc:
        raise InputError(f"{exc}; pass --max-degree") from exc
    if ctx.cfg.contains:
        g = ctx.parse_word(ctx.cfg.contains)
        if len(g) != 1:
            raise InputError("--contains takes one generator")
        words = [w for w in words if g[0] in w]
    rep = ctx.base_report()
    rep["words"] = [list(w) for w in words]
    rep["counts"] = {"listed": len(words)}
    lines = [ctx.show_word(w) for w in words]
    rows = [["index", "word"]] + [[k, word_to_string(w, ctx.names)] for k, w in enumerate(words)]
    return EXIT_OK, rep, lines, rows


def cmd_nf(ctx: Context):
    if ctx.cfg.word is None:
        raise InputError("nf needs --word")
    rules = ctx.rules()
    w = ctx.parse_word(ctx.cfg.word)
    nf, trace = normal_form(Polynomial.monomial(w), rules)
    rep = ctx.base_report()
    rep.update({"input": list(w), "normal_form": _terms_json(nf, rules, ctx.spec.param),
                "steps": len(trace.steps), "text": ctx.show_poly(nf, rules)})
    return EXIT_OK, rep, [ctx.show_poly(nf, rules)], None


def cmd_mult(ctx: Context):
    if ctx.cfg.left is None or ctx.cfg.right is None:
        raise InputError("mult needs --left and --right")
    rules = ctx.rules()
    u, v = ctx.parse_word(ctx.cfg.left), ctx.parse_word(ctx.cfg.right)
    try:
        p = multiply_standard(u, v, rules)
    except NonStandardWordError as exc:
        raise InputError(str(exc)) from exc
    rep = ctx.base_report()
    rep.update({"left": list(u), "right": list(v), "product": _terms_json(p, rules, ctx.spec.param),
                "text": ctx.show_poly(p, rules)})
    rep["verdicts"] = {"single_term": len(p) == 1}
    return EXIT_OK, rep, [ctx.show_poly(p, rules)], None


def cmd_table(ctx: Context):
    rules = ctx.rules()
    try:
        table = build_table(rules=rules, budget=ctx.cfg.budget)
    except BudgetExceededError as exc:
        raise LimitHit(str(exc), 0) from exc
    except InfiniteBasisError as exc:
        raise InputError(str(exc)) from exc
    rep = ctx.base_report()
    rep.update(table.to_json_dict())
    rep["verdicts"] = {"product_closure": table.closed}
    rep["witnesses"] = table.violations
    rep["counts"] = {"basis": len(table.basis), "entries": len(table.entries),
                     "violations": len(table.violations)}
    lines = []
    for (i, j), p in sorted(table.entries.items()):
        lines.append(f"({ctx.show_word(table.basis[i])}) * ({ctx.show_word(table.basis[j])}) = "
                     f"{ctx.show_poly(p, rules)}")
    lines.append(f"# {len(table.basis)} basis words, {len(table.violations)} violations")
    csv_text = table.to_csv()
    rows = list(csv.reader(io.StringIO(csv_text)))
    return (EXIT_OK if table.closed else EXIT_MISMATCH), rep, lines, rows


COMMANDS = {
    "verify": cmd_verify,
    "complete": cmd_complete,
    "count": cmd_count,
    "list": cmd_list,
    "nf": cmd_nf,
    "mult": cmd_mult,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--n", type=int)
    common.add_argument("--presentation", metavar="PATH")
    common.add_argument("--basis", choices=("gsb", "printed", "defining", "completed"), default=None,
                        help="rule set for a family: the Groebner-Shirshov basis (default), the rule "
                             "list exactly as published, the defining relations, or their completion")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--max-rules", type=int)
    common.add_argument("--max-degree", type=int)
    common.add_argument("--contains")
    common.add_argument("--word")
    common.add_argument("--left")
    common.add_argument("--right")
    common.add_argument("--notation", choices=("names", "compact"), default="names")
    common.add_argument("--budget", type=int, default=250_000, help="max products for table")

    parser = _Parser(prog="tlgsb", description="Groebner-Shirshov bases of Temperley-Lieb algebras "
                                               "of types A, B and D.", epilog=__doc__.splitlines()[2])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _emit(cfg: CommandConfig, rep: dict, lines: List[str], rows) -> None:
    if cfg.fmt == "json":
        text = json.dumps(rep, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows is None:
            w.writerow(["line"])
            rows = [[ln] for ln in lines]
        w.writerows(rows)
        text = buf.getvalue()
    else:
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        cfg = CommandConfig.from_args(ns)
        ctx = Context(cfg)
        code, rep, lines, rows = COMMANDS[cfg.command](ctx)
    except LimitHit as exc:
        rep = {"command": ns.command, "error": str(exc), "pending": exc.pending}
        cfg = CommandConfig.from_args(ns)
        _emit(cfg, rep, [f"limit hit: {exc}; {exc.pending} pending"], None)
        return EXIT_LIMIT
    except (InputError, PresentationError, ValueError) as exc:
        print(f"tlgsb: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(cfg, rep, lines, rows)
    return code


if __name__ == "__main__":
    sys.exit(main())

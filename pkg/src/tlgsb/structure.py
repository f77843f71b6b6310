"""Products of standard monomials and multiplication tables."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .freealg import ParamScalar, Polynomial, Word, word_to_string
from .presentations import build_candidate_gsb
from .rewrite import RuleSet, reduce
from .standard import enumerate_standard


class NonStandardWordError(ValueError):
    pass


class BudgetExceededError(ValueError):
    pass


@dataclass(frozen=True)
class ScalarMonomial:
    coeff: ParamScalar
    word: Word


def multiply_standard(u: Sequence[int], v: Sequence[int], rules: RuleSet) -> Polynomial:
    """Normal form of the product uv of two standard words."""
    u, v = tuple(u), tuple(v)
    for w in (u, v):
        rules.order.check(w)
        if rules.is_reducible(w):
            raise NonStandardWordError(f"{word_to_string(w, rules.names)} is not standard")
    return reduce(Polynomial.monomial(u + v), rules)


def as_scalar_monomial(p: Polynomial) -> Optional[ScalarMonomial]:
    if len(p) != 1:
        return None
    (w, c), = p.terms.items()
    return ScalarMonomial(c, w)


def power_of_two_delta(c: ParamScalar) -> Optional[Tuple[int, int]]:
    """(a, b) with c == 2^a * d^b, or None."""
    shape = c.monomial_shape()
    if shape is None:
        return None
    k, b = shape
    if k <= 0 or k & (k - 1):
        return None
    return k.bit_length() - 1, b


@dataclass
class StructureTable:
    basis: List[Word]
    entries: Dict[Tuple[int, int], Polynomial]
    rules: RuleSet
    violations: List[dict] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return not self.violations

    def entry(self, i: int, j: int) -> Optional[ScalarMonomial]:
        return as_scalar_monomial(self.entries[(i, j)])

    def to_json_dict(self) -> dict:
        param = self.rules.param
        rows = []
        for (i, j), p in sorted(self.entries.items()):
            sm = as_scalar_monomial(p)
            if sm is None:
                rows.append({"row": i, "col": j, "coef": None, "word": None,
                             "value": p.to_string(self.rules.names, param, self.rules.order)})
            else:
                rows.append({"row": i, "col": j, "coef": sm.coeff.to_string(param), "word": list(sm.word)})
        return {"basis": [list(w) for w in self.basis], "entries": rows}

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["row", "col", "coef", "word"])
        for row in self.to_json_dict()["entries"]:
            word = "" if row["word"] is None else " ".join(map(str, row["word"]))
            out.writerow([row["row"], row["col"], row["coef"] if row["coef"] is not None else row["value"], word])
        return buf.getvalue()


def build_table(family: Optional[str] = None, n: Optional[int] = None, rules: Optional[RuleSet] = None,
                budget: int = 250_000) -> StructureTable:
    """Multiply every ordered pair of standard words and check each product is c*w
    with c = 2^a d^b and w standard."""
    if rules is None:
        if family is None or n is None:
            raise ValueError("need a family and rank or an explicit rule set")
        rules = build_candidate_gsb(family, n)
    basis = enumerate_standard(rules)
    if len(basis) ** 2 > budget:
        raise BudgetExceededError(f"{len(basis)}^2 products exceed the budget of {budget}")
    index = {w: k for k, w in enumerate(basis)}
    table = StructureTable(basis, {}, rules)
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            p = reduce(Polynomial.monomial(u + v), rules)
            table.entries[(i, j)] = p
            sm = as_scalar_monomial(p)
            reason = None
            if sm is None:
                reason = "zero product" if p.is_zero() else f"{len(p)} terms"
            elif sm.word not in index:
                reason = "word not in basis"
            elif power_of_two_delta(sm.coeff) is None:
                reason = "coefficient not of the form 2^a d^b"
            if reason:
                table.violations.append({
                    "row": i, "col": j, "reason": reason,
                    "value": p.to_string(rules.names, rules.param, rules.order),
                })
    return table

"""Temperley-Lieb presentations of types A, B, D and a plain-text presentation format.

Generator ids are positions in the alphabet.  Types B and D use
``e0 .. e{n-1}`` so id ``i`` is ``E_i``; type A uses ``e1 .. e{n-1}`` so
``E_i`` has id ``i - 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .freealg import ONE, DELTA, MonomialOrder, ParamScalar, Polynomial, Word, leading_term
from .rewrite import DEFINING, LEMMA, RewriteRule, RuleSet

FAMILIES = ("A", "B", "D")
MIN_RANK = {"A": 2, "B": 2, "D": 4}


class PresentationError(ValueError):
    pass


class RankError(PresentationError):
    pass


class NotationError(PresentationError):
    pass


class ParseError(PresentationError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, column {col}: {msg}" if line else msg)
        self.line = line
        self.col = col


class UnknownGeneratorError(ParseError):
    pass


class ZeroRelationError(ParseError):
    pass


def check_rank(family: str, n: int) -> None:
    if family not in MIN_RANK:
        raise RankError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n < MIN_RANK[family]:
        raise RankError(f"type {family} needs n >= {MIN_RANK[family]}, got {n}")


@dataclass(frozen=True)
class WordBuilder:
    """Letter runs E_{i,j} (descending), E^{i,j} (ascending) and E'_{i,j}."""

    family: str
    n: int

    def __post_init__(self):
        check_rank(self.family, self.n)

    @property
    def lowest(self) -> int:
        return 1 if self.family == "A" else 0

    def gen(self, i: int) -> int:
        if not self.lowest <= i <= self.n - 1:
            raise NotationError(f"E_{i} is not a generator of type {self.family}_{self.n}")
        return i - 1 if self.family == "A" else i

    def desc(self, i: int, j: int) -> Word:
        """E_{i,j} = E_i E_{i-1} ... E_j, with E_{j-1,j} = 1."""
        if self.family == "D" and j == 0:
            if i == 1:
                return (self.gen(0),)
            if i < 1:
                raise NotationError(f"E_{{{i},0}} undefined in type D")
            return tuple(self.gen(k) for k in range(i, 1, -1)) + (self.gen(0),)
        if j < self.lowest or i < j - 1:
            raise NotationError(f"E_{{{i},{j}}} undefined in type {self.family}")
        return tuple(self.gen(k) for k in range(i, j - 1, -1))

    def asc(self, i: int, j: int) -> Word:
        """E^{i,j} = E_i E_{i+1} ... E_j, with E^{j+1,j} = 1."""
        low = 1 if self.family == "D" else self.lowest
        if i < low or j < i - 1:
            raise NotationError(f"E^{{{i},{j}}} undefined in type {self.family}")
        return tuple(self.gen(k) for k in range(i, j + 1))

    def prime(self, i: int, j: int) -> Word:
        """E'_{i,j} = E_{i,0} E^{1,j}; types B and D only."""
        if self.family == "A":
            raise NotationError("primed runs E' exist only in types B and D")
        return self.desc(i, 0) + self.asc(1, j)

    def names(self) -> Tuple[str, ...]:
        return tuple(f"e{i}" for i in range(self.lowest, self.n))


_TOKEN = re.compile(r"^E(')?(\^)?_?(?:\{(\d+)(?:,(\d+))?\}|(\d+))$")


def expand_word_notation(family: str, n: int, text: str) -> Word:
    """Expand compact notation such as ``"E{3,1} E'{2,1} E^{1,2} e0"`` into a word."""
    wb = WordBuilder(family, n)
    word: List[int] = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = re.fullmatch(r"e(\d+)", tok)
        if m:
            word.append(wb.gen(int(m.group(1))))
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise NotationError(f"cannot read token {tok!r}")
        primed, up, i, j, single = m.groups()
        i = int(i if i is not None else single)
        if primed and up:
            raise NotationError(f"token {tok!r} mixes prime and ascending forms")
        if primed:
            word.extend(wb.prime(i, i if j is None else int(j)))
        elif up:
            word.extend(wb.asc(i, i if j is None else int(j)))
        elif j is None:
            word.append(wb.gen(i))
        else:
            word.extend(wb.desc(i, int(j)))
    return tuple(word)


def compact_notation(family: str, n: int, word: Sequence[int]) -> str:
    """Greedy split of a word into maximal descending runs, printed as E{i,j}."""
    wb = WordBuilder(family, n)
    idx = [x + 1 if family == "A" else x for x in word]

    def step(x: int) -> Optional[int]:
        if family == "D":
            if x == 2:
                return 0
            return x - 1 if x > 2 else None
        return x - 1 if x - 1 >= wb.lowest else None

    runs, k = [], 0
    while k < len(idx):
        start = k
        while k + 1 < len(idx) and step(idx[k]) == idx[k + 1]:
            k += 1
        i, j = idx[start], idx[k]
        runs.append(f"E{{{i}}}" if start == k else f"E{{{i},{j}}}")
        k += 1
    return " ".join(runs) if runs else "1"


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PresentationSpec:
    names: Tuple[str, ...]
    relations: Tuple[Polynomial, ...]
    param: str = "d"
    family: str = "generic"
    n: Optional[int] = None

    def __post_init__(self):
        for k, r in enumerate(self.relations):
            if r.is_zero():
                raise ZeroRelationError(f"relation {k} is zero")

    @property
    def order(self) -> MonomialOrder:
        return MonomialOrder.deglex(len(self.names))

    def rule_set(self, origin: str = DEFINING) -> RuleSet:
        return RuleSet.from_polynomials(self.relations, self.order, origin,
                                        names=self.names, param=self.param)

    @property
    def known_family(self) -> bool:
        return self.family in FAMILIES and self.n is not None


def _w(*parts: Word) -> Polynomial:
    return Polynomial.monomial(tuple(x for p in parts for x in p))


def _defining(family: str, n: int) -> List[Tuple[Polynomial, str]]:
    wb = WordBuilder(family, n)
    E = lambda i: (wb.gen(i),)  # noqa: E731
    lo, hi = wb.lowest, n - 1
    rels: List[Tuple[Polynomial, str]] = []
    for i in range(lo, hi + 1):
        rels.append((_w(E(i), E(i)) - _w(E(i)).scale(DELTA), "idempotent"))
    if family in ("A", "B"):
        for i in range(lo, hi + 1):
            for j in range(lo, i - 1):
                rels.append((_w(E(i), E(j)) - _w(E(j), E(i)), "commute"))
    else:
        for i in range(3, hi + 1):
            for j in range(1, i - 1):
                rels.append((_w(E(i), E(j)) - _w(E(j), E(i)), "commute"))
        for i in range(1, hi + 1):
            if i != 2:
                rels.append((_w(E(i), E(0)) - _w(E(0), E(i)), "commute-0"))
    for i in range(max(lo, 1), hi + 1):
        for j in (i - 1, i + 1):
            if max(lo, 1) <= j <= hi:
                rels.append((_w(E(i), E(j), E(i)) - _w(E(i)), "braid"))
    if family == "B":
        for i, j in ((0, 1), (1, 0)):
            rels.append((_w(E(i), E(j), E(i), E(j)) - _w(E(i), E(j)).scale(2), "quartic"))
    if family == "D":
        for i, j in ((0, 2), (2, 0)):
            rels.append((_w(E(i), E(j), E(i)) - _w(E(i)), "braid-0"))
    return rels


def build_defining(family: str, n: int) -> PresentationSpec:
    check_rank(family, n)
    rels = tuple(p for p, _ in _defining(family, n))
    return PresentationSpec(WordBuilder(family, n).names(), rels, "d", family, n)


def _candidate(family: str, n: int, supplement: bool) -> List[Tuple[Polynomial, str, str]]:
    wb = WordBuilder(family, n)
    E = lambda i: (wb.gen(i),)  # noqa: E731
    D, U = wb.desc, wb.asc
    lo, hi = wb.lowest, n - 1
    out: List[Tuple[Polynomial, str, str]] = []
    add = lambda p, origin, label: out.append((p, origin, label))  # noqa: E731

    for i in range(lo, hi + 1):
        add(_w(E(i), E(i)) - _w(E(i)).scale(DELTA), DEFINING, "idempotent")
    if family in ("A", "B"):
        for i in range(lo, hi + 1):
            for j in range(lo, i - 1):
                add(_w(E(i), E(j)) - _w(E(j), E(i)), DEFINING, "commute")
    else:
        for i in range(3, hi + 1):
            for j in range(1, i - 1):
                add(_w(E(i), E(j)) - _w(E(j), E(i)), DEFINING, "commute")
        for i in range(1, hi + 1):
            if i != 2:
                add(_w(E(i), E(0)) - _w(E(0), E(i)), DEFINING, "commute-0")
        for i, j in ((0, 2), (2, 0)):
            add(_w(E(i), E(j), E(i)) - _w(E(i)), DEFINING, "braid-0")
    # E_{i,j}E_i - E_{i-2,j}E_i and E_jE_{i,j} - E_jE_{i,j+2}, i > j >= 1
    for i in range(2, hi + 1):
        for j in range(1, i):
            add(_w(D(i, j), E(i)) - _w(D(i - 2, j), E(i)), LEMMA, "right-collapse")
    for i in range(2, hi + 1):
        for j in range(1, i):
            add(_w(E(j), D(i, j)) - _w(E(j), D(i, j + 2)), LEMMA, "left-collapse")
    if family == "B":
        for i, j in ((0, 1), (1, 0)):
            add(_w(E(i), E(j), E(i), E(j)) - _w(E(i), E(j)).scale(2), DEFINING, "quartic")
        # E_{i,0}E^{1,j}E_i - E_{i-2,0}E^{1,j}E_i, i > j+1 >= 1
        for i in range(2, hi + 1):
            for j in range(0, i - 1):
                add(_w(D(i, 0), U(1, j), E(i)) - _w(D(i - 2, 0), U(1, j), E(i)), LEMMA, "lemma-b")
        if supplement:
            # E_0E_{i,0}E_1 = E_{i,2}(E_0E_1E_0E_1) = 2E_0E_{i,1}
            for i in range(2, hi + 1):
                add(_w(E(0), D(i, 0), E(1)) - _w(E(0), D(i, 1)).scale(2), LEMMA, "supplement-b")
    if family == "D":
        for i in range(3, hi + 1):
            add(_w(D(i, 0), E(i)) - _w(D(i - 2, 0), E(i)), LEMMA, "lemma-d-a")
        for i in range(2, hi + 1):
            add(_w(E(0), D(i, 0)) - _w(E(0), D(i, 3)), LEMMA, "lemma-d-b")
        for i in range(2, hi + 1):
            add(_w(E(0), E(1), D(i, 0)) - _w(E(0), E(1), D(i, 3)), LEMMA, "lemma-d-c")
        # i > j+1 > 1
        for i in range(3, hi + 1):
            for j in range(1, i - 1):
                add(_w(D(i, 0), U(1, j), E(i)) - _w(D(i - 2, 0), U(1, j), E(i)), LEMMA, "lemma-d-d")
        if supplement:
            # E_1E_{i,0}E_1 = E_{i,3}(E_1E_2E_0E_1) = E_{i,3}E_0E_1 = E_0E_1E_{i,3}
            for i in range(2, hi + 1):
                add(_w(E(1), D(i, 0), E(1)) - _w(E(0), E(1), D(i, 3)), LEMMA, "supplement-d")
    return out


def build_candidate_gsb(family: str, n: int, printed_only: bool = False) -> RuleSet:
    """Groebner-Shirshov basis of T(A_{n-1}), T(B_n) or T(D_n).

    The published rule lists for B and D are not closed under composition:
    each misses one family (``supplement-b``: E_0E_{i,0}E_1 = 2E_0E_{i,1};
    ``supplement-d``: E_1E_{i,0}E_1 = E_0E_1E_{i,3}, both for 2 <= i <= n-1).
    They are added unless ``printed_only`` is set.

    Leads are recomputed from the order.  A relation printed twice (in type D
    the i = 2 case of E_0E_{i,0} = E_0E_{i,3} is E_0E_2E_0 = E_0) is kept once.
    """
    check_rank(family, n)
    order = MonomialOrder.deglex(len(WordBuilder(family, n).names()))
    rules: List[RewriteRule] = []
    seen = set()
    for p, origin, label in _candidate(family, n, not printed_only):
        r = RewriteRule.from_polynomial(p, order, origin, label)
        key = (r.lead, r.replacement)
        if key in seen:
            continue
        seen.add(key)
        rules.append(r)
    return RuleSet(tuple(rules), order, WordBuilder(family, n).names(), "d")


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_LEX = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()+\-*^]))")


class _ExprParser:
    """Recursive descent over ``sum := ['-'] term (('+'|'-') term)*``."""

    def __init__(self, text: str, line: int, col0: int, gens: Dict[str, int], param: str):
        self.toks: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _LEX.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line,
                                 col0 + len(text[:pos]) + (len(text[pos:]) - len(text[pos:].lstrip())) + 1)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0
        self.line = line
        self.end_col = col0 + len(text) + 1
        self.gens = gens
        self.param = param

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", self.end_col)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2])

    def parse_sum(self) -> Polynomial:
        total = Polynomial.zero()
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            total = total + self.parse_term().scale(sign)
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                sign = -1 if t[1] == "-" else 1
                continue
            if t[0] == "eof":
                return total
            raise self.error(f"unexpected {t[1]!r}")

    def parse_term(self) -> Polynomial:
        coeff = ONE
        word: List[int] = []
        seen = False
        while True:
            kind, val, col = self.peek()
            if kind == "num":
                self.take()
                coeff = coeff * int(val)
            elif kind == "name" and val == self.param:
                self.take()
                coeff = coeff * ParamScalar.param(self._power())
            elif kind == "name":
                if val not in self.gens:
                    raise UnknownGeneratorError(f"unknown generator {val!r}", self.line, col)
                self.take()
                word.append(self.gens[val])
            elif kind == "op" and val == "(":
                self.take()
                coeff = coeff * self.parse_scalar_sum()
                kind2, val2, _ = self.peek()
                if val2 != ")":
                    raise self.error("expected ')'")
                self.take()
            elif kind == "op" and val == "*" and seen:
                self.take()
                continue
            else:
                break
            seen = True
        if not seen:
            raise self.error("expected a term")
        return Polynomial.monomial(tuple(word), coeff)

    def _power(self) -> int:
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, col = self.take()
            if kind != "num":
                raise ParseError("expected an exponent", self.line, col)
            return int(val)
        return 1

    def parse_scalar_sum(self) -> ParamScalar:
        total = ParamScalar.of(0)
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            c = ONE
            seen = False
            while True:
                kind, val, col = self.peek()
                if kind == "num":
                    self.take()
                    c = c * int(val)
                elif kind == "name" and val == self.param:
                    self.take()
                    c = c * ParamScalar.param(self._power())
                elif kind == "op" and val == "*" and seen:
                    self.take()
                    continue
                elif kind == "name":
                    raise self.error(f"only the parameter {self.param!r} may appear inside parentheses")
                else:
                    break
                seen = True
            if not seen:
                raise self.error("expected a coefficient")
            total = total + c * sign
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            return total


def parse_presentation(text: str) -> PresentationSpec:
    """Parse the line-oriented presentation format.

    ::

        gens: e0 e1 e2        # ascending order of the monomial ranking
        param: d              # optional
        family: B 3           # optional, enables the dimension check
        rel: e0 e1 e0 e1 = 2 e0 e1
    """
    names: Optional[Tuple[str, ...]] = None
    param = "d"
    family, n = "generic", None
    rel_lines: List[Tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = re.match(r"\s*([a-z]+)\s*:", line)
        if not m:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'gens:', 'param:', 'family:' or 'rel:'", lineno, col)
        key, body, body_col = m.group(1), line[m.end():], m.end()
        if key == "gens":
            if names is not None:
                raise ParseError("duplicate gens declaration", lineno, 1)
            names = tuple(body.split())
            for k, nm in enumerate(names):
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                    raise ParseError(f"bad generator name {nm!r}", lineno, body_col + body.index(nm) + 1)
            if not names or len(set(names)) != len(names):
                raise ParseError("gens must list distinct names", lineno, body_col + 1)
        elif key == "param":
            parts = body.split()
            if len(parts) != 1 or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", parts[0]):
                raise ParseError("param takes one name", lineno, body_col + 1)
            param = parts[0]
        elif key == "family":
            parts = body.split()
            if len(parts) != 2 or parts[0] not in FAMILIES or not parts[1].isdigit():
                raise ParseError("family takes a type (A, B or D) and a rank", lineno, body_col + 1)
            family, n = parts[0], int(parts[1])
        elif key == "rel":
            rel_lines.append((lineno, body_col, body))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, 1)
    if names is None:
        raise ParseError("missing gens declaration", 1, 1)
    if param in names:
        raise ParseError(f"parameter {param!r} clashes with a generator name", 1, 1)
    gens = {nm: k for k, nm in enumerate(names)}
    rels = []
    for lineno, col0, body in rel_lines:
        if body.count("=") != 1:
            raise ParseError("relation needs exactly one '='", lineno, col0 + 1)
        lhs, rhs = body.split("=")
        p = _ExprParser(lhs, lineno, col0, gens, param).parse_sum()
        q = _ExprParser(rhs, lineno, col0 + len(lhs) + 1, gens, param).parse_sum()
        r = p - q
        if r.is_zero():
            raise ZeroRelationError("relation is zero", lineno, col0 + 1)
        rels.append(r)
    return PresentationSpec(names, tuple(rels), param, family, n)


def serialize_presentation(spec: PresentationSpec) -> str:
    """Canonical text: leading word on the left, remaining terms on the right."""
    order = spec.order
    lines = [f"gens: {' '.join(spec.names)}", f"param: {spec.param}"]
    if spec.known_family:
        lines.append(f"family: {spec.family} {spec.n}")
    for r in spec.relations:
        lead, c = leading_term(r, order)
        if c == -1:
            r, c = -r, ONE
        rest = dict(r.terms)
        del rest[lead]
        rhs = (-Polynomial._from_dict(rest)).to_string(spec.names, spec.param, order)
        lhs = Polynomial.monomial(lead, c).to_string(spec.names, spec.param, order)
        lines.append(f"rel: {lhs} = {rhs}")
    return "\n".join(lines) + "\n"

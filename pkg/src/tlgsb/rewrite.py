"""Reduction to normal form, compositions, closure checks and completion."""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .freealg import (
    ONE,
    MonomialOrder,
    ParamScalar,
    Polynomial,
    Word,
    leading_term,
    make_monic,
    word_to_string,
)

DEFINING = "defining-relation"
LEMMA = "lemma-derived"
COMPLETION = "completion-generated"


class DegenerateRuleError(ValueError):
    """A relation whose leading word is the empty word."""


@dataclass(frozen=True)
class RewriteRule:
    """Monic relation ``lead - replacement``, used as ``lead -> replacement``."""

    lead: Word
    replacement: Polynomial
    origin: str = DEFINING
    label: str = ""

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: MonomialOrder, origin: str = DEFINING,
                        label: str = "") -> "RewriteRule":
        p = make_monic(p, order)
        lead, _ = leading_term(p, order)
        if not lead:
            raise DegenerateRuleError("relation with leading word 1 collapses the algebra")
        tail = dict(p.terms)
        del tail[lead]
        return cls(lead, -Polynomial._from_dict(tail), origin, label)

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial.monomial(self.lead) - self.replacement

    def to_string(self, names: Sequence[str] | None = None, param: str = "d",
                  order: MonomialOrder | None = None) -> str:
        rhs = self.replacement.to_string(names, param, order)
        return f"{word_to_string(self.lead, names)} = {rhs}"


@dataclass(frozen=True)
class RuleSet:
    rules: Tuple[RewriteRule, ...]
    order: MonomialOrder
    names: Tuple[str, ...] | None = None
    param: str = "d"

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for r in self.rules:
            if not r.lead:
                raise DegenerateRuleError("relation with leading word 1 collapses the algebra")
            self.order.check(r.lead)
            lk = self.order.key(r.lead)
            for w in r.replacement.words():
                self.order.check(w)
                if self.order.key(w) >= lk:
                    raise ValueError(f"rule {r.lead}: tail word {w} is not below the lead")

    @classmethod
    def from_polynomials(cls, polys: Iterable[Polynomial], order: MonomialOrder,
                         origin: str = DEFINING, **kw) -> "RuleSet":
        return cls(tuple(RewriteRule.from_polynomial(p, order, origin) for p in polys), order, **kw)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[RewriteRule]:
        return iter(self.rules)

    def __getitem__(self, i: int) -> RewriteRule:
        return self.rules[i]

    def with_rules(self, rules: Iterable[RewriteRule]) -> "RuleSet":
        return RuleSet(tuple(rules), self.order, self.names, self.param)

    @property
    def leads(self) -> List[Word]:
        return [r.lead for r in self.rules]

    @cached_property
    def _lead_index(self) -> Dict[Word, int]:
        idx: Dict[Word, int] = {}
        for i, r in enumerate(self.rules):
            idx.setdefault(r.lead, i)
        return idx

    @cached_property
    def _lead_lengths(self) -> Tuple[int, ...]:
        return tuple(sorted({len(r.lead) for r in self.rules}))

    def matches(self, word: Word) -> List[Tuple[int, int]]:
        """All (rule index, position) pairs with the rule's lead at that position."""
        out = []
        n = len(word)
        for i, r in enumerate(self.rules):
            L = len(r.lead)
            for pos in range(n - L + 1):
                if word[pos:pos + L] == r.lead:
                    out.append((i, pos))
        return out

    def first_match(self, word: Word) -> Optional[Tuple[int, int]]:
        """Lowest rule index, then leftmost position."""
        index, n = self._lead_index, len(word)
        best = None
        for L in self._lead_lengths:
            if L > n:
                break
            for pos in range(n - L + 1):
                i = index.get(word[pos:pos + L])
                if i is not None and (best is None or (i, pos) < best):
                    best = (i, pos)
        return best

    def is_reducible(self, word: Word) -> bool:
        index, n = self._lead_index, len(word)
        for L in self._lead_lengths:
            if L > n:
                break
            for pos in range(n - L + 1):
                if word[pos:pos + L] in index:
                    return True
        return False

    def is_standard(self, word: Sequence[int]) -> bool:
        return not self.is_reducible(tuple(word))

    def to_text(self) -> str:
        return "\n".join(r.to_string(self.names, self.param, self.order) for r in self.rules)


# ---------------------------------------------------------------------------
# Normal forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    rule: int
    position: int
    left: Word
    right: Word
    coeff: ParamScalar


@dataclass
class ReductionTrace:
    steps: List[ReductionStep] = field(default_factory=list)
    result: Polynomial = field(default_factory=Polynomial.zero)

    def replay(self, rules: RuleSet) -> Polynomial:
        """Sum of coeff * left * s * right over the steps; equals p - normal_form(p)."""
        acc: Dict[Word, ParamScalar] = {}
        for st in self.steps:
            for w, c in rules[st.rule].polynomial.terms.items():
                k = st.left + w + st.right
                s = acc.get(k)
                s = st.coeff * c if s is None else s + st.coeff * c
                if s:
                    acc[k] = s
                else:
                    del acc[k]
        return Polynomial._from_dict(acc)

    def rewritten_words(self, rules: RuleSet) -> List[Word]:
        return [st.left + rules[st.rule].lead + st.right for st in self.steps]


def _neg_key(order: MonomialOrder, w: Word):
    if order._identity:
        return (-len(w), tuple(-x for x in w))
    r = order.ranking
    return (-len(w), tuple(-r[x] for x in w))


def reduce(p: Polynomial, rules: RuleSet, trace: Optional[ReductionTrace] = None) -> Polynomial:
    """Normal form of ``p``: rewrite the largest reducible term until none is left."""
    if not rules.rules or not p.terms:
        if trace is not None:
            trace.result = p
        return p
    order = rules.order
    work: Dict[Word, ParamScalar] = dict(p.terms)
    heap = [(_neg_key(order, w), w) for w in work]
    heapq.heapify(heap)
    out: Dict[Word, ParamScalar] = {}
    first_match = rules.first_match
    while heap:
        _, w = heapq.heappop(heap)
        c = work.pop(w, None)
        if c is None:
            continue
        m = first_match(w)
        if m is None:
            out[w] = c
            continue
        i, pos = m
        rule = rules.rules[i]
        a, b = w[:pos], w[pos + len(rule.lead):]
        if trace is not None:
            trace.steps.append(ReductionStep(i, pos, a, b, c))
        for u, x in rule.replacement.terms.items():
            nw = a + u + b
            nc = c * x
            s = work.get(nw)
            if s is None:
                work[nw] = nc
                heapq.heappush(heap, (_neg_key(order, nw), nw))
            else:
                s = s + nc
                if s:
                    work[nw] = s
                else:
                    del work[nw]
    res = Polynomial._from_dict(out)
    if trace is not None:
        trace.result = res
    return res


def normal_form(p: Polynomial, rules: RuleSet) -> Tuple[Polynomial, ReductionTrace]:
    trace = ReductionTrace()
    nf = reduce(p, rules, trace)
    return nf, trace


def normal_form_random(p: Polynomial, rules: RuleSet,
                       rng: random.Random) -> Tuple[Polynomial, ReductionTrace]:
    """Reduce with a randomly chosen reducible term and occurrence at every step."""
    work: Dict[Word, ParamScalar] = dict(p.terms)
    trace = ReductionTrace()
    while True:
        reducible = sorted(w for w in work if rules.is_reducible(w))
        if not reducible:
            break
        w = rng.choice(reducible)
        c = work.pop(w)
        i, pos = rng.choice(rules.matches(w))
        rule = rules.rules[i]
        a, b = w[:pos], w[pos + len(rule.lead):]
        trace.steps.append(ReductionStep(i, pos, a, b, c))
        for u, x in rule.replacement.terms.items():
            nw = a + u + b
            s = work.get(nw)
            s = c * x if s is None else s + c * x
            if s:
                work[nw] = s
            else:
                work.pop(nw, None)
    trace.result = Polynomial._from_dict(work)
    return trace.result, trace


# ---------------------------------------------------------------------------
# Compositions
# ---------------------------------------------------------------------------

INTERSECTION = "intersection"
INCLUSION = "inclusion"


@dataclass(frozen=True)
class Composition:
    """Critical pair of rules ``left`` (p) and ``right`` (q).

    intersection: ``p_lead * a == b * q_lead == word``, value ``p*a - b*q``.
    inclusion:    ``a * p_lead * b == q_lead == word``, ``a`` nonempty,
                  value ``a*p*b - q``.
    """

    kind: str
    left: int
    right: int
    word: Word
    a: Word
    b: Word
    value: Polynomial

    def sort_key(self, order: MonomialOrder):
        return (order.key(self.word), self.left, self.right, self.kind, len(self.b), len(self.a))


def _pair_compositions(rules: RuleSet, i: int, j: int) -> Iterator[Composition]:
    """Compositions with ``rules[i]`` as p and ``rules[j]`` as q."""
    p, q = rules[i], rules[j]
    P, Q = p.lead, q.lead
    lp, lq = len(P), len(Q)
    # intersections: overlap of P's suffix P[k:] with a prefix of Q; a nonempty.
    # k == 0 covers P being a proper prefix of Q, and P == Q for distinct rules.
    for k in range(lp):
        m = lp - k
        if m > lq or P[k:] != Q[:m]:
            continue
        if m == lq:
            if k == 0 and i < j:
                value = p.polynomial - q.polynomial
                yield Composition(INTERSECTION, i, j, P, (), (), value)
            # k > 0 with m == lq is Q inside P as a suffix: an inclusion of (j, i)
            continue
        a, b = Q[m:], P[:k]
        w = P + a
        value = p.polynomial.mul_word((), a) - q.polynomial.mul_word(b, ())
        yield Composition(INTERSECTION, i, j, w, a, b, value)
    # inclusions: P inside Q at a position >= 1
    if lp < lq:
        for pos in range(1, lq - lp + 1):
            if Q[pos:pos + lp] == P:
                a, b = Q[:pos], Q[pos + lp:]
                value = p.polynomial.mul_word(a, b) - q.polynomial
                yield Composition(INCLUSION, i, j, Q, a, b, value)


def find_compositions(rules: RuleSet) -> List[Composition]:
    out = []
    n = len(rules)
    for i in range(n):
        for j in range(n):
            out.extend(_pair_compositions(rules, i, j))
    out.sort(key=lambda c: c.sort_key(rules.order))
    return out


@dataclass
class ClosureReport:
    closed: bool
    checked: int
    witnesses: List[Tuple[Composition, Polynomial]] = field(default_factory=list)

    def witness_dicts(self, rules: RuleSet) -> List[dict]:
        out = []
        for comp, nf in self.witnesses:
            out.append({
                "kind": comp.kind,
                "left": comp.left,
                "right": comp.right,
                "word": list(comp.word),
                "a": list(comp.a),
                "b": list(comp.b),
                "normal_form": nf.to_string(rules.names, rules.param, rules.order),
            })
        return out


def check_composition(comp: Composition, rules: RuleSet) -> Tuple[Polynomial, bool]:
    """Normal form of the composition value and whether every step stayed below its word."""
    trace = ReductionTrace()
    nf = reduce(comp.value, rules, trace)
    bound = rules.order.key(comp.word)
    below = all(rules.order.key(w) < bound for w in trace.rewritten_words(rules))
    return nf, below


def is_closed(rules: RuleSet, max_witnesses: int | None = None) -> ClosureReport:
    comps = find_compositions(rules)
    report = ClosureReport(True, len(comps))
    for comp in comps:
        nf, below = check_composition(comp, rules)
        if nf or not below:
            report.closed = False
            report.witnesses.append((comp, nf))
            if max_witnesses is not None and len(report.witnesses) >= max_witnesses:
                break
    return report


# ---------------------------------------------------------------------------
# Interreduction and completion
# ---------------------------------------------------------------------------


def interreduce(rules: RuleSet) -> RuleSet:
    """Remove rules whose lead contains another lead and fully reduce the tails."""
    work: List[Optional[RewriteRule]] = list(rules.rules)
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(work):
            if r is None:
                continue
            others = rules.with_rules(x for k, x in enumerate(work) if x is not None and k != i)
            p = r.polynomial
            nf = reduce(p, others)
            if nf == p:
                continue
            changed = True
            if nf.is_zero():
                work[i] = None
            else:
                work[i] = RewriteRule.from_polynomial(nf, rules.order, r.origin, r.label)
    return rules.with_rules(r for r in work if r is not None)


@dataclass(frozen=True)
class CompletionLimits:
    max_new_rules: Optional[int] = None
    max_lead_degree: Optional[int] = None


@dataclass
class CompletionResult:
    rules: RuleSet
    status: str  # "completed" | "limit-hit"
    new_rules: int
    pending: int = 0
    processed: int = 0
    reason: str = ""

    @property
    def completed(self) -> bool:
        return self.status == "completed"


def complete(rules: RuleSet, limits: CompletionLimits = CompletionLimits(),
             reduce_result: bool = True) -> CompletionResult:
    """Add normalized compositions until every composition reduces to zero.

    Compositions are processed smallest overlap word first; ties go by the
    rule-index pair.  Returns ``limit-hit`` with the pending queue size
    instead of truncating silently.
    """
    order = rules.order
    current = rules
    heap: list = []
    counter = 0

    def push_pair(i: int, j: int) -> None:
        nonlocal counter
        for comp in _pair_compositions(current, i, j):
            heapq.heappush(heap, (comp.sort_key(order), counter, comp))
            counter += 1

    n = len(current)
    for i in range(n):
        for j in range(n):
            push_pair(i, j)

    added = processed = 0
    while heap:
        _, _, comp = heapq.heappop(heap)
        processed += 1
        nf = reduce(comp.value, current)
        if nf.is_zero():
            continue
        new = RewriteRule.from_polynomial(nf, order, COMPLETION)
        reason = ""
        if limits.max_new_rules is not None and added >= limits.max_new_rules:
            reason = f"max-new-rules {limits.max_new_rules} reached"
        elif limits.max_lead_degree is not None and len(new.lead) > limits.max_lead_degree:
            reason = f"new lead of degree {len(new.lead)} exceeds max-lead-degree {limits.max_lead_degree}"
        if reason:
            return CompletionResult(current, "limit-hit", added, len(heap) + 1, processed, reason)
        current = current.with_rules(current.rules + (new,))
        added += 1
        k = len(current) - 1
        for j in range(k + 1):
            push_pair(k, j)
            if j != k:
                push_pair(j, k)

    if reduce_result and added:
        current = interreduce(current)
    return CompletionResult(current, "completed", added, 0, processed)

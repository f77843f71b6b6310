"""Standard monomials: an obstruction automaton over the leading words, exact
counting on its live subgraph, and the closed-form families and dimension
formulas used as independent checks."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .freealg import Word
from .presentations import WordBuilder, check_rank
from .rewrite import RuleSet


class InfiniteBasisError(ValueError):
    def __init__(self, cycle: Word):
        super().__init__(f"standard words are infinite; the live automaton repeats {list(cycle)}")
        self.cycle = cycle


@dataclass(frozen=True)
class ObstructionAutomaton:
    """Aho-Corasick automaton over the rule leads.

    A word is standard iff its run from state 0 never enters a dead state.
    """

    size: int
    letters: Tuple[int, ...]  # generators in ascending rank
    delta: Tuple[Tuple[int, ...], ...]
    dead: Tuple[bool, ...]

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def run(self, word: Sequence[int]) -> int:
        """Final state, or -1 as soon as a dead state is hit."""
        s = 0
        for x in word:
            s = self.delta[s][x]
            if self.dead[s]:
                return -1
        return s

    def is_standard(self, word: Sequence[int]) -> bool:
        return self.run(word) >= 0

    def live_edges(self, s: int) -> Iterator[Tuple[int, int]]:
        for x in self.letters:
            t = self.delta[s][x]
            if not self.dead[t]:
                yield x, t

    def reachable(self) -> List[int]:
        seen = {0}
        todo = deque([0])
        while todo:
            s = todo.popleft()
            for _, t in self.live_edges(s):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return sorted(seen)

    def find_cycle(self) -> Optional[Word]:
        """Letters of a live cycle reachable from the root, or None."""
        color: Dict[int, int] = {}
        parent: Dict[int, Tuple[int, int]] = {}
        stack = [(0, iter(list(self.live_edges(0))))]
        color[0] = 1
        while stack:
            s, it = stack[-1]
            for x, t in it:
                c = color.get(t, 0)
                if c == 0:
                    color[t] = 1
                    parent[t] = (s, x)
                    stack.append((t, iter(list(self.live_edges(t)))))
                    break
                if c == 1:
                    letters = [x]
                    u = s
                    while u != t:
                        u, y = parent[u]
                        letters.append(y)
                    return tuple(reversed(letters))
            else:
                color[s] = 2
                stack.pop()
        return None

    def topological_order(self) -> List[int]:
        """Reachable live states with every state before its successors."""
        if self.find_cycle() is not None:
            raise InfiniteBasisError(self.find_cycle())
        order: List[int] = []
        done = set()
        stack = [(0, False)]
        while stack:
            s, expanded = stack.pop()
            if expanded:
                order.append(s)
                continue
            if s in done:
                continue
            done.add(s)
            stack.append((s, True))
            for _, t in self.live_edges(s):
                if t not in done:
                    stack.append((t, False))
        order.reverse()
        return order


def build_automaton(rules: RuleSet, size: Optional[int] = None) -> ObstructionAutomaton:
    size = rules.order.size if size is None else size
    if size <= 0:
        raise ValueError("empty alphabet")
    goto: List[Dict[int, int]] = [{}]
    terminal = [False]
    for r in rules:
        s = 0
        for x in r.lead:
            nxt = goto[s].get(x)
            if nxt is None:
                nxt = len(goto)
                goto[s][x] = nxt
                goto.append({})
                terminal.append(False)
            s = nxt
        terminal[s] = True

    n = len(goto)
    fail = [0] * n
    delta = [[0] * size for _ in range(n)]
    dead = list(terminal)
    todo = deque()
    for x in range(size):
        t = goto[0].get(x)
        if t is None:
            delta[0][x] = 0
        else:
            delta[0][x] = t
            todo.append(t)
    while todo:
        s = todo.popleft()
        dead[s] = dead[s] or dead[fail[s]]
        for x in range(size):
            t = goto[s].get(x)
            if t is None:
                delta[s][x] = delta[fail[s]][x]
            else:
                fail[t] = delta[fail[s]][x]
                delta[s][x] = t
                todo.append(t)
    for s in range(n):
        if dead[s]:
            delta[s] = [s] * size
    return ObstructionAutomaton(size, rules.order.letters_by_rank(),
                                tuple(tuple(row) for row in delta), tuple(dead))


def enumerate_standard(rules: RuleSet, cap: Optional[int] = None,
                       automaton: Optional[ObstructionAutomaton] = None) -> List[Word]:
    """Standard words in degree-then-lex order, up to degree ``cap`` if given."""
    aut = automaton or build_automaton(rules)
    if cap is None:
        cyc = aut.find_cycle()
        if cyc is not None:
            raise InfiniteBasisError(cyc)
    out: List[Word] = []
    level: List[Tuple[Word, int]] = [((), 0)]
    degree = 0
    while level:
        out.extend(w for w, _ in level)
        if cap is not None and degree >= cap:
            break
        level = [(w + (x,), t) for w, s in level for x, t in aut.live_edges(s)]
        degree += 1
    return out


@dataclass
class CountReport:
    total: Optional[int]
    finite: bool
    per_degree: List[int] = field(default_factory=list)
    formula: Optional[int] = None
    match: Optional[bool] = None
    cycle: Optional[Word] = None

    def as_dict(self) -> dict:
        return {
            "standard_count": self.total,
            "finite": self.finite,
            "per_degree": self.per_degree,
            "formula": self.formula,
            "match": self.match,
        }


def count_standard(rules: RuleSet, family: Optional[str] = None, n: Optional[int] = None,
                   max_degree: int = 12) -> CountReport:
    """Count standard words by path counting on the automaton.

    When the live subgraph has a cycle the total is None and ``per_degree``
    holds the Hilbert series up to ``max_degree``.
    """
    aut = build_automaton(rules)
    cyc = aut.find_cycle()
    if cyc is None:
        paths: Dict[int, int] = {}
        for s in reversed(aut.topological_order()):
            paths[s] = 1 + sum(paths[t] for _, t in aut.live_edges(s))
        total = paths[0]
        report = CountReport(total, True, _per_degree(aut, None))
    else:
        report = CountReport(None, False, _per_degree(aut, max_degree), cycle=cyc)
    if family is not None and n is not None:
        report.formula = dimension_formula(family, n)
        report.match = report.total == report.formula
    return report


def _per_degree(aut: ObstructionAutomaton, max_degree: Optional[int]) -> List[int]:
    layer = {0: 1}
    out = []
    while layer and (max_degree is None or len(out) <= max_degree):
        out.append(sum(layer.values()))
        nxt: Dict[int, int] = {}
        for s, c in layer.items():
            for _, t in aut.live_edges(s):
                nxt[t] = nxt.get(t, 0) + c
        layer = nxt
    return out


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def dimension_formula(family: str, n: int) -> int:
    """dim T(A_{n-1}) = C_n, dim T(B_n) = (n+2)C_n - 1, dim T(D_n) = (n+3)C_n/2 - 1."""
    check_rank(family, n)
    c = catalan(n)
    if family == "A":
        return c
    if family == "B":
        return (n + 2) * c - 1
    value = Fraction((n + 3) * c, 2) - 1
    assert value.denominator == 1
    return int(value)


def count_ballot_paths(ell: int, n: int) -> int:
    """East/north lattice paths from (ell+1, 0) to (n, n) that never go above y = x."""
    if not 1 <= ell <= n - 1:
        raise ValueError(f"need 1 <= ell <= n-1, got ell={ell}, n={n}")
    x0 = ell + 1
    ways = {(x0, 0): 1}
    for x in range(x0, n + 1):
        for y in range(0, x + 1):
            if (x, y) == (x0, 0):
                continue
            ways[(x, y)] = ways.get((x - 1, y), 0) + ways.get((x, y - 1), 0)
    return ways.get((n, n), 0)


def ballot_reflection(ell: int, n: int) -> int:
    m = 2 * n - ell - 1
    return comb(m, n) - comb(m, n + 1)


# ---------------------------------------------------------------------------
# Monomial families
# ---------------------------------------------------------------------------

Pair = Tuple[int, int]


def _sequences(n: int, jmin: int, ok: Callable[[int, int], bool]) -> Iterator[Tuple[Pair, ...]]:
    """Sequences (i_1,j_1)..(i_p,j_p), 1 <= i_1 < ... < i_p <= n-1, jmin <= j_k <= i_k,
    with ``ok(j_k, j_{k+1})`` for consecutive entries; p = 0 included."""

    def rec(prefix: Tuple[Pair, ...]) -> Iterator[Tuple[Pair, ...]]:
        yield prefix
        i0 = prefix[-1][0] if prefix else 0
        for i in range(i0 + 1, n):
            for j in range(jmin, i + 1):
                if prefix and not ok(prefix[-1][1], j):
                    continue
                yield from rec(prefix + ((i, j),))

    return rec(())


def _a_ok(j: int, k: int) -> bool:
    return k > j


def _b_ok(j: int, k: int) -> bool:
    return k > j if j > 0 else k >= j


def _d_ok(j: int, k: int) -> bool:
    if j == 0:
        return k >= 1
    if j == 1:
        return k == 0 or k >= 2
    return k > j


def family_parts(family: str, n: int) -> Dict[str, List[Word]]:
    """The closed-form standard monomials, split into their named parts.

    ``"A"`` is M_{T(A_{n-1})}; type B adds ``"0+"`` (words E_0 E_{i1,j1} ...)
    and ``"0-"`` (their images E'_{i1,j1} E_{i2,j2} ...); type D adds ``"0"``.
    """
    wb = WordBuilder(family, n)
    D = wb.desc

    def cat(seq: Sequence[Pair]) -> Word:
        return tuple(x for i, j in seq for x in D(i, j))

    parts: Dict[str, List[Word]] = {"A": [cat(s) for s in _sequences(n, 1, _a_ok)]}
    if family == "B":
        plus, minus = [], []
        e0 = (wb.gen(0),)
        for s in _sequences(n, 0, _b_ok):
            plus.append(e0 + cat(s))
            if s:
                (i1, j1), rest = s[0], s[1:]
                minus.append(wb.prime(i1, j1) + cat(rest))
        parts["0+"] = plus
        parts["0-"] = minus
    elif family == "D":
        zero = []
        for s in _sequences(n, 0, _d_ok):
            if not s:
                continue
            (i1, j1), rest = s[0], s[1:]
            if rest:
                primed = j1 * rest[0][1] != 0
            else:
                primed = j1 >= 1
            head = wb.prime(i1, j1) if primed else D(i1, j1)
            zero.append(head + cat(rest))
        parts["0"] = zero
    return parts


def generate_family(family: str, n: int) -> List[Word]:
    return [w for ws in family_parts(family, n).values() for w in ws]

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from conftest import gsb
from tlgsb.freealg import DELTA, MonomialOrder, Polynomial
from tlgsb.presentations import build_candidate_gsb, build_defining, expand_word_notation
from tlgsb.rewrite import RuleSet, reduce
from tlgsb.standard import (
    InfiniteBasisError,
    ballot_reflection,
    build_automaton,
    catalan,
    count_ballot_paths,
    count_standard,
    dimension_formula,
    enumerate_standard,
    family_parts,
    generate_family,
)

A3_WORDS = ["1", "E{1}", "E{2,1}", "E{2}", "E{1} E{2}", "E{3,1}", "E{3,2}", "E{3}",
            "E{1} E{3,2}", "E{1} E{3}", "E{2,1} E{3,2}", "E{2,1} E{3}", "E{2} E{3}", "E{1} E{2} E{3}"]

B3_WITH_E0 = ["E{0}", "E{0} E{1,0}", "E{1,0}", "E{0} E{1}", "E'{1}", "E{0} E{2,0}", "E{2,0}",
              "E{0} E{2,1}", "E'{2,1}", "E{0} E{2}", "E'{2}",
              "E{0} E{1,0} E{2,0}", "E{1,0} E{2,0}", "E{0} E{1,0} E{2,1}", "E{1,0} E{2,1}",
              "E{0} E{1,0} E{2}", "E{1,0} E{2}", "E{0} E{1} E{2}", "E'{1} E{2}"]

D4_WITH_E0 = ["E{1,0}", "E'{1}", "E{2,0}", "E'{2,1}", "E'{2}",
              "E{1} E{2,0}", "E{0} E{2,1}", "E{0} E{2}", "E'{1} E{2}", "E{3,0}", "E'{3,1}", "E'{3,2}",
              "E'{3}", "E{1} E{3,0}", "E{0} E{3,1}", "E{0} E{3,2}", "E{0} E{3}",
              "E'{1} E{3,2}", "E'{1} E{3}", "E{2,1} E{3,0}", "E{2,0} E{3,1}", "E{2,0} E{3,2}",
              "E{2,0} E{3}", "E'{2,1} E{3,2}", "E'{2,1} E{3}", "E'{2} E{3}",
              "E{0} E{2,1} E{3,0}", "E{1} E{2,0} E{3,1}", "E{1} E{2,0} E{3,2}", "E{1} E{2,0} E{3}",
              "E{0} E{2,1} E{3,2}", "E{0} E{2,1} E{3}", "E{0} E{2} E{3}", "E'{1} E{2} E{3}"]


def words(fam, n, tokens):
    return [expand_word_notation(fam, n, t) for t in tokens]


def brute_standard(S, max_len):
    """Standard words by direct factor search, independent of the automaton."""
    leads = [r.lead for r in S]
    out = []
    for L in range(max_len + 1):
        for w in itertools.product(range(S.order.size), repeat=L):
            if not any(w[k:k + len(p)] == p for p in leads for k in range(L - len(p) + 1)):
                out.append(w)
    return out


# -- automaton -------------------------------------------------------------------

def test_single_idempotent_automaton():
    order = MonomialOrder.deglex(3)
    S = RuleSet.from_polynomials([Polynomial.monomial((0, 0)) - Polynomial.monomial((0,), DELTA)], order)
    aut = build_automaton(S)
    assert aut.num_states == 3
    assert aut.is_standard((0, 1, 0))
    assert not aut.is_standard((0, 0))
    assert not aut.is_standard((2, 0, 0, 1))
    assert aut.find_cycle() is not None


def test_empty_rule_set_is_infinite():
    S = RuleSet((), MonomialOrder.deglex(2))
    aut = build_automaton(S)
    assert all(aut.is_standard(w) for w in itertools.product(range(2), repeat=4))
    with pytest.raises(InfiniteBasisError):
        enumerate_standard(S)
    rep = count_standard(S, max_degree=5)
    assert not rep.finite and rep.total is None
    assert rep.per_degree == [1, 2, 4, 8, 16, 32]


def test_automaton_agrees_with_factor_search(b3):
    aut = build_automaton(b3)
    leads = [r.lead for r in b3]
    for L in range(7):
        for w in itertools.product(range(3), repeat=L):
            reducible = any(w[k:k + len(p)] == p for p in leads for k in range(L - len(p) + 1))
            assert aut.is_standard(w) == (not reducible)


# -- enumeration ----------------------------------------------------------------

def test_a3_words(a3):
    got = enumerate_standard(a3)
    assert len(got) == 14
    assert set(got) == set(words("A", 4, A3_WORDS))


def test_enumeration_order(a3):
    got = enumerate_standard(a3)
    assert got == sorted(got, key=lambda w: (len(w), w))


def test_b3_words_containing_e0(b3):
    got = [w for w in enumerate_standard(b3) if 0 in w]
    assert len(got) == 19
    assert set(got) == set(words("B", 3, B3_WITH_E0))


def test_d4_words_containing_e0(d4):
    got = [w for w in enumerate_standard(d4) if 0 in w]
    assert len(got) == 34
    assert set(got) == set(words("D", 4, D4_WITH_E0))


def test_printed_lists_overcount():
    assert count_standard(build_candidate_gsb("B", 3, printed_only=True)).total == 30
    assert count_standard(build_candidate_gsb("D", 4, printed_only=True)).total == 62


@pytest.mark.parametrize("fam,n", [("A", 4), ("B", 2), ("B", 3), ("D", 4)])
def test_enumeration_matches_brute_force(fam, n):
    S = gsb(fam, n)
    longest = max(map(len, enumerate_standard(S)))
    assert set(brute_standard(S, longest + 1)) == set(enumerate_standard(S))


def test_cap_truncates_infinite_sets():
    S = RuleSet((), MonomialOrder.deglex(2))
    assert len(enumerate_standard(S, cap=3)) == 15


# -- counts ---------------------------------------------------------------------

@pytest.mark.parametrize("fam,n,count", [("B", 2, 7), ("B", 3, 24), ("D", 4, 48), ("A", 4, 14)])
def test_counts(fam, n, count):
    rep = count_standard(gsb(fam, n), fam, n)
    assert rep.finite and rep.total == count and rep.match
    assert sum(rep.per_degree) == count


@pytest.mark.parametrize("fam,ns", [("A", range(2, 9)), ("B", range(2, 8)), ("D", range(4, 8))])
def test_three_counts_agree(fam, ns):
    for n in ns:
        S = gsb(fam, n)
        total = count_standard(S).total
        assert total == dimension_formula(fam, n)
        if total < 20_000:
            assert len(enumerate_standard(S)) == total


def test_formula_values():
    assert dimension_formula("A", 4) == 14
    assert dimension_formula("B", 3) == 24
    assert dimension_formula("D", 7) == 2144
    assert [catalan(k) for k in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_dropping_the_quartics_makes_b2_infinite():
    S = build_defining("B", 2).rule_set()
    kept = [r for r in S if len(r.lead) < 4]
    T = RuleSet(tuple(kept), S.order, S.names, S.param)
    rep = count_standard(T, "B", 2, max_degree=6)
    assert not rep.finite and rep.match is False
    assert rep.per_degree == [1, 2, 2, 2, 2, 2, 2]
    assert rep.cycle is not None


@pytest.mark.parametrize("fam,n", [("A", 8), ("B", 7), ("D", 7)])
def test_builtin_bases_are_finite(fam, n):
    assert build_automaton(gsb(fam, n)).find_cycle() is None


def test_standard_words_are_irreducible():
    for fam, n in [("A", 5), ("B", 4), ("D", 5)]:
        S = gsb(fam, n)
        for w in enumerate_standard(S):
            assert reduce(Polynomial.monomial(w), S) == Polynomial.monomial(w)


# -- closed-form families -------------------------------------------------------

def test_family_examples():
    assert len(family_parts("A", 3)["A"]) == 5
    b = family_parts("B", 3)
    assert len(b["0+"]) == 10 and len(b["0-"]) == 9
    assert len(family_parts("D", 4)["0"]) == 34


@pytest.mark.parametrize("fam,ns", [("A", range(2, 7)), ("B", range(2, 7)), ("D", range(4, 7))])
def test_family_matches_enumeration(fam, ns):
    for n in ns:
        fam_words = generate_family(fam, n)
        assert len(fam_words) == len(set(fam_words))
        assert set(fam_words) == set(enumerate_standard(gsb(fam, n)))


def test_b_part_sizes():
    for n in range(2, 8):
        parts = family_parts("B", n)
        assert 2 * len(parts["0+"]) == (n + 1) * catalan(n)
        assert len(parts["0-"]) == len(parts["0+"]) - 1


def test_d_part_sizes():
    for n in range(4, 8):
        assert 2 * (len(family_parts("D", n)["0"]) + 1) == (n + 1) * catalan(n)


# -- ballot paths ---------------------------------------------------------------

def brute_paths(ell, n):
    """Enumerate every east/north step sequence and keep those weakly below y = x."""
    x0 = ell + 1
    east, north = n - x0, n
    count = 0
    for ups in itertools.combinations(range(east + north), north):
        x, y, ok = x0, 0, True
        for k in range(east + north):
            if k in ups:
                y += 1
            else:
                x += 1
            if y > x:
                ok = False
                break
        count += ok
    return count


def test_ballot_small():
    assert count_ballot_paths(1, 3) == 3


@pytest.mark.parametrize("n", range(2, 7))
def test_ballot_last_column_is_one(n):
    assert count_ballot_paths(n - 1, n) == brute_paths(n - 1, n) == 1


@pytest.mark.parametrize("n", range(2, 9))
def test_ballot_oracles_agree(n):
    for ell in range(1, n):
        c = count_ballot_paths(ell, n)
        assert c == brute_paths(ell, n) == ballot_reflection(ell, n)
        assert c * (n + 1) == (ell + 2) * comb(2 * n - ell - 1, n)


@pytest.mark.parametrize("n", range(2, 11))
def test_ballot_weighted_sum(n):
    total = sum(count_ballot_paths(ell, n) * 2 ** (ell - 1) for ell in range(1, n))
    assert 2 * total == (n - 1) * catalan(n)


def test_ballot_range():
    for ell, n in [(0, 3), (3, 3)]:
        with pytest.raises(ValueError):
            count_ballot_paths(ell, n)


@settings(max_examples=200)
@given(st.sampled_from([("A", 5), ("B", 4), ("D", 5)]).flatmap(
    lambda fn: st.tuples(st.just(fn), st.lists(st.integers(0, 3 if fn[0] == "A" else fn[1] - 1), max_size=9))))
def test_standard_iff_irreducible(case):
    (fam, n), w = case
    S = gsb(fam, n)
    w = tuple(w)
    assert build_automaton(S).is_standard(w) == S.is_standard(w)

"""End-to-end acceptance checks: one test per headline result.

Every test asserts exact symbolic equality; nothing is approximate.  The
Thue-Morse five-cycle scenario is covered twice: once for the pinned
return-word set (see the docstring there) and once for the group it
generates.
"""

import math
import random

import pytest

from minishift.arith import fib_factorial_limit
from minishift.bifix import (
    BifixCode,
    GroupCodeSpec,
    f_degree,
    g_x_f,
    group_code_intersection,
    minimal_automaton_of_star,
)
from minishift.errors import BudgetExceeded
from minishift.episturmian import episturmian_left_returns, justin_check
from minishift.extension import classify, multiplicity
from minishift.freegroup import is_basis_of_free_group, subgroup
from minishift.monoid import (
    Automaton,
    PermGroup,
    cyclic_monoid,
    f_min_rank,
    green,
    is_isomorphic_small,
    monoid_from_permutations,
    parse_permutation,
    transition_monoid,
)
from minishift.returns import (
    check_gamma_identity,
    left_return_words,
    right_return_words,
)
from minishift.shadow import (
    MorphismToFinite,
    SubstOmega,
    evaluate,
    h_order,
    separation_witness,
)
from minishift.words import Alphabet


AB = Alphabet.of("ab")


def a5_spec():
    return GroupCodeSpec.from_cycles(
        (1, 2, 3, 4, 5), {"a": "(1 2 3)", "b": "(3 4 5)"}, base_point=1
    )


def a5_morphism():
    dom = (1, 2, 3, 4, 5)
    perms = {
        "a": parse_permutation("(1 2 3)", dom),
        "b": parse_permutation("(3 4 5)", dom),
    }
    M = monoid_from_permutations(perms, dom)
    return MorphismToFinite(M, {a: M.image_of_word(a) for a in "ab"})


def parity_morphism():
    return MorphismToFinite(cyclic_monoid(2), {"a": 1, "b": 1})


def test_criterion_01_fibonacci_return_words(fib_set):
    assert right_return_words(fib_set, "a").words == {"a", "ba"}
    assert right_return_words(fib_set, "b").words == {"ab", "aab"}
    assert left_return_words(fib_set, "a").words == {"a", "ab"}
    assert left_return_words(fib_set, "b").words == {"ba", "baa"}


def test_criterion_02_non_neutral_three_returns(quad_set):
    assert right_return_words(quad_set, "aa").words == {"a", "babaa", "babababaa"}


def test_criterion_03_neutral_count_law(fib_set_64, trib_set_64):
    for F in (fib_set_64, trib_set_64):
        for n in range(1, 9):
            for x in F.words_of_length(n):
                assert len(right_return_words(F, x).words) == len(F.alphabet)


def test_criterion_04_gamma_identity(fib_set):
    for x in ("a", "b", "aa"):
        assert check_gamma_identity(fib_set, x, 8)


def test_criterion_05_classification(fib_set, trib_set, tm_set, quad_set):
    assert classify(fib_set, 8).tree
    assert classify(trib_set, 8).tree
    cl = classify(tm_set, 8)
    assert not cl.neutral
    assert cl.record_for("").multiplicity == 1
    assert multiplicity(quad_set, "a") == 1
    assert multiplicity(quad_set, "aa") == -1


def test_criterion_06_free_group_bases():
    assert is_basis_of_free_group(["a", "ba"], AB)
    assert is_basis_of_free_group(["ab", "aab"], AB)
    assert is_basis_of_free_group(["a", "ba", "ca"], Alphabet.of("abc"))
    H = subgroup(["aa", "ab", "ba"], AB)
    assert H.index() == 2
    assert H.rank() == 3


def test_criterion_07_episturmian_left_returns(fib):
    assert episturmian_left_returns("ab" * 8, "aa") == {"aab", "aabab"}
    target = fib.apply(fib.apply("aa"))
    assert episturmian_left_returns("ab" * 8, target) == {"aba", "abaab"}
    from itertools import product

    words = ["".join(p) for n in range(0, 9) for p in product("ab", repeat=n)]
    for u in words:
        for v in words:
            if len(u) + len(v) <= 8:
                assert justin_check(u, v, AB)


def test_criterion_08_degree_two_group_code(fib_set):
    X = group_code_intersection(GroupCodeSpec.cyclic(2, {"a": 1, "b": 1}), fib_set)
    assert X.words == frozenset({"aa", "ab", "ba"})
    assert f_degree(X, fib_set) == 2
    G, _, _ = g_x_f(X, fib_set)
    Z2 = PermGroup((0, 1), [parse_permutation("(0 1)", (0, 1))])
    assert is_isomorphic_small(G, Z2)
    A = minimal_automaton_of_star(X)
    M = transition_monoid(A)
    structure = green(M)
    t = M.image_of_word("aa")
    members = structure.j_class_members(structure.j_class[M.pos[t]])
    h_ids = {structure.h_class[i] for i in members}
    assert len(h_ids) == 4
    for h in h_ids:
        assert sum(structure.h_class[i] == h for i in members) == 2


def test_criterion_09_a5_reproduction(quad_set):
    X = group_code_intersection(a5_spec(), quad_set)
    assert len(X.words) == 8
    assert f_degree(X, quad_set) == 5
    assert right_return_words(quad_set, "aaa").words == {"babaaa", "babababaaa"}
    G, _, image = g_x_f(X, quad_set, base="aaa")
    assert len(image) == 5
    for g in G.generators:
        moved = [p for p in G.domain if g[p] != p]
        assert len(moved) == 5  # a single 5-cycle
    assert G.order() == 60


def test_criterion_10_thue_morse_trivial_group(tm_set_40):
    X = group_code_intersection(GroupCodeSpec.cyclic(3, {"a": 1, "b": 2}), tm_set_40)
    A = minimal_automaton_of_star(X)
    assert len(A.states) == 11
    assert f_min_rank(A, tm_set_40) == 3
    assert right_return_words(tm_set_40, "aa").words == {
        "bbaa", "babbabaa", "babbaa", "bbabaa",
    }
    G, _, _ = g_x_f(X, tm_set_40, base="aa")
    assert G.order() == 1


def test_criterion_11_thue_morse_a5_pinned_return_set(tm, tm_set_64):
    """Pinned return-word set for the fourth iterate of b.

    This pins the set to {t4(b), t3(a), t5(a)t5(b)} where tn is the n-th
    substitution iterate.  Note the third word has length 64 while every
    complete first return to t4(b) fits inside a window of length 48, so
    this pinned set disagrees with the computed one; the test records the
    pinned expectation as stated and fails against the actual value.  The
    companion test below checks the substance (5-cycles, order 60).
    """
    base = tm.iterate("b", 4)
    pinned = {
        base,
        tm.iterate("a", 3),
        tm.iterate("a", 5) + tm.iterate("b", 5),
    }
    assert right_return_words(tm_set_64, base).words == pinned


def test_criterion_11_thue_morse_a5_five_cycles_order_60(tm, tm_set_64):
    base = tm.iterate("b", 4)
    X = group_code_intersection(a5_spec(), tm_set_64)
    G, _, image = g_x_f(X, tm_set_64, base=base)
    assert len(image) == 5
    assert len(G.generators) == 4
    for g in G.generators:
        moved = [p for p in G.domain if g[p] != p]
        assert len(moved) == 5  # each return word acts as a 5-cycle
    assert G.order() == 60


def test_criterion_12_h_orders(fib, tm, quad):
    assert h_order(fib, parity_morphism()) == 3
    assert h_order(tm, a5_morphism()) == 6
    assert h_order(quad, a5_morphism()) == 12
    result = h_order(quad, parity_morphism())
    assert not isinstance(result, int)
    assert result[0] is None


def test_criterion_13_profinite_fibonacci(fib):
    for k in (3, 4, 5):
        m = math.factorial(k)
        for offset, limit in ((0, 0), (2, 1)):
            seq = fib_factorial_limit(m, offset, k, 10)
            assert seq[-1] == limit
            tail = next(i for i in range(len(seq)) if seq[i:] == [limit] * (len(seq) - i))
            assert all(v == limit for v in seq[tail:])
        M = cyclic_monoid(m)
        psi = MorphismToFinite(M, {"a": 1, "b": 1})
        assert evaluate(SubstOmega(fib, "a"), psi) == 1


def test_criterion_14_omega_power_law():
    rng = random.Random(7)
    for trial in range(25):
        n = rng.randint(2, 5)
        states = tuple(range(n))
        transitions = {
            (q, c): rng.randrange(n) for q in states for c in "ab"
        }
        A = Automaton(AB, states, 0, frozenset({0}), transitions)
        try:
            M = transition_monoid(A, budget=200)
        except BudgetExceeded:
            continue
        for s in M.elements:
            e = M.omega_power(s)
            assert M.is_idempotent(e)
            # uniqueness: the only idempotent among the powers of s
            powers = set()
            p = s
            while p not in powers:
                powers.add(p)
                p = M.mul(p, s)
            assert [q for q in powers if M.is_idempotent(q)] == [e]
        if M.is_group():
            for s in M.elements:
                assert M.omega_power(s) == M.identity
    # a guaranteed group case: letters acting as permutations
    perm_transitions = {
        (q, "a"): (q + 1) % 4 for q in range(4)
    }
    perm_transitions.update({(q, "b"): (3 - q) for q in range(4)})
    A = Automaton(AB, tuple(range(4)), 0, frozenset({0}), perm_transitions)
    M = transition_monoid(A)
    assert M.is_group()
    for s in M.elements:
        assert M.omega_power(s) == M.identity


def test_criterion_15_separation_witness():
    psi = MorphismToFinite(cyclic_monoid(2), {"x": 1, "y": 0, "z": 0})
    report = separation_witness(
        {"a", "ab", "bb"}, {"x": "a", "y": "ab", "z": "bb"}, psi, "x", "y"
    )
    assert report.separated
    assert report.alpha_u != report.alpha_v
    assert report.decode_checks == 103
    assert report.prefixes == ("", "a", "b")

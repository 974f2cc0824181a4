import itertools
import json
import random
import warnings
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from masseyfp.magnus import (
    ClosedFormWarning,
    ConjugatedGenerator as CG,
    RelatorFamily,
    check_modulus,
    eps,
    eps1_conjugated_product,
    eps2_commutator,
    eps2_conjugated_product,
    eps2_family,
    eps3_commutator,
    eps3_family,
    eps3_family_closed_form,
    family_mismatches,
    magnus_pairing,
    magnus_tensor,
    relators_of_family,
)
from masseyfp.presentations import monomial_presentation
from masseyfp.words import Word, commutator, parse_word

from conftest import conj_gens, words


# Independent route: iterated Fox derivatives in the integral group ring,
# followed by augmentation.

def _fox(j, element):
    out = defaultdict(int)
    for w, c in element.items():
        for t, a in enumerate(w):
            if a == j:
                out[w[:t]] += c
            elif a == -j:
                out[w[: t + 1]] -= c
    return out


def fox_eps(I, w):
    element = {tuple(w.letters): 1}
    for j in reversed(I):
        element = _fox(j, element)
    return sum(element.values())


def _product(members):
    w = Word()
    for m in members:
        w = w * m.word
    return w


x = {i: Word([i]) for i in range(1, 7)}
C12 = parse_word("x1 x2 x1^-1 x2^-1", 2)


def test_eps_examples():
    assert eps((1,), x[1]) == 1
    assert eps((1, 2), C12) == 1
    assert eps((2, 1), C12) == -1
    assert eps((1, 2, 2), C12) == -1
    assert eps((2, 1, 2), C12) == 1
    assert eps((1, 1, 1), C12) == 0
    assert eps((), C12) == 1


def test_eps_mod_p():
    assert eps((1, 2, 2), C12, 3) == 2
    assert eps((2, 1), C12, 2) == 1


def test_inverse_letter_rule():
    inv = Word([-1])
    assert eps((1,), inv) == -1
    assert eps((1, 1), inv) == 1
    assert eps((1, 1, 1), inv) == -1
    assert eps((1, 2), inv) == 0


def test_modulus_validation():
    assert check_modulus(0) == 0
    assert check_modulus(7) == 7
    with pytest.raises(ValueError):
        check_modulus(4)
    with pytest.raises(ValueError):
        eps((1,), x[1], 9)


@settings(max_examples=300)
@given(words(4, 12), st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_eps_matches_fox_calculus(w, I):
    assert eps(I, w) == fox_eps(I, w)


@settings(max_examples=200)
@given(words(4, 12))
def test_tensor_matches_eps(w):
    T = magnus_tensor(w, 4, depth=3)
    T5 = magnus_tensor(w, 4, depth=3, p=5)
    for I in itertools.product(range(1, 5), repeat=3):
        idx = tuple(i - 1 for i in I)
        assert T[3][idx] == eps(I, w)
        assert T5[3][idx] == eps(I, w, 5)
    for i, j in itertools.product(range(1, 5), repeat=2):
        assert T[2][i - 1, j - 1] == eps((i, j), w)


@settings(max_examples=200)
@given(words(4, 12), st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_pairing_is_multilinear_eps(w, weights):
    expected = 0
    for I in itertools.product(range(1, 5), repeat=len(weights)):
        coef = 1
        for wt, i in zip(weights, I):
            coef *= wt[i - 1]
        if coef:
            expected += coef * eps(I, w)
    assert magnus_pairing(weights, w) == expected
    assert magnus_pairing(weights, w, 3) == expected % 3


@settings(max_examples=300)
@given(words(5, 12), words(5, 12), st.lists(st.integers(1, 5), max_size=3))
def test_deconcatenation(u, v, I):
    I = tuple(I)
    total = sum(eps(I[:s], u) * eps(I[s:], v) for s in range(len(I) + 1))
    assert eps(I, u * v) == total


@settings(max_examples=300)
@given(words(5, 14), st.permutations([1, 2, 3, 4, 5]))
def test_shuffle_identities_distinct_indices(w, perm):
    k, l, m = perm[:3]
    assert eps((k,), w) * eps((l,), w) == eps((k, l), w) + eps((l, k), w)
    assert eps((k,), w) * eps((l, m), w) == (
        eps((k, l, m), w) + eps((l, k, m), w) + eps((l, m, k), w)
    )


@settings(max_examples=300)
@given(words(3, 14), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_quasi_shuffle_identities(w, k, l, m):
    # x_i -> 1 + t_i makes coincident letters merge
    assert eps((k,), w) * eps((l,), w) == (
        eps((k, l), w) + eps((l, k), w) + (k == l) * eps((k,), w)
    )
    assert eps((k,), w) * eps((l, m), w) == (
        eps((k, l, m), w)
        + eps((l, k, m), w)
        + eps((l, m, k), w)
        + (k == l) * eps((k, m), w)
        + (k == m) * eps((l, k), w)
    )


@settings(max_examples=200)
@given(st.lists(st.integers(1, 4).flatmap(lambda g: st.sampled_from([g, -g])), max_size=20),
       st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_free_reduction_invariance(seq, I):
    # the Fox route works on the unreduced letter sequence
    class Raw:
        letters = tuple(seq)

    assert eps(I, Word(seq)) == fox_eps(I, Raw)


def test_closed_forms_random_instances():
    rnd = random.Random(20240601)

    def rw(n=6, L=10):
        return Word(rnd.choice((1, -1)) * rnd.randint(1, n) for _ in range(rnd.randint(0, L)))

    for _ in range(1000):
        u, v = rw(), rw()
        k, l, m = (rnd.randint(1, 6) for _ in range(3))
        c = commutator(u, v)
        members = [CG(rnd.randint(1, 6), rw(L=5)) for _ in range(rnd.randint(1, 5))]
        prod = _product(members)
        for p in (0, 2, 3, 5):
            assert eps2_commutator(u, v, k, l, p) == eps((k, l), c, p)
            assert eps3_commutator(u, v, k, l, m, p) == eps((k, l, m), c, p)
            assert eps1_conjugated_product(members, k, p) == eps((k,), prod, p)
            assert eps2_conjugated_product(members, k, l, p) == eps((k, l), prod, p)


def test_commutator_closed_form_examples():
    assert eps2_commutator(x[1], x[2], 1, 2) == 1
    u = Word([1, 2])
    assert eps2_commutator(u, u, 1, 2) == 0
    assert eps2_commutator(u, x[2], 1, 2) == 1 == eps((1, 2), commutator(u, x[2]))
    assert eps3_commutator(x[1], x[2], 1, 2, 2) == -1
    assert eps3_commutator(x[1], x[2], 1, 1, 2) == 0
    assert eps3_commutator(u, u, 1, 2, 1) == 0


def test_conjugated_product_examples():
    assert eps1_conjugated_product([CG(1, x[2])], 1) == 1
    assert eps1_conjugated_product([CG(1, x[2])], 2) == 0
    assert eps1_conjugated_product([CG(1, Word([2, 4])), CG(3, Word([5]))], 3) == 1
    assert eps2_conjugated_product([CG(1), CG(2)], 1, 2) == 1
    assert eps2_conjugated_product([CG(1, x[3])], 3, 1) == 1
    assert eps2_conjugated_product([CG(1, x[3])], 1, 3) == -1
    assert eps((1, 3), Word([3, 1, -3])) == -1


def test_relators_of_family():
    (r,) = relators_of_family(RelatorFamily("F", (1, 2)))
    assert r.word.letters == (1, 2, -1, -2)
    assert r.name == "F^1"
    r1, r2 = relators_of_family(RelatorFamily("G", (1, 2, 3)))
    assert r1.word == commutator(x[1], Word([2, 3]))
    assert r2.word == commutator(Word([1, 2]), x[3])


def test_t1_family_of_p313():
    pres = monomial_presentation(3)
    (t1,) = [f for f in pres.families if f.name == "T_1"]
    assert t1.bases == (1, 7, 6)
    assert pres.relators[pres.index_of("T_1^1")].word == commutator(x[1], Word([7, 6]))
    assert pres.relators[pres.index_of("T_1^2")].word == commutator(Word([1, 7]), x[6])


def test_family_validation():
    with pytest.raises(ValueError, match="repeated"):
        RelatorFamily("F", (1, CG(1, x[2])))
    with pytest.raises(ValueError, match="at least 2"):
        RelatorFamily("F", (1,))
    f = RelatorFamily("F", (1, 2))
    with pytest.raises(ValueError):
        f.relator_word(2)
    with pytest.raises(ValueError):
        eps2_family(f, 0, 1, 2)


def test_eps2_family_examples():
    f = RelatorFamily("F", (1, 2))
    assert eps2_family(f, 1, 1, 2) == 1
    assert eps2_family(f, 1, 2, 1) == -1
    assert eps2_family(f, 1, 1, 3) == 0


def test_eps3_family_table_examples():
    f = RelatorFamily("F", (CG(1, x[3]), CG(2)))
    # first two cases of the table, read literally
    assert eps3_family_closed_form(f, 1, 1, 2, 3) == 0
    assert eps3_family_closed_form(f, 1, 2, 1, 3) == -1


def test_eps3_family_prefers_direct_expansion():
    f = RelatorFamily("F", (CG(1, x[3]), CG(2)))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert eps3_family(f, 1, 1, 2, 3) == 0
    with pytest.warns(ClosedFormWarning) as rec:
        val = eps3_family(f, 1, 2, 1, 3)
    assert val == eps((2, 1, 3), f.relator_word(1)) == 1
    mm = rec[0].message.mismatch
    assert (mm.relator, mm.index, mm.closed_form, mm.oracle) == ("F^1", (2, 1, 3), -1, 1)

    g = RelatorFamily("G", (1, 2))
    with pytest.warns(ClosedFormWarning):
        assert eps3_family(g, 1, 1, 2, 2) == -1 == eps3_commutator(x[1], x[2], 1, 2, 2)


@pytest.mark.parametrize("r", [3, 5])
def test_eps2_family_exhaustive(r):
    pres = monomial_presentation(r)
    assert family_mismatches(pres.families, pres.num_generators, order=2) == []


def test_family_mismatch_order_validation():
    with pytest.raises(ValueError):
        family_mismatches([], 3, order=4)


def test_evaluation_order_independent():
    pres = monomial_presentation(3)
    idx = list(itertools.product(range(1, 13), repeat=3))[::37]
    rels = list(pres.words)

    def table(order):
        return {(i, I): eps(I, rels[i]) for i, I in order}

    jobs = [(i, I) for i in range(len(rels)) for I in idx]
    serial = table(jobs)
    shuffled = jobs[:]
    random.Random(3).shuffle(shuffled)
    assert table(shuffled) == serial
    with ThreadPoolExecutor(4) as ex:
        vals = list(ex.map(lambda job: eps(job[1], rels[job[0]]), shuffled))
    assert dict(zip(shuffled, vals)) == serial

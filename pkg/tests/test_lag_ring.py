import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from flagzero.errors import DegreeError, HypothesisFails, ParseError
from flagzero.lag_ring import (
    LagElement, LagElementMod2, basis, generators, multiply, normal_form, relations,
    spin_obstruction, sq2, sq2_generator, strict_partitions, wu_coefficient,
)
from flagzero.polyring import IntPoly, elementary_polynomials, parse_poly, symmetric_to_elementary, x_names
from flagzero.lattice import IntegerLattice

from oracles import strict_partition_count
from pullback import lag_pullback, lag_terms


def C(k, *idx):
    return LagElement.c(k, *idx)


def cpoly(text, k):
    return parse_poly(text, [f"c{i}" for i in range(1, k + 1)])


def test_pullback_is_injective_on_basis():
    k = 3
    for d in range(0, 13, 2):
        images = [lag_pullback({tuple(int(i in s) for i in range(1, k + 1)): 1}, k) for s in basis(k, d)]
        keys = sorted({key for v in images for key in v})
        lat = IntegerLattice(len(keys), [[v.get(key, 0) for key in keys] for v in images])
        assert lat.rank == len(images)


@pytest.mark.parametrize("k", [2, 3])
def test_normal_form_matches_lag_pullback(k):
    rng = random.Random(k)
    for _ in range(25):
        e = tuple(rng.randint(0, 3) for _ in range(k))
        if sum((i + 1) * a for i, a in enumerate(e)) > k * (k + 1) // 2:
            continue
        p = {e: rng.randint(1, 5)}
        nf = normal_form(p, k)
        assert lag_pullback(p, k) == lag_pullback(lag_terms(nf), k), e


def test_rewrite_examples():
    assert normal_form(cpoly("c1", 2), 2) == C(2, 1)
    assert normal_form(cpoly("c1^2", 2), 2) == 2 * C(2, 2)
    assert normal_form(cpoly("c2^2", 2), 2).is_zero()
    assert normal_form(cpoly("c2^2", 3), 3) == 2 * C(3, 1, 3)
    trace = []
    normal_form(cpoly("c2^2", 3), 3, trace)
    assert trace == [((0, 2, 0), 2, 1)]


@pytest.mark.parametrize("k", range(1, 7))
def test_relations_vanish(k):
    for q in relations(k):
        assert normal_form(q, k).is_zero()
    # independently: q_j = e_j(x_1^2..x_k^2) converted by leading-term subtraction
    names = x_names(k)
    squares = [IntPoly(names, {tuple(2 * int(i == j) for j in range(k)): 1}) for i in range(k)]
    for j in range(1, k + 1):
        q = IntPoly(names)
        for S in combinations(range(k), j):
            t = IntPoly.const(names, 1)
            for s in S:
                t = t * squares[s]
            q = q + t
        g = symmetric_to_elementary(q, k)
        assert normal_form(g, k).is_zero()


def test_multiply_examples():
    k = 2
    a = C(k, 1) + 3 * C(k, 2)
    assert multiply(LagElement.one(k), a) == a
    assert multiply(C(k, 1), C(k, 1, 2)).is_zero()
    assert multiply(C(k, 1), C(k, 2)) == generators(k)[0]


def test_generators():
    assert generators(1) == (C(1, 1), LagElement.one(1), C(1, 1))
    assert generators(2) == (C(2, 1, 2), C(2, 2), C(2, 1))
    assert generators(3) == (C(3, 1, 2, 3), C(3, 2, 3), C(3, 1))


@pytest.mark.parametrize("k", range(1, 9))
def test_basis_and_strict_partitions(k):
    assert len(basis(k)) == 2 ** k
    top = k * (k + 1) // 2
    for d in range(top + 1):
        count = strict_partition_count(d, k)
        assert len(basis(k, 2 * d)) == count == len(strict_partitions(d, k))
    assert sum(strict_partition_count(d, k) for d in range(top + 1)) == 2 ** k


def test_text_forms():
    e = 2 * C(3, 1, 3) + C(3, 2)
    assert str(e) == "c{2} + 2*c{1,3}"
    assert LagElement.parse(str(e), 3) == e
    assert LagElement.from_json(e.to_json()) == e
    assert str(LagElement.one(2)) == "1"
    assert LagElement.parse("1 - c{1}", 2) == LagElement.one(2) - C(2, 1)
    with pytest.raises(ParseError):
        LagElement.parse("c1 + ", 2)


def _random_element(rng, k, size=3):
    subs = basis(k)
    return LagElement(k, {rng.choice(subs): rng.randint(-4, 4) for _ in range(size)})


@pytest.mark.parametrize("k", range(1, 6))
def test_ring_axioms(k):
    rng = random.Random(100 + k)
    for _ in range(200):
        a, b, c = (_random_element(rng, k) for _ in range(3))
        assert multiply(a, b) == multiply(b, a)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
        assert multiply(a, b + c) == multiply(a, b) + multiply(a, c)


@pytest.mark.parametrize("k", range(1, 6))
def test_mod2_is_a_ring_map(k):
    rng = random.Random(k)
    for _ in range(60):
        a, b = _random_element(rng, k), _random_element(rng, k)
        assert multiply(a, b).mod2() == a.mod2() * b.mod2()
        assert (a + b).mod2() == a.mod2() + b.mod2()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda k: st.tuples(
    st.just(k), st.dictionaries(st.tuples(*[st.integers(0, 3)] * k), st.integers(-5, 5), max_size=4))))
def test_normal_form_idempotent(case):
    k, p = case
    nf = normal_form(p, k)
    assert normal_form(nf, k) == nf
    assert all(c for c in nf.coeffs.values())


# -- Sq^2

def test_sq2_examples():
    assert sq2(LagElementMod2.c(2, 1)).is_zero()
    assert sq2(LagElementMod2.c(2, 2)) == LagElementMod2.c(2, 1, 2)
    assert sq2(generators(6)[1]) == generators(6)[0].mod2()
    with pytest.raises(DegreeError):
        sq2(LagElementMod2(3, {frozenset({1}), frozenset({2})}))


def test_wu_coefficients():
    assert [wu_coefficient(i) for i in range(1, 7)] == [0, 1, 0, 1, 0, 1]


@pytest.mark.parametrize("k", range(1, 7))
def test_wu_rule_from_x_variables(k):
    # mod 2, Sq^2 e_i(x) = sum_j x_j^2 d e_i / d x_j
    names = x_names(k)
    for i, e in enumerate(elementary_polynomials(k), 1):
        out = {}
        for exps, c in e.terms.items():
            for j, a in enumerate(exps):
                if a:
                    f = list(exps)
                    f[j] += 1
                    out[tuple(f)] = out.get(tuple(f), 0) + c * a
        g = symmetric_to_elementary(IntPoly(names, out), k)
        assert normal_form(g, k).mod2() == sq2_generator(k, i)


@pytest.mark.parametrize("k", range(1, 7))
def test_sq2_squared_vanishes(k):
    for s in basis(k):
        e = LagElementMod2(k, {s})
        assert sq2(sq2(e)).is_zero()


@pytest.mark.parametrize("k", range(1, 5))
def test_cartan_rule_on_basis_pairs(k):
    subs = basis(k)
    for s in subs:
        a = LagElement(k, {s: 1})
        for t in subs:
            b = LagElement(k, {t: 1})
            prod = multiply(a, b)
            lhs = sq2(prod.mod2())
            rhs = sq2(a.mod2()) * b.mod2() + a.mod2() * sq2(b.mod2())
            assert lhs == rhs


@pytest.mark.parametrize("k", range(1, 7))
def test_sq2_on_degree_two_is_square(k):
    c1 = C(k, 1)
    assert sq2(c1.mod2()) == multiply(c1, c1).mod2()


# -- spin constraint

@pytest.mark.parametrize("k", [2, 6, 10])
def test_spin_obstruction(k):
    s = spin_obstruction(k)
    assert s.relation == "b(a+1) ≡ 1 (mod 2)"
    assert s.conclusion == "a ≡ 0 (mod 2)"
    assert s.solutions == ((0, 1),)
    assert s.n == k * (k + 1) // 2 and s.n % 2 == 1
    assert s.replay()
    assert any("b(a+1)" in step for step in s.steps)


@pytest.mark.parametrize("k", [3, 4, 7, 8])
def test_spin_obstruction_needs_odd_n(k):
    with pytest.raises(HypothesisFails, match="hypothesis fails: n even"):
        spin_obstruction(k)


@pytest.mark.parametrize("k", [1, 5, 9])
def test_spin_obstruction_other_odd_n(k):
    with pytest.raises(HypothesisFails, match="hypothesis fails"):
        spin_obstruction(k)

import json
from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from flagzero.charclass import (
    FULL_FLAG, LAGRANGIAN, LineBundleSum, chern_first_lag, chern_top_flag, chern_top_lag,
    euler_characteristic, lagrangian_bundle, load_bundle, point_bundle_sp, save_bundle,
    tangent_bundle_flag, tangent_bundle_lag, tangent_roots,
)
from flagzero.errors import InvalidQuery, NamespaceMismatch, NotInvariant
from flagzero.lag_ring import LagElement, generators
from flagzero.rootsys import build_root_system, enumerate_weyl, levi_positive_roots
from flagzero.schubert_basis import SchubertExpr, weyl_group

from pullback import lag_pullback, lag_terms

SMALL = [("A", 2), ("A", 3), ("A", 4), ("B", 3), ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("G", 2)]


def test_tangent_roots_examples():
    rs = build_root_system("C", 2)
    assert len(tangent_roots(rs)) == 4
    amb = Counter(rs.to_ambient(w) for w in tangent_roots(rs, {1}))
    assert amb == Counter({(2, 0): 1, (0, 2): 1, (1, 1): 1})
    c3 = build_root_system("C", 3)
    amb = Counter(c3.to_ambient(w) for w in tangent_roots(c3, {1, 2}))
    assert amb == Counter([(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
    with pytest.raises(InvalidQuery):
        tangent_roots(c3, {4})


@pytest.mark.parametrize("family,rank", SMALL)
def test_tangent_dimension(family, rank):
    rs = build_root_system(family, rank)
    for r in range(rank):
        for J in [set(range(1, r + 1)), set(range(rank - r + 1, rank + 1))]:
            assert len(tangent_roots(rs, J)) == rs.num_positive_roots - len(levi_positive_roots(rs, J))


@pytest.mark.parametrize("k", range(1, 7))
def test_lagrangian_tangent(k):
    T = tangent_bundle_lag(k)
    n = k * (k + 1) // 2
    assert T.rank == n and T.ambient == f"Sp({k})/U({k})"
    top = chern_top_lag(T)
    assert top == 2 ** k * generators(k)[0]
    assert chern_first_lag(T) == (k + 1) * LagElement.c(k, 1)
    if k >= 2:
        assert euler_characteristic(build_root_system("C", k), range(1, k)) == 2 ** k


@pytest.mark.parametrize("k", range(1, 7))
def test_point_bundle(k):
    bundle, cert = point_bundle_sp(k)
    assert bundle.rank == k * (k + 1) // 2
    assert cert.top == generators(k)[0] and cert.coefficient == 1
    assert cert.holds and cert.replay()
    assert chern_top_lag(bundle) == generators(k)[0]


def test_point_bundle_small():
    b1, _ = point_bundle_sp(1)
    assert b1.weights == ((1,),) and chern_top_lag(b1) == LagElement.c(1, 1)
    b2, _ = point_bundle_sp(2)
    assert Counter(b2.weights) == Counter([(1, 0), (0, 1), (1, 1)])
    assert len(point_bundle_sp(4)[0].weights) == 10


def test_examples_k2():
    T = lagrangian_bundle(2, [(2, 0), (0, 2), (1, 1)])
    assert chern_top_lag(T) == 4 * LagElement.c(2, 1, 2)
    assert chern_first_lag(T) == 3 * LagElement.c(2, 1)
    assert chern_first_lag(tangent_bundle_lag(6)) == 7 * LagElement.c(6, 1)
    one = lagrangian_bundle(1, [(1,)])
    assert chern_top_lag(one) == LagElement.c(1, 1) == chern_first_lag(one)


def test_not_invariant():
    with pytest.raises(NotInvariant, match="not W-invariant"):
        chern_top_lag(lagrangian_bundle(2, [(1, 0), (1, 1)]))
    with pytest.raises(NotInvariant):
        chern_first_lag(lagrangian_bundle(3, [(1, 0, 0), (0, 1, 0)]))
    with pytest.raises(NamespaceMismatch):
        lagrangian_bundle(2, [(1, 0, 0)])


@pytest.mark.parametrize("k", [2, 3])
def test_top_class_agrees_with_full_flag(k):
    # pulled back to Sp(k)/T, c_top of a sum of line bundles is the product of its weights
    rs = build_root_system("C", k)
    for bundle in [tangent_bundle_lag(k), point_bundle_sp(k)[0]]:
        lag = chern_top_lag(bundle)
        flag = chern_top_flag(rs, [rs.weight_from_ambient(w) for w in bundle.weights])
        assert lag_pullback(lag_terms(lag), k) == {w.rho_image: c for w, c in flag.items()}


symmetric_bundles = st.integers(1, 3).flatmap(lambda k: st.tuples(
    st.just(k), st.lists(st.lists(st.integers(-2, 2), min_size=k, max_size=k), min_size=1, max_size=2)))


@settings(max_examples=30, deadline=None)
@given(symmetric_bundles)
def test_symmetrised_bundles_match_pullback(case):
    k, seeds = case
    weights = []
    for w in seeds:
        weights.extend(sorted(set(permutations(w))))
    bundle = lagrangian_bundle(k, weights)
    if bundle.rank > k * (k + 1) // 2:
        return
    assert bundle.is_invariant()
    lag = chern_top_lag(bundle)
    if k == 1:
        assert lag == weights[0][0] * LagElement.c(1, 1)
        return
    rs = build_root_system("C", k)
    flag = chern_top_flag(rs, [rs.weight_from_ambient(w) for w in weights])
    assert lag_pullback(lag_terms(lag), k) == {w.rho_image: c for w, c in flag.items()}


@pytest.mark.parametrize("family,rank", SMALL)
def test_flag_tangent_top_is_euler(family, rank):
    rs = build_root_system(family, rank)
    T = tangent_bundle_flag(rs)
    assert T.space == FULL_FLAG and T.rank == rs.num_positive_roots
    top = chern_top_flag(rs, T.weights)
    assert top == euler_characteristic(rs) * SchubertExpr.basis(weyl_group(rs).longest)


def test_euler_examples():
    assert euler_characteristic(build_root_system("C", 2), {1}) == 4
    assert euler_characteristic(build_root_system("A", 2)) == 6
    assert euler_characteristic(build_root_system("C", 3), {1, 2}) == 8
    assert euler_characteristic(build_root_system("A", 3), {1, 3}) == 6
    assert euler_characteristic(build_root_system("B", 3), {1, 2}) == 8


@pytest.mark.parametrize("family,rank", SMALL)
def test_euler_counts_minimal_coset_representatives(family, rank):
    rs = build_root_system(family, rank)
    J = {1}
    group = enumerate_weyl(rs)
    # w is minimal in w W_J iff no right descent lies in J, i.e. w(alpha_j) > 0 for j in J
    count = sum(1 for w in group if all(rs.element_from_word(w.word + (j,)).length > w.length for j in J))
    assert count == euler_characteristic(rs, J)


def test_bundle_file_round_trip(tmp_path):
    bundle, _ = point_bundle_sp(3)
    path = tmp_path / "b.json"
    save_bundle(bundle, path)
    again = load_bundle(path)
    assert again == bundle and again.space == LAGRANGIAN
    assert json.loads(path.read_text())["ambient"] == "Sp(3)/U(3)"
    assert LineBundleSum.from_json(bundle.to_json()) == bundle

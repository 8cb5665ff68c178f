import math
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from flagzero.rootsys import Weight, build_root_system
from flagzero.schubert_basis import fundamental_monomial, weyl_group
from flagzero.torsion import (
    TorsionIndexResult, levi_tau, obstruction_fires, recompute_certificate, reference_tau,
    tau_quotient_lower_bound, torsion_index_full_flag, u_bound_low, u_criterion, verify_result,
)

SMALL = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("C", 2), ("C", 3), ("G", 2), ("B", 3), ("D", 4)]


def _brute_tau(rs):
    """gcd of the X_{w0}-coefficients over every degree-n monomial in the fundamental weights."""
    n = rs.num_positive_roots
    g = 0
    for combo in combinations_with_replacement(range(rs.rank), n):
        exps = [0] * rs.rank
        for i in combo:
            exps[i] += 1
        top = fundamental_monomial(rs, exps)
        for _, c in top.items():
            g = math.gcd(g, c)
    return g


@pytest.mark.parametrize("family,rank", SMALL)
def test_matches_brute_force_gcd(family, rank):
    rs = build_root_system(family, rank)
    assert torsion_index_full_flag(rs).tau == _brute_tau(rs)


@pytest.mark.parametrize("family,rank", SMALL + [("A", 4), ("C", 4), ("B", 4)])
def test_exact_and_modular_agree(family, rank):
    rs = build_root_system(family, rank)
    a = torsion_index_full_flag(rs, method="exact", certify=False)
    b = torsion_index_full_flag(rs, method="modular", certify=False)
    assert a.tau == b.tau and a.ranks == b.ranks


@pytest.mark.parametrize("family,rank,tau", [
    ("A", 1, 1), ("A", 2, 1), ("A", 3, 1), ("A", 4, 1), ("C", 2, 1), ("C", 3, 1), ("C", 4, 1),
    ("B", 2, 1), ("G", 2, 2), ("B", 3, 2), ("D", 4, 2), ("B", 4, 2), ("F", 4, 6)])
def test_known_values(family, rank, tau):
    rs = build_root_system(family, rank)
    res = torsion_index_full_flag(rs)
    assert res.tau == tau
    assert reference_tau(family, rank) == tau
    assert verify_result(rs, res)
    group = weyl_group(rs)
    sizes = [len(layer) for layer in group.layers]
    assert all(r <= s for r, s in zip(res.ranks, sizes))
    assert list(res.ranks) == sizes  # degree-2 classes generate rationally
    assert res.ranks[-1] == 1
    assert len(group) % res.tau == 0


def test_f4_certificate():
    rs = build_root_system("F", 4)
    res = torsion_index_full_flag(rs)
    assert res.tau == 6
    g = 0
    for e, c in res.certificate:
        assert sum(e) == rs.num_positive_roots and c % 6 == 0
        g = math.gcd(g, c)
    assert g == 6
    assert [c for _, c in recompute_certificate(rs, res)] == [c for _, c in res.certificate]


def test_tampered_certificate_fails():
    rs = build_root_system("G", 2)
    res = torsion_index_full_flag(rs)
    (e, c), *rest = res.certificate
    bad = TorsionIndexResult(**{**res.__dict__, "certificate": ((e, c + 2),) + tuple(rest)})
    assert not verify_result(rs, bad)
    wrong = TorsionIndexResult(**{**res.__dict__, "tau": 1})
    assert not verify_result(rs, wrong)


@pytest.mark.parametrize("typ", [("G", 2), ("A", 2), ("C", 2)])
def test_generator_order_invariance(typ):
    rs = build_root_system(*typ)
    base = torsion_index_full_flag(rs).tau
    gens = [Weight.fundamental(2, 2), Weight.fundamental(2, 1)]
    assert torsion_index_full_flag(rs, generators=gens).tau == base


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([("G", 2), ("A", 2), ("C", 2)]),
       st.lists(st.tuples(st.booleans(), st.integers(-3, 3)), min_size=1, max_size=5))
def test_basis_change_invariance(typ, ops):
    rs = build_root_system(*typ)
    M = [[1, 0], [0, 1]]
    for top, c in ops:
        i, j = (0, 1) if top else (1, 0)
        M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    gens = [Weight(tuple(row)) for row in M]
    assert torsion_index_full_flag(rs, generators=gens).tau == torsion_index_full_flag(rs).tau


def test_sublattice_generators_are_detected():
    # 2*omega_1, omega_2 span an index-2 sublattice; the span no longer reaches tau
    rs = build_root_system("A", 2)
    gens = [Weight((2, 0)), Weight((0, 1))]
    assert torsion_index_full_flag(rs, generators=gens).tau > 1


@pytest.mark.parametrize("typ", [("F", 4), ("B", 4), ("D", 4)])
def test_parallel_runs_are_deterministic(typ):
    rs = build_root_system(*typ)
    one = torsion_index_full_flag(rs, method="modular", workers=1)
    many = torsion_index_full_flag(rs, method="modular", workers=4)
    assert one == many
    assert one.to_payload() == many.to_payload()


def test_payload_round_trip():
    rs = build_root_system("B", 3)
    res = torsion_index_full_flag(rs)
    assert TorsionIndexResult.from_payload(res.to_payload()) == res
    assert res.to_payload()["tau"] == "2"
    assert res.lattice == "simply-connected"


def test_unknown_method():
    with pytest.raises(ValueError):
        torsion_index_full_flag(build_root_system("A", 2), method="fast")


def test_quotient_bounds():
    assert tau_quotient_lower_bound(2, 1) == 2 and obstruction_fires(2, 1)
    assert tau_quotient_lower_bound(1, 1) == 1 and not obstruction_fires(1, 1)
    assert tau_quotient_lower_bound(6, 2) == 3 and obstruction_fires(6, 2)
    with pytest.raises(ValueError):
        tau_quotient_lower_bound(0, 1)


def test_levi_tau():
    b3 = build_root_system("B", 3)
    assert levi_tau(b3, {2, 3})[0] == 1
    assert levi_tau(b3, set())[0] == 1
    f4 = build_root_system("F", 4)
    tau, src = levi_tau(f4, {1, 2, 3})
    assert tau == 2 and src[0][1] == "B3"
    d5 = build_root_system("D", 5)
    tau, src = levi_tau(d5, {2, 3, 4, 5})
    assert tau == 2 and src[0][1] == "D4"


def test_u_bounds():
    assert u_bound_low(2) == 0
    assert u_bound_low(3) == 1
    assert u_criterion(3, {2: 0, 3: 1}) is True
    assert u_criterion(3, {2: 1, 3: 1}) is False
    assert u_criterion(4, {2: 0}) is None
    with pytest.raises(ValueError):
        u_bound_low(1)


def test_reference_table():
    assert reference_tau("E", 7) == 12
    assert reference_tau("E", 8) == 2880
    assert reference_tau("D", 7) == 4
    assert reference_tau("B", 9) is None

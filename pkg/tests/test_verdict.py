import itertools
from pathlib import Path

import pytest

from flagzero.errors import InvalidQuery, UnsupportedType
from flagzero.rootsys import build_root_system, classify_component, dynkin_components
from flagzero.verdict import (
    CITATIONS, COLUMNS, DIAGONAL, NAMED, NOT_REPRESENTABLE, POINT, REPRESENTABLE, ROWS, UNKNOWN,
    Query, Verdict, decide, format_table_line, named_query, replay_certificate, table_suite,
)

GOLDEN = Path(__file__).parent / "golden"
SYMBOL = {"o": REPRESENTABLE, "x": NOT_REPRESENTABLE, "?": UNKNOWN}


def V(family, rank, J, target=POINT):
    return decide(Query(family, rank, frozenset(J), target))


@pytest.fixture(scope="module")
def suite():
    return table_suite()


def test_examples():
    v = V("C", 3, ())
    assert v.status == REPRESENTABLE and "R2" in v.rule_ids
    v = V("C", 6, range(1, 6), DIAGONAL)
    assert v.status == NOT_REPRESENTABLE and "R6" in v.rule_ids
    assert v.certificate["kind"] == "spin_parity" and replay_certificate(v.certificate)
    for J in [(), (1,), (2, 3), (1, 2, 3), (4,)]:
        v = V("F", 4, J)
        assert v.status == NOT_REPRESENTABLE and v.rule_ids[0] == "R3"


def test_lagrangian_grassmannians():
    for k in range(2, 11):
        J = range(1, k)
        p, d = V("C", k, J), V("C", k, J, DIAGONAL)
        assert p.status == REPRESENTABLE and "R6" in p.rule_ids
        assert d.status == (NOT_REPRESENTABLE if k % 4 == 2 else UNKNOWN)
    # Sp(2)/U(2) = Q3: the diagonal falls under k = 2 mod 4
    assert V("C", 2, {1}, DIAGONAL).status == NOT_REPRESENTABLE


def test_named_cases():
    expected = {"OG1": REPRESENTABLE, "OG2": REPRESENTABLE, "OG3": REPRESENTABLE, "OG4": NOT_REPRESENTABLE,
                "Q1": REPRESENTABLE, "Q2": REPRESENTABLE, "Q3": REPRESENTABLE, "Q4": REPRESENTABLE,
                "Q5": NOT_REPRESENTABLE, "Q6": NOT_REPRESENTABLE}
    for name, status in expected.items():
        assert decide(named_query(name)).status == status, name
    assert decide(named_query("Q5", DIAGONAL)).status == NOT_REPRESENTABLE
    with pytest.raises(InvalidQuery):
        named_query("Q7")


def test_odd_quadric_diagonals():
    for rank in range(3, 7):
        v = V("B", rank, range(2, rank + 1), DIAGONAL)
        assert v.status == NOT_REPRESENTABLE


def test_query_validation():
    with pytest.raises(InvalidQuery, match="invalid parabolic"):
        Query("C", 3, {0}, POINT)
    with pytest.raises(InvalidQuery, match="not proper"):
        Query("C", 3, {1, 2, 3}, POINT)
    with pytest.raises(InvalidQuery, match="target"):
        Query("C", 3, set(), "line")
    with pytest.raises(UnsupportedType):
        Query("G", 3, set(), POINT)
    with pytest.raises(InvalidQuery):
        Query("A", 2, {1, 2}, POINT)
    assert isinstance(InvalidQuery("x"), ValueError)


def test_verdict_requires_rule():
    q = Query("A", 2, set(), POINT)
    with pytest.raises(Exception):
        Verdict(q, REPRESENTABLE, ())
    Verdict(q, UNKNOWN, ())


def _all_queries(max_rank):
    for family in "ABCD":
        for rank in range(1, max_rank + 1):
            for r in range(rank):
                for J in itertools.combinations(range(1, rank + 1), r):
                    yield family, rank, frozenset(J)
    for family, rank in [("G", 2), ("F", 4)]:
        for r in range(rank):
            for J in itertools.combinations(range(1, rank + 1), r):
                yield family, rank, frozenset(J)


@pytest.fixture(scope="module")
def sweep():
    out = {}
    for fam, rank, J in _all_queries(5):
        out[(fam, rank, J)] = (V(fam, rank, J), V(fam, rank, J, DIAGONAL))
    return out


def test_monotonicity(sweep):
    for key, (p, d) in sweep.items():
        if d.status == REPRESENTABLE:
            assert p.status == REPRESENTABLE, key
        if p.status == NOT_REPRESENTABLE:
            assert d.status == NOT_REPRESENTABLE, key


def test_pullback_consistency(sweep):
    for (fam, rank, J), (p, _) in sweep.items():
        borel = sweep.get((fam, rank, frozenset()))
        if borel and borel[0].status == NOT_REPRESENTABLE and fam in "BDEFG" and \
                (fam, rank) not in {("D", 2), ("D", 3), ("B", 2), ("B", 1), ("D", 1)}:
            rs = build_root_system(fam, rank)
            if all(classify_component(rs, c)[0] == "A" for c in dynkin_components(rs, J)):
                assert p.status != REPRESENTABLE


def test_citations_and_rules(sweep):
    for key, pair in sweep.items():
        for v in pair:
            if v.status != UNKNOWN:
                assert v.rules, key
            for r in v.rules:
                assert r.id in CITATIONS and r.citation == CITATIONS[r.id] and r.citation


def test_certificates_replay(suite):
    seen = 0
    for _, _, _, v in suite:
        if v.certificate is not None:
            assert replay_certificate(v.certificate)
            seen += 1
    assert seen >= 5


def test_tampered_certificate_does_not_replay():
    v = V("B", 3, ())
    cert = dict(v.certificate, tau_K="4")
    assert not replay_certificate(cert)
    v = V("C", 2, {1})
    assert v.certificate["kind"] == "point_bundle"
    assert not replay_certificate(dict(v.certificate, coefficient="2"))


def test_golden_table(suite):
    lines = [format_table_line(*row) for row in suite]
    golden = (GOLDEN / "table1.txt").read_text().splitlines()
    assert lines == golden


def test_table_transcription(suite):
    grid = {}
    for line in (GOLDEN / "table1_symbols.txt").read_text().splitlines():
        if line.startswith("#") or line.startswith("row |"):
            continue
        row, *cells = [c.strip() for c in line.split("|")]
        grid[row] = dict(zip(COLUMNS, cells))
    assert list(grid) == list(ROWS)
    cells = [(row, col, v) for row, col, _, v in suite if col != "named"]
    assert len(cells) == len(ROWS) * len(COLUMNS)
    for row, col, v in cells:
        assert v.status == SYMBOL[grid[row][col]], (row, col)
        assert v.rules


def test_named_rows_in_suite(suite):
    names = [row for row, col, _, _ in suite if col == "named"]
    assert names == list(NAMED)


def test_json_shape():
    js = V("B", 3, ()).to_json()
    assert set(js) == {"query", "status", "rules", "certificate"}
    assert js["rules"][0]["id"] == "R4"
    assert set(V("A", 2, ()).to_json()) == {"query", "status", "rules"}

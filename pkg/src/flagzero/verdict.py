"""Representability of the base point and of the diagonal of G/P.

A query names a simple type, a parabolic subset J of simple roots (the
simple roots of the Levi factor; J empty is the Borel) and a target.  The
rules are applied in a fixed order:

    LR  low-rank isomorphisms B1 = C1 = A1, B2 = C2, D2 = A1 x A1, D3 = A3
    R1  type A
    R2  type C, J empty or a tail {m..k}
    R2' type C, alpha_k not in J (type-A Levi): point only
    R3  exceptional types
    R4  types B/D with a type-A Levi
    R5  types B/D, other Levis: quadrics, orthogonal Grassmannians, tau bound
    R6  Sp(k)/U(k), i.e. type C with J = {1..k-1}
    RC  type C, any other Levi: left open (tau(C_k) = 1 gives no bound)
    PB  a representable diagonal gives a representable point, so a
        non-representable point forces a non-representable diagonal

Each rule either settles a target or leaves it open; conflicting rules
raise InternalInconsistency.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .charclass import chern_first_lag, point_bundle_sp, tangent_bundle_lag
from .errors import InternalInconsistency, InvalidQuery, UnsupportedType
from .lag_ring import spin_obstruction
from .rootsys import build_root_system, classify_component, dynkin_components
from .torsion import reference_tau, tau_quotient_lower_bound, torsion_index_full_flag

POINT = "point"
DIAGONAL = "diagonal"
TARGETS = (POINT, DIAGONAL)

REPRESENTABLE = "representable"
NOT_REPRESENTABLE = "not_representable"
UNKNOWN = "unknown"

CITATIONS = {
    "LR": "low-rank isomorphisms B1 = C1 = A1, B2 = C2, D2 = A1 x A1, D3 = A3",
    "R0": "zero-dimensional flag manifold: the rank-0 bundle represents point and diagonal",
    "R1": "type A: the diagonal of every flag manifold is representable (Fulton), hence the point",
    "R2": "type C, parabolic of type C: isotropic flag manifolds are iterated projective bundles "
          "over CP^(2k-1), so the diagonal is representable",
    "R2'": "type C, parabolic of type A: flag bundle over the Lagrangian Grassmannian, "
           "whose base point is representable",
    "R3": "exceptional type: tau(K/T) > tau(H/T) for every proper Levi, so tau(K/H) > 1 "
          "and no bundle has the point class as top Chern class",
    "R4": "type B/D, parabolic of type A: a point bundle on G/P would give one on G/B, "
          "where none exists",
    "R5": "type B/D, other parabolics: quadrics (odd quadrics have non-representable diagonal), "
          "OG_k representable iff k <= 3, and the bound tau(K/H) >= tau(K/T)/tau(H/T)",
    "R6": "Lagrangian Grassmannian Sp(k)/U(k): explicit point bundle; for k = 2 mod 4 a diagonal "
          "bundle restricts to spin point bundles, contradicting c1(TX) = (k+1) u_one",
    "RC": "type C, Levi with a type-A factor beside a type-C tail: no construction applies, "
          "and tau(K/T) = 1 gives no torsion bound",
    "PB": "a representable diagonal pulls back to a representable base point",
}

# families whose simple types appear in this engine
_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# Levi components up to this Weyl order get a computed torsion index
TAU_COMPUTE_LIMIT = 1200

# the point-bundle certificate expands a product of k(k+1)/2 linear forms;
# beyond this k the expansion is too slow to attach by default
POINT_CERT_LIMIT = 6


def _valid_type(family, rank):
    if family in ("A", "B", "C", "D"):
        return rank >= 1
    return (family, rank) in {("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)}


@dataclass(frozen=True)
class Query:
    family: str
    rank: int
    parabolic: frozenset
    target: str
    name: str = ""

    def __post_init__(self):
        fam = str(self.family).upper()
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "parabolic", frozenset(self.parabolic))
        if fam not in _FAMILIES or not isinstance(self.rank, int) or not _valid_type(fam, self.rank):
            raise UnsupportedType(f"unsupported type {self.family}{self.rank}")
        bad = sorted(j for j in self.parabolic if not (isinstance(j, int) and 1 <= j <= self.rank))
        if bad:
            raise InvalidQuery(f"invalid parabolic subset: nodes {bad} outside 1..{self.rank}")
        if self.parabolic and len(self.parabolic) == self.rank:
            raise InvalidQuery("invalid parabolic subset: the full set of simple roots is not proper")
        if self.target not in TARGETS:
            raise InvalidQuery(f"invalid target {self.target!r}: expected point or diagonal")

    def with_target(self, target):
        return Query(self.family, self.rank, self.parabolic, target, self.name)

    def __str__(self):
        J = "{" + ",".join(str(j) for j in sorted(self.parabolic)) + "}"
        base = f"{self.family}{self.rank} J={J} {self.target}"
        return f"{self.name}: {base}" if self.name else base

    def to_json(self):
        out = {"family": self.family, "rank": self.rank,
               "parabolic": sorted(self.parabolic), "target": self.target}
        if self.name:
            out["name"] = self.name
        return out


@dataclass(frozen=True)
class RuleHit:
    id: str
    citation: str

    def to_json(self):
        return {"id": self.id, "citation": self.citation}


def _hit(rid):
    return RuleHit(rid, CITATIONS[rid])


@dataclass(frozen=True)
class Verdict:
    query: Query
    status: str
    rules: tuple
    certificate: dict = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.status != UNKNOWN and not self.rules:
            raise InternalInconsistency(f"{self.status} verdict for {self.query} without a rule")

    @property
    def rule_ids(self):
        return tuple(r.id for r in self.rules)

    def to_json(self):
        out = {"query": self.query.to_json(), "status": self.status,
               "rules": [r.to_json() for r in self.rules]}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


# -- normalisation -------------------------------------------------------

def _normalise(family, rank, J):
    """Simple factors (family, rank, J) of G/P after low-rank isomorphisms, and whether any applied."""
    J = set(J)
    if family in ("B", "C") and rank == 1:
        return [("A", 1, frozenset(J))], True
    if family == "B" and rank == 2:
        # B2 short root alpha_2 is C2's alpha_1
        return [("C", 2, frozenset({3 - j for j in J}))], True
    if family == "D" and rank == 1:
        return [], True
    if family == "D" and rank == 2:
        return [("A", 1, frozenset({1} & J)), ("A", 1, frozenset({1} if 2 in J else ()))], True
    if family == "D" and rank == 3:
        # D3 branch node alpha_1 is the middle node of A3
        relabel = {1: 2, 2: 1, 3: 3}
        return [("A", 3, frozenset(relabel[j] for j in J))], True
    return [(family, rank, frozenset(J))], False


# -- torsion data --------------------------------------------------------

@lru_cache(maxsize=None)
def _tau(family, rank):
    """(tau, how) for a simple type: computed when the Weyl group is small enough."""
    if family == "A":
        return 1, "table"
    rs = build_root_system(family, rank)
    if rs.order <= TAU_COMPUTE_LIMIT:
        return torsion_index_full_flag(rs, certify=False).tau, "computed"
    t = reference_tau(family, rank)
    return t, "reference"


def _component_type(rs, comp):
    fam, rk = classify_component(rs, comp)
    if fam == "C" and rk == 2 and rs.family == "B":
        fam = "B"
    return fam, rk


def _levi_types(rs, J):
    return [(comp, _component_type(rs, comp)) for comp in dynkin_components(rs, J)]


def _tau_bound(family, rank, J):
    """Certificate dict for ceil(tau(K/T) / tau(H/T)), or None when a value is missing."""
    rs = build_root_system(family, rank)
    tauK, howK = _tau(family, rank)
    if tauK is None:
        return None
    tauH = 1
    comps = []
    for comp, (fam, rk) in _levi_types(rs, J):
        t, how = _tau(fam, rk)
        if t is None:
            return None
        tauH *= t
        comps.append({"nodes": list(comp), "type": f"{fam}{rk}", "tau": str(t), "source": how})
    bound = tau_quotient_lower_bound(tauK, tauH)
    return {"kind": "tau_bound", "group": f"{family}{rank}", "tau_K": str(tauK), "source_K": howK,
            "levi": comps, "tau_H": str(tauH), "bound": str(bound), "fires": bound > 1}


def _point_certificate(k):
    if k > POINT_CERT_LIMIT:
        return None
    _, cert = point_bundle_sp(k)
    return {"kind": "point_bundle", "k": k, "weights": [list(w) for w in cert.bundle.weights],
            "top": str(cert.top), "coefficient": str(cert.coefficient),
            "rewrites": len(cert.rewrites)}


def _spin_certificate(k):
    spin = spin_obstruction(k)
    c1 = chern_first_lag(tangent_bundle_lag(k))
    coeff = c1.coefficient({1})
    return {"kind": "spin_parity", "k": k, "spin": spin.to_payload(),
            "c1_tangent": str(c1), "c1_tangent_mod_2": coeff % 2,
            "clash": f"c1(TX) = c1 of the two point bundles ≡ 0 (mod 2), "
                     f"but c1(TX) = {coeff}*u_one with {coeff} odd"}


# -- rules ---------------------------------------------------------------

class _Outcome:
    """Per-target status, rule hits and certificate."""

    def __init__(self):
        self.status = {POINT: UNKNOWN, DIAGONAL: UNKNOWN}
        self.rules = {POINT: [], DIAGONAL: []}
        self.cert = {POINT: None, DIAGONAL: None}

    def set(self, target, status, rid, cert=None):
        old = self.status[target]
        if status != UNKNOWN and old != UNKNOWN and old != status:
            raise InternalInconsistency(f"rule {rid} says {status} but earlier rules said {old}")
        if rid not in [r.id for r in self.rules[target]]:
            self.rules[target].append(_hit(rid))
        if status != UNKNOWN:
            self.status[target] = status
        if cert is not None and self.cert[target] is None:
            self.cert[target] = cert

    def both(self, status, rid, cert=None):
        self.set(POINT, status, rid, cert)
        self.set(DIAGONAL, status, rid, cert)


def _is_type_a(types):
    return all(fam == "A" for _, (fam, _) in types)


def _decide_factor(family, rank, J, out):
    if family == "A":
        out.both(REPRESENTABLE, "R1")
        return
    rs = build_root_system(family, rank)
    if family == "C":
        k = rank
        tail = not J or J == frozenset(range(min(J), k + 1))
        if tail:
            out.both(REPRESENTABLE, "R2")
        elif k not in J:
            out.set(POINT, REPRESENTABLE, "R2'")
            out.set(DIAGONAL, UNKNOWN, "R2'")
        else:
            cert = _tau_bound(family, rank, J)
            out.set(POINT, UNKNOWN, "RC", cert)
            out.set(DIAGONAL, UNKNOWN, "RC", cert)
        if J == frozenset(range(1, k)):
            out.set(POINT, REPRESENTABLE, "R6", _point_certificate(k))
            if k % 4 == 2:
                out.set(DIAGONAL, NOT_REPRESENTABLE, "R6", _spin_certificate(k))
            else:
                out.set(DIAGONAL, UNKNOWN, "R6")
        return
    if family in ("E", "F", "G"):
        cert = _tau_bound(family, rank, J)
        if cert is not None and not cert["fires"]:
            raise InternalInconsistency(f"tau bound fails to fire on {family}{rank} J={sorted(J)}")
        out.both(NOT_REPRESENTABLE, "R3", cert)
        return
    # types B and D
    types = _levi_types(rs, J)
    if _is_type_a(types):
        cert = _tau_bound(family, rank, J)
        if cert is not None and not cert["fires"]:
            cert = None
        out.both(NOT_REPRESENTABLE, "R4", cert)
        return
    quadric = J == frozenset(range(2, rank + 1))
    dim = 2 * rank - 1 if family == "B" else 2 * rank - 2
    cert = _tau_bound(family, rank, J)
    if cert is not None and cert["fires"]:
        out.set(POINT, NOT_REPRESENTABLE, "R5", cert)
    elif quadric and dim in (5, 6):
        raise InternalInconsistency(f"Q{dim} should be settled by a tau bound")
    else:
        out.set(POINT, UNKNOWN, "R5")
    if quadric and family == "B":
        out.set(DIAGONAL, NOT_REPRESENTABLE, "R5")
    else:
        out.set(DIAGONAL, UNKNOWN, "R5")


def _decide_all(q):
    out = _Outcome()
    factors, changed = _normalise(q.family, q.rank, q.parabolic)
    if changed:
        out.set(POINT, UNKNOWN, "LR")
        out.set(DIAGONAL, UNKNOWN, "LR")
    if not factors:
        out.both(REPRESENTABLE, "R0")
        return out
    # a product is representable when every factor is; one bad factor does
    # not settle the product, so only single factors reach the other rules
    if len(factors) > 1:
        if all(f == "A" for f, _, _ in factors):
            out.both(REPRESENTABLE, "R1")
        return out
    _decide_factor(*factors[0], out)
    # pullback along the diagonal in both directions
    if out.status[DIAGONAL] == REPRESENTABLE:
        out.set(POINT, REPRESENTABLE, "PB")
    if out.status[POINT] == NOT_REPRESENTABLE:
        out.set(DIAGONAL, NOT_REPRESENTABLE, "PB")
    _check_pullback(factors[0], out)
    return out


def _check_pullback(factor, out):
    """Point of G/B not representable => no representable point for type-A parabolics."""
    family, rank, J = factor
    if family in ("B", "D", "E", "F", "G") and out.status[POINT] == REPRESENTABLE:
        rs = build_root_system(family, rank)
        if _is_type_a(_levi_types(rs, J)):
            raise InternalInconsistency(f"representable point on {family}{rank}/P with type-A Levi")


def decide(q):
    out = _decide_all(q)
    return Verdict(q, out.status[q.target], tuple(out.rules[q.target]), out.cert[q.target])


# -- certificate replay --------------------------------------------------

def replay_certificate(cert):
    """Recompute a certificate from scratch and compare."""
    if cert is None:
        return True
    kind = cert["kind"]
    if kind == "point_bundle":
        _, pc = point_bundle_sp(cert["k"])
        return pc.replay() and _point_certificate(cert["k"]) == cert and pc.holds
    if kind == "spin_parity":
        k = cert["k"]
        fresh = _spin_certificate(k)
        return (fresh == cert and spin_obstruction(k).replay()
                and cert["spin"]["conclusion"] == "a ≡ 0 (mod 2)" and cert["c1_tangent_mod_2"] == 1)
    if kind == "tau_bound":
        _tau.cache_clear()
        fam, rank = cert["group"][0], int(cert["group"][1:])
        J = set()
        for comp in cert["levi"]:
            J.update(comp["nodes"])
        fresh = _tau_bound(fam, rank, J)
        if fresh != cert:
            return False
        tauH = 1
        for comp in cert["levi"]:
            tauH *= int(comp["tau"])
        if str(tauH) != cert["tau_H"]:
            return False
        return str(tau_quotient_lower_bound(int(cert["tau_K"]), tauH)) == cert["bound"]
    raise ValueError(f"unknown certificate kind {kind!r}")


# -- table ---------------------------------------------------------------

COLUMNS = ("A", "B", "C", "D", "exceptional")

ROWS = (
    "point for G/B",
    "point for G/P (P of type A)",
    "point for G/P (otherwise)",
    "diagonal for G/B",
    "diagonal for G/P (P of type A)",
    "diagonal for G/P (otherwise)",
)

# smallest instantiation per (kind of parabolic, column); see ``table_suite``
_CELLS = {
    "B": {"A": ("A", 1, ()), "B": ("B", 3, ()), "C": ("C", 2, ()),
          "D": ("D", 4, ()), "exceptional": ("G", 2, ())},
    "A": {"A": ("A", 2, (1,)), "B": ("B", 3, (1,)), "C": ("C", 2, (1,)),
          "D": ("D", 4, (1,)), "exceptional": ("G", 2, (1,))},
    "other": {"A": ("A", 3, (1, 3)), "B": ("B", 5, (3, 4, 5)), "C": ("C", 3, (1, 3)),
              "D": ("D", 5, (2, 3, 4, 5)), "exceptional": ("F", 4, (2, 3))},
}
# the type-A diagonal cell for C at rank 2 is Sp(2)/U(2), settled by R6
_DIAGONAL_OVERRIDES = {("A", "C"): ("C", 3, (1,))}

NAMED = {
    "OG1": ("D", 1, ()),
    "OG2": ("A", 1, ()),
    "OG3": ("D", 3, (1, 2)),
    "OG4": ("D", 4, (1, 2, 3)),
    "Q1": ("A", 1, ()),
    "Q2": ("D", 2, ()),
    "Q3": ("B", 2, (2,)),
    "Q4": ("D", 3, (2, 3)),
    "Q5": ("B", 3, (2, 3)),
    "Q6": ("D", 4, (2, 3, 4)),
}


def named_query(name, target=POINT):
    if name not in NAMED:
        raise InvalidQuery(f"unknown named space {name!r}; known: {', '.join(NAMED)}")
    fam, rank, J = NAMED[name]
    return Query(fam, rank, frozenset(J), target, name)


def table_suite():
    """One verdict per summary-table cell, then the named quadrics and orthogonal Grassmannians.

    Returns (row label, column, Query, Verdict) tuples; named cases use the
    name as the row label and "named" as the column.
    """
    out = []
    kinds = ("B", "A", "other")
    for r, row in enumerate(ROWS):
        target = POINT if r < 3 else DIAGONAL
        kind = kinds[r % 3]
        for col in COLUMNS:
            spec = _CELLS[kind][col]
            if target == DIAGONAL:
                spec = _DIAGONAL_OVERRIDES.get((kind, col), spec)
            fam, rank, J = spec
            q = Query(fam, rank, frozenset(J), target)
            out.append((row, col, q, decide(q)))
    for name in NAMED:
        q = named_query(name)
        out.append((name, "named", q, decide(q)))
    return out


def format_table_line(row, col, q, v):
    return f"{row} | {col} | {q} | {v.status} | {','.join(v.rule_ids)}"


__all__ = [
    "Query", "Verdict", "RuleHit", "decide", "replay_certificate", "table_suite",
    "named_query", "format_table_line", "CITATIONS", "NAMED", "ROWS", "COLUMNS",
    "POINT", "DIAGONAL", "REPRESENTABLE", "NOT_REPRESENTABLE", "UNKNOWN",
]

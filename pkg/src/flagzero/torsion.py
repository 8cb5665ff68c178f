"""Torsion indices of full flag manifolds K/T.

The image of H*(BT) -> H*(K/T) is the subring generated by the degree-2
classes c(omega_i).  Its degree-d part S_d is tracked as an integer
lattice in the Schubert basis of H^{2d}(K/T):

    S_0 = Z X_e,    S_{d+1} = span{ c(omega_i) * v : v in basis(S_d) }.

At the top degree n = #positive roots, S_n = tau * Z * X_{w0}, and tau is
the torsion index.

The product of the positive roots lies in S_n and equals |W| X_{w0}, so tau
divides |W|.  Running the recursion on S_d + p^m Z^N, with p^m the exact
power of p dividing |W|, therefore ends at p^{v_p(tau)} Z X_{w0} while all
entries stay below p^m.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InternalInconsistency
from .lattice import IntegerLattice, local_echelon
from .rootsys import Weight, classify_component, dynkin_components, levi_root_system
from .schubert_basis import _chevalley, pairing_table, weyl_group

# Published torsion indices of simply-connected simple groups, used only
# where the computation is out of desk-scale reach.
_EXCEPTIONAL_TAU = {("G", 2): 2, ("F", 4): 6, ("E", 6): 6, ("E", 7): 12, ("E", 8): 2880}


def reference_tau(family, rank):
    """Tabulated torsion index, or None when no table entry covers the type."""
    if family in ("A", "C") or (family, rank) == ("B", 2):
        return 1
    if (family, rank) == ("D", 3):
        return 1
    if family in ("B", "D"):
        m = 2 * rank + 1 if family == "B" else 2 * rank
        if 7 <= m <= 12:
            return 2
        if m in (13, 14):
            return 4
        if m in (15, 16):
            return 8
        return None
    return _EXCEPTIONAL_TAU.get((family, rank))


@dataclass(frozen=True)
class TorsionIndexResult:
    root_system: str
    family: str
    rank: int
    lattice: str
    tau: int
    ranks: tuple
    certificate: tuple  # ((exponents of omega_1..omega_r), top coefficient)
    generators: tuple
    elapsed: float = field(default=0.0, compare=False)

    def to_payload(self):
        """JSON-ready form, without timing metadata."""
        return {
            "root_system": self.root_system,
            "family": self.family,
            "rank": self.rank,
            "lattice": self.lattice,
            "tau": str(self.tau),
            "ranks": list(self.ranks),
            "generators": [list(g) for g in self.generators],
            "certificate": [{"exponents": list(e), "coeff": str(c)} for e, c in self.certificate],
        }

    @classmethod
    def from_payload(cls, payload, elapsed=0.0):
        return cls(
            root_system=payload["root_system"],
            family=payload["family"],
            rank=payload["rank"],
            lattice=payload["lattice"],
            tau=int(payload["tau"]),
            ranks=tuple(payload["ranks"]),
            generators=tuple(tuple(g) for g in payload["generators"]),
            certificate=tuple((tuple(c["exponents"]), int(c["coeff"]))
                              for c in payload["certificate"]),
            elapsed=elapsed,
        )


def _top_coefficient(group, tables, exponents, order=None):
    """Coefficient of X_{w0} in prod_i g_i^exponents[i], folded in the given factor order."""
    factors = []
    for i, a in enumerate(exponents):
        factors.extend([i] * a)
    if order == "reversed":
        factors.reverse()
    coeffs = {0: 1}
    for i in factors:
        coeffs = _chevalley(group, tables[i], coeffs)
        if not coeffs:
            return 0
    top = len(group) - 1
    return coeffs.get(top, 0)


def _compositions(n, r):
    for bars in combinations(range(n + r - 1), r - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(n + r - 1 - prev - 1)
        yield tuple(out)


def _certificate(group, tables, n, tau, seed=0, tries=400):
    """Monomials of degree n whose top coefficients have gcd exactly tau."""
    r = len(tables)
    g = 0
    chosen = []

    def consider(exps):
        nonlocal g
        c = _top_coefficient(group, tables, exps)
        if c and math.gcd(g, c) != g:
            g = math.gcd(g, c)
            chosen.append((exps, c))
        return g == tau

    rng = random.Random(seed)
    candidates = [tuple(n if j == i else 0 for j in range(r)) for i in range(r)]
    for exps in candidates:
        if consider(exps):
            return tuple(chosen)
    for _ in range(tries):
        cuts = sorted(rng.randint(0, n) for _ in range(r - 1))
        exps = tuple(b - a for a, b in zip([0] + cuts, cuts + [n]))
        if consider(exps):
            return tuple(chosen)
    for exps in _compositions(n, r):
        if consider(exps):
            return tuple(chosen)
    raise InternalInconsistency(f"monomial gcd {g} never reached the lattice value {tau}")


# Prime dividing no Weyl group order, for the rank pass.
_RANK_PRIME = 32003


def _factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _cover_matrices(group, tables):
    """mats[d][i]: the Chevalley map of generator i from degree d to d+1, as a dense matrix."""
    layers = group.layers
    pos = {}
    for layer in layers:
        for j, idx in enumerate(layer):
            pos[idx] = j
    cover = group.cover_table()
    mats = []
    for d in range(len(layers) - 1):
        per = []
        for t in tables:
            a = np.zeros((len(layers[d]), len(layers[d + 1])), dtype=np.int64)
            for j, idx in enumerate(layers[d]):
                for root, target in cover[idx]:
                    a[j, pos[target]] += t[root]
            per.append(a)
        mats.append(per)
    return mats


def _local_pass(mats, p, m):
    """Valuation data of S_d + p^m Z^N in every degree.

    Returns a list, per degree d >= 1, of the column valuations; the top
    entry gives v_p(tau) capped at m.
    """
    q = p ** m
    basis = np.ones((1, 1), dtype=np.int64)
    out = []
    for per in mats:
        # one generator often spans already; otherwise take all at once
        rows, vals = local_echelon((basis @ per[0]) % q, p, m)
        if any(vals) and len(per) > 1:
            rest = np.vstack([(basis @ a) % q for a in per[1:]])
            rows, vals = local_echelon(rest, p, m, rows)
        out.append(vals)
        if rows:
            basis = np.array([rows[c] for c in sorted(rows)], dtype=np.int64)
        else:
            basis = np.zeros((1, per[0].shape[1]), dtype=np.int64)
    return out


def _exact_tau(group, tables, n):
    basis = [{0: 1}]
    ranks = [1]
    for d in range(n):
        layer = group.layers[d + 1]
        pos = {idx: j for j, idx in enumerate(layer)}
        lat = IntegerLattice(len(layer))
        for v in basis:
            for t in tables:
                vec = [0] * len(layer)
                for idx, c in _chevalley(group, t, v).items():
                    vec[pos[idx]] = c
                lat.add(vec)
            if lat.is_everything():
                break
        basis = [{layer[j]: c for j, c in enumerate(row) if c} for row in lat.hnf()]
        ranks.append(lat.rank)
    if ranks[-1] != 1 or not basis:
        raise InternalInconsistency(f"top-degree span has rank {ranks[-1]}, expected 1")
    return next(iter(basis[0].values())), ranks


# Up to this Weyl group order the exact route is fast; beyond it the entries
# of the integer echelon forms grow quickly.
EXACT_LIMIT = 400


def torsion_index_full_flag(rs, generators=None, workers=1, certify=True, method="auto"):
    """Exact torsion index of K/T for the simply-connected group of ``rs``.

    By default tau is assembled prime by prime: for each p dividing |W| the
    recursion runs on S_d + p^m Z^N with p^m the exact power dividing |W|,
    and the per-degree ranks are certified by full rank modulo some prime.
    ``method="exact"`` instead tracks the lattices S_d over Z in Hermite
    normal form, which "auto" selects for |W| <= EXACT_LIMIT.  Custom
    ``generators`` always take the exact route, since the divisibility
    tau | |W| is only known when they span the weight lattice.
    """
    if method not in ("auto", "exact", "modular"):
        raise ValueError(f"unknown method {method!r}")
    start = time.perf_counter()
    group = weyl_group(rs)
    n = rs.num_positive_roots
    custom = generators is not None
    if generators is None:
        generators = [Weight.fundamental(rs.rank, i) for i in range(1, rs.rank + 1)]
    tables = [pairing_table(rs, g) for g in generators]

    if method == "auto":
        method = "exact" if len(group) <= EXACT_LIMIT else "modular"
    if custom or method == "exact":
        tau, ranks = _exact_tau(group, tables, n)
    else:
        mats = _cover_matrices(group, tables)
        moduli = sorted(_factor(len(group)).items())
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                passes = list(pool.map(lambda pm: _local_pass(mats, *pm), moduli))
        else:
            passes = [_local_pass(mats, p, m) for p, m in moduli]
        full = [1] + [len(layer) for layer in group.layers[1:]]
        # unit pivots count the rank mod p, a lower bound for the rational rank
        ranks = max(([1] + [sum(1 for v in vals if v == 0) for vals in local] for local in passes),
                    key=sum, default=[1])
        if ranks != full:
            local = _local_pass(mats, _RANK_PRIME, 1)
            ranks = [1] + [sum(1 for v in vals if v == 0) for vals in local]
        if ranks != full:
            raise InternalInconsistency(f"degree-2 classes fail to span rationally: ranks {ranks}")
        tau = 1
        for (p, _), local in zip(moduli, passes):
            tau *= p ** local[-1][0]

    cert = _certificate(group, tables, n, tau) if certify else ()
    return TorsionIndexResult(
        root_system=rs.name,
        family=rs.family or "",
        rank=rs.rank,
        lattice=rs.lattice,
        tau=tau,
        ranks=tuple(ranks),
        certificate=cert,
        generators=tuple(g.coords for g in generators),
        elapsed=time.perf_counter() - start,
    )


def recompute_certificate(rs, result):
    """Recompute every certificate coefficient with the factors multiplied in reverse order."""
    group = weyl_group(rs)
    tables = [pairing_table(rs, Weight(g)) for g in result.generators]
    return [(e, _top_coefficient(group, tables, e, order="reversed")) for e, _ in result.certificate]


def verify_result(rs, result):
    """Replay a TorsionIndexResult: gcd of the certificate equals tau and each entry recomputes."""
    if not result.certificate:
        return False
    g = 0
    for (e, c), (e2, c2) in zip(result.certificate, recompute_certificate(rs, result)):
        if e != e2 or c != c2 or c % result.tau:
            return False
        g = math.gcd(g, c)
    return g == result.tau


def levi_tau(rs, subset, compute_limit=1200):
    """Torsion index of the Levi H/T as the product over Dynkin components.

    Components whose Weyl group has at most ``compute_limit`` elements are
    computed; larger ones fall back to :func:`reference_tau`.  Returns
    (tau, sources) where sources lists (component, type, tau, how).
    """
    total = 1
    sources = []
    for comp in dynkin_components(rs, subset):
        fam, rk = classify_component(rs, comp)
        sub = levi_root_system(rs, comp)
        if sub.order <= compute_limit:
            t = torsion_index_full_flag(sub, certify=False).tau
            how = "computed"
        else:
            t = reference_tau(fam, rk)
            how = "reference"
            if t is None:
                return None, sources
        total *= t
        sources.append((comp, f"{fam}{rk}", t, how))
    return total, sources


def tau_quotient_lower_bound(tauK, tauH):
    """Lower bound ceil(tauK / tauH) for tau_{K/H}, from tau_{K/T} <= tau_{H/T} tau_{K/H}."""
    if tauK <= 0 or tauH <= 0:
        raise ValueError("torsion indices are positive")
    return -(-tauK // tauH)


def obstruction_fires(tauK, tauH):
    return tau_quotient_lower_bound(tauK, tauH) > 1


def u_bound_low(k):
    """k - floor(log2(k(k+1)/2 + 1)), the smaller of the two candidate values of u(k)."""
    if k < 2:
        raise ValueError("u(k) is considered for k >= 2")
    m = k * (k + 1) // 2 + 1
    return k - (m.bit_length() - 1)


def u_criterion(k, table):
    """u(k-1) < u(k) from a table of exact values; None if either is missing."""
    if k - 1 not in table or k not in table:
        return None
    return table[k - 1] < table[k]


__all__ = [
    "TorsionIndexResult", "torsion_index_full_flag", "recompute_certificate",
    "verify_result", "levi_tau", "reference_tau", "tau_quotient_lower_bound",
    "obstruction_fires", "u_bound_low", "u_criterion",
]

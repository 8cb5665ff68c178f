"""Line-bundle sums over flag manifolds and their Chern classes.

The tangent bundle of K/H splits, after pulling back to K/T, as the sum of
the line bundles L_beta over the positive roots beta of K that are not
roots of H.  Over Sp(k)/U(k) a bundle is given by a W(U(k))-stable
multiset of linear forms in x_1..x_k; its Chern classes are symmetric in
the x's and are evaluated in the Lag ring.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInconsistency, NamespaceMismatch, NotInvariant
from .lag_ring import LagElement, generators, normal_form
from .polyring import IntPoly, symmetric_to_elementary, x_names
from .rootsys import Weight, build_root_system, levi_positive_roots, parabolic_order, validate_parabolic
from .schubert_basis import monomial_class

FULL_FLAG = "K/T"
LAGRANGIAN = "Sp(k)/U(k)"
_SPACE_ALIASES = {"sp(k)/u(k)": LAGRANGIAN, "lagrangian": LAGRANGIAN,
                  "k/t": FULL_FLAG, "full_flag": FULL_FLAG}


def _as_int(v):
    v = Fraction(v)
    if v.denominator != 1:
        raise ValueError(f"non-integral coordinate {v}")
    return int(v)


@dataclass(frozen=True)
class LineBundleSum:
    """Sum of line bundles, one per weight.

    For ``space == LAGRANGIAN`` the weights are x-coordinate vectors of
    length k; for ``FULL_FLAG`` they are fundamental-weight coordinates on
    the root system named by ``root_system``.
    """

    weights: tuple
    space: str
    k: int
    root_system: str = ""

    @property
    def rank(self):
        return len(self.weights)

    @property
    def ambient(self):
        if self.space == LAGRANGIAN:
            return f"Sp({self.k})/U({self.k})"
        return f"{self.root_system}/T"

    def is_invariant(self):
        """W(U(k))-stability: the multiset is closed under swapping x_i and x_{i+1}."""
        counts = Counter(self.weights)
        for i in range(self.k - 1):
            swapped = Counter()
            for w, m in counts.items():
                w = list(w)
                w[i], w[i + 1] = w[i + 1], w[i]
                swapped[tuple(w)] += m
            if swapped != counts:
                return False
        return True

    def to_json(self):
        return {"ambient": self.ambient, "space": self.space, "k": self.k,
                "root_system": self.root_system, "weights": [list(w) for w in self.weights]}

    @classmethod
    def from_json(cls, data):
        try:
            space = _SPACE_ALIASES[str(data["space"]).lower()]
            k = int(data["k"])
            weights = tuple(tuple(_as_int(c) for c in w) for w in data["weights"])
        except KeyError as exc:
            raise NamespaceMismatch(f"bundle file needs a space of {LAGRANGIAN} or {FULL_FLAG}, "
                                    f"an integer k and a weights list (problem: {exc})")
        return cls(weights, space, k, data.get("root_system", ""))


def lagrangian_bundle(k, weights):
    weights = tuple(tuple(_as_int(c) for c in w) for w in weights)
    for w in weights:
        if len(w) != k:
            raise NamespaceMismatch(f"weight {w} has {len(w)} coordinates, expected {k}")
    return LineBundleSum(weights, LAGRANGIAN, k)


def save_bundle(bundle, path):
    with open(path, "w") as fh:
        json.dump(bundle.to_json(), fh, indent=1)


def load_bundle(path):
    with open(path) as fh:
        return LineBundleSum.from_json(json.load(fh))


def tangent_roots(rs, parabolic=()):
    """Positive roots of rs outside the Levi of ``parabolic``, as Weights."""
    J = validate_parabolic(rs, parabolic)
    levi = set(levi_positive_roots(rs, J))
    return [rs.root_weight(b) for b in rs.positive_roots if b not in levi]


def tangent_bundle_lag(k):
    """T(Sp(k)/U(k)) in x-coordinates: the roots 2x_i and x_i + x_j."""
    rs = build_root_system("C", k) if k >= 2 else None
    if rs is None:
        return lagrangian_bundle(1, [(2,)])
    roots = tangent_roots(rs, range(1, k))
    return lagrangian_bundle(k, [rs.to_ambient(w) for w in roots])


def tangent_bundle_flag(rs, parabolic=()):
    return LineBundleSum(tuple(w.coords for w in tangent_roots(rs, parabolic)),
                         FULL_FLAG, rs.rank, rs.name)


def _check_lag(bundle):
    if bundle.space != LAGRANGIAN:
        raise NamespaceMismatch(f"expected a bundle over Sp(k)/U(k), got one over {bundle.ambient}")
    if not bundle.is_invariant():
        raise NotInvariant(f"not W-invariant: the weights over {bundle.ambient} "
                           "are not closed under permuting x-indices")


def _top_polynomial(bundle):
    names = x_names(bundle.k)
    out = IntPoly.const(names, 1)
    for w in bundle.weights:
        out = out * IntPoly.linear(names, dict(zip(names, w)))
    return out


def chern_top_lag(bundle, trace=None):
    """Top Chern class of a bundle over Sp(k)/U(k), in the squarefree basis.

    If ``trace`` is a list, the rewrites of the final normal form are
    appended to it.
    """
    _check_lag(bundle)
    f = _top_polynomial(bundle)
    g = symmetric_to_elementary(f, bundle.k)
    return normal_form(g, bundle.k, trace=trace)


def chern_first_lag(bundle):
    _check_lag(bundle)
    names = x_names(bundle.k)
    total = [sum(w[i] for w in bundle.weights) for i in range(bundle.k)]
    g = symmetric_to_elementary(IntPoly.linear(names, dict(zip(names, total))), bundle.k)
    return normal_form(g, bundle.k)


def chern_top_flag(rs, weights):
    """Top Chern class of a sum of line bundles on K/T, in the Schubert basis."""
    return monomial_class(rs, [w if isinstance(w, Weight) else Weight(tuple(w)) for w in weights])


def euler_characteristic(rs, parabolic=()):
    """|W| / |W_J|, the number of Bruhat cells of K/H."""
    J = validate_parabolic(rs, parabolic)
    total = rs.order
    sub = parabolic_order(rs, J)
    if total % sub:
        raise InternalInconsistency(f"|W_J| = {sub} does not divide |W| = {total}")
    return total // sub


@dataclass(frozen=True)
class PointCertificate:
    k: int
    bundle: LineBundleSum
    top: LagElement
    coefficient: int
    rewrites: tuple

    @property
    def holds(self):
        u_top = generators(self.k)[0]
        return self.top == u_top and self.coefficient == 1

    def replay(self):
        trace = []
        top = chern_top_lag(self.bundle, trace)
        return top == self.top and tuple(trace) == self.rewrites and self.holds

    def to_payload(self):
        return {
            "k": self.k,
            "bundle": self.bundle.to_json(),
            "top": str(self.top),
            "coefficient": str(self.coefficient),
            "rewrites": [{"monomial": list(e), "squared": j, "coeff": str(c)}
                         for e, j, c in self.rewrites],
        }


def point_bundle_sp(k):
    """The bundle sum of L_{x_i} and L_{x_i + x_j} (i < j) over Sp(k)/U(k).

    Returns (bundle, certificate); the certificate records the computed top
    Chern class, whose equality with u_top makes a generic section vanish
    on a single point class.
    """
    if k < 1:
        raise ValueError("k must be positive")
    weights = [tuple(int(j == i) for j in range(k)) for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            weights.append(tuple(int(m in (i, j)) for m in range(k)))
    bundle = lagrangian_bundle(k, weights)
    trace = []
    top = chern_top_lag(bundle, trace)
    coeff = top.coefficient(range(1, k + 1))
    return bundle, PointCertificate(k, bundle, top, coeff, tuple(trace))


__all__ = [
    "LineBundleSum", "FULL_FLAG", "LAGRANGIAN", "lagrangian_bundle", "save_bundle", "load_bundle",
    "tangent_roots", "tangent_bundle_lag", "tangent_bundle_flag", "chern_top_lag",
    "chern_first_lag", "chern_top_flag", "euler_characteristic", "PointCertificate",
    "point_bundle_sp",
]

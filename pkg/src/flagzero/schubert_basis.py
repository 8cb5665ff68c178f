"""Integral Schubert classes of H*(K/T) and the Chevalley rule.

Multiplication is only ever by degree-2 classes c(lambda):

    c(lambda) * X_w = sum over up-covers w -> w s_beta of <lambda, beta^vee> X_{w s_beta}

which is all the torsion-index computation needs.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DegreeError, NamespaceMismatch
from .rootsys import Weight, enumerate_weyl


@lru_cache(maxsize=32)
def weyl_group(rs):
    """Enumerated Weyl group with its cover table, cached per root system."""
    group = enumerate_weyl(rs)
    group.cover_table()
    return group


class SchubertExpr:
    """Homogeneous integer combination of Schubert classes X_w.

    ``coeffs`` maps element indices of the enumerated Weyl group to ints.
    """

    __slots__ = ("group", "degree", "coeffs")

    def __init__(self, group, degree, coeffs):
        self.group = group
        self.degree = degree
        clean = {}
        for n, c in coeffs.items():
            if c:
                if group.lengths[n] != degree:
                    raise DegreeError(f"X_{group[n]} has degree {group.lengths[n]}, not {degree}")
                clean[n] = c
        self.coeffs = clean

    @property
    def rs(self):
        return self.group.rs

    @classmethod
    def unit(cls, rs):
        return cls(weyl_group(rs), 0, {0: 1})

    @classmethod
    def basis(cls, w):
        group = weyl_group(w.rs)
        return cls(group, w.length, {group.index_of(w): 1})

    @classmethod
    def from_elements(cls, rs, mapping):
        """Build from {WeylElement: coeff}; all elements must share one length."""
        group = weyl_group(rs)
        lengths = {w.length for w in mapping}
        if len(lengths) > 1:
            raise DegreeError("Schubert expressions must be homogeneous")
        degree = lengths.pop() if lengths else 0
        return cls(group, degree, {group.index_of(w): c for w, c in mapping.items()})

    def is_zero(self):
        return not self.coeffs

    def items(self):
        """(WeylElement, coeff) pairs in group order."""
        return [(self.group[n], self.coeffs[n]) for n in sorted(self.coeffs)]

    def coefficient(self, w):
        return self.coeffs.get(self.group.index_of(w), 0)

    def __eq__(self, other):
        if not isinstance(other, SchubertExpr):
            return NotImplemented
        if self.rs != other.rs:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rs, self.degree, frozenset(self.coeffs.items())))

    def _check(self, other):
        if self.rs != other.rs:
            raise NamespaceMismatch("Schubert expressions over different root systems")
        if not (self.is_zero() or other.is_zero()) and self.degree != other.degree:
            raise DegreeError("cannot add Schubert expressions of different degrees")

    def __add__(self, other):
        self._check(other)
        degree = self.degree if not self.is_zero() else other.degree
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return SchubertExpr(self.group, degree, out)

    def __neg__(self):
        return SchubertExpr(self.group, self.degree, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return SchubertExpr(self.group, self.degree, {k: n * c for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in self.items():
            body = f"X[{w}]"
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"SchubertExpr({self})"

    def to_json(self):
        return [{"word": list(w.word), "coeff": str(c)} for w, c in self.items()]

    @classmethod
    def from_json(cls, rs, data):
        return cls.from_elements(
            rs, {rs.element_from_word(tuple(t["word"])): int(t["coeff"]) for t in data})


def pairing_table(rs, weight):
    """<weight, beta^vee> for every positive root beta, in root order."""
    return [sum(a * c for a, c in zip(weight.coords, cv)) for cv in rs.coroots]


def _chevalley(group, pairings, coeffs):
    table = group.cover_table()
    out = {}
    for n, c in coeffs.items():
        for p, t in table[n]:
            m = pairings[p]
            if m:
                out[t] = out.get(t, 0) + m * c
    return {n: c for n, c in out.items() if c}


def chevalley_mul(weight, expr):
    """c(weight) * expr via the Chevalley cover rule; raises the degree by one."""
    rs = expr.rs
    if weight.rank != rs.rank:
        raise NamespaceMismatch(f"weight of rank {weight.rank} on {rs.name}")
    if expr.degree >= rs.num_positive_roots and not expr.is_zero():
        raise DegreeError(f"top degree exceeded: degree {expr.degree} is already top")
    coeffs = _chevalley(expr.group, pairing_table(rs, weight), expr.coeffs)
    return SchubertExpr(expr.group, expr.degree + 1, coeffs)


def weight_class(rs, weight):
    """Image of a weight under the characteristic map: sum_i <weight, alpha_i^vee> X_{s_i}."""
    return chevalley_mul(weight, SchubertExpr.unit(rs))


def monomial_class(rs, weights):
    """c(w_1) * ... * c(w_d) * X_e, folding the Chevalley rule left to right."""
    weights = list(weights)
    if len(weights) > rs.num_positive_roots:
        raise DegreeError(
            f"top degree exceeded: {len(weights)} factors on {rs.num_positive_roots} positive roots")
    expr = SchubertExpr.unit(rs)
    for w in weights:
        expr = chevalley_mul(w, expr)
    return expr


def fundamental_monomial(rs, exponents):
    """monomial_class for prod_i omega_i^exponents[i]."""
    weights = []
    for i, a in enumerate(exponents, 1):
        weights.extend([Weight.fundamental(rs.rank, i)] * a)
    return monomial_class(rs, weights)


__all__ = [
    "SchubertExpr", "weyl_group", "pairing_table", "chevalley_mul",
    "weight_class", "monomial_class", "fundamental_monomial",
]

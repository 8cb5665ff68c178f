"""Integral cohomology of the Lagrangian Grassmannian Sp(k)/U(k).

H*(Sp(k)/U(k)) = Z[c_1..c_k] / (q_1, .., q_k),  q_j = e_j(x_1^2, .., x_k^2),

where c_i = e_i(x).  Expanding q_j = 0 gives the rewrite rule

    c_j^2 -> 2 * sum_{i >= 1} (-1)^(i+1) c_{j-i} c_{j+i}     (c_0 = 1, c_m = 0 for m > k)

and the squarefree monomials c_S, S a subset of {1..k}, are a Z-basis.
Each rewrite raises the spread sum_j j^2 a_j of a monomial, so repeated
rewriting terminates.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import DegreeError, HypothesisFails, NamespaceMismatch, ParseError
from .polyring import IntPoly


def _subset_str(s):
    return "c{" + ",".join(str(i) for i in sorted(s)) + "}"


def _render(k, coeffs, mod2=False):
    if not coeffs:
        return "0"
    out = ""
    for s in sorted(coeffs, key=lambda s: (sum(s), sorted(s))):
        c = 1 if mod2 else coeffs[s]
        body = _subset_str(s) if s else "1"
        if abs(c) != 1:
            body = f"{abs(c)}*{body}" if s else str(abs(c))
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


_TERM = re.compile(r"^(?:(\d+)\*)?c\{([\d,\s]*)\}$|^(\d+)$")


def _parse_terms(text):
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    pieces = re.split(r"\s*([+-])\s*", text)
    if pieces[0] == "":
        pieces = pieces[1:]
    else:
        pieces = ["+"] + pieces
    out = {}
    for sign, term in zip(pieces[0::2], pieces[1::2]):
        m = _TERM.match(term.strip())
        if sign not in "+-" or not m:
            raise ParseError(f"cannot parse term {term!r}")
        if m.group(3) is not None:
            c, s = int(m.group(3)), frozenset()
        else:
            c = int(m.group(1) or 1)
            s = frozenset(int(t) for t in m.group(2).replace(" ", "").split(",") if t)
        out[s] = out.get(s, 0) + (-c if sign == "-" else c)
    return out


class LagElement:
    """Integer combination of squarefree monomials c_S in H*(Sp(k)/U(k))."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k, coeffs=None):
        self.k = k
        clean = {}
        for s, c in (coeffs or {}).items():
            s = frozenset(s)
            if s and (min(s) < 1 or max(s) > k):
                raise NamespaceMismatch(f"subset {sorted(s)} is not inside 1..{k}")
            if c:
                clean[s] = clean.get(s, 0) + c
        self.coeffs = {s: c for s, c in clean.items() if c}

    @classmethod
    def one(cls, k):
        return cls(k, {frozenset(): 1})

    @classmethod
    def c(cls, k, *indices):
        return cls(k, {frozenset(indices): 1})

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Cohomological degree 2*sum(S); None for zero, error if mixed."""
        degs = {2 * sum(s) for s in self.coeffs}
        if not degs:
            return None
        if len(degs) > 1:
            raise DegreeError("inhomogeneous element")
        return degs.pop()

    def is_homogeneous(self):
        return len({sum(s) for s in self.coeffs}) <= 1

    def coefficient(self, subset):
        return self.coeffs.get(frozenset(subset), 0)

    def _check(self, other):
        if not isinstance(other, LagElement):
            raise TypeError("expected a LagElement")
        if self.k != other.k:
            raise NamespaceMismatch(f"elements of H*(Sp({self.k})/U({self.k})) and k={other.k}")

    def __eq__(self, other):
        if isinstance(other, int):
            other = LagElement(self.k, {frozenset(): other})
        if not isinstance(other, LagElement):
            return NotImplemented
        return self.k == other.k and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.k, frozenset(self.coeffs.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for s, c in other.coeffs.items():
            out[s] = out.get(s, 0) + c
        return LagElement(self.k, out)

    def __neg__(self):
        return LagElement(self.k, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LagElement(self.k, {s: other * c for s, c in self.coeffs.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def mod2(self):
        return LagElementMod2(self.k, {s for s, c in self.coeffs.items() if c % 2})

    def __str__(self):
        return _render(self.k, self.coeffs)

    def __repr__(self):
        return f"LagElement(k={self.k}, {self})"

    def to_json(self):
        return {"k": self.k, "terms": [{"subset": sorted(s), "coeff": str(self.coeffs[s])}
                                       for s in sorted(self.coeffs, key=lambda s: (sum(s), sorted(s)))]}

    @classmethod
    def from_json(cls, data):
        return cls(data["k"], {frozenset(t["subset"]): int(t["coeff"]) for t in data["terms"]})

    @classmethod
    def parse(cls, text, k):
        return cls(k, _parse_terms(text))


class LagElementMod2:
    """Element of H*(Sp(k)/U(k); Z/2) = exterior algebra on c_1..c_k."""

    __slots__ = ("k", "support")

    def __init__(self, k, support=()):
        self.k = k
        self.support = frozenset(frozenset(s) for s in support)

    @classmethod
    def c(cls, k, *indices):
        return cls(k, {frozenset(indices)})

    def is_zero(self):
        return not self.support

    def is_homogeneous(self):
        return len({sum(s) for s in self.support}) <= 1

    def degree(self):
        degs = {2 * sum(s) for s in self.support}
        if len(degs) > 1:
            raise DegreeError("inhomogeneous element")
        return degs.pop() if degs else None

    def __contains__(self, subset):
        return frozenset(subset) in self.support

    def __eq__(self, other):
        if not isinstance(other, LagElementMod2):
            return NotImplemented
        return self.k == other.k and self.support == other.support

    def __hash__(self):
        return hash((self.k, self.support))

    def __add__(self, other):
        if self.k != other.k:
            raise NamespaceMismatch("mod 2 elements for different k")
        return LagElementMod2(self.k, self.support ^ other.support)

    def __mul__(self, other):
        if self.k != other.k:
            raise NamespaceMismatch("mod 2 elements for different k")
        out = set()
        for s in self.support:
            for t in other.support:
                if not s & t:  # c_j^2 is even, so overlaps die
                    out ^= {s | t}
        return LagElementMod2(self.k, out)

    def __str__(self):
        return _render(self.k, dict.fromkeys(self.support, 1), mod2=True)

    def __repr__(self):
        return f"LagElementMod2(k={self.k}, {self})"

    def to_json(self):
        return {"k": self.k, "subsets": sorted(sorted(s) for s in self.support)}


def _spread(exps):
    return sum((j + 1) ** 2 * a for j, a in enumerate(exps))


def _rewrite(exps, k):
    """Rewrite the lowest squared generator. Returns (j, [(exps', coeff)])."""
    j = next(i for i, a in enumerate(exps) if a >= 2) + 1
    base = list(exps)
    base[j - 1] -= 2
    out = []
    for i in range(1, j + 1):
        lo, hi = j - i, j + i
        if hi > k:
            break
        e = list(base)
        if lo:
            e[lo - 1] += 1
        e[hi - 1] += 1
        out.append((tuple(e), 2 if i % 2 else -2))
    return j, out


def _as_terms(p, k):
    if isinstance(p, LagElement):
        return {tuple(1 if i + 1 in s else 0 for i in range(k)): c for s, c in p.coeffs.items()}
    if isinstance(p, IntPoly):
        expected = ([f"c{i}" for i in range(1, k + 1)], [f"e{i}" for i in range(1, k + 1)])
        if list(p.names) not in expected:
            raise NamespaceMismatch(f"expected a polynomial in c1..c{k}, got {', '.join(p.names)}")
        return dict(p.terms)
    return {tuple(e): c for e, c in dict(p).items()}


def normal_form(p, k, trace=None):
    """Squarefree representative of a polynomial in c_1..c_k.

    ``p`` is an IntPoly in c1..ck (or e1..ek), a LagElement, or a mapping
    from exponent tuples to coefficients.  If ``trace`` is a list, each
    applied rewrite is appended as (exponents, j, coefficient).
    """
    terms = _as_terms(p, k)
    pending = {}
    heap = []
    for e, c in terms.items():
        if len(e) != k:
            raise NamespaceMismatch(f"exponent vector of length {len(e)} for k={k}")
        if c:
            if e not in pending:
                heapq.heappush(heap, (_spread(e), e))
            pending[e] = pending.get(e, 0) + c
    out = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = pending.pop(e)
        if not c:
            continue
        if all(a <= 1 for a in e):
            out[frozenset(i + 1 for i, a in enumerate(e) if a)] = c
            continue
        j, images = _rewrite(e, k)
        if trace is not None:
            trace.append((e, j, c))
        for e2, m in images:
            if e2 not in pending:
                heapq.heappush(heap, (_spread(e2), e2))
                pending[e2] = 0
            pending[e2] += m * c
    return LagElement(k, out)


def multiply(a, b):
    a._check(b)
    k = a.k
    terms = {}
    for s, c in a.coeffs.items():
        for t, d in b.coeffs.items():
            e = tuple((i in s) + (i in t) for i in range(1, k + 1))
            terms[e] = terms.get(e, 0) + c * d
    return normal_form(terms, k)


def generators(k):
    """(u_top, u_subtop, u_one) = (c_1...c_k, c_2...c_k, c_1).

    u_one is the degree-2 generator; the classical literature writes it u_1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    return (LagElement.c(k, *range(1, k + 1)), LagElement.c(k, *range(2, k + 1)), LagElement.c(k, 1))


def relations(k):
    """q_j = e_j(x_1^2..x_k^2) written in c_1..c_k, for j = 1..k."""
    out = []
    for j in range(1, k + 1):
        terms = {}
        e = [0] * k
        e[j - 1] = 2
        terms[tuple(e)] = 1
        for i in range(1, j + 1):
            lo, hi = j - i, j + i
            if hi > k:
                break
            e = [0] * k
            if lo:
                e[lo - 1] += 1
            e[hi - 1] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0) + (-2 if i % 2 else 2)
        out.append(IntPoly([f"c{i}" for i in range(1, k + 1)], terms))
    return out


def basis(k, degree=None):
    """Squarefree basis subsets, optionally only those of cohomological degree ``degree``."""
    out = []
    for r in range(k + 1):
        for s in combinations(range(1, k + 1), r):
            if degree is None or 2 * sum(s) == degree:
                out.append(frozenset(s))
    return out


def strict_partitions(d, k):
    """Strict partitions of d with all parts <= k, largest part first."""
    if d == 0:
        return [()]
    out = []
    for first in range(min(d, k), 0, -1):
        for rest in strict_partitions(d - first, first - 1):
            out.append((first,) + rest)
    return out


# Sq^2 ------------------------------------------------------------------

def wu_coefficient(i):
    """(2i-1)(i-1) mod 2: the coefficient of c_{i+1} in Sq^2(c_i)."""
    return (2 * i - 1) * (i - 1) % 2


def sq2_generator(k, i):
    """Sq^2(c_i) = c_1 c_i + (2i-1)(i-1) c_{i+1} mod 2."""
    out = LagElementMod2.c(k, 1) * LagElementMod2.c(k, i)
    if i + 1 <= k and wu_coefficient(i):
        out = out + LagElementMod2.c(k, i + 1)
    return out


def sq2(e):
    """Sq^2 on H*(Sp(k)/U(k); Z/2).

    The cohomology is concentrated in even degrees, so Sq^1 = 0 and the
    Cartan formula for Sq^2 leaves only the two derivation terms.
    """
    if isinstance(e, LagElement):
        e = e.mod2()
    if not e.is_homogeneous():
        raise DegreeError("Sq^2 needs a homogeneous element")
    k = e.k
    out = LagElementMod2(k)
    for s in e.support:
        for i in s:
            rest = LagElementMod2(k, {s - {i}})
            out = out + sq2_generator(k, i) * rest
    return out


# spin constraint -----------------------------------------------------

@dataclass(frozen=True)
class SpinObstruction:
    k: int
    n: int
    sq2_coefficient: int       # Sq^2(u_{2n-2}) = s * u_{2n} mod 2
    product_coefficient: int   # u_one * u_{2n-2} = p * u_{2n} mod 2
    wu_term: int               # coefficient of c_n in Sq^2(c_{n-1}) for a rank-n bundle
    relation: str
    solutions: tuple           # (a, b) in (Z/2)^2 satisfying the relation
    conclusion: str
    steps: tuple = field(default=())

    def to_payload(self):
        return {
            "k": self.k, "n": self.n,
            "sq2_coefficient": self.sq2_coefficient,
            "product_coefficient": self.product_coefficient,
            "wu_term": self.wu_term,
            "relation": self.relation,
            "solutions": [list(s) for s in self.solutions],
            "conclusion": self.conclusion,
            "steps": list(self.steps),
        }

    def replay(self):
        return spin_obstruction(self.k) == self


def _relation_text(s, p, w):
    # b*s = a*b*p + w  <=>  b*(s + p*a) = w  (mod 2)
    if s and p:
        factor = "b(a+1)"
    elif p:
        factor = "ab"
    elif s:
        factor = "b"
    else:
        factor = "0"
    return f"{factor} ≡ {w} (mod 2)"


def spin_obstruction(k):
    """Mod 2 constraint on c_1 of a rank-n bundle whose c_n is a generator.

    With c_1(xi) = a u_one and c_{n-1}(xi) = b u_{2n-2}, applying Sq^2 to
    c_{n-1}(xi) in two ways gives b*s = a*b*p + w mod 2, where s, p are read
    off the ring and w is the Wu coefficient for i = n-1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = k * (k + 1) // 2
    if n % 2 == 0:
        raise HypothesisFails(f"hypothesis fails: n even (k={k}, n={n})")
    if k % 4 != 2:
        raise HypothesisFails(f"hypothesis fails: k-1 even (k={k}), so Sq^2 kills u_{{2n-2}}")
    _, sub, one = generators(k)
    s = int(frozenset(range(1, k + 1)) in sq2(sub))
    p = (one * sub).coefficient(range(1, k + 1)) % 2
    w = wu_coefficient(n - 1)
    sols = tuple((a, b) for a, b in product((0, 1), repeat=2) if (b * s - a * b * p - w) % 2 == 0)
    avals = sorted({a for a, _ in sols})
    if len(avals) == 1:
        conclusion = f"a ≡ {avals[0]} (mod 2)"
    else:
        conclusion = "no constraint on a"
    steps = (
        f"n = k(k+1)/2 = {n}, odd",
        f"Sq2(u_{{2n-2}}) = {s}*u_{{2n}} (mod 2)",
        f"u_one*u_{{2n-2}} = {p}*u_{{2n}} (mod 2)",
        f"Sq2(c_{{n-1}}) = c_1 c_{{n-1}} + {w}*c_n (mod 2)",
        "c_1 = a*u_one, c_{n-1} = b*u_{2n-2}, c_n = ±u_{2n}",
        f"b*{s} ≡ a*b*{p} + {w} (mod 2)",
        _relation_text(s, p, w),
        "solutions (a, b): " + ", ".join(f"({a}, {b})" for a, b in sols),
        conclusion,
    )
    return SpinObstruction(k, n, s, p, w, _relation_text(s, p, w), sols, conclusion, steps)


__all__ = [
    "LagElement", "LagElementMod2", "normal_form", "multiply", "generators", "relations",
    "basis", "strict_partitions", "sq2", "sq2_generator", "wu_coefficient",
    "SpinObstruction", "spin_obstruction",
]

"""Sparse multivariate polynomials over the integers.

An :class:`IntPoly` is a dict from dense exponent tuples to nonzero ints,
over a fixed ordered tuple of variable names.  Besides ring arithmetic
this module provides divided-difference operators, Schubert polynomials
and the explicit top double-Schubert/equivariant products, and the
conversion of symmetric polynomials into elementary symmetric ones.
"""

from __future__ import annotations

import heapq
import json
import re
from functools import lru_cache
from itertools import combinations

from .errors import InternalInconsistency, NamespaceMismatch, NotSymmetric, ParseError
from .rootsys import longest_element


def x_names(k):
    return tuple(f"x{i}" for i in range(1, k + 1))


def xy_names(k):
    return x_names(k) + tuple(f"y{i}" for i in range(1, k + 1))


def e_names(k):
    return tuple(f"e{i}" for i in range(1, k + 1))


def _grlex_key(exps):
    return (sum(exps), exps)


class IntPoly:
    """Immutable sparse polynomial with exact integer coefficients."""

    __slots__ = ("names", "terms", "_hash")

    def __init__(self, names, terms=None):
        self.names = tuple(names)
        n = len(self.names)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise NamespaceMismatch(f"exponent vector {exps} does not match {n} variables")
            c = int(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # -- constructors

    @classmethod
    def const(cls, names, c):
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name):
        names = tuple(names)
        if name not in names:
            raise NamespaceMismatch(f"variable {name} not in namespace {names}")
        i = names.index(name)
        return cls(names, {tuple(int(j == i) for j in range(len(names))): 1})

    @classmethod
    def linear(cls, names, coeffs):
        """sum_i coeffs[name_i] * name_i, with ``coeffs`` a dict name -> int."""
        names = tuple(names)
        terms = {}
        for name, c in coeffs.items():
            i = names.index(name)
            terms[tuple(int(j == i) for j in range(len(names)))] = c
        return cls(names, terms)

    def _new(self, terms):
        p = object.__new__(IntPoly)
        p.names = self.names
        p.terms = terms
        p._hash = None
        return p

    # -- basic protocol

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            if other.names != self.names:
                raise NamespaceMismatch(f"namespaces differ: {self.names} vs {other.names}")
            return other
        if isinstance(other, int):
            return IntPoly.const(self.names, other)
        return None

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly.const(self.names, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, n):
        if n == 0:
            return self._new({})
        return self._new({e: n * c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = IntPoly.const(self.names, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- inspection

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def leading_term(self):
        """Leading (exponents, coeff) in graded-lex order on the namespace order."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def variable_index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise NamespaceMismatch(f"variable {name} not in namespace {self.names}") from None

    # -- substitutions

    def permute(self, perm):
        """Permute variable positions: variable i is renamed to variable perm[i]."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(e)
            for i, a in enumerate(e):
                f[perm[i]] = a
            out[tuple(f)] = c
        return self._new(out)

    def swap(self, i, j):
        """Exchange the variables at positions i and j (0-based)."""
        perm = list(range(len(self.names)))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def substitute(self, mapping):
        """Replace named variables by polynomials in the same namespace (or ints)."""
        idx = {self.variable_index(name): val for name, val in mapping.items()}
        result = self._new({})
        powers = {}
        for e, c in self.terms.items():
            rest = tuple(0 if i in idx else a for i, a in enumerate(e))
            term = self._new({rest: c})
            for i, val in idx.items():
                a = e[i]
                if a:
                    key = (i, a)
                    if key not in powers:
                        v = val if isinstance(val, IntPoly) else IntPoly.const(self.names, val)
                        powers[key] = v ** a
                    term = term * powers[key]
            result = result + term
        return result

    def rename(self, names):
        """Same terms over a new namespace of the same size."""
        names = tuple(names)
        if len(names) != len(self.names):
            raise NamespaceMismatch("rename requires the same number of variables")
        return IntPoly(names, self.terms)

    def embed(self, names):
        """Re-express over a larger namespace containing all current names."""
        names = tuple(names)
        pos = []
        for n in self.names:
            if n not in names:
                raise NamespaceMismatch(f"variable {n} not in namespace {names}")
            pos.append(names.index(n))
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(names)
            for p, a in zip(pos, e):
                f[p] = a
            out[tuple(f)] = c
        return IntPoly(names, out)

    # -- division

    def exact_div(self, divisor):
        """Quotient of an exact division; raises InternalInconsistency otherwise."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = divisor.leading_term()
        rem = dict(self.terms)
        heap = [tuple(-x for x in _grlex_key_flat(e)) for e in rem]
        heapq.heapify(heap)
        quot = {}
        while heap:
            key = heapq.heappop(heap)
            e = _unflat(key)
            c = rem.get(e)
            if not c:
                continue
            diff = tuple(a - b for a, b in zip(e, lead_e))
            if min(diff) < 0 or c % lead_c:
                raise InternalInconsistency(
                    f"division by {divisor} is not exact (stuck at {self._new({e: c})})")
            q = c // lead_c
            quot[diff] = quot.get(diff, 0) + q
            for de, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(diff, de))
                v = rem.get(t, 0) - q * dc
                if v:
                    if t not in rem:
                        heapq.heappush(heap, tuple(-x for x in _grlex_key_flat(t)))
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return IntPoly(self.names, quot)

    # -- rendering

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(name if a == 1 else f"{name}^{a}"
                            for name, a in zip(self.names, e) if a)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if n == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"IntPoly({self})"

    def to_json(self):
        return {
            "vars": list(self.names),
            "terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vars"], {tuple(t["exp"]): int(t["coeff"]) for t in data["terms"]})

    @classmethod
    def parse(cls, text, names):
        return parse_poly(text, names)


def _grlex_key_flat(e):
    return (sum(e),) + tuple(e)


def _unflat(key):
    return tuple(-x for x in key[1:])


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([\^*+()-]))")


def parse_poly(text, names):
    """Parse the rendering grammar ``3*x1^2*y2 - x3`` back into an IntPoly.

    Parentheses and integer powers of parenthesised groups are also accepted,
    e.g. ``(x1 - y1)^2*x2``.
    """
    names = tuple(names)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            raise ParseError(f"unexpected character at {len(text) - len(rest)}: {rest[:10]!r}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("int", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", op))
    if not tokens:
        raise ParseError("empty polynomial")
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None)

    def take(op):
        nonlocal i
        if peek() == ("op", op):
            i += 1
            return True
        return False

    def expr():
        if take("-"):
            total = -term()
        else:
            take("+")
            total = term()
        while True:
            if take("+"):
                total = total + term()
            elif take("-"):
                total = total - term()
            else:
                return total

    def term():
        out = factor()
        while take("*"):
            out = out * factor()
        return out

    def factor():
        nonlocal i
        kind, val = peek()
        if kind == "int":
            i += 1
            base = IntPoly.const(names, val)
        elif kind == "name":
            if val not in names:
                raise ParseError(f"unknown variable {val}")
            i += 1
            base = IntPoly.var(names, val)
        elif take("("):
            base = expr()
            if not take(")"):
                raise ParseError("missing closing parenthesis")
        else:
            raise ParseError(f"expected a factor, got {val!r}")
        if take("^"):
            kind2, val2 = peek()
            if kind2 != "int":
                raise ParseError("exponent must be a nonnegative integer")
            i += 1
            base = base ** val2
        return base

    result = expr()
    if i != len(tokens):
        raise ParseError(f"unexpected token {tokens[i][1]!r}")
    return result


# ------------------------------------------------------- divided differences

def divided_difference(i, f):
    """The operator (f - s_i f)/(x_i - x_{i+1}), acting on x-variables only."""
    a = f.variable_index(f"x{i}")
    b = f.variable_index(f"x{i + 1}")
    g = f - f.swap(a, b)
    if g.is_zero():
        return g
    d = IntPoly.var(f.names, f"x{i}") - IntPoly.var(f.names, f"x{i + 1}")
    return g.exact_div(d)


def apply_divided_differences(word, f):
    """d_{j1} d_{j2} ... d_{jl} f for the word (j1, ..., jl); the rightmost acts first."""
    for j in reversed(word):
        f = divided_difference(j, f)
    return f


def staircase_monomial(k, names=None):
    """x1^(k-1) x2^(k-2) ... x_{k-1}, the top Schubert polynomial of S_k."""
    names = names or x_names(k)
    exps = [0] * len(names)
    for i in range(1, k + 1):
        exps[names.index(f"x{i}")] = k - i
    return IntPoly(names, {tuple(exps): 1})


def _type_a_k(w):
    rs = w.rs
    if rs.family != "A":
        raise ValueError(f"Schubert polynomials need a type A Weyl element, got {rs.name}")
    return rs.rank + 1


def schubert_poly(w, word=None):
    """The Schubert polynomial of a permutation w in S_k, as an element of A_{k-1}.

    Computed as d_{w^-1 w0} applied to the staircase monomial; ``word``
    optionally selects which reduced word of w^-1 w0 to apply.
    """
    k = _type_a_k(w)
    rs = w.rs
    w0 = longest_element(rs)
    u = w.inverse() * w0
    if word is None:
        word = u.word
    elif rs.element_from_word(word) != u or len(word) != u.length:
        raise ValueError(f"{word} is not a reduced word of w^-1 w0")
    return apply_divided_differences(word, staircase_monomial(k))


def permutation(w):
    """One-line notation (w(1), ..., w(k)) of a type A Weyl element."""
    k = _type_a_k(w)
    # s_j1 ... s_jl applied to i: rightmost first
    out = []
    for i in range(1, k + 1):
        v = i
        for j in reversed(w.word):
            if v == j:
                v = j + 1
            elif v == j + 1:
                v = j
        out.append(v)
    return tuple(out)


def element_from_permutation(rs, perm):
    """The Weyl element of A_{k-1} with one-line notation ``perm``."""
    perm = list(perm)
    word = []
    # bubble sort: perm = s_j * perm' where j is a left descent
    while True:
        pos = {v: i for i, v in enumerate(perm)}
        j = next((v for v in range(1, len(perm)) if pos[v] > pos[v + 1]), None)
        if j is None:
            break
        word.append(j)
        a, b = pos[j], pos[j + 1]
        perm[a], perm[b] = perm[b], perm[a]
    return rs.element_from_word(tuple(word))


def double_schubert_top(k, convention="standard"):
    """Top double Schubert polynomial of S_k in x1..xk, y1..yk.

    ``standard``: prod over i + j <= k of (x_i - y_j), vanishing at y = x.
    ``paper``: prod over i < j of (x_i - y_j); equal to the standard one
    after y_j -> y_{k+1-j}.
    """
    names = xy_names(k)
    if convention == "standard":
        pairs = [(i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i + j <= k]
    elif convention == "paper":
        pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    else:
        raise ValueError(f"unknown convention {convention!r}")
    result = IntPoly.const(names, 1)
    for i, j in pairs:
        result = result * IntPoly.linear(names, {f"x{i}": 1, f"y{j}": -1})
    return result


def typeC_top_equivariant(k):
    """prod_{i<=j} (x_i + y_j) * prod_{i<j} (x_i - y_j), of degree k^2."""
    names = xy_names(k)
    result = IntPoly.const(names, 1)
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            result = result * IntPoly.linear(names, {f"x{i}": 1, f"y{j}": 1})
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            result = result * IntPoly.linear(names, {f"x{i}": 1, f"y{j}": -1})
    return result


def reverse_y(f, k):
    """Substitute y_j -> y_{k+1-j}."""
    perm = list(range(len(f.names)))
    for j in range(1, k + 1):
        a = f.variable_index(f"y{j}")
        b = f.variable_index(f"y{k + 1 - j}")
        perm[a] = b
    return f.permute(perm)


# ------------------------------------------------------ symmetric functions

def check_symmetric(f, k):
    """Raise NotSymmetric naming the first adjacent transposition that moves f."""
    for i in range(1, k):
        a = f.variable_index(f"x{i}")
        b = f.variable_index(f"x{i + 1}")
        if f.swap(a, b) != f:
            raise NotSymmetric(f"not symmetric: s{i} (x{i} <-> x{i + 1}) moves the polynomial")


@lru_cache(maxsize=None)
def _e_times_m(nu, j, k):
    """m_nu * e_j in the monomial symmetric basis, as a tuple of (kappa, coeff)."""
    nu_list = list(nu)
    cands = set()
    for S in combinations(range(k), j):
        kappa = list(nu_list)
        for s in S:
            kappa[s] += 1
        cands.add(tuple(sorted(kappa, reverse=True)))
    out = []
    for kappa in cands:
        count = 0
        for T in combinations(range(k), j):
            if all(kappa[t] >= 1 for t in T):
                rest = list(kappa)
                for t in T:
                    rest[t] -= 1
                if tuple(sorted(rest, reverse=True)) == nu:
                    count += 1
        if count:
            out.append((kappa, count))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _elementary_product_m(mu, k):
    """e_1^mu_1 ... e_k^mu_k in the monomial symmetric basis, as a dict."""
    if not any(mu):
        return {(0,) * k: 1}
    j = max(i for i, a in enumerate(mu) if a)
    smaller = list(mu)
    smaller[j] -= 1
    base = _elementary_product_m(tuple(smaller), k)
    out = {}
    for nu, c in base.items():
        for kappa, m in _e_times_m(nu, j + 1, k):
            out[kappa] = out.get(kappa, 0) + c * m
    return {key: v for key, v in out.items() if v}


def _restrict(f, names):
    """Drop variables outside ``names``; they must not occur in f."""
    pos = [f.variable_index(n) for n in names]
    out = {}
    for e, c in f.terms.items():
        if sum(e) != sum(e[p] for p in pos):
            raise NamespaceMismatch(f"expected a polynomial in {names}, got {f}")
        out[tuple(e[p] for p in pos)] = c
    return IntPoly(names, out)


def symmetric_to_elementary(f, k=None, names=None):
    """Express a symmetric polynomial in x1..xk as a polynomial in e1..ek.

    Leading-term subtraction in the monomial symmetric basis; the result
    is unique and expands back to ``f`` exactly.
    """
    if k is None:
        k = sum(1 for n in f.names if re.fullmatch(r"x\d+", n))
    xs = x_names(k)
    if f.names != xs:
        f = _restrict(f, xs)
    check_symmetric(f, k)
    # coefficient of m_lambda = coefficient of the sorted monomial x^lambda
    mcoef = {e: c for e, c in f.terms.items() if list(e) == sorted(e, reverse=True)}
    out = {}
    while mcoef:
        lam = max(mcoef)
        c = mcoef[lam]
        mu = tuple((lam[i] - (lam[i + 1] if i + 1 < k else 0)) for i in range(k))
        out[mu] = out.get(mu, 0) + c
        for kappa, m in _elementary_product_m(mu, k).items():
            v = mcoef.get(kappa, 0) - c * m
            if v:
                mcoef[kappa] = v
            else:
                mcoef.pop(kappa, None)
        if mcoef.get(lam):
            raise InternalInconsistency("leading term survived subtraction")
    return IntPoly(names or e_names(k), out)


def elementary_polynomials(k, names=None):
    """[e_1(x), ..., e_k(x)] as IntPolys."""
    names = names or x_names(k)
    out = []
    for j in range(1, k + 1):
        terms = {}
        for S in combinations(range(k), j):
            exps = [0] * len(names)
            for s in S:
                exps[names.index(f"x{s + 1}")] = 1
            terms[tuple(exps)] = 1
        out.append(IntPoly(names, terms))
    return out


def expand_elementary(g, k):
    """Substitute e_j -> e_j(x1..xk) into a polynomial in k variables (positional)."""
    es = elementary_polynomials(k)
    xs = x_names(k)
    result = IntPoly(xs)
    powers = {}
    for e, c in g.terms.items():
        term = IntPoly.const(xs, c)
        for j, a in enumerate(e):
            if a:
                if (j, a) not in powers:
                    powers[(j, a)] = es[j] ** a
                term = term * powers[(j, a)]
        result = result + term
    return result


__all__ = [
    "IntPoly", "parse_poly", "x_names", "xy_names", "e_names",
    "divided_difference", "apply_divided_differences", "staircase_monomial",
    "schubert_poly", "permutation", "element_from_permutation",
    "double_schubert_top", "typeC_top_equivariant", "reverse_y",
    "check_symmetric", "symmetric_to_elementary", "elementary_polynomials",
    "expand_elementary",
]

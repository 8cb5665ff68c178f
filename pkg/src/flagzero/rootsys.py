"""Simple root systems and their Weyl groups.

A :class:`RootSystem` is driven by its Cartan matrix; the classical
families additionally carry Bourbaki's ambient realisation with exact
rational coordinates.  Weights are integer vectors in the basis of
fundamental weights (the simply-connected weight lattice), and Weyl group
elements are identified by the image of ``rho = (1, ..., 1)``, which
determines the action on the weight lattice uniquely.

Conventions:

* ``cartan_matrix[i][j] = <alpha_i, alpha_j^vee>``, so the simple root
  ``alpha_i`` has fundamental-weight coordinates ``cartan_matrix[i]``.
* Simple-root indices, reduced words and parabolic subsets are 1-based,
  following Bourbaki's node numbering.
* A word ``(j1, ..., jl)`` denotes the composition ``s_j1 ... s_jl``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial

import numpy as np

from .errors import GroupTooLarge, InternalInconsistency, InvalidQuery, UnsupportedType

# |W(E7)|
DEFAULT_CAP = 2_903_040

LATTICE = "simply-connected"

EXPENSIVE = {("E", 7), ("E", 8)}


@dataclass(frozen=True)
class Weight:
    """A weight, in coordinates with respect to the fundamental weights."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def zero(cls, rank):
        return cls((0,) * rank)

    @classmethod
    def fundamental(cls, rank, i):
        """The fundamental weight omega_i (1-based)."""
        return cls(tuple(int(j == i - 1) for j in range(rank)))

    @property
    def rank(self):
        return len(self.coords)

    def __add__(self, other):
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return Weight(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coords, 1):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, f"{mag}w{i}"))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------- ambient data

def _unit(n, i, c=1):
    v = [Fraction(0)] * n
    v[i] = Fraction(c)
    return v


def _diff(n, i, j):
    v = [Fraction(0)] * n
    v[i] += 1
    v[j] -= 1
    return v


def _e8_simple_roots():
    h = Fraction(1, 2)
    a1 = [h, -h, -h, -h, -h, -h, -h, h]
    a2 = [Fraction(x) for x in (1, 1, 0, 0, 0, 0, 0, 0)]
    rest = [_diff(8, i + 1, i) for i in range(6)]  # e_{i+2} - e_{i+1}
    return [a1, a2] + rest


def _bourbaki_simple_roots(family, rank):
    k = rank
    if family == "A":
        return [_diff(k + 1, i, i + 1) for i in range(k)]
    if family == "B":
        return [_diff(k, i, i + 1) for i in range(k - 1)] + [_unit(k, k - 1)]
    if family == "C":
        return [_diff(k, i, i + 1) for i in range(k - 1)] + [_unit(k, k - 1, 2)]
    if family == "D":
        last = _unit(k, k - 2)
        last[k - 1] = Fraction(1)
        return [_diff(k, i, i + 1) for i in range(k - 1)] + [last]
    if family == "G":
        return [_diff(3, 0, 1), [Fraction(x) for x in (-2, 1, 1)]]
    if family == "F":
        h = Fraction(1, 2)
        return [_diff(4, 1, 2), _diff(4, 2, 3), _unit(4, 3), [h, -h, -h, -h]]
    if family == "E":
        return _e8_simple_roots()[:rank]
    raise UnsupportedType(f"unsupported type {family}{rank}")


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_supported(family, rank):
    if not isinstance(rank, int) or rank < 1:
        return False
    return (
        (family == "A" and rank >= 1)
        or (family in ("B", "C") and rank >= 2)
        or (family == "D" and rank >= 3)
        or (family, rank) in {("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)}
    )


def weyl_order_formula(family, rank):
    """Classical order of the Weyl group of a simple type."""
    k = rank
    if family == "A":
        return factorial(k + 1)
    if family in ("B", "C"):
        return 2**k * factorial(k)
    if family == "D":
        return 2 ** (k - 1) * factorial(k)
    return {("G", 2): 12, ("F", 4): 1152, ("E", 6): 51840,
            ("E", 7): 2903040, ("E", 8): 696729600}[(family, rank)]


def positive_root_count(family, rank):
    k = rank
    if family == "A":
        return k * (k + 1) // 2
    if family in ("B", "C"):
        return k * k
    if family == "D":
        return k * (k - 1)
    return {("G", 2): 6, ("F", 4): 24, ("E", 6): 36, ("E", 7): 63,
            ("E", 8): 120}[(family, rank)]


# ----------------------------------------------------------------- root system

def _root_lengths(cartan):
    """Squared root lengths making ``cartan`` symmetrisable, per component."""
    r = len(cartan)
    d = [None] * r
    for start in range(r):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(r):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    # A_ij d_j = A_ji d_i
                    d[j] = d[i] * Fraction(cartan[j][i], cartan[i][j])
                    stack.append(j)
    return d


def _invert(mat):
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class RootSystem:
    """A (possibly reducible) crystallographic root system.

    Use :func:`build_root_system` for the simple types; the constructor
    also accepts a bare Cartan matrix, which is how Levi subsystems are
    built.
    """

    def __init__(self, cartan, family=None, simple_roots=None):
        self.cartan_matrix = tuple(tuple(int(x) for x in row) for row in cartan)
        self.rank = r = len(self.cartan_matrix)
        self.family = family
        self.simple_roots = (tuple(tuple(v) for v in simple_roots)
                             if simple_roots is not None else None)
        self.lattice = LATTICE
        A = self.cartan_matrix
        self._lengths = _root_lengths(A)

        # closure under simple reflections, in simple-root coordinates
        simples = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        found = set(simples)
        queue = list(simples)
        while queue:
            beta = queue.pop()
            for j in range(r):
                if beta == simples[j]:
                    continue
                p = sum(beta[i] * A[i][j] for i in range(r))
                gamma = list(beta)
                gamma[j] -= p
                gamma = tuple(gamma)
                if min(gamma) >= 0 and gamma not in found:
                    found.add(gamma)
                    queue.append(gamma)
        self.positive_roots = tuple(sorted(found, key=lambda b: (sum(b), b)))
        self.root_index = {b: n for n, b in enumerate(self.positive_roots)}

        # fundamental-weight coordinates of each positive root
        self.root_weights = tuple(
            tuple(sum(b[m] * A[m][i] for m in range(r)) for i in range(r))
            for b in self.positive_roots)
        self._weight_root_index = {w: n for n, w in enumerate(self.root_weights)}

        # beta^vee in the basis of simple coroots
        B = [[A[i][j] * self._lengths[j] / 2 for j in range(r)] for i in range(r)]
        cor = []
        for b in self.positive_roots:
            norm = sum(b[i] * b[j] * B[i][j] for i in range(r) for j in range(r))
            coeffs = [b[i] * self._lengths[i] / norm for i in range(r)]
            if any(c.denominator != 1 for c in coeffs):
                raise InternalInconsistency(f"non-integral coroot for {b}")
            cor.append(tuple(int(c) for c in coeffs))
        self.coroots = tuple(cor)

        if self.simple_roots is not None:
            for i in range(r):
                for j in range(r):
                    a, b = self.simple_roots[i], self.simple_roots[j]
                    if 2 * _dot(a, b) / _dot(b, b) != A[i][j]:
                        raise InternalInconsistency("ambient roots disagree with Cartan matrix")

    # -- descriptors

    @property
    def name(self):
        if self.family is None:
            return "Cartan" + "".join(str(x) for row in self.cartan_matrix for x in row)
        return f"{self.family}{self.rank}"

    @property
    def expensive(self):
        return (self.family, self.rank) in EXPENSIVE

    def __repr__(self):
        return f"RootSystem({self.name})"

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.cartan_matrix == other.cartan_matrix

    def __hash__(self):
        return hash(self.cartan_matrix)

    @property
    def num_positive_roots(self):
        return len(self.positive_roots)

    @cached_property
    def order(self):
        """Order of the Weyl group, from the classical formula when known."""
        if self.family is not None:
            return weyl_order_formula(self.family, self.rank)
        comps = dynkin_components(self, range(1, self.rank + 1))
        total = 1
        for comp in comps:
            fam, rk = classify_component(self, comp)
            total *= weyl_order_formula(fam, rk)
        return total

    @cached_property
    def fundamental_weights(self):
        """Ambient vectors of the fundamental weights (needs an ambient realisation)."""
        if self.simple_roots is None:
            raise UnsupportedType("root system has no ambient realisation")
        inv = _invert(self.cartan_matrix)
        n = len(self.simple_roots[0])
        return tuple(
            tuple(sum(inv[i][j] * self.simple_roots[j][c] for j in range(self.rank))
                  for c in range(n))
            for i in range(self.rank))

    def omega(self, i):
        return Weight.fundamental(self.rank, i)

    @property
    def rho(self):
        return Weight((1,) * self.rank)

    # -- weights and roots

    def root_coords(self, root):
        """Normalise a root given as an index or simple-root coordinates."""
        if isinstance(root, int):
            return self.positive_roots[root]
        root = tuple(root)
        if root in self.root_index:
            return root
        neg = tuple(-c for c in root)
        if neg in self.root_index:
            return root
        raise ValueError(f"{root} is not a root of {self.name}")

    def coroot(self, root):
        b = self.root_coords(root)
        if b in self.root_index:
            return self.coroots[self.root_index[b]]
        return tuple(-c for c in self.coroots[self.root_index[tuple(-c for c in b)]])

    def pair(self, weight, root):
        """The Cartan pairing <weight, root^vee>, an exact integer."""
        cv = self.coroot(root)
        return sum(a * c for a, c in zip(weight.coords, cv))

    def root_weight(self, root):
        b = self.root_coords(root)
        r = self.rank
        return Weight(tuple(sum(b[m] * self.cartan_matrix[m][i] for m in range(r))
                            for i in range(r)))

    def reflect(self, coords, j):
        """Apply the simple reflection s_j (1-based) to fundamental-weight coordinates."""
        j -= 1
        p = coords[j]
        if p == 0:
            return tuple(coords)
        row = self.cartan_matrix[j]
        return tuple(c - p * a for c, a in zip(coords, row))

    def to_ambient(self, weight):
        fw = self.fundamental_weights
        n = len(fw[0])
        return tuple(sum(weight.coords[i] * fw[i][c] for i in range(self.rank))
                     for c in range(n))

    def weight_from_ambient(self, vec):
        """Fundamental-weight coordinates <vec, alpha_j^vee> of an ambient vector."""
        if self.simple_roots is None:
            raise UnsupportedType("root system has no ambient realisation")
        vec = [Fraction(v) for v in vec]
        out = []
        for a in self.simple_roots:
            c = 2 * _dot(vec, a) / _dot(a, a)
            if c.denominator != 1:
                raise ValueError(f"{tuple(vec)} is not in the weight lattice of {self.name}")
            out.append(int(c))
        return Weight(tuple(out))

    # -- Weyl group elements

    def act_word(self, word, coords):
        for j in reversed(word):
            coords = self.reflect(coords, j)
        return tuple(coords)

    def element(self, rho_image):
        """The Weyl element with the given image of rho, found by greedy descent."""
        mu = tuple(rho_image)
        word = []
        while True:
            j = next((i for i, c in enumerate(mu) if c < 0), None)
            if j is None:
                break
            word.append(j + 1)
            mu = self.reflect(mu, j + 1)
        if any(c != 1 for c in mu):
            raise ValueError(f"{tuple(rho_image)} is not in the Weyl orbit of rho")
        return WeylElement(self, tuple(rho_image), tuple(word))

    def element_from_word(self, word):
        return self.element(self.act_word(tuple(word), self.rho.coords))

    @property
    def identity(self):
        return WeylElement(self, self.rho.coords, ())

    def simple_reflection(self, j):
        return self.element_from_word((j,))


def build_root_system(family, rank):
    """Bourbaki realisation of the simple type ``family``/``rank``."""
    family = str(family).upper()
    if not is_supported(family, rank):
        raise UnsupportedType(f"unsupported type {family}{rank}")
    roots = _bourbaki_simple_roots(family, rank)
    cartan = [[int(2 * _dot(a, b) / _dot(b, b)) for b in roots] for a in roots]
    return RootSystem(cartan, family=family, simple_roots=roots)


# ------------------------------------------------------------- Weyl elements

@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, keyed by its image of rho.

    ``word`` is the lexicographically smallest reduced word.
    """

    rs: RootSystem = field(compare=False, repr=False)
    rho_image: tuple
    word: tuple

    @property
    def length(self):
        return len(self.word)

    def __str__(self):
        return "e" if not self.word else "".join(f"s{j}" for j in self.word)

    def act(self, weight):
        return Weight(self.rs.act_word(self.word, weight.coords))

    def __mul__(self, other):
        return self.rs.element(self.rs.act_word(self.word, other.rho_image))

    def inverse(self):
        return self.rs.element_from_word(tuple(reversed(self.word)))

    def matrix(self):
        """Integer matrix of the action on fundamental-weight coordinates (acting on columns)."""
        r = self.rs.rank
        cols = [self.rs.act_word(self.word, tuple(int(i == j) for i in range(r)))
                for j in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

    def inversions(self):
        """Positive roots sent to negative roots."""
        rs = self.rs
        out = []
        for n, rw in enumerate(rs.root_weights):
            img = rs.act_word(self.word, rw)
            if img not in rs._weight_root_index:
                out.append(rs.positive_roots[n])
        return out


def reduced_words(w):
    """All reduced words of ``w``, sorted lexicographically."""
    rs = w.rs
    memo = {}

    def rec(mu):
        if mu in memo:
            return memo[mu]
        descents = [j + 1 for j, c in enumerate(mu) if c < 0]
        if not descents:
            res = [()]
        else:
            res = []
            for j in descents:
                res.extend((j,) + tail for tail in rec(rs.reflect(mu, j)))
        memo[mu] = res
        return res

    return sorted(rec(w.rho_image))


# ---------------------------------------------------------------- enumeration

class WeylGroup:
    """The enumerated Weyl group: elements ordered by (length, reduced word)."""

    def __init__(self, rs, elements):
        self.rs = rs
        self.elements = elements
        self.index = {w.rho_image: n for n, w in enumerate(elements)}
        self.lengths = [w.length for w in elements]
        top = max(self.lengths)
        self.layers = [[] for _ in range(top + 1)]
        for n, l in enumerate(self.lengths):
            self.layers[l].append(n)
        self._covers = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, n):
        return self.elements[n]

    def __contains__(self, w):
        return w.rho_image in self.index

    @property
    def order(self):
        return len(self.elements)

    @property
    def longest(self):
        return self.elements[-1]

    def index_of(self, w):
        return self.index[w.rho_image]

    def by_length(self, d):
        return [self.elements[n] for n in self.layers[d]]

    def cover_table(self):
        """For each element index, the list of (root index, w*s_beta index) up-covers."""
        if self._covers is None:
            self._covers = _cover_table(self)
        return self._covers

    def covers_up(self, n):
        return self.cover_table()[n]

    def to_payload(self):
        return {
            "family": self.rs.family,
            "rank": self.rs.rank,
            "lattice": self.rs.lattice,
            "order": self.order,
            "longest_length": self.longest.length,
            "words": [list(w.word) for w in self.elements],
        }

    @classmethod
    def from_payload(cls, rs, payload):
        elements = [rs.element_from_word(tuple(word)) for word in payload["words"]]
        return cls(rs, elements)


def enumerate_weyl(rs, cap=DEFAULT_CAP):
    """Enumerate W(rs) breadth-first by length."""
    order = rs.order
    if order > cap:
        raise GroupTooLarge(f"group too large: |W({rs.name})| = {order} exceeds cap {cap}")
    r = rs.rank
    rho = rs.rho.coords
    words = {rho: ()}
    layer = [rho]
    elements = [WeylElement(rs, rho, ())]
    while layer:
        nxt = []
        seen = set()
        for mu in layer:
            for j in range(r):
                if mu[j] > 0:
                    nu = rs.reflect(mu, j + 1)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
        new = []
        for nu in nxt:
            j = next(i for i, c in enumerate(nu) if c < 0)
            word = (j + 1,) + words[rs.reflect(nu, j + 1)]
            words[nu] = word
            new.append(WeylElement(rs, nu, word))
        new.sort(key=lambda w: w.word)
        elements.extend(new)
        layer = [w.rho_image for w in new]
    if len(elements) != order:
        raise InternalInconsistency(f"enumerated {len(elements)} elements, expected {order}")
    return WeylGroup(rs, elements)


def _cover_table(group):
    rs = group.rs
    r = rs.rank
    N = len(group)
    A = np.array(rs.cartan_matrix, dtype=np.int64)
    mats = np.zeros((N, r, r), dtype=np.int64)
    mats[0] = np.eye(r, dtype=np.int64)
    for n in range(1, N):
        w = group.elements[n]
        j = w.word[0] - 1
        parent = group.index[rs.reflect(w.rho_image, j + 1)]
        m = mats[parent]
        mats[n] = m - np.outer(A[j], m[j])
    roots = np.array(rs.root_weights, dtype=np.int64)          # P x r
    heights = np.array([sum(c) for c in rs.coroots], dtype=np.int64)
    rho_img = np.array([w.rho_image for w in group.elements], dtype=np.int64)
    images = np.einsum("nij,pj->npi", mats, roots)            # N x P x r
    targets = rho_img[:, None, :] - heights[None, :, None] * images

    lengths = group.lengths
    index = group.index
    table = []
    for n, rows in enumerate(targets.tolist()):
        out = []
        ln = lengths[n]
        for p, target in enumerate(rows):
            t = index.get(tuple(target))
            if t is not None and lengths[t] == ln + 1:
                out.append((p, t))
        table.append(out)
    return table


def longest_element(rs, group=None):
    """The longest element w0, by greedy ascent from the identity if no enumeration is given."""
    if group is not None:
        return group.longest
    mu = rs.rho.coords
    while True:
        j = next((i for i, c in enumerate(mu) if c > 0), None)
        if j is None:
            break
        mu = rs.reflect(mu, j + 1)
    w0 = rs.element(mu)
    if w0.length != rs.num_positive_roots:
        raise InternalInconsistency("greedy ascent did not reach the longest element")
    return w0


def bruhat_covers_up(w, group=None):
    """Pairs (beta, w*s_beta) with l(w*s_beta) = l(w) + 1, beta positive."""
    rs = w.rs
    if group is not None:
        n = group.index_of(w)
        return [(rs.positive_roots[p], group.elements[t]) for p, t in group.covers_up(n)]
    out = []
    rho = rs.rho.coords
    for p, beta in enumerate(rs.positive_roots):
        h = sum(rs.coroots[p])
        s_rho = tuple(c - h * b for c, b in zip(rho, rs.root_weights[p]))
        v = rs.element(rs.act_word(w.word, s_rho))
        if v.length == w.length + 1:
            out.append((beta, v))
    return out


# ----------------------------------------------------------- Dynkin subgraphs

def dynkin_components(rs, subset):
    """Connected components (sorted tuples of 1-based nodes) of an induced Dynkin subgraph."""
    nodes = sorted(set(subset))
    A = rs.cartan_matrix
    left = set(nodes)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        left.discard(start)
        while stack:
            i = stack.pop()
            for j in list(left):
                if A[i - 1][j - 1] != 0:
                    left.discard(j)
                    comp.add(j)
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    comps.sort()
    return comps


def sub_cartan(rs, nodes):
    nodes = list(nodes)
    return [[rs.cartan_matrix[i - 1][j - 1] for j in nodes] for i in nodes]


def classify_component(rs, comp):
    """Cartan type (family, rank) of a connected set of nodes.

    Rank-2 double bonds are reported as ``("C", 2)``; B2 and C2 coincide.
    """
    comp = list(comp)
    n = len(comp)
    A = sub_cartan(rs, comp)
    lengths = _root_lengths(A)
    bonds = {}
    degree = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != 0:
                bonds[(i, j)] = A[i][j] * A[j][i]
                degree[i] += 1
                degree[j] += 1
    if n == 1:
        return ("A", 1)
    mult = max(bonds.values())
    if mult == 3:
        return ("G", 2)
    if mult == 2:
        if n == 2:
            return ("C", 2)
        (i, j), = [b for b, m in bonds.items() if m == 2]
        ends = [i, j]
        end = next((e for e in ends if degree[e] == 1), None)
        if end is None:
            return ("F", 4)
        # B_n: short root at the end of the double bond; C_n: long root there
        other = j if end == i else i
        return ("B", n) if lengths[end] < lengths[other] else ("C", n)
    if max(degree) <= 2:
        return ("A", n)
    branch = degree.index(3)
    arms = []
    for start in [j for j in range(n) if (min(branch, j), max(branch, j)) in bonds]:
        prev, cur, length = branch, start, 1
        while True:
            nxt = [j for j in range(n) if j != prev and (min(cur, j), max(cur, j)) in bonds]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n)
    raise InternalInconsistency(f"unrecognised Dynkin diagram with arms {arms}")


def parabolic_order(rs, subset, cap=DEFAULT_CAP):
    """|W_J| for the parabolic subgroup generated by the simple reflections in ``subset``."""
    subset = sorted(set(subset))
    rho = rs.rho.coords
    seen = {rho}
    queue = [rho]
    while queue:
        mu = queue.pop()
        for j in subset:
            nu = rs.reflect(mu, j)
            if nu not in seen:
                seen.add(nu)
                if len(seen) > cap:
                    raise GroupTooLarge(f"group too large: parabolic subgroup exceeds cap {cap}")
                queue.append(nu)
    return len(seen)


def levi_positive_roots(rs, subset):
    """Positive roots in the span of the simple roots in ``subset``."""
    allowed = {j - 1 for j in subset}
    return [b for b in rs.positive_roots
            if all(c == 0 for i, c in enumerate(b) if i not in allowed)]


def validate_parabolic(rs, subset):
    subset = set(subset)
    bad = [j for j in subset if not (isinstance(j, int) and 1 <= j <= rs.rank)]
    if bad:
        raise InvalidQuery(f"invalid parabolic subset: nodes {sorted(bad)} outside 1..{rs.rank}")
    return frozenset(subset)


def levi_root_system(rs, subset):
    """Root system of the Levi factor, or None for the torus."""
    nodes = sorted(subset)
    if not nodes:
        return None
    return RootSystem(sub_cartan(rs, nodes))


__all__ = [
    "DEFAULT_CAP", "Weight", "RootSystem", "WeylElement", "WeylGroup",
    "build_root_system", "enumerate_weyl", "longest_element", "bruhat_covers_up",
    "reduced_words", "dynkin_components", "classify_component", "parabolic_order",
    "levi_positive_roots", "levi_root_system", "validate_parabolic",
    "weyl_order_formula", "positive_root_count", "is_supported",
]

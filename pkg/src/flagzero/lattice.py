"""Integer lattices kept in Hermite normal form.

Rows are plain lists of Python ints.  Vectors are inserted one at a time
by a Euclidean row reduction that always pivots on the entry of smallest
absolute value; :meth:`IntegerLattice.reduce` brings the basis to the
canonical (upper-triangular, positive pivots, reduced above pivots)
Hermite normal form, which depends only on the lattice.
"""

from __future__ import annotations

import numpy as np


class IntegerLattice:
    """A sublattice of Z^dim, specified by generators."""

    def __init__(self, dim, vectors=()):
        self.dim = dim
        self.rows = {}  # pivot column -> row
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def add(self, vec):
        """Insert a generator. Returns True if it enlarged the lattice."""
        v = list(vec)
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} in a lattice of dimension {self.dim}")
        changed = False
        col = 0
        while True:
            col = next((j for j in range(col, self.dim) if v[j]), None)
            if col is None:
                return changed
            row = self.rows.get(col)
            if row is None:
                if v[col] < 0:
                    v = [-x for x in v]
                self.rows[col] = v
                return True
            if v[col] % row[col] == 0:
                q = v[col] // row[col]
                for j in range(col, self.dim):
                    if row[j]:
                        v[j] -= q * row[j]
                continue
            # Euclid on the pair (row, v) in this column, smallest pivot first
            a, b = row, v
            while b[col]:
                if abs(b[col]) > abs(a[col]):
                    a, b = b, a
                    continue
                q = a[col] // b[col]
                a = [x - q * y for x, y in zip(a, b)]
                a, b = b, a
            if a[col] < 0:
                a = [-x for x in a]
            self.rows[col] = a
            v = b
            changed = True

    def __contains__(self, vec):
        v = list(vec)
        for col in sorted(self.rows):
            if any(v[:col]):
                return False
            row = self.rows[col]
            if v[col] % row[col]:
                return False
            q = v[col] // row[col]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def reduce(self):
        """Bring the basis into canonical Hermite normal form, in place."""
        cols = sorted(self.rows)
        for i, c in enumerate(cols):
            p = self.rows[c]
            piv = p[c]
            for c2 in cols[:i]:
                r = self.rows[c2]
                q = r[c] // piv
                if q:
                    self.rows[c2] = [x - q * y for x, y in zip(r, p)]
        return self

    def hnf(self):
        """Rows of the canonical Hermite normal form, ordered by pivot column."""
        self.reduce()
        return [list(self.rows[c]) for c in sorted(self.rows)]

    @property
    def pivots(self):
        return [self.rows[c][c] for c in sorted(self.rows)]

    def is_full(self):
        return len(self.rows) == self.dim

    def is_everything(self):
        """True when the lattice is all of Z^dim."""
        return self.is_full() and all(self.rows[c][c] == 1 for c in self.rows)

    def index(self):
        """[Z^dim : L] for a full-rank lattice."""
        if not self.is_full():
            raise ValueError("index of a lattice that is not of full rank")
        out = 1
        for p in self.pivots:
            out *= p
        return out


def hermite_normal_form(vectors, dim=None):
    vectors = [list(v) for v in vectors]
    if dim is None:
        dim = len(vectors[0]) if vectors else 0
    return IntegerLattice(dim, vectors).hnf()



def local_echelon(mat, p, m, basis=None):
    """Echelon basis of the Z/p^m-module spanned by the rows of ``mat``.

    ``mat`` is an integer numpy array.  Over the local ring Z/p^m the entry of
    least p-adic valuation in a column divides every other entry, so one
    pivot clears the whole column; the multiple p^(m-v) * pivot row, which
    vanishes in that column, is fed back in.  ``basis`` is an earlier result
    to extend.  Returns (rows, valuations): rows maps pivot column to its row
    (pivot entry exactly p^v), and valuations[c] is v, or m when column c
    carries no pivot.  The Hermite normal form of L + p^m Z^N then has
    diagonal p^valuations[c].
    """
    q = p ** m
    ncols = mat.shape[1]
    work = np.asarray(mat, dtype=np.int64) % q
    if basis:
        work = np.vstack([np.array([basis[c] for c in sorted(basis)], dtype=np.int64), work])
    rows = {}
    valuations = [m] * ncols
    powers = [p ** k for k in range(m + 1)]
    for c in range(ncols):
        if work.shape[0] == 0:
            break
        col = work[:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        vals = col[nz]
        v = 0
        while True:
            hit = vals % powers[v + 1] != 0
            if hit.any():
                i = nz[int(np.argmax(hit))]
                break
            v += 1
        unit = int(col[i]) // powers[v]
        pivot = (work[i] * pow(unit, -1, q)) % q
        factors = vals // powers[v]
        sub = (work[nz, c:] - np.outer(factors, pivot[c:])) % q
        work[nz, c:] = sub
        rows[c] = pivot
        valuations[c] = v
        dead = nz[~sub[:, 1:].any(axis=1)]
        if dead.size:
            work = np.delete(work, dead, axis=0)
        if v:
            work = np.vstack([work, ((powers[m - v] * pivot) % q).reshape(1, -1)])
    return rows, valuations

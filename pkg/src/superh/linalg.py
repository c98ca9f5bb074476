"""Exact sparse linear algebra over the rationals, with mod-p certificates.

Vectors are sparse dicts {column index: Fraction}.  Subspaces are kept in
reduced row echelon form with unit pivots, which is a canonical representative:
two subspaces are equal iff their echelon matrices are equal.

Full-rank facts are (optionally) certified through a single large prime:
a matrix of full rank mod p has full rank over Q, so the modular check is an
exact proof whenever it reaches the expected rank.  Rank-deficient outcomes are
never trusted from the modular pass alone; callers fall back to exact
elimination or to an explicit dependency witness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Vec = dict[int, Fraction]

# Prime for modular certificates; small enough that int64 dot products of
# length up to ~900 cannot overflow (900 * p^2 < 2^63).
PRIME = 99_999_989


# -- sparse vector helpers ----------------------------------------------------


def vec_scale(v: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def vec_add_scaled(v: Vec, c: Fraction, w: Vec) -> Vec:
    """v + c*w as a new dict."""
    if not c or not w:
        return dict(v)
    out = dict(v)
    for i, x in w.items():
        s = out.get(i)
        if s is None:
            out[i] = c * x
        else:
            s = s + c * x
            if s:
                out[i] = s
            else:
                del out[i]
    return out


def _iadd_scaled(out: Vec, c: Fraction, w: Vec) -> None:
    for i, x in w.items():
        s = out.get(i)
        if s is None:
            out[i] = c * x
        else:
            s = s + c * x
            if s:
                out[i] = s
            else:
                del out[i]


class Echelon:
    """Mutable reduced-row-echelon accumulator for sparse rational rows."""

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, Vec] = {}  # pivot column -> normalized row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v after elimination against the stored pivots.

        Stored rows are inter-reduced (no row meets another row's pivot
        column), so one pass over the pivot entries of v is complete.
        """
        v = dict(v)
        if not self.rows:
            return v
        for c in [c for c in v if c in self.rows]:
            coeff = v.get(c)
            if coeff:
                _iadd_scaled(v, -coeff, self.rows[c])
        return v

    def add(self, v: Vec) -> bool:
        """Insert v; returns True when it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        c = min(v)
        inv = 1 / v[c]
        v = {i: inv * x for i, x in v.items()}
        for row in self.rows.values():
            coeff = row.get(c)
            if coeff is not None:
                _iadd_scaled(row, -coeff, v)
        self.rows[c] = v
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def sorted_rows(self) -> list[tuple[int, Vec]]:
        return sorted(self.rows.items())


class Subspace:
    """Immutable subspace of Q^width in canonical reduced echelon form."""

    __slots__ = ("width", "pivots", "rows")

    def __init__(self, width: int, rows: Sequence[tuple[int, Vec]]):
        self.width = width
        self.pivots = tuple(p for p, _ in rows)
        self.rows = tuple(dict(r) for _, r in rows)

    @staticmethod
    def from_vectors(vectors: Iterable[Vec], width: int) -> "Subspace":
        ech = Echelon(width)
        for v in vectors:
            ech.add(v)
        return Subspace(width, ech.sorted_rows())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis_vectors(self) -> list[Vec]:
        return [dict(r) for r in self.rows]

    def reduce(self, v: Vec) -> Vec:
        """Fully reduced residual of v modulo the subspace (rows are rref)."""
        v = dict(v)
        if not self.rows:
            return v
        piv_index = {p: i for i, p in enumerate(self.pivots)}
        for c in [c for c in v if c in piv_index]:
            coeff = v.get(c)
            if coeff:
                _iadd_scaled(v, -coeff, self.rows[piv_index[c]])
        return v

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vec, check: bool = True) -> list[Fraction] | None:
        """Coefficients of v in the echelon basis (pivot-column readoff)."""
        coords = [v.get(p, Fraction(0)) for p in self.pivots]
        if check:
            residual = dict(v)
            for c, row in zip(coords, self.rows):
                if c:
                    _iadd_scaled(residual, -c, row)
            if residual:
                return None
        return coords

    def linear_combination(self, coords: Sequence[Fraction]) -> Vec:
        out: Vec = {}
        for c, row in zip(coords, self.rows):
            if c:
                _iadd_scaled(out, c, row)
        return out

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.width != other.width:
            raise ValueError("ambient widths differ")
        ech = Echelon(self.width)
        for r in self.rows:
            ech.add(r)
        for r in other.rows:
            ech.add(r)
        return Subspace(self.width, ech.sorted_rows())

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection: echelonize [A|A; B|0] over width 2w.

        Rows whose pivot falls in the right block have zero left block, and
        their right halves form a basis of the intersection.
        """
        if self.width != other.width:
            raise ValueError("ambient widths differ")
        w = self.width
        ech = Echelon(2 * w)
        for r in self.rows:
            doubled = dict(r)
            doubled.update({i + w: x for i, x in r.items()})
            ech.add(doubled)
        for r in other.rows:
            ech.add(dict(r))
        inter = Echelon(w)
        for p, row in ech.sorted_rows():
            if p >= w:
                inter.add({i - w: x for i, x in row.items()})
        return Subspace(w, inter.sorted_rows())

    def complement_columns(self) -> list[int]:
        """Column indices without a pivot (canonical quotient representatives)."""
        pivset = set(self.pivots)
        return [c for c in range(self.width) if c not in pivset]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.width == other.width and self.pivots == other.pivots
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.width, self.pivots))

    def __repr__(self):
        return f"Subspace(width={self.width}, dim={self.dim})"


def kernel_of_equations(rows: Iterable[Vec], width: int) -> Subspace:
    """Canonical basis of {v : row . v = 0 for every equation row}."""
    ech = Echelon(width)
    for r in rows:
        ech.add(r)
    pivot_rows = ech.sorted_rows()
    pivot_set = {p for p, _ in pivot_rows}
    kernel = Echelon(width)
    for free in range(width):
        if free in pivot_set:
            continue
        v: Vec = {free: Fraction(1)}
        for p, row in pivot_rows:
            coeff = row.get(free)
            if coeff:
                v[p] = -coeff
        kernel.add(v)
    return Subspace(width, kernel.sorted_rows())


def rank_of_vectors(vectors: Iterable[Vec], width: int) -> int:
    ech = Echelon(width)
    for v in vectors:
        ech.add(v)
    return ech.dim


# -- modular certificates ------------------------------------------------------


def vec_modp(v: Vec, width: int, p: int = PRIME) -> np.ndarray:
    out = np.zeros(width, dtype=np.int64)
    for i, x in v.items():
        out[i] = x.numerator * pow(x.denominator, p - 2, p) % p
    return out


def matrix_modp(vectors: Sequence[Vec], width: int, p: int = PRIME) -> np.ndarray:
    mat = np.zeros((len(vectors), width), dtype=np.int64)
    for r, v in enumerate(vectors):
        for i, x in v.items():
            mat[r, i] = x.numerator * pow(x.denominator, p - 2, p) % p
    return mat


def rref_modp(a: np.ndarray, p: int = PRIME) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_modp(vectors: Sequence[Vec], width: int, p: int = PRIME) -> int:
    if not vectors:
        return 0
    _, pivots = rref_modp(matrix_modp(vectors, width, p), p)
    return len(pivots)


def certified_full_rank(vectors: Sequence[Vec], width: int) -> bool:
    """True iff the vectors are linearly independent over Q.

    The modular pass is a sound certificate when it reaches len(vectors);
    otherwise the exact elimination decides.
    """
    n = len(vectors)
    if n == 0:
        return True
    if n > width:
        return False
    if rank_modp(vectors, width) == n:
        return True
    return rank_of_vectors(vectors, width) == n


class EchelonModP:
    """Row space accumulator mod p for fast closure iteration."""

    def __init__(self, width: int, p: int = PRIME):
        self.width = width
        self.p = p
        self.rows = np.zeros((0, width), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def add_batch(self, batch: np.ndarray) -> int:
        """Absorb new rows; returns how many new dimensions appeared."""
        p = self.p
        batch = batch % p
        if self.rows.shape[0]:
            for idx, c in enumerate(self.pivots):
                coeffs = batch[:, c].copy()
                nz = np.nonzero(coeffs)[0]
                if nz.size:
                    batch[nz] = (batch[nz] - np.outer(coeffs[nz], self.rows[idx])) % p
        added = 0
        reduced, new_pivots = rref_modp(batch, p)
        for row, c in zip(reduced, new_pivots):
            # reduce stored rows against the new pivot
            if self.rows.shape[0]:
                coeffs = self.rows[:, c].copy()
                nz = np.nonzero(coeffs)[0]
                if nz.size:
                    self.rows[nz] = (self.rows[nz] - np.outer(coeffs[nz], row)) % p
            self.rows = np.vstack([self.rows, row[None, :]])
            self.pivots.append(c)
            added += 1
        return added

"""Exact linear algebra over the rationals.

Every scalar is a :class:`fractions.Fraction`; there is no floating point
and no tolerance anywhere.  Ranks, kernels and echelon forms are exact,
which is what makes dimension counts trustworthy: a Betti number computed
here is a theorem about the input matrices, not an estimate.

The reduction engine clears denominators and eliminates on sparse integer
rows (gcd-stripped after every combination) before normalising pivots back
to fractions.  Reduced row echelon form over a field is unique, so every
result below is canonical no matter which pivots the heuristic picks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Q = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SubspaceNotContained(Exception):
    """The alleged subspace has vectors outside the ambient span."""


def rational(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(rational(x) for x in xs)


def unit_vector(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(tuple(rational(x) for x in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: int, cols: int, entries) -> "Matrix":
        """Internal constructor for entries that are already Fraction tuples."""
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("cannot infer row count from zero columns")
            rows = len(columns[0])
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(
            self.rows,
            self.cols,
            tuple(tuple(-x if x else _ZERO for x in row) for row in self.entries),
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return Matrix._raw(
            self.rows,
            self.cols,
            tuple(
                tuple((a + b) if a and b else (b if b else a) for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        return self.scale(rational(other))

    def __rmul__(self, other):
        return self.scale(rational(other))

    def scale(self, c: Fraction) -> "Matrix":
        return Matrix._raw(
            self.rows,
            self.cols,
            tuple(tuple(c * x if x else _ZERO for x in row) for row in self.entries),
        )

    def _matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        ob = other.entries
        for i, row in enumerate(self.entries):
            acc = out[i]
            for k, a in enumerate(row):
                if a:
                    # accumulate a * (row k of other), skipping zero a
                    brow = ob[k]
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
        return Matrix._raw(self.rows, other.cols, tuple(tuple(r) for r in out))

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        vec = vector(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for row in self.entries:
            s = _ZERO
            for a, x in zip(row, vec):
                if a and x:
                    s += a * x
            out.append(s)
        return tuple(out)

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        blocks = list(blocks)
        if not blocks:
            raise ValueError("vstack of no blocks")
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("column mismatch in vstack")
        rows = []
        for b in blocks:
            rows.extend(b.entries)
        return cls(len(rows), cols, rows)

    # -- elimination-backed queries ------------------------------------

    def _int_rows(self) -> list[dict]:
        """Rows as sparse primitive integer dicts (denominators cleared)."""
        out = []
        for row in self.entries:
            d: dict[int, int] = {}
            den = 1
            for x in row:
                if x:
                    den = den * x.denominator // gcd(den, x.denominator)
            for j, x in enumerate(row):
                if x:
                    d[j] = x.numerator * (den // x.denominator)
            _strip_gcd(d)
            out.append(d)
        return out

    def _rref_data(self):
        pivots, rows = _gauss_jordan(self._int_rows(), self.cols)
        return pivots, rows

    def rank(self) -> int:
        return len(self._rref_data()[0])

    def rref(self) -> "tuple[Matrix, tuple[int, ...]]":
        """Reduced row echelon form (unique) and its pivot columns."""
        pivots, rows = self._rref_data()
        out = []
        for p, r in zip(pivots, rows):
            lead = r[p]
            out.append([Fraction(r.get(j, 0), lead) for j in range(self.cols)])
        while len(out) < self.rows:
            out.append([_ZERO] * self.cols)
        return Matrix(self.rows, self.cols, out), tuple(pivots)

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        """Canonical kernel basis: one vector per free column, set to 1."""
        pivots, rows = self._rref_data()
        pivot_set = set(pivots)
        free = [j for j in range(self.cols) if j not in pivot_set]
        basis = []
        for f in free:
            v = [_ZERO] * self.cols
            v[f] = _ONE
            for p, r in zip(pivots, rows):
                num = r.get(f)
                if num:
                    v[p] = Fraction(-num, r[p])
            basis.append(tuple(v))
        return basis

    def column_space_basis(self) -> list[tuple[Fraction, ...]]:
        """Canonical echelon basis of the column span."""
        return echelon_basis(self.columns())


def _strip_gcd(row: dict) -> None:
    if not row:
        return
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def _combine(row: dict, prow: dict, a: int, b: int) -> dict:
    """Return primitive a*row - b*prow."""
    out = {c: a * v for c, v in row.items()}
    for c, v in prow.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    _strip_gcd(out)
    return out


def _gauss_jordan(int_rows: list[dict], cols: int):
    """Full Gauss-Jordan elimination on sparse integer rows.

    Returns (pivot columns, reduced integer rows), one row per pivot, with
    every pivot column eliminated from every other row.  Pivot rows are
    primitive; uniqueness of RREF is restored by the callers' final
    division by the pivot entry.
    """
    active = [r for r in int_rows if r]
    pivots: list[int] = []
    prows: list[dict] = []
    for c in range(cols):
        best = -1
        best_key = None
        for idx, r in enumerate(active):
            v = r.get(c)
            if v is not None:
                key = (len(r), abs(v))
                if best_key is None or key < best_key:
                    best_key = key
                    best = idx
        if best < 0:
            continue
        prow = active.pop(best)
        pv = prow[c]
        for rows_list in (active, prows):
            for idx, r in enumerate(rows_list):
                v = r.get(c)
                if v is not None:
                    rows_list[idx] = _combine(r, prow, pv, v)
        active = [r for r in active if r]
        pivots.append(c)
        prows.append(prow)
    return pivots, prows


class EchelonSpan:
    """Incrementally maintained echelon basis of a growing span."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, tuple[Fraction, ...]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Residual of vec after reduction against the current span."""
        v = list(vector(vec))
        # increasing pivot order: rows have zeros left of their own pivot,
        # so earlier-cleared positions are never reintroduced
        for p in sorted(self._rows):
            c = v[p]
            if c:
                row = self._rows[p]
                for j in range(p, self.dim):
                    if row[j]:
                        v[j] -= c * row[j]
        return tuple(v)

    def add(self, vec: Sequence) -> bool:
        """Add vec to the span; True if it enlarged the span."""
        res = self.reduce(vec)
        for p, x in enumerate(res):
            if x:
                lead = x
                self._rows[p] = tuple(y / lead for y in res)
                return True
        return False

    def contains(self, vec: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(vec))


def span_rank(vectors: Sequence[Sequence]) -> int:
    vectors = [vector(v) for v in vectors]
    if not vectors:
        return 0
    return Matrix.from_rows(vectors).rank()


def echelon_basis(vectors: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    """Canonical (RREF-row) basis of the span of the given vectors."""
    vectors = [vector(v) for v in vectors]
    if not vectors:
        return []
    m = Matrix.from_rows(vectors)
    red, pivots = m.rref()
    return [red.row(i) for i in range(len(pivots))]


def quotient_dim(big: Sequence[Sequence], small: Sequence[Sequence]) -> int:
    """dim(span(big)/span(small)), verifying span(small) <= span(big)."""
    big = [vector(v) for v in big]
    small = [vector(v) for v in small]
    rank_big = span_rank(big)
    if small:
        rank_all = span_rank(list(big) + list(small))
        if rank_all > rank_big:
            raise SubspaceNotContained(
                f"span of rank {span_rank(small)} is not inside the rank-{rank_big} span"
            )
    return rank_big - span_rank(small)


def solve_columns(a: Matrix, b: Matrix) -> Matrix | None:
    """Solve a * X = b columnwise; None if any column is inconsistent.

    Free variables, if any, are set to zero, so the result is the unique
    solution whenever `a` has full column rank.
    """
    if a.rows != b.rows:
        raise ValueError("row mismatch in solve")
    aug = Matrix(a.rows, a.cols + b.cols, [ra + rb for ra, rb in zip(a.entries, b.entries)])
    pivots, rows = aug._rref_data()
    for p in pivots:
        if p >= a.cols:
            return None
    out = [[_ZERO] * b.cols for _ in range(a.cols)]
    for p, r in zip(pivots, rows):
        lead = r[p]
        for j in range(b.cols):
            num = r.get(a.cols + j)
            if num:
                out[p][j] = Fraction(num, lead)
    return Matrix(a.cols, b.cols, out)

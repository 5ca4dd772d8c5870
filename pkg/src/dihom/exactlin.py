"""Exact linear algebra over the integers, the rationals and prime fields.

Everything here works on immutable :class:`Matrix` values whose entries are
Python ints (integers, prime fields) or :class:`fractions.Fraction`
(rationals).  The Smith normal form is the workhorse: kernels, column spans,
linear solves and presentations of subquotients are all read off from it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

DEFAULT_MAX_MATRIX = 5000


class ExactLinError(ValueError):
    """Base class for errors raised by the exact linear algebra layer."""


class MatrixTooLarge(ExactLinError):
    pass


class NotContained(ExactLinError):
    """A vector or span was expected to lie in another span but does not."""


class NotWellDefined(ExactLinError):
    """A matrix does not descend to the quotient it was asked to act on."""


def max_matrix_dim() -> int:
    value = os.environ.get("DIHOM_MAX_MATRIX")
    if value is None:
        return DEFAULT_MAX_MATRIX
    return int(value)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    q = 3
    while q * q <= p:
        if p % q == 0:
            return False
        q += 2
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """One of Z, Q or F_p.

    ``kind`` is ``"Z"``, ``"Q"`` or ``"Fp"``; ``p`` is only used for prime
    fields.
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if not (2 <= self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime p < 2^31, got {self.p}")
        elif self.p:
            raise ValueError("only prime fields carry a characteristic")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        """Parse ``z``, ``q`` or ``fp:P``."""
        t = text.strip().lower()
        if t in ("z", "zz", "int", "integers"):
            return cls("Z")
        if t in ("q", "qq", "rationals"):
            return cls("Q")
        if t.startswith("fp:") or t.startswith("f"):
            digits = t.split(":", 1)[1] if ":" in t else t[1:]
            return cls("Fp", int(digits))
        raise ValueError(f"unknown ring {text!r}")

    @property
    def name(self) -> str:
        return {"Z": "z", "Q": "q"}.get(self.kind) or f"fp:{self.p}"

    def __str__(self):
        return {"Z": "Z", "Q": "Q"}.get(self.kind) or f"F_{self.p}"

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def coerce(self, x):
        if isinstance(x, bool):
            x = int(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x.numerator)
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {x!r} into Z")
        if self.kind == "Q":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            if isinstance(x, str):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into Q")
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def reduce(self, x):
        """Normalise an entry produced by plain Python arithmetic."""
        return x % self.p if self.kind == "Fp" else x

    def is_unit(self, x) -> bool:
        if self.kind == "Z":
            return x in (1, -1)
        return x != 0

    def inverse(self, x):
        if self.kind == "Z":
            if x in (1, -1):
                return x
            raise ZeroDivisionError(f"{x} is not a unit in Z")
        if x == 0:
            raise ZeroDivisionError("division by zero")
        if self.kind == "Q":
            return 1 / x
        return pow(x, -1, self.p)

    def quotient(self, a, b):
        """Euclidean quotient: ``a - quotient(a, b) * b`` is small or zero."""
        if self.kind == "Z":
            return a // b
        return self.reduce(a * self.inverse(b))

    def exact_div(self, a, b):
        """Return ``q`` with ``q * b == a`` or ``None`` if there is none."""
        if b == 0:
            return self.zero if a == 0 else None
        if self.kind == "Z":
            q, r = divmod(a, b)
            return q if r == 0 else None
        return self.reduce(a * self.inverse(b))

    def size(self, x) -> int:
        """Pivot weight; smaller is a better pivot."""
        if self.kind == "Z":
            return abs(x)
        return 0 if x == 0 else 1

    def associate_unit(self, x):
        """Unit ``u`` such that ``u * x`` is the canonical associate."""
        if self.kind == "Z":
            return -1 if x < 0 else 1
        return self.inverse(x)

    def canonical_residue(self, x, modulus):
        """Representative of ``x`` modulo ``modulus`` (integers only)."""
        if modulus == 0:
            return x
        return x % abs(modulus)

    def to_json(self, x):
        if self.kind == "Q":
            return str(x) if x.denominator != 1 else int(x.numerator)
        return int(x)


ZZ = CoefficientRing("Z")
QQ = CoefficientRing("Q")


def GF(p: int) -> CoefficientRing:
    return CoefficientRing("Fp", p)


class Matrix:
    """Immutable dense matrix over a :class:`CoefficientRing`."""

    __slots__ = ("ring", "nrows", "ncols", "rows", "__dict__")

    def __init__(self, ring: CoefficientRing, rows: Iterable[Iterable], ncols: Optional[int] = None):
        coerce = ring.coerce
        rows = tuple(tuple(coerce(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _raw(cls, ring, rows, ncols):
        m = cls.__new__(cls)
        object.__setattr__(m, "ring", ring)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "rows", tuple(tuple(r) for r in rows))
        return m

    def __setattr__(self, name, value):
        if name in ("ring", "nrows", "ncols", "rows"):
            raise AttributeError("Matrix is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        z = ring.zero
        return cls._raw(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls._raw(ring, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, ring, columns: Sequence[Sequence], nrows: int):
        columns = [tuple(ring.coerce(x) for x in c) for c in columns]
        for c in columns:
            if len(c) != nrows:
                raise ValueError("column length mismatch")
        rows = [[c[i] for c in columns] for i in range(nrows)]
        return cls._raw(ring, rows, len(columns))

    @classmethod
    def diagonal(cls, ring, entries, nrows=None, ncols=None):
        k = len(entries)
        nrows = k if nrows is None else nrows
        ncols = k if ncols is None else ncols
        m = [[ring.zero] * ncols for _ in range(nrows)]
        for i, d in enumerate(entries):
            m[i][i] = ring.coerce(d)
        return cls._raw(ring, m, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def take_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.ring, [[r[j] for j in idx] for r in self.rows], len(idx))

    def take_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.ring, [self.rows[i] for i in idx], self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.ring, [list(c) for c in zip(*self.rows)] if self.nrows else
                           [[] for _ in range(self.ncols)], self.nrows)

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ring != self.ring:
            raise ExactLinError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __matmul__(self, other):
        if isinstance(other, (tuple, list)):
            return self.apply(other)
        self._check(other)
        if self.ncols != other.nrows:
            raise ExactLinError(f"shape mismatch {self.shape} @ {other.shape}")
        red = self.ring.reduce
        ocols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([red(sum(x * c[k] for k, x in nz)) if nz else self.ring.zero for c in ocols])
        return Matrix._raw(self.ring, out, other.ncols)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ExactLinError(f"vector of length {len(vec)} for {self.shape} matrix")
        red = self.ring.reduce
        nz = [(k, x) for k, x in enumerate(vec) if x]
        z = self.ring.zero
        return tuple(red(sum(r[k] * x for k, x in nz)) if nz else z for r in self.rows)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ExactLinError("shape mismatch in addition")
        red = self.ring.reduce
        return Matrix._raw(self.ring, [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                           self.ncols)

    def __neg__(self):
        red = self.ring.reduce
        return Matrix._raw(self.ring, [[red(-a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.ring.coerce(c)
        red = self.ring.reduce
        return Matrix._raw(self.ring, [[red(c * a) for a in r] for r in self.rows], self.ncols)

    def hstack(self, *others: "Matrix") -> "Matrix":
        rows = [list(r) for r in self.rows]
        ncols = self.ncols
        for o in others:
            self._check(o)
            if o.nrows != self.nrows:
                raise ExactLinError("row count mismatch in hstack")
            for r, s in zip(rows, o.rows):
                r.extend(s)
            ncols += o.ncols
        return Matrix._raw(self.ring, rows, ncols)

    def vstack(self, *others: "Matrix") -> "Matrix":
        rows = list(self.rows)
        for o in others:
            self._check(o)
            if o.ncols != self.ncols:
                raise ExactLinError("column count mismatch in vstack")
            rows.extend(o.rows)
        return Matrix._raw(self.ring, rows, self.ncols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.shape, self.rows))

    def __repr__(self):
        return f"Matrix({self.ring}, {[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def to_json(self):
        tj = self.ring.to_json
        return [[tj(x) for x in r] for r in self.rows]

    @cached_property
    def _snf(self) -> "SNF":
        return _smith(self, pivot="min")

    @property
    def rank(self) -> int:
        return self._snf.rank


def check_size(*dims: int):
    cap = max_matrix_dim()
    for d in dims:
        if d > cap:
            raise MatrixTooLarge(f"matrix dimension {d} exceeds the cap {cap} (set DIHOM_MAX_MATRIX to raise it)")


@dataclass(frozen=True, eq=False)
class SNF:
    """``U @ M @ V == D`` with ``U``, ``V`` invertible; ``Uinv`` is ``U``'s inverse."""

    matrix: Matrix
    U: Matrix
    D: Matrix
    V: Matrix
    Uinv: Matrix
    diagonal: tuple
    pivot: str

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def invariant_factors(self) -> tuple:
        ring = self.matrix.ring
        if ring.is_field:
            return ()
        return tuple(d for d in self.diagonal if not ring.is_unit(d))


def _choose_pivot(ring, a, t, m, n, pivot):
    if pivot == "first":
        for j in range(t, n):
            for i in range(t, m):
                if a[i][j]:
                    return i, j
        return None
    best, best_size = None, None
    size = ring.size
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x:
                s = size(x)
                if best is None or s < best_size:
                    best, best_size = (i, j), s
                    if s == 1:
                        return best
    return best


def _smith(mat: Matrix, pivot: str = "min") -> SNF:
    ring = mat.ring
    m, n = mat.shape
    check_size(m, n)
    red = ring.reduce
    zero, one = ring.zero, ring.one
    a = [list(r) for r in mat.rows]
    U = [[one if i == j else zero for j in range(m)] for i in range(m)]
    Ui = [[one if i == j else zero for j in range(m)] for i in range(m)]
    V = [[one if i == j else zero for j in range(n)] for i in range(n)]
    is_field = ring.is_field

    def row_addmul(i, t, q):
        # row_i -= q * row_t ; inverse tracks column_t += q * column_i
        ai, at = a[i], a[t]
        for k in range(n):
            if at[k]:
                ai[k] = red(ai[k] - q * at[k])
        ui, ut = U[i], U[t]
        for k in range(m):
            if ut[k]:
                ui[k] = red(ui[k] - q * ut[k])
        for r in Ui:
            if r[i]:
                r[t] = red(r[t] + q * r[i])

    def col_addmul(j, t, q):
        # col_j -= q * col_t
        for r in a:
            if r[t]:
                r[j] = red(r[j] - q * r[t])
        for r in V:
            if r[t]:
                r[j] = red(r[j] - q * r[t])

    def swap_rows(i, t):
        if i != t:
            a[i], a[t] = a[t], a[i]
            U[i], U[t] = U[t], U[i]
            for r in Ui:
                r[i], r[t] = r[t], r[i]

    def swap_cols(j, t):
        if j != t:
            for r in a:
                r[j], r[t] = r[t], r[j]
            for r in V:
                r[j], r[t] = r[t], r[j]

    diag = []
    t = 0
    while t < min(m, n):
        piv = _choose_pivot(ring, a, t, m, n, pivot)
        if piv is None:
            break
        swap_rows(piv[0], t)
        swap_cols(piv[1], t)
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    row_addmul(i, t, ring.quotient(a[i][t], p))
            for j in range(t + 1, n):
                if a[t][j]:
                    col_addmul(j, t, ring.quotient(a[t][j], p))
            # leftovers in row/column t are strictly smaller than the pivot
            cand = None
            for i in range(t + 1, m):
                if a[i][t] and (cand is None or ring.size(a[i][t]) < ring.size(a[cand[0]][cand[1]])):
                    cand = (i, t)
            for j in range(t + 1, n):
                if a[t][j] and (cand is None or ring.size(a[t][j]) < ring.size(a[cand[0]][cand[1]])):
                    cand = (t, j)
            if cand is not None:
                swap_rows(cand[0], t)
                swap_cols(cand[1], t)
                continue
            if is_field:
                break
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row_t += row_bad, i.e. row_addmul with q = -1
            row_addmul(t, bad, -1)
        u = ring.associate_unit(a[t][t])
        if u != 1:
            a[t] = [red(u * x) for x in a[t]]
            U[t] = [red(u * x) for x in U[t]]
            uinv = ring.inverse(u)
            for r in Ui:
                r[t] = red(r[t] * uinv)
        diag.append(a[t][t])
        t += 1

    return SNF(
        matrix=mat,
        U=Matrix._raw(ring, U, m),
        D=Matrix._raw(ring, a, n),
        V=Matrix._raw(ring, V, n),
        Uinv=Matrix._raw(ring, Ui, m),
        diagonal=tuple(diag),
        pivot=pivot,
    )


def smith_normal_form(m: Matrix, pivot: str = "min") -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    Over Z the diagonal of ``D`` is a non-negative divisibility chain; over a
    field it is ``1, ..., 1, 0, ...``.  ``pivot`` selects the elimination
    order: ``"min"`` (smallest absolute value) or ``"first"`` (first nonzero
    entry in column-major order).
    """
    s = m._snf if pivot == "min" else _smith(m, pivot)
    return s.U, s.D, s.V


def snf(m: Matrix, pivot: str = "min") -> SNF:
    return m._snf if pivot == "min" else _smith(m, pivot)


def invariant_factors(m: Matrix) -> tuple:
    return m._snf.invariant_factors


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{x : m x = 0}``.

    Over Z the basis spans a saturated sublattice (a direct summand).
    """
    s = m._snf
    return s.V.take_columns(range(s.rank, m.ncols))


def column_span_basis(m: Matrix) -> Matrix:
    """A basis (linearly independent columns) of the column span of ``m``."""
    s = m._snf
    ring = m.ring
    cols = []
    for i, d in enumerate(s.diagonal):
        cols.append(tuple(ring.reduce(x * d) for x in s.Uinv.column(i)))
    return Matrix.from_columns(ring, cols, m.nrows)


class LinearSolver:
    """Solve ``m x = v`` exactly, reusing one Smith decomposition."""

    def __init__(self, m: Matrix):
        self.matrix = m
        self._s = m._snf

    def solve(self, v: Sequence) -> Optional[tuple]:
        m, s = self.matrix, self._s
        ring = m.ring
        if len(v) != m.nrows:
            raise ExactLinError("vector length does not match matrix rows")
        y = s.U.apply(tuple(ring.coerce(x) for x in v))
        r = s.rank
        if any(y[r:]):
            return None
        w = []
        for i in range(r):
            q = ring.exact_div(y[i], s.diagonal[i])
            if q is None:
                return None
            w.append(q)
        w.extend([ring.zero] * (m.ncols - r))
        return s.V.apply(w)

    def contains(self, v: Sequence) -> bool:
        return self.solve(v) is not None

    def solve_matrix(self, B: Matrix) -> Matrix:
        cols = []
        for j, c in enumerate(B.columns()):
            x = self.solve(c)
            if x is None:
                raise NotContained(f"column {j} is not in the column span")
            cols.append(x)
        return Matrix.from_columns(self.matrix.ring, cols, self.matrix.ncols)


def solve(m: Matrix, v: Sequence) -> Optional[tuple]:
    return LinearSolver(m).solve(v)


def span_contains(big: Matrix, small: Matrix) -> bool:
    """True iff every column of ``small`` lies in the column span of ``big``."""
    if small.ncols == 0:
        return True
    s = LinearSolver(big)
    return all(s.contains(c) for c in small.columns())


def same_span(a: Matrix, b: Matrix) -> bool:
    return span_contains(a, b) and span_contains(b, a)


def hstack_all(ring, nrows, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.zeros(ring, nrows, 0)
    return out.hstack(*mats) if mats else out


def _dedup_columns(m: Matrix) -> Matrix:
    seen, keep = set(), []
    for j, c in enumerate(m.columns()):
        if any(c) and c not in seen:
            seen.add(c)
            keep.append(j)
    return m.take_columns(keep)


class PresentedModule:
    """The cokernel of ``relations``: ``R^k / span(relations)``.

    ``relations`` has one column per relation.  The Smith form of the
    relations gives a canonical coordinate system: each class is encoded by
    its torsion coordinates (reduced modulo the invariant factors) followed by
    its free coordinates.
    """

    def __init__(self, ring: CoefficientRing, generator_count: int, relations: Optional[Matrix] = None):
        if relations is None:
            relations = Matrix.zeros(ring, generator_count, 0)
        if relations.nrows != generator_count:
            raise ExactLinError("relations must have one row per generator")
        if relations.ring != ring:
            raise ExactLinError("ring mismatch between module and relations")
        self.ring = ring
        self.generator_count = generator_count
        self.relations = relations

    @cached_property
    def _snf(self) -> SNF:
        return _dedup_columns(self.relations)._snf

    @cached_property
    def slots(self) -> tuple:
        """``(row, modulus)`` for each canonical coordinate; modulus 0 is free."""
        s = self._snf
        ring = self.ring
        out = []
        for i, d in enumerate(s.diagonal):
            if not ring.is_unit(d):
                out.append((i, d))
        for i in range(s.rank, self.generator_count):
            out.append((i, 0))
        return tuple(out)

    @property
    def invariant_factors(self) -> tuple:
        return tuple(d for _, d in self.slots if d != 0)

    @property
    def free_rank(self) -> int:
        return self.generator_count - self._snf.rank

    @property
    def size(self) -> int:
        """Number of canonical generators."""
        return len(self.slots)

    def is_zero(self) -> bool:
        return not self.slots

    def reduce(self, vec: Sequence) -> tuple:
        """Canonical coordinates of the class of ``vec``."""
        ring = self.ring
        y = self._snf.U.apply(tuple(ring.coerce(x) for x in vec))
        return tuple(ring.canonical_residue(y[i], d) if d else y[i] for i, d in self.slots)

    def is_zero_element(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def canonical_generators(self) -> Matrix:
        """Generator-coordinate vectors of the canonical generators (columns)."""
        return self._snf.Uinv.take_columns([i for i, _ in self.slots])

    def lift(self, canonical: Sequence) -> tuple:
        """Generator coordinates of the class with the given canonical coordinates."""
        g = self.canonical_generators()
        return g.apply(tuple(canonical))

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"{self.ring}^{self.free_rank}" if self.free_rank > 1 else str(self.ring))
        for d in self.invariant_factors:
            parts.append(f"Z/{d}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        tj = self.ring.to_json
        return {
            "generator_count": self.generator_count,
            "free_rank": self.free_rank,
            "invariant_factors": [tj(d) for d in self.invariant_factors],
            "description": self.describe(),
        }

    def __repr__(self):
        return f"<PresentedModule {self.describe()} ({self.generator_count} generators)>"


class Subquotient(PresentedModule):
    """``span(cycles) / span(boundaries)`` presented on the cycle basis."""

    def __init__(self, cycles: Matrix, boundaries: Matrix):
        ring = cycles.ring
        if cycles.nrows != boundaries.nrows:
            raise ExactLinError("cycles and boundaries live in different ambient modules")
        if cycles.ncols and cycles.rank < cycles.ncols:
            cycles = column_span_basis(cycles)
        self.cycles = cycles
        self.boundaries = boundaries
        self._solver = LinearSolver(cycles)
        try:
            coords = self._solver.solve_matrix(boundaries)
        except NotContained as exc:
            raise NotContained(f"boundaries are not contained in cycles (not a chain complex): {exc}") from None
        super().__init__(ring, cycles.ncols, coords)

    def coordinates(self, vec: Sequence) -> tuple:
        x = self._solver.solve(vec)
        if x is None:
            raise NotContained("vector is not a cycle")
        return x

    def class_of(self, vec: Sequence) -> tuple:
        """Canonical coordinates of the class of an ambient cycle."""
        return self.reduce(self.coordinates(vec))

    def representatives(self) -> Matrix:
        """Ambient cycles representing the canonical generators (columns)."""
        return self.cycles @ self.canonical_generators()


def subquotient(cycles: Matrix, boundaries: Matrix) -> Subquotient:
    return Subquotient(cycles, boundaries)


class ModuleMorphism:
    """A map of presented modules given on generators.

    ``matrix`` has shape ``(target.generator_count, source.generator_count)``.
    Construction checks that source relations land in the span of target
    relations and stores the witnessing coefficients in ``certificate``.
    """

    def __init__(self, source: PresentedModule, target: PresentedModule, matrix: Matrix):
        if matrix.shape != (target.generator_count, source.generator_count):
            raise ExactLinError(f"morphism matrix shape {matrix.shape} does not match "
                                f"{target.generator_count}x{source.generator_count}")
        self.source = source
        self.target = target
        self.matrix = matrix
        image = matrix @ source.relations
        solver = LinearSolver(target.relations)
        cert = []
        for j, c in enumerate(image.columns()):
            x = solver.solve(c)
            if x is None:
                raise NotWellDefined(f"relation {j} of the source is not sent to a relation of the target")
            cert.append(x)
        self.certificate = Matrix.from_columns(matrix.ring, cert, target.relations.ncols)

    @cached_property
    def canonical_matrix(self) -> Matrix:
        cols = [self.target.reduce(self.matrix.apply(g)) for g in self.source.canonical_generators().columns()]
        return Matrix.from_columns(self.matrix.ring, cols, self.target.size)

    def __call__(self, vec: Sequence) -> tuple:
        return self.matrix.apply(vec)

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self`` after ``other``."""
        if other.target.generator_count != self.source.generator_count:
            raise ExactLinError("morphisms are not composable")
        return ModuleMorphism(other.source, self.target, self.matrix @ other.matrix)

    def __matmul__(self, other):
        return self.compose(other)

    def equals(self, other: "ModuleMorphism") -> bool:
        """Equality as maps of the underlying modules."""
        diff = self.matrix - other.matrix
        return all(self.target.is_zero_element(c) for c in diff.columns())

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(c) for c in self.matrix.columns())

    @cached_property
    def preimage_of_zero(self) -> Matrix:
        """Basis of ``{x : f(x) in span(target relations)}`` in generator coordinates."""
        ring = self.matrix.ring
        k = self.source.generator_count
        big = self.matrix.hstack(self.target.relations)
        K = kernel_basis(big).take_rows(range(k))
        if K.ncols == 0:
            return Matrix.zeros(ring, k, 0)
        return column_span_basis(K) if K.rank < K.ncols else K

    def kernel(self) -> Subquotient:
        return Subquotient(self.preimage_of_zero, self.source.relations)

    def image_span(self) -> Matrix:
        """Generators of ``image + target relations`` inside the target's generator lattice."""
        return self.matrix.hstack(self.target.relations)

    def cokernel(self) -> PresentedModule:
        return PresentedModule(self.matrix.ring, self.target.generator_count, self.image_span())

    def is_injective(self) -> bool:
        return self.kernel().is_zero()

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def is_exact_at(g: ModuleMorphism, h: ModuleMorphism) -> bool:
    """Exactness of ``A --g--> B --h--> C`` at ``B``: image of g equals kernel of h."""
    if g.target.generator_count != h.source.generator_count:
        raise ExactLinError("maps do not meet at a common module")
    return same_span(g.image_span(), h.preimage_of_zero.hstack(h.source.relations))


def induced_map_on_subquotients(f: Matrix, src: tuple[Matrix, Matrix] | Subquotient,
                                tgt: tuple[Matrix, Matrix] | Subquotient) -> ModuleMorphism:
    """Morphism ``Z/B -> Z'/B'`` induced by an ambient matrix ``f``.

    Raises :class:`NotContained` when ``f`` does not send cycles into cycles
    and :class:`NotWellDefined` when it does not send boundaries into
    boundaries.
    """
    src = src if isinstance(src, Subquotient) else Subquotient(*src)
    tgt = tgt if isinstance(tgt, Subquotient) else Subquotient(*tgt)
    image = f @ src.cycles
    try:
        coords = tgt._solver.solve_matrix(image)
    except NotContained:
        raise NotContained("map does not send cycles to cycles (not a chain map)") from None
    return ModuleMorphism(src, tgt, coords)

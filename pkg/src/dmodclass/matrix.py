"""Dense matrices over exact Gaussian rationals, complex floats, or polynomials.

A ``Matrix`` is an immutable value: ``rows x cols`` entries in row-major
order, all sharing one scalar mode ("exact", "approx" or "symbolic").
0 x 0 and other empty shapes are legal everywhere.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import InputError, ModeMismatch
from .scalars import GR_ONE, GR_ZERO, GaussianRational

__all__ = ["Matrix", "char_poly_coeffs"]


def _mode_of(x) -> str:
    if isinstance(x, GaussianRational):
        return "exact"
    if isinstance(x, (int,)):
        return "exact"
    if isinstance(x, (float, complex)):
        return "approx"
    return "symbolic"


def _coerce(x, mode):
    if mode == "exact":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x)
    if mode == "approx":
        return complex(x)
    return x


def _zero_like(x):
    if isinstance(x, GaussianRational):
        return GR_ZERO
    if isinstance(x, complex):
        return 0j
    return x.zero()


class Matrix:
    __slots__ = ("rows", "cols", "entries", "mode")

    def __init__(self, rows: int, cols: int, entries: Sequence, mode: str | None = None):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise InputError("entry count does not match shape")
        if mode is None:
            if not entries:
                raise InputError("mode is required for empty matrices")
            mode = _mode_of(entries[0])
        if mode in ("exact", "approx"):
            entries = tuple(_coerce(e, mode) for e in entries)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], mode: str | None = None) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise InputError("ragged rows")
        return cls(r, c, [x for row in rows for x in row], mode)

    @classmethod
    def identity(cls, n: int, mode: str = "exact") -> "Matrix":
        if mode == "exact":
            one, zero = GR_ONE, GR_ZERO
        else:
            one, zero = 1 + 0j, 0j
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], mode)

    @classmethod
    def zeros(cls, rows: int, cols: int, mode: str = "exact") -> "Matrix":
        zero = GR_ZERO if mode == "exact" else 0j
        return cls(rows, cols, [zero] * (rows * cols), mode)

    @classmethod
    def from_numpy(cls, a: np.ndarray) -> "Matrix":
        a = np.asarray(a, dtype=complex)
        return cls(a.shape[0], a.shape[1], [complex(x) for x in a.ravel()], "approx")

    # -- basics --------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def to_numpy(self) -> np.ndarray:
        if self.mode == "symbolic":
            raise ModeMismatch("cannot convert symbolic matrix to numpy")
        if self.mode == "exact":
            return np.array(
                [[e.to_complex() for e in self.row(i)] for i in range(self.rows)],
                dtype=complex,
            ).reshape(self.rows, self.cols)
        return np.array(self.to_lists(), dtype=complex).reshape(self.rows, self.cols)

    def to_approx(self) -> "Matrix":
        if self.mode == "approx":
            return self
        if self.mode != "exact":
            raise ModeMismatch("cannot demote symbolic matrix")
        return Matrix(self.rows, self.cols, [e.to_complex() for e in self.entries], "approx")

    def map(self, f: Callable, mode: str | None = None) -> "Matrix":
        return Matrix(self.rows, self.cols, [f(e) for e in self.entries], mode or self.mode)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _require_same_mode(self, other: "Matrix"):
        if self.mode != other.mode:
            raise ModeMismatch(f"mixing {self.mode} and {other.mode} matrices")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._require_same_mode(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch in +")
        return Matrix(
            self.rows,
            self.cols,
            [a + b for a, b in zip(self.entries, other.entries)],
            self.mode,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.entries], self.mode)

    def scale(self, s) -> "Matrix":
        return Matrix(self.rows, self.cols, [s * a for a in self.entries], self.mode)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        self._require_same_mode(other)
        if self.cols != other.rows:
            raise InputError("shape mismatch in *")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                s = None
                for t in range(k):
                    p = arow[t] * b[t * m + j]
                    s = p if s is None else s + p
                if s is None:
                    s = GR_ZERO if self.mode == "exact" else 0j
                out.append(s)
        return Matrix(n, m, out, self.mode)

    def __rmul__(self, other):
        return self.scale(other)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
            self.mode,
        )

    def trace(self):
        if not self.is_square():
            raise InputError("trace of non-square matrix")
        if self.rows == 0:
            return GR_ZERO if self.mode == "exact" else 0j
        s = self[0, 0]
        for i in range(1, self.rows):
            s = s + self[i, i]
        return s

    def commutator(self, other: "Matrix") -> "Matrix":
        return self * other - other * self

    # -- predicates --------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.mode == other.mode
            and (self.rows, self.cols) == (other.rows, other.cols)
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self, eps: float = 0.0) -> bool:
        if self.mode == "exact":
            return all(not e for e in self.entries)
        if self.mode == "approx":
            return all(abs(e) <= eps for e in self.entries)
        return all(e.is_zero() for e in self.entries)

    def approx_eq(self, other: "Matrix", eps: float = 1e-9) -> bool:
        a, b = self.to_numpy(), other.to_numpy()
        scale = max(1.0, float(np.abs(a).max(initial=0)), float(np.abs(b).max(initial=0)))
        return bool(np.abs(a - b).max(initial=0) <= eps * scale)

    def __repr__(self):
        return f"Matrix({self.to_lists()!r})"

    # -- elimination-based kernels (field modes only) -----------------------------

    def _is_field(self):
        if self.mode == "symbolic":
            raise ModeMismatch("elimination needs field entries")

    def rref(self, eps: float = 1e-12):
        """Reduced row echelon form; returns (rref rows as list of lists, pivot cols)."""
        self._is_field()
        m = [list(self.row(i)) for i in range(self.rows)]
        rows, cols = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            if self.mode == "exact":
                piv = next((i for i in range(r, rows) if m[i][c]), None)
            else:
                cand = max(range(r, rows), key=lambda i: abs(m[i][c]), default=None)
                piv = cand if cand is not None and abs(m[cand][c]) > eps else None
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][c]
            m[r] = [x / inv for x in m[r]]
            for i in range(rows):
                if i != r and (m[i][c] if self.mode == "exact" else abs(m[i][c]) > 0):
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return m, pivots

    def rank(self, eps: float = 1e-9) -> int:
        if self.mode == "approx":
            if self.rows == 0 or self.cols == 0:
                return 0
            return int(np.linalg.matrix_rank(self.to_numpy(), tol=eps))
        return len(self.rref()[1])

    def nullspace(self, eps: float = 1e-9) -> list["Matrix"]:
        """Basis of {x : M x = 0}, as cols x 1 column matrices."""
        if self.cols == 0:
            return []
        if self.rows == 0:
            return [Matrix.identity(self.cols, self.mode).column(j) for j in range(self.cols)]
        if self.mode == "approx":
            a = self.to_numpy()
            _, s, vh = np.linalg.svd(a)
            scale = max(1.0, float(s[0]) if len(s) else 1.0)
            nz = sum(1 for x in s if x > eps * scale)
            return [Matrix.from_numpy(vh[k].conj().reshape(-1, 1)) for k in range(nz, self.cols)]
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [GR_ZERO] * self.cols
            v[f] = GR_ONE
            for r, c in enumerate(pivots):
                v[c] = -red[r][f]
            basis.append(Matrix(self.cols, 1, v, "exact"))
        return basis

    def column(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, [self[i, j] for i in range(self.rows)], self.mode)

    @classmethod
    def hstack(cls, cols: Sequence["Matrix"]) -> "Matrix":
        if not cols:
            raise InputError("hstack of nothing")
        rows = cols[0].rows
        out = []
        for i in range(rows):
            for m in cols:
                out.extend(m.row(i))
        return cls(rows, sum(m.cols for m in cols), out, cols[0].mode)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise InputError("inverse of non-square matrix")
        n = self.rows
        if n == 0:
            return self
        aug = Matrix.hstack([self, Matrix.identity(n, self.mode)])
        red, pivots = aug.rref()
        if len(pivots) < n or pivots[:n] != list(range(n)):
            raise InputError("matrix is singular")
        return Matrix(n, n, [red[i][n + j] for i in range(n) for j in range(n)], self.mode)

    def solve(self, b: "Matrix") -> "Matrix":
        """Solve self @ X = b (self must have full column rank, system consistent)."""
        self._require_same_mode(b)
        aug = Matrix.hstack([self, b])
        red, pivots = aug.rref()
        if any(p >= self.cols for p in pivots):
            raise InputError("inconsistent linear system")
        if len(pivots) < self.cols:
            raise InputError("solve needs full column rank")
        return Matrix(
            self.cols,
            b.cols,
            [red[r][self.cols + j] for r in range(self.cols) for j in range(b.cols)],
            self.mode,
        )

    def det(self):
        if not self.is_square():
            raise InputError("det of non-square matrix")
        n = self.rows
        if n == 0:
            return GR_ONE if self.mode == "exact" else 1 + 0j
        if self.mode == "symbolic":
            return _det_cofactor(self)
        m = [list(self.row(i)) for i in range(n)]
        det = GR_ONE if self.mode == "exact" else 1 + 0j
        for c in range(n):
            if self.mode == "exact":
                piv = next((i for i in range(c, n) if m[i][c]), None)
            else:
                piv = max(range(c, n), key=lambda i: abs(m[i][c]))
                if abs(m[piv][c]) == 0:
                    piv = None
            if piv is None:
                return GR_ZERO if self.mode == "exact" else 0j
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c]
            for i in range(c + 1, n):
                if m[i][c] if self.mode == "exact" else abs(m[i][c]) > 0:
                    f = m[i][c] / inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det


def _det_cofactor(m: Matrix):
    """Division-free determinant by cofactor expansion (symbolic entries)."""
    n = m.rows
    if n == 1:
        return m[0, 0]
    total = None
    for j in range(n):
        sub = Matrix(
            n - 1,
            n - 1,
            [m[i, k] for i in range(1, n) for k in range(n) if k != j],
            m.mode,
        )
        term = m[0, j] * _det_cofactor(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def char_poly_coeffs(m: Matrix) -> list:
    """Monic characteristic polynomial det(tI - M), ascending coefficients.

    Faddeev-LeVerrier: stays in the field of the entries, exact in exact mode.
    """
    if not m.is_square():
        raise InputError("char_poly of non-square matrix")
    n = m.rows
    one = GR_ONE if m.mode == "exact" else 1 + 0j
    if n == 0:
        return [one]
    b = Matrix.identity(n, m.mode)
    acc = [one]
    for k in range(1, n + 1):
        b = m * b
        ck = -(b.trace() / k)
        acc.append(ck)
        b = b + Matrix.identity(n, m.mode).scale(ck)
    # acc = [1, c_{n-1}, ..., c_0] in descending degree; flip to ascending
    return list(reversed(acc))

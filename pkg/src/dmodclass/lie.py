"""Lie algebras by structure constants, representations, and differentiation
on the corresponding unipotent group through the Baker-Campbell-Hausdorff
series.

Coordinates are sequences indexed by the chosen basis.  Bracket evaluation is
generic over the coordinate ring, so the same code runs on exact scalars and
on polynomials (used for symbolic differentiation in t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from gmpy2 import mpq

from .errors import InputError, NotNilpotent
from .matrix import Matrix
from .poly import Poly
from .scalars import GR_ONE, GR_ZERO, GaussianRational, gr

__all__ = [
    "LieAlgebraData",
    "Representation",
    "NilpotencyProfile",
    "ValidationReport",
    "validate_lie_algebra",
    "nilpotency_profile",
    "validate_representation",
    "flatness_check",
    "bch",
    "invariant_derivative",
    "heisenberg",
    "abelian",
    "filiform4",
    "sl2",
]


@dataclass(frozen=True)
class LieAlgebraData:
    """Finite-dimensional Lie algebra by structure constants c_ij^k (i < j)."""

    dim: int
    basis_names: tuple
    structure: Mapping  # (i, j) with i < j -> {k: GaussianRational}

    def __post_init__(self):
        if len(self.basis_names) != self.dim:
            raise InputError("basis_names length must equal dim")
        for (i, j), cs in self.structure.items():
            if not (0 <= i < j < self.dim):
                raise InputError(f"bad bracket index pair {(i, j)}")
            for k in cs:
                if not 0 <= k < self.dim:
                    raise InputError(f"bad bracket target index {k}")

    def bracket_basis(self, i: int, j: int) -> dict:
        """[x_i, x_j] as a sparse coordinate map."""
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -c for k, c in self.structure.get((j, i), {}).items()}

    def bracket(self, u: Sequence, v: Sequence) -> list:
        """[u, v] in coordinates; entries may be scalars or polynomials."""
        zero = _zero_like(u[0]) if self.dim else GR_ZERO
        out = [zero] * self.dim
        for (i, j), cs in self.structure.items():
            w = u[i] * v[j] - u[j] * v[i]
            if _is_zero(w):
                continue
            for k, c in cs.items():
                out[k] = out[k] + c * w
        return out

    def zero_coords(self) -> list:
        return [GR_ZERO] * self.dim

    def basis_coords(self, i: int) -> list:
        v = [GR_ZERO] * self.dim
        v[i] = GR_ONE
        return v


def _zero_like(x):
    if isinstance(x, Poly):
        return x.zero()
    return GR_ZERO


def _is_zero(x):
    if isinstance(x, Poly):
        return x.is_zero()
    return not x


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple

    @property
    def valid(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class Representation:
    """Images of the basis under a Lie algebra homomorphism into gl_n."""

    algebra: LieAlgebraData
    rank: int
    images: tuple  # one rank x rank Matrix per basis element

    def __post_init__(self):
        if len(self.images) != self.algebra.dim:
            raise InputError("one image per basis element required")
        for a in self.images:
            if a.rows != self.rank or a.cols != self.rank:
                raise InputError("image size does not match rank")

    def image_of(self, coords: Sequence) -> Matrix:
        out = Matrix.zeros(self.rank, self.rank, self.images[0].mode if self.images else "exact")
        for c, a in zip(coords, self.images):
            if not _is_zero(c):
                out = out + a.scale(c)
        return out

    @property
    def mode(self) -> str:
        return self.images[0].mode if self.images else "exact"


@dataclass(frozen=True)
class NilpotencyProfile:
    is_nilpotent: bool
    nil_class: int
    lower_central_dims: tuple
    abelianization_dim: int
    complement_indices: tuple  # basis indices spanning a complement of [n, n]
    derived_pivots: tuple
    derived_rref: tuple  # rref rows spanning [n, n] in basis coordinates

    def abelianization_coords(self, v: Sequence[GaussianRational]) -> list:
        """Project coordinates onto the chosen complement of [n, n] along [n, n]."""
        w = list(v)
        for row, piv in zip(self.derived_rref, self.derived_pivots):
            f = w[piv]
            if f:
                w = [a - f * b for a, b in zip(w, row)]
        return [w[i] for i in self.complement_indices]


def validate_lie_algebra(L: LieAlgebraData) -> ValidationReport:
    """Exhaustive Jacobi check over basis triples."""
    failures = []
    for i in range(L.dim):
        ei = L.basis_coords(i)
        for j in range(i + 1, L.dim):
            ej = L.basis_coords(j)
            for k in range(j + 1, L.dim):
                ek = L.basis_coords(k)
                s = L.bracket(ei, L.bracket(ej, ek))
                s = [a + b for a, b in zip(s, L.bracket(ej, L.bracket(ek, ei)))]
                s = [a + b for a, b in zip(s, L.bracket(ek, L.bracket(ei, ej)))]
                if any(s):
                    failures.append((i, j, k))
    return ValidationReport(tuple(failures))


def _span_rref(vectors: list, dim: int):
    """rref rows and pivots of the span of coordinate vectors."""
    if not vectors:
        return [], []
    m = Matrix(len(vectors), dim, [x for v in vectors for x in v], "exact")
    red, pivots = m.rref()
    return [red[r] for r in range(len(pivots))], pivots


def nilpotency_profile(L: LieAlgebraData) -> NilpotencyProfile:
    basis = [L.basis_coords(i) for i in range(L.dim)]
    # lower central series: L^1 = L, L^{k+1} = [L, L^k]
    current = basis
    dims = []
    derived_rows, derived_pivots = None, None
    while True:
        brackets = [L.bracket(b, w) for b in basis for w in current]
        rows, pivots = _span_rref([v for v in brackets if any(v)], L.dim)
        if derived_rows is None:
            derived_rows, derived_pivots = rows, pivots
        dims.append(len(pivots))
        if len(pivots) == 0:
            break
        if len(dims) > 1 and dims[-1] >= dims[-2]:
            # stabilized at a nonzero term: not nilpotent
            return NilpotencyProfile(
                False,
                0,
                tuple(dims),
                L.dim - dims[0],
                _complement(derived_pivots, L.dim),
                tuple(derived_pivots),
                tuple(tuple(r) for r in derived_rows),
            )
        current = [list(r) for r in rows]
    nil_class = len(dims)  # abelian: dims = [0] -> class 1
    return NilpotencyProfile(
        True,
        nil_class,
        tuple(dims),
        L.dim - dims[0],
        _complement(derived_pivots, L.dim),
        tuple(derived_pivots),
        tuple(tuple(r) for r in derived_rows),
    )


def _complement(pivots, dim) -> tuple:
    return tuple(i for i in range(dim) if i not in pivots)


def validate_representation(rho: Representation) -> ValidationReport:
    """Check [A_i, A_j] = sum_k c_ij^k A_k on all basis pairs."""
    L = rho.algebra
    failures = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = rho.images[i].commutator(rho.images[j])
            rhs = Matrix.zeros(rho.rank, rho.rank, rho.mode)
            for k, c in L.structure.get((i, j), {}).items():
                rhs = rhs + rho.images[k].scale(c)
            if not (lhs - rhs).is_zero(1e-9 if rho.mode == "approx" else 0.0):
                failures.append((i, j))
    return ValidationReport(tuple(failures))


def flatness_check(rho: Representation) -> bool:
    """Zero-curvature test for the associated invariant matrix 1-form.

    The 2-form coefficient on the (j, k) wedge component is
    [A_j, A_k] - sum_i c_jk^i A_i; the form is flat iff all vanish.
    """
    L = rho.algebra
    for j in range(L.dim):
        for k in range(j + 1, L.dim):
            coeff = rho.images[j] * rho.images[k] - rho.images[k] * rho.images[j]
            for i, c in L.structure.get((j, k), {}).items():
                coeff = coeff - rho.images[i].scale(c)
            if not coeff.is_zero(1e-9 if rho.mode == "approx" else 0.0):
                return False
    return True


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff via the Dynkin series


@lru_cache(maxsize=None)
def _dynkin_words(max_degree: int) -> tuple:
    """Aggregated Dynkin coefficients: word over {0, 1} -> rational coefficient.

    log(e^X e^Y) = sum over words w of coeff(w) * [w_1,[w_2,...[w_{m-1},w_m]]].
    """
    coeffs: dict[tuple, mpq] = {}

    def pair_seqs(n, total_left, seq):
        if n == 0:
            if seq:
                yield tuple(seq)
            return
        for r in range(total_left + 1):
            for s in range(total_left - r + 1):
                if r + s == 0:
                    continue
                seq.append((r, s))
                yield from pair_seqs(n - 1, total_left - r - s, seq)
                seq.pop()

    for n in range(1, max_degree + 1):
        sign = mpq((-1) ** (n - 1), n)
        for seq in pair_seqs(n, max_degree, []):
            if len(seq) != n:
                continue
            total = sum(r + s for r, s in seq)
            denom = total
            for r, s in seq:
                denom *= factorial(r) * factorial(s)
            word = tuple(c for r, s in seq for c in (0,) * r + (1,) * s)
            coeffs[word] = coeffs.get(word, mpq(0)) + sign / denom
    return tuple((w, c) for w, c in coeffs.items() if c != 0)


def bch(p: Sequence, q: Sequence, L: LieAlgebraData, nil_class: int | None = None) -> list:
    """log(exp p * exp q) in basis coordinates; exact, terminating at the
    nilpotency class."""
    if nil_class is None:
        prof = nilpotency_profile(L)
        if not prof.is_nilpotent:
            raise NotNilpotent("bch needs a nilpotent Lie algebra")
        nil_class = prof.nil_class
    letters = (list(p), list(q))
    zero = _zero_like(letters[0][0]) if L.dim else GR_ZERO
    out = [zero] * L.dim
    for word, coeff in _dynkin_words(nil_class):
        if len(word) >= 2 and word[-1] == word[-2]:
            continue  # innermost bracket vanishes
        val = letters[word[-1]]
        for c in reversed(word[:-1]):
            val = L.bracket(letters[c], val)
            if all(_is_zero(x) for x in val):
                break
        else:
            out = [a + coeff * b for a, b in zip(out, val)]
    return out


def invariant_derivative(
    phi: Poly,
    v: Sequence[GaussianRational],
    p: Sequence[GaussianRational],
    L: LieAlgebraData,
    nil_class: int | None = None,
) -> GaussianRational:
    """Directional derivative of phi along the invariant field of v at p:
    d/dt|_0 phi(log(exp p * exp tv)), computed symbolically in t."""
    tvars = ("t",)
    t = Poly.variable(tvars, "t")
    p_t = [Poly.constant(tvars, c) for c in p]
    v_t = [t * c for c in v]
    w = bch(p_t, v_t, L, nil_class=nil_class)
    val = phi.eval(w)
    if not isinstance(val, Poly):
        return GR_ZERO
    c1 = val.coefficient("t", 1).constant_term()
    return c1


# ---------------------------------------------------------------------------
# stock algebras used across the library and its tests


def abelian(l: int, names: tuple | None = None) -> LieAlgebraData:
    return LieAlgebraData(l, names or tuple(f"x{i+1}" for i in range(l)), {})


def heisenberg() -> LieAlgebraData:
    """h3: [x, y] = z."""
    return LieAlgebraData(3, ("x", "y", "z"), {(0, 1): {2: GR_ONE}})


def filiform4() -> LieAlgebraData:
    """Four-dimensional filiform algebra: [e1,e2] = e3, [e1,e3] = e4."""
    return LieAlgebraData(
        4, ("e1", "e2", "e3", "e4"), {(0, 1): {2: GR_ONE}, (0, 2): {3: GR_ONE}}
    )


def sl2() -> LieAlgebraData:
    """sl2 with basis (X, Y, H): [X,Y] = H, [H,X] = 2X, [H,Y] = -2Y."""
    return LieAlgebraData(
        3,
        ("X", "Y", "H"),
        {
            (0, 1): {2: GR_ONE},
            (0, 2): {0: gr(-2)},
            (1, 2): {1: gr(2)},
        },
    )

"""Classification of invariant D-modules over unipotent groups.

The classifying invariant of a representation of a nilpotent Lie algebra is
the multiset of joint eigenvalue vectors of its semisimplification, read in
abelianization coordinates: a point of the n-th symmetric product of C^l.
Equivalence verdicts come with an explicit conjugator certificate, and the
gauge transform to the semisimplification is produced as a polynomial matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, NotNilpotent
from .lie import (
    LieAlgebraData,
    NilpotencyProfile,
    Representation,
    nilpotency_profile,
)
from .linalg import (
    JointSpectrum,
    exp_nilpotent_symbolic,
    joint_eigen_decomposition,
    jordan_chevalley,
)
from .matrix import Matrix
from .poly import Poly
from .scalars import (
    DEFAULT_TOLERANCE,
    GaussianRational,
    ToleranceConfig,
    encode_scalar,
)

__all__ = [
    "CanonicalClass",
    "EquivalenceCertificate",
    "PolyGauge",
    "semisimplify",
    "canonical_class",
    "trace_word_invariants",
    "trace_tables_equal",
    "gauge_equivalent",
    "gauge_to_semisimple",
]


@dataclass(frozen=True)
class CanonicalClass:
    """A point of S^n C^l: a canonically sorted multiset of n vectors in C^l."""

    l: int
    n: int
    points: tuple  # tuple of tuples of scalars, sorted

    def __eq__(self, other):
        if not isinstance(other, CanonicalClass):
            return NotImplemented
        return self.l == other.l and self.n == other.n and self.points == other.points

    def __hash__(self):
        return hash((self.l, self.n, self.points))


def _point_key(vec, cluster_eps: float = 0.0):
    key = []
    for s in vec:
        if isinstance(s, GaussianRational):
            key.extend([s.re, s.im])
        else:
            c = complex(s)
            if cluster_eps:
                key.extend([round(c.real / cluster_eps), round(c.imag / cluster_eps)])
            else:
                key.extend([c.real, c.imag])
    return tuple(key)


@dataclass(frozen=True)
class EquivalenceCertificate:
    verdict: bool
    conjugator: Matrix | None = None
    trace_crosscheck: bool | None = None
    used_randomized: bool = False


@dataclass(frozen=True)
class PolyGauge:
    """A GL_n-valued polynomial function on the group, in exponential
    coordinates of the Lie algebra."""

    variables: tuple
    entries: Matrix  # symbolic matrix of Poly over `variables`

    def evaluate(self, point: Sequence) -> Matrix:
        vals = list(point)
        if len(vals) != len(self.variables):
            raise InputError("wrong number of coordinates")
        return Matrix(
            self.entries.rows,
            self.entries.cols,
            [e.eval(vals) for e in self.entries.entries],
        )


def _require_nilpotent(rho: Representation) -> NilpotencyProfile:
    prof = nilpotency_profile(rho.algebra)
    if not prof.is_nilpotent:
        raise NotNilpotent("operation requires a nilpotent Lie algebra")
    return prof


def semisimplify(rho: Representation, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> Representation:
    """Basis-wise semisimple parts; factors through the abelianization."""
    _require_nilpotent(rho)
    images = tuple(jordan_chevalley(a, cfg).s for a in rho.images)
    return Representation(rho.algebra, rho.rank, images)


def _abelianization_images(
    rho_s: Representation, prof: NilpotencyProfile
) -> list[Matrix]:
    return [rho_s.images[i] for i in prof.complement_indices]


def canonical_class(
    rho: Representation, cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> CanonicalClass:
    prof = _require_nilpotent(rho)
    rho_s = semisimplify(rho, cfg)
    ab = _abelianization_images(rho_s, prof)
    l = prof.abelianization_dim
    n = rho.rank
    if l == 0 or n == 0:
        zero_vec = tuple()
        return CanonicalClass(l, n, tuple(tuple() for _ in range(n)) if l == 0 else tuple())
    spectrum = joint_eigen_decomposition(ab, cfg)
    points = []
    for block in spectrum.blocks:
        points.extend([tuple(block.eigvec)] * block.multiplicity)
    eps = cfg.cluster_eps if rho.mode == "approx" else 0.0
    points.sort(key=lambda v: _point_key(v, eps))
    return CanonicalClass(l, n, tuple(points))


# ---------------------------------------------------------------------------
# trace words


def _cyclic_canonical(word: tuple) -> tuple:
    return min(word[k:] + word[:k] for k in range(len(word)))


def trace_word_invariants(rho: Representation, max_len: int) -> dict:
    """Tr(A_{i_1} ... A_{i_k}) for every word of length <= max_len over the
    basis indices, one entry per cyclic-rotation class.

    Cost grows as m**max_len; use trace_tables_equal for large bounds.
    """
    if max_len < 1:
        raise InputError("max_len must be >= 1")
    m = rho.algebra.dim
    out = {}
    words = [()]
    products = {(): Matrix.identity(rho.rank, rho.mode)}
    for _ in range(max_len):
        new_words = []
        for w in words:
            for i in range(m):
                nw = w + (i,)
                products[nw] = products[w] * rho.images[i]
                canon = _cyclic_canonical(nw)
                if canon not in out:
                    out[canon] = products[nw].trace()
                new_words.append(nw)
        words = new_words
    return out


def _multidegree_traces(rho: Representation, max_len: int, cfg: ToleranceConfig) -> dict:
    """Tr(S_1^{e_1} ... S_m^{e_m}) of the semisimplified images for all
    multidegrees of total degree 1..max_len."""
    rho_s = semisimplify(rho, cfg)
    m = rho.algebra.dim
    out = {}

    def degrees(i, left, cur):
        if i == m:
            if sum(cur) >= 1:
                yield tuple(cur)
            return
        for e in range(left + 1):
            cur.append(e)
            yield from degrees(i + 1, left - e, cur)
            cur.pop()

    powers = []
    for i in range(m):
        pw = [Matrix.identity(rho.rank, rho.mode)]
        for _ in range(max_len):
            pw.append(pw[-1] * rho_s.images[i])
        powers.append(pw)
    for deg in degrees(0, max_len, []):
        prod = Matrix.identity(rho.rank, rho.mode)
        for i, e in enumerate(deg):
            if e:
                prod = prod * powers[i][e]
        out[deg] = prod.trace()
    return out


def trace_tables_equal(
    rho1: Representation,
    rho2: Representation,
    max_len: int,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> bool:
    """Decide equality of the full trace-word tables up to max_len.

    For representations of a nilpotent algebra every trace word equals the
    same word of the semisimplification, whose images commute, so a word's
    trace depends only on its multidegree.  This reduces the m**max_len word
    table to the polynomially many multidegrees.
    """
    if rho1.algebra.dim != rho2.algebra.dim:
        raise InputError("algebra mismatch")
    t1 = _multidegree_traces(rho1, max_len, cfg)
    t2 = _multidegree_traces(rho2, max_len, cfg)
    if rho1.mode == "exact" and rho2.mode == "exact":
        return t1 == t2
    from .scalars import approx_eq

    return all(
        approx_eq(complex(t1[k].to_complex() if isinstance(t1[k], GaussianRational) else t1[k]),
                  complex(t2[k].to_complex() if isinstance(t2[k], GaussianRational) else t2[k]),
                  cfg.eps)
        for k in t1
    )


# ---------------------------------------------------------------------------
# equivalence and gauges


def _sorted_spectrum_blocks(spectrum: JointSpectrum, eps: float):
    return sorted(spectrum.blocks, key=lambda b: _point_key(b.eigvec, eps))


def gauge_equivalent(
    rho1: Representation,
    rho2: Representation,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> EquivalenceCertificate:
    """Verdict: same GIT fiber, i.e. equal canonical classes; with an explicit
    conjugator between the semisimplifications when true."""
    if rho1.algebra.structure != rho2.algebra.structure or rho1.algebra.dim != rho2.algebra.dim:
        raise InputError("representations live over different algebras")
    if rho1.rank != rho2.rank:
        raise InputError("rank mismatch")
    prof = _require_nilpotent(rho1)
    c1 = canonical_class(rho1, cfg)
    c2 = canonical_class(rho2, cfg)
    crosscheck = trace_tables_equal(rho1, rho2, max(1, rho1.rank ** 2), cfg)
    if c1 != c2:
        return EquivalenceCertificate(False, None, crosscheck)
    if rho1.rank == 0:
        return EquivalenceCertificate(True, Matrix.zeros(0, 0, rho1.mode), crosscheck)
    s1 = semisimplify(rho1, cfg)
    s2 = semisimplify(rho2, cfg)
    ab1 = _abelianization_images(s1, prof)
    ab2 = _abelianization_images(s2, prof)
    if not ab1:  # zero-dimensional abelianization: both semisimplifications vanish
        return EquivalenceCertificate(True, Matrix.identity(rho1.rank, rho1.mode), crosscheck)
    eps = cfg.cluster_eps if rho1.mode == "approx" else 0.0
    sp1 = joint_eigen_decomposition(ab1, cfg)
    sp2 = joint_eigen_decomposition(ab2, cfg)
    b1 = _sorted_spectrum_blocks(sp1, eps)
    b2 = _sorted_spectrum_blocks(sp2, eps)
    p1 = Matrix.hstack([b.basis for b in b1])
    p2 = Matrix.hstack([b.basis for b in b2])
    g = p1 * p2.inverse()
    return EquivalenceCertificate(True, g, crosscheck)


def gauge_to_semisimple(
    rho: Representation, cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> PolyGauge:
    """The polynomial gauge X(p) = exp(sum_i a_i (A_i)_n) carrying the module
    of rho onto the module of its semisimplification."""
    _require_nilpotent(rho)
    names = tuple(rho.algebra.basis_names)
    sample = Poly(names, {})
    nil_parts = [jordan_chevalley(a, cfg).n for a in rho.images]
    n = rho.rank
    zero = sample.zero()
    acc = Matrix(n, n, [zero] * (n * n), "symbolic")
    for i, npart in enumerate(nil_parts):
        var = Poly.variable(names, names[i])
        if npart.is_zero():
            continue
        acc = acc + Matrix(n, n, [var * e for e in npart.entries], "symbolic")
    gauge = exp_nilpotent_symbolic(acc, sample)
    return PolyGauge(names, gauge)

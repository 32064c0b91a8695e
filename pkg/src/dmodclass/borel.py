"""Classification over the Borel subgroup of upper-triangular matrices.

Every representation of the upper-triangular Lie algebra is gauge equivalent
to its diagonal reduction, witnessed by an ordered product of exponential
factors.  The product is evaluated pointwise (exactly when the diagonal
images have integer spectra) and verified against the defining intertwining
derivative identity."""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from .errors import InputError, NonNilpotentOffDiagonal, NotNilpotent
from .lie import LieAlgebraData, Representation, validate_representation
from .linalg import (
    exp_nilpotent,
    is_nilpotent,
    joint_eigen_decomposition,
    jordan_chevalley,
)
from .matrix import Matrix
from .scalars import (
    DEFAULT_TOLERANCE,
    GaussianRational,
    ToleranceConfig,
    gr,
)

__all__ = [
    "BorelAlgebra",
    "ProductGauge",
    "VerificationReport",
    "borel_algebra",
    "diagonal_reduction",
    "conjugate_exp_identity",
    "borel_gauge",
    "verify_intertwining",
]


@dataclass(frozen=True)
class BorelAlgebra:
    """Upper-triangular l x l matrices with basis E_ij, i <= j, in
    lexicographic (i, j) order."""

    l: int
    algebra: LieAlgebraData
    pairs: tuple  # basis index -> (i, j), 1-based

    def index(self, i: int, j: int) -> int:
        return self.pairs.index((i, j))

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _elementary(l: int, i: int, j: int) -> Matrix:
    """E_ij as an l x l matrix, 1-based indices."""
    return Matrix(
        l,
        l,
        [
            gr(1) if (r + 1, c + 1) == (i, j) else gr(0)
            for r in range(l)
            for c in range(l)
        ],
    )


def borel_algebra(l: int) -> BorelAlgebra:
    """Structure constants [E_ij, E_kl] read off from l x l matrix
    commutators of the elementary matrices."""
    if l < 1:
        raise InputError("l must be at least 1")
    pairs = tuple((i, j) for i in range(1, l + 1) for j in range(i, l + 1))
    mats = [_elementary(l, i, j) for i, j in pairs]
    pos = {(i, j): a for a, (i, j) in enumerate(pairs)}
    structure = {}
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            comm = mats[a].commutator(mats[b])
            coeffs = {}
            for r in range(l):
                for c in range(r, l):
                    v = comm[r, c]
                    if v != gr(0):
                        coeffs[pos[(r + 1, c + 1)]] = v
            # the commutator of upper-triangular matrices is upper-triangular
            if coeffs:
                structure[(a, b)] = coeffs
    names = tuple(f"E{i}{j}" for i, j in pairs)
    return BorelAlgebra(l, LieAlgebraData(len(pairs), names, structure), pairs)


def diagonal_reduction(
    rho: Representation,
    borel: BorelAlgebra,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> Representation:
    """Zero out the off-diagonal images, keep the E_ii images.

    Valid representations have nilpotent off-diagonal images; that is
    checked here and reported with a witness if violated."""
    if rho.algebra.dim != borel.dim:
        raise InputError("representation is not over the given algebra")
    report = validate_representation(rho)
    if not report.valid:
        raise InputError(f"invalid representation: {report.failures[0]}")
    eps = cfg.eps if rho.mode == "approx" else 0.0
    images = []
    for idx, (i, j) in enumerate(borel.pairs):
        if i == j:
            images.append(rho.images[idx])
        else:
            if not is_nilpotent(rho.images[idx], eps):
                raise NonNilpotentOffDiagonal(i, j)
            images.append(Matrix.zeros(rho.rank, rho.rank, rho.mode))
    return Representation(rho.algebra, rho.rank, tuple(images))


def conjugate_exp_identity(
    x: Matrix, y: Matrix, s, cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> tuple:
    """Both sides of exp(X) exp(Y) exp(-X) = exp(exp(s) Y) for [X, Y] = sY.

    Exact when X and Y are nilpotent (which forces s = 0); otherwise both
    sides are computed in approx mode."""
    if not (x.is_square() and y.is_square()) or x.rows != y.rows:
        raise InputError("X and Y must be square of equal size")
    comm = x.commutator(y)
    target = y.scale(s)
    if comm.mode != target.mode:
        comm, target = comm.to_approx(), target.to_approx()
    diff = comm - target
    if not diff.is_zero(cfg.eps if diff.mode == "approx" else 0.0):
        raise InputError("[X, Y] != s*Y")
    if not is_nilpotent(y, cfg.eps if y.mode == "approx" else 0.0):
        raise NotNilpotent("Y must be nilpotent")
    s_is_zero = (s == gr(0)) if isinstance(s, GaussianRational) else abs(complex(s)) == 0
    if x.mode == "exact" and y.mode == "exact" and is_nilpotent(x) and s_is_zero:
        ex = exp_nilpotent(x)
        lhs = ex * exp_nilpotent(y) * exp_nilpotent(x.scale(gr(-1)))
        rhs = exp_nilpotent(y)
        return lhs, rhs
    xn = x.to_numpy() if x.mode == "approx" else x.to_approx().to_numpy()
    yn = y.to_numpy() if y.mode == "approx" else y.to_approx().to_numpy()
    sc = s.to_complex() if isinstance(s, GaussianRational) else complex(s)
    ex = scipy.linalg.expm(xn)
    lhs = ex @ scipy.linalg.expm(yn) @ scipy.linalg.expm(-xn)
    rhs = scipy.linalg.expm(cmath.exp(sc) * yn)
    return Matrix.from_numpy(lhs), Matrix.from_numpy(rhs)


# ---------------------------------------------------------------------------
# ordered-product gauge


@dataclass(frozen=True)
class ProductGauge:
    """Ordered product of exponential factors indexed by group coordinates.

    Factor descriptors: ("diag", sign, i) stands for exp(sign*log(x_ii)*A_ii)
    and ("off", i, k) for exp(x_ik*A_ik).  The reduction certificate records,
    for each off-diagonal pair (i, k), the verified eigenvalues s_j of
    ad(A_jj) on A_ik; conjugating by the diagonal factors then rescales the
    coefficient by x_jj^(-s_j), which keeps every entry a Laurent monomial
    times a polynomial."""

    borel: BorelAlgebra
    rep: Representation
    factors: tuple
    reduction_certificate: Mapping  # (i, k) -> {j: s_j}

    def evaluate(self, point: Mapping, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> Matrix:
        """Value at a group point given as {(i, j): x_ij}; x_ii must be
        nonzero.  Exact when all inputs are exact and every diagonal image is
        semisimple with integer eigenvalues."""
        n = self.rep.rank
        out = Matrix.identity(n, "exact")
        for fac in self.factors:
            if fac[0] == "diag":
                _, sign, i = fac
                xii = point[(i, i)]
                m = _diag_exp(self.rep.images[self.borel.index(i, i)], xii, sign, cfg)
            else:
                _, i, k = fac
                xik = point[(i, k)]
                a = self.rep.images[self.borel.index(i, k)]
                if isinstance(xik, GaussianRational) and a.mode == "exact":
                    m = exp_nilpotent(a.scale(xik))
                else:
                    m = Matrix.from_numpy(
                        scipy.linalg.expm(complex(xik) * a.to_approx().to_numpy())
                    )
            if m.mode != out.mode:
                m, out = m.to_approx(), out.to_approx()
            out = out * m
        return out


def _integer_power(x: GaussianRational, k: int) -> GaussianRational:
    return x ** k


def _diag_exp(a: Matrix, x, sign: int, cfg: ToleranceConfig) -> Matrix:
    """exp(sign * log(x) * A) = x^(sign*A)."""
    if isinstance(x, GaussianRational) and a.mode == "exact":
        pair = jordan_chevalley(a, cfg)
        if pair.n.is_zero():
            spectrum = joint_eigen_decomposition([pair.s], cfg)
            vals = []
            for b in spectrum.blocks:
                vals.extend([b.eigvec[0]] * b.multiplicity)
            if all(
                isinstance(v, GaussianRational) and v.is_integer() for v in vals
            ):
                p = spectrum.change_of_basis()
                n = a.rows
                d = Matrix(
                    n,
                    n,
                    [
                        _integer_power(x, sign * int(vals[i].re))
                        if i == j
                        else gr(0)
                        for i in range(n)
                        for j in range(n)
                    ],
                )
                return p * d * p.inverse()
    xc = x.to_complex() if isinstance(x, GaussianRational) else complex(x)
    if xc == 0:
        raise InputError("diagonal coordinate must be nonzero")
    an = a.to_numpy() if a.mode == "approx" else a.to_approx().to_numpy()
    return Matrix.from_numpy(scipy.linalg.expm(sign * cmath.log(xc) * an))


def borel_gauge(
    rho: Representation,
    borel: BorelAlgebra,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> ProductGauge:
    """The ordered product

        (prod_i exp(-log(x_ii) A_ii))
        * exp(log(x_ll) A_ll) * prod_{i<l} exp(x_il A_il)
        * ...
        * exp(log(x_22) A_22) * exp(x_12 A_12)
        * exp(log(x_11) A_11)

    intertwining rho with its diagonal reduction."""
    l = borel.l
    report = validate_representation(rho)
    if not report.valid:
        raise InputError(f"invalid representation: {report.failures[0]}")
    eps = cfg.eps if rho.mode == "approx" else 0.0
    for idx, (i, k) in enumerate(borel.pairs):
        if i < k and not is_nilpotent(rho.images[idx], eps):
            raise NonNilpotentOffDiagonal(i, k)
    factors = []
    for i in range(1, l + 1):
        factors.append(("diag", -1, i))
    for k in range(l, 1, -1):
        factors.append(("diag", 1, k))
        for i in range(1, k):
            factors.append(("off", i, k))
    factors.append(("diag", 1, 1))
    certificate = {}
    for idx, (i, k) in enumerate(borel.pairs):
        if i == k:
            continue
        aik = rho.images[idx]
        eigen = {}
        for j in range(1, l + 1):
            ajj = rho.images[borel.index(j, j)]
            s = gr(1) if j == i else gr(-1) if j == k else gr(0)
            comm = ajj.commutator(aik)
            expect = aik.scale(s if rho.mode == "exact" else complex(s.to_complex()))
            diff = comm - expect
            if not diff.is_zero(eps):
                raise InputError(
                    f"ad(A_{j}{j}) does not scale A_{i}{k}; representation invalid"
                )
            eigen[j] = s
        certificate[(i, k)] = eigen
    return ProductGauge(borel, rho, tuple(factors), certificate)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class VerificationReport:
    samples: int
    tolerance: float
    residuals: tuple  # (sample index, basis name, residual)
    max_residual: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def _group_point_matrix(point: Mapping, l: int) -> np.ndarray:
    m = np.zeros((l, l), dtype=complex)
    for (i, j), v in point.items():
        m[i - 1, j - 1] = complex(v.to_complex() if isinstance(v, GaussianRational) else v)
    return m


def _matrix_to_point(m: np.ndarray, l: int) -> dict:
    return {(i, j): m[i - 1, j - 1] for i in range(1, l + 1) for j in range(i, l + 1)}


def sample_group_point(rng: random.Random, l: int) -> dict:
    """Random point of the group; diagonal entries bounded away from zero."""
    point = {}
    for i in range(1, l + 1):
        mag = rng.uniform(0.5, 2.0)
        point[(i, i)] = mag if rng.random() < 0.5 else -mag
        for j in range(i + 1, l + 1):
            point[(i, j)] = rng.uniform(-1.0, 1.0)
    return point


def verify_intertwining(
    gauge: ProductGauge,
    rho: Representation,
    rho_prime: Representation,
    samples: int = 100,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
    step: float = 1e-5,
    tolerance: float = 1e-6,
) -> VerificationReport:
    """Check v(X) = X rho(v) - rho'(v) X at random group points.

    The left side is the derivative d/dt|_0 X(p exp(t v)), computed by
    central finite differences with the given step; residuals are relative
    to max(1, |X(p)|)."""
    if rho.rank != rho_prime.rank:
        raise InputError("rank mismatch")
    borel = gauge.borel
    l = borel.l
    rng = random.Random(cfg.rng_seed)
    basis_mats = {
        (i, j): _elementary(l, i, j).to_approx().to_numpy()
        for (i, j) in borel.pairs
    }
    residuals = []
    worst = 0.0
    for t in range(samples):
        point = sample_group_point(rng, l)
        pmat = _group_point_matrix(point, l)
        x_here = gauge.evaluate(point, cfg)
        xn = x_here.to_numpy() if x_here.mode == "approx" else x_here.to_approx().to_numpy()
        scale = max(1.0, float(np.abs(xn).max()))
        for idx, (i, j) in enumerate(borel.pairs):
            ev = basis_mats[(i, j)]
            plus = pmat @ scipy.linalg.expm(step * ev)
            minus = pmat @ scipy.linalg.expm(-step * ev)
            xplus = gauge.evaluate(_matrix_to_point(plus, l), cfg)
            xminus = gauge.evaluate(_matrix_to_point(minus, l), cfg)
            deriv = (xplus.to_approx().to_numpy() - xminus.to_approx().to_numpy()) / (
                2 * step
            )
            rv = rho.images[idx]
            rpv = rho_prime.images[idx]
            rvn = rv.to_numpy() if rv.mode == "approx" else rv.to_approx().to_numpy()
            rpvn = rpv.to_numpy() if rpv.mode == "approx" else rpv.to_approx().to_numpy()
            expect = xn @ rvn - rpvn @ xn
            res = float(np.abs(deriv - expect).max()) / scale
            residuals.append((t, borel.algebra.basis_names[idx], res))
            worst = max(worst, res)
    return VerificationReport(samples, tolerance, tuple(residuals), worst)

"""Classification over the algebraic torus (C*)^l.

A representation of Lie(T) is a commuting l-tuple of matrices; its class is
the simultaneous-conjugacy class of the monodromy tuple exp(2*pi*i*A_j).
Positive verdicts are certified by a Laurent-polynomial gauge whose exponent
integrality is checked (exactly in exact mode)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from typing import Sequence

from .errors import IllConditioned, InputError, NonCommuting, NotEquivalent
from .linalg import (
    contains_invertible,
    eigenvalues,
    exp_nilpotent,
    intertwiner_space,
    joint_eigen_decomposition,
    jordan_chevalley,
    log_unipotent,
)
from .matrix import Matrix
from .poly import Poly
from .scalars import (
    DEFAULT_TOLERANCE,
    GaussianRational,
    ToleranceConfig,
    gr,
)
from .unipotent import EquivalenceCertificate

__all__ = [
    "TorusRep",
    "MonodromyTuple",
    "LaurentGauge",
    "monodromy",
    "torus_gauge_equivalent",
    "laurent_gauge",
    "verify_laurent_gauge",
    "multi_log",
]

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class TorusRep:
    """A commuting l-tuple (A_1, ..., A_l) of n x n matrices."""

    l: int
    matrices: tuple

    def __post_init__(self):
        if len(self.matrices) != self.l:
            raise InputError("need exactly l matrices")
        if self.l:
            n = self.matrices[0].rows
            for m in self.matrices:
                if not m.is_square() or m.rows != n:
                    raise InputError("matrices must be square of equal size")
            for i in range(self.l):
                for j in range(i + 1, self.l):
                    c = self.matrices[i].commutator(self.matrices[j])
                    if not c.is_zero(1e-9 if c.mode == "approx" else 0.0):
                        raise NonCommuting(i, j)

    @property
    def rank(self) -> int:
        return self.matrices[0].rows if self.l else 0

    @property
    def mode(self) -> str:
        return self.matrices[0].mode if self.l else "exact"


@dataclass(frozen=True)
class MonodromyTuple:
    matrices: tuple

    @property
    def rank(self) -> int:
        return self.matrices[0].rows if self.matrices else 0

    @property
    def mode(self) -> str:
        return self.matrices[0].mode if self.matrices else "exact"


def _exact_exp_2pii(lam: GaussianRational) -> GaussianRational | None:
    """exp(2*pi*i*q) for rational q with denominator 1, 2 or 4; else None."""
    if not lam.is_real():
        return None
    den = lam.re.denominator
    if den not in (1, 2, 4):
        return None
    quarter = int(lam.re * 4) % 4
    return (gr(1), gr(0, 1), gr(-1), gr(0, -1))[quarter]


def _exp_2pii_single(a: Matrix, cfg: ToleranceConfig) -> Matrix:
    """exp(2*pi*i*A); exact when A is semisimple with quarter-integer real
    rational spectrum, otherwise approx."""
    pair = jordan_chevalley(a, cfg)
    if a.mode == "exact" and pair.n.is_zero():
        spectrum = joint_eigen_decomposition([pair.s], cfg)
        vals = [b.eigvec[0] for b in spectrum.blocks]
        if all(isinstance(v, GaussianRational) for v in vals):
            exps = [_exact_exp_2pii(v) for v in vals]
            if all(e is not None for e in exps):
                p = spectrum.change_of_basis()
                d_entries = []
                for b, e in zip(spectrum.blocks, exps):
                    d_entries.extend([e] * b.multiplicity)
                d = Matrix(
                    a.rows,
                    a.rows,
                    [
                        d_entries[i] if i == j else gr(0)
                        for i in range(a.rows)
                        for j in range(a.rows)
                    ],
                )
                return p * d * p.inverse()
    import scipy.linalg

    return Matrix.from_numpy(scipy.linalg.expm(TWO_PI_I * a.to_numpy()))


def monodromy(rho: TorusRep, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> MonodromyTuple:
    """The tuple exp(2*pi*i*A_j); see torus_gauge_equivalent for its use."""
    mats = [_exp_2pii_single(a, cfg) for a in rho.matrices]
    if any(m.mode == "approx" for m in mats):
        mats = [m.to_approx() for m in mats]
    return MonodromyTuple(tuple(mats))


def torus_gauge_equivalent(
    rho1: TorusRep, rho2: TorusRep, cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> EquivalenceCertificate:
    """Verdict: monodromy tuples simultaneously conjugate.

    Decision: the intertwiner space {g : g M2_i = M1_i g} contains an
    invertible element.  Deterministic symbolic search for n <= 4 in exact
    mode; otherwise a seeded randomized search (one-sided error documented in
    contains_invertible)."""
    if rho1.l != rho2.l:
        raise InputError("torus dimension mismatch")
    if rho1.rank != rho2.rank:
        raise InputError("rank mismatch")
    if rho1.rank == 0:
        return EquivalenceCertificate(True, Matrix.zeros(0, 0, "exact"))
    m1 = monodromy(rho1, cfg)
    m2 = monodromy(rho2, cfg)
    mats1, mats2 = list(m1.matrices), list(m2.matrices)
    if m1.mode != m2.mode:
        mats1 = [m.to_approx() for m in mats1]
        mats2 = [m.to_approx() for m in mats2]
    basis = intertwiner_space(mats2, mats1, cfg)
    if not basis:
        return EquivalenceCertificate(False, None)
    found, witness = contains_invertible(basis, cfg)
    randomized = not (basis[0].mode == "exact" and rho1.rank <= 4)
    return EquivalenceCertificate(found, witness, used_randomized=randomized)


# ---------------------------------------------------------------------------
# Laurent gauge


@dataclass(frozen=True)
class LaurentGauge:
    """n x n matrix of Laurent polynomials in the torus coordinates."""

    variables: tuple
    entries: Matrix  # symbolic matrix of Poly (integer exponents)

    def evaluate(self, z: Sequence) -> Matrix:
        vals = list(z)
        exact_point = all(isinstance(v, GaussianRational) for v in vals)

        def ev(p: Poly):
            if not exact_point:
                p = Poly(
                    p.vars,
                    {
                        e: (c.to_complex() if isinstance(c, GaussianRational) else c)
                        for e, c in p.terms.items()
                    },
                )
            v = p.eval(vals)
            if not exact_point and isinstance(v, GaussianRational):
                v = v.to_complex()
            return v

        return Matrix(
            self.entries.rows,
            self.entries.cols,
            [ev(e) for e in self.entries.entries],
        )


def _functional_blocks(mats: Sequence[Matrix], cfg: ToleranceConfig):
    """Joint spectrum of the semisimple parts: (basis P, per-column functional)."""
    spectrum = joint_eigen_decomposition(mats, cfg)
    p = spectrum.change_of_basis()
    functionals = []
    for b in spectrum.blocks:
        functionals.extend([tuple(b.eigvec)] * b.multiplicity)
    return p, functionals


def laurent_gauge(
    rho1: TorusRep,
    rho2: TorusRep,
    g: Matrix,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> LaurentGauge:
    """The algebraic gauge X(z) = exp(-rho2(log z)) g^{-1} exp(rho1(log z)).

    Requires g to conjugate the monodromy of rho2 to that of rho1; every
    surviving exponent difference is certified an integer (exactly in exact
    mode, snapped within cluster_eps in approx mode)."""
    if rho1.l != rho2.l or rho1.rank != rho2.rank:
        raise InputError("shape mismatch")
    l, n = rho1.l, rho1.rank
    if g.mode == "approx" and rho1.mode == "exact":
        rho1 = TorusRep(l, tuple(m.to_approx() for m in rho1.matrices))
    if g.mode == "approx" and rho2.mode == "exact":
        rho2 = TorusRep(l, tuple(m.to_approx() for m in rho2.matrices))
    if g.mode == "exact" and (rho1.mode == "approx" or rho2.mode == "approx"):
        g = g.to_approx()
        return laurent_gauge(rho1, rho2, g, cfg)
    m1 = monodromy(rho1, cfg)
    m2 = monodromy(rho2, cfg)
    eps = 0.0 if g.mode == "exact" else cfg.eps
    gi = g.inverse()
    for i in range(l):
        lhs, rhs = m1.matrices[i], m2.matrices[i]
        if lhs.mode != g.mode:
            lhs, rhs = lhs.to_approx(), rhs.to_approx()
            cand = g.to_approx() * rhs * gi.to_approx()
            ok = cand.approx_eq(lhs, cfg.eps)
        else:
            ok = (g * rhs * gi - lhs).is_zero(eps)
        if not ok:
            raise NotEquivalent(f"g does not conjugate monodromy component {i}")
    # absorb g into rho2
    b_abs = [g * b * gi for b in rho2.matrices]
    pairs1 = [jordan_chevalley(a, cfg) for a in rho1.matrices]
    pairs2 = [jordan_chevalley(b, cfg) for b in b_abs]
    for i in range(l):
        diff = pairs1[i].n - pairs2[i].n
        if not diff.is_zero(cfg.eps if diff.mode == "approx" else 0.0):
            raise NotEquivalent(
                "nilpotent parts differ after absorbing the conjugator; "
                "the unipotent monodromy factors cannot match"
            )
    p, lam = _functional_blocks([pr.s for pr in pairs1], cfg)
    q, mu = _functional_blocks([pr.s for pr in pairs2], cfg)
    h = q.inverse() * p
    vars = tuple(f"z{i+1}" for i in range(l))
    zero = Poly(vars, {})
    entries = [[zero for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for k in range(n):
            hjk = h[j, k]
            if h.mode == "exact":
                if hjk == gr(0):
                    continue
            elif abs(hjk) <= cfg.eps:
                continue
            expo = _integer_exponent(lam[k], mu[j], h.mode, cfg)
            entries[j][k] = Poly(vars, {tuple(expo): hjk})
    hmat = Matrix(n, n, [entries[j][k] for j in range(n) for k in range(n)], "symbolic")
    qpoly = _constant_matrix_to_poly(q, vars)
    pipoly = _constant_matrix_to_poly(p.inverse(), vars)
    gipoly = _constant_matrix_to_poly(gi, vars)
    full = gipoly * qpoly * hmat * pipoly
    return LaurentGauge(vars, full)


def _integer_exponent(lam_vec, mu_vec, mode, cfg: ToleranceConfig) -> list[int]:
    out = []
    for a, b in zip(lam_vec, mu_vec):
        if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
            d = a - b
            if not d.is_integer():
                raise NotEquivalent(f"non-integral exponent {d}")
            out.append(int(d.re))
        else:
            ca = a.to_complex() if isinstance(a, GaussianRational) else complex(a)
            cb = b.to_complex() if isinstance(b, GaussianRational) else complex(b)
            d = ca - cb
            k = round(d.real)
            if abs(d - k) > cfg.cluster_eps:
                raise NotEquivalent(f"non-integral exponent {d}")
            out.append(int(k))
    return out


def _constant_matrix_to_poly(m: Matrix, vars) -> Matrix:
    zero_e = tuple([0] * len(vars))

    def lift(e):
        if m.mode == "exact":
            return Poly(vars, {} if e == gr(0) else {zero_e: e})
        return Poly(vars, {} if e == 0 else {zero_e: e})

    return Matrix(m.rows, m.cols, [lift(e) for e in m.entries], "symbolic")


def verify_laurent_gauge(
    lg: LaurentGauge,
    rho1: TorusRep,
    rho2: TorusRep,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> bool:
    """Symbolic check of the intertwining identity z_i dX/dz_i = X A_i - B_i X.

    Exact polynomial identity in exact mode; coefficientwise within eps in
    approx mode."""
    n = lg.entries.rows
    x = lg.entries
    gauge_exact = all(
        isinstance(c, GaussianRational) for e in x.entries for c in e.terms.values()
    )
    for i in range(rho1.l):
        m1, m2 = rho1.matrices[i], rho2.matrices[i]
        if not gauge_exact:
            m1, m2 = m1.to_approx(), m2.to_approx()
        a = _constant_matrix_to_poly(m1, lg.variables)
        b = _constant_matrix_to_poly(m2, lg.variables)
        rhs = x * a - b * x
        name = lg.variables[i]
        for r in range(n):
            for c in range(n):
                diff = x[r, c].euler_diff(name) - rhs[r, c]
                if not diff.is_zero(cfg.eps):
                    return False
    return True


# ---------------------------------------------------------------------------
# multi-exponential logarithm


def multi_log(b: MonodromyTuple, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> TorusRep:
    """A commuting preimage of a commuting invertible tuple under entrywise
    exp.  Recursive split on distinct eigenvalues; the base case lambda*I + N
    takes log(lambda) (principal branch) plus the truncated log series."""
    mats = list(b.matrices)
    if not mats:
        return TorusRep(0, tuple())
    n = mats[0].rows
    if n == 0:
        return TorusRep(len(mats), tuple(mats))
    logs = _multi_log_rec(mats, cfg)
    if any(m.mode == "approx" for m in logs):
        logs = [m.to_approx() for m in logs]
    return TorusRep(len(mats), tuple(logs))


def _close(a, b, cfg: ToleranceConfig) -> bool:
    if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
        return a == b
    ca = a.to_complex() if isinstance(a, GaussianRational) else complex(a)
    cb = b.to_complex() if isinstance(b, GaussianRational) else complex(b)
    return abs(ca - cb) <= cfg.cluster_eps * max(1.0, abs(ca), abs(cb))


def _multi_log_rec(mats: list[Matrix], cfg: ToleranceConfig) -> list[Matrix]:
    n = mats[0].rows
    if mats[0].mode == "approx":
        # primary matrix functions: logm(B_i) is a polynomial in B_i, so the
        # logs of a commuting tuple commute; no eigenvalue splitting needed
        out = []
        for bmat in mats:
            a = bmat.to_numpy()
            if min(abs(np.linalg.eigvals(a))) <= cfg.eps:
                raise InputError("monodromy matrix is singular")
            out.append(Matrix.from_numpy(scipy.linalg.logm(a)))
        return out
    for idx, bmat in enumerate(mats):
        lam = eigenvalues(bmat, cfg)
        distinct = []
        for v in lam:
            if not any(_close(v, w, cfg) for w in distinct):
                distinct.append(v)
        if len(distinct) > 1:
            if bmat.mode == "exact" and not all(
                isinstance(v, GaussianRational) for v in distinct
            ):
                return _multi_log_rec([m.to_approx() for m in mats], cfg)
            blocks = []
            for v in distinct:
                shift = bmat - Matrix.identity(n, bmat.mode).scale(v)
                power = shift
                for _ in range(n - 1):
                    power = power * shift
                blocks.append(Matrix.hstack(power.nullspace(cfg.eps)))
            pbasis = Matrix.hstack(blocks)
            pinv = pbasis.inverse()
            restricted = [pinv * m * pbasis for m in mats]
            offset = 0
            sub_logs = [[] for _ in mats]
            for blk in blocks:
                k = blk.cols
                subs = [
                    Matrix(
                        k,
                        k,
                        [r[offset + i, offset + j] for i in range(k) for j in range(k)],
                        r.mode,
                    )
                    for r in restricted
                ]
                rec = _multi_log_rec(subs, cfg)
                for t, m in enumerate(rec):
                    sub_logs[t].append(m)
                offset += k
            out = []
            for t in range(len(mats)):
                parts = sub_logs[t]
                if any(m.mode == "approx" for m in parts):
                    parts = [m.to_approx() for m in parts]
                out.append(pbasis_conj(pbasis, pinv, parts))
            return out
    # every matrix has a single eigenvalue: B_i = lambda_i I + N_i
    out = []
    for bmat in mats:
        lam = eigenvalues(bmat, cfg)[0]
        lam_c = lam.to_complex() if isinstance(lam, GaussianRational) else complex(lam)
        if abs(lam_c) == 0:
            raise InputError("monodromy matrix is singular")
        if isinstance(lam, GaussianRational) and lam == gr(1) and bmat.mode == "exact":
            out.append(log_unipotent(bmat))
            continue
        # primary matrix function: a polynomial in bmat, so commutation with
        # the other tuple members survives, up to machine precision
        out.append(Matrix.from_numpy(scipy.linalg.logm(bmat.to_approx().to_numpy())))
    return out


def pbasis_conj(pbasis: Matrix, pinv: Matrix, diag_blocks: list[Matrix]) -> Matrix:
    n = pbasis.rows
    mode = diag_blocks[0].mode
    zero = gr(0) if mode == "exact" else 0j
    entries = [[zero] * n for _ in range(n)]
    offset = 0
    for blk in diag_blocks:
        for i in range(blk.rows):
            for j in range(blk.cols):
                entries[offset + i][offset + j] = blk[i, j]
        offset += blk.rows
    big = Matrix(n, n, [entries[i][j] for i in range(n) for j in range(n)], mode)
    if pbasis.mode != mode:
        pbasis = pbasis.to_approx()
        pinv = pinv.to_approx()
    return pbasis * big * pinv

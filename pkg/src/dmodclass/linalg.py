"""Matrix kernels: Jordan-Chevalley splitting, nilpotent exp/log, eigenvalues,
joint diagonalization of commuting tuples, intertwiner spaces, and a seeded
invertibility test for matrix pencil spaces.

All verdicts are exact in exact mode.  The Jordan-Chevalley split is computed
by Newton iteration on the squarefree part of the characteristic polynomial,
which stays inside the field generated by the entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import ceil, log2
from typing import Sequence

import numpy as np

from .errors import (
    IllConditioned,
    InputError,
    NonCommuting,
    NotNilpotent,
    NotSemisimple,
    NotUnipotent,
)
from .matrix import Matrix, char_poly_coeffs
from .poly import Poly
from .scalars import (
    DEFAULT_TOLERANCE,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    ToleranceConfig,
    gr,
)

__all__ = [
    "JordanPair",
    "JointSpectrum",
    "char_poly",
    "jordan_chevalley",
    "exp_nilpotent",
    "log_unipotent",
    "eigenvalues",
    "joint_eigen_decomposition",
    "intertwiner_space",
    "contains_invertible",
    "exp_general",
]


# ---------------------------------------------------------------------------
# univariate polynomial helpers (ascending coefficient lists over one mode)


def _poly_trim(p):
    while len(p) > 1 and not p[-1]:
        p = p[:-1]
    return p


def _poly_deriv(p):
    return _poly_trim([c * k for k, c in enumerate(p)][1:]) or [GR_ZERO]


def _poly_divmod(a, b):
    a = list(a)
    b = _poly_trim(list(b))
    q = [GR_ZERO] * max(1, len(a) - len(b) + 1)
    while len(_poly_trim(a)) >= len(b) and any(a):
        a = _poly_trim(a)
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] = a[i + k] - f * c
        a = a[:-1]
    return _poly_trim(q), _poly_trim(a) or [GR_ZERO]


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _poly_eval_matrix(p, m: Matrix) -> Matrix:
    n = m.rows
    out = Matrix.zeros(n, n, m.mode)
    for c in reversed(p):
        out = out * m + Matrix.identity(n, m.mode).scale(c)
    return out


def _poly_eval(p, x):
    out = None
    for c in reversed(p):
        out = c if out is None else out * x + c
    return out


# ---------------------------------------------------------------------------


def char_poly(m: Matrix) -> list:
    """det(tI - M) as ascending monic coefficient list."""
    return char_poly_coeffs(m)


@dataclass(frozen=True)
class JordanPair:
    """Commuting split M = s + n with s semisimple and n nilpotent."""

    s: Matrix
    n: Matrix


def jordan_chevalley(m: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> JordanPair:
    if not m.is_square():
        raise InputError("jordan_chevalley needs a square matrix")
    if m.rows == 0:
        return JordanPair(m, m)
    if m.mode == "approx":
        return _jordan_chevalley_approx(m, cfg)
    p = char_poly(m)
    q = _poly_gcd(p, _poly_deriv(p))
    sf, _ = _poly_divmod(p, q)  # squarefree part
    x = m
    steps = ceil(log2(m.rows)) + 1
    for _ in range(steps):
        val = _poly_eval_matrix(sf, x)
        if val.is_zero():
            break
        dval = _poly_eval_matrix(_poly_deriv(sf), x)
        x = x - val * dval.inverse()
    else:
        if not _poly_eval_matrix(sf, x).is_zero():
            raise InputError("Newton iteration for Jordan-Chevalley did not converge")
    return JordanPair(x, m - x)


def _jordan_chevalley_approx(m: Matrix, cfg: ToleranceConfig) -> JordanPair:
    lam = eigenvalues(m, cfg)
    distinct = _cluster([complex(v.to_complex() if isinstance(v, GaussianRational) else v) for v in lam], cfg.cluster_eps)
    # Newton on the squarefree polynomial built from cluster centers
    sf = [1 + 0j]
    for c, _ in distinct:
        sf = _poly_mul_c(sf, [-c, 1 + 0j])
    x = m.to_approx()
    for _ in range(ceil(log2(max(2, m.rows))) + 3):
        val = _poly_eval_matrix(sf, x)
        if val.is_zero(cfg.eps):
            break
        try:
            dval = _poly_eval_matrix(_poly_deriv_c(sf), x)
            x = x - val * Matrix.from_numpy(np.linalg.inv(dval.to_numpy()))
        except np.linalg.LinAlgError as e:
            raise IllConditioned("singular derivative in approx Jordan-Chevalley") from e
    if not _poly_eval_matrix(sf, x).is_zero(1e-6):
        raise IllConditioned("approx Jordan-Chevalley did not converge")
    return JordanPair(x, m.to_approx() - x)


def _poly_mul_c(a, b):
    out = [0j] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_deriv_c(p):
    return [c * k for k, c in enumerate(p)][1:] or [0j]


def is_nilpotent(m: Matrix, eps: float = 0.0) -> bool:
    if not m.is_square():
        return False
    if m.rows == 0:
        return True
    p = char_poly(m)
    if m.mode == "exact":
        return all(not c for c in p[:-1])
    return all(abs(c) <= max(eps, 1e-9) for c in p[:-1])


def exp_nilpotent(n: Matrix) -> Matrix:
    """Finite exponential series of a nilpotent matrix; exact in exact mode."""
    if not is_nilpotent(n):
        raise NotNilpotent("exp_nilpotent needs a nilpotent matrix")
    return _exp_nilpotent_unchecked(n)


def _exp_nilpotent_unchecked(n: Matrix) -> Matrix:
    size = n.rows
    out = Matrix.identity(size, n.mode)
    term = Matrix.identity(size, n.mode)
    fact = 1
    for k in range(1, size):
        term = term * n
        fact *= k
        if term.is_zero():
            break
        out = out + term.scale(gr(1) / fact if n.mode == "exact" else 1.0 / fact)
    return out


def exp_nilpotent_symbolic(n: Matrix, sample_poly: Poly) -> Matrix:
    """exp of a nilpotent matrix with polynomial entries (finite series)."""
    size = n.rows
    one = sample_poly.one()
    zero = sample_poly.zero()
    ident = Matrix(size, size, [one if i == j else zero for i in range(size) for j in range(size)], "symbolic")
    out, term, fact = ident, ident, 1
    for k in range(1, size):
        term = term * n
        fact *= k
        if term.is_zero():
            break
        out = out + term.scale(gr(1) / fact)
    return out


def log_unipotent(u: Matrix) -> Matrix:
    """Inverse of exp_nilpotent: truncated log series of U with U - I nilpotent."""
    if not u.is_square():
        raise InputError("log_unipotent needs a square matrix")
    n = u - Matrix.identity(u.rows, u.mode)
    if not is_nilpotent(n):
        raise NotUnipotent("log_unipotent needs U - I nilpotent")
    size = u.rows
    out = Matrix.zeros(size, size, u.mode)
    term = Matrix.identity(size, u.mode)
    for k in range(1, size + 1):
        term = term * n
        if term.is_zero():
            break
        c = gr((-1) ** (k - 1)) / k if u.mode == "exact" else ((-1) ** (k - 1)) / k
        out = out + term.scale(c)
    return out


# ---------------------------------------------------------------------------
# eigenvalues


def _exact_roots(p: list, cfg: ToleranceConfig):
    """Try to split a monic exact polynomial into Gaussian-rational roots.

    Returns (roots with multiplicity, leftover squarefree factor or None).
    Strategy: take the squarefree part, locate its roots numerically (they are
    simple, hence well conditioned), snap to small Gaussian rationals and
    verify exactly; recover multiplicities by exact deflation.
    """
    from fractions import Fraction

    q = _poly_gcd(p, _poly_deriv(p))
    sf, _ = _poly_divmod(p, q)
    coeffs = np.array([c.to_complex() for c in reversed(sf)])
    numeric = np.roots(coeffs) if len(coeffs) > 1 else np.array([])
    roots = []
    p_rem = list(p)
    ok = True
    for z in numeric:
        found = None
        for den in (1, 10, 100, 10**4, 10**6, 10**9):
            re = Fraction(float(z.real)).limit_denominator(den)
            im = Fraction(float(z.imag)).limit_denominator(den)
            cand = gr(re, im)
            # the snap must land on this root, not another root of sf
            if abs(cand.to_complex() - z) > 1e-6 * max(1.0, abs(z)):
                continue
            if not _poly_eval(sf, cand):
                found = cand
                break
        if found is None:
            ok = False
            continue
        # exact multiplicity by repeated deflation of the full polynomial
        mult = 0
        while True:
            qq, r = _poly_divmod(p_rem, [-found, GR_ONE])
            if any(r):
                break
            p_rem = qq
            mult += 1
        if mult == 0:
            ok = False
        roots.extend([found] * mult)
    if ok and len(roots) == len(p) - 1:
        return roots, True
    return roots, False


def _cluster(vals: Sequence[complex], eps: float):
    """Greedy clustering of complex values; returns list of (center, count)."""
    clusters: list[list[complex]] = []
    for v in vals:
        for c in clusters:
            if abs(v - c[0]) <= eps * max(1.0, abs(v), abs(c[0])):
                c.append(v)
                break
        else:
            clusters.append([v])
    return [(sum(c) / len(c), len(c)) for c in clusters]


def eigenvalues(m: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> list:
    """Roots of the characteristic polynomial with multiplicity.

    Exact Gaussian rationals when the polynomial splits over Q(i); otherwise
    clustered complex approximations (never fails).
    """
    if not m.is_square():
        raise InputError("eigenvalues of non-square matrix")
    if m.rows == 0:
        return []
    if m.mode == "exact":
        p = char_poly(m)
        roots, complete = _exact_roots(p, cfg)
        if complete:
            return sorted(roots, key=lambda z: z.sort_key())
        numeric = np.linalg.eigvals(m.to_numpy())
    else:
        numeric = np.linalg.eigvals(m.to_numpy())
    out = []
    for center, count in _cluster([complex(z) for z in numeric], cfg.cluster_eps):
        out.extend([center] * count)
    return sorted(out, key=lambda z: (z.real, z.imag))


# ---------------------------------------------------------------------------
# joint eigendecomposition of commuting semisimple tuples


@dataclass(frozen=True)
class JointBlock:
    eigvec: tuple  # one eigenvalue per input matrix
    multiplicity: int
    basis: Matrix  # n x multiplicity, columns span the joint eigenspace


@dataclass(frozen=True)
class JointSpectrum:
    size: int
    blocks: tuple

    def change_of_basis(self) -> Matrix:
        if not self.blocks:
            raise InputError("empty spectrum has no basis")
        return Matrix.hstack([b.basis for b in self.blocks])


def _check_commuting(mats: Sequence[Matrix], eps: float):
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            c = mats[i].commutator(mats[j])
            if not c.is_zero(eps if mats[i].mode == "approx" else 0.0):
                raise NonCommuting(i, j)


def _restrict(a: Matrix, basis: Matrix) -> Matrix:
    """C with basis @ C = a @ basis (basis has full column rank)."""
    return basis.solve(a * basis)


def joint_eigen_decomposition(
    mats: Sequence[Matrix], cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> JointSpectrum:
    """Simultaneous diagonalization data of a commuting semisimple tuple."""
    mats = list(mats)
    if not mats:
        raise InputError("need at least one matrix")
    n = mats[0].rows
    for m in mats:
        if not m.is_square() or m.rows != n:
            raise InputError("matrices must be square of equal size")
    mode = mats[0].mode
    eps = cfg.eps if mode == "approx" else 0.0
    _check_commuting(mats, eps)
    if n == 0:
        return JointSpectrum(0, tuple())
    # blocks: (eigvec prefix, basis matrix)
    blocks = [((), Matrix.identity(n, mode))]
    for idx, a in enumerate(mats):
        new_blocks = []
        for prefix, basis in blocks:
            c = _restrict(a, basis)
            lam = eigenvalues(c, cfg)
            distinct = []
            for v in lam:
                if not any(_scalar_close(v, w, cfg) for w in distinct):
                    distinct.append(v)
            covered = 0
            for v in distinct:
                shift = c - Matrix.identity(c.rows, mode).scale(
                    v if mode == "exact" else complex(v)
                )
                null = shift.nullspace(cfg.eps)
                if not null:
                    continue
                w = Matrix.hstack(null)
                covered += w.cols
                new_blocks.append((prefix + (v,), basis * w))
            if covered != basis.cols:
                raise NotSemisimple(idx)
        blocks = new_blocks
    out = tuple(
        JointBlock(eigvec=prefix, multiplicity=basis.cols, basis=basis)
        for prefix, basis in blocks
    )
    return JointSpectrum(n, out)


def _scalar_close(a, b, cfg: ToleranceConfig) -> bool:
    if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
        return a == b
    ca = a.to_complex() if isinstance(a, GaussianRational) else complex(a)
    cb = b.to_complex() if isinstance(b, GaussianRational) else complex(b)
    return abs(ca - cb) <= cfg.cluster_eps * max(1.0, abs(ca), abs(cb))


# ---------------------------------------------------------------------------
# intertwiner space and invertibility search


def intertwiner_space(
    a: Sequence[Matrix], b: Sequence[Matrix], cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> list[Matrix]:
    """Basis of {X : X @ A_i = B_i @ X for all i}; X is (rows of B) x (rows of A)."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise InputError("tuples must have equal length")
    if not a:
        raise InputError("need at least one matrix per tuple")
    n = a[0].rows
    m = b[0].rows
    mode = a[0].mode
    if n == 0 or m == 0:
        return []
    rows = []
    for ai, bi in zip(a, b):
        if ai.rows != n or bi.rows != m:
            raise InputError("inconsistent sizes")
        for r in range(m):
            for t in range(n):
                row = [GR_ZERO if mode == "exact" else 0j] * (m * n)
                for s in range(n):
                    row[r * n + s] = row[r * n + s] + ai[s, t]
                for u in range(m):
                    row[u * n + t] = row[u * n + t] - bi[r, u]
                rows.append(row)
    system = Matrix(len(rows), m * n, [x for row in rows for x in row], mode)
    return [
        Matrix(m, n, [v[k, 0] for k in range(m * n)], mode)
        for v in system.nullspace(cfg.eps)
    ]


def contains_invertible(
    basis: Sequence[Matrix], cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> tuple[bool, Matrix | None]:
    """Decide whether the span of `basis` contains an invertible matrix.

    Deterministic (symbolic generic determinant) for size <= 4; otherwise a
    seeded randomized test with one-sided error: a False answer after
    cfg.pit_trials integer trials is wrong with probability at most
    (n / 2**21) ** pit_trials by Schwartz-Zippel on det of the generic
    combination.
    """
    basis = list(basis)
    if not basis:
        return False, None
    n = basis[0].rows
    mode = basis[0].mode
    if n == 0:
        return True, basis[0]
    if mode == "exact" and n <= 4:
        return _contains_invertible_symbolic(basis)
    rng = random.Random(cfg.rng_seed)
    bound = 1 << 20
    for _ in range(cfg.pit_trials):
        coeffs = [rng.randint(-bound, bound) for _ in basis]
        cand = _combine(basis, coeffs)
        if _is_invertible(cand, cfg):
            return True, cand
    return False, None


def _combine(basis, coeffs):
    out = basis[0].scale(coeffs[0] if basis[0].mode == "approx" else gr(coeffs[0]))
    for m, c in zip(basis[1:], coeffs[1:]):
        out = out + m.scale(c if m.mode == "approx" else gr(c))
    return out


def _is_invertible(m: Matrix, cfg: ToleranceConfig) -> bool:
    if m.mode == "exact":
        return bool(m.det())
    a = m.to_numpy()
    s = np.linalg.svd(a, compute_uv=False)
    return bool(s[-1] > cfg.eps * max(1.0, s[0]))


def _contains_invertible_symbolic(basis) -> tuple[bool, Matrix | None]:
    k = len(basis)
    n = basis[0].rows
    vars = tuple(f"c{i}" for i in range(k))
    zero = Poly(vars, {})
    generic_entries = []
    for i in range(n):
        for j in range(n):
            p = zero
            for t, b in enumerate(basis):
                e = [0] * k
                e[t] = 1
                p = p + Poly(vars, {tuple(e): b[i, j]})
            generic_entries.append(p)
    generic = Matrix(n, n, generic_entries, "symbolic")
    detp = generic.det()
    if detp.is_zero():
        return False, None
    # Find an integer witness: fix variables one at a time, keeping the
    # restricted determinant nonzero.  Degree per variable is at most n, so
    # one of 0..n always works.
    coeffs = []
    cur = detp
    for i in range(k):
        for v in range(n + 1):
            cand = cur.subs_scalar(vars[i], gr(v))
            if not cand.is_zero():
                coeffs.append(v)
                cur = cand
                break
        else:  # unreachable by the degree bound
            raise InputError("witness search failed")
    witness = _combine(basis, coeffs)
    return True, witness


# ---------------------------------------------------------------------------
# general matrix exponential through the Jordan split


def exp_general(m: Matrix, cfg: ToleranceConfig = DEFAULT_TOLERANCE) -> Matrix:
    """exp(M) = exp(M_s) * exp_nilpotent(M_n); exact semisimple factors are
    exponentiated through the spectrum, so the result is approx unless M is
    nilpotent."""
    if m.rows == 0:
        return m
    pair = jordan_chevalley(m, cfg)
    if pair.s.is_zero(cfg.eps if m.mode == "approx" else 0.0):
        expn = _exp_nilpotent_unchecked(pair.n)
        return expn
    import scipy.linalg

    return Matrix.from_numpy(scipy.linalg.expm(m.to_numpy()))

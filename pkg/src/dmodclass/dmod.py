"""Hom spaces between invariant D-modules and the flow solution formula.

A module morphism is determined by its initial value X(0), which must be
supported on pairs of joint eigenblocks carrying equal eigenvalue
functionals; the flow of an admissible initial value stays polynomial.
Includes an exactly verified rank-3 fixture over SL_2."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import scipy.linalg

from .errors import InputError, NotNilpotent
from .lie import (
    LieAlgebraData,
    NilpotencyProfile,
    Representation,
    nilpotency_profile,
    validate_representation,
)
from .linalg import (
    JointSpectrum,
    exp_nilpotent,
    joint_eigen_decomposition,
    jordan_chevalley,
)
from .matrix import Matrix
from .poly import Poly
from .scalars import (
    DEFAULT_TOLERANCE,
    GaussianRational,
    ToleranceConfig,
    gr,
)
from .unipotent import semisimplify

__all__ = [
    "InvariantDModule",
    "HomSpace",
    "FixtureReport",
    "hom_dimension",
    "flow_solution",
    "is_polynomial_solution",
    "sl2_adjoint_fixture",
]

GROUP_KINDS = ("unipotent", "torus", "borel")


@dataclass(frozen=True)
class InvariantDModule:
    rep: Representation
    group_kind: str

    def __post_init__(self):
        if self.group_kind not in GROUP_KINDS:
            raise InputError(f"unknown group kind {self.group_kind!r}")
        report = validate_representation(self.rep)
        if not report.valid:
            raise InputError(f"invalid representation: {report.failures[0]}")
        if self.group_kind == "unipotent":
            profile = nilpotency_profile(self.rep.algebra)
            if not profile.is_nilpotent:
                raise NotNilpotent("unipotent kind needs a nilpotent algebra")


@dataclass(frozen=True)
class HomSpace:
    dimension: int
    block_matches: tuple  # (functional vector, mult_source, mult_target)
    initial_value_basis: tuple  # rank(M2) x rank(M1) matrices


def _eigen_data(rho: Representation, profile: NilpotencyProfile, cfg: ToleranceConfig):
    """(change of basis, per-column functional vector) of the semisimplified
    abelianization images; trivial block when the abelianization is empty."""
    rho_s = semisimplify(rho, cfg)
    idx = profile.complement_indices
    if not idx:
        mode = rho.mode
        return Matrix.identity(rho.rank, mode), [()] * rho.rank
    mats = [rho_s.images[i] for i in idx]
    spectrum = joint_eigen_decomposition(mats, cfg)
    p = spectrum.change_of_basis()
    functionals = []
    for b in spectrum.blocks:
        functionals.extend([tuple(b.eigvec)] * b.multiplicity)
    return p, functionals


def _functional_eq(f1, f2, cfg: ToleranceConfig) -> bool:
    for a, b in zip(f1, f2):
        if isinstance(a, GaussianRational) and isinstance(b, GaussianRational):
            if a != b:
                return False
        else:
            ca = a.to_complex() if isinstance(a, GaussianRational) else complex(a)
            cb = b.to_complex() if isinstance(b, GaussianRational) else complex(b)
            if abs(ca - cb) > cfg.cluster_eps * max(1.0, abs(ca), abs(cb)):
                return False
    return True


def hom_dimension(
    m1: InvariantDModule, m2: InvariantDModule, cfg: ToleranceConfig = DEFAULT_TOLERANCE
) -> HomSpace:
    """Dimension and initial-value basis of Hom(M1, M2).

    Morphisms are matrices X with v(X) = X rho1(v) - rho2(v) X; each is the
    flow of an initial value supported on pairs of joint eigenblocks with
    equal eigenvalue functionals, contributing mult_source * mult_target."""
    if m1.group_kind != "unipotent" or m2.group_kind != "unipotent":
        raise InputError("hom spaces are computed for the unipotent kind only")
    if m1.rep.algebra is not m2.rep.algebra and m1.rep.algebra != m2.rep.algebra:
        raise InputError("modules live over different algebras")
    profile = nilpotency_profile(m1.rep.algebra)
    p, lam = _eigen_data(m1.rep, profile, cfg)
    q, mu = _eigen_data(m2.rep, profile, cfg)
    pinv = p.inverse()
    n1, n2 = m1.rep.rank, m2.rep.rank
    matched_keys = []
    basis = []
    for i in range(n2):
        for j in range(n1):
            if not _functional_eq(mu[i], lam[j], cfg):
                continue
            if not any(_functional_eq(mu[i], k, cfg) for k in matched_keys):
                matched_keys.append(mu[i])
            unit = Matrix(
                n2,
                n1,
                [
                    (gr(1) if q.mode == "exact" else 1.0 + 0j)
                    if (r, c) == (i, j)
                    else (gr(0) if q.mode == "exact" else 0j)
                    for r in range(n2)
                    for c in range(n1)
                ],
            )
            basis.append(q * unit * pinv)
    counted = []
    for key in matched_keys:
        ms = sum(1 for f in lam if _functional_eq(f, key, cfg))
        mt = sum(1 for f in mu if _functional_eq(f, key, cfg))
        counted.append((key, ms, mt))
    block_matches = tuple(sorted(counted, key=lambda t: str(t[0])))
    dim = sum(ms * mt for _, ms, mt in block_matches)
    if dim != len(basis):
        raise InputError("internal inconsistency in block matching")
    return HomSpace(dim, block_matches, tuple(basis))


def flow_solution(
    rho1: Representation,
    rho2: Representation,
    x0: Matrix,
    p: Sequence,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> Matrix:
    """X(p) = exp(-rho2(p)) X(0) exp(rho1(p)).

    Exact when X(0) is admissible: the semisimple exponential factors then
    cancel across the matched blocks, leaving finite nilpotent exponentials.
    For inadmissible X(0) the value is generally transcendental and is
    returned in approx mode."""
    if x0.rows != rho2.rank or x0.cols != rho1.rank:
        raise InputError("X(0) must map rank(rho1) to rank(rho2)")
    a1 = rho1.image_of(list(p))
    a2 = rho2.image_of(list(p))
    if x0.mode == "exact" and a1.mode == "exact" and a2.mode == "exact":
        j1 = jordan_chevalley(a1, cfg)
        j2 = jordan_chevalley(a2, cfg)
        if j1.s.is_zero() and j2.s.is_zero():
            return exp_nilpotent(j2.n.scale(gr(-1))) * x0 * exp_nilpotent(j1.n)
        if is_polynomial_solution(rho1, rho2, x0, cfg):
            return exp_nilpotent(j2.n.scale(gr(-1))) * x0 * exp_nilpotent(j1.n)
    e1 = scipy.linalg.expm(a1.to_approx().to_numpy() if a1.mode == "exact" else a1.to_numpy())
    m2 = a2.to_approx().to_numpy() if a2.mode == "exact" else a2.to_numpy()
    e2 = scipy.linalg.expm(-m2)
    x0n = x0.to_approx().to_numpy() if x0.mode == "exact" else x0.to_numpy()
    return Matrix.from_numpy(e2 @ x0n @ e1)


def is_polynomial_solution(
    rho1: Representation,
    rho2: Representation,
    x0: Matrix,
    cfg: ToleranceConfig = DEFAULT_TOLERANCE,
) -> bool:
    """True iff X(0), in the joint eigenbases of the semisimplified reps,
    vanishes outside pairs of blocks with equal eigenvalue functionals."""
    if x0.rows != rho2.rank or x0.cols != rho1.rank:
        raise InputError("X(0) must map rank(rho1) to rank(rho2)")
    profile = nilpotency_profile(rho1.algebra)
    p, lam = _eigen_data(rho1, profile, cfg)
    q, mu = _eigen_data(rho2, profile, cfg)
    y = q.inverse() * (x0 if x0.mode == q.mode else x0.to_approx()) * (
        p if p.mode == q.mode else p.to_approx()
    )
    eps = cfg.eps if y.mode == "approx" else 0.0
    for i in range(y.rows):
        for j in range(y.cols):
            if _functional_eq(mu[i], lam[j], cfg):
                continue
            v = y[i, j]
            if y.mode == "exact":
                if v != gr(0):
                    return False
            elif abs(v) > eps:
                return False
    return True


# ---------------------------------------------------------------------------
# SL_2 adjoint fixture


@dataclass(frozen=True)
class FixtureReport:
    bracket_checks: tuple  # (name, passed)
    pde_checks: tuple  # (name, passed)
    identity_is_unit: bool

    @property
    def passed(self) -> bool:
        return (
            self.identity_is_unit
            and all(ok for _, ok in self.bracket_checks)
            and all(ok for _, ok in self.pde_checks)
        )


_SL2_VARS = ("x", "y", "z", "w")


def _sl2_reduce(poly: Poly) -> Poly:
    """Normal form modulo (x*w - y*z - 1): rewrite x*w -> y*z + 1 until no
    monomial contains both x and w.  Monomials with x-degree or w-degree
    zero form a basis of the quotient ring, so the normal form of an ideal
    member is the zero polynomial."""
    terms = dict(poly.terms)
    changed = True
    while changed:
        changed = False
        for expo, coeff in list(terms.items()):
            a, b, c, d = expo
            if a >= 1 and d >= 1:
                del terms[expo]
                base = (a - 1, b, c, d - 1)
                for delta, mult in (((0, 1, 1, 0), coeff), ((0, 0, 0, 0), coeff)):
                    new = tuple(e + f for e, f in zip(base, delta))
                    acc = terms.get(new, gr(0)) + mult
                    if acc == gr(0):
                        terms.pop(new, None)
                    else:
                        terms[new] = acc
                changed = True
                break
    return Poly(_SL2_VARS, terms)


def _sl2_vector_field(coeffs) -> callable:
    """Derivation sum_i c_i(x,y,z,w) d/d(var_i) on polynomials."""

    def apply(poly: Poly) -> Poly:
        out = Poly(_SL2_VARS, {})
        for name, c in coeffs.items():
            out = out + c * poly.diff(name)
        return out

    return apply


def sl2_adjoint_fixture() -> FixtureReport:
    """Exact verification of the rank-3 adjoint example over SL_2.

    Constructs rho(X), rho(Y), rho(H), the three invariant vector fields,
    and the explicit polynomial gauge; checks the sl_2 bracket relations and
    the three intertwining PDEs v(X) = X rho(v) in the coordinate ring
    modulo (x*w - y*z - 1)."""
    rho_x = Matrix.from_rows([[0, 0, -2], [0, 0, 0], [0, 1, 0]])
    rho_y = Matrix.from_rows([[0, 0, 0], [0, 0, 2], [-1, 0, 0]])
    rho_h = Matrix.from_rows([[2, 0, 0], [0, -2, 0], [0, 0, 0]])
    brackets = (
        ("[X,Y]=H", rho_x.commutator(rho_y) == rho_h),
        ("[H,X]=2X", rho_h.commutator(rho_x) == rho_x.scale(gr(2))),
        ("[H,Y]=-2Y", rho_h.commutator(rho_y) == rho_y.scale(gr(-2))),
    )

    x, y, z, w = (Poly.variable(_SL2_VARS, v) for v in _SL2_VARS)
    gauge = [
        [x * x, y * y * gr(-1), x * y * gr(-2)],
        [z * z * gr(-1), w * w, z * w * gr(2)],
        [x * z * gr(-1), y * w, x * w + y * z],
    ]
    fields = {
        "X": _sl2_vector_field({"y": x, "w": z}),
        "Y": _sl2_vector_field({"x": y, "z": w}),
        "H": _sl2_vector_field({"x": x, "z": z, "y": y * gr(-1), "w": w * gr(-1)}),
    }
    images = {"X": rho_x, "Y": rho_y, "H": rho_h}
    pde = []
    for name, field in fields.items():
        img = images[name]
        ok = True
        for i in range(3):
            for j in range(3):
                # (v(gauge))_ij - (gauge * rho(v))_ij must lie in the ideal
                rhs = Poly(_SL2_VARS, {})
                for k in range(3):
                    rhs = rhs + gauge[i][k] * img[k, j]
                diff = field(gauge[i][j]) - rhs
                if not _sl2_reduce(diff).is_zero():
                    ok = False
        pde.append((f"{name}-PDE", ok))

    ident = {"x": gr(1), "y": gr(0), "z": gr(0), "w": gr(1)}
    at_identity = Matrix.from_rows(
        [
            [gauge[i][j].eval([ident[v] for v in _SL2_VARS]) for j in range(3)]
            for i in range(3)
        ]
    )
    identity_ok = at_identity == Matrix.identity(3, "exact")
    return FixtureReport(brackets, tuple(pde), identity_ok)

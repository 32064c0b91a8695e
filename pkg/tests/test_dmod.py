import math

import pytest
from gmpy2 import mpq

from dmodclass.dmod import (
    InvariantDModule,
    flow_solution,
    hom_dimension,
    is_polynomial_solution,
    sl2_adjoint_fixture,
)
from dmodclass.errors import InputError, NotNilpotent
from dmodclass.lie import LieAlgebraData, Representation, abelian
from dmodclass.linalg import intertwiner_space
from dmodclass.matrix import Matrix
from dmodclass.scalars import gr
from dmodclass.unipotent import semisimplify

from conftest import (
    conjugate_rep,
    elementary,
    h3_rep,
    random_unimodular,
    rng_for,
)


def _diag_rep(alg, diags):
    """Abelian rep with prescribed diagonal images, diags[i] a tuple."""
    rank = len(diags[0])
    images = []
    for d in diags:
        images.append(
            Matrix.from_rows(
                [[d[r] if r == c else gr(0) for c in range(rank)] for r in range(rank)]
            )
        )
    return Representation(alg, rank, tuple(images))


def _scalar_nil_rep(alg, lam, rank):
    """Single-generator image lam*I + E01."""
    m = Matrix.identity(rank, "exact").scale(lam)
    if rank >= 2:
        m = m + elementary(rank, 0, 1)
    return Representation(alg, rank, (m,))


def _module(rep):
    return InvariantDModule(rep, "unipotent")


def test_module_validation():
    a1 = abelian(1)
    rho = _scalar_nil_rep(a1, gr(1), 2)
    assert _module(rho).group_kind == "unipotent"
    with pytest.raises(InputError):
        InvariantDModule(rho, "solvable")
    nonnil = LieAlgebraData(2, ("a", "b"), {(0, 1): {1: gr(1)}})
    img = (Matrix.from_rows([[gr(1)]]), Matrix.from_rows([[gr(0)]]))
    with pytest.raises(NotNilpotent):
        InvariantDModule(Representation(nonnil, 1, img), "unipotent")


def test_hom_self_single_character_block():
    # scalar plus nilpotent: one functional block, morphism space is all of gl_2
    a1 = abelian(1)
    rho = _scalar_nil_rep(a1, gr(3), 2)
    h = hom_dimension(_module(rho), _module(rho))
    assert h.dimension == 4
    assert len(h.initial_value_basis) == 4
    ((key, ms, mt),) = h.block_matches
    assert (ms, mt) == (2, 2)


def test_hom_distinct_characters_vanish():
    a1 = abelian(1)
    r1 = _scalar_nil_rep(a1, gr(1), 2)
    r2 = _scalar_nil_rep(a1, gr(2), 2)
    h = hom_dimension(_module(r1), _module(r2))
    assert h.dimension == 0
    assert h.block_matches == ()
    assert h.initial_value_basis == ()


def test_hom_partial_match():
    a1 = abelian(1)
    rho = _diag_rep(a1, [(gr(1), gr(2))])
    sig = _diag_rep(a1, [(gr(2), gr(3))])
    h = hom_dimension(_module(rho), _module(sig))
    assert h.dimension == 1
    ((key, ms, mt),) = h.block_matches
    assert (ms, mt) == (1, 1)
    (b,) = h.initial_value_basis
    assert (b * rho.images[0] - sig.images[0] * b).is_zero()


def test_hom_invariant_under_conjugation():
    rng = rng_for("homconj")
    rho = h3_rep(rng)
    tau = conjugate_rep(rho, random_unimodular(rng, rho.rank))
    h1 = hom_dimension(_module(rho), _module(rho))
    h2 = hom_dimension(_module(rho), _module(tau))
    assert h1.dimension == h2.dimension


def test_hom_matches_intertwiner_of_semisimplification():
    a2 = abelian(2)
    rho = _diag_rep(a2, [(gr(1), gr(1), gr(2)), (gr(0), gr(0), gr(1))])
    sig = _diag_rep(a2, [(gr(1), gr(2), gr(2)), (gr(0), gr(1), gr(1))])
    h = hom_dimension(_module(rho), _module(sig))
    rs, ss = semisimplify(rho), semisimplify(sig)
    basis = intertwiner_space(rs.images, ss.images)
    assert h.dimension == len(basis)
    assert h.dimension == 4


def test_flow_at_origin_is_initial_value():
    rng = rng_for("flow0")
    rho = h3_rep(rng)
    x0 = Matrix.identity(3, "exact")
    assert flow_solution(rho, rho, x0, [gr(0)] * 3) == x0


def test_flow_identity_morphism_is_constant():
    rng = rng_for("flowid")
    rho = h3_rep(rng)
    x0 = Matrix.identity(3, "exact")
    val = flow_solution(rho, rho, x0, [gr(1), gr(mpq(1, 2)), gr(-2)])
    assert val == x0
    assert val.mode == "exact"


def test_flow_nilpotent_polynomial():
    # rank-1 source, rank-2 target with lone E01: X(p) transports (1, 0) linearly
    a1 = abelian(1)
    r1 = _diag_rep(a1, [(gr(0),)])
    r2 = _scalar_nil_rep(a1, gr(0), 2)
    x0 = Matrix.from_rows([[gr(0)], [gr(1)]])
    for t in (gr(0), gr(1), gr(mpq(-3, 2))):
        val = flow_solution(r1, r2, x0, [t])
        assert val.mode == "exact"
        assert val == Matrix.from_rows([[gr(-1) * t], [gr(1)]])


def test_flow_inadmissible_is_exponential():
    a1 = abelian(1)
    r1 = _diag_rep(a1, [(gr(0),)])
    r2 = _diag_rep(a1, [(gr(-1),)])
    x0 = Matrix.from_rows([[gr(1)]])
    assert not is_polynomial_solution(r1, r2, x0)
    val = flow_solution(r1, r2, x0, [gr(1)])
    assert val.mode == "approx"
    assert abs(val[0, 0] - math.e) < 1e-9


def test_is_polynomial_solution_cases():
    a1 = abelian(1)
    rho = _diag_rep(a1, [(gr(1), gr(2))])
    assert is_polynomial_solution(rho, rho, Matrix.identity(2, "exact"))
    assert not is_polynomial_solution(rho, rho, elementary(2, 0, 1))
    assert not is_polynomial_solution(rho, rho, elementary(2, 1, 0))


def test_initial_value_basis_flows_are_polynomial():
    rng = rng_for("flowbasis")
    rho = h3_rep(rng)
    tau = conjugate_rep(rho, random_unimodular(rng, rho.rank))
    h = hom_dimension(_module(rho), _module(tau))
    assert h.dimension >= 1
    for b in h.initial_value_basis:
        assert is_polynomial_solution(rho, tau, b)
        val = flow_solution(rho, tau, b, [gr(1), gr(2), gr(-1)])
        assert val.mode == "exact"


def test_sl2_fixture_passes():
    report = sl2_adjoint_fixture()
    assert report.identity_is_unit
    assert all(ok for _, ok in report.bracket_checks)
    assert all(ok for _, ok in report.pde_checks)
    assert report.passed

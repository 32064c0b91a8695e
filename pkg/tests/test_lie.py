import pytest
from gmpy2 import mpq

from dmodclass.errors import NotNilpotent
from dmodclass.lie import (
    LieAlgebraData,
    Representation,
    abelian,
    bch,
    filiform4,
    flatness_check,
    heisenberg,
    invariant_derivative,
    nilpotency_profile,
    sl2,
    validate_lie_algebra,
    validate_representation,
)
from dmodclass.linalg import exp_nilpotent, log_unipotent
from dmodclass.matrix import Matrix
from dmodclass.scalars import gr

from conftest import elementary, h3_rep, rng_for


def test_stock_algebras_valid():
    for alg in (abelian(1), abelian(3), heisenberg(), filiform4(), sl2()):
        assert validate_lie_algebra(alg).valid


def test_jacobi_violation_detected():
    bad = LieAlgebraData(
        3,
        ("a", "b", "c"),
        {(0, 1): {2: gr(1)}, (0, 2): {0: gr(1)}, (1, 2): {1: gr(1)}},
    )
    report = validate_lie_algebra(bad)
    assert not report.valid
    assert report.failures


def test_nilpotency_profiles():
    assert nilpotency_profile(abelian(2)).nil_class == 1
    h3p = nilpotency_profile(heisenberg())
    assert h3p.is_nilpotent and h3p.nil_class == 2
    assert h3p.abelianization_dim == 2
    f4 = nilpotency_profile(filiform4())
    assert f4.is_nilpotent and f4.nil_class == 3
    assert f4.abelianization_dim == 2
    s = nilpotency_profile(sl2())
    assert not s.is_nilpotent


def test_validate_representation():
    rng = rng_for("liereps")
    rep = h3_rep(rng)
    assert validate_representation(rep).valid
    bad = Representation(
        heisenberg(), 2, (elementary(2, 0, 1), elementary(2, 1, 0), Matrix.zeros(2, 2, "exact"))
    )
    assert not validate_representation(bad).valid


def test_flatness_matches_validity():
    rng = rng_for("flatness")
    rep = h3_rep(rng)
    assert flatness_check(rep)
    bad = Representation(
        heisenberg(), 2, (elementary(2, 0, 1), elementary(2, 1, 0), Matrix.zeros(2, 2, "exact"))
    )
    assert not flatness_check(bad)


def test_bch_heisenberg_closed_form():
    h3 = heisenberg()
    x = [gr(1), gr(0), gr(0)]
    y = [gr(0), gr(1), gr(0)]
    out = bch(x, y, h3, nil_class=2)
    assert out == [gr(1), gr(1), gr(mpq(1, 2))]


def test_bch_matches_matrix_exponentials():
    rng = rng_for("bch-oracle")
    h3 = heisenberg()
    for trial in range(5):
        rep = h3_rep(rng)
        # strictly-upper part only: the scalar shifts commute out of exp/log
        images = [a - Matrix.identity(3, "exact").scale(a[0, 0]) for a in rep.images]
        p = [gr(rng.randint(-2, 2)) for _ in range(3)]
        q = [gr(rng.randint(-2, 2)) for _ in range(3)]
        rp = sum((images[i].scale(p[i]) for i in range(3)), Matrix.zeros(3, 3, "exact"))
        rq = sum((images[i].scale(q[i]) for i in range(3)), Matrix.zeros(3, 3, "exact"))
        z = bch(p, q, h3, nil_class=2)
        rz = sum((images[i].scale(z[i]) for i in range(3)), Matrix.zeros(3, 3, "exact"))
        assert log_unipotent(exp_nilpotent(rp) * exp_nilpotent(rq)) == rz


def test_bch_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        bch([gr(1), gr(0), gr(0)], [gr(0), gr(1), gr(0)], sl2())


def test_invariant_derivative_heisenberg():
    from dmodclass.poly import Poly

    h3 = heisenberg()
    phi = Poly.variable(h3.basis_names, h3.basis_names[2])  # the z coordinate
    p = [gr(1), gr(0), gr(0)]  # base point exp(x)
    v = [gr(0), gr(1), gr(0)]  # direction y
    d = invariant_derivative(phi, v, p, h3)
    # bch(x, ty) = x + ty + (t/2) z, so d/dt z-coordinate = 1/2
    assert d == gr(mpq(1, 2))


def test_invariant_derivative_abelian_square():
    from dmodclass.poly import Poly

    c1 = abelian(1)
    a1 = Poly.variable(c1.basis_names, c1.basis_names[0])
    d = invariant_derivative(a1 * a1, [gr(1)], [gr(3)], c1)
    assert d == gr(6)

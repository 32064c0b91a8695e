import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from gmpy2 import mpq

from dmodclass.errors import InputError, NonCommuting, NotEquivalent
from dmodclass.matrix import Matrix
from dmodclass.scalars import gr
from dmodclass.torus import (
    MonodromyTuple,
    TorusRep,
    laurent_gauge,
    monodromy,
    multi_log,
    torus_gauge_equivalent,
    verify_laurent_gauge,
)

from conftest import conjugate_rep, elementary, random_unimodular, rng_for


def test_torus_rep_requires_commuting():
    with pytest.raises(NonCommuting):
        TorusRep(2, (elementary(2, 0, 1), elementary(2, 1, 0)))


def test_monodromy_quarter_integer_exact():
    r = TorusRep(1, (Matrix.from_rows([[gr(mpq(1, 2))]]),))
    m = monodromy(r)
    assert m.mode == "exact"
    assert m.matrices[0][0, 0] == gr(-1)
    quarter = TorusRep(1, (Matrix.from_rows([[gr(mpq(1, 4))]]),))
    assert monodromy(quarter).matrices[0][0, 0] == gr(0, 1)


def test_monodromy_generic_approx():
    r = TorusRep(1, (Matrix.from_rows([[gr(mpq(1, 3))]]),))
    m = monodromy(r)
    assert m.mode == "approx"
    assert abs(m.matrices[0][0, 0] - cmath.exp(2j * math.pi / 3)) < 1e-9


def test_monodromy_kills_integer_shifts():
    a = Matrix.from_rows([[0, 0], [0, 1]])
    r1 = TorusRep(1, (a,))
    r2 = TorusRep(1, (Matrix.zeros(2, 2, "exact"),))
    m1, m2 = monodromy(r1), monodromy(r2)
    assert m1.matrices[0] == m2.matrices[0] == Matrix.identity(2, "exact")


def test_torus_equivalence_integer_shift():
    r1 = TorusRep(1, (Matrix.from_rows([[0, 0], [0, 1]]),))
    r2 = TorusRep(1, (Matrix.zeros(2, 2, "exact"),))
    cert = torus_gauge_equivalent(r1, r2)
    assert cert.verdict and not cert.used_randomized


def test_torus_equivalence_negative():
    r1 = TorusRep(1, (Matrix.from_rows([[0]]),))
    r2 = TorusRep(1, (Matrix.from_rows([[gr(mpq(1, 2))]]),))
    assert not torus_gauge_equivalent(r1, r2).verdict


def test_laurent_gauge_shift_and_identity():
    r1 = TorusRep(1, (Matrix.from_rows([[0, 0], [0, 1]]),))
    r2 = TorusRep(1, (Matrix.zeros(2, 2, "exact"),))
    cert = torus_gauge_equivalent(r1, r2)
    lg = laurent_gauge(r1, r2, cert.conjugator)
    assert verify_laurent_gauge(lg, r1, r2)
    # numeric check against the closed form
    g = cert.conjugator
    for zv in (0.7 + 0.2j, 2.3):
        lz = cmath.log(zv)
        expect = (
            scipy.linalg.expm(-lz * r2.matrices[0].to_numpy())
            @ np.linalg.inv(g.to_numpy())
            @ scipy.linalg.expm(lz * r1.matrices[0].to_numpy())
        )
        assert np.allclose(lg.evaluate([zv]).to_numpy(), expect)


def test_laurent_gauge_with_nilpotent_parts():
    a1 = Matrix.from_rows([[1, 1], [0, 1]])
    a2 = Matrix.from_rows([[2, 0], [0, 2]])
    b1 = Matrix.from_rows([[0, 1], [0, 0]])
    b2 = Matrix.from_rows([[3, 0], [0, 3]])
    r1, r2 = TorusRep(2, (a1, a2)), TorusRep(2, (b1, b2))
    cert = torus_gauge_equivalent(r1, r2)
    assert cert.verdict
    lg = laurent_gauge(r1, r2, cert.conjugator)
    for zv in ((0.4 + 0.1j, 1.7), (2.0, 0.5 + 0.5j)):
        l1, l2 = cmath.log(zv[0]), cmath.log(zv[1])
        expect = (
            scipy.linalg.expm(-(l1 * b1.to_numpy() + l2 * b2.to_numpy()))
            @ np.linalg.inv(cert.conjugator.to_numpy())
            @ scipy.linalg.expm(l1 * a1.to_numpy() + l2 * a2.to_numpy())
        )
        assert np.allclose(lg.evaluate(list(zv)).to_numpy(), expect)


def test_laurent_gauge_rejects_mismatched_monodromy():
    r1 = TorusRep(1, (Matrix.from_rows([[gr(mpq(1, 3))]]).to_approx(),))
    r2 = TorusRep(1, (Matrix.from_rows([[0]]).to_approx(),))
    with pytest.raises(NotEquivalent):
        laurent_gauge(r1, r2, Matrix.from_rows([[1]]).to_approx())


def test_laurent_gauge_rejects_mismatched_nilpotent_parts():
    # same monodromy (both unipotent parts trivial at exp(2*pi*i*N) = I+2*pi*i*N?
    # no: N and 0 give different monodromies, so build equal monodromy with
    # different nilpotent ranks via integer semisimple shifts only
    a = Matrix.from_rows([[0, 1], [0, 0]])
    b = Matrix.zeros(2, 2, "exact")
    r1, r2 = TorusRep(1, (a,)), TorusRep(1, (b,))
    cert = torus_gauge_equivalent(r1, r2)
    # exp(2*pi*i*N) = I + 2*pi*i*N differs from I, so not equivalent
    assert not cert.verdict


def test_multi_log_unipotent_exact():
    u = Matrix.from_rows([[1, 1], [0, 1]])
    ml = multi_log(MonodromyTuple((u,)))
    assert ml.matrices[0] == elementary(2, 0, 1)
    assert ml.mode == "exact"


def test_multi_log_round_trip_random():
    rng = rng_for("multilog")
    for _ in range(10):
        n = rng.choice((2, 3))
        # commuting invertible pair: polynomials in one invertible matrix
        base = random_unimodular(rng, n) + Matrix.identity(n, "exact").scale(
            gr(rng.randint(2, 4))
        )
        if base.det() == gr(0):
            continue
        b1 = base
        b2 = base * base
        ml = multi_log(MonodromyTuple((b1.to_approx(), b2.to_approx())))
        for orig, lg in zip((b1, b2), ml.matrices):
            back = scipy.linalg.expm(lg.to_numpy())
            assert np.allclose(back, orig.to_approx().to_numpy(), atol=1e-8)


def test_multi_log_rejects_singular():
    with pytest.raises(InputError):
        multi_log(MonodromyTuple((Matrix.zeros(2, 2, "exact"),)))

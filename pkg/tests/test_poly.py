import pytest
from gmpy2 import mpq

from dmodclass.errors import InputError
from dmodclass.poly import Poly
from dmodclass.scalars import gr

V = ("x", "y")


def x():
    return Poly.variable(V, "x")


def y():
    return Poly.variable(V, "y")


def test_ring_operations():
    p = x() + y()
    q = x() - y()
    assert p * q == x() * x() - y() * y()
    assert (p + q) == x() * gr(2)
    assert p - p == Poly(V, {})
    assert p * Poly(V, {}) == Poly(V, {})


def test_pow():
    p = x() + Poly.constant(V, gr(1))
    assert p ** 2 == x() * x() + x() * gr(2) + Poly.constant(V, gr(1))
    assert p ** 0 == Poly.constant(V, gr(1))
    with pytest.raises(InputError):
        p ** -1


def test_laurent_exponents():
    inv = Poly(V, {(-1, 0): gr(1)})
    assert inv * x() == Poly.constant(V, gr(1))
    assert inv.eval([gr(2), gr(0)]) == gr(mpq(1, 2))


def test_diff_and_euler_diff():
    p = x() * x() * y() + y()
    assert p.diff("x") == x() * y() * gr(2)
    assert p.euler_diff("x") == x() * x() * y() * gr(2)
    lau = Poly(V, {(-3, 1): gr(5)})
    assert lau.euler_diff("x") == Poly(V, {(-3, 1): gr(-15)})


def test_eval_scalar_and_ring():
    p = x() * x() + y() * gr(2)
    assert p.eval([gr(3), gr(mpq(1, 2))]) == gr(10)
    # ring-element evaluation: substitute a polynomial for a variable
    t = ("t",)
    tv = Poly.variable(t, "t")
    q = p.eval([tv, tv * tv])
    assert q == tv * tv * gr(3)


def test_subs_and_coefficient():
    p = x() * x() * y() + x() * gr(4)
    assert p.coefficient("x", 2) == y()
    assert p.coefficient("x", 1) == Poly.constant(V, gr(4))
    s = p.subs_scalar("y", gr(2))
    assert s == x() * x() * gr(2) + x() * gr(4)
    assert s.vars == V


def test_constant_helpers():
    p = Poly.constant(V, gr(7))
    assert p.is_constant() and p.constant_term() == gr(7)
    assert Poly(V, {}).is_zero()
    assert not x().is_constant()
    assert (x() * y()).total_degree() == 2

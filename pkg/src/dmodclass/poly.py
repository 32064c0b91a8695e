"""Sparse multivariate (Laurent) polynomials.

Terms map an integer exponent tuple to a coefficient.  Exponents may be
negative, so the same class carries the Laurent gauges on the torus.
Coefficients are exact ``GaussianRational`` by default but any ring with
+, * and truthiness works (complex is used on approx paths).
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .errors import InputError
from .scalars import GR_ONE, GR_ZERO, GaussianRational

__all__ = ["Poly"]


def _is_zero_coeff(c) -> bool:
    if isinstance(c, GaussianRational):
        return not c
    if isinstance(c, (int, float, complex)):
        return c == 0
    return not c


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.vars):
                raise InputError("exponent arity mismatch")
            if not _is_zero_coeff(c):
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, vars: Sequence[str], c) -> "Poly":
        return cls(vars, {tuple([0] * len(vars)): c})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Poly":
        i = tuple(vars).index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): GR_ONE})

    def zero(self) -> "Poly":
        return Poly(self.vars, {})

    def one(self) -> "Poly":
        return Poly.constant(self.vars, GR_ONE)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise InputError("polynomials over different variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t[e] + c if e in t else c
        return Poly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(self.vars, other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return Poly(self.vars, t)

    def __rmul__(self, other):
        return Poly(self.vars, {e: other * c for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative power of a polynomial")
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates ---------------------------------------------------------

    def is_zero(self, eps: float = 0.0) -> bool:
        if eps:
            return all(
                abs(c.to_complex() if isinstance(c, GaussianRational) else c) <= eps
                for c in self.terms.values()
            )
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if _is_zero_coeff(other):
                return self.is_zero()
            other = Poly.constant(self.vars, other)
        return self.vars == other.vars and (self - other).is_zero()

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_term(self):
        return self.terms.get(tuple([0] * len(self.vars)), GR_ZERO)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- calculus and evaluation ---------------------------------------------

    def diff(self, name: str) -> "Poly":
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            t[tuple(e2)] = c * e[i]
        return Poly(self.vars, t)

    def euler_diff(self, name: str) -> "Poly":
        """z * d/dz: exponent-weighted derivative, stays Laurent."""
        i = self.vars.index(name)
        return Poly(self.vars, {e: c * e[i] for e, c in self.terms.items() if e[i]})

    def eval(self, values: Sequence):
        """Evaluate at a point; values may be scalars or ring elements (e.g. Poly)."""
        if len(values) != len(self.vars):
            raise InputError("wrong number of values")
        out = None
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k == 0:
                    continue
                if k < 0 and isinstance(v, Poly):
                    raise InputError("negative exponent needs an invertible value")
                term = term * v ** k
            out = term if out is None else out + term
        if out is None:
            return GR_ZERO
        return out

    def subs_scalar(self, name: str, value) -> "Poly":
        """Substitute one variable by a scalar; the variable stays in the arity."""
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            coeff = c
            if k:
                coeff = coeff * value ** k
            e2 = list(e)
            e2[i] = 0
            e2 = tuple(e2)
            t[e2] = t[e2] + coeff if e2 in t else coeff
        return Poly(self.vars, t)

    def coefficient(self, name: str, power: int) -> "Poly":
        """Coefficient of name**power, as a polynomial in the remaining variables."""
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i] == power:
                e2 = list(e)
                e2[i] = 0
                t[tuple(e2)] = c
        return Poly(self.vars, t)

    def __repr__(self):
        if not self.terms:
            return "Poly(0)"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k
            )
            bits.append(f"({c}){'*' + mono if mono else ''}")
        return "Poly(" + " + ".join(bits) + ")"

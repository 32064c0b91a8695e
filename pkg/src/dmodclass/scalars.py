"""Ground-field scalars.

Two scalar modes coexist in the library:

* exact mode -- ``GaussianRational``, a pair of rationals a + b*i with
  arithmetic that never leaves the field Q(i);
* approx mode -- plain Python ``complex``, compared against a
  ``ToleranceConfig``.

Exact mode is the default for classification verdicts; the approx mode
exists for root extraction and numeric verification.  Operations that
produce verdicts refuse to mix the two.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from numbers import Rational

from gmpy2 import mpq

from .errors import InputError, ModeMismatch

__all__ = [
    "GaussianRational",
    "ToleranceConfig",
    "QQ",
    "gr",
    "approx_eq",
    "scalar_mode",
    "encode_scalar",
    "parse_scalar",
]


def QQ(x) -> mpq:
    """Coerce an int, string or rational to an exact rational."""
    return mpq(x)


class GaussianRational:
    """An element a + b*i of Q(i), with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    # -- coercion ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)) or type(x) is mpq:
            return GaussianRational(x)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # -- conversions ------------------------------------------------------

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def sort_key(self):
        """Key for the canonical total order on Q(i): (Re, Im) lexicographic."""
        return (self.re, self.im)

    def __repr__(self):
        return f"gr({self.re!s}, {self.im!s})" if self.im else f"gr({self.re!s})"

    def __str__(self):
        return encode_scalar(self)


def gr(re=0, im=0) -> GaussianRational:
    """Shorthand constructor for an exact scalar."""
    return GaussianRational(re, im)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances and seeding for approx-mode and randomized operations."""

    eps: float = 1e-9
    cluster_eps: float = 1e-7
    rng_seed: int = 0
    pit_trials: int = 20

    def __post_init__(self):
        if not (0 < self.eps <= self.cluster_eps < 1):
            raise InputError("need 0 < eps <= cluster_eps < 1")
        if self.pit_trials < 1:
            raise InputError("pit_trials must be positive")


DEFAULT_TOLERANCE = ToleranceConfig()


def approx_eq(a: complex, b: complex, eps: float = 1e-9) -> bool:
    """|a - b| <= eps * max(1, |a|, |b|)."""
    return abs(a - b) <= eps * max(1.0, abs(a), abs(b))


def scalar_mode(x) -> str:
    if isinstance(x, GaussianRational):
        return "exact"
    if isinstance(x, (complex, float)):
        return "approx"
    raise ModeMismatch(f"not a scalar: {x!r}")


# -- text encoding --------------------------------------------------------
#
# Exact scalars encode as "a/b" or "a/b+c/di" / "a/b-c/di" (b, d > 0,
# gcd-reduced, no spaces); approx scalars as a two-element [re, im] array.

_EXACT_RE = _re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?P<im>[+-]\d+(?:/\d+)?|[+-]?\d+(?:/\d+)?(?=i$))?(?P<i>i)?$"
)


def encode_scalar(x) -> "str | list[float]":
    if isinstance(x, GaussianRational):
        re_part = f"{x.re.numerator}/{x.re.denominator}"
        if x.im == 0:
            return re_part
        sign = "+" if x.im > 0 else "-"
        imq = abs(x.im)
        return f"{re_part}{sign}{imq.numerator}/{imq.denominator}i"
    c = complex(x)
    return [c.real, c.imag]


def parse_scalar(v) -> "GaussianRational | complex":
    if isinstance(v, str):
        return _parse_exact(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)):
        # bare JSON number: integer -> exact, float -> approx
        if isinstance(v, int):
            return GaussianRational(v)
        return complex(v)
    raise InputError(f"cannot parse scalar: {v!r}")


def _parse_exact(s: str) -> GaussianRational:
    t = s.strip().replace(" ", "")
    if not t:
        raise InputError("empty scalar string")
    if not t.endswith("i"):
        try:
            return GaussianRational(mpq(t.lstrip("+")))
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad scalar {s!r}") from e
    body = t[:-1]
    # split the imaginary coefficient off at the last top-level +/-
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            re_s, im_s = body[:k], body[k:]
            break
    else:
        re_s, im_s = "0", body
    if im_s in ("", "+"):
        im_s = "1"
    elif im_s == "-":
        im_s = "-1"
    try:
        return GaussianRational(mpq(re_s.lstrip("+")), mpq(im_s.lstrip("+")))
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad scalar {s!r}") from e

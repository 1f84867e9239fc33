"""Quaternion rings (a, b / Z/nZ) and their arithmetic.

Basis {1, i, j, k} with i^2 = a, j^2 = b, ij = -ji = k. The remaining
products follow from associativity:

    ik = i(ij) = a j            ki = -(ji)i = -a j
    jk = j(ij) = -(ij)j = -b i  kj = (ij)j = b i
    k^2 = i(ji)j = -i(ij)j = -ab

which gives the 16-term product used by :func:`multiply`. Associativity is
pinned by the property tests rather than assumed.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence

from .errors import BudgetExceeded, NotAUnit
from .modint import Modulus, factorize, inv_mod

DEFAULT_ENUM_BUDGET = 16**4


def enumeration_budget(default: int = DEFAULT_ENUM_BUDGET) -> int:
    """Element-count budget, overridable through QUATRING_BUDGET."""
    env = os.environ.get("QUATRING_BUDGET")
    return int(env) if env else default


@dataclass(frozen=True)
class RingParams:
    """Names the ring (a, b / Z/nZ); a and b must be units mod n."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)
        for v in (self.a, self.b):
            g = gcd(v, self.n)
            if g != 1:
                raise NotAUnit(v, self.n, g)

    @cached_property
    def modulus(self) -> Modulus:
        return factorize(self.n)

    def __call__(self, x0=0, x1=0, x2=0, x3=0) -> "Quaternion":
        return Quaternion(self, (x0, x1, x2, x3))

    def scalar(self, c: int) -> "Quaternion":
        return Quaternion(self, (c, 0, 0, 0))

    @property
    def one(self):
        return self(1)

    @property
    def zero(self):
        return self()

    @property
    def i(self):
        return self(0, 1)

    @property
    def j(self):
        return self(0, 0, 1)

    @property
    def k(self):
        return self(0, 0, 0, 1)

    def reduce(self, m: int) -> "RingParams":
        """The same presentation over Z/m, for m dividing n."""
        if self.n % m:
            raise ValueError(f"{m} does not divide {self.n}")
        return RingParams(m, self.a, self.b)

    def __str__(self):
        return f"({self.a},{self.b} / Z/{self.n})"


def hamilton(n: int) -> RingParams:
    return RingParams(n, -1, -1)


def ell(n: int) -> RingParams:
    return RingParams(n, 1, 1)


@dataclass(frozen=True)
class Quaternion:
    params: RingParams
    coeffs: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise ValueError("a quaternion has exactly four coefficients")
        n = self.params.n
        object.__setattr__(self, "coeffs", tuple(int(c) % n for c in self.coeffs))

    def _same_ring(self, other: "Quaternion"):
        if self.params != other.params:
            raise ValueError(f"cannot combine elements of {self.params} and {other.params}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.params.scalar(other)
        self._same_ring(other)
        return Quaternion(self.params, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.params, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Quaternion(self.params, tuple(other * x for x in self.coeffs))
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return Quaternion(self.params, tuple(other * x for x in self.coeffs))
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            return try_inverse(self) ** (-e)
        result = self.params.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, idx):
        return self.coeffs[idx]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def conjugate(self):
        return conjugate(self)

    def norm(self) -> int:
        return norm(self)

    def trace(self) -> int:
        return trace(self)

    def __str__(self):
        return format_element(self)

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def multiply(z: Quaternion, w: Quaternion) -> Quaternion:
    z._same_ring(w)
    p = z.params
    a, b = p.a, p.b
    x0, x1, x2, x3 = z.coeffs
    y0, y1, y2, y3 = w.coeffs
    return Quaternion(p, (
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ))


def conjugate(z: Quaternion) -> Quaternion:
    x0, x1, x2, x3 = z.coeffs
    return Quaternion(z.params, (x0, -x1, -x2, -x3))


def norm(z: Quaternion) -> int:
    """Scalar part of z * conj(z): x0^2 - a x1^2 - b x2^2 + ab x3^2.

    The x3 term carries +ab because k^2 = -ab.
    """
    p = z.params
    x0, x1, x2, x3 = z.coeffs
    return (x0 * x0 - p.a * x1 * x1 - p.b * x2 * x2 + p.a * p.b * x3 * x3) % p.n


def trace(z: Quaternion) -> int:
    return 2 * z.coeffs[0] % z.params.n


def is_unit(z: Quaternion) -> bool:
    return gcd(norm(z), z.params.n) == 1


def try_inverse(z: Quaternion) -> Quaternion:
    """Two-sided inverse conj(z) / n(z); raises NotAUnit when n(z) is not a unit."""
    nz = norm(z)
    g = gcd(nz, z.params.n)
    if g != 1:
        raise NotAUnit(str(z), z.params.n, g)
    return conjugate(z) * inv_mod(nz, z.params.n)


def element_count(params: RingParams) -> int:
    return params.n**4


def enumerate_elements(params: RingParams, budget: int | None = None) -> Iterator[Quaternion]:
    """All n^4 elements, lexicographic in (x0, x1, x2, x3)."""
    budget = enumeration_budget() if budget is None else budget
    required = element_count(params)
    if required > budget:
        raise BudgetExceeded(required, budget)
    for coeffs in itertools.product(range(params.n), repeat=4):
        yield Quaternion(params, coeffs)


# Text format: "x0 + x1*i + x2*j + x3*k", canonical coefficients.

def format_element(z: Quaternion) -> str:
    x0, x1, x2, x3 = z.coeffs
    return f"{x0} + {x1}*i + {x2}*j + {x3}*k"


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*\*?\s*([ijk]?)\s*")


def parse_element(text: str, params: RingParams) -> Quaternion:
    """Parse sums of terms like ``3``, ``-2*i``, ``j``, ``4k``."""
    coeffs = [0, 0, 0, 0]
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty element")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse element {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        value = int(m.group(2)) if m.group(2) else 1
        coeffs[" ijk".index(m.group(3) or " ")] += sign * value
        pos = m.end()
    return Quaternion(params, tuple(coeffs))


def from_json(data: Sequence[int], params: RingParams) -> Quaternion:
    if len(data) != 4:
        raise ValueError("expected four coefficients")
    return Quaternion(params, tuple(int(x) for x in data))

"""Arithmetic in Z/nZ: inverses, factorization and CRT splitting."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import NotAUnit

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """A modulus n >= 2 together with its prime-power factorization."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"modulus must be >= 2, got {self.n}")
        if prod(p**s for p, s in self.factors) != self.n:
            raise ValueError(f"factorization {self.factors} does not multiply to {self.n}")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        for p, s in self.factors:
            if s < 1 or not is_prime(p):
                raise ValueError(f"bad factor {p}^{s}")

    @property
    def prime_powers(self) -> list[int]:
        return [p**s for p, s in self.factors]

    @property
    def is_odd(self) -> bool:
        return self.n % 2 == 1

    def two_adic_exponent(self) -> int:
        """Exponent of 2 in n (0 for odd n)."""
        for p, s in self.factors:
            if p == 2:
                return s
        return 0


def factorize(n: int) -> Modulus:
    """Trial-division factorization of ``n`` (n >= 2)."""
    if n < 2:
        raise ValueError(f"cannot factor n={n}; the zero ring is not supported")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            s = 0
            while m % p == 0:
                m //= p
                s += 1
            factors.append((p, s))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return Modulus(n, tuple(factors))


def inv_mod(x: int, n: int) -> int:
    """Inverse of ``x`` modulo ``n``; raises NotAUnit for non-units."""
    g = gcd(x, n)
    if g != 1:
        raise NotAUnit(x % n, n, g)
    return pow(x, -1, n)


def is_unit(x: int, n: int) -> bool:
    return gcd(x, n) == 1


def units(n: int) -> list[int]:
    """Canonical representatives of the unit group of Z/n."""
    return [x for x in range(n) if gcd(x, n) == 1]


@dataclass(frozen=True)
class Residue:
    """An element of Z/nZ stored as its canonical representative."""

    value: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "value", self.value % self.n)

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.n != self.n:
                raise ValueError(f"residues mod {self.n} and mod {other.n} do not mix")
            return other.value
        return other

    def __add__(self, other):
        return Residue(self.value + self._coerce(other), self.n)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.value - self._coerce(other), self.n)

    def __rsub__(self, other):
        return Residue(self._coerce(other) - self.value, self.n)

    def __mul__(self, other):
        return Residue(self.value * self._coerce(other), self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.n)

    def __pow__(self, e: int):
        if e < 0:
            return inverse(self) ** (-e)
        return Residue(pow(self.value, e, self.n), self.n)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.n == other.n and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.n == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.n))

    def is_unit(self) -> bool:
        return gcd(self.value, self.n) == 1

    def inverse(self) -> "Residue":
        return inverse(self)


def inverse(x: Residue) -> Residue:
    return Residue(inv_mod(x.value, x.n), x.n)


def crt_combine(parts: Sequence[Residue], modulus: Modulus | None = None) -> Residue:
    """Recombine residues modulo pairwise coprime moduli into one residue.

    When ``modulus`` is given, the part moduli must be exactly its prime powers.
    """
    if not parts:
        raise ValueError("need at least one part")
    moduli = [r.n for r in parts]
    for i, m in enumerate(moduli):
        for m2 in moduli[i + 1:]:
            if gcd(m, m2) != 1:
                raise ValueError(f"moduli {m} and {m2} are not coprime")
    if modulus is not None and sorted(moduli) != sorted(modulus.prime_powers):
        raise ValueError(f"parts {moduli} do not match factorization of {modulus.n}")
    n = prod(moduli)
    x = 0
    for r in parts:
        rest = n // r.n
        x += r.value * rest * pow(rest, -1, r.n)
    return Residue(x, n)


def crt_split(x: int, modulus: Modulus) -> list[Residue]:
    """Images of ``x`` in each prime-power component of Z/n."""
    return [Residue(x, q) for q in modulus.prime_powers]


def normalize(values: Iterable[int], n: int) -> tuple[int, ...]:
    return tuple(v % n for v in values)

"""Matrix models for quaternion rings and small linear algebra mod n.

Gaussian residues Z/n[i]/(i^2 + 1), 2x2 matrices over them and over Z/n,
the embeddings of H = (-1,-1) and L = (1,1) into 2x2 Gaussian matrices,
and 4x4 determinants/inverses mod n for certifying bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Sequence

from .errors import NotAUnit
from .modint import inv_mod
from .quat import Quaternion, RingParams


@dataclass(frozen=True)
class GaussRes:
    """re + im*i over Z/n with i^2 = -1."""

    re: int
    im: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "re", self.re % self.n)
        object.__setattr__(self, "im", self.im % self.n)

    def _lift(self, other) -> "GaussRes":
        if isinstance(other, int):
            return GaussRes(other, 0, self.n)
        if other.n != self.n:
            raise ValueError("moduli differ")
        return other

    def __add__(self, other):
        other = self._lift(other)
        return GaussRes(self.re + other.re, self.im + other.im, self.n)

    __radd__ = __add__

    def __neg__(self):
        return GaussRes(-self.re, -self.im, self.n)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        return GaussRes(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.n,
        )

    __rmul__ = __mul__

    def conj(self) -> "GaussRes":
        return GaussRes(self.re, -self.im, self.n)

    def to_json(self) -> list[int]:
        return [self.re, self.im]


class _Mat2:
    """Shared 2x2 matrix arithmetic; subclasses fix the entry type."""

    def __init__(self, entries, n: int):
        (p, q), (r, s) = entries
        self.n = n
        self.entries = ((self._entry(p), self._entry(q)), (self._entry(r), self._entry(s)))

    def _entry(self, x):
        raise NotImplementedError

    def __getitem__(self, idx):
        r, c = idx
        return self.entries[r][c]

    def _check(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise ValueError("incompatible matrices")

    def __add__(self, other):
        self._check(other)
        e, f = self.entries, other.entries
        return type(self)([[e[r][c] + f[r][c] for c in range(2)] for r in range(2)], self.n)

    def __neg__(self):
        return type(self)([[-x for x in row] for row in self.entries], self.n)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)([[x * other for x in row] for row in self.entries], self.n)
        self._check(other)
        e, f = self.entries, other.entries
        return type(self)(
            [[e[r][0] * f[0][c] + e[r][1] * f[1][c] for c in range(2)] for r in range(2)],
            self.n,
        )

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return type(other) is type(self) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((type(self).__name__, self.entries, self.n))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_json()}, n={self.n})"

    @classmethod
    def identity(cls, n: int):
        return cls([[1, 0], [0, 1]], n)

    @classmethod
    def zero(cls, n: int):
        return cls([[0, 0], [0, 0]], n)


class Mat2Z(_Mat2):
    """2x2 matrix over Z/n."""

    def _entry(self, x):
        return int(x) % self.n

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def flat(self) -> list[int]:
        return [*self.entries[0], *self.entries[1]]


class Mat2G(_Mat2):
    """2x2 matrix over the Gaussian residues Z/n[i]."""

    def _entry(self, x):
        if isinstance(x, GaussRes):
            if x.n != self.n:
                raise ValueError("moduli differ")
            return x
        if isinstance(x, int):
            return GaussRes(x, 0, self.n)
        re, im = x
        return GaussRes(re, im, self.n)

    def to_json(self) -> list[list[list[int]]]:
        return [[x.to_json() for x in row] for row in self.entries]


def _require(z: Quaternion, a: int, b: int, name: str):
    p = z.params
    if p.a != a % p.n or p.b != b % p.n:
        raise ValueError(f"{name} needs ({a},{b}) parameters, got {p}")


def embed_H(z: Quaternion) -> Mat2G:
    """x0 + x1 i + x2 j + x3 k  ->  [[x0 - x1 I, -x2 + x3 I], [x2 + x3 I, x0 + x1 I]]."""
    _require(z, -1, -1, "embed_H")
    n = z.params.n
    x0, x1, x2, x3 = z.coeffs
    return Mat2G([[(x0, -x1), (-x2, x3)], [(x2, x3), (x0, x1)]], n)


def embed_L(z: Quaternion) -> Mat2G:
    """Homomorphism (1,1 / Z/n) -> {[[u, w], [conj w, conj u]]}.

    The block entries split as u = x0 - x3 I and w = x1 + x2 I: the
    off-diagonal generators [[0,1],[1,0]] and [[0,I],[-I,0]] both square to
    the identity and carry i and j, while their product diag(-I, I) is k.
    """
    _require(z, 1, 1, "embed_L")
    n = z.params.n
    x0, x1, x2, x3 = z.coeffs
    return Mat2G([[(x0, -x3), (x1, x2)], [(x1, -x2), (x0, x3)]], n)


def unembed_H(m: Mat2G) -> Quaternion:
    (p, q), (r, s) = m.entries
    if r != -q.conj() or s != p.conj():
        raise ValueError("matrix is not in the image of embed_H")
    return RingParams(m.n, -1, -1)(p.re, -p.im, r.re, r.im)


def unembed_L(m: Mat2G) -> Quaternion:
    (p, q), (r, s) = m.entries
    if r != q.conj() or s != p.conj():
        raise ValueError("matrix is not in the image of embed_L")
    return RingParams(m.n, 1, 1)(p.re, q.re, q.im, -p.im)


# 4x4 matrices are plain nested lists of ints; the modulus travels alongside.

def basis_matrix(g0: Quaternion, g1: Quaternion, g2: Quaternion, g3: Quaternion) -> list[list[int]]:
    """4x4 matrix whose columns are the coefficient vectors of g0..g3."""
    params = g0.params
    for g in (g1, g2, g3):
        if g.params != params:
            raise ValueError("basis elements live in different rings")
    cols = [g.coeffs for g in (g0, g1, g2, g3)]
    return [[cols[c][r] for c in range(4)] for r in range(4)]


def matrix_basis_matrix(mats: Sequence[Mat2Z]) -> list[list[int]]:
    """Same as :func:`basis_matrix` for four 2x2 matrices, in entry coordinates."""
    cols = [m.flat() for m in mats]
    return [[cols[c][r] for c in range(4)] for r in range(4)]


def _perm_sign(perm) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def det_mod(M: Sequence[Sequence[int]], n: int) -> int:
    """Exact determinant mod n by permutation expansion (no division)."""
    size = len(M)
    total = 0
    for perm in permutations(range(size)):
        term = _perm_sign(perm)
        for r in range(size):
            term *= M[r][perm[r]]
        total += term
    return total % n


def is_invertible_mod_n(M: Sequence[Sequence[int]], n: int) -> bool:
    return gcd(det_mod(M, n), n) == 1


def inverse_mod_n(M: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Adjugate inverse of a square matrix over Z/n."""
    size = len(M)
    d = det_mod(M, n)
    if gcd(d, n) != 1:
        raise NotAUnit(d, n, gcd(d, n))
    dinv = inv_mod(d, n)
    inv = [[0] * size for _ in range(size)]
    for r in range(size):
        for c in range(size):
            minor = [[M[i][j] for j in range(size) if j != c] for i in range(size) if i != r]
            cof = (-1) ** (r + c) * det_mod(minor, n) if size > 1 else 1
            inv[c][r] = cof * dinv % n
    return inv


def mat_vec(M: Sequence[Sequence[int]], v: Sequence[int], n: int) -> list[int]:
    return [sum(M[r][c] * v[c] for c in range(len(v))) % n for r in range(len(M))]

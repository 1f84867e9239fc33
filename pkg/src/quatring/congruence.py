"""Quadratic congruence solvers.

Covers the odd prime-power case by two-variable Hensel lifting and the
2-adic special cases (scalar square scaling, sums of two squares) that the
isomorphism constructions need.

Determinism: whenever several solutions exist the solvers make a fixed
choice, so witnesses built from them are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NonSmoothPoint, NoSolution
from .modint import inv_mod, is_prime


@dataclass(frozen=True)
class BivariateQuadratic:
    """f(x, y) = A x^2 + B y^2 + C xy + D x + E y + F with integer coefficients."""

    A: int = 0
    B: int = 0
    C: int = 0
    D: int = 0
    E: int = 0
    F: int = 0

    def __call__(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * y * y + self.C * x * y + self.D * x + self.E * y + self.F

    def dx(self, x: int, y: int) -> int:
        return 2 * self.A * x + self.C * y + self.D

    def dy(self, x: int, y: int) -> int:
        return 2 * self.B * y + self.C * x + self.E

    @classmethod
    def binary_form(cls, a: int, b: int, c: int) -> "BivariateQuadratic":
        """The polynomial a x^2 + b y^2 - c."""
        return cls(A=a, B=b, F=-c)


_inv = lru_cache(maxsize=4096)(inv_mod)


def lift_step(f: BivariateQuadratic, p: int, j: int, point: tuple[int, int]) -> tuple[int, int]:
    """Lift a root of ``f`` mod p^j to a root mod p^(j+1).

    Only first-order Taylor terms survive mod p^(j+1), so the offsets solve
    t1 * f_x + t2 * f_y = -f(point) / p^j (mod p). When f_x is a unit the
    x coordinate moves and t2 = 0; otherwise y moves.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    x, y = point
    pj = p**j
    value = f(x, y)
    if value % pj:
        raise ValueError(f"f{point} = {value} is not 0 mod {p}^{j}")
    q = value // pj
    fx = f.dx(x, y) % p
    if fx:
        return x + (-q * _inv(fx, p)) % p * pj, y
    fy = f.dy(x, y) % p
    if fy:
        return x, y + (-q * _inv(fy, p)) % p * pj
    raise NonSmoothPoint(f"both partials vanish mod {p} at {point}")


def _check_odd_prime(p: int):
    if p == 2:
        raise ValueError("p must be odd")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def solve_binary_form_mod_p(a: int, b: int, c: int, p: int) -> tuple[int, int]:
    """A solution of a x^2 + b y^2 = c (mod p) for an odd prime p.

    Meet in the middle: tabulate c - a x^2 (smallest x per value), then probe
    b y^2 for y = 0, 1, ...; the first hit wins, so the answer minimizes y
    and then x.
    """
    _check_odd_prime(p)
    if a % p == 0 or b % p == 0:
        raise ValueError(f"a and b must be coprime to {p}")
    table: dict[int, int] = {}
    for x in range(p):
        table.setdefault((c - a * x * x) % p, x)
    for y in range(p):
        x = table.get(b * y * y % p)
        if x is not None:
            return x, y
    raise NoSolution(f"{a}x^2 + {b}y^2 = {c} has no solution mod {p}")


def solve_binary_form_odd(a: int, b: int, c: int, p: int, s: int) -> tuple[int, int]:
    """A solution of a x^2 + b y^2 = c (mod p^s), p odd, a, b, c coprime to p."""
    _check_odd_prime(p)
    if s < 1:
        raise ValueError("s must be >= 1")
    if c % p == 0:
        raise ValueError(f"c must be coprime to {p}")
    f = BivariateQuadratic.binary_form(a, b, c)
    point = solve_binary_form_mod_p(a, b, c, p)
    # c is a unit, so x0 and y0 are not both divisible by p: f is smooth there.
    for j in range(1, s):
        point = lift_step(f, p, j, point)
    q = p**s
    return point[0] % q, point[1] % q


def solve_scalar_square_2adic(a: int, b: int, s: int) -> int:
    """Smallest x in [0, 2^s) with a x^2 = b (mod 2^s), for odd a = b (mod 8)."""
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError("a and b must be odd")
    if s < 1:
        raise ValueError("s must be >= 1")
    if (a - b) % 8:
        raise NoSolution(f"{a} and {b} differ mod 8")
    q = 1 << s
    if s <= 2:
        return next(x for x in range(q) if (a * x * x - b) % q == 0)
    r = b * pow(a, -1, q) % q  # r = 1 (mod 8)
    x = 1
    for t in range(3, s):
        # x^2 = r mod 2^t; one of x, x + 2^(t-1) works mod 2^(t+1)
        if (x * x - r) % (1 << (t + 1)):
            x += 1 << (t - 1)
    half = q >> 1
    return min(x % q, -x % q, (x + half) % q, (half - x) % q)


def solve_sum_two_squares_2adic(c: int, s: int) -> tuple[int, int]:
    """A solution of x^2 + y^2 = c (mod 2^s) for odd c, with x odd.

    All solutions are carried breadth-first: seeded exhaustively mod 8 and
    extended one bit at a time, each coordinate by 0 or 2^t. Among the
    final solutions the lexicographically smallest with odd x is returned.
    """
    if c % 2 == 0:
        raise ValueError("c must be odd")
    if s < 1:
        raise ValueError("s must be >= 1")
    t = min(s, 3)
    m = 1 << t
    frontier = [(x, y) for x in range(m) for y in range(m) if (x * x + y * y - c) % m == 0]
    while t < s and frontier:
        step, m = 1 << t, 1 << (t + 1)
        frontier = [
            (x + ex, y + ey)
            for x, y in frontier
            for ex in (0, step)
            for ey in (0, step)
            if ((x + ex) ** 2 + (y + ey) ** 2 - c) % m == 0
        ]
        t += 1
    odd = [pt for pt in frontier if pt[0] % 2]
    if not odd:
        raise NoSolution(f"x^2 + y^2 = {c} has no solution mod 2^{s}")
    return min(odd)


def inverse_of_five(s: int) -> int:
    """The inverse of 5 modulo 2^s."""
    return pow(5, -1, 1 << s)

"""Isomorphism classes of (a, b / Z/nZ) and checkable witnesses.

Every ring (a, b / Z/n) with a, b units is isomorphic to H = (-1,-1) when
a = b = -1 (mod 4) and to L = (1,1) otherwise; over odd n both are the
matrix ring M2(Z/n). A witness records, for each prime-power factor of n,
the images of the generators i and j in the canonical target. Since Z/n
splits into its prime-power components, verifying every component
verifies the whole ring map.

Maps between quaternion rings are :class:`Step` objects. A step from
(a, b) into (a', b') is fixed by the images I, J of i, j; it is a ring
isomorphism exactly when I^2 = a, J^2 = b, IJ = -JI and {1, I, J, IJ} is
a basis, which is what :meth:`Step.check` tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .congruence import solve_binary_form_odd, solve_scalar_square_2adic
from .matrep import (
    Mat2G,
    Mat2Z,
    basis_matrix,
    inverse_mod_n,
    is_invertible_mod_n,
    mat_vec,
    matrix_basis_matrix,
    unembed_L,
)
from .modint import factorize, inv_mod, is_unit
from .quat import Quaternion, RingParams, from_json

HAMILTON = "HAMILTON"
ELL = "ELL"


@dataclass(frozen=True)
class CanonicalClass:
    tag: str
    split: bool
    collapse: bool

    def to_json(self) -> dict:
        return {"tag": self.tag, "split": self.split, "collapse": self.collapse}


def hamilton_condition(a: int, b: int) -> bool:
    return a % 4 == 3 and b % 4 == 3


def classify(n: int, a: int, b: int) -> CanonicalClass:
    """Canonical class of (a, b / Z/n).

    The mod-4 test reads the integers as given. It is well defined on
    residues only when 4 | n; otherwise both tags name isomorphic rings
    and ``collapse`` is set.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    for name, v in (("a", a), ("b", b)):
        if not is_unit(v, n):
            raise ValueError(f"{name}={v} is not a unit mod {n}")
    tag = HAMILTON if hamilton_condition(a, b) else ELL
    return CanonicalClass(tag=tag, split=n % 2 == 1, collapse=n % 4 != 0)


@dataclass
class Report:
    """Outcome of a witness check; falsy when any relation fails."""

    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def extend(self, prefix: str, other: "Report"):
        self.failures.extend(f"{prefix}: {f}" for f in other.failures)


def _relations(one, I, J, a, b, basis_ok) -> Report:
    report = Report()
    if I * I != one * a:
        report.failures.append("phi(i)^2 != a")
    if J * J != one * b:
        report.failures.append("phi(j)^2 != b")
    if not (I * J + J * I) == one * 0:
        report.failures.append("phi(i)phi(j) != -phi(j)phi(i)")
    if not basis_ok:
        report.failures.append("{1, phi(i), phi(j), phi(i)phi(j)} is not a basis")
    return report


@dataclass(frozen=True)
class Step:
    """A ring map (source) -> (target) given by the images of i and j."""

    source: RingParams
    target: RingParams
    phi_i: Quaternion
    phi_j: Quaternion
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise ValueError("source and target must share the base ring")
        if self.phi_i.params != self.target or self.phi_j.params != self.target:
            raise ValueError("images must live in the target ring")

    def images(self) -> list[Quaternion]:
        """Images of 1, i, j, k."""
        return [self.target.one, self.phi_i, self.phi_j, self.phi_i * self.phi_j]

    def matrix(self) -> list[list[int]]:
        return basis_matrix(*self.images())

    def __call__(self, z: Quaternion) -> Quaternion:
        if z.params != self.source:
            raise ValueError(f"{z} is not in {self.source}")
        out = self.target.zero
        for c, img in zip(z.coeffs, self.images()):
            out = out + img * c
        return out

    def then(self, other: "Step") -> "Step":
        """Composite map: self first, then ``other``."""
        if other.source != self.target:
            raise ValueError(f"cannot compose: {self.target} != {other.source}")
        return Step(self.source, other.target, other(self.phi_i), other(self.phi_j),
                    self.names + other.names)

    def inverse(self, name: str | None = None) -> "Step":
        n = self.source.n
        inv = inverse_mod_n(self.matrix(), n)
        return Step(
            self.target,
            self.source,
            Quaternion(self.source, tuple(mat_vec(inv, [0, 1, 0, 0], n))),
            Quaternion(self.source, tuple(mat_vec(inv, [0, 0, 1, 0], n))),
            (name,) if name else tuple(f"{x}^-1" for x in reversed(self.names)),
        )

    def check(self) -> Report:
        n = self.source.n
        return _relations(self.target.one, self.phi_i, self.phi_j,
                          self.source.a, self.source.b,
                          is_invertible_mod_n(self.matrix(), n))


def identity_step(params: RingParams) -> Step:
    return Step(params, params, params.i, params.j, ("identity",))


def rescale_step(a: int, b: int, a2: int, b2: int, n: int) -> Step:
    """Map (a2, b2) -> (a, b) for a = a2, b = b2 (mod 8), n a power of 2.

    With alpha^2 a2 = a and beta^2 b2 = b, the elements alpha^-1 i and
    beta^-1 j of (a, b) square to a2 and b2.
    """
    s = n.bit_length() - 1
    if n != 1 << s:
        raise ValueError("rescale_step needs a power-of-two modulus")
    alpha = solve_scalar_square_2adic(a2, a, s)
    beta = solve_scalar_square_2adic(b2, b, s)
    dst = RingParams(n, a, b)
    return Step(RingParams(n, a2, b2), dst,
                dst.i * inv_mod(alpha, n), dst.j * inv_mod(beta, n), ("rescale",))


def swap_step(a: int, b: int, n: int) -> Step:
    """Map (-ab, a) -> (a, b): i' -> k, j' -> i, hence k' -> ki = -a j."""
    dst = RingParams(n, a, b)
    return Step(RingParams(n, -a * b, a), dst, dst.k, dst.i, ("swap",))


def exchange_step(a: int, b: int, n: int) -> Step:
    """Map (a, b) -> (b, a): i -> j', j -> i'."""
    dst = RingParams(n, b, a)
    return Step(RingParams(n, a, b), dst, dst.j, dst.i, ("exchange",))


# Exact pairs with theta^2 - eta^2 = beta; eta^2 + theta^2 is odd in each case.
ONE_BETA_PAIRS = {-1: (1, 0), 1: (0, 1), 3: (1, 2), 5: (2, 3)}


def one_beta_matrices(beta: int, n: int) -> tuple[Mat2G, Mat2G]:
    """Gaussian matrices A, B with A^2 = 1, B^2 = beta, AB = -BA inside the L model."""
    if beta not in ONE_BETA_PAIRS:
        raise ValueError(f"beta must be one of {sorted(ONE_BETA_PAIRS)}, got {beta}")
    eta, theta = ONE_BETA_PAIRS[beta]
    A = Mat2G([[0, (0, 1)], [(0, -1), 0]], n)
    B = Mat2G([[(0, eta), theta], [theta, (0, -eta)]], n)
    return A, B


def endpoint_one_beta(beta: int, s: int) -> Step:
    """(1, beta / Z/2^s) -> L for beta in {-1, 1, 3, 5}, read off the L matrix model."""
    n = 1 << s
    A, B = one_beta_matrices(beta, n)
    return Step(RingParams(n, 1, beta), RingParams(n, 1, 1),
                unembed_L(A), unembed_L(B), (f"endpoint_one_beta({beta})",))


def endpoint_minus_one_five(s: int) -> Step:
    """(-1, 5 / Z/2^s) -> (-1, 1): i' -> i, j' -> j + 2k.

    In (-1, 1) both j and k square to 1 and anticommute, so
    (eta j + theta k)^2 = eta^2 + theta^2, which is 5 for (1, 2).
    """
    n = 1 << s
    dst = RingParams(n, -1, 1)
    return Step(RingParams(n, -1, 5), dst, dst.i, dst.j + dst.k * 2,
                ("endpoint_minus_one_five",))


def endpoint_minus_one_three(s: int) -> Step:
    """(-1, 3 / Z/2^s) -> H, through (-1, -5).

    In H, (eta j + theta k)^2 = -(eta^2 + theta^2) = -5 for (1, 2).
    """
    n = 1 << s
    to_minus_five = rescale_step(-1, 3, -1, -5, n).inverse("rescale")
    H = RingParams(n, -1, -1)
    into_h = Step(RingParams(n, -1, -5), H, H.i, H.j + H.k * 2, ("endpoint_minus_one_three",))
    return to_minus_five.then(into_h)


def _rep8(x: int) -> int:
    """Representative of x mod 8 in {-1, 1, 3, 5}."""
    r = x % 8
    return -1 if r == 7 else r


# Routes over (a mod 8, b mod 8) after rescaling to representatives in
# {-1, 1, 3, 5}. "swap" takes (a, b) to (-ab, a) and is followed by a
# rescale back to representatives; "exchange" swaps a and b.
ROUTES: dict[tuple[int, int], tuple[str, ...]] = {
    (1, -1): ("one_beta",),
    (1, 1): ("one_beta",),
    (1, 3): ("one_beta",),
    (1, 5): ("one_beta",),
    (-1, 1): ("exchange", "one_beta"),
    (3, 1): ("exchange", "one_beta"),
    (5, 1): ("exchange", "one_beta"),
    (-1, -1): ("identity",),
    (-1, 3): ("minus_one_three",),
    (3, -1): ("exchange", "minus_one_three"),
    (-1, 5): ("minus_one_five", "exchange", "one_beta"),
    (5, -1): ("exchange", "minus_one_five", "exchange", "one_beta"),
    # ab = 1 (mod 8): (a, b) ~ (-1, a)
    (3, 3): ("swap", "minus_one_three"),
    (5, 5): ("swap", "minus_one_five", "exchange", "one_beta"),
    # ab = -1 (mod 8): (a, b) ~ (1, a)
    (3, 5): ("swap", "one_beta"),
    (5, 3): ("swap", "one_beta"),
}


def _rescale_forward(cur: Step, la: int, lb: int, n: int) -> tuple[Step, int, int]:
    ra, rb = _rep8(la), _rep8(lb)
    if (ra - la) % n or (rb - lb) % n:
        step = rescale_step(la, lb, ra, rb, n).inverse("rescale")
        cur = cur.then(step)
    return cur, ra, rb


def two_power_route(a: int, b: int, s: int) -> Step:
    """Composite isomorphism (a, b / Z/2^s) -> H or L, s >= 2.

    ``a`` and ``b`` are tracked as integer labels so that mod-8 classes
    stay meaningful when 2^s < 8.
    """
    n = 1 << s
    src = RingParams(n, a, b)
    cur = Step(src, src, src.i, src.j)
    cur, la, lb = _rescale_forward(cur, a, b, n)
    for op in ROUTES[(la, lb)]:
        if op == "swap":
            cur = cur.then(swap_step(la, lb, n).inverse("swap"))
            la, lb = -la * lb, la
            cur, la, lb = _rescale_forward(cur, la, lb, n)
        elif op == "exchange":
            cur = cur.then(exchange_step(la, lb, n))
            la, lb = lb, la
        elif op == "one_beta":
            cur = cur.then(endpoint_one_beta(lb, s))
            la, lb = 1, 1
        elif op == "minus_one_five":
            cur = cur.then(endpoint_minus_one_five(s))
            la, lb = -1, 1
        elif op == "minus_one_three":
            cur = cur.then(endpoint_minus_one_three(s))
            la, lb = -1, -1
        elif op == "identity":
            cur = cur.then(identity_step(cur.target))
        else:  # pragma: no cover
            raise AssertionError(op)
    return cur


@dataclass(frozen=True)
class FactorWitness:
    """Generator images for one prime-power component p^s."""

    p: int
    s: int
    target: str  # "H", "L" or "M2"
    source: RingParams
    phi_i: Union[Quaternion, Mat2Z]
    phi_j: Union[Quaternion, Mat2Z]
    steps: tuple[str, ...]

    @property
    def q(self) -> int:
        return self.p**self.s

    def target_ring(self) -> RingParams | None:
        return {"H": RingParams(self.q, -1, -1), "L": RingParams(self.q, 1, 1)}.get(self.target)

    def verify(self) -> Report:
        a, b = self.source.a, self.source.b
        I, J = self.phi_i, self.phi_j
        if self.target == "M2":
            one = Mat2Z.identity(self.q)
            if not (isinstance(I, Mat2Z) and isinstance(J, Mat2Z)):
                return Report(["M2 images must be 2x2 matrices"])
            basis = matrix_basis_matrix([one, I, J, I * J])
        else:
            ring = self.target_ring()
            if ring is None:
                return Report([f"unknown target {self.target!r}"])
            if not (isinstance(I, Quaternion) and I.params == ring and J.params == ring):
                return Report([f"images must be elements of {ring}"])
            one = ring.one
            basis = basis_matrix(one, I, J, I * J)
        return _relations(one, I, J, a, b, is_invertible_mod_n(basis, self.q))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "target": self.target,
            "phi_i": self.phi_i.to_json(),
            "phi_j": self.phi_j.to_json(),
            "steps": list(self.steps),
        }

    @classmethod
    def from_json(cls, data: dict, source: RingParams) -> "FactorWitness":
        p, s, target = int(data["p"]), int(data["s"]), data["target"]
        q = p**s
        src = source.reduce(q)
        if target == "M2":
            I, J = Mat2Z(data["phi_i"], q), Mat2Z(data["phi_j"], q)
        elif target in ("H", "L"):
            ring = RingParams(q, -1, -1) if target == "H" else RingParams(q, 1, 1)
            I, J = from_json(data["phi_i"], ring), from_json(data["phi_j"], ring)
        else:
            raise ValueError(f"unknown target {target!r}")
        return cls(p, s, target, src, I, J, tuple(data.get("steps", ())))


@dataclass(frozen=True)
class IsoWitness:
    source: RingParams
    tag: str
    factors: tuple[FactorWitness, ...]

    def to_json(self) -> dict:
        s = self.source
        return {
            "source": {"n": s.n, "a": s.a, "b": s.b},
            "tag": self.tag,
            "factors": [f.to_json() for f in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IsoWitness":
        src = data["source"]
        source = RingParams(int(src["n"]), int(src["a"]), int(src["b"]))
        factors = tuple(FactorWitness.from_json(f, source) for f in data["factors"])
        return cls(source, data.get("tag", ""), factors)


def witness_odd_prime_power(p: int, s: int, a: int, b: int) -> FactorWitness:
    """(a, b / Z/p^s) -> M2(Z/p^s) via b = u^2 - a v^2.

    A = [[0, a], [1, 0]], B = [[u, -a v], [v, -u]] give A^2 = a, B^2 = b,
    AB = -BA.
    """
    if p == 2:
        raise ValueError("p must be odd")
    q = p**s
    if a % p == 0 or b % p == 0:
        raise ValueError(f"a and b must be units mod {p}")
    u, v = solve_binary_form_odd(1, -a, b, p, s)
    A = Mat2Z([[0, a], [1, 0]], q)
    B = Mat2Z([[u, -a * v], [v, -u]], q)
    return FactorWitness(p, s, "M2", RingParams(q, a, b), A, B, ("split",))


def witness_two_power(s: int, a: int, b: int, tag: str) -> FactorWitness:
    q = 1 << s
    src = RingParams(q, a, b)
    if s == 1:
        # Over Z/2 every presentation is (1, 1) = (-1, -1).
        target = "H" if tag == HAMILTON else "L"
        return FactorWitness(2, 1, target, src, src.i, src.j, ("identity",))
    route = two_power_route(a, b, s)
    target = "H" if route.target == RingParams(q, -1, -1) else "L"
    return FactorWitness(2, s, target, src, route.phi_i, route.phi_j, route.names)


def build_witness(n: int, a: int, b: int) -> IsoWitness:
    cls = classify(n, a, b)
    source = RingParams(n, a, b)
    factors = []
    for p, s in source.modulus.factors:
        if p == 2:
            fw = witness_two_power(s, a, b, cls.tag)
            expected = "H" if cls.tag == HAMILTON else "L"
            if fw.target != expected:  # pragma: no cover
                raise AssertionError(f"route target {fw.target} disagrees with class {cls.tag}")
        else:
            fw = witness_odd_prime_power(p, s, a % p**s, b % p**s)
        factors.append(fw)
    return IsoWitness(source, cls.tag, tuple(factors))


def verify_witness(w: IsoWitness) -> Report:
    report = Report()
    expected = [(p, s) for p, s in factorize(w.source.n).factors]
    got = [(f.p, f.s) for f in w.factors]
    if got != expected:
        report.failures.append(f"factors {got} do not match factorization {expected} of n")
    for f in w.factors:
        if f.source != w.source.reduce(f.q):
            report.failures.append(f"{f.p}^{f.s}: source does not match the witness source")
            continue
        if (f.p == 2) == (f.target == "M2"):
            report.failures.append(f"{f.p}^{f.s}: target {f.target} is not canonical here")
        report.extend(f"{f.p}^{f.s}", f.verify())
    if w.tag and w.tag not in (HAMILTON, ELL):
        report.failures.append(f"unknown tag {w.tag!r}")
    return report

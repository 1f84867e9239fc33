"""Brute-force ground truth at small moduli.

Whole rings are held as (N, 4) integer arrays in lexicographic
coefficient order, so row index order is lexicographic order. The
multiplication here is written out independently of :mod:`quatring.quat`.

A unital ring isomorphism (a, b / Z/n) -> T fixes Z/n, so it sends i and
j to elements I, J of T with I^2 = a, J^2 = b, IJ = -JI and
{1, I, J, IJ} a basis. Conversely such a pair defines a bijective ring
homomorphism. Searching for generator pairs therefore decides isomorphism.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import congruence
from .classify import Step
from .errors import BudgetExceeded, NoSolution
from .modint import is_prime, units
from .quat import Quaternion, RingParams, enumeration_budget

DEFAULT_PAIR_BUDGET = 8**4


def all_elements(n: int) -> np.ndarray:
    grid = np.indices((n, n, n, n)).reshape(4, -1).T
    return np.ascontiguousarray(grid, dtype=np.int64)


def qmul(X: np.ndarray, Y: np.ndarray, a: int, b: int, n: int) -> np.ndarray:
    """Row-wise product in (a, b / Z/n); X and Y broadcast against each other."""
    x0, x1, x2, x3 = (X[..., c] for c in range(4))
    y0, y1, y2, y3 = (Y[..., c] for c in range(4))
    out = np.stack([
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 + b * (x3 * y2 - x2 * y3),
        x0 * y2 + x2 * y0 + a * (x1 * y3 - x3 * y1),
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ], axis=-1)
    return out % n


def qnorm(X: np.ndarray, a: int, b: int, n: int) -> np.ndarray:
    x0, x1, x2, x3 = (X[..., c] for c in range(4))
    return (x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3) % n


def _units_mask(values: np.ndarray, n: int) -> np.ndarray:
    return np.gcd(values, n) == 1


def _check_budget(n: int, budget: int | None, default: int):
    budget = enumeration_budget(default) if budget is None else budget
    if n**4 > budget:
        raise BudgetExceeded(n**4, budget)


@dataclass(frozen=True)
class InvariantFingerprint:
    n: int
    a: int
    b: int
    unit_count: int
    involution_count: int
    square_zero_count: int
    idempotent_count: int
    center_size: int

    def invariants(self) -> tuple[int, ...]:
        """The counts alone, comparable across presentations."""
        return (self.unit_count, self.involution_count, self.square_zero_count,
                self.idempotent_count, self.center_size)

    def to_json(self) -> dict:
        return asdict(self)


def census(params: RingParams, budget: int | None = None) -> InvariantFingerprint:
    n, a, b = params.n, params.a, params.b
    _check_budget(n, budget, 16**4)
    X = all_elements(n)
    sq = qmul(X, X, a, b, n)
    one = np.array([1, 0, 0, 0])
    zero = np.zeros(4, dtype=np.int64)
    i = np.array([0, 1, 0, 0])
    j = np.array([0, 0, 1, 0])
    central = (np.all(qmul(X, i, a, b, n) == qmul(i, X, a, b, n), axis=1)
               & np.all(qmul(X, j, a, b, n) == qmul(j, X, a, b, n), axis=1))
    return InvariantFingerprint(
        n=n, a=a, b=b,
        unit_count=int(_units_mask(qnorm(X, a, b, n), n).sum()),
        involution_count=int(np.all(sq == one, axis=1).sum()),
        square_zero_count=int(np.all(sq == zero, axis=1).sum()),
        idempotent_count=int(np.all(sq == X, axis=1).sum()),
        center_size=int(central.sum()),
    )


def check_local(params: RingParams, budget: int | None = None) -> bool:
    """True iff every z has z or 1 - z a unit (units detected by the norm)."""
    n, a, b = params.n, params.a, params.b
    _check_budget(n, budget, 16**4)
    X = all_elements(n)
    one_minus = (np.array([1, 0, 0, 0]) - X) % n
    ok = _units_mask(qnorm(X, a, b, n), n) | _units_mask(qnorm(one_minus, a, b, n), n)
    return bool(ok.all())


def unit_mask_by_search(params: RingParams) -> np.ndarray:
    """Units found by looking for a two-sided inverse; quadratic in the ring size."""
    n, a, b = params.n, params.a, params.b
    X = all_elements(n)
    one = np.array([1, 0, 0, 0])
    mask = np.zeros(len(X), dtype=bool)
    for idx, z in enumerate(X):
        left = np.all(qmul(z, X, a, b, n) == one, axis=1)
        right = np.all(qmul(X, z, a, b, n) == one, axis=1)
        mask[idx] = bool((left & right).any())
    return mask


def _det3(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    return (u[..., 0] * (v[..., 1] * w[..., 2] - v[..., 2] * w[..., 1])
            - u[..., 1] * (v[..., 0] * w[..., 2] - v[..., 2] * w[..., 0])
            + u[..., 2] * (v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]))


@dataclass(frozen=True)
class Exhausted:
    """No generator pair exists; counts describe the pruned search space."""

    source: RingParams
    target: RingParams
    roots_a: int
    roots_b: int

    def __bool__(self):
        return False


def _first_pair(chunk: np.ndarray, RB: np.ndarray, a: int, b: int, n: int):
    for I in chunk:
        IJ = qmul(I, RB, a, b, n)
        JI = qmul(RB, I, a, b, n)
        anti = np.all((IJ + JI) % n == 0, axis=1)
        if not anti.any():
            continue
        cand, prod = RB[anti], IJ[anti]
        # the first basis column is e0, so the 4x4 determinant equals this 3x3 minor
        det = _det3(I[1:], cand[:, 1:], prod[:, 1:]) % n
        good = np.flatnonzero(np.gcd(det, n) == 1)
        if good.size:
            return I.tolist(), cand[good[0]].tolist()
    return None


@lru_cache(maxsize=None)
def _search(sn: int, sa: int, sb: int, tn: int, ta: int, tb: int, jobs: int):
    X = all_elements(tn)
    sq = qmul(X, X, ta, tb, tn)
    RA = X[np.all(sq == np.array([sa % tn, 0, 0, 0]), axis=1)]
    RB = X[np.all(sq == np.array([sb % tn, 0, 0, 0]), axis=1)]
    if jobs > 1 and len(RA) > jobs:
        chunks = np.array_split(RA, jobs)
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_first_pair, chunks, [RB] * jobs,
                                    [ta] * jobs, [tb] * jobs, [tn] * jobs))
        # chunks are contiguous in lexicographic order: the first hit is the minimum
        hit = next((r for r in results if r is not None), None)
    else:
        hit = _first_pair(RA, RB, ta, tb, tn)
    return hit, len(RA), len(RB)


def find_generator_pair(source: RingParams, target: RingParams, budget: int | None = None,
                        jobs: int = 1):
    """Lexicographically smallest generator pair, as a :class:`Step`, or Exhausted.

    Candidates for I are the square roots of a in the target, candidates
    for J the square roots of b; for each I only J anticommuting with it are
    tested for the basis condition.
    """
    if source.n != target.n:
        raise ValueError("source and target must share the base ring")
    _check_budget(target.n, budget, DEFAULT_PAIR_BUDGET)
    hit, ra, rb = _search(source.n, source.a, source.b, target.n, target.a, target.b, jobs)
    if hit is None:
        return Exhausted(source, target, ra, rb)
    I, J = hit
    return Step(source, target, Quaternion(target, tuple(I)), Quaternion(target, tuple(J)),
                ("search",))


# Solver cross-validation.

@dataclass
class CrosscheckReport:
    kind: str
    records: list[dict] = field(default_factory=list)
    checked: int = 0
    mismatches: int = 0

    def add(self, record: dict, ok: bool, keep: bool = False):
        self.checked += 1
        if not ok:
            self.mismatches += 1
        if keep or not ok:
            self.records.append({**record, "ok": ok})

    def summary(self) -> dict:
        return {"kind": self.kind, "summary": True, "checked": self.checked,
                "mismatches": self.mismatches}

    def json_lines(self) -> Iterator[str]:
        for r in self.records:
            yield json.dumps(r, sort_keys=True)
        yield json.dumps(self.summary(), sort_keys=True)


def _squares(q: int) -> np.ndarray:
    x = np.arange(q, dtype=np.int64)
    return np.unique(x * x % q)


def _solvable_binary(q: int) -> dict[int, np.ndarray]:
    """For each unit r, the boolean table of values x^2 + r y^2 mod q, by enumeration."""
    S = _squares(q)
    table = {}
    for r in units(q):
        hit = np.zeros(q, dtype=bool)
        hit[(S[:, None] + r * S[None, :]) % q] = True
        table[r] = hit
    return table


def crosscheck_binary_form_odd(moduli=((3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2)),
                               full_budget: int = 2_000_000, seed: int = 0,
                               keep_records: bool = False) -> CrosscheckReport:
    """Compare solve_binary_form_odd against enumeration.

    Where phi(q)^3 <= ``full_budget`` every unit triple (a, b, c) is run.
    Above that the unit triples are covered orbit by orbit under the scaling
    (a, b, c) -> (la, lb, lc), which leaves both the solution set and the
    solver's choices unchanged: each orbit has a representative with c = 1,
    and that representative is run together with one random multiple whose
    output must coincide with it.
    """
    rng = np.random.default_rng(seed)
    report = CrosscheckReport("binary_form_odd")
    for p, s in moduli:
        q = p**s
        U = units(q)
        solvable = _solvable_binary(q)
        full = len(U) ** 3 <= full_budget
        mism_before = report.mismatches
        count_before = report.checked
        cs = U if full else [1]
        multipliers = iter(rng.choice(U, size=len(U) ** 2).tolist())
        for a in U:
            ainv = pow(a, -1, q)
            for b in U:
                table = solvable[b * ainv % q]
                for c in cs:
                    expect = bool(table[c * ainv % q])
                    try:
                        x, y = congruence.solve_binary_form_odd(a, b, c, p, s)
                        ok = expect and (a * x * x + b * y * y - c) % q == 0
                        if ok and not full:
                            lam = next(multipliers)
                            ok = congruence.solve_binary_form_odd(
                                lam * a % q, lam * b % q, lam * c % q, p, s) == (x, y)
                    except NoSolution:
                        ok = not expect
                    report.add({"p": p, "s": s, "a": a, "b": b, "c": c}, ok, keep_records)
        report.records.append({
            "p": p, "s": s, "mode": "all" if full else "orbits", "checked": report.checked - count_before,
            "mismatches": report.mismatches - mism_before,
        })
    return report


def crosscheck_scalar_square_2adic(max_s: int = 10, keep_records: bool = False) -> CrosscheckReport:
    """Every odd a, b < 2^s: solutions must verify, and NoSolution must match enumeration.

    For s <= 2 only pairs with a = b (mod 8) are in scope, since the solver
    refuses the rest by contract.
    """
    report = CrosscheckReport("scalar_square_2adic")
    for s in range(1, max_s + 1):
        q = 1 << s
        x = np.arange(q, dtype=np.int64)
        sq = x * x % q
        for a in range(1, q, 2):
            reachable = np.zeros(q, dtype=bool)
            reachable[a * sq % q] = True
            for b in range(1, q, 2):
                if (a - b) % 8 and s <= 2:
                    continue
                expect = bool(reachable[b])
                try:
                    r = congruence.solve_scalar_square_2adic(a, b, s)
                    smallest = int(np.flatnonzero(a * sq % q == b)[0]) if expect else None
                    ok = expect and (a * r * r - b) % q == 0 and r == smallest
                except NoSolution:
                    ok = not expect
                report.add({"s": s, "a": a, "b": b}, ok, keep_records)
    return report


def crosscheck_sum_two_squares_2adic(max_s: int = 12, keep_records: bool = False) -> CrosscheckReport:
    """c = 5^-1 mod 2^s must be solvable for every s; compared to a full scan of pairs."""
    report = CrosscheckReport("sum_two_squares_2adic")
    for s in range(1, max_s + 1):
        q = 1 << s
        c = congruence.inverse_of_five(s)
        x = np.arange(q, dtype=np.int64)
        sq = x * x % q
        hits = (sq[:, None] + sq[None, :]) % q == c
        odd_x = np.argwhere(hits & (x % 2 == 1)[:, None])
        try:
            got = congruence.solve_sum_two_squares_2adic(c, s)
            ok = (bool(hits.any()) and (got[0] ** 2 + got[1] ** 2 - c) % q == 0
                  and tuple(int(v) for v in odd_x[0]) == got)
        except NoSolution:
            ok = False
        report.add({"s": s, "c": c}, ok, True)
    return report


CROSSCHECKS = {
    "binary_form_odd": crosscheck_binary_form_odd,
    "scalar_square_2adic": crosscheck_scalar_square_2adic,
    "sum_two_squares_2adic": crosscheck_sum_two_squares_2adic,
}


def crosscheck_solver(kind: str, **kwargs) -> CrosscheckReport:
    try:
        fn = CROSSCHECKS[kind]
    except KeyError:
        raise ValueError(f"unknown solver {kind!r}; choose from {sorted(CROSSCHECKS)}") from None
    return fn(**kwargs)


def acceptance_moduli(limit: int = 2187, primes=(3, 5, 7)) -> list[tuple[int, int]]:
    """All (p, s) with p^s <= limit for the given odd primes."""
    out = []
    for p in primes:
        assert is_prime(p) and p > 2
        s = 1
        while p**s <= limit:
            out.append((p, s))
            s += 1
    return out

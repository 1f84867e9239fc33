import itertools
import math

import pytest
from hypothesis import given, strategies as st

from quatring.errors import NotAUnit
from quatring.modint import (
    Modulus, Residue, crt_combine, crt_split, factorize, inv_mod, inverse, is_prime,
)


def trial_division(n):
    out, p = [], 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    return out


@pytest.mark.parametrize("n,expected", [
    (12, [(2, 2), (3, 1)]),
    (7, [(7, 1)]),
    (360, [(2, 3), (3, 2), (5, 1)]),
])
def test_factorize_examples(n, expected):
    assert list(factorize(n).factors) == expected


def test_factorize_rejects_small():
    for n in (1, 0, -5):
        with pytest.raises(ValueError):
            factorize(n)


def test_factorize_matches_naive_oracle():
    for n in range(2, 3000):
        assert list(factorize(n).factors) == trial_division(n)


@given(st.integers(min_value=2, max_value=10**6))
def test_factorize_recomposes(n):
    m = factorize(n)
    assert math.prod(p**s for p, s in m.factors) == n
    primes = [p for p, _ in m.factors]
    assert primes == sorted(set(primes))
    assert all(is_prime(p) for p in primes)


def test_is_prime_against_sieve():
    limit = 5000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [is_prime(i) for i in range(limit)] == sieve


def test_modulus_validates():
    with pytest.raises(ValueError):
        Modulus(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        Modulus(12, ((3, 1), (2, 2)))


def test_inverse_examples():
    assert inverse(Residue(5, 8)) == Residue(5, 8)
    assert inverse(Residue(3, 7)) == Residue(5, 7)
    with pytest.raises(NotAUnit) as exc:
        inverse(Residue(4, 8))
    assert exc.value.gcd == 4


def test_residue_normalizes_negatives():
    assert Residue(-1, 7).value == 6
    assert Residue(-1, 7) == 6
    assert (Residue(3, 7) * Residue(5, 7)) == 1


@given(st.integers(min_value=2, max_value=500), st.integers())
def test_inverse_is_involution(n, x):
    r = Residue(x, n)
    if not r.is_unit():
        return
    assert inverse(inverse(r)) == r
    assert r * inverse(r) == 1


@pytest.mark.parametrize("parts,expected", [
    ([Residue(1, 4), Residue(2, 3)], Residue(5, 12)),
    ([Residue(0, 4), Residue(0, 3)], Residue(0, 12)),
    ([Residue(3, 8), Residue(4, 9), Residue(2, 5)], Residue(67, 360)),
])
def test_crt_combine_examples(parts, expected):
    assert crt_combine(parts) == expected


def test_crt_combine_structural_errors():
    with pytest.raises(ValueError):
        crt_combine([Residue(1, 4), Residue(1, 6)])
    with pytest.raises(ValueError):
        crt_combine([Residue(1, 4), Residue(2, 3)], factorize(24))


def test_crt_is_bijection_up_to_1000():
    for n in range(2, 1001):
        m = factorize(n)
        if len(m.factors) == 1:
            continue
        seen = set()
        for combo in itertools.product(*(range(q) for q in m.prime_powers)):
            x = crt_combine([Residue(v, q) for v, q in zip(combo, m.prime_powers)], m)
            assert [r.value for r in crt_split(x.value, m)] == list(combo)
            seen.add(x.value)
        assert len(seen) == n


def test_inv_mod_raises_with_gcd():
    with pytest.raises(NotAUnit) as exc:
        inv_mod(6, 9)
    assert exc.value.gcd == 3

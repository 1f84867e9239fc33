"""Shared hypothesis strategies."""

from math import gcd

from hypothesis import strategies as st

from quatring.quat import RingParams


@st.composite
def ring_params(draw, moduli=(2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 25, 27, 32)):
    n = draw(st.sampled_from(moduli))
    units = [u for u in range(n) if gcd(u, n) == 1]
    return RingParams(n, draw(st.sampled_from(units)), draw(st.sampled_from(units)))


def elements(params, count=1):
    coeff = st.integers(0, params.n - 1)
    elem = st.tuples(coeff, coeff, coeff, coeff).map(lambda c: params(*c))
    return st.tuples(*([elem] * count))

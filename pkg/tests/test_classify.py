import json
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from quatring.classify import (
    ELL, HAMILTON, ROUTES, IsoWitness, Step, build_witness, classify, endpoint_minus_one_five,
    endpoint_minus_one_three, endpoint_one_beta, exchange_step, identity_step, one_beta_matrices,
    rescale_step, swap_step, two_power_route, verify_witness, witness_odd_prime_power,
)
from quatring.matrep import Mat2G, Mat2Z, basis_matrix, is_invertible_mod_n
from quatring.quat import RingParams, enumerate_elements, hamilton

from .strategies import ring_params


def unit_pairs(n):
    units = [u for u in range(n) if gcd(u, n) == 1]
    return [(a, b) for a in units for b in units]


# classify

@pytest.mark.parametrize("n,a,b,tag,split", [
    (15, -1, -1, HAMILTON, True),
    (8, 3, 3, HAMILTON, False),
    (8, 3, 5, ELL, False),
])
def test_classify_examples(n, a, b, tag, split):
    cls = classify(n, a, b)
    assert (cls.tag, cls.split) == (tag, split)


def test_classify_collapse_flag():
    assert classify(15, -1, -1).collapse
    assert classify(6, 1, 1).collapse
    assert not classify(8, 3, 3).collapse
    assert not classify(12, 1, 1).collapse


def test_classify_rejects_non_units():
    with pytest.raises(ValueError):
        classify(8, 2, 3)
    with pytest.raises(ValueError):
        classify(9, 1, 3)


def test_classify_symmetric_in_a_b():
    for n in (8, 12, 15, 16):
        for a, b in unit_pairs(n):
            assert classify(n, a, b) == classify(n, b, a)


# odd prime powers

def test_witness_odd_examples():
    w = witness_odd_prime_power(3, 1, -1, -1)
    assert w.phi_j == Mat2Z([[1, 1], [1, -1]], 3)  # (u, v) = (1, 1)
    assert w.verify()
    w = witness_odd_prime_power(5, 1, 1, 1)
    assert w.phi_i == Mat2Z([[0, 1], [1, 0]], 5)
    assert w.phi_j == Mat2Z([[1, 0], [0, -1]], 5)
    w = witness_odd_prime_power(3, 2, 2, 2)
    u, v = w.phi_j[0, 0], w.phi_j[1, 0]
    assert (u * u - 2 * v * v - 2) % 9 == 0
    assert w.verify()


def test_witness_odd_rejects():
    with pytest.raises(ValueError):
        witness_odd_prime_power(2, 3, 1, 1)
    with pytest.raises(ValueError):
        witness_odd_prime_power(3, 2, 3, 1)


# 2-power steps

def test_rescale_examples():
    for s in (3, 4, 6):
        n = 1 << s
        st_ = rescale_step(11, 13, 3, 5, n)
        assert st_.source == RingParams(n, 3, 5) and st_.target == RingParams(n, 11, 13)
        assert st_.check()
        st_ = rescale_step(3, 5, 3, 5, n)
        assert st_.phi_i == st_.target.i and st_.phi_j == st_.target.j
    # -1 and 7 coincide mod 8 only, so the rescale is trivial there
    st_ = rescale_step(-1, -1, 7, 7, 8)
    assert st_.phi_i == st_.target.i and st_.phi_j == st_.target.j
    assert rescale_step(-1, -1, 7, 7, 64).check()


def test_rescale_needs_power_of_two():
    with pytest.raises(ValueError):
        rescale_step(3, 5, 3, 5, 12)


def test_swap_examples():
    st_ = swap_step(-1, -1, 8)
    assert st_.source == RingParams(8, -1, -1)
    assert st_.check()
    st_ = swap_step(1, 3, 16)
    assert st_.phi_i * st_.phi_i == st_.target.scalar(-3)
    assert st_.check()
    for a in (1, 3, 5, 7):
        for b in (1, 3, 5, 7):
            R = RingParams(8, a, b)
            assert is_invertible_mod_n(basis_matrix(R.one, R.k, R.i, R.j * -a), 8)
            assert swap_step(a, b, 8).check()


def test_exchange_step():
    assert exchange_step(3, 5, 16).check()


@pytest.mark.parametrize("beta,pair", [(1, (0, 1)), (3, (1, 2)), (5, (2, 3)), (-1, (1, 0))])
def test_one_beta_matrices(beta, pair):
    n = 32
    A, B = one_beta_matrices(beta, n)
    eta, theta = pair
    assert theta * theta - eta * eta == beta
    assert A * A == Mat2G.identity(n)
    assert B * B == Mat2G.identity(n) * beta
    assert A * B == -(B * A)
    assert endpoint_one_beta(beta, 5).check()


def test_one_beta_b_matrix_for_one():
    _, B = one_beta_matrices(1, 8)
    assert B == Mat2G([[0, 1], [1, 0]], 8)


def test_endpoint_minus_one_five():
    st_ = endpoint_minus_one_five(4)
    R = st_.target
    assert st_.phi_j == R.j + R.k * 2
    assert st_.phi_j * st_.phi_j == R.scalar(5)
    assert st_.phi_i * st_.phi_j == -(st_.phi_j * st_.phi_i)
    assert st_.check()
    # images of 1, i, j', k' at s = 3 give an odd determinant
    assert endpoint_minus_one_five(3).check()


def test_endpoint_minus_one_three():
    for s in (2, 3, 4, 7):
        st_ = endpoint_minus_one_three(s)
        assert st_.target == hamilton(1 << s)
        assert st_.check()
    assert build_witness(8, -1, 3).factors[0].target == "H"
    assert verify_witness(build_witness(8, -1, 3))


def test_every_route_lands_on_predicted_target():
    for (ra, rb) in ROUTES:
        for s in (2, 3, 5):
            st_ = two_power_route(ra, rb, s)
            assert st_.check(), (ra, rb, s)
            expected = HAMILTON if ra % 4 == 3 and rb % 4 == 3 else ELL
            assert st_.target == (hamilton(1 << s) if expected == HAMILTON else RingParams(1 << s, 1, 1))


def test_step_composition_and_inverse():
    n = 16
    a = exchange_step(3, 5, n)
    b = rescale_step(5, 3, 5, 3, n)
    assert a.then(b).check()
    inv = a.inverse()
    assert inv.check()
    for z in list(enumerate_elements(RingParams(4, 3, 5)))[:50]:
        small = exchange_step(3, 5, 4)
        assert small.inverse()(small(z)) == z
    with pytest.raises(ValueError):
        a.then(a)


def test_step_call_is_ring_homomorphism():
    st_ = two_power_route(5, 5, 3)
    elems = list(enumerate_elements(st_.source))[::37]
    for z in elems:
        for w in elems:
            assert st_(z * w) == st_(z) * st_(w)


def test_identity_witness_on_hamilton_mod_4():
    assert identity_step(hamilton(4)).check()
    w = build_witness(4, -1, -1)
    assert w.factors[0].steps == ("identity",)
    assert verify_witness(w)


# build / verify

def test_build_witness_examples():
    w = build_witness(12, -1, -1)
    assert [(f.p, f.s, f.target) for f in w.factors] == [(2, 2, "H"), (3, 1, "M2")]
    assert verify_witness(w)
    w = build_witness(8, 3, 5)
    assert w.tag == ELL and w.factors[0].target == "L"
    assert w.factors[0].steps[0] == "swap"
    w = build_witness(8, 5, 5)
    assert w.tag == ELL and "endpoint_minus_one_five" in w.factors[0].steps


def test_soundness_all_n_up_to_64():
    for n in range(2, 65):
        for a, b in unit_pairs(n):
            w = build_witness(n, a, b)
            report = verify_witness(w)
            assert report, (n, a, b, report.failures)
            expected = "H" if classify(n, a, b).tag == HAMILTON else "L"
            for f in w.factors:
                assert f.target == ("M2" if f.p != 2 else expected)


def direct_relations(f, a, b):
    """Independent relation check written against raw coefficient lists."""
    q = f["p"] ** f["s"]
    if f["target"] == "M2":
        def mul(x, y):
            return [[sum(x[r][t] * y[t][c] for t in range(2)) % q for c in range(2)] for r in range(2)]
        I, J = f["phi_i"], f["phi_j"]
        scal = lambda c: [[c % q, 0], [0, c % q]]
        IJ, JI = mul(I, J), mul(J, I)
        neg = [[-x % q for x in row] for row in JI]
        cols = [[1, 0, 0, 1], sum(I, []), sum(J, []), sum(IJ, [])]
    else:
        ra = -1 if f["target"] == "H" else 1
        R = RingParams(q, ra, ra)
        I, J = R(*f["phi_i"]), R(*f["phi_j"])
        mul = lambda x, y: x * y
        scal = R.scalar
        IJ, neg = I * J, -(J * I)
        cols = [[1, 0, 0, 0], list(I.coeffs), list(J.coeffs), list(IJ.coeffs)]
    M = [[cols[c][r] for c in range(4)] for r in range(4)]
    return (mul(I, I) == scal(a), mul(J, J) == scal(b), IJ == neg, is_invertible_mod_n(M, q))


def test_corrupted_witness_names_relation():
    data = build_witness(40, 3, 3).to_json()
    two = data["factors"][0]
    assert (two["p"], two["target"]) == (2, "H")
    # H-target: phi(i) has an odd coefficient, flipping its sign mod 8 changes it
    k = next(i for i, c in enumerate(two["phi_i"]) if c % 2)
    two["phi_i"][k] = 0
    report = verify_witness(IsoWitness.from_json(data))
    assert not report
    assert any(f.startswith("2^3: phi(i)^2 != a") for f in report.failures)

    data = build_witness(45, 2, 7).to_json()
    three = data["factors"][0]
    three["phi_j"][0][0] = (-three["phi_j"][0][0] + 1) % 9
    report = verify_witness(IsoWitness.from_json(data))
    assert any(f.startswith("3^2: phi(j)^2 != b") for f in report.failures)


def test_single_coefficient_corruptions_agree_with_direct_check():
    # after any one-coefficient sign flip, the verdict matches an independent check
    for n, a, b in [(8, 3, 5), (16, 5, 5), (9, 2, 5), (45, 2, 7), (32, 3, 3)]:
        base = build_witness(n, a, b).to_json()
        for fi, f in enumerate(base["factors"]):
            for name in ("phi_i", "phi_j"):
                nested = f["target"] == "M2"
                flat = sum(f[name], []) if nested else f[name]
                for k, c in enumerate(flat):
                    data = json.loads(json.dumps(base))
                    g = data["factors"][fi]
                    q = g["p"] ** g["s"]
                    if nested:
                        g[name][k // 2][k % 2] = -c % q
                    else:
                        g[name][k] = -c % q
                    expected = all(direct_relations(g, a % q, b % q))
                    report = verify_witness(IsoWitness.from_json(data))
                    assert bool(report) == expected, (n, a, b, fi, name, k)


def test_verify_reports_structure_errors():
    w = build_witness(12, 1, 1)
    broken = IsoWitness(w.source, w.tag, w.factors[:1])
    assert any("factorization" in f for f in verify_witness(broken).failures)
    data = w.to_json()
    data["factors"][1]["target"] = "H"
    data["factors"][1]["phi_i"] = [0, 1, 0, 0]
    data["factors"][1]["phi_j"] = [0, 0, 1, 0]
    assert any("not canonical" in f for f in verify_witness(IsoWitness.from_json(data)).failures)


@settings(max_examples=60, deadline=None)
@given(ring_params(moduli=(6, 8, 10, 12, 16, 20, 24, 32, 36, 40, 48, 64, 96, 128)))
def test_witness_json_round_trip(R):
    w = build_witness(R.n, R.a, R.b)
    text = json.dumps(w.to_json(), sort_keys=True)
    back = IsoWitness.from_json(json.loads(text))
    assert json.dumps(back.to_json(), sort_keys=True) == text
    assert verify_witness(back)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 400), st.data())
def test_tag_agreement_and_exchange_invariance(n, data):
    units = [u for u in range(n) if gcd(u, n) == 1]
    a = data.draw(st.sampled_from(units))
    b = data.draw(st.sampled_from(units))
    w, w2 = build_witness(n, a, b), build_witness(n, b, a)
    assert w.tag == classify(n, a, b).tag == w2.tag
    assert verify_witness(w) and verify_witness(w2)


def test_step_rejects_mismatched_rings():
    with pytest.raises(ValueError):
        Step(hamilton(4), hamilton(8), hamilton(8).i, hamilton(8).j)

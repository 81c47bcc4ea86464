import itertools
import math
import warnings
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tiltstab import bg3
from tiltstab.chern import ChernVector3, get_geometry, twist3
from tiltstab.exactnum import Scalar

VARIETIES = ["triple", "double"]
fr = st.fractions(min_value=-10, max_value=10, max_denominator=8)
vec3 = st.builds(ChernVector3, fr, fr, fr, fr)


@given(vec3, fr, fr, st.sampled_from(VARIETIES), st.integers(min_value=-3, max_value=3))
def test_q_is_quadratic(v, alpha, beta, geom, k):
    p = bg3.QGammaParams.make(alpha, beta, geom)
    assert bg3.q_gamma(v.scale(k), p) == k * k * bg3.q_gamma(v, p)


@given(vec3, fr, fr, st.sampled_from(VARIETIES))
def test_q_depends_on_beta_through_the_twist(v, alpha, beta, geom):
    # Q at (alpha, beta) equals Q at (alpha - beta^2/2, 0) of the twisted class
    p = bg3.QGammaParams.make(alpha, beta, geom)
    p0 = bg3.QGammaParams.make(alpha - beta * beta / 2, 0, geom)
    assert bg3.q_gamma(v, p) == bg3.q_gamma(twist3(v, beta), p0)


def test_q_on_line_bundles():
    # O(H) twisted at beta = 0 with alpha = 0 on the triple cover
    p = bg3.QGammaParams.make(0, 0, "triple")
    assert bg3.q_gamma(ChernVector3(3, 3, F(3, 2), F(1, 2)), p) == 6


@pytest.mark.parametrize("geom", VARIETIES)
def test_q_vanishes_on_weak_kernel(geom):
    for alpha, beta in ((F(1), F(0)), (F(3, 2), F(1, 3)), (F(7), F(-2))):
        res = bg3.q_kernel_seminegativity(alpha, beta, geom=geom, samples=20)
        assert res.holds
        assert all(x == 0 for row in res.gram for x in row)


def test_flipped_gamma_term_is_detected():
    alpha, beta = F(2), F(1, 2)
    p = bg3.QGammaParams.make(alpha, beta, "triple")
    g = p.gamma_coeff

    def flipped(v):
        r, a, b, c = twist3(v, beta).as_tuple()
        s = 2 * p.alpha - p.beta * p.beta
        return s * (a * a - 2 * r * b + 3 * g * r * r) + 2 * b * (2 * b + 3 * g * r) - 6 * a * (c - g * a)

    res = bg3.q_kernel_seminegativity(alpha, beta, p, form=flipped)
    assert not res.holds
    assert flipped(res.witness) > 0


def test_seminegativity_needs_alpha_above_parabola():
    with pytest.raises(ValueError):
        bg3.q_kernel_seminegativity(F(1, 8), F(1, 2))


@pytest.mark.parametrize("alpha,beta,inside", [
    (F(1, 2), F(0), True), (F(0), F(0), False), (F(1, 4), F(1, 2), False), (F(3, 10), F(1, 2), True),
])
def test_reduction_region(alpha, beta, inside):
    assert bg3.reduction_region(alpha, beta) == inside


@pytest.mark.parametrize("geom,literal", [("triple", F(11, 6)), ("double", F(5, 2))])
def test_literal_delta(geom, literal):
    with pytest.warns(bg3.DeltaDiscrepancyWarning):
        rep = bg3.delta_report(geom)
    assert rep.literal == literal
    assert rep.discrepancy
    assert rep.value == Scalar(get_geometry(geom).delta_stated)


# -- the quadratic chain, re-derived symbolically ------------------------------------

a, b, r = sympy.symbols("a b r")
SUBST = {
    "mu_outside": (1, a),
    "mu_half_3q": (1, 2 * a - 8 * b),
    "mu_3q_1": (5, (7 * a - 4 * b) / 5),
}


def symbolic_chain(geom, case, k=8):
    g = get_geometry(geom)
    d = sympy.Integer(g.d)
    delta = sympy.Rational(g.delta_stated.numerator, g.delta_stated.denominator)
    e = sympy.Rational(g.e.numerator, g.e.denominator)
    gam = delta - e / d
    lower = 4 * b**2 - 16 / d * a * b + 6 * (delta - 2 / d) * a**2 - 6 * gam * r * b - 6 / d * r * a
    scale, rmax = SUBST[case]
    if case == "mu_half_3q":
        rmax = 2 * a - k * b
    poly = sympy.Poly(sympy.expand(scale * lower.subs(r, rmax)), a, b)
    return poly.coeff_monomial(a**2), -poly.coeff_monomial(a * b), poly.coeff_monomial(b**2)


def _q(x):
    return F(int(x.p), int(x.q))


@pytest.mark.parametrize("geom", VARIETIES)
@pytest.mark.parametrize("case", list(SUBST))
def test_chain_coefficients_match_symbolic_substitution(geom, case):
    A, B, C, _ = bg3.chain_coefficients(geom, case)
    assert (A, B, C) == tuple(_q(x) for x in symbolic_chain(geom, case))


@pytest.mark.parametrize("geom", VARIETIES)
def test_derived_constraint_coefficients(geom):
    A, B, C, _ = bg3.chain_coefficients(geom, "mu_half_3q", slope_constraint="derived")
    assert (A, B, C) == tuple(_q(x) for x in symbolic_chain(geom, "mu_half_3q", k=sympy.Rational(8, 3)))


@pytest.mark.parametrize("geom,case2", [("triple", 32), ("double", 48)])
def test_remainder_coefficients(geom, case2):
    def rem(case, **kw):
        A, B, C, _ = bg3.chain_coefficients(geom, case, **kw)
        return 4 * A - 2 * B + C

    assert rem("mu_outside") == 0
    assert rem("mu_3q_1") == 0
    assert rem("mu_half_3q") == case2
    assert rem("mu_half_3q", slope_constraint="derived") >= 0


@st.composite
def constrained(draw, case, slope_constraint="printed"):
    av = draw(st.fractions(min_value=0, max_value=20, max_denominator=6))
    bv = draw(st.fractions(min_value=0, max_value=10, max_denominator=6))
    assume(2 * bv <= av)
    if case == "mu_outside":
        top = av
    elif case == "mu_half_3q":
        top = 2 * av - (8 if slope_constraint == "printed" else F(8, 3)) * bv
    else:
        top = (7 * av - 4 * bv) / 5
    rv = draw(st.fractions(min_value=-10, max_value=20, max_denominator=6))
    assume(rv <= top)
    return ChernVector3(rv, av, bv, 0)


@settings(max_examples=60)
@given(st.data(), st.sampled_from(VARIETIES), st.sampled_from(list(SUBST)))
def test_certificate_holds_on_admissible_vectors(data, geom, case):
    v = data.draw(constrained(case))
    rep = bg3.ch2ch3_certificate(v, geom, case)
    assert rep.holds, rep.checks


@settings(max_examples=40)
@given(st.data(), st.sampled_from(VARIETIES))
def test_certificate_with_derived_constraint(data, geom):
    v = data.draw(constrained("mu_half_3q", "derived"))
    rep = bg3.ch2ch3_certificate(v, geom, "mu_half_3q", slope_constraint="derived")
    assert rep.holds, rep.checks


def test_certificate_nu_zero_and_zero_vector():
    rep = bg3.ch2ch3_certificate(ChernVector3(1, 2, 0, -1), "triple", "nu_zero")
    assert rep.holds
    assert bg3.ch2ch3_certificate(ChernVector3(0, 0, 0, 0), "double", "mu_outside").holds


def test_certificate_rejects_violating_vectors():
    with pytest.raises(ValueError):
        bg3.ch2ch3_certificate(ChernVector3(5, 1, 0, 0), "triple", "mu_outside")
    with pytest.raises(ValueError):
        bg3.ch2ch3_certificate(ChernVector3(0, 1, 1, 0), "triple", "mu_outside")
    with pytest.raises(ValueError):
        bg3.ch2ch3_certificate(ChernVector3(0, 2, 1, 0), "triple", "nu_zero")


# -- weights -------------------------------------------------------------------

def naive_weights(bound):
    out = []
    for w in itertools.combinations_with_replacement(range(1, bound + 1), 5):
        big = [x for x in w if x > 1]
        if any(y % x == 0 for x, y in itertools.permutations(big, 2)):
            continue
        lcm = math.lcm(*w)
        if sum(w) % lcm == 0 and sum(w) // lcm >= 2:
            out.append(w)
    return out


def test_weights_match_naive_search():
    assert [t.weights for t in bg3.enumerate_weight_tuples(18)] == naive_weights(18)


def test_weight_multiplicities():
    assert [t.m for t in bg3.enumerate_weight_tuples(30)] == [5, 3, 2]
    assert bg3.weight_conditions((1, 1, 1, 1, 2)) == (True, 3)
    assert bg3.weight_conditions((1, 1, 2, 2, 2))[0] is False


def test_gamma_registry_matches_delta():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for g in VARIETIES:
            assert bg3.gamma_from_delta(g) == get_geometry(g).gamma

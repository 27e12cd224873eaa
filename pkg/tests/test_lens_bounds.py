import math
import random

import numpy as np
import pytest

from primehull import lens_bounds as lb

# mpmath reference values (computed at 30-40 decimal digits):
# li via mp.li(x, offset=True); crossings via high-precision bisection on
# the exact tangent gap; derivatives via mp.diff of li and sqrt(x) ln x.
LI_REF = {
    10: 5.1204357246698051527,
    88789: 8650.0258675698066473,
    10**6: 78626.503995682064427,
    10**8: 5762208.3302842513501,
    10**12: 37607950279.759701709,
}
LI_BETWEEN_REF = 893.16353920780602493  # integral over [1e6, 1e6 + 12345]

DERIV_REF_1E6 = dict(
    l1=0.072382413650541971,
    l2=-5.2392138058781647e-9,
    l3=5.9976676876795719e-15,
    l4=-1.2918485424982777e-20,
    eps=13815.510557964274,
    eps1=0.0079077552789821371,
    eps2=-3.4538776394910685e-9,
    eps3=4.9308164592366028e-15,
    eps4=-1.1952041148091507e-20,
)

CROSSINGS_REF = {
    10**6: (-998973.64144881458, 32674921.278881009),
    10**8: (-83363303.252643586, 371250312.97242701),
    10**10: (-5182056595.5106093, 9782422926.6110954),
    10**12: (-255877024906.80661, 331773991063.14698),
}
WIDTH_RATIO_REF = {
    10**6: 33.673894920329822,
    10**8: 4.5461361622507059,
    10**10: 1.4964479522121703,
    10**12: 0.58765101596995362,
}

THETA_REF_1E12 = (-0.25738728901422609, 0.33550850843454493)
CONCAVITY_THRESHOLD_REF = 213351.08233004949


def test_li_reference_values():
    for x, ref in LI_REF.items():
        assert lb.li(float(x)) == pytest.approx(ref, rel=1e-12)


def test_li_between():
    assert lb.li_between(1e6, 1e6 + 12345) == pytest.approx(LI_BETWEEN_REF, rel=1e-12)
    # additivity against the anchored integral
    for a, b in [(2.0, 97.0), (10.0, 1e6), (5e5, 2e6)]:
        assert lb.li(a) + lb.li_between(a, b) == pytest.approx(lb.li(b), rel=1e-13)
    assert lb.li_between(50.0, 50.0) == 0.0


def test_li_domain_errors():
    with pytest.raises(ValueError):
        lb.li(1.5)
    with pytest.raises(ValueError):
        lb.li_between(10.0, 5.0)
    with pytest.raises(ValueError):
        lb.li_between(1.0, 5.0)


def test_li_gap_increments_match_li_between():
    rng = random.Random(5)
    lefts, rights = [], []
    x = 2.0
    for _ in range(200):
        x += rng.uniform(0.0, 60.0)
        lefts.append(x)
        rights.append(x + rng.uniform(0.0, 90.0))
        x = rights[-1]
    incs = lb.li_gap_increments(np.array(lefts), np.array(rights))
    for a, b, inc in zip(lefts, rights, incs.tolist()):
        assert inc == pytest.approx(lb.li_between(a, b), rel=1e-12, abs=1e-15)


def test_derivatives_match_mpmath():
    d = lb.derivatives(1e6)
    for name, ref in DERIV_REF_1E6.items():
        assert getattr(d, name) == pytest.approx(ref, rel=1e-10), name


def test_derivative_signs_large_x():
    for x in (1e6, 1e9, 1e12):
        d = lb.derivatives(x)
        assert d.l1 > 0 > d.l2
        assert d.l3 > 0 > d.l4
        assert d.eps1 > 0 > d.eps2
        assert d.eps3 > 0 > d.eps4  # eps'''' < 0 needs ln x > 16/15


def test_taylor_domination_random_grid():
    # Both fourth derivatives are negative on the sampled domain, so the
    # degree-3 Taylor polynomials dominate the functions for h of either
    # sign. This is what makes W a majorant of the tangent gap.
    rng = random.Random(99)
    for _ in range(120):
        x = 10 ** rng.uniform(6, 12.5)
        h = x * rng.uniform(-0.9, 2.0)
        lx = lb.li(x + h)
        ex = math.sqrt(x + h) * math.log(x + h)
        assert lb.taylor_upper_l(x, h) >= lx - 1e-9 * abs(lx)
        assert lb.taylor_upper_eps(x, h) >= ex - 1e-9 * abs(ex)


def test_cubic_coeffs_consistency():
    rng = random.Random(4)
    for _ in range(60):
        x = 10 ** rng.uniform(1, 13)
        prob = lb.cubic_coeffs(x)
        d = lb.derivatives(x)
        # A-coefficients against their Taylor-sum definitions
        assert prob.a3 == pytest.approx((d.l3 + d.eps3) / 6.0, rel=1e-12)
        assert prob.a2 == pytest.approx((d.l2 + d.eps2) / 2.0, rel=1e-12)
        assert prob.a1 == pytest.approx(2.0 * d.eps1, rel=1e-12)
        assert prob.a0 == pytest.approx(2.0 * d.eps, rel=1e-12)
        assert prob.a3 > 0.0
        # normalized forms: B_i * A3 = A_i and v_i = B_i / x^(3-i)
        assert prob.b2 * prob.a3 == pytest.approx(prob.a2, rel=1e-12)
        assert prob.b1 * prob.a3 == pytest.approx(prob.a1, rel=1e-12)
        assert prob.b0 * prob.a3 == pytest.approx(prob.a0, rel=1e-12)
        assert prob.v2 == pytest.approx(3.0 + prob.b2 / x, rel=1e-12)
        assert prob.v1 == pytest.approx(prob.b1 / (x * x), rel=1e-12)
        assert prob.v0 == pytest.approx(prob.b0 / (x**3), rel=1e-12)


def test_w_value_and_reduced_value_agree():
    rng = random.Random(12)
    for _ in range(40):
        x = 10 ** rng.uniform(4, 12)
        prob = lb.cubic_coeffs(x)
        theta = rng.uniform(-1.0, 1.0)
        h = theta * x
        assert prob.w_value(h) == pytest.approx(
            prob.a3 * x**3 * prob.reduced_value(theta), rel=1e-10, abs=1e-12
        )


def test_w_majorizes_tangent_gap():
    rng = random.Random(31)
    for _ in range(60):
        x = 10 ** rng.uniform(6, 12)
        prob = lb.cubic_coeffs(x)
        h = x * rng.uniform(-0.9, 1.5)
        f = lb._tangent_gap(x, h)
        assert prob.w_value(h) >= f - 1e-9 * max(1.0, abs(f))


def test_solve_theta_at_1e12():
    roots = lb.solve_theta(1e12)
    assert roots.theta_minus == pytest.approx(THETA_REF_1E12[0], rel=1e-12)
    assert roots.theta_plus == pytest.approx(THETA_REF_1E12[1], rel=1e-12)
    assert roots.theta_minus < 0 < roots.theta_plus
    assert roots.residual_minus < 1e-10 and roots.residual_plus < 1e-10
    assert roots.h_star_minus == roots.theta_minus * 1e12
    assert roots.h_star_plus == roots.theta_plus * 1e12


def test_solve_theta_window_rejections():
    # The window inequalities genuinely fail below ~1.48e10 at alpha=1: the
    # v-coefficients are still too large. These are honest rejections, not
    # tolerance artifacts (sum at 1e10 is 2.27 vs the required < 2).
    for x in (1e8, 1e10):
        with pytest.raises(lb.ThetaPreconditionError):
            lb.solve_theta(x)
    with pytest.raises(ValueError):
        lb.solve_theta(1e12, alpha=0.0)
    with pytest.raises(ValueError):
        lb.solve_theta(1e12, alpha=1.5)


def test_theta_extreme_roots():
    # 1e8: the cubic is positive for all theta > 0 (no positive root).
    neg, pos = lb.theta_extreme_roots(1e8)
    assert pos is None
    assert neg == pytest.approx(-0.8982632226141225, rel=1e-10)
    # 1e10: positive roots exist but the smaller one exceeds theta = 1,
    # which is why the alpha <= 1 window can never capture it.
    neg, pos = lb.theta_extreme_roots(1e10)
    assert neg == pytest.approx(-0.5312291816344477, rel=1e-10)
    assert pos == pytest.approx(1.156861015481545, rel=1e-10)
    assert pos > 1.0
    # 1e12 agrees with the window solver
    neg, pos = lb.theta_extreme_roots(1e12)
    assert neg == pytest.approx(THETA_REF_1E12[0], rel=1e-12)
    assert pos == pytest.approx(THETA_REF_1E12[1], rel=1e-12)
    for x in (1e8, 1e10, 1e12):
        prob = lb.cubic_coeffs(x)
        n, p = lb.theta_extreme_roots(x)
        assert abs(prob.reduced_value(n)) < 1e-10
        if p is not None:
            assert abs(prob.reduced_value(p)) < 1e-10


def test_solve_h_exact_reference_values():
    for x, (hm_ref, hp_ref) in CROSSINGS_REF.items():
        c = lb.solve_h_exact(float(x))
        assert c.h_minus == pytest.approx(hm_ref, rel=1e-9)
        assert c.h_plus == pytest.approx(hp_ref, rel=1e-9)
        assert c.width / x == pytest.approx(WIDTH_RATIO_REF[x], rel=1e-9)
        # residual of the tangent gap at the returned crossings
        eps_scale = math.sqrt(x) * math.log(x)
        assert abs(lb._tangent_gap(x, c.h_minus)) < 1e-6 * eps_scale
        assert abs(lb._tangent_gap(x, c.h_plus)) < 1e-6 * eps_scale


def test_width_ratio_strictly_decreasing():
    ratios = [lb.solve_h_exact(float(x)).width / x for x in (10**6, 10**8, 10**10, 10**12)]
    assert all(a > b for a, b in zip(ratios, ratios[1:]))


def test_sandwich_with_relaxed_roots():
    # Wherever the majorant has roots of the right sign they must bracket
    # the exact crossings (W >= F pointwise). At 1e10 the positive root
    # exists but only outside the alpha window; the bracket still holds.
    for x in (1e10, 1e12):
        neg, pos = lb.theta_extreme_roots(x)
        c = lb.solve_h_exact(x)
        assert neg * x < c.h_minus < 0 < c.h_plus < pos * x


def test_solve_h_exact_rejects_small_x():
    # Below the concavity threshold the tangent gap never turns negative
    # before the domain edge on the left side.
    with pytest.raises(ValueError):
        lb.solve_h_exact(3e5)


def test_phi_values():
    assert lb.phi(1e6) == pytest.approx(78626.503995682064 - 13815.510557964274, rel=1e-12)
    assert lb.phi_prime(1e6) == pytest.approx(0.064474658371559834, rel=1e-11)
    p, dp, tangent = lb.phi_and_tangent(1e6, 1000.0)
    assert tangent == pytest.approx(p + dp * 1000.0, rel=1e-15)


def test_phi_second_sign_change():
    assert lb.phi_second(1e5) > 0
    assert lb.phi_second(3e5) < 0
    t = lb.concavity_threshold()
    assert t == pytest.approx(CONCAVITY_THRESHOLD_REF, rel=1e-9)
    assert lb.phi_second(t * 0.999) > 0 > lb.phi_second(t * 1.001)


def test_working_threshold():
    wt = lb.working_threshold(1.0)
    assert wt == pytest.approx(1.47778e10, rel=1e-4)
    lb.solve_theta(wt * 1.001)  # must succeed just above
    with pytest.raises(lb.ThetaPreconditionError):
        lb.solve_theta(wt * 0.999)

from fractions import Fraction as F

import pytest

from jacobiforms import (
    A,
    A_INV,
    B,
    E4,
    E6,
    WindowError,
    b_series,
    bernoulli,
    delta_series,
    eisenstein,
    evaluate,
    evaluate_quasimodular,
    iterate,
    j1_series,
    j2_series,
    oberdieck,
    oberdieck_series,
    partial_u,
    sigma,
    theta_quotient_A,
)
from jacobiforms.qseries import LaurentPolyW, QSeries, constant_series, format_wpoly


def wpoly(xi_pairs):
    """Laurent polynomial from {xi-exponent: coeff}."""
    return LaurentPolyW({2 * r: c for r, c in xi_pairs.items()})


XI_SQ = wpoly({1: 1, 0: -2, -1: 1})  # (xi^1/2 - xi^-1/2)^2


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == F(-1, 2)
    assert bernoulli(2) == F(1, 6)
    assert bernoulli(4) == F(-1, 30)
    assert bernoulli(6) == F(1, 42)
    assert bernoulli(12) == F(-691, 2730)
    assert bernoulli(3) == 0


def test_sigma():
    assert sigma(3, 2) == 9
    assert sigma(1, 6) == 12
    assert sigma(0, 12) == 6
    assert sigma(5, 1) == 1
    with pytest.raises(ValueError):
        sigma(1, 0)


def test_eisenstein_series():
    e2 = eisenstein(2, 4)
    assert [e2.coefficient(n).coefficient(0) for n in range(5)] == [1, -24, -72, -96, -168]
    e4 = eisenstein(4, 2)
    assert e4.coefficient(1).coefficient(0) == 240
    assert e4.coefficient(2).coefficient(0) == 240 * sigma(3, 2)
    e6 = eisenstein(6, 1)
    assert e6.coefficient(1).coefficient(0) == -504
    with pytest.raises(ValueError):
        eisenstein(3, 2)


def test_theta_quotient_reference_coefficients():
    a = theta_quotient_A(6)
    assert a.is_exact
    assert a.coefficient(0) == XI_SQ
    assert a.coefficient(1) == F(-2) * XI_SQ ** 2
    assert a.coefficient(2) == XI_SQ ** 2 * wpoly({1: 1, 0: -8, -1: 1})


@pytest.mark.parametrize("window", [8, 12, 24])
def test_b_series_reference_coefficients(window):
    b = b_series(2, window)
    assert b.is_exact
    assert b.coefficient(0) == wpoly({1: 1, 0: 10, -1: 1})
    assert b.coefficient(1) == 2 * XI_SQ * wpoly({1: 5, 0: -22, -1: 5})
    assert b.coefficient(2) == XI_SQ * wpoly({2: 1, 1: 110, 0: -294, -1: 110, -2: 1})


def test_b_series_rejects_insufficient_window():
    with pytest.raises(WindowError):
        b_series(10, 8)


def test_j1_series():
    j1 = j1_series(5, 3)
    assert j1.window == 3
    # q^0: -1/2 + truncated geometric tail in xi^{-1}
    assert j1.coefficient(0) == LaurentPolyW({0: F(1, 2), -2: 1, -4: 1, -6: 1})
    assert j1.coefficient(1) == wpoly({1: -1, -1: 1})
    assert j1.coefficient(4) == wpoly({4: -1, 2: -1, 1: -1, -1: 1, -2: 1, -4: 1})


def test_j2_series():
    j2 = j2_series(4)
    assert j2.is_exact
    assert j2.coefficient(0) == LaurentPolyW({0: F(1, 6)})
    assert j2.coefficient(1) == wpoly({1: -2, -1: -2})
    # n=2: divisors 1 (n/d=2) and 2 (n/d=1)
    assert j2.coefficient(2) == wpoly({1: -4, -1: -4, 2: -2, -2: -2})


def test_j_series_parity(bundle):
    for n in range(1, bundle.q_order + 1):
        c1 = bundle.j1.coefficient(n)
        assert c1.mirror() == -c1
        c2 = bundle.j2.coefficient(n)
        assert c2.mirror() == c2


def test_dz_dtau():
    s = QSeries([LaurentPolyW({2: 1, -2: -1}), LaurentPolyW({0: 5})])
    assert s.dz().coefficient(0) == LaurentPolyW({2: 1, -2: 1})
    assert s.dz().coefficient(1).is_zero
    assert s.dtau().coefficient(0).is_zero
    assert s.dtau().coefficient(1) == LaurentPolyW({0: 5})


def test_dz_j2_equals_twice_dtau_j1(bundle):
    assert bundle.j2.dz().agrees_with(2 * bundle.j1.dtau())


def test_window_arithmetic():
    exact = theta_quotient_A(4)          # width 6 at this order
    windowed = j1_series(4, 10)
    product = windowed * exact
    assert product.window == 10 - exact.w_width()
    assert (windowed + windowed).window == 10
    assert (windowed + exact).window == 10
    with pytest.raises(WindowError):
        windowed * windowed
    with pytest.raises(WindowError):
        j1_series(4, 2) * exact  # window smaller than the factor width
    zero = constant_series(0, 4)
    assert (windowed * zero).is_exact


def test_window_claims_are_sound_against_deeper_truncations():
    # a much deeper tail is closer to the true series; inside the claimed
    # window of the shallow product the two must agree, including after a
    # second product and additions
    shallow = j1_series(4, 10)
    deep = j1_series(4, 40)
    factor = theta_quotient_A(4)
    small = eisenstein(4, 4)
    prod_shallow = shallow * factor
    prod_deep = deep * factor
    assert prod_shallow.window == 10 - factor.w_width()
    assert prod_shallow.agrees_with(prod_deep)
    again_shallow = prod_shallow * small + shallow
    again_deep = prod_deep * small + deep
    assert again_shallow.agrees_with(again_deep)
    assert again_shallow.dz().agrees_with(again_deep.dz())


def test_oberdieck_series_basics(bundle):
    one = constant_series(1, bundle.q_order)
    assert oberdieck_series(one, 0, 0, bundle).agrees_with(constant_series(0, bundle.q_order))
    lhs = oberdieck_series(bundle.e4, 4, 0, bundle)
    rhs = F(-1, 3) * bundle.e6
    assert lhs.agrees_with(rhs)


def test_oberdieck_series_defines_b(bundle):
    derived = (-6) * oberdieck_series(bundle.a, -2, 1, bundle)
    assert derived.agrees_with(bundle.b)


def test_evaluate(bundle):
    assert evaluate(E4, bundle) == bundle.e4
    assert evaluate(B, bundle) == bundle.b
    delta = (E4 ** 3 - E6 ** 2) / 1728
    series = evaluate(delta, bundle)
    assert [series.coefficient(n).coefficient(0) for n in range(4)] == [0, 1, -24, 252]
    assert evaluate(E4 ** 3 - E6 ** 2, bundle).agrees_with(1728 * delta_series(bundle))
    with pytest.raises(ValueError):
        evaluate(A_INV, bundle)


def test_evaluate_is_a_ring_map(bundle):
    f = E4 * A + 2 * B
    g = E6 - A * B
    lhs = evaluate(f * g, bundle)
    rhs = evaluate(f, bundle) * evaluate(g, bundle)
    assert lhs.agrees_with(rhs)


def test_quasimodular_bridge(bundle):
    # transported q-derivative: dtau on the E2-substituted expansion
    d = partial_u(0)
    for f in (E4, E6, B * A_INV, E4 * B * A_INV):
        lhs = evaluate_quasimodular(f, bundle).dtau()
        rhs = evaluate_quasimodular(d(f), bundle)
        assert lhs.agrees_with(rhs)
    with pytest.raises(ValueError):
        evaluate_quasimodular(B, bundle)


def test_support_law(bundle):
    # weak Jacobi support: xi-exponents r with r^2 <= 4nm + m^2
    for f in (A, B, A ** 2, A * B, B ** 2):
        m = f.bidegree().index
        series = evaluate(f, bundle)
        for n in range(series.q_order + 1):
            for w_exp in series.coefficient(n).support():
                r = F(w_exp, 2)
                assert r * r <= 4 * n * m + m * m, (str(f), n, w_exp)


def test_series_consistency_engine(bundle):
    from jacobiforms import series_consistency

    report = series_consistency(bundle)
    assert report.passed
    # leibniz through the operator on a product
    f = A * B
    k, p = f.bidegree()
    sym = evaluate(oberdieck()(f), bundle)
    ana = oberdieck_series(evaluate(f, bundle), k, p, bundle)
    assert sym.agrees_with(ana)


def test_iterated_symbolic_matches_series(bundle):
    # second application: the first image is a weight-0 index-1 form with
    # support well inside the window, so it can be promoted and fed back in
    ob = oberdieck()
    first = oberdieck_series(bundle.a, -2, 1, bundle)
    assert first.agrees_with(evaluate(ob(A), bundle))
    second = oberdieck_series(first.as_exact(), 0, 1, bundle)
    assert evaluate(iterate(ob, 2, A), bundle).agrees_with(second)


def test_format_wpoly():
    assert format_wpoly(LaurentPolyW({})) == "0"
    assert format_wpoly(wpoly({1: 1, 0: -2, -1: 1})) == "w^2 - 2 + w^-2"


def test_as_exact_requires_window_truncation():
    j1 = j1_series(3, 4)
    exact = j1.as_exact()
    assert exact.is_exact
    assert all(abs(r) <= 4 for r in exact.coefficient(0).support())


def test_bundle_records_expansion_direction(bundle):
    assert bundle.j1_direction == "xi-inverse"


def test_generator_specialization_at_z_zero(bundle):
    # setting w = 1 (z = 0) kills the index-one weight -2 generator and
    # collapses the weight-0 one to the constant 12, at every q order
    for n in range(bundle.q_order + 1):
        assert sum((c for _, c in bundle.a.coefficient(n).items()), start=F(0)) == 0
        expected = 12 if n == 0 else 0
        assert sum((c for _, c in bundle.b.coefficient(n).items()), start=F(0)) == expected


def test_generator_expansions_are_even_in_z(bundle):
    for series in (bundle.a, bundle.b):
        for n in range(series.q_order + 1):
            c = series.coefficient(n)
            assert c.mirror() == c

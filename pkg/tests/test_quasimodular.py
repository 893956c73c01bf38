"""q-expansions of G2, DG2, D2G2, Delta and the K3 closed form."""

from fractions import Fraction

import pytest

from nodalcurves import (
    FormCatalog,
    PowerSeries,
    SeriesError,
    d2g2,
    delta_d2g2_over_q2,
    dg2,
    dg2_over_q,
    discriminant_delta,
    eisenstein_g2,
    k3_generating,
    sigma1,
)

F = Fraction


def divisor_sum(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def test_sigma1_against_direct_enumeration():
    for n in range(1, 60):
        assert sigma1(n) == divisor_sum(n)


def test_g2_fixture():
    g2 = eisenstein_g2(3)
    assert g2.coeffs == (F(-1, 24), F(1), F(3), F(4))


def test_g2_named_coefficients():
    g2 = eisenstein_g2(6)
    assert g2.coeff(4) == 7  # 1 + 2 + 4
    assert g2.coeff(6) == 12  # 1 + 2 + 3 + 6


def test_dg2_matches_independent_divisor_sums():
    series = dg2(20)
    assert series.coeff(0) == 0
    for n in range(1, 21):
        assert series.coeff(n) == n * divisor_sum(n)


def test_d2g2_is_n_squared_sigma():
    series = d2g2(20)
    for n in range(1, 21):
        assert series.coeff(n) == n * n * divisor_sum(n)


def test_delta_first_terms():
    delta = discriminant_delta(3)
    assert delta.coeffs == (F(0), F(1), F(-24), F(252))


def test_delta_leading_coefficient_and_unit_shift():
    delta = discriminant_delta(8)
    assert delta.coeff(0) == 0 and delta.coeff(1) == 1
    assert delta.shift_down(1).constant_term == 1


def test_delta_against_plain_integer_product():
    # independent oracle: expand q * prod (1 - q^k)^24 with bare integer lists
    order = 12
    poly = [1] + [0] * order
    for k in range(1, order + 1):
        factor = [0] * (order + 1)
        factor[0] = 1
        if k <= order:
            factor[k] = -1
        for _ in range(24):
            out = [0] * (order + 1)
            for i, a in enumerate(poly):
                if a == 0:
                    continue
                for j in range(0, order + 1 - i):
                    if factor[j]:
                        out[i + j] += a * factor[j]
            poly = out
    expected = [0] + poly[:order]
    delta = discriminant_delta(order)
    assert [int(c) for c in delta.coeffs] == expected


def test_delta_requires_positive_order():
    with pytest.raises(SeriesError):
        discriminant_delta(0)


def test_fixed_denominator_q2_coefficient_vanishes():
    fixed = delta_d2g2_over_q2(4)
    assert fixed.coeff(0) == 1
    assert fixed.coeff(1) == -12
    assert fixed.coeff(2) == 0


def test_k3_generating_chi_zero():
    assert k3_generating(0, 2) == PowerSeries.of([1, 12, 144])


def test_k3_generating_constant_term_is_one():
    for chi in (-3, -1, 0, 1, 2, 5):
        assert k3_generating(chi, 4).constant_term == 1


def test_k3_generating_order_zero():
    assert k3_generating(7, 0) == PowerSeries.one(0, "q")


def test_k3_generating_exponent_additivity():
    order = 6
    fixed = delta_d2g2_over_q2(order)
    for a, b in ((0, 1), (2, 3), (-2, 4), (1, 1)):
        left = k3_generating(a + b, order)
        right = k3_generating(a, order) * k3_generating(b, order) * fixed
        assert left == right


def test_dg2_over_q_leading_terms():
    assert dg2_over_q(3) == PowerSeries.of([1, 6, 12, 28])


def test_dg2_revert_roundtrip():
    series = dg2(8)
    inverse = series.revert()
    assert series.compose(inverse) == PowerSeries.identity(8, "x")
    assert inverse.compose(series) == PowerSeries.identity(8, "q")


def test_form_catalog_build_and_roundtrip():
    catalog = FormCatalog.build(6)
    assert catalog.g2.diff_d() == catalog.dg2
    assert catalog.dg2.diff_d() == catalog.d2g2
    doc = catalog.to_json_dict()
    assert doc["format"] == "forms-1"
    back = FormCatalog.from_json_dict(doc)
    assert back.g2.coeffs == catalog.g2.coeffs
    assert back.delta.coeffs == catalog.delta.coeffs


def test_form_catalog_rejects_unknown_format():
    doc = FormCatalog.build(2).to_json_dict()
    doc["format"] = "forms-999"
    with pytest.raises(SeriesError):
        FormCatalog.from_json_dict(doc)


def test_form_catalog_rejects_inconsistent_chain():
    catalog = FormCatalog.build(3)
    with pytest.raises(SeriesError):
        FormCatalog(
            order=3,
            g2=catalog.g2,
            dg2=catalog.d2g2,  # wrong slot
            d2g2=catalog.d2g2,
            delta=catalog.delta,
        )

"""Exact q-expansions of the quasimodular ingredients G2, DG2, D2G2, Delta.

G2 is the weight-two Eisenstein series -1/24 + sum_{n>0} sigma_1(n) q^n,
D is the operator q*d/dq, and Delta(q) = q * prod_{k>0} (1 - q^k)^24 is the
discriminant cusp form.  Everything here is a formal q-series with rational
coefficients; no analytic structure in tau is used.

Delta is computed from the finite product (factors with k > M cannot change
coefficients up to q^M).  Divisions by powers of q are explicit coefficient
shifts with a valuation check, never formal series division, so a missing
leading term fails loudly.

The closed-form generating function for a generic K3 surface with a
primitive class of Euler characteristic chi is

    (DG2/q)^chi / (Delta * D2G2 / q^2),

which this module expands to any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import PowerSeries, SeriesError

FORMS_FORMAT_VERSION = "forms-1"


def sigma1(n: int) -> int:
    """Sum of the divisors of n."""
    if n < 1:
        raise ValueError("sigma_1 is defined for positive integers")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d != n // d:
                total += n // d
        d += 1
    return total


def eisenstein_g2(order: int) -> PowerSeries:
    """G2 = -1/24 + sum_{n>0} sigma_1(n) q^n through the given order."""
    if order < 0:
        raise SeriesError("order must be nonnegative")
    coeffs = [Fraction(-1, 24)] + [Fraction(sigma1(n)) for n in range(1, order + 1)]
    return PowerSeries.of(coeffs, "q")


def dg2(order: int) -> PowerSeries:
    """DG2 = sum n*sigma_1(n) q^n."""
    return eisenstein_g2(order).diff_d()


def d2g2(order: int) -> PowerSeries:
    """D2G2 = sum n^2*sigma_1(n) q^n."""
    return dg2(order).diff_d()


def discriminant_delta(order: int) -> PowerSeries:
    """Delta = q * prod_{k=1..order} (1 - q^k)^24, truncated at the order."""
    if order < 1:
        raise SeriesError("Delta needs order >= 1")
    product = PowerSeries.one(order, "q")
    for k in range(1, order + 1):
        factor_coeffs = [Fraction(0)] * (order + 1)
        factor_coeffs[0] = Fraction(1)
        factor_coeffs[k] = Fraction(-1)
        product = product * PowerSeries(tuple(factor_coeffs), "q") ** 24
    return product.shift_up(1).truncate(order)


def dg2_over_q(order: int) -> PowerSeries:
    """DG2/q as an exact coefficient shift: 1 + 6q + 12q^2 + ..."""
    return dg2(order + 1).shift_down(1)


def delta_d2g2_over_q2(order: int) -> PowerSeries:
    """(Delta * D2G2)/q^2, the unit-constant-term denominator of the K3 form."""
    padded = order + 2
    return (discriminant_delta(padded) * d2g2(padded)).shift_down(2)


def k3_generating(chi: int, order: int) -> PowerSeries:
    """Nodal-curve generating series of a generic primitive K3 class.

    chi is the Euler characteristic of the class; negative values are allowed
    since the expression is formal.
    """
    if order < 0:
        raise SeriesError("order must be nonnegative")
    if order == 0:
        return PowerSeries.one(0, "q")
    numerator = dg2_over_q(order).pow(Fraction(chi))
    return numerator / delta_d2g2_over_q2(order)


@dataclass(frozen=True)
class FormCatalog:
    """The four q-expansions used throughout, bundled at a common order."""

    order: int
    g2: PowerSeries
    dg2: PowerSeries
    d2g2: PowerSeries
    delta: PowerSeries

    def __post_init__(self):
        if self.g2.diff_d() != self.dg2 or self.dg2.diff_d() != self.d2g2:
            raise SeriesError("derivative chain G2 -> DG2 -> D2G2 is inconsistent")
        if self.delta.coeff(0) != 0 or self.delta.coeff(1) != 1:
            raise SeriesError("Delta must have valuation exactly one with leading coefficient one")

    @staticmethod
    def build(order: int) -> FormCatalog:
        g2 = eisenstein_g2(order)
        return FormCatalog(
            order=order,
            g2=g2,
            dg2=g2.diff_d(),
            d2g2=g2.diff_d().diff_d(),
            delta=discriminant_delta(order),
        )

    def to_json_dict(self) -> dict:
        return {
            "format": FORMS_FORMAT_VERSION,
            "order": self.order,
            "g2": self.g2.to_json_dict(),
            "dg2": self.dg2.to_json_dict(),
            "d2g2": self.d2g2.to_json_dict(),
            "delta": self.delta.to_json_dict(),
        }

    @staticmethod
    def from_json_dict(doc: dict) -> FormCatalog:
        if doc.get("format") != FORMS_FORMAT_VERSION:
            raise SeriesError(f"unsupported forms format: {doc.get('format')!r}")
        return FormCatalog(
            order=doc["order"],
            g2=PowerSeries.from_json_dict(doc["g2"]),
            dg2=PowerSeries.from_json_dict(doc["dg2"]),
            d2g2=PowerSeries.from_json_dict(doc["d2g2"]),
            delta=PowerSeries.from_json_dict(doc["delta"]),
        )

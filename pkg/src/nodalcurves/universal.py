"""Universal nodal-curve series: the multiplicative fit and its consequences.

The count of r-nodal curves in a suitably ample linear system is a degree-r
universal polynomial T_r in the four numbers (L^2, L.K, c1^2, c2), and the
full generating series multiplies across those numbers:

    sum_r T_r(v) x^r = A1^(L^2) * A2^(L.K) * A3^(c1^2) * A4^(c2).

Taking logs makes each x-order a linear equation in the four unknown
log-series coefficients, so exact plane Severi degrees for two degrees plus
the closed-form K3 series for two primitive squares determine log A1..A4 by
one 4x4 rational solve per order (the four input vectors must be a basis).
The K3 input lives in the variable q with x = DG2(q); it is pulled back
through the compositional inverse of DG2.

From the fitted log-series everything else follows symbolically: the
polynomials T_r, evaluation on any vector, the q-side series B1, B2 of the
Gottsche-Yau-Zaslow product

    sum_r T_r(v) DG2^r = (DG2/q)^chi(L) * B1^(K^2) * B2^(L.K)
                         / (Delta * D2G2 / q^2)^(chi(O)/2),

and two residual identities that cross-check the plane recursion against
the quasimodular closed forms: writing a_i for log A_i composed with DG2,

    exp(2*a1) = DG2/q    and    exp(4*a1 - 24*a4) = Delta * D2G2 / q^2.

Nonzero residuals signal an inconsistency between the Severi data and the
K3 forms and are reported, never silently accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cobordism import PairClass, is_basis, k3_primitive, plane
from .quasimodular import d2g2, delta_d2g2_over_q2, dg2, dg2_over_q, k3_generating
from .series import PowerSeries
from .severi import SeveriTable, check_threshold, p2_series


class FitConfigError(ValueError):
    """The fit configuration cannot produce a well-posed linear system."""


@dataclass(frozen=True)
class FitConfig:
    """Inputs of the multiplicative fit.

    Two plane degrees and two primitive K3 squares; the degrees must honor
    d >= 5r - 1 for every fitted order r unless unsafe is set.
    """

    order: int
    d1: int = 9
    d2: int = 10
    s1: int = 2
    s2: int = 4
    unsafe: bool = False

    def __post_init__(self):
        if self.order < 0:
            raise FitConfigError("order must be nonnegative")
        if self.d1 < 1 or self.d2 < 1 or self.d1 == self.d2:
            raise FitConfigError("plane degrees must be positive and distinct")
        for s in (self.s1, self.s2):
            if s <= 0 or s % 2 != 0:
                raise FitConfigError("K3 squares must be positive and even")
        if self.s1 == self.s2:
            raise FitConfigError("K3 squares must be distinct, else the system is singular")
        for d in (self.d1, self.d2):
            check_threshold(d, self.order, self.unsafe)

    def basis(self) -> tuple[PairClass, PairClass, PairClass, PairClass]:
        return (plane(self.d1), plane(self.d2), k3_primitive(self.s1), k3_primitive(self.s2))

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "degrees": [self.d1, self.d2],
            "k3_squares": [self.s1, self.s2],
            "unsafe": self.unsafe,
        }


def default_config(order: int, unsafe: bool = False) -> FitConfig:
    """Smallest threshold-safe degrees, (9, 10) up to order two, (14, 15) at three."""
    d1 = max(9, 5 * order - 1)
    return FitConfig(order=order, d1=d1, d2=d1 + 1, unsafe=unsafe)


@dataclass(frozen=True)
class MultiplicativeFit:
    """The four log-series and their exponentials, tied to their inputs."""

    config: FitConfig
    log_a: tuple[PowerSeries, PowerSeries, PowerSeries, PowerSeries]
    a: tuple[PowerSeries, PowerSeries, PowerSeries, PowerSeries]

    @property
    def order(self) -> int:
        return self.config.order


def k3_series_in_x(s: int, order: int) -> PowerSeries:
    """The K3 closed form pulled back from q to x through the inverse of DG2."""
    if order == 0:
        return PowerSeries.one(0, "x")
    chi = 2 + s // 2
    gamma = k3_generating(chi, order)
    return gamma.compose(dg2(order).revert())


def fit_A(config: FitConfig, table: SeveriTable) -> MultiplicativeFit:
    """Solve for log A1..A4 from two plane degrees and two K3 squares."""
    vectors = config.basis()
    if not is_basis(vectors):
        raise FitConfigError("the four input classes do not form a basis")
    matrix = [v.as_tuple() for v in vectors]
    inverse = linalg.invert(matrix)
    inputs = [
        p2_series(config.d1, config.order, table, config.unsafe).log(),
        p2_series(config.d2, config.order, table, config.unsafe).log(),
        k3_series_in_x(config.s1, config.order).log(),
        k3_series_in_x(config.s2, config.order).log(),
    ]
    m = config.order
    log_coeffs = [[Fraction(0)] * (m + 1) for _ in range(4)]
    for n in range(1, m + 1):
        rhs = [series.coeff(n) for series in inputs]
        column = linalg.mat_vec(inverse, rhs)
        for i in range(4):
            log_coeffs[i][n] = column[i]
    log_a = tuple(PowerSeries.of(c, "x") for c in log_coeffs)
    return MultiplicativeFit(config=config, log_a=log_a, a=tuple(s.exp() for s in log_a))


def evaluate(v: PairClass, fit: MultiplicativeFit, order: int | None = None) -> PowerSeries:
    """The series A1^(L^2) A2^(LK) A3^(c1^2) A4^(c2) for the given vector."""
    m = fit.order if order is None else order
    if m > fit.order:
        raise FitConfigError(f"order {m} exceeds fit order {fit.order}")
    exponent = PowerSeries.zero(m, "x")
    for weight, log_series in zip(v.as_tuple(), fit.log_a):
        if weight:
            exponent = exponent + log_series.truncate(m) * weight
    return exponent.exp()


# ----------------------------------------------------------------------
# the universal polynomials T_r
# ----------------------------------------------------------------------

Exponents = tuple[int, int, int, int]


def _poly_add(p: dict[Exponents, Fraction], q: dict[Exponents, Fraction]) -> dict:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, Fraction(0)) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _poly_mul(p: dict[Exponents, Fraction], q: dict[Exponents, Fraction]) -> dict:
    out: dict[Exponents, Fraction] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
            s = out.get(e, Fraction(0)) + c1 * c2
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _poly_scale(p: dict[Exponents, Fraction], c: Fraction) -> dict:
    return {e: v * c for e, v in p.items()} if c else {}


@dataclass(frozen=True)
class UniversalPolynomial:
    """T_r as an exact polynomial in the four formal variables
    (L^2, LK, c1^2, c2); every monomial has total degree at most r."""

    r: int
    terms: tuple[tuple[Exponents, Fraction], ...]

    def __post_init__(self):
        for exps, _ in self.terms:
            if sum(exps) > self.r:
                raise AssertionError(
                    f"T_{self.r} produced a monomial of total degree {sum(exps)}"
                )

    def coefficient(self, exps: Exponents) -> Fraction:
        for e, c in self.terms:
            if e == exps:
                return c
        return Fraction(0)

    def evaluate(self, v: PairClass) -> Fraction:
        total = Fraction(0)
        values = v.as_tuple()
        for exps, c in self.terms:
            acc = c
            for value, e in zip(values, exps):
                acc *= Fraction(value) ** e
            total += acc
        return total

    def to_json_list(self) -> list:
        return [{"exponents": list(e), "coeff": str(c)} for e, c in self.terms]


def universal_T(r: int, fit: MultiplicativeFit) -> UniversalPolynomial:
    """Extract T_r: the x^r coefficient of exp(sum_i y_i log A_i) with the
    four weights kept as formal variables."""
    if r > fit.order:
        raise FitConfigError(f"T_{r} needs fit order >= {r}, have {fit.order}")
    # u[n] = x^n coefficient of sum_i y_i log A_i, a linear polynomial in y
    unit = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    u = []
    for n in range(r + 1):
        poly: dict[Exponents, Fraction] = {}
        for i in range(4):
            c = fit.log_a[i].coeff(n)
            if c:
                poly[unit[i]] = c
        u.append(poly)
    # exp recurrence n*E_n = sum_k k*u_k*E_(n-k)
    e: list[dict[Exponents, Fraction]] = [{(0, 0, 0, 0): Fraction(1)}]
    for n in range(1, r + 1):
        acc: dict[Exponents, Fraction] = {}
        for k in range(1, n + 1):
            if u[k]:
                acc = _poly_add(acc, _poly_mul(_poly_scale(u[k], Fraction(k)), e[n - k]))
        e.append(_poly_scale(acc, Fraction(1, n)))
    terms = tuple(sorted(e[r].items()))
    return UniversalPolynomial(r=r, terms=terms)


# ----------------------------------------------------------------------
# the q-side product and its residual checks
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GYZResiduals:
    """Differences between fitted exponentials and the quasimodular closed forms.

    dg2_identity is exp(2*a1) - DG2/q and delta_identity is
    exp(4*a1 - 24*a4) - Delta*D2G2/q^2; both must vanish identically when the
    Severi data and the K3 forms are consistent.
    """

    dg2_identity: PowerSeries
    delta_identity: PowerSeries

    @property
    def ok(self) -> bool:
        return self.dg2_identity.is_zero() and self.delta_identity.is_zero()


@dataclass(frozen=True)
class GYZFit:
    """B1, B2 from the fit plus the closed forms B3, B4 and residual report."""

    q_order: int
    b1: PowerSeries
    b2: PowerSeries
    b3: PowerSeries
    b4: PowerSeries
    residuals: GYZResiduals


def fit_B(fit: MultiplicativeFit, q_order: int | None = None) -> GYZFit:
    """Assemble B1, B2 and the residual identities from a multiplicative fit.

    With a_i = log A_i composed with DG2 the exponent change of variables
    (Noether and Riemann-Roch) gives B2 = exp(a1 + a2), B1 = exp(a3 - a4),
    B3 = exp(2*a1) and B4^2 = exp(4*a1 - 24*a4); B3 and B4 are stored as
    their quasimodular closed forms and the exponentials enter the residuals.
    """
    m = fit.order if q_order is None else q_order
    if m > fit.order:
        raise FitConfigError(f"q-order {m} exceeds fit order {fit.order}")
    inner = dg2(max(m, 1))
    a_hat = [s.compose(inner).truncate(m) for s in fit.log_a]
    b2 = (a_hat[0] + a_hat[1]).exp()
    b1 = (a_hat[2] - a_hat[3]).exp()
    b3 = dg2_over_q(m)
    fixed = delta_d2g2_over_q2(m)
    b4 = fixed.pow(Fraction(1, 2))
    residuals = GYZResiduals(
        dg2_identity=(a_hat[0] * 2).exp() - b3,
        delta_identity=(a_hat[0] * 4 - a_hat[3] * 24).exp() - fixed,
    )
    return GYZFit(q_order=m, b1=b1, b2=b2, b3=b3, b4=b4, residuals=residuals)


def genus_series(
    r: int,
    Ksq: int,
    m: int,
    chiO: int,
    order: int,
    gyz: GYZFit | None = None,
) -> PowerSeries:
    """The fixed-genus product B1^Ksq * B2^m * DG2^r * D2G2 / (Delta*D2G2/q^2)^(chiO/2).

    B1 and B2 only enter with nonzero exponent, so a fit is required exactly
    when Ksq or m is nonzero.
    """
    if r < 0:
        raise ValueError("negative powers of DG2 leave the power series ring")
    if order < 1:
        raise ValueError("the product has positive valuation; order must be >= 1")
    result = d2g2(order)
    if r:
        result = result * dg2(order) ** r
    if Ksq or m:
        if gyz is None:
            raise ValueError("nonzero Ksq or m exponents need a fitted GYZFit")
        if gyz.q_order < order:
            raise ValueError(f"fit q-order {gyz.q_order} is below requested order {order}")
        if Ksq:
            result = result * gyz.b1.truncate(order).pow(Fraction(Ksq))
        if m:
            result = result * gyz.b2.truncate(order).pow(Fraction(m))
    if chiO:
        result = result / delta_d2g2_over_q2(order).pow(Fraction(chiO, 2))
    return result


# ----------------------------------------------------------------------
# held-out validation
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    d: int
    order: int
    match: bool
    first_mismatch: tuple[int, Fraction, int] | None = None

    def to_json_dict(self) -> dict:
        doc = {"d": self.d, "order": self.order, "match": self.match}
        if self.first_mismatch is not None:
            r, predicted, actual = self.first_mismatch
            doc["first_mismatch"] = {
                "r": r,
                "predicted": str(predicted),
                "actual": str(actual),
            }
        return doc


def validate_p2(
    d: int,
    fit: MultiplicativeFit,
    order: int,
    table: SeveriTable,
    unsafe: bool = False,
) -> ValidationReport:
    """Compare the fitted series against freshly computed Severi degrees."""
    predicted = evaluate(plane(d), fit, order)
    actual = p2_series(d, order, table, unsafe)
    for n in range(order + 1):
        if predicted.coeff(n) != actual.coeff(n):
            return ValidationReport(d, order, False, (n, predicted.coeff(n), int(actual.coeff(n))))
    return ValidationReport(d, order, True)

"""Exact truncated formal power series over the rationals.

A series is a coefficient vector c[0..M] of fractions together with its
truncation order M; it represents sum c[n]*t^n + O(t^(M+1)).  All arithmetic
is exact.  Binary operations truncate the result to the smaller order of the
two operands, so pipelines that mix precisions degrade gracefully instead of
erroring, and equality compares coefficients through the common truncation
order.

Coefficients are fractions.Fraction values, hence always in lowest terms
with positive denominator.  Series are immutable after construction and all
operations are pure, so values can be shared freely between threads.

The variable tag ("q", "x", ...) is documentation only; it is carried along
but never consulted by the arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SeriesError(ValueError):
    """Domain error raised by power series operations."""


class NonUnitDivisorError(SeriesError):
    """Division by a series whose constant term is zero."""


class NormalizationError(SeriesError):
    """A transcendental operation's precondition on the constant term failed."""


class ValuationError(SeriesError):
    """A shift or substitution requires leading coefficients to vanish."""


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


_VAR_SWAP = {"q": "x", "x": "q"}


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """A truncated formal power series with exact rational coefficients."""

    coeffs: tuple[Fraction, ...]
    var: str = "q"

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise SeriesError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", tuple(_fraction(c) for c in self.coeffs))

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @staticmethod
    def of(values, var: str = "q") -> PowerSeries:
        return PowerSeries(tuple(_fraction(v) for v in values), var)

    @staticmethod
    def zero(order: int, var: str = "q") -> PowerSeries:
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        return PowerSeries((Fraction(0),) * (order + 1), var)

    @staticmethod
    def one(order: int, var: str = "q") -> PowerSeries:
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        return PowerSeries((Fraction(1),) + (Fraction(0),) * order, var)

    @staticmethod
    def identity(order: int, var: str = "x") -> PowerSeries:
        """The series t itself, at the given truncation order (order >= 1)."""
        if order < 1:
            raise SeriesError("identity series needs truncation order >= 1")
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[1] = Fraction(1)
        return PowerSeries(tuple(coeffs), var)

    @staticmethod
    def constant(value, order: int, var: str = "q") -> PowerSeries:
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[0] = _fraction(value)
        return PowerSeries(tuple(coeffs), var)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0]

    def coeff(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise SeriesError(f"coefficient {n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for n, c in enumerate(self.coeffs):
            if c != 0:
                return n
        return None

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return self.coeffs[: m + 1] == other.coeffs[: m + 1]

    __hash__ = None  # equality through the common order is not hash-compatible

    def __repr__(self) -> str:
        return f"PowerSeries({self.pretty()})"

    def pretty(self) -> str:
        parts = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if n == 0:
                parts.append(str(c))
            elif n == 1:
                parts.append(f"{c}*{self.var}")
            else:
                parts.append(f"{c}*{self.var}^{n}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{self.order + 1})"

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def _common(self, other: PowerSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            m = self._common(other)
            return PowerSeries(
                tuple(self.coeffs[n] + other.coeffs[n] for n in range(m + 1)), self.var
            )
        s = _fraction(other)
        return PowerSeries((self.coeffs[0] + s,) + self.coeffs[1:], self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -_fraction(other))

    def __rsub__(self, other):
        return (-self) + _fraction(other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            m = self._common(other)
            a, b = self.coeffs, other.coeffs
            out = [Fraction(0)] * (m + 1)
            for i in range(m + 1):
                ai = a[i]
                if ai == 0:
                    continue
                for j in range(m + 1 - i):
                    bj = b[j]
                    if bj != 0:
                        out[i + j] += ai * bj
            return PowerSeries(tuple(out), self.var)
        s = _fraction(other)
        return PowerSeries(tuple(c * s for c in self.coeffs), self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            m = self._common(other)
            g = other.coeffs
            if g[0] == 0:
                raise NonUnitDivisorError("non-unit divisor: constant term is zero")
            f = self.coeffs
            out = [Fraction(0)] * (m + 1)
            for n in range(m + 1):
                acc = f[n]
                for k in range(1, n + 1):
                    if g[k] != 0:
                        acc -= g[k] * out[n - k]
                out[n] = acc / g[0]
            return PowerSeries(tuple(out), self.var)
        s = _fraction(other)
        if s == 0:
            raise ZeroDivisionError("division of a series by zero")
        return PowerSeries(tuple(c / s for c in self.coeffs), self.var)

    def __rtruediv__(self, other):
        return PowerSeries.constant(_fraction(other), self.order, self.var) / self

    # ------------------------------------------------------------------
    # transcendental operations
    # ------------------------------------------------------------------

    def exp(self) -> PowerSeries:
        """exp(f) for f with zero constant term, exact through the order."""
        f = self.coeffs
        if f[0] != 0:
            raise NormalizationError(
                f"normalization error: exp needs constant term 0, got {f[0]}"
            )
        m = self.order
        out = [Fraction(0)] * (m + 1)
        out[0] = Fraction(1)
        # n*E_n = sum_{k=1..n} k*f_k*E_{n-k}, from E' = f'E
        for n in range(1, m + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if f[k] != 0:
                    acc += k * f[k] * out[n - k]
            out[n] = acc / n
        return PowerSeries(tuple(out), self.var)

    def log(self) -> PowerSeries:
        """log(f) for f with constant term one."""
        f = self.coeffs
        if f[0] != 1:
            raise NormalizationError(
                f"normalization error: log needs constant term 1, got {f[0]}"
            )
        m = self.order
        out = [Fraction(0)] * (m + 1)
        # n*f_n = sum_{k=1..n} k*L_k*f_{n-k}, from f' = L'f
        for n in range(1, m + 1):
            acc = Fraction(n) * f[n]
            for k in range(1, n):
                if out[k] != 0 and f[n - k] != 0:
                    acc -= k * out[k] * f[n - k]
            out[n] = acc / n
        return PowerSeries(tuple(out), self.var)

    def pow(self, e) -> PowerSeries:
        """f**e for rational e; requires constant term one."""
        e = _fraction(e)
        if self.coeffs[0] != 1:
            raise NormalizationError(
                f"normalization error: pow needs constant term 1, got {self.coeffs[0]}"
            )
        return (self.log() * e).exp()

    def __pow__(self, e):
        if isinstance(e, int):
            if e >= 0:
                result = PowerSeries.one(self.order, self.var)
                base = self
                n = e
                while n:
                    if n & 1:
                        result = result * base
                    base = base * base
                    n >>= 1
                return result
            if self.coeffs[0] == 0:
                raise NonUnitDivisorError(
                    "non-unit divisor: negative power of a series with zero constant term"
                )
            return PowerSeries.one(self.order, self.var) / self ** (-e)
        return self.pow(e)

    # ------------------------------------------------------------------
    # composition, reversion, differential operator, shifts
    # ------------------------------------------------------------------

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """Substitute inner (with zero constant term) into this series."""
        if inner.coeffs[0] != 0:
            raise ValuationError(
                f"composition needs inner constant term 0, got {inner.coeffs[0]}"
            )
        m = min(self.order, inner.order)
        g = PowerSeries(inner.coeffs[: m + 1], inner.var)
        acc = PowerSeries.constant(self.coeffs[m], m, inner.var)
        for n in range(m - 1, -1, -1):
            acc = acc * g + self.coeffs[n]
        return acc

    def revert(self) -> PowerSeries:
        """Compositional inverse of a series with valuation exactly one.

        Fixed-point refinement on h = (t - ghat(h))/g1 where ghat drops the
        linear term; each pass gains one order of agreement, so order many
        passes suffice.
        """
        g = self.coeffs
        if g[0] != 0:
            raise ValuationError("reversion needs zero constant term")
        if self.order < 1 or g[1] == 0:
            raise ValuationError("reversion needs a nonzero linear coefficient")
        m = self.order
        var = _VAR_SWAP.get(self.var, self.var)
        ghat = PowerSeries((Fraction(0), Fraction(0)) + g[2:], var)
        h = PowerSeries.identity(m, var) / g[1]
        t = PowerSeries.identity(m, var)
        for _ in range(m):
            h = (t - ghat.compose(h)) / g[1]
        return h

    def diff_d(self) -> PowerSeries:
        """The operator t*d/dt: multiplies coefficient n by n."""
        return PowerSeries(
            tuple(Fraction(n) * c for n, c in enumerate(self.coeffs)), self.var
        )

    def shift_down(self, k: int) -> PowerSeries:
        """Exact division by t^k; the first k coefficients must vanish."""
        if k < 0:
            raise SeriesError("shift amount must be nonnegative")
        if k == 0:
            return self
        if k > self.order:
            raise ValuationError(f"cannot shift down by {k}: order is {self.order}")
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValuationError(
                f"cannot shift down by {k}: valuation is {self.valuation()}"
            )
        return PowerSeries(self.coeffs[k:], self.var)

    def shift_up(self, k: int) -> PowerSeries:
        """Multiplication by t^k; raises the truncation order by k."""
        if k < 0:
            raise SeriesError("shift amount must be nonnegative")
        return PowerSeries((Fraction(0),) * k + self.coeffs, self.var)

    def truncate(self, order: int) -> PowerSeries:
        if order < 0:
            raise SeriesError("truncation order must be nonnegative")
        if order >= self.order:
            return self
        return PowerSeries(self.coeffs[: order + 1], self.var)

    def with_var(self, var: str) -> PowerSeries:
        return PowerSeries(self.coeffs, var)

    # ------------------------------------------------------------------
    # serialization: coefficients as "p/q" strings plus the order
    # ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "coeffs": [str(c) for c in self.coeffs],
            "order": self.order,
            "var": self.var,
        }

    @staticmethod
    def from_json_dict(doc: dict) -> PowerSeries:
        coeffs = tuple(Fraction(c) for c in doc["coeffs"])
        if len(coeffs) != doc["order"] + 1:
            raise SeriesError("series document order does not match coefficient count")
        return PowerSeries(coeffs, doc.get("var", "q"))

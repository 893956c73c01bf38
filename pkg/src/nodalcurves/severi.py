"""Generalized Severi degrees of the plane via the Caporaso-Harris recursion.

N(d, delta; alpha, beta) is the number of reduced (possibly reducible)
plane curves of degree d with delta nodes, not containing a fixed line L,
with prescribed contact to L: alpha[m] branches of contact order m at
assigned points of L and beta[m] at unassigned points, passing through the
appropriate number of general points.  Admissibility demands
I(alpha) + I(beta) = d, where I is the multiplicity-weighted size.
Contact orders are counted branch by branch on the normalization, so e.g. a
node lying on L contributes two order-one contacts, not one of order two.

The recursion has two groups of terms:

  N(d, delta; alpha, beta)
    = sum_{m: beta[m] > 0} m * N(d, delta; alpha + e_m, beta - e_m)
    + sum_{alpha' <= alpha, beta' >= beta, I(alpha') + I(beta') = d - 1}
        prod_m m^(beta'[m] - beta[m])
        * binom(alpha, alpha') * binom(beta', beta)
        * N(d - 1, delta'; alpha', beta')

with delta' = delta + |beta' - beta| - (d - 1); terms with delta' < 0 are
dropped.  The base case is degree one: 1 when delta = 0, else 0.  Writing
E for the excess sum_parts (m - 1) of beta' - beta, one has
delta' = delta - I(alpha') - I(beta) - E, which both proves that the
cogenus never increases and prunes the enumeration: only alpha' and new
contact multisets of total excess at most delta - I(alpha') - I(beta) can
contribute.

Evaluation is memoized in a SeveriTable.  Values are arbitrary-precision
integers; entries are write-once and recomputation must reproduce the
identical value, so results are bit-identical no matter how concurrent
callers are scheduled.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .series import PowerSeries

CACHE_FORMAT_VERSION = "severi-cache-1"


class ProfileWeightMismatchError(ValueError):
    """The tangency profiles do not add up to the degree."""


class AmplenessThresholdError(ValueError):
    """A requested coefficient violates the d >= 5r - 1 safety threshold."""


# ----------------------------------------------------------------------
# tangency profiles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TangencyProfile:
    """A finite multiset of contact multiplicities, stored as (m, count) pairs.

    Pairs are kept with multiplicities ascending and counts positive, so the
    representation is canonical and profiles can key dictionaries.
    """

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 0
        for m, c in self.pairs:
            if m <= last:
                raise ProfileWeightMismatchError("multiplicities must be ascending and >= 1")
            if c <= 0:
                raise ProfileWeightMismatchError("zero counts are never stored")
            last = m

    @staticmethod
    def empty() -> TangencyProfile:
        return _EMPTY_PROFILE

    @staticmethod
    def simple(n: int) -> TangencyProfile:
        """n transverse contacts: the profile {1: n}."""
        if n < 0:
            raise ProfileWeightMismatchError("negative count")
        return TangencyProfile(((1, n),)) if n else _EMPTY_PROFILE

    @staticmethod
    def of(counts: dict[int, int]) -> TangencyProfile:
        items = tuple(sorted((m, c) for m, c in counts.items() if c != 0))
        return TangencyProfile(items)

    @property
    def weight(self) -> int:
        """I: the multiplicity-weighted total."""
        return sum(m * c for m, c in self.pairs)

    @property
    def size(self) -> int:
        """The number of contacts, all multiplicities together."""
        return sum(c for _, c in self.pairs)

    def count(self, m: int) -> int:
        for mm, c in self.pairs:
            if mm == m:
                return c
        return 0

    def add(self, m: int, k: int = 1) -> TangencyProfile:
        counts = dict(self.pairs)
        counts[m] = counts.get(m, 0) + k
        return TangencyProfile.of(counts)

    def remove(self, m: int, k: int = 1) -> TangencyProfile:
        if self.count(m) < k:
            raise ProfileWeightMismatchError(f"cannot remove {k} contacts of order {m}")
        return self.add(m, -k)

    def merge(self, other: TangencyProfile) -> TangencyProfile:
        counts = dict(self.pairs)
        for m, c in other.pairs:
            counts[m] = counts.get(m, 0) + c
        return TangencyProfile.of(counts)

    def sub_profiles(self, max_weight: int | None = None):
        """All profiles <= self, optionally with weight capped; canonical order."""
        cap = self.weight if max_weight is None else max_weight
        if cap < 0:
            return
        ms = [m for m, _ in self.pairs]
        cs = [c for _, c in self.pairs]

        def rec(i: int, budget: int, acc: list[tuple[int, int]]):
            if i == len(ms):
                yield TangencyProfile(tuple(acc))
                return
            m, c = ms[i], cs[i]
            for take in range(0, min(c, budget // m) + 1):
                if take:
                    acc.append((m, take))
                yield from rec(i + 1, budget - m * take, acc)
                if take:
                    acc.pop()

        yield from rec(0, cap, [])

    def tokens(self) -> str:
        return " ".join(f"{m}^{c}" for m, c in self.pairs) if self.pairs else "-"

    @staticmethod
    def parse(text: str) -> TangencyProfile:
        text = text.strip()
        if text in ("", "-"):
            return _EMPTY_PROFILE
        counts: dict[int, int] = {}
        for token in text.replace(",", " ").split():
            if "^" in token:
                m_str, c_str = token.split("^")
                m, c = int(m_str), int(c_str)
            else:
                m, c = int(token), 1
            counts[m] = counts.get(m, 0) + c
        return TangencyProfile.of(counts)


_EMPTY_PROFILE = TangencyProfile(())


def binom_product(larger: TangencyProfile, smaller: TangencyProfile) -> int:
    """prod_m binom(larger[m], smaller[m]); zero if smaller is not contained."""
    total = 1
    for m, c in smaller.pairs:
        total *= math.comb(larger.count(m), c)
    return total


# ----------------------------------------------------------------------
# keys and the memo table
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SeveriKey:
    d: int
    delta: int
    alpha: TangencyProfile
    beta: TangencyProfile

    def __post_init__(self):
        if self.d < 1:
            raise ProfileWeightMismatchError("degree must be positive")
        if self.alpha.weight + self.beta.weight != self.d:
            raise ProfileWeightMismatchError(
                f"profile weight mismatch: I(alpha) + I(beta) = "
                f"{self.alpha.weight + self.beta.weight} but d = {self.d}"
            )

    @staticmethod
    def plain(d: int, delta: int) -> SeveriKey:
        return SeveriKey(d, delta, TangencyProfile.empty(), TangencyProfile.simple(d))

    def canonical(self) -> str:
        return f"{self.d}:{self.delta}:{self.alpha.tokens()}|{self.beta.tokens()}"

    @staticmethod
    def from_canonical(text: str) -> SeveriKey:
        d_str, delta_str, profiles = text.split(":")
        alpha_str, beta_str = profiles.split("|")
        return SeveriKey(
            int(d_str),
            int(delta_str),
            TangencyProfile.parse(alpha_str),
            TangencyProfile.parse(beta_str),
        )


class SeveriTable:
    """Write-once memo table; concurrent reads, serialized idempotent writes.

    hits and misses count top-level queries: a hit is a query answered from
    the table, a miss is one that triggered computation.
    """

    def __init__(self):
        self._entries: dict[SeveriKey, int] = {}
        self._lock = threading.RLock()
        self._persisted: set[SeveriKey] = set()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: SeveriKey) -> bool:
        return key in self._entries

    def get(self, key: SeveriKey) -> int:
        return self._entries[key]

    def put(self, key: SeveriKey, value: int):
        with self._lock:
            existing = self._entries.get(key)
            if existing is None:
                self._entries[key] = value
            elif existing != value:
                raise AssertionError(
                    f"memo entry for {key.canonical()} recomputed to a different value"
                )

    def clear(self):
        with self._lock:
            self._entries.clear()
            self._persisted.clear()
            self.hits = 0
            self.misses = 0

    def stats(self) -> dict:
        return {"entries": len(self._entries), "hits": self.hits, "misses": self.misses}

    # -- optional append-only disk cache --------------------------------

    @staticmethod
    def load(path) -> SeveriTable:
        """Load a cache file; entries are trusted only on format-version match."""
        table = SeveriTable()
        try:
            with open(path, "r", encoding="ascii") as fh:
                lines = fh.read().splitlines()
        except FileNotFoundError:
            return table
        if not lines:
            return table
        header = json.loads(lines[0])
        if header.get("format") != CACHE_FORMAT_VERSION:
            return table
        for line in lines[1:]:
            if not line.strip():
                continue
            doc = json.loads(line)
            key = SeveriKey.from_canonical(doc["key"])
            table.put(key, int(doc["value"]))
            table._persisted.add(key)
        return table

    def save(self, path):
        """Append entries not yet on disk; writes the header on a fresh file."""
        with self._lock:
            fresh = True
            try:
                with open(path, "r", encoding="ascii") as fh:
                    first = fh.readline()
                if first:
                    header = json.loads(first)
                    if header.get("format") != CACHE_FORMAT_VERSION:
                        raise ValueError(
                            f"cache file {path} has format {header.get('format')!r}; refusing to append"
                        )
                    fresh = False
            except FileNotFoundError:
                pass
            with open(path, "a", encoding="ascii") as fh:
                if fresh:
                    fh.write(json.dumps({"format": CACHE_FORMAT_VERSION}) + "\n")
                for key in sorted(self._entries, key=SeveriKey.canonical):
                    if key in self._persisted:
                        continue
                    fh.write(
                        json.dumps({"key": key.canonical(), "value": str(self._entries[key])})
                        + "\n"
                    )
                    self._persisted.add(key)


# ----------------------------------------------------------------------
# the recursion
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n, parts descending, in deterministic order."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining: int, largest: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, largest), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def _new_contacts(weight: int, max_excess: int):
    """Profiles gamma with I(gamma) = weight and excess <= max_excess.

    Yields (gamma, excess).  A profile of excess e is 1^k joined with parts
    (nu_i + 1) for a partition nu of e, so only tiny partitions are touched.
    """
    for excess in range(0, max_excess + 1):
        for nu in _partitions(excess):
            ones = weight - excess - len(nu)
            if ones < 0:
                continue
            counts: dict[int, int] = {}
            if ones:
                counts[1] = ones
            for part in nu:
                counts[part + 1] = counts.get(part + 1, 0) + 1
            yield TangencyProfile.of(counts), excess


def _expand(key: SeveriKey) -> tuple[int, list[tuple[int, SeveriKey]]]:
    """Base value plus the weighted subcalls of one recursion step."""
    d, delta, alpha, beta = key.d, key.delta, key.alpha, key.beta
    if d == 1:
        return (1 if delta == 0 else 0), []
    deps: list[tuple[int, SeveriKey]] = []
    # promote one unassigned contact to an assigned one
    for m, _ in beta.pairs:
        sub = SeveriKey(d, delta, alpha.add(m), beta.remove(m))
        assert (sub.d, sub.beta.size) < (d, beta.size)
        deps.append((m, sub))
    # drop the degree by one
    ib = beta.weight
    for alpha_p in alpha.sub_profiles(max_weight=min(delta - ib, d - 1 - ib)):
        slack = delta - alpha_p.weight - ib
        weight_new = d - 1 - alpha_p.weight - ib
        ca = binom_product(alpha, alpha_p)
        for gamma, excess in _new_contacts(weight_new, slack):
            delta_p = slack - excess
            assert 0 <= delta_p <= delta
            beta_p = beta.merge(gamma)
            coeff = ca * binom_product(beta_p, beta)
            for m, c in gamma.pairs:
                coeff *= m**c
            sub = SeveriKey(d - 1, delta_p, alpha_p, beta_p)
            assert sub.d < d
            deps.append((coeff, sub))
    return 0, deps


def severi_relative(key: SeveriKey, table: SeveriTable) -> int:
    """N(d, delta; alpha, beta), memoized; negative delta gives 0 by convention."""
    if key.delta < 0:
        return 0
    if key in table:
        table.hits += 1
        return table.get(key)
    table.misses += 1
    expansions: dict[SeveriKey, tuple[int, list[tuple[int, SeveriKey]]]] = {}
    stack = [key]
    while stack:
        top = stack[-1]
        if top in table:
            stack.pop()
            continue
        cached = expansions.get(top)
        if cached is None:
            cached = _expand(top)
            expansions[top] = cached
        base, deps = cached
        missing = [sub for _, sub in deps if sub not in table]
        if missing:
            stack.extend(missing)
            continue
        value = base + sum(c * table.get(sub) for c, sub in deps)
        table.put(top, value)
        stack.pop()
    return table.get(key)


def severi(d: int, delta: int, table: SeveriTable) -> int:
    """The plain Severi degree N(d, delta): no assigned contacts, all transverse."""
    if d < 1:
        raise ProfileWeightMismatchError("degree must be positive")
    if delta < 0:
        return 0
    return severi_relative(SeveriKey.plain(d, delta), table)


def check_threshold(d: int, order: int, unsafe: bool):
    """Enforce d >= 5r - 1 for every r <= order unless explicitly overridden."""
    if unsafe:
        return
    for r in range(1, order + 1):
        if d < 5 * r - 1:
            raise AmplenessThresholdError(
                f"degree {d} is below the safety threshold 5r-1 = {5 * r - 1} for r = {r}; "
                f"pass unsafe to override"
            )


def p2_series(d: int, order: int, table: SeveriTable, unsafe: bool = False) -> PowerSeries:
    """sum_{r <= order} N(d, r) x^r, guarded by the ampleness threshold."""
    check_threshold(d, order, unsafe)
    return PowerSeries.of([severi(d, r, table) for r in range(order + 1)], "x")


# ----------------------------------------------------------------------
# node polynomials
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class NodePolyReport:
    """Exact interpolation check that d -> N(d, delta) is polynomial of degree 2*delta."""

    delta: int
    window: tuple[int, ...]
    values: tuple[int, ...]
    coefficients: tuple[Fraction, ...]  # ascending powers of d
    fits: bool
    mismatches: tuple[tuple[int, Fraction, int], ...] = field(default_factory=tuple)

    def predict(self, d: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * d + c
        return acc


def node_poly_check(delta: int, degrees, table: SeveriTable) -> NodePolyReport:
    """Fit the degree-2*delta polynomial through the first 2*delta+1 window
    values and verify it predicts every remaining value exactly."""
    window = tuple(degrees)
    needed = 2 * delta + 2
    if len(window) < needed:
        raise ValueError(f"window too short: need at least {needed} degrees, got {len(window)}")
    values = tuple(severi(d, delta, table) for d in window)
    k = 2 * delta + 1
    vandermonde = [[Fraction(d) ** j for j in range(k)] for d in window[:k]]
    coeffs = tuple(linalg.solve(vandermonde, [Fraction(v) for v in values[:k]]))
    report = NodePolyReport(delta, window, values, coeffs, fits=True)
    mismatches = []
    for d, v in zip(window[k:], values[k:]):
        predicted = report.predict(d)
        if predicted != v:
            mismatches.append((d, predicted, v))
    if mismatches:
        report = NodePolyReport(delta, window, values, coeffs, False, tuple(mismatches))
    return report

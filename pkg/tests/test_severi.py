"""Caporaso-Harris recursion: classical counts, tangency cases, node polynomials."""

import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from nodalcurves import (
    AmplenessThresholdError,
    PowerSeries,
    ProfileWeightMismatchError,
    SeveriKey,
    SeveriTable,
    TangencyProfile,
    node_poly_check,
    p2_series,
    severi,
    severi_relative,
)

F = Fraction
EMPTY = TangencyProfile.empty()


# ----------------------------------------------------------------------
# profiles and keys
# ----------------------------------------------------------------------


def test_profile_canonical_form():
    p = TangencyProfile.of({2: 1, 1: 3, 5: 0})
    assert p.pairs == ((1, 3), (2, 1))
    assert p.weight == 5
    assert p.size == 4


def test_profile_rejects_nonpositive_counts():
    with pytest.raises(ProfileWeightMismatchError):
        TangencyProfile(((1, 0),))
    with pytest.raises(ProfileWeightMismatchError):
        TangencyProfile(((2, 1), (1, 1)))  # not ascending


def test_profile_add_remove():
    p = TangencyProfile.simple(3)
    q = p.add(2)
    assert q.pairs == ((1, 3), (2, 1))
    assert q.remove(1).pairs == ((1, 2), (2, 1))
    assert q.remove(2).pairs == ((1, 3),)
    with pytest.raises(ProfileWeightMismatchError):
        p.remove(2)


def test_profile_parse_tokens_roundtrip():
    for text, pairs in [("1^3 2^1", ((1, 3), (2, 1))), ("2", ((2, 1),)), ("-", ())]:
        p = TangencyProfile.parse(text)
        assert p.pairs == pairs
        assert TangencyProfile.parse(p.tokens()) == p


def test_sub_profiles_enumeration():
    p = TangencyProfile.of({1: 2, 2: 1})
    subs = list(p.sub_profiles())
    assert len(subs) == 6  # (0..2 ones) x (0..1 twos)
    assert len(set(subs)) == 6
    capped = list(p.sub_profiles(max_weight=1))
    assert {s.weight for s in capped} <= {0, 1}
    assert len(capped) == 2


def test_key_admissibility():
    with pytest.raises(ProfileWeightMismatchError, match="profile weight mismatch"):
        SeveriKey(3, 1, EMPTY, TangencyProfile.simple(2))


def test_key_canonical_roundtrip():
    key = SeveriKey(4, 2, TangencyProfile.of({1: 1}), TangencyProfile.of({1: 1, 2: 1}))
    text = key.canonical()
    assert text == "4:2:1^1|1^1 2^1"
    assert SeveriKey.from_canonical(text) == key


# ----------------------------------------------------------------------
# the recursion against classical values
# ----------------------------------------------------------------------


def test_base_cases(table):
    assert severi_relative(SeveriKey(1, 0, EMPTY, TangencyProfile.simple(1)), table) == 1
    assert severi_relative(SeveriKey(1, 1, EMPTY, TangencyProfile.simple(1)), table) == 0
    assert severi_relative(SeveriKey(1, -1, EMPTY, TangencyProfile.simple(1)), table) == 0


def test_smooth_count_is_one(table):
    for d in range(1, 9):
        assert severi(d, 0, table) == 1


def test_negative_cogenus_is_zero(table):
    assert severi(5, -1, table) == 0


def test_classical_one_node_counts(table):
    assert severi(2, 1, table) == 3
    assert severi(3, 1, table) == 12
    assert severi(4, 1, table) == 27


def test_discriminant_oracle(table):
    for d in range(2, 13):
        assert severi(d, 1, table) == 3 * (d - 1) ** 2


def test_classical_multinode_counts(table):
    # triangles through six points, two-nodal cubics through seven, etc.
    assert severi(3, 2, table) == 21
    assert severi(3, 3, table) == 15
    assert severi(4, 2, table) == 225
    assert severi(4, 3, table) == 675


def test_two_node_closed_form(table):
    for d in range(3, 11):
        expected = F(3, 2) * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11)
        assert severi(d, 2, table) == expected


def test_three_node_closed_form(table):
    for d in range(3, 10):
        expected = (
            F(9, 2) * d**6
            - 27 * d**5
            + F(9, 2) * d**4
            + F(423, 2) * d**3
            - 229 * d**2
            - F(829, 2) * d
            + 525
        )
        assert severi(d, 3, table) == expected


def test_tangency_values_checked_by_hand(table):
    e2 = TangencyProfile.of({2: 1})
    # smooth conics tangent to the line through four points
    assert severi_relative(SeveriKey(2, 0, EMPTY, e2), table) == 2
    # tangent at an assigned point, through three points
    assert severi_relative(SeveriKey(2, 0, e2, EMPTY), table) == 1
    # a line pair cannot be branch-tangent to a general line
    assert severi_relative(SeveriKey(2, 1, EMPTY, e2), table) == 0


def test_determinism_after_clearing():
    first = SeveriTable()
    values = [severi(d, k, first) for d in range(1, 8) for k in range(0, 3)]
    first.clear()
    again = [severi(d, k, first) for d in range(1, 8) for k in range(0, 3)]
    assert values == again


def test_memo_statistics_move():
    local = SeveriTable()
    severi(5, 2, local)
    stats = local.stats()
    assert stats["entries"] > 0 and stats["misses"] >= 1
    severi(5, 2, local)
    assert local.stats()["hits"] > stats["hits"]


def test_parallel_matches_sequential(table):
    pairs = [(d, k) for d in range(2, 11) for k in range(0, 3)]
    sequential = [severi(d, k, table) for d, k in pairs]
    fresh = SeveriTable()
    with ThreadPoolExecutor(max_workers=8) as pool:
        parallel = list(pool.map(lambda p: severi(p[0], p[1], fresh), pairs))
    assert sequential == parallel


def test_recomputation_conflict_is_detected():
    local = SeveriTable()
    key = SeveriKey.plain(2, 1)
    local.put(key, 3)
    local.put(key, 3)  # idempotent
    with pytest.raises(AssertionError):
        local.put(key, 4)


# ----------------------------------------------------------------------
# cache file
# ----------------------------------------------------------------------


def test_cache_save_load_roundtrip(tmp_path):
    local = SeveriTable()
    severi(4, 2, local)
    path = tmp_path / "cache.jsonl"
    local.save(path)
    loaded = SeveriTable.load(path)
    assert len(loaded) == len(local)
    assert severi(4, 2, loaded) == 225
    # appending after more work keeps the file loadable
    severi(5, 2, local)
    local.save(path)
    again = SeveriTable.load(path)
    assert len(again) == len(local)


def test_cache_version_mismatch_is_ignored(tmp_path):
    path = tmp_path / "cache.jsonl"
    path.write_text('{"format": "severi-cache-0"}\n{"key": "2:1:-|1^2", "value": "999"}\n')
    loaded = SeveriTable.load(path)
    assert len(loaded) == 0


# ----------------------------------------------------------------------
# plane series and node polynomials
# ----------------------------------------------------------------------


def test_p2_series_low_order(table):
    assert p2_series(4, 1, table) == PowerSeries.of([1, 27], "x")
    assert p2_series(7, 0, table) == PowerSeries.of([1], "x")


def test_p2_series_degree_nine(table):
    series = p2_series(9, 2, table)
    assert series.coeff(1) == 192


def test_p2_series_threshold(table):
    with pytest.raises(AmplenessThresholdError, match="r = 2"):
        p2_series(5, 2, table)
    unsafe = p2_series(5, 2, table, unsafe=True)
    assert unsafe.coeff(1) == 48


def test_node_poly_delta_one(table):
    report = node_poly_check(1, range(2, 7), table)
    assert report.fits
    assert report.coefficients == (F(3), F(-6), F(3))


def test_node_poly_delta_zero(table):
    report = node_poly_check(0, range(1, 5), table)
    assert report.fits
    assert report.coefficients == (F(1),)


def test_node_poly_delta_two(table):
    report = node_poly_check(2, range(4, 11), table)
    assert report.fits
    assert report.predict(12) == severi(12, 2, table)


def test_node_poly_window_too_short(table):
    with pytest.raises(ValueError, match="window too short"):
        node_poly_check(2, range(4, 9), table)


def test_overlapping_concurrent_computation():
    sequential = SeveriTable()
    expected = severi(12, 3, sequential)
    shared = SeveriTable()
    jobs = [(12, 3)] * 4 + [(d, k) for d in range(2, 12) for k in range(0, 4)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda p: severi(p[0], p[1], shared), jobs))
    assert results[:4] == [expected] * 4
    for (d, k), value in zip(jobs, results):
        assert value == severi(d, k, sequential)


# ----------------------------------------------------------------------
# brute-force oracle: an independent implementation of the recursion
# ----------------------------------------------------------------------


def _partitions_of(n):
    if n == 0:
        yield ()
        return
    def rec(remaining, largest, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        for part in range(min(remaining, largest), 0, -1):
            acc.append(part)
            yield from rec(remaining - part, part, acc)
            acc.pop()
    yield from rec(n, n, [])


def _profile_of_parts(parts):
    counts = {}
    for p in parts:
        counts[p] = counts.get(p, 0) + 1
    return TangencyProfile.of(counts)


def _contains(larger, smaller):
    return all(larger.count(m) >= c for m, c in smaller.pairs)


def _binom(larger, smaller):
    from math import comb

    total = 1
    for m, c in smaller.pairs:
        total *= comb(larger.count(m), c)
    return total


def _naive(key, memo):
    """Textbook recursion with no pruning: enumerate every beta' >= beta of
    the right weight from raw partitions, drop negative cogenus terms."""
    if key in memo:
        return memo[key]
    d, delta, alpha, beta = key.d, key.delta, key.alpha, key.beta
    if delta < 0:
        return 0
    if d == 1:
        value = 1 if delta == 0 else 0
        memo[key] = value
        return value
    total = 0
    for m, _ in beta.pairs:
        total += m * _naive(SeveriKey(d, delta, alpha.add(m), beta.remove(m)), memo)
    for alpha_p in alpha.sub_profiles():
        w = d - 1 - alpha_p.weight
        if w < 0:
            continue
        for parts in _partitions_of(w):
            beta_p = _profile_of_parts(parts)
            if not _contains(beta_p, beta):
                continue
            gained = beta_p.size - beta.size
            delta_p = delta + gained - (d - 1)
            if delta_p < 0:
                continue
            coeff = _binom(alpha, alpha_p) * _binom(beta_p, beta)
            for m, c in beta_p.pairs:
                coeff *= m ** (c - beta.count(m))
            total += coeff * _naive(SeveriKey(d - 1, delta_p, alpha_p, beta_p), memo)
    memo[key] = total
    return total


def test_new_contact_enumeration_matches_raw_partitions():
    from nodalcurves.severi import _new_contacts

    for weight in range(0, 9):
        for cap in range(0, 5):
            generated = {(g, e) for g, e in _new_contacts(weight, cap)}
            expected = set()
            for parts in _partitions_of(weight):
                profile = _profile_of_parts(parts)
                excess = profile.weight - profile.size
                if excess <= cap:
                    expected.add((profile, excess))
            assert generated == expected


def test_recursion_matches_naive_implementation(table):
    memo = {}
    for d in range(1, 6):
        for delta in range(0, 4):
            key = SeveriKey.plain(d, delta)
            assert severi_relative(key, table) == _naive(key, memo)


def test_recursion_matches_naive_on_tangency_keys(table):
    import random

    rng = random.Random(5)
    memo = {}
    for _ in range(60):
        d = rng.randint(1, 5)
        delta = rng.randint(0, 3)
        parts = []
        remaining = d
        while remaining > 0:
            p = rng.randint(1, min(3, remaining))
            parts.append(p)
            remaining -= p
        split = rng.randint(0, len(parts))
        alpha = _profile_of_parts(parts[:split])
        beta = _profile_of_parts(parts[split:])
        key = SeveriKey(d, delta, alpha, beta)
        assert severi_relative(key, table) == _naive(key, memo)

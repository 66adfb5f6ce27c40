"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` to see the lines
next to the timing figures.
"""

import json
import time
from dataclasses import replace

import numpy as np
import pytest

import oracles
from ucsets import (
    SetFamily,
    check_conjecture_10,
    check_frankl,
    check_simplex,
    check_strong,
    minimal_r,
    r_tuple_intersection_average,
    symdiff_identity,
    to_intersection_family,
    to_union_family,
)
from ucsets.conjectures import Verdict
from ucsets.enumeration import SearchConfig, enumerate_reduced_uc, search
from ucsets.lattice import (
    boolean_lattice,
    chain,
    check_conjecture_1,
    diamond,
    family_to_lattice,
    irreducible_filters,
    irreducible_filters_bruteforce,
    pentagon,
    round_trip_isomorphism,
    verify_isomorphism,
)

LABELLED = {1: 1, 2: 3, 3: 32, 4: 1863}
UNLABELLED = {1: 1, 2: 2, 3: 9, 4: 126}
CAMPAIGN = SearchConfig(mode="random", n_min=5, n_max=8, samples=170_000, seed=2024)


def verdict_line(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def random_corpus(seed=13, count=10_000):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, 11))
        m = int(rng.integers(1, min(20, 1 << n) + 1))
        rows = rng.choice(1 << n, size=m, replace=False)
        yield SetFamily(n, tuple(int(r) for r in rows))


@pytest.fixture(scope="module")
def enumerated():
    return [f for n in range(1, 5) for f in enumerate_reduced_uc(n)]


def test_1_r0_counterexample(capsys):
    rows = [[], ["a"], ["b"], ["a", "b"], ["a", "b", "c"]]

    def run():
        f = SetFamily.from_sets(rows, "abc")
        return check_conjecture_10(f, 0), check_conjecture_10(f, 1), minimal_r(f)

    r0, r1, res = run()
    best = min(_timed(run) for _ in range(50))
    ok = (
        (r0.lhs, r0.rhs, r0.verdict) == (14, 15, Verdict.FAILS)
        and (r1.lhs, r1.rhs, r1.verdict) == (38, 35, Verdict.HOLDS_STRICT)
        and res.r == 1
        and best < 1e-3
    )
    verdict_line(capsys, 1, ok, f"r=0 {r0.describe()}, r=1 {r1.describe()}, minimal r={res.r}, {best * 1e6:.0f} µs")


def _timed(fn):
    t = time.perf_counter()
    fn()
    return time.perf_counter() - t


def test_2_symdiff_identity_three_routes(capsys):
    # symdiff_identity raises if the setwise, matrix and column routes differ
    t = time.perf_counter()
    count = 0
    for f in random_corpus():
        ident = symdiff_identity(f)
        assert ident.xnor_sum == ident.xor_sum + ident.delta_sq_sum
        count += 1
    elapsed = time.perf_counter() - t
    verdict_line(capsys, 2, count == 10_000 and elapsed < 10, f"{count} families, {elapsed:.2f} s")


def test_3_strictness_iff_balanced(capsys):
    strict = equal = 0
    for f in random_corpus():
        ident = symdiff_identity(f)
        balanced = all(d == 0 for d in ident.deltas)
        assert (ident.xnor_sum == ident.xor_sum) == balanced
        if balanced:
            equal += 1
        else:
            strict += 1
    # both directions need witnesses, otherwise one side is vacuous
    ok = strict > 0 and equal > 0
    verdict_line(capsys, 3, ok, f"{equal} equality cases all balanced, {strict} strict cases all unbalanced")


def test_4_exhaustive_small_ground_sets(capsys):
    t = time.perf_counter()
    labelled = {n: sum(1 for _ in enumerate_reduced_uc(n, unique=False)) for n in range(1, 5)}
    summary = search(SearchConfig(n_min=1, n_max=4))
    elapsed = time.perf_counter() - t
    by_n = {n: summary.by_n[n] for n in range(1, 5)}
    must = ("4", "11", "12a", "12b", "13", "14a", "14b")
    fails = {c: summary.counts[c]["fails"] for c in must}
    ok = (
        labelled == LABELLED
        and by_n == UNLABELLED
        and not any(fails.values())
        and not summary.reinforcement_failures
        and not any(summary.equality_non_boolean[c] for c in must)
        and summary.failures == []
        and elapsed < 300
    )
    verdict_line(
        capsys, 4, ok,
        f"labelled {labelled}, classes {by_n}, failures {sum(fails.values())}, {elapsed:.2f} s",
    )


def test_5_formulations_agree(capsys, enumerated):
    checked = 0
    for f in enumerated:
        a, b = check_frankl(f), check_frankl(f, route="matrix")
        assert (a.lhs, a.rhs, a.verdict, a.reinforcement_ok) == (b.lhs, b.rhs, b.verdict, b.reinforcement_ok)
        rep = check_strong(f)
        for s in "ab":
            assert (rep["12" + s].lhs, rep["12" + s].rhs) == (rep["14" + s].lhs, rep["14" + s].rhs)
        counts = oracles.count_in(oracles.members(f), f.labels)
        for k, x in enumerate(f.labels):
            e = [0] * f.n
            e[k] = 1
            assert check_simplex(f, e).lhs == 2 * counts[x]
        checked += 1
    verdict_line(capsys, 5, checked == 138, f"{checked} families: 4 = 6, 12 = 14, simplex vertices = column sums")


def test_6_r_tuple_oracle(capsys, enumerated):
    checked = 0
    for f in enumerated:
        if f.m > 8:
            continue
        sets, S = oracles.members(f), oracles.ground(f)
        for r in (1, 2, 3):
            brute = r_tuple_intersection_average(f, r, "bruteforce")
            assert brute == r_tuple_intersection_average(f, r, "column_power")
            assert brute == oracles.tuple_average(sets, S, r)
            checked += 1
    verdict_line(capsys, 6, checked > 0, f"{checked} (family, r) pairs with m <= 8")


def test_7_lattice_catalog(capsys):
    catalog = {f"chain{k}": chain(k) for k in range(2, 8)}
    catalog.update({f"B{k}": boolean_lattice(k) for k in (1, 2, 3)})
    catalog.update(N5=pentagon(), M3=diamond())
    for name, L in catalog.items():
        assert set(irreducible_filters_bruteforce(L)) == set(irreducible_filters(L)), name
        mapping = round_trip_isomorphism(L, "union")
        assert verify_isomorphism(L, family_to_lattice(to_union_family(L)), mapping), name
        c1 = check_conjecture_1(L)
        c3 = check_frankl(to_intersection_family(L), "intersection")
        assert (c1.lhs, c1.rhs, c1.verdict) == (c3.lhs, c3.rhs, c3.verdict), name
    n5, b2 = check_conjecture_1(pentagon()), check_conjecture_1(boolean_lattice(2))
    ok = (n5.lhs, n5.rhs, n5.verdict) == (4, 5, Verdict.HOLDS_STRICT) and b2.verdict is Verdict.HOLDS_EQUALITY
    verdict_line(capsys, 7, ok, f"{len(catalog)} lattices; N5 {n5.describe()}, B2 {b2.describe()}")


@pytest.mark.slow
def test_8_random_campaign(capsys, tmp_path):
    t = time.perf_counter()
    first = search(replace(CAMPAIGN, output=str(tmp_path / "a")))
    second = search(replace(CAMPAIGN, output=str(tmp_path / "b")))
    elapsed = time.perf_counter() - t
    same = (tmp_path / "a" / "summary.json").read_bytes() == (tmp_path / "b" / "summary.json").read_bytes()
    data = json.loads((tmp_path / "a" / "summary.json").read_text())
    logged, logged_nb = data["min_slack_12"], data["min_slack_12_non_boolean"]
    ok = (
        first.families >= 100_000
        and first.strong_failures == 0
        and first.to_json() == second.to_json()
        and same
        and logged is not None
        and elapsed < 600
    )
    verdict_line(
        capsys, 8, ok,
        f"{first.families} families from {first.draws} draws, by n {dict(sorted(first.by_n.items()))}, "
        f"12/14 failures {first.strong_failures}, min slack {logged['slack'] if logged else None} "
        f"({logged_nb['slack'] if logged_nb else None} excluding powersets), "
        f"two identical runs in {elapsed:.0f} s",
    )

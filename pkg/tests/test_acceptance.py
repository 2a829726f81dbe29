"""Acceptance gate: every criterion recomputed and compared exactly.

Each test records one result line in ``RESULTS``; ``conftest.py`` prints them
at the end of the session, and running this file as a script prints them too.
"""

import time
from fractions import Fraction
from math import factorial

import pytest

from hilbclass import cli
from hilbclass import closed_forms as cf
from hilbclass.fock import normalize
from hilbclass.partitions import partitions_of
from hilbclass.recursions import Recursions
from hilbclass.series import WeightSeries, divide_by_unit, extract_linear, series_log
from hilbclass.surface import C, D, I, K, ZERO, Mono, Profile
from hilbclass.tables import diff, load_golden, render_rational

RESULTS: dict[int, str] = {}


def record(number, title, failures, elapsed, budget):
    if elapsed > budget:
        failures = [*failures, f"runtime {elapsed:.2f}s exceeds {budget}s"]
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} {status}: {title} ({elapsed:.2f}s)"
    if failures:
        line += "\n" + "\n".join(f"    {f}" for f in failures)
    RESULTS[number] = line
    assert not failures, line


def golden_failures(name, table):
    return [str(m) for m in diff(table, load_golden(name))]


def compare(label, expected, actual):
    if expected != actual:
        return [f"{label}: expected {render_rational(expected)}, got {render_rational(actual)}"]
    return []


@pytest.fixture(scope="module")
def taut_table():
    start = time.perf_counter()
    table = cli.taut_ch_table(4)
    return table, time.perf_counter() - start


def test_criterion_1_canonical_columns(taut_table):
    table, elapsed = taut_table
    start = time.perf_counter()
    failures = golden_failures("taut_ch_canonical", table)
    golden = load_golden("taut_ch_canonical")
    if len(golden.entries) != 22:
        failures.append(f"golden holds {len(golden.entries)} entries, expected 22")
    for lam, mono, expected in (((2,), Mono.K, Fraction(-1, 2)), ((3, 1), Mono.K2, Fraction(-1, 24) * Fraction(5, 6))):
        label = f"{list(lam)} {mono.label}"
        if not any(label in f for f in failures):
            failures += compare(label, expected, table.get(lam, mono))
    record(1, "canonical-class columns of ch(O^[n]) to weight 4", failures,
           elapsed + time.perf_counter() - start, 120)


def test_criterion_2_lqw_closed_form(taut_table):
    table, elapsed = taut_table
    failures = []
    for n in range(1, 5):
        for lam in partitions_of(n):
            failures += compare(f"alpha {lam}", cf.lqw_alpha(lam), table.get(lam, Mono.I))
            failures += compare(f"beta {lam}", cf.lqw_beta(lam), table.get(lam, Mono.E))
    record(2, "alpha/beta columns of ch(O^[n]) match the closed form", failures, elapsed, 120)


def test_criterion_3_rank_two_table():
    start = time.perf_counter()
    table = cli.taut_chern_table(2, 4)
    failures = golden_failures("chern_rank2", table)
    if len(load_golden("chern_rank2").entries) != 11 * 8:
        failures.append("golden does not cover 11 rows x 8 classes")
    record(3, "rank-2 Chern class table to weight 4", failures, time.perf_counter() - start, 300)


def test_criterion_4_degree_zero_tables():
    start = time.perf_counter()
    failures = []
    for r in (2, 3, 4, 5):
        golden = load_golden(f"chern_trivial_rank{r}")
        table = cli.taut_chern_table(r, golden.max_weight, "trivial")
        failures += [f"rank {r} {m}" for m in diff(table, golden)]
    record(4, "degree-0 Chern class tables, ranks 2-5", failures, time.perf_counter() - start, 600)


def test_criterion_5_rank_one_lehn():
    start = time.perf_counter()
    table = cli.taut_chern_table(1, 5)
    failures = []
    for n in range(1, 6):
        for lam in partitions_of(n):
            for mono in Mono:
                single = len(lam) == 1 and mono in (Mono.I, Mono.C)
                expected = Fraction((-1) ** (n - 1), n) if single else Fraction(0)
                failures += compare(f"{lam} {mono.label}", expected, table.get(lam, mono))
    record(5, "rank-1 Chern class series to weight 5", failures, time.perf_counter() - start, 60)


def test_criterion_6_tangent_table():
    start = time.perf_counter()
    table = cli.tangent_ch_table(3)
    failures = golden_failures("tangent_ch", table)
    if len(load_golden("tangent_ch").entries) != 24:
        failures.append("golden does not hold 24 entries")
    failures += compare("gamma [2,1]", Fraction(13, 12), table.get((2, 1), Mono.K))
    failures += compare("delta [1,1,1]", Fraction(53, 270), table.get((1, 1, 1), Mono.K2))
    for k in range(1, 4):
        expected = Fraction(2, factorial(k)) if k % 2 else Fraction(0)
        failures += compare(f"alpha ({k})", expected, table.get((k,), Mono.I))
    record(6, "tangent Chern character table to weight 3", failures, time.perf_counter() - start, 300)


def test_criterion_7_psi_series():
    start = time.perf_counter()
    failures = []
    for phi, oracle in (
        (cf.phi_chern(1), cf.catalan_coeff),
        (cf.phi_segre(), cf.segre_coeff),
        (cf.phi_sqrt_todd(), cf.sqrt_todd_coeff),
    ):
        got = cf.psi_tangent(phi, 15)
        for k in range(1, 16):
            failures += compare(f"{oracle.__name__} k={k}", oracle(k), got[k - 1])
    for r in range(1, 6):
        got = cf.psi_taut(cf.phi_chern(r), 10)
        for k in range(1, 11):
            failures += compare(f"trivial_chern r={r} k={k}", cf.trivial_chern(r, k), got[k - 1])
    record(7, "psi-series closed forms", failures, time.perf_counter() - start, 1)


def test_criterion_8_property_suites():
    from test_fock import CORPUS

    start = time.perf_counter()
    failures = []
    # (a) grading and strategy independence on the generated corpus
    if len(CORPUS) < 100:
        failures.append("corpus holds fewer than 100 expressions")
    for k, (expr, weight) in enumerate(CORPUS):
        ref = normalize(expr)
        if not ref.weights() <= {weight}:
            failures.append(f"(a) expression {k} leaves weight {weight}")
        for strategy in ("rightmost", "leftmost", "random"):
            if normalize(expr, strategy=strategy, seed=k) != ref:
                failures.append(f"(a) expression {k} depends on strategy {strategy}")
    # (b) linear extraction of ch-series, (d) no unpaired markers anywhere
    for profile in Profile:
        eng = Recursions(profile)
        for f in (lambda n: eng.ch_taut(I, n), lambda n: eng.ch_taut(K, n), eng.ch_tangent):
            for w in (3, 4):
                try:
                    extract_linear(divide_by_unit(WeightSeries.from_function(f, w)))
                except Exception as exc:
                    failures.append(f"(b/d) {profile.value} weight {w}: {exc!r}")
        # (c) logs of Chern class series are generator-linear
        for r, c1, c2 in ((1, C, ZERO), (2, C, D), (3, ZERO, ZERO)):
            try:
                log = series_log(WeightSeries.from_function(lambda n: eng.chern_taut(r, c1, c2, n), 4))
                extract_linear(log)
            except Exception as exc:
                failures.append(f"(c/d) {profile.value} rank {r}: {exc!r}")
        # (e) rank and unit laws
        for n in range(1, 5):
            ch0 = sum(c for m, c in eng.ch_taut(I, n).items() if sum(g.degree for g in m) == 0)
            c0 = sum(c for m, c in eng.chern_taut(2, C, D, n).items() if sum(g.degree for g in m) == 0)
            if ch0 != Fraction(n, factorial(n)) or c0 != Fraction(1, factorial(n)):
                failures.append(f"(e) {profile.value} n={n}: ch0={ch0}, c0={c0}")
    # (f) symplectic vanishing under K = 0
    sym = cli.tangent_ch_table(3, Profile.K3_ABELIAN)
    for n in range(1, 4):
        for lam in partitions_of(n):
            if (lam.weight + lam.length) % 2:
                for mono in (Mono.I, Mono.E):
                    failures += compare(f"(f) {lam} {mono.label}", Fraction(0), sym.get(lam, mono))
    record(8, "structural property suites", failures, time.perf_counter() - start, 300)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

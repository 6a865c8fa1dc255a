"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (visible with `pytest -s` or on failure).

Criterion 1 (family counts) pins an external reference value of 25 for
the n = 4 family; exhaustive enumeration and an independent definitional
brute force both give 27, so that single case is expected to fail.  The
assertion is kept as stated rather than silently corrected.
"""

import itertools

import numpy as np
import pytest

from noisybool.core import (
    ChannelParam,
    LexSpec,
    TruthTable,
    binary_entropy,
    binary_entropy_vec,
    initial_segment,
)
from noisybool.chordcheck import VERIFIED, sweep, test_inequality
from noisybool.compression import CoordSet, compress, count_Sn
from noisybool.infomeasure import (
    edge_boundary,
    mutual_info,
    posterior_naive,
    posterior_transform,
)
from noisybool.talpha import (
    curve_rows,
    functional_identity_gap,
    midpoint_concavity_gap,
    t_alpha,
    t_alpha_dense,
    takagi_dyadic,
    takagi_limit_gap,
)
from noisybool import verify


def report(criterion: str, ok: bool):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion failed: {criterion}"


EXPECTED_COUNTS = {2: 5, 3: 10, 4: 25, 5: 119, 6: 1173, 7: 44315}
ALPHA_GRID = verify.DEFAULT_ALPHA_GRID  # 0.01 .. 0.49 step 0.02


@pytest.mark.parametrize("n", sorted(EXPECTED_COUNTS))
def test_criterion_1_family_counts(n):
    count = count_Sn(n)
    report(
        f"1 family count n={n} (expected {EXPECTED_COUNTS[n]}, got {count})",
        count == EXPECTED_COUNTS[n],
    )


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_criterion_2_conj2(n):
    ok = all(
        verify.verify_conj2(n, ChannelParam(a), tol=1e-9).outcome == verify.PASS
        for a in ALPHA_GRID
    )
    report(f"2 lex minimizes conditional entropy, n={n}, 25 alphas", ok)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_criterion_3_conj1(n):
    r = verify.verify_conj1(n, ALPHA_GRID, tol=1e-9)
    ok = r.outcome == verify.PASS and all(w["attains_bound"] for w in r.witnesses)
    report(f"3 mutual information bound attained by maximizer, n={n}", ok)


def test_criterion_4_chord_sweep():
    certs = sweep(0.001, 0.499, 0.001, depth_cap=40, epsilon=1e-12)
    bad = [c.alpha for c in certs if c.status != VERIFIED]
    report(f"4 chord sweep 0.001..0.499 ({len(certs)} alphas, bad={bad})", not bad)


def test_criterion_5_figure_consistency():
    cert = test_inequality(ChannelParam(0.1))
    ok = cert.status == VERIFIED and 2 <= len(cert.chords) <= 5
    rows = curve_rows(10, ChannelParam(0.1))
    ok &= all(t >= fh - 1e-12 for _, t, fh in rows)
    half = rows[len(rows) // 2]
    one = rows[-1]
    ok &= abs(half[1] - half[2]) <= 1e-12 and abs(one[1] - one[2]) <= 1e-12
    report(f"5 figure curve and {len(cert.chords)} chords at alpha=0.1", ok)


def test_criterion_6_oracle_equivalences():
    rng = np.random.default_rng(2024)
    worst_post = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 11))
        b = TruthTable(n, rng.integers(0, 2, 1 << n).astype(np.uint8))
        ch = ChannelParam(float(rng.uniform(0.0, 0.5)))
        diff = np.max(
            np.abs(
                posterior_transform(b, ch).values - posterior_naive(b, ch).values
            )
        )
        worst_post = max(worst_post, float(diff))
    worst_t = 0.0
    for m in range(1, 11):
        for k in range(1, 1 << m):
            for a in (0.05, 0.1, 0.25, 0.4):
                ch = ChannelParam(a)
                worst_t = max(
                    worst_t,
                    abs(
                        t_alpha(LexSpec(m, k).reduced(), ch)
                        - t_alpha_dense(LexSpec(m, k), ch)
                    ),
                )
    report(
        f"6 oracle equivalence (posterior {worst_post:.2e}, t_alpha {worst_t:.2e})",
        worst_post <= 1e-12 and worst_t <= 1e-12,
    )


def test_criterion_7_identity_suite():
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(100):
        m = int(rng.integers(1, 15))
        k = int(rng.integers(0, (1 << m) // 2 + 1))
        ch = ChannelParam(float(rng.uniform(0.02, 0.48)))
        ok &= functional_identity_gap(LexSpec(m, k), ch) <= 1e-10
    for a in (0.05, 0.25, 0.45):
        ch = ChannelParam(a)
        for m in range(1, 11):
            for k in range(1 << m):
                ok &= midpoint_concavity_gap(m, k, ch) >= -1e-12
    for _ in range(500):
        n = int(rng.integers(2, 9))
        b = TruthTable(n, rng.integers(0, 2, 1 << n).astype(np.uint8))
        ch = ChannelParam(float(rng.uniform(0.02, 0.48)))
        size = int(rng.integers(1, 3))
        I = CoordSet(tuple(sorted(rng.choice(n, size=min(size, n), replace=False) + 1)))
        c = compress(b, I)
        ok &= c.size == b.size
        ok &= compress(c, I) == c
        ok &= mutual_info(c, ch) >= mutual_info(b, ch) - 1e-12
    report("7 identity suite (functional eq, concavity, compression)", ok)


def test_criterion_8_harper_takagi():
    ok = all(verify.verify_harper(n).outcome == verify.PASS for n in (2, 3, 4))
    for n in range(1, 9):
        for k in range(2**n + 1):
            exact = (1 << n) * takagi_dyadic(k, n)
            ok &= exact.denominator == 1
            ok &= edge_boundary(initial_segment(n, k)) == exact
    for m, k in ((2, 1), (3, 3), (2, 3)):  # p = 1/4, 3/8, 3/4
        gaps = [
            takagi_limit_gap(LexSpec(m, k), ChannelParam(a))
            for a in (1e-3, 1e-4, 1e-5, 1e-6)
        ]
        # at p = 1/4 the gap is identically zero, so the decrease is only
        # monotone up to roundoff; allow the usual 1e-12 slack
        ok &= all(y <= x + 1e-12 for x, y in zip(gaps, gaps[1:]))
        ok &= gaps[-1] <= 0.1
    report("8 Harper exhaustive + Takagi cross-links", ok)


def test_criterion_9_sum_inequality():
    ok = True
    for a in (0.05, 0.1, 0.25, 0.4):
        r = verify.verify_sum_inequality(
            4, ChannelParam(a), tol=1e-9, mode=verify.EXHAUSTIVE
        )
        ok &= r.outcome == verify.PASS
    report("9 per-coordinate sum inequality, exhaustive n=4", ok)


def test_criterion_10_triple_counterexample():
    found = []
    all_parenthetical = True
    for a in (0.05, 0.1, 0.2, 0.3):
        r = verify.verify_triple_counterexample(ChannelParam(a))
        for w in r.witnesses:
            found.append(w)
            all_parenthetical &= w["full_compression_ok"]
    report(
        f"10 triple-compression counterexample ({len(found)} witnesses)",
        bool(found) and all_parenthetical,
    )

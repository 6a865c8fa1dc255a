import itertools

import numpy as np
import pytest

from noisybool.core import ChannelParam, TruthTable, binary_entropy, initial_segment
from noisybool.infomeasure import (
    cond_entropy,
    edge_boundary,
    mutual_info,
    mutual_info_single,
    posterior_naive,
    posterior_transform,
    sum_single_mi,
)


def dictator(n: int, i: int = 1) -> TruthTable:
    """b(x) = x_i, as a truth table (zero-preimage is the x_i = 0 half)."""
    return TruthTable.from_indices(
        n, [x for x in range(1 << n) if not (x >> (n - i)) & 1]
    )


def parity(n: int) -> TruthTable:
    return TruthTable.from_indices(
        n, [x for x in range(1 << n) if bin(x).count("1") % 2 == 0]
    )


def random_table(rng, n: int) -> TruthTable:
    return TruthTable(n, rng.integers(0, 2, 1 << n).astype(np.uint8))


class TestPosterior:
    def test_dictator(self):
        ch = ChannelParam(0.1)
        post = posterior_transform(dictator(3), ch)
        for y in range(8):
            expected = 0.9 if not (y >> 2) & 1 else 0.1
            assert post.values[y] == pytest.approx(expected, abs=1e-15)

    def test_alpha_half_is_constant(self):
        b = TruthTable.from_indices(3, [0, 2, 5])
        post = posterior_transform(b, ChannelParam(0.5))
        assert np.allclose(post.values, 3 / 8, atol=1e-15)

    def test_matches_naive(self):
        rng = np.random.default_rng(7)
        for n in (2, 4, 6, 8):
            b = random_table(rng, n)
            for a in (0.0, 0.07, 0.3, 0.5):
                fast = posterior_transform(b, ChannelParam(a)).values
                slow = posterior_naive(b, ChannelParam(a)).values
                assert np.max(np.abs(fast - slow)) < 1e-12

    def test_naive_constants(self):
        ch = ChannelParam(0.2)
        empty = TruthTable.from_indices(4, [])
        assert np.all(posterior_naive(empty, ch).values == 0)
        full = empty.complement()
        assert np.allclose(posterior_naive(full, ch).values, 1.0, atol=1e-12)

    def test_naive_hand_value(self):
        # B = {000, 001, 011, 101}, alpha = 0.1, y = 000:
        # (1-a)^3 + a(1-a)^2 + 2 a^2 (1-a) = 0.729 + 0.081 + 0.018
        b = TruthTable.from_indices(3, [0b000, 0b001, 0b011, 0b101])
        post = posterior_naive(b, ChannelParam(0.1))
        assert post.values[0] == pytest.approx(0.828, abs=1e-12)

    def test_mean_is_density(self):
        rng = np.random.default_rng(3)
        b = random_table(rng, 6)
        post = posterior_transform(b, ChannelParam(0.23))
        assert np.mean(post.values) == pytest.approx(b.size / 64, abs=1e-12)


class TestCondEntropy:
    def test_dictator_gives_channel_entropy(self):
        assert cond_entropy(dictator(4), ChannelParam(0.1)) == pytest.approx(
            binary_entropy(0.1), abs=1e-12
        )

    def test_noiseless(self):
        rng = np.random.default_rng(0)
        b = random_table(rng, 5)
        assert cond_entropy(b, ChannelParam(0.0)) == pytest.approx(0.0, abs=1e-12)

    def test_useless_channel(self):
        rng = np.random.default_rng(1)
        b = random_table(rng, 5)
        assert cond_entropy(b, ChannelParam(0.5)) == pytest.approx(
            binary_entropy(b.size / 32), abs=1e-12
        )


class TestMutualInfo:
    def test_dictator_attains_bound(self):
        for a in (0.05, 0.1, 0.3):
            assert mutual_info(dictator(5), ChannelParam(a)) == pytest.approx(
                1 - binary_entropy(a), abs=1e-12
            )

    def test_alpha_half_zero(self):
        rng = np.random.default_rng(2)
        assert mutual_info(random_table(rng, 4), ChannelParam(0.5)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_constant_zero(self):
        empty = TruthTable.from_indices(4, [])
        assert mutual_info(empty, ChannelParam(0.1)) == 0.0
        assert mutual_info(empty.complement(), ChannelParam(0.1)) == 0.0

    def test_bounded_by_function_entropy(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            b = random_table(rng, 6)
            mi = mutual_info(b, ChannelParam(0.17))
            assert -1e-12 <= mi <= binary_entropy(b.size / 64) + 1e-12

    def test_monotone_in_alpha(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            b = random_table(rng, 6)
            alphas = np.linspace(0.0, 0.5, 11)
            vals = [mutual_info(b, ChannelParam(a)) for a in alphas]
            assert all(x >= y - 1e-12 for x, y in zip(vals, vals[1:]))

    def test_complement_symmetry(self):
        rng = np.random.default_rng(6)
        b = random_table(rng, 6)
        ch = ChannelParam(0.12)
        assert mutual_info(b, ch) == pytest.approx(
            mutual_info(b.complement(), ch), abs=1e-14
        )

    def test_permutation_symmetry(self):
        rng = np.random.default_rng(8)
        b = random_table(rng, 5)
        ch = ChannelParam(0.21)
        base = mutual_info(b, ch)
        for perm in ([4, 3, 2, 1, 0], [1, 0, 2, 4, 3]):
            assert mutual_info(b.permute(perm), ch) == pytest.approx(base, abs=1e-12)


def _joint_oracle_mi(b: TruthTable, alpha: float, i: int) -> float:
    """I(b(X); Y_i) from the exhaustively tabulated 2x2 joint distribution."""
    n = b.n
    joint = np.zeros((2, 2))
    for x in range(1 << n):
        px = 1 / (1 << n)
        bx = 0 if b.zeros[x] else 1
        xi = (x >> (n - i)) & 1
        for yi in (0, 1):
            p_yi = 1 - alpha if yi == xi else alpha
            joint[bx, yi] += px * p_yi
    mi = 0.0
    for u in (0, 1):
        for v in (0, 1):
            if joint[u, v] > 0:
                mi += joint[u, v] * np.log2(
                    joint[u, v] / (joint[u].sum() * joint[:, v].sum())
                )
    return mi


class TestSingleCoordinateMI:
    def test_dictator(self):
        ch = ChannelParam(0.1)
        b = dictator(3)
        assert mutual_info_single(b, ch, 1) == pytest.approx(
            1 - binary_entropy(0.1), abs=1e-12
        )
        assert mutual_info_single(b, ch, 2) == pytest.approx(0.0, abs=1e-12)

    def test_against_joint_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            b = random_table(rng, n)
            a = float(rng.uniform(0.02, 0.48))
            for i in range(1, n + 1):
                assert mutual_info_single(b, ChannelParam(a), i) == pytest.approx(
                    _joint_oracle_mi(b, a, i), abs=1e-12
                )

    def test_coordinate_range(self):
        with pytest.raises(Exception):
            mutual_info_single(dictator(3), ChannelParam(0.1), 4)

    def test_sum_parity_is_zero(self):
        for a in (0.05, 0.2, 0.4):
            assert sum_single_mi(parity(4), ChannelParam(a)) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_sum_dictator(self):
        assert sum_single_mi(dictator(4), ChannelParam(0.1)) == pytest.approx(
            1 - binary_entropy(0.1), abs=1e-12
        )

    def test_sum_constant_zero(self):
        empty = TruthTable.from_indices(3, [])
        assert sum_single_mi(empty, ChannelParam(0.1)) == 0.0


class TestEdgeBoundary:
    def test_single_vertex(self):
        assert edge_boundary(TruthTable.from_indices(2, [0])) == 2

    def test_lex_segment(self):
        assert edge_boundary(initial_segment(3, 4)) == 4

    def test_full_cube(self):
        assert edge_boundary(initial_segment(4, 16)) == 0

    def test_exhaustive_small(self):
        # cross-check against direct edge enumeration at n = 3
        edges = [
            (u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)
        ]
        for mask in range(256):
            members = {x for x in range(8) if (mask >> x) & 1}
            expected = sum((u in members) != (v in members) for u, v in edges)
            assert edge_boundary(TruthTable.from_mask(3, mask)) == expected

"""Exact posteriors, entropies, and mutual information under BSC(alpha).

Everything here is an exact finite expectation over Omega_n; nothing is
sampled.  The posterior Pr{b(X^n)=0 | Y^n=y} is a product-kernel
convolution of the indicator of B, so it factorizes into one 2x2 mixing
step per coordinate (O(n 2^n) total).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    TABLE_ARITY_CAP,
    ChannelParam,
    DomainError,
    TruthTable,
    binary_entropy,
    binary_entropy_vec,
    entropy_f_vec,
)

NAIVE_ARITY_CAP = 12

# Raw posterior values farther than this outside [0,1] indicate a bug,
# not roundoff, and are rejected rather than clamped.
_CLAMP_GUARD = 1e-9


@dataclass(frozen=True)
class PosteriorField:
    """The vector Pr{b(X^n)=0 | Y^n=y} over all y, in index order."""

    n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (1 << self.n,):
            raise DomainError("posterior length does not match arity")
        worst = max(float(-v.min(initial=0.0)), float(v.max(initial=1.0) - 1.0))
        if worst > _CLAMP_GUARD:
            raise FloatingPointError(
                f"posterior escaped [0,1] by {worst:.3e}; internal error"
            )
        v = np.clip(v, 0.0, 1.0)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _mix_axes(values: np.ndarray, n: int, alpha: float) -> np.ndarray:
    """Apply the per-coordinate BSC mixing [[1-a, a], [a, 1-a]] along every axis.

    `values` has shape (..., 2^n); the last axis is mixed in place of a
    full Hadamard-domain round trip, which is the same product kernel.
    """
    a = alpha
    v = values.reshape(values.shape[:-1] + (2,) * n)
    for axis in range(-n, 0):
        lo = np.take(v, 0, axis=axis)
        hi = np.take(v, 1, axis=axis)
        v = np.stack([(1 - a) * lo + a * hi, a * lo + (1 - a) * hi], axis=v.ndim + axis)
    return v.reshape(values.shape)


def posterior_values(zeros: np.ndarray, n: int, alpha: float) -> np.ndarray:
    """Posterior vector(s) for indicator row(s) of shape (..., 2^n)."""
    return _mix_axes(np.asarray(zeros, dtype=np.float64), n, alpha)


def posterior_transform(b: TruthTable, ch: ChannelParam) -> PosteriorField:
    """Pr{b(X^n)=0 | Y^n=y} for every y, by the coordinate-factorized kernel."""
    if b.n > TABLE_ARITY_CAP:
        raise DomainError(f"arity {b.n} over cap {TABLE_ARITY_CAP}")
    return PosteriorField(b.n, posterior_values(b.zeros, b.n, ch.alpha))


def posterior_naive(b: TruthTable, ch: ChannelParam) -> PosteriorField:
    """Independent O(4^n) oracle: direct double sum of alpha^d (1-alpha)^(n-d)."""
    n = b.n
    if n > NAIVE_ARITY_CAP:
        raise DomainError(f"arity {n} over naive-oracle cap {NAIVE_ARITY_CAP}")
    a = ch.alpha
    members = np.flatnonzero(b.zeros)
    ys = np.arange(1 << n, dtype=np.int64)
    # popcount via 16-bit table (arity cap keeps xor values below 2^14)
    table = np.array([bin(i).count("1") for i in range(1 << n)], dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.float64)
    weights = np.array([a**d * (1 - a) ** (n - d) for d in range(n + 1)])
    for x in members:
        out += weights[table[np.bitwise_xor(ys, int(x))]]
    return PosteriorField(n, out)


def cond_entropy(b: TruthTable, ch: ChannelParam) -> float:
    """H(b(X^n) | Y^n), averaged exactly over the uniform Y^n."""
    post = posterior_transform(b, ch)
    return float(np.mean(binary_entropy_vec(post.values)))


def cond_entropy_values(post_values: np.ndarray) -> np.ndarray:
    """Batched H(b|Y^n) from posterior rows of shape (..., 2^n)."""
    return np.mean(binary_entropy_vec(post_values), axis=-1)


def mutual_info(b: TruthTable, ch: ChannelParam) -> float:
    """I(b(X^n); Y^n) = H(b) - H(b | Y^n)."""
    return binary_entropy(b.size / (1 << b.n)) - cond_entropy(b, ch)


def mutual_info_single(b: TruthTable, ch: ChannelParam, i: int) -> float:
    """I(b(X^n); Y_i) from the two exact conditionals Pr{b=0 | Y_i}."""
    n = b.n
    if not 1 <= i <= n:
        raise DomainError(f"coordinate {i} outside [1, {n}]")
    a = ch.alpha
    bit = n - i  # coordinate 1 is the most significant bit
    members = np.flatnonzero(b.zeros)
    xi = (members >> bit) & 1
    # Pr{b=0, Y_i=0} = 2^-n * sum_{x in B} Pr{Y_i=0 | x_i}
    joint0 = float(np.sum(np.where(xi == 0, 1 - a, a))) / (1 << n)
    p0 = b.size / (1 << n)
    # Y_i is uniform: Pr{Y_i=0} = 1/2
    clip = lambda t: min(1.0, max(0.0, t))
    cond = (
        binary_entropy(clip(2 * joint0)) + binary_entropy(clip(2 * (p0 - joint0)))
    ) / 2
    return binary_entropy(p0) - cond


def sum_single_mi(b: TruthTable, ch: ChannelParam) -> float:
    """sum_i I(b(X^n); Y_i) over all n coordinates."""
    return sum(mutual_info_single(b, ch, i) for i in range(1, b.n + 1))


def edge_boundary(b: TruthTable) -> int:
    """Number of hypercube edges with exactly one endpoint in B."""
    n = b.n
    z = b.zeros
    count = 0
    for bit in range(n):
        flipped = np.arange(1 << n) ^ (1 << bit)
        count += int(np.sum((z == 1) & (z[flipped] == 0)))
    return count

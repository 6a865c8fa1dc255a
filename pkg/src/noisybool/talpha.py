"""Exact evaluation of the lex-function posterior functional T_alpha(p).

For the unique lex function with Pr{b=0} = k/2^m, the posterior at y
factors along the leading coordinate: the zero-preimage splits into a
full half-cube plus a smaller lex set (digit 1) or sits inside one half
(digit 0).  Folding the binary digits of k therefore evaluates all 2^m
posterior values with one value-doubling pass, O(2^m) time and memory,
and T_alpha(p) is the mean of f over that array.

In the small-alpha limit T_alpha(p)/H(alpha) approaches the Takagi
function, which this module also evaluates (exactly, for dyadic p).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .core import (
    ChannelParam,
    DomainError,
    LexSpec,
    LEX_DEPTH_CAP,
    binary_entropy,
    entropy_f,
    entropy_f_vec,
    lex_of,
)
from .infomeasure import posterior_transform

DENSE_DEPTH_CAP = 12


def _fold_values(spec: LexSpec, alpha: float) -> np.ndarray:
    """All 2^m posterior values of the lex function, by digit folding.

    Digits of k are consumed innermost (least significant) first; the
    leading-coordinate split is applied last.
    """
    m, k = spec.m, spec.k
    digits = [(k >> (m - 1 - i)) & 1 for i in range(m)]  # MSB first
    u0, u1 = 1.0 - alpha, alpha
    v = np.zeros(1, dtype=np.float64)
    for i in range(m - 1, -1, -1):
        if digits[i]:
            v = np.concatenate([u0 + u1 * v, u1 + u0 * v])
        else:
            v = np.concatenate([u0 * v, u1 * v])
    return v


def t_alpha(spec: LexSpec, ch: ChannelParam) -> float:
    """T_alpha(k/2^m) = E_Y f(Pr{b=0 | Y}) for the lex b with Pr{b=0} = k/2^m."""
    spec = spec.reduced()
    if spec.k in (0, 1 << spec.m) and spec.m == 0:
        return 0.0
    if not 0.0 < ch.alpha < 0.5:
        raise DomainError("t_alpha requires alpha in (0, 1/2) for nontrivial p")
    if spec.m > LEX_DEPTH_CAP:
        raise DomainError(f"depth {spec.m} over cap {LEX_DEPTH_CAP}")
    v = _fold_values(spec, ch.alpha)
    return float(np.mean(entropy_f_vec(v)))


def t_alpha_dense(spec: LexSpec, ch: ChannelParam) -> float:
    """Independent oracle: explicit truth table plus the posterior transform."""
    if spec.m > DENSE_DEPTH_CAP:
        raise DomainError(f"depth {spec.m} over dense-oracle cap {DENSE_DEPTH_CAP}")
    if spec.k in (0, 1 << spec.m):
        return 0.0
    post = posterior_transform(lex_of(spec), ch)
    return float(np.mean(entropy_f_vec(post.values)))


def functional_identity_gap(spec: LexSpec, ch: ChannelParam) -> float:
    """|2 T(p) - T(2p) - 2p H(alpha)| for p = k/2^m <= 1/2."""
    if 2 * spec.k > (1 << spec.m):
        raise DomainError("functional identity requires p <= 1/2")
    p = spec.k / (1 << spec.m)
    if spec.k == 0:
        return 0.0
    lhs = 2.0 * t_alpha(spec, ch)
    rhs = t_alpha(LexSpec(spec.m, 2 * spec.k).reduced(), ch) + 2.0 * p * binary_entropy(
        ch.alpha
    )
    return abs(lhs - rhs)


def midpoint_concavity_gap(m: int, k: int, ch: ChannelParam) -> float:
    """T((2k+1)/2^(m+1)) - [T(k/2^m) + T((k+1)/2^m)] / 2; >= 0 up to roundoff."""
    if not 0 <= k < (1 << m):
        raise DomainError(f"numerator {k} outside [0, 2^{m})")
    mid = t_alpha(LexSpec(m + 1, 2 * k + 1), ch)
    lo = t_alpha(LexSpec(m, k).reduced(), ch)
    hi = t_alpha(LexSpec(m, k + 1).reduced(), ch)
    return mid - 0.5 * (lo + hi)


def takagi(p, terms: int = 64):
    """The Takagi function sum_j 2^-j dist(2^j p, Z).

    For a Fraction with denominator 2^m the series is finite and the
    result is exact (a Fraction); float input returns a float partial
    sum with `terms` terms.
    """
    if isinstance(p, Fraction):
        if not 0 <= p <= 1:
            raise DomainError("takagi argument outside [0, 1]")
        total = Fraction(0)
        x = p - int(p) if p < 1 else Fraction(0)
        scale = Fraction(1)
        for _ in range(terms):
            d = min(x, 1 - x)
            total += scale * d
            if d == 0:
                break  # dyadic tail is exactly zero
            x = 2 * x
            x -= int(x)
            scale /= 2
        return total
    if not 0.0 <= p <= 1.0:
        raise DomainError("takagi argument outside [0, 1]")
    total = 0.0
    for j in range(terms):
        xj = (2.0**j * p) % 1.0
        total += min(xj, 1.0 - xj) / 2.0**j
    return total


def takagi_dyadic(k: int, m: int) -> Fraction:
    """Exact Takagi value at k/2^m (finite series)."""
    return takagi(Fraction(k, 1 << m), terms=m + 1)


def takagi_limit_gap(spec: LexSpec, ch: ChannelParam) -> float:
    """|T_alpha(p)/H(alpha) - takagi(p)|; meaningful only for small alpha."""
    if not 0.0 < ch.alpha < 0.5:
        raise DomainError("takagi_limit_gap requires alpha in (0, 1/2)")
    ratio = t_alpha(spec, ch) / binary_entropy(ch.alpha)
    return abs(ratio - float(takagi_dyadic(spec.k, spec.m)))


def holder_constant(m: int, ch: ChannelParam) -> float:
    """Empirical fit of C in |T(k/2^m) - T((k+1)/2^m)| <= C 2^(-m/2).

    Reported, never asserted: the true constant for the 1/2-exponent
    continuity of T_alpha is not pinned down here.
    """
    vals = [
        t_alpha(LexSpec(m, k).reduced(), ch) if 0 < k < (1 << m) else 0.0
        for k in range((1 << m) + 1)
    ]
    diffs = np.abs(np.diff(vals))
    return float(diffs.max() * 2.0 ** (m / 2))


def curve_rows(m: int, ch: ChannelParam):
    """(p, T_alpha(p), f(p) H(alpha)) at every p = k/2^m, for plotting."""
    H = binary_entropy(ch.alpha)
    rows = []
    for k in range((1 << m) + 1):
        p = k / (1 << m)
        t = t_alpha(LexSpec(m, k).reduced(), ch) if 0 < k < (1 << m) else 0.0
        rows.append((p, t, entropy_f(p) * H))
    return rows

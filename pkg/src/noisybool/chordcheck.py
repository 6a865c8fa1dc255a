"""Recursive chord verification of T_alpha(p) >= f(p) H(alpha) on [1/2, 1].

Starting from the single chord (1/2, 1), each chord whose deficit
minimum dips below -epsilon is bisected at the dyadic midpoint; a run
that accepts every leaf chord yields a piecewise-linear function that
simultaneously lower-bounds T_alpha and upper-bounds f(p) H(alpha),
which is what the pseudo-concavity and domain-reduction identities need.
Endpoints are carried as exact dyadics (numerator, log2-denominator);
only T_alpha and f evaluations are floating point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import ChannelParam, DomainError, LexSpec, LEX_DEPTH_CAP, binary_entropy, entropy_f
from .talpha import t_alpha

DEFAULT_DEPTH_CAP = 40
DEFAULT_EPSILON = 1e-12

VERIFIED = "VERIFIED"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Dyadic:
    """The exact rational num / 2^depth."""

    num: int
    depth: int

    def __post_init__(self):
        if self.depth < 0 or self.num < 0:
            raise DomainError("dyadic components must be nonnegative")

    def fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.depth)

    def value(self) -> float:
        return self.num / (1 << self.depth)

    def __lt__(self, other):
        return self.fraction() < other.fraction()


@dataclass(frozen=True)
class Chord:
    p_minus: Dyadic
    p_plus: Dyadic
    nu: float
    depth: int


@dataclass
class ChordCertificate:
    alpha: float
    status: str
    epsilon: float
    depth_cap: int
    chords: list[Chord] = field(default_factory=list)
    max_depth_reached: int = 0
    failing: Chord | None = None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "status": self.status,
            "epsilon": self.epsilon,
            "depth_cap": self.depth_cap,
            "max_depth_reached": self.max_depth_reached,
            "chords": [
                {
                    "p_minus_num": c.p_minus.num,
                    "p_minus_den_log2": c.p_minus.depth,
                    "p_plus_num": c.p_plus.num,
                    "p_plus_den_log2": c.p_plus.depth,
                    "nu": c.nu,
                    "depth": c.depth,
                }
                for c in self.chords
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class _TCache:
    """Memoized T_alpha over reduced dyadic arguments for one alpha."""

    def __init__(self, ch: ChannelParam):
        self.ch = ch
        self._vals: dict[LexSpec, float] = {}

    def __call__(self, p: Dyadic) -> float:
        spec = LexSpec(p.depth, p.num).reduced()
        if spec not in self._vals:
            self._vals[spec] = t_alpha(spec, self.ch)
        return self._vals[spec]


def check_chord(a: Dyadic, b: Dyadic, ch: ChannelParam, _t=None) -> float:
    """Minimum of chord(x) - f(x) H(alpha) over [a, b], in closed form.

    The deficit is convex (f is concave), so the minimum sits at the
    stationary point x* = 2^(-s/H) / e of the base-2 derivative,
    clamped into [a, b]; s is the chord slope.
    """
    if not (Fraction(1, 2) <= a.fraction() < b.fraction() <= 1):
        raise DomainError("chord endpoints must satisfy 1/2 <= a < b <= 1")
    if not 0.0 < ch.alpha < 0.5:
        raise DomainError("chord check requires alpha in (0, 1/2)")
    t = _t if _t is not None else _TCache(ch)
    H = binary_entropy(ch.alpha)
    av, bv = a.value(), b.value()
    ta, tb = t(a), t(b)
    s = (tb - ta) / (bv - av)

    def deficit(x: float) -> float:
        return s * (x - av) + ta - entropy_f(x) * H

    x_star = 2.0 ** (-s / H) / math.e
    x_star = min(bv, max(av, x_star))
    return min(deficit(x_star), deficit(av), deficit(bv))


def test_inequality(
    ch: ChannelParam,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    epsilon: float = DEFAULT_EPSILON,
) -> ChordCertificate:
    """Run the recursive bisection from (1/2, 1) and collect the certificate.

    A chord (k/2^d, (k+1)/2^d) is accepted when its deficit minimum is
    >= -epsilon; otherwise it splits into the two consecutive dyadic
    halves at depth d+1.  Hitting depth_cap (or the lex evaluation
    depth cap) yields INCONCLUSIVE with the offending interval recorded.
    """
    if depth_cap < 1:
        raise DomainError("depth_cap must be >= 1")
    t = _TCache(ch)
    cert = ChordCertificate(
        alpha=ch.alpha, status=VERIFIED, epsilon=epsilon, depth_cap=depth_cap
    )
    effective_cap = min(depth_cap, LEX_DEPTH_CAP)
    stack = [(1, 1)]  # (k, d): the chord (k/2^d, (k+1)/2^d)
    while stack:
        k, d = stack.pop()
        a, b = Dyadic(k, d), Dyadic(k + 1, d)
        nu = check_chord(a, b, ch, _t=t)
        cert.max_depth_reached = max(cert.max_depth_reached, d)
        if nu >= -epsilon:
            cert.chords.append(Chord(a, b, nu, d))
        elif d + 1 > effective_cap:
            cert.status = INCONCLUSIVE
            cert.failing = Chord(a, b, nu, d)
            break
        else:
            stack.append((2 * k + 1, d + 1))
            stack.append((2 * k, d + 1))
    cert.chords.sort(key=lambda c: c.p_minus.fraction())
    return cert


test_inequality.__test__ = False  # keep pytest from collecting the API name


def sweep(
    alpha_start: float,
    alpha_end: float,
    alpha_step: float,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    epsilon: float = DEFAULT_EPSILON,
) -> list[ChordCertificate]:
    """One certificate per alpha on the closed grid; INCONCLUSIVE is data."""
    certs = []
    steps = int(round((alpha_end - alpha_start) / alpha_step)) if alpha_step > 0 else -1
    for i in range(steps + 1):
        alpha = alpha_start + i * alpha_step
        if not 0.0 < alpha < 0.5:
            raise DomainError(f"sweep alpha {alpha} outside (0, 1/2)")
        certs.append(test_inequality(ChannelParam(alpha), depth_cap, epsilon))
    return certs


def tiles_interval(cert: ChordCertificate) -> bool:
    """Exact dyadic check that accepted chords tile [1/2, 1] with no gaps."""
    if not cert.chords:
        return False
    pos = Fraction(1, 2)
    for c in cert.chords:
        if c.p_minus.fraction() != pos:
            return False
        pos = c.p_plus.fraction()
    return pos == 1

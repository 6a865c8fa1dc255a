"""Truth-table representation, lexicographic machinery, and entropy primitives.

Index convention, fixed repo-wide: an n-bit string x1..xn maps to the
integer sum_i x_i * 2^(n-i), i.e. coordinate 1 is the most significant
bit.  Under this convention integer order on {0, ..., 2^n - 1} coincides
with lexicographic order on strings, so the initial segment of size M is
simply the integer interval [0, M).

All entropies are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Explicit truth tables are capped at this arity (16384-bit vectors);
# larger lex functions are only evaluated implicitly (see talpha).
TABLE_ARITY_CAP = 14

# Depth cap for implicit lex specs (memory of the path-fold evaluator).
LEX_DEPTH_CAP = 26


class DomainError(ValueError):
    """Argument outside an operation's stated domain."""


@dataclass(frozen=True)
class TruthTable:
    """A Boolean function on n inputs, stored as the indicator of its zero-preimage.

    ``zeros[x] == 1`` iff the function maps x to 0.  Immutable after
    construction; all operations on it are pure.
    """

    n: int
    zeros: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 1 <= self.n <= TABLE_ARITY_CAP:
            raise DomainError(f"arity {self.n} outside [1, {TABLE_ARITY_CAP}]")
        z = np.asarray(self.zeros, dtype=np.uint8)
        if z.shape != (1 << self.n,):
            raise DomainError(
                f"zeros vector has length {z.shape}, expected {1 << self.n}"
            )
        if np.any(z > 1):
            raise DomainError("zeros vector must be 0/1 valued")
        z.setflags(write=False)
        object.__setattr__(self, "zeros", z)

    @classmethod
    def from_indices(cls, n: int, members) -> "TruthTable":
        z = np.zeros(1 << n, dtype=np.uint8)
        members = list(members)
        if members:
            idx = np.asarray(members, dtype=np.int64)
            if idx.min() < 0 or idx.max() >= (1 << n):
                raise DomainError("member index out of range")
            z[idx] = 1
        return cls(n, z)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "TruthTable":
        """Build from an integer whose bit x is the membership of x."""
        if mask < 0 or mask >> (1 << n):
            raise DomainError("mask out of range")
        z = np.zeros(1 << n, dtype=np.uint8)
        for x in range(1 << n):
            z[x] = (mask >> x) & 1
        return cls(n, z)

    def mask(self) -> int:
        return int.from_bytes(np.packbits(self.zeros, bitorder="little").tobytes(), "little")

    def members(self) -> list[int]:
        return np.flatnonzero(self.zeros).tolist()

    @property
    def size(self) -> int:
        """|B|, the number of inputs mapped to 0."""
        return int(self.zeros.sum())

    def complement(self) -> "TruthTable":
        return TruthTable(self.n, 1 - self.zeros)

    def permute(self, perm) -> "TruthTable":
        """Apply a permutation of input coordinates (perm[i] is the new
        position, 0-based over coordinates) to every member of B."""
        n = self.n
        if sorted(perm) != list(range(n)):
            raise DomainError("not a permutation of coordinates")
        out = np.zeros_like(self.zeros)
        for x in np.flatnonzero(self.zeros):
            y = 0
            for i in range(n):
                if (x >> (n - 1 - i)) & 1:
                    y |= 1 << (n - 1 - perm[i])
            out[y] = 1
        return TruthTable(n, out)

    def to_hex(self) -> str:
        """Serialize as 'n=<n>:<hex>' with the most significant hex digit first.

        The bit-vector is read as the integer sum_x zeros[x] * 2^x.
        """
        width = max(1, (1 << self.n) // 4)
        return f"n={self.n}:{self.mask():0{width}x}"

    @classmethod
    def from_hex(cls, s: str) -> "TruthTable":
        head, _, digits = s.partition(":")
        if not head.startswith("n=") or not digits:
            raise DomainError(f"bad truth-table serialization: {s!r}")
        n = int(head[2:])
        return cls.from_mask(n, int(digits, 16))

    def __eq__(self, other):
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and bool(np.array_equal(self.zeros, other.zeros))
        )

    def __hash__(self):
        return hash((self.n, self.zeros.tobytes()))


@dataclass(frozen=True)
class LexSpec:
    """The unique lex function with Pr{b = 0} = k / 2^m, stored implicitly."""

    m: int
    k: int

    def __post_init__(self):
        if self.m < 0:
            raise DomainError("depth must be nonnegative")
        if not 0 <= self.k <= (1 << self.m):
            raise DomainError(f"numerator {self.k} outside [0, 2^{self.m}]")

    @property
    def p(self) -> float:
        return self.k / (1 << self.m)

    def reduced(self) -> "LexSpec":
        """Drop trailing zero digits of k; the same p on fewer inputs."""
        m, k = self.m, self.k
        while m > 0 and k % 2 == 0:
            m -= 1
            k //= 2
        return LexSpec(m, k)


@dataclass(frozen=True)
class ChannelParam:
    """Crossover probability of the binary symmetric channel."""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 0.5:
            raise DomainError(f"alpha {self.alpha} outside [0, 1/2]")


def entropy_f(x: float) -> float:
    """-x * log2(x), continuously extended with f(0) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy_f argument {x} outside [0, 1]")
    if x == 0.0:
        return 0.0
    return -x * math.log2(x)


def binary_entropy(p: float) -> float:
    """H(p) = f(p) + f(1-p); symmetric, peaks at 1 for p = 1/2."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"binary_entropy argument {p} outside [0, 1]")
    return entropy_f(p) + entropy_f(1.0 - p)


def entropy_f_vec(x: np.ndarray) -> np.ndarray:
    """Vectorized -x log2 x with the f(0) = 0 convention."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    pos = x > 0.0
    xp = x[pos]
    out[pos] = -xp * np.log2(xp)
    return out


def binary_entropy_vec(p: np.ndarray) -> np.ndarray:
    return entropy_f_vec(p) + entropy_f_vec(1.0 - np.asarray(p, dtype=np.float64))


def initial_segment(n: int, M: int) -> TruthTable:
    """The lex function whose zero-preimage is the first M strings of Omega_n."""
    if not 0 <= M <= (1 << n):
        raise DomainError(f"segment size {M} outside [0, 2^{n}]")
    z = np.zeros(1 << n, dtype=np.uint8)
    z[:M] = 1
    return TruthTable(n, z)


def is_lex(b: TruthTable) -> bool:
    """True iff the zero-preimage is an initial segment of lex order."""
    k = b.size
    return bool(np.all(b.zeros[:k] == 1))


def lex_of(spec: LexSpec) -> TruthTable:
    """Explicit table for a lex spec; depths above the table cap must use
    the implicit evaluator in talpha instead."""
    if spec.m > TABLE_ARITY_CAP:
        raise DomainError(
            f"depth {spec.m} above explicit-table cap {TABLE_ARITY_CAP}; "
            "use the implicit lex evaluator"
        )
    m = max(spec.m, 1)  # tables need arity >= 1
    return initial_segment(m, spec.k << (m - spec.m))

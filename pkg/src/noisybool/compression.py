"""Section/compression operators, the 2-compression fixpoint, and the
compressed family S_n.

A set B is I-compressed when every I-section of B is an initial segment
of lex order on Omega_|I|.  Sets that are I-compressed for all |I| <= 2
are exactly the downsets of the dominance poset generated by two moves:
lower a 1-bit, or shift a 1-bit from an earlier (more significant)
coordinate to a later zero coordinate.  S_n is enumerated as those
downsets by depth-first search over the lex linear extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import ChannelParam, DomainError, TruthTable, initial_segment

ENUMERATE_ARITY_CAP = 7

# Entropy increase below this is a floating-point tie, not a counterexample.
COUNTEREXAMPLE_MARGIN = 1e-10


@dataclass(frozen=True)
class CoordSet:
    """A sorted set of coordinates i1 < i2 < ... < ik from {1..n}."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(self.indices)
        if list(idx) != sorted(set(idx)) or (idx and idx[0] < 1):
            raise DomainError(f"coordinate set {idx} not sorted/distinct/positive")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)


def _check_arity(I: CoordSet, n: int):
    if I.indices and I.indices[-1] > n:
        raise DomainError(f"coordinate {I.indices[-1]} exceeds arity {n}")


def _base_points(n: int, bits: tuple[int, ...]) -> np.ndarray:
    """All x in Omega_n with zeros on the given bit positions."""
    free = [b for b in range(n) if b not in bits]
    pts = np.zeros(1 << len(free), dtype=np.int64)
    for j, b in enumerate(free):
        pts |= ((np.arange(1 << len(free)) >> j) & 1) << b
    return pts


def _section_bits(n: int, I: CoordSet) -> tuple[int, ...]:
    # coordinate i is bit n - i; z's coordinate j maps to coordinate i_j
    return tuple(n - i for i in I.indices)


def section(B: TruthTable, I: CoordSet, x: int) -> list[int]:
    """The I-section of B at base point x (which must be zero on I).

    Returned as sorted integers indexing Omega_k with the same
    most-significant-first convention, so integer order is lex order.
    """
    n = B.n
    _check_arity(I, n)
    k = len(I)
    bits = _section_bits(n, I)
    for b in bits:
        if (x >> b) & 1:
            raise DomainError("base point is nonzero on a section coordinate")
    out = []
    for z in range(1 << k):
        y = x
        for j, b in enumerate(bits):
            if (z >> (k - 1 - j)) & 1:
                y |= 1 << b
        if B.zeros[y]:
            out.append(z)
    return out


def compress(B: TruthTable, I: CoordSet) -> TruthTable:
    """Replace every I-section of B with the initial segment of its size."""
    n = B.n
    _check_arity(I, n)
    k = len(I)
    bits = _section_bits(n, I)
    zeros = np.array(B.zeros)
    for x in _base_points(n, bits):
        ys = np.empty(1 << k, dtype=np.int64)
        for z in range(1 << k):
            y = int(x)
            for j, b in enumerate(bits):
                if (z >> (k - 1 - j)) & 1:
                    y |= 1 << b
            ys[z] = y
        size = int(zeros[ys].sum())
        zeros[ys] = 0
        zeros[ys[:size]] = 1
    return TruthTable(n, zeros)


def is_compressed(B: TruthTable, I: CoordSet) -> bool:
    return compress(B, I) == B


def two_compress_fixpoint(B: TruthTable) -> TruthTable:
    """Apply singleton then pair compressions until nothing changes.

    Terminates because every productive compression strictly lowers the
    sum of lex ranks of the members.  Sweep order is fixed for
    reproducibility: singletons to convergence, then pairs (i, j) in lex
    order, repeated until a full pass is a no-op.
    """
    n = B.n
    cur = B
    while True:
        changed = True
        while changed:
            changed = False
            for i in range(1, n + 1):
                nxt = compress(cur, CoordSet((i,)))
                if nxt != cur:
                    cur, changed = nxt, True
        start = cur
        for i, j in itertools.combinations(range(1, n + 1), 2):
            cur = compress(cur, CoordSet((i, j)))
        if cur == start:
            return cur


def _cover_moves(n: int) -> list[list[int]]:
    """For each x, the elements reachable by one generator move (all < x)."""
    covers: list[list[int]] = []
    for x in range(1 << n):
        down = []
        ones = [b for b in range(n) if (x >> b) & 1]
        for b in ones:
            down.append(x & ~(1 << b))
        # shift a 1 from an earlier coordinate (higher bit) to a later
        # zero coordinate (lower bit)
        for b in ones:
            for c in range(b):
                if not (x >> c) & 1:
                    down.append((x & ~(1 << b)) | (1 << c))
        covers.append(sorted(set(down)))
    return covers


@dataclass(frozen=True)
class DominancePoset:
    """Generator-move covers for each point of Omega_n; downsets = S_n."""

    n: int
    covers: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n: int) -> "DominancePoset":
        return cls(n, tuple(tuple(c) for c in _cover_moves(n)))


def enumerate_Sn(n: int, cap: int = ENUMERATE_ARITY_CAP) -> Iterator[TruthTable]:
    """All sets that are I-compressed for every |I| <= 2, each exactly once.

    Emitted grouped by |B| (all downsets of a given size together),
    smallest size first, lexicographically within a size class.
    """
    if n > cap:
        raise DomainError(f"arity {n} over enumeration cap {cap}")
    covers = _cover_moves(n)
    N = 1 << n
    by_size: dict[int, list[frozenset[int]]] = {}

    def walk(x: int, chosen: set[int]):
        if x == N:
            by_size.setdefault(len(chosen), []).append(frozenset(chosen))
            return
        walk(x + 1, chosen)  # exclude x
        if all(c in chosen for c in covers[x]):
            chosen.add(x)
            walk(x + 1, chosen)
            chosen.remove(x)

    walk(0, set())
    for size in sorted(by_size):
        for members in sorted(by_size[size], key=lambda s: sorted(s)):
            yield TruthTable.from_indices(n, members)


def count_Sn(n: int) -> int:
    return sum(1 for _ in enumerate_Sn(n))


def _section_columns(n: int, I: CoordSet) -> list[np.ndarray]:
    """For each base point, the Omega_n indices of its I-section in lex order."""
    k = len(I)
    bits = _section_bits(n, I)
    cols = []
    for x in _base_points(n, bits):
        ys = np.empty(1 << k, dtype=np.int64)
        for z in range(1 << k):
            y = int(x)
            for j, b in enumerate(bits):
                if (z >> (k - 1 - j)) & 1:
                    y |= 1 << b
            ys[z] = y
        cols.append(ys)
    return cols


def compress_batch(M: np.ndarray, n: int, I: CoordSet) -> np.ndarray:
    """I-compression applied to every indicator row of M (shape (N, 2^n))."""
    out = np.array(M)
    width = 1 << len(I)
    for ys in _section_columns(n, I):
        sizes = out[:, ys].sum(axis=1)
        out[:, ys] = np.arange(width) < sizes[:, None]
    return out


def _batch_entropy_delta(M: np.ndarray, n: int, I: CoordSet, alpha: float) -> np.ndarray:
    from .infomeasure import cond_entropy_values, posterior_values

    C = compress_batch(M, n, I)
    h_orig = cond_entropy_values(posterior_values(M, n, alpha))
    h_comp = cond_entropy_values(posterior_values(C, n, alpha))
    return h_comp - h_orig


def hypercube_downsets(n: int) -> np.ndarray:
    """Indicator matrix of all downsets of the hypercube bit order on Omega_n.

    These are the sets closed under lowering a 1-bit, i.e. the singleton-
    compressed sets.  Feasible up to n = 5 (7581 downsets); the count is
    the Dedekind number, which explodes beyond that.
    """
    if n > 5:
        raise DomainError("downset enumeration capped at n = 5")
    covers = [
        [x & ~(1 << b) for b in range(n) if (x >> b) & 1] for x in range(1 << n)
    ]
    rows: list[frozenset[int]] = []

    def walk(x: int, chosen: set[int]):
        if x == 1 << n:
            rows.append(frozenset(chosen))
            return
        walk(x + 1, chosen)
        if all(c in chosen for c in covers[x]):
            chosen.add(x)
            walk(x + 1, chosen)
            chosen.remove(x)

    walk(0, set())
    M = np.zeros((len(rows), 1 << n), dtype=np.float64)
    for i, s in enumerate(rows):
        M[i, list(s)] = 1.0
    return M


def find_triple_counterexample(
    n: int,
    ch: ChannelParam,
    seed: int = 0,
    samples: int = 20000,
) -> Optional[tuple[TruthTable, CoordSet, float]]:
    """Search for (B, I) with |I| = 3 where compression increases H(b|Y^n).

    Exhaustive over all 2^(2^n) sets for n <= 4.  At n = 5 the search is
    exhaustive over the singleton-compressed sets (hypercube downsets),
    where such counterexamples actually live; uniform random masks at
    n = 5 essentially never produce one.  For n >= 6 a seeded random
    search over `samples` sets per triple is used.  Returns the largest
    entropy increase found above the reporting margin, or None.
    """
    triples = [CoordSet(t) for t in itertools.combinations(range(1, n + 1), 3)]
    if not triples:
        return None

    N = 1 << n
    if n <= 4:
        masks = np.arange(1 << N, dtype=np.int64)
        M = ((masks[:, None] >> np.arange(N)) & 1).astype(np.float64)
    elif n == 5:
        M = hypercube_downsets(n)
    else:
        rng = np.random.default_rng(seed)
        M = rng.integers(0, 2, size=(samples, N)).astype(np.float64)

    best: Optional[tuple[float, int, CoordSet]] = None
    for I in triples:
        delta = _batch_entropy_delta(M, n, I, ch.alpha)
        i = int(delta.argmax())
        if delta[i] > COUNTEREXAMPLE_MARGIN and (best is None or delta[i] > best[0]):
            best = (float(delta[i]), i, I)
    if best is None:
        return None
    d, i, I = best
    return TruthTable(n, M[i].astype(np.uint8)), I, d


def dump_Sn(n: int, stream) -> int:
    """Write S_n in the hex serialization with a '# n=.. count=..' header."""
    tables = list(enumerate_Sn(n))
    stream.write(f"# n={n} count={len(tables)}\n")
    for t in tables:
        stream.write(t.to_hex() + "\n")
    return len(tables)


def full_compression(B: TruthTable) -> TruthTable:
    """Replace B by the lex initial segment of the same size (|I| = n)."""
    return initial_segment(B.n, B.size)

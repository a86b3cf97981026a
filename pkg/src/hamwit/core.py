"""Bit strings, exact binomials and the H/P threshold functions.

Bit strings are stored as (value, length) pairs with the most significant
bit first, so lexicographic order on equal-length strings is integer order.
"""

from __future__ import annotations

import enum
import math
import os
import threading
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterable, List, Sequence


DEFAULT_ENUM_CAP = 1 << 22


def enum_cap(default: int = DEFAULT_ENUM_CAP) -> int:
    """Enumeration cap, overridable through ``HAMWIT_ENUM_CAP``."""
    raw = os.environ.get("HAMWIT_ENUM_CAP")
    return int(raw, 0) if raw else default


class LogBase(str, enum.Enum):
    NATURAL = "natural"
    BASE2 = "base2"


@dataclass(frozen=True, order=True)
class BitString:
    """Fixed-length binary string, ``bits[0]`` is the most significant bit."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        if any(c not in "01" for c in s):
            raise ValueError(f"not a bit string: {s!r}")
        return cls(int(s, 2) if s else 0, len(s))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        bits = list(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            value = (value << 1) | b
        return cls(value, len(bits))

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls((1 << n) - 1, n)

    @property
    def bits(self) -> List[int]:
        return [(self.value >> (self.length - 1 - i)) & 1 for i in range(self.length)]

    def weight(self) -> int:
        return self.value.bit_count()

    def prefix(self, k: int) -> "BitString":
        if not 0 <= k <= self.length:
            raise ValueError("prefix longer than string")
        return BitString(self.value >> (self.length - k), k)

    def flip(self, positions: Iterable[int]) -> "BitString":
        value = self.value
        for p in positions:
            value ^= 1 << (self.length - 1 - p)
        return BitString(value, self.length)

    def complement(self) -> "BitString":
        return BitString(self.value ^ ((1 << self.length) - 1), self.length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""


def hamming_distance(x: BitString, y: BitString) -> int:
    if x.length != y.length:
        raise ValueError("unequal lengths")
    return (x.value ^ y.value).bit_count()


class _BinomialTable:
    """Lazily grown Pascal triangle with exact integers.

    Rows above ``cap`` are not stored; those values go through ``math.comb``.
    Rows are appended under a lock and never mutated afterwards.
    """

    def __init__(self, cap: int = 1024):
        self.cap = cap
        self._rows: List[List[int]] = [[1]]
        self._cum: List[List[int]] = [[1]]
        self._lock = threading.Lock()

    def _grow(self, n: int) -> None:
        with self._lock:
            while len(self._rows) <= n:
                prev = self._rows[-1]
                row = [1] + [a + b for a, b in zip(prev, prev[1:])] + [1]
                self._cum.append(_prefix_sums(row))
                self._rows.append(row)

    def row(self, n: int) -> List[int]:
        if n >= len(self._rows):
            if n > self.cap:
                return [math.comb(n, k) for k in range(n + 1)]
            self._grow(n)
        return self._rows[n]

    def cumulative(self, n: int) -> List[int]:
        """``cumulative(n)[j] == sum(C(n, i) for i <= j)``."""
        if n >= len(self._rows):
            if n > self.cap:
                return _prefix_sums(self.row(n))
            self._grow(n)
        return self._cum[n]


def _prefix_sums(row: Sequence[int]) -> List[int]:
    out, acc = [], 0
    for x in row:
        acc += x
        out.append(acc)
    return out


BINOMIALS = _BinomialTable()


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    if k > n:
        return 0
    if n <= BINOMIALS.cap:
        return BINOMIALS.row(n)[k]
    return math.comb(n, k)


def binomial_sum(m: int, j: int) -> int:
    """Sum of C(m, i) for 0 <= i <= j (0 when j < 0)."""
    if j < 0:
        return 0
    if j >= m:
        return 1 << m
    if m <= BINOMIALS.cap:
        return BINOMIALS.cumulative(m)[j]
    return sum(math.comb(m, i) for i in range(j + 1))


@dataclass(frozen=True)
class ApproxParams:
    alpha: float
    log_base: LogBase = LogBase.NATURAL

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(self, "log_base", LogBase(self.log_base))

    def log(self, n: float) -> float:
        return math.log(n) if self.log_base is LogBase.NATURAL else math.log2(n)


def h_bound(n: int, params: ApproxParams) -> float:
    """sqrt(alpha * n * log n): the slack above n/2 allowed to the approximator."""
    if n < 1:
        raise ValueError("H(n, alpha) is undefined for n < 1")
    if n == 1:
        return 0.0
    return math.sqrt(params.alpha * n * params.log(n))


def p_bound(n: int, params: ApproxParams) -> float:
    """n^(4 alpha) * sqrt(alpha * log n)."""
    if n < 2:
        raise ValueError("P(n, alpha) is undefined for n < 2")
    return n ** (4 * params.alpha) * math.sqrt(params.alpha * params.log(n))


def ball_radius(n_u: int, params: ApproxParams) -> int:
    """floor(n_u/2 + H(n_u, alpha)); 0 for the empty string length."""
    if n_u == 0:
        return 0
    return math.floor(n_u / 2 + h_bound(n_u, params))


def tail_count(m: int, threshold: float) -> int:
    """Number of m-bit strings with strictly more than ``threshold`` ones."""
    if m < 0:
        raise ValueError("m must be non-negative")
    # largest integer <= threshold; strings with weight > that are counted
    floor_t = math.floor(threshold)
    if floor_t < 0:
        return 1 << m
    return (1 << m) - binomial_sum(m, floor_t)


def lemma1_ratio(n: int, params: ApproxParams) -> float:
    """tail_count(n-1, n/2 + H) * P(n, alpha) / 2^n.

    Bounded below by a positive constant as n grows; computed with exact
    integers up to the final division.
    """
    p = p_bound(n, params)
    tail = tail_count(n - 1, n / 2 + h_bound(n, params))
    return float(Fraction(tail, 1 << n)) * p

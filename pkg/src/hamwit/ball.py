"""Hamming balls intersected with lexicographic universes.

A universe ``[u]`` is the set of the ``u`` smallest ``n_u``-bit strings,
``n_u = ceil(log2 u)``. Restricting a verifier to ``N(a) ∩ [u]`` relabels the
surviving candidates as ``[u']`` in order, through the bijection ``phi``.
Ranks are 1-based; ``phi`` sends the string with integer value ``i - 1`` to
the ``i``-th member of the intersection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from hamwit import kernels
from hamwit.core import ApproxParams, BitString, ball_radius
from hamwit.verifier import Verifier


@dataclass(frozen=True)
class Universe:
    u: int
    n_u: int = field(init=False)

    def __post_init__(self):
        if self.u < 1:
            raise ValueError("a universe holds at least one string")
        object.__setattr__(self, "n_u", (self.u - 1).bit_length())

    @classmethod
    def full(cls, n: int) -> "Universe":
        return cls(1 << n)

    def __contains__(self, w: BitString) -> bool:
        return w.length == self.n_u and w.value < self.u

    def members(self) -> List[BitString]:
        return [BitString(v, self.n_u) for v in range(self.u)]


@dataclass(frozen=True)
class Ball:
    center: BitString
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("negative radius")

    @classmethod
    def around(cls, center: BitString, params: ApproxParams) -> "Ball":
        """Ball of radius floor(n_u/2 + H(n_u, alpha)) with n_u = len(center)."""
        return cls(center, ball_radius(center.length, params))

    def __contains__(self, w: BitString) -> bool:
        return w.length == self.center.length and (w.value ^ self.center.value).bit_count() <= self.radius


def _check_center(univ: Universe, ball: Ball) -> None:
    if ball.center.length != univ.n_u:
        raise ValueError(
            f"ball center has {ball.center.length} bits, universe strings have {univ.n_u}"
        )


def ball_prefix_count(n_u: int, a: BitString, d: int, s: BitString) -> int:
    """Number of n_u-bit strings starting with ``s`` within distance ``d`` of ``a``."""
    if a.length != n_u:
        raise ValueError("center length differs from n_u")
    if s.length > n_u:
        raise ValueError("prefix longer than the strings")
    return kernels.prefix_count(n_u, a.value, d, s.value, s.length)


def ball_universe_count(univ: Universe, ball: Ball) -> int:
    """|N(a) ∩ [u]|, summed over the prefixes where a member first drops below u."""
    _check_center(univ, ball)
    return kernels.count_below(univ.n_u, ball.center.value, ball.radius, univ.u)


def ball_rank_upto(univ: Universe, ball: Ball, z: BitString) -> int:
    """Number of ball members lexicographically <= z (inclusive)."""
    _check_center(univ, ball)
    if z.length != univ.n_u:
        raise ValueError("z has the wrong length")
    return kernels.rank_upto(univ.n_u, ball.center.value, ball.radius, z.value)


def unrank(univ: Universe, ball: Ball, i: int) -> BitString:
    """The i-th (1-based) member of N(a) ∩ [u] in lexicographic order."""
    count = ball_universe_count(univ, ball)
    if not 1 <= i <= count:
        raise IndexError(f"rank out of bounds: {i} not in [1, {count}]")
    value = kernels.unrank(univ.n_u, ball.center.value, ball.radius, univ.u, i)
    return BitString(value, univ.n_u)


def rank(univ: Universe, ball: Ball, w: BitString) -> int:
    """Inverse of :func:`unrank`; ``w`` must lie in N(a) ∩ [u]."""
    if w not in univ or w not in ball:
        raise ValueError(f"{w} is not a member of the restricted universe")
    return ball_rank_upto(univ, ball, w)


class RestrictedVerifier(Verifier):
    """Accepts w' iff w' is in [u'] and ``inner`` accepts phi(w')."""

    def __init__(self, inner: Verifier, parent: Universe, ball: Ball, child: Universe):
        self.inner = inner
        self.parent = parent
        self.ball = ball
        self.child = child
        self.witness_length = child.n_u
        self.depth = getattr(inner, "depth", 0) + 1
        self.label = f"{getattr(inner, 'label', 'verifier')}|a{self.depth}"
        # plain ints for the per-query path
        self._args = (parent.n_u, ball.center.value, ball.radius, parent.u)

    def phi_value(self, value: int) -> int:
        n, a, d, u = self._args
        return kernels.unrank(n, a, d, u, value + 1)

    def accepts_value(self, value: int) -> bool:
        # walk the chain iteratively; chains can be hundreds of levels deep
        v: Verifier = self
        while isinstance(v, RestrictedVerifier):
            if value >= v.child.u:
                return False
            n, a, d, u = v._args
            value = kernels.unrank(n, a, d, u, value + 1)
            v = v.inner
        return v.accepts_value(value)

    def chain(self) -> List["RestrictedVerifier"]:
        """Restrictions from the outermost (applied first) to this one."""
        out = []
        v: Verifier = self
        while isinstance(v, RestrictedVerifier):
            out.append(v)
            v = v.inner
        out.reverse()
        return out

    def root(self) -> Verifier:
        v: Verifier = self
        while isinstance(v, RestrictedVerifier):
            v = v.inner
        return v


def phi_apply(rv: RestrictedVerifier, w_prime: BitString) -> BitString:
    if w_prime not in rv.child:
        raise ValueError(f"not a member: {w_prime} is outside [{rv.child.u}]")
    return BitString(rv.phi_value(w_prime.value), rv.parent.n_u)


def phi_inverse(rv: RestrictedVerifier, w: BitString) -> BitString:
    """The string in [u'] that ``phi`` maps onto ``w``."""
    i = rank(rv.parent, rv.ball, w)
    return BitString(i - 1, rv.child.n_u)


def restrict_verifier(inner: Verifier, univ: Universe, ball: Ball) -> RestrictedVerifier:
    _check_center(univ, ball)
    if inner.witness_length != univ.n_u:
        raise ValueError("verifier witness length differs from the universe's n_u")
    u_prime = ball_universe_count(univ, ball)
    if u_prime < 1:
        raise ValueError("empty restriction: the ball misses the universe")
    return RestrictedVerifier(inner, univ, ball, Universe(u_prime))

"""Universe-shrinking decision procedure driven by a Hamming-approximation oracle.

``check_universe`` repeatedly asks the oracle for an approximate witness
``a``, keeps only the candidates within ``floor(n_u/2 + H(n_u, alpha))`` of
it, relabels the survivors as a smaller universe and recurses, until the
universe is small enough to enumerate. With a compliant oracle the answer
is exact; with any oracle a True answer is backed by an accepted witness.

Oracles here are simulations for experiments: :class:`PlantedOracle` knows a
witness and follows its image through the restriction chain.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, List, Optional, Protocol

from hamwit.ball import Ball, RestrictedVerifier, Universe, ball_universe_count, rank, restrict_verifier
from hamwit.core import ApproxParams, BitString, ball_radius
from hamwit.verifier import Verifier

__all__ = [
    "ApproxOracle", "DeciderConfig", "RunTrace", "DeciderError", "CannotShrink",
    "MalformedOracleAnswer", "TrackingBroken", "check_universe", "decide",
    "PlantedOracle", "AdversarialOracle", "planted_oracle", "adversarial_noncompliant_oracle",
]


class DeciderError(RuntimeError):
    pass


class CannotShrink(DeciderError):
    pass


class MalformedOracleAnswer(DeciderError):
    pass


class TrackingBroken(DeciderError):
    pass


class ApproxOracle(Protocol):
    def __call__(self, v: Verifier, n_u: int, params: ApproxParams) -> BitString:
        ...


def default_base_case_cap(n: int) -> int:
    return max(64, n * n)


@dataclass(frozen=True)
class DeciderConfig:
    params: ApproxParams = field(default_factory=lambda: ApproxParams(0.25))
    base_case_cap: Callable[[int], int] = default_base_case_cap
    enumeration_cap: int = 1 << 20


@dataclass
class RunTrace:
    recursion_count: int = 0
    u_sequence: List[int] = field(default_factory=list)
    oracle_calls: int = 0
    outcome: Optional[bool] = None
    fallback_used: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "RunTrace":
        return cls(**json.loads(text))


def _enumerate(v: Verifier, u: int) -> bool:
    return any(v.accepts_value(x) for x in range(u))


def check_universe(n: int, univ: Universe, v: Verifier, oracle: ApproxOracle,
                   cfg: Optional[DeciderConfig] = None) -> tuple[bool, RunTrace]:
    """Decide whether ``v`` accepts any string of ``univ``.

    ``v`` must reject everything outside ``[univ.u]``. The recursion of the
    textbook formulation is unrolled into a loop; each iteration is one
    level and is recorded in the trace.
    """
    cfg = cfg or DeciderConfig()
    if v.witness_length != univ.n_u:
        raise ValueError(f"verifier takes {v.witness_length}-bit witnesses, universe has {univ.n_u}-bit strings")
    trace = RunTrace()
    cap = cfg.base_case_cap(n)
    while True:
        trace.recursion_count += 1
        trace.u_sequence.append(univ.u)
        if univ.u <= cap:
            trace.outcome = _enumerate(v, univ.u)
            return trace.outcome, trace

        a = oracle(v, univ.n_u, cfg.params)
        trace.oracle_calls += 1
        if not isinstance(a, BitString) or a.length != univ.n_u:
            raise MalformedOracleAnswer(
                f"malformed oracle answer: expected {univ.n_u} bits, got {a!r}"
            )
        ball = Ball.around(a, cfg.params)
        u_prime = ball_universe_count(univ, ball)
        if u_prime == 0:
            # no candidate survives, so a compliant oracle saw no witness
            trace.outcome = False
            return False, trace
        if u_prime == univ.u:
            if univ.u > cfg.enumeration_cap:
                raise CannotShrink(f"cannot shrink: u={univ.u} exceeds the enumeration cap")
            trace.fallback_used = True
            trace.outcome = _enumerate(v, univ.u)
            return trace.outcome, trace
        v = restrict_verifier(v, univ, ball)
        univ = v.child


def decide(v_family: Callable[[int], Verifier], max_len: int, oracle: ApproxOracle,
           cfg: Optional[DeciderConfig] = None, traces: Optional[list] = None) -> bool:
    """Try every witness length 0..max_len; True if any length has a witness."""
    found = False
    for n in range(max_len + 1):
        v = v_family(n)
        if v.witness_length != n:
            raise ValueError(f"family member {n} takes {v.witness_length}-bit witnesses")
        ok, trace = check_universe(n, Universe.full(n), v, oracle, cfg)
        if traces is not None:
            traces.append(trace)
        if ok:
            found = True
            break
    return found


class PlantedOracle:
    """Compliant oracle built around a known witness of the root verifier.

    At every level the witness is carried through ``phi^-1`` to its current
    coordinates, then ``flips`` of its bits are inverted:

    * ``exact_max``: exactly floor(n_u/2 + H) bits (all bits if that exceeds n_u)
    * ``uniform_up_to_max``: a uniform count in [0, floor(n_u/2 + H)]
    * ``zero``: none

    With ``witness=None`` (no-witness instances) answers are uniform strings.
    ``failure_prob`` replaces an answer by a uniform string with that
    probability, modelling a randomized oracle that sometimes fails.
    """

    POLICIES = ("exact_max", "uniform_up_to_max", "zero")

    def __init__(self, witness: Optional[BitString], policy: str = "exact_max", seed: int = 0,
                 failure_prob: float = 0.0):
        if policy not in self.POLICIES:
            raise ValueError(f"unknown flip policy {policy!r}")
        self.witness = witness
        self.policy = policy
        self.rng = random.Random(seed)
        self.failure_prob = failure_prob
        self._last: Optional[tuple] = None

    def image(self, v: Verifier) -> BitString:
        """Current coordinates of the planted witness under ``v``'s restrictions."""
        if not isinstance(v, RestrictedVerifier):
            if self.witness.length != v.witness_length:
                raise TrackingBroken("tracking broken: witness length differs from the verifier's")
            return self.witness
        if self._last is not None and self._last[0] is v.inner:
            steps, w = [v], self._last[1]
        else:
            steps, w = v.chain(), self.witness
        for rv in steps:
            if w not in rv.parent or w not in rv.ball:
                raise TrackingBroken(f"tracking broken: planted witness left the universe at depth {rv.depth}")
            w = BitString(rank(rv.parent, rv.ball, w) - 1, rv.child.n_u)
        self._last = (v, w)
        return w

    def __call__(self, v: Verifier, n_u: int, params: ApproxParams) -> BitString:
        if self.witness is None or (self.failure_prob and self.rng.random() < self.failure_prob):
            return BitString(self.rng.getrandbits(n_u) if n_u else 0, n_u)
        w = self.image(v)
        if w.length != n_u:
            raise TrackingBroken(f"tracking broken: image has {w.length} bits, universe {n_u}")
        d = min(ball_radius(n_u, params), n_u)
        if self.policy == "exact_max":
            k = d
        elif self.policy == "uniform_up_to_max":
            k = self.rng.randint(0, d)
        else:
            k = 0
        return w.flip(self.rng.sample(range(n_u), k))


class AdversarialOracle:
    """Ignores every guarantee; ``length_delta`` makes answers malformed."""

    def __init__(self, seed: int = 0, length_delta: int = 0):
        self.rng = random.Random(seed)
        self.length_delta = length_delta

    def __call__(self, v: Verifier, n_u: int, params: ApproxParams) -> BitString:
        m = max(n_u + self.length_delta, 0)
        return BitString(self.rng.getrandbits(m) if m else 0, m)


def planted_oracle(witness: Optional[BitString], flip_count_policy: str = "exact_max", seed: int = 0) -> PlantedOracle:
    return PlantedOracle(witness, flip_count_policy, seed)


def adversarial_noncompliant_oracle(seed: int = 0) -> AdversarialOracle:
    return AdversarialOracle(seed)

"""n/2-Hamming approximators for natural verifiers, plus black-box baselines.

Vertex Cover goes through a half-integral optimum of the LP relaxation,
obtained combinatorially: double every vertex into a left and right copy,
take a minimum vertex cover of the bipartite double (maximum matching then
Konig), and average the two copies. Independent Set and Clique are the
usual complement reductions on top.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, FrozenSet, List, Optional, Set, Tuple

from hamwit.core import BitString, binomial, enum_cap
from hamwit.instances import CnfFormula, Graph
from hamwit.verifier import Verifier


def halfsplit_decision_approx(n: int, k: int) -> BitString:
    """Empty set when k <= n/2, everything otherwise.

    Works for any subset verifier whose witnesses can be resized to exactly
    k elements (covers grow, independent sets and cliques shrink).
    """
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    return BitString.zeros(n) if 2 * k <= n else BitString.ones(n)


def nae3sat_allfalse(f: CnfFormula) -> BitString:
    """All-false assignment; NAE solutions come in complementary pairs."""
    return BitString.zeros(f.variable_count)


@dataclass(frozen=True)
class HalfIntegralSolution:
    doubled: Tuple[int, ...]  # 2 * y_v, each in {0, 1, 2}

    def __post_init__(self):
        if any(x not in (0, 1, 2) for x in self.doubled):
            raise ValueError("entries must be 0, 1/2 or 1")

    @property
    def values(self) -> List[Fraction]:
        return [Fraction(x, 2) for x in self.doubled]

    @property
    def cost(self) -> Fraction:
        return Fraction(sum(self.doubled), 2)

    def is_feasible(self, g: Graph) -> bool:
        return all(self.doubled[a] + self.doubled[b] >= 2 for a, b in g.edges)

    def ones(self) -> FrozenSet[int]:
        return frozenset(v for v, x in enumerate(self.doubled) if x == 2)

    def support(self) -> FrozenSet[int]:
        return frozenset(v for v, x in enumerate(self.doubled) if x > 0)


def _max_bipartite_matching(adj: List[List[int]], right_size: int) -> Tuple[List[int], List[int]]:
    """Augmenting-path matching; lowest indices tried first."""
    match_l = [-1] * len(adj)
    match_r = [-1] * right_size

    def augment(x: int, seen: List[bool]) -> bool:
        for y in adj[x]:
            if seen[y]:
                continue
            seen[y] = True
            if match_r[y] == -1 or augment(match_r[y], seen):
                match_l[x] = y
                match_r[y] = x
                return True
        return False

    for x in range(len(adj)):
        augment(x, [False] * right_size)
    return match_l, match_r


def _konig_cover(adj: List[List[int]], match_l: List[int], match_r: List[int]) -> Tuple[Set[int], Set[int]]:
    """Minimum vertex cover (left part, right part) from a maximum matching."""
    reach_l = {x for x in range(len(adj)) if match_l[x] == -1}
    reach_r: Set[int] = set()
    stack = sorted(reach_l)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in reach_r or match_l[x] == y:
                continue
            reach_r.add(y)
            z = match_r[y]
            if z != -1 and z not in reach_l:
                reach_l.add(z)
                stack.append(z)
    cover_l = {x for x in range(len(adj)) if x not in reach_l}
    return cover_l, reach_r


def half_integral_lp_optimum(g: Graph) -> HalfIntegralSolution:
    if g.directed:
        raise ValueError("vertex cover needs an undirected graph")
    n = g.vertex_count
    adj: List[List[int]] = [[] for _ in range(n)]
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    for row in adj:
        row.sort()
    match_l, match_r = _max_bipartite_matching(adj, n)
    cover_l, cover_r = _konig_cover(adj, match_l, match_r)
    return HalfIntegralSolution(tuple(int(v in cover_l) + int(v in cover_r) for v in range(n)))


def nt_vertex_cover_approx(g: Graph) -> FrozenSet[int]:
    return half_integral_lp_optimum(g).support()


def nt_independent_set_approx(g: Graph) -> FrozenSet[int]:
    return frozenset(range(g.vertex_count)) - nt_vertex_cover_approx(g)


def nt_clique_approx(g: Graph) -> FrozenSet[int]:
    return nt_independent_set_approx(g.complement())


# ------------------------------------------------------------------ baselines

def lowweight_candidates(n: int, c: int):
    """Strings of weight <= c, by weight and then lexicographically."""
    for weight in range(min(c, n) + 1):
        for ones in combinations(range(n), weight):
            value = 0
            for p in ones:
                value |= 1 << (n - 1 - p)
            yield BitString(value, n)


def deterministic_lowweight_baseline(v: Verifier, c: int, budget: Optional[int] = None) -> BitString:
    """Return an accepted string of weight <= c if there is one, else 1^n."""
    n = v.witness_length
    total = sum(binomial(n, j) for j in range(min(c, n) + 1))
    limit = enum_cap() if budget is None else budget
    if total > limit:
        raise RuntimeError(f"budget exceeded: {total} candidates > {limit}")
    for w in lowweight_candidates(n, c):
        if v.accepts_value(w.value):
            return w
    return BitString.ones(n)


def randomized_baseline(n: int, seed: int) -> BitString:
    rng = random.Random(seed)
    return BitString(rng.getrandbits(n) if n else 0, n)


@dataclass(frozen=True)
class AdversaryOutcome:
    query_count: int
    achieved_distance: int
    adversary_lost: bool
    witness: Optional[BitString]

    def __iter__(self):
        return iter((self.query_count, self.achieved_distance))


QueryStrategy = Callable[[Callable[[BitString], bool], int], BitString]


def adversary_game(algorithm: QueryStrategy, n: int, c: int) -> AdversaryOutcome:
    """Answer every query "no", then hide the witness at distance n-c+1 from the output.

    The witness goes to the lexicographically first unqueried string at that
    distance; if all of them were queried the adversary loses and
    ``achieved_distance`` is 0.
    """
    target = n - c + 1
    if not 0 <= target <= n:
        raise ValueError(f"need 1 <= c <= n+1, got c={c} for n={n}")
    queried: Set[int] = set()
    count = 0

    def query(w: BitString) -> bool:
        nonlocal count
        if w.length != n:
            raise ValueError("query of the wrong length")
        count += 1
        queried.add(w.value)
        return False

    a = algorithm(query, n)
    if a.length != n:
        raise ValueError("algorithm output of the wrong length")
    for flips in combinations(range(n), target):
        w = a.flip(flips)
        if w.value not in queried:
            return AdversaryOutcome(count, target, False, w)
    return AdversaryOutcome(count, 0, True, None)


def lowweight_query_strategy(c: int) -> QueryStrategy:
    """The deterministic baseline phrased as a black-box query strategy."""

    def run(query, n):
        for w in lowweight_candidates(n, c):
            if query(w):
                return w
        return BitString.ones(n)

    return run

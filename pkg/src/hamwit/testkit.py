"""Brute-force oracles and seeded instance generators.

Nothing here touches the counting code in ``hamwit.core`` / ``hamwit.ball``;
every answer comes from direct enumeration, so comparing against these is
a genuine cross-check.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from hamwit.core import BitString, enum_cap
from hamwit.instances import CnfFormula, Graph
from hamwit.verifier import Verifier

MASK64 = (1 << 64) - 1


class EnumerationCapExceeded(RuntimeError):
    pass


def _check_cap(count: int, cap: Optional[int]) -> None:
    limit = enum_cap() if cap is None else cap
    if count > limit:
        raise EnumerationCapExceeded(f"{count} candidates exceed the enumeration cap {limit}")


def enumerate_witnesses(v: Verifier, cap: Optional[int] = None) -> List[BitString]:
    n = v.witness_length
    _check_cap(1 << n, cap)
    return [BitString(x, n) for x in range(1 << n) if v.accepts_value(x)]


def nearest_witness_distance(a: BitString, v: Verifier, cap: Optional[int] = None) -> Optional[int]:
    if a.length != v.witness_length:
        raise ValueError("unequal lengths")
    best = None
    for w in enumerate_witnesses(v, cap):
        d = bin(a.value ^ w.value).count("1")
        if best is None or d < best:
            best = d
    return best


def ball_members_bruteforce(n_u: int, a: BitString, d: int, u: int, cap: Optional[int] = None) -> List[BitString]:
    if n_u > 22:
        raise EnumerationCapExceeded("n_u > 22")
    _check_cap(1 << n_u, cap)
    if a.length != n_u:
        raise ValueError("center length differs from n_u")
    return [
        BitString(x, n_u)
        for x in range(min(u, 1 << n_u))
        if bin(x ^ a.value).count("1") <= d
    ]


def tail_count_bruteforce(m: int, threshold: float) -> int:
    return sum(1 for x in range(1 << m) if bin(x).count("1") > threshold)


# ------------------------------------------------------------ graph oracles

def _is_cover(mask: int, edges: Sequence[Tuple[int, int]]) -> bool:
    return all(mask >> a & 1 or mask >> b & 1 for a, b in edges)


def min_vertex_covers_exact(g: Graph, cap: int = 20) -> Tuple[int, List[Tuple[int, ...]]]:
    """Size and every minimum vertex cover (sorted tuples, sorted list)."""
    if g.vertex_count > cap:
        raise EnumerationCapExceeded(f"{g.vertex_count} vertices exceed the cap {cap}")
    n = g.vertex_count
    edges = g.edges
    for size in range(n + 1):
        found = []
        for combo in combinations(range(n), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if _is_cover(mask, edges):
                found.append(combo)
        if found:
            return size, found
    raise AssertionError("the full vertex set is always a cover")


def max_independent_sets_exact(g: Graph, cap: int = 20) -> Tuple[int, List[Tuple[int, ...]]]:
    size, covers = min_vertex_covers_exact(g, cap)
    everything = set(range(g.vertex_count))
    sets = sorted(tuple(sorted(everything - set(c))) for c in covers)
    return g.vertex_count - size, sets


def max_cliques_exact(g: Graph, cap: int = 20) -> Tuple[int, List[Tuple[int, ...]]]:
    if g.vertex_count > cap:
        raise EnumerationCapExceeded(f"{g.vertex_count} vertices exceed the cap {cap}")
    n = g.vertex_count
    present = set(g.edges)
    for size in range(n, -1, -1):
        found = [
            c for c in combinations(range(n), size)
            if all((a, b) in present for a, b in combinations(c, 2))
        ]
        if found:
            return size, found
    raise AssertionError("the empty set is always a clique")


def hamiltonian_cycles(g: Graph, cap: int = 12) -> List[Tuple[Tuple[int, int], ...]]:
    """All directed Hamiltonian cycles, each as its sorted edge tuple.

    Cycles are rooted at vertex 0 so each appears once.
    """
    if not g.directed:
        raise ValueError("directed graphs only")
    n = g.vertex_count
    if n > cap:
        raise EnumerationCapExceeded(f"{n} vertices exceed the cap {cap}")
    if n < 2:
        return []
    succ: Dict[int, List[int]] = {v: [] for v in range(n)}
    for a, b in g.edges:
        succ[a].append(b)
    out = []

    def extend(path: List[int], seen: int) -> None:
        last = path[-1]
        if len(path) == n:
            if 0 in succ[last]:
                cyc = list(zip(path, path[1:])) + [(last, 0)]
                out.append(tuple(sorted(cyc)))
            return
        for nxt in succ[last]:
            if not seen >> nxt & 1:
                path.append(nxt)
                extend(path, seen | 1 << nxt)
                path.pop()

    extend([0], 1)
    return sorted(out)


def is_hamiltonian_cycle(g: Graph, edges) -> bool:
    """Direct check: n edges of g, every vertex left and entered once, one orbit."""
    edges = list(edges)
    n = g.vertex_count
    present = set(g.edges)
    if len(edges) != n or n < 2 or not all(e in present for e in edges):
        return False
    succ = dict(edges)
    if len(succ) != n or len(set(succ.values())) != n:
        return False
    v, steps = 0, 0
    while True:
        v = succ[v]
        steps += 1
        if v == 0:
            return steps == n


# -------------------------------------------------------------- SAT oracles

def _clause_masks(f: CnfFormula) -> List[Tuple[int, int]]:
    """Per clause, the bits whose 1 (resp. 0) satisfies it, MSB = variable 1."""
    n = f.variable_count
    out = []
    for clause in f.clauses:
        pos = neg = 0
        for lit in clause:
            bit = 1 << (n - abs(lit))
            if lit > 0:
                pos |= bit
            else:
                neg |= bit
        out.append((pos, neg))
    return out


def sat_assignments(f: CnfFormula, cap: Optional[int] = None) -> List[BitString]:
    n = f.variable_count
    _check_cap(1 << n, cap)
    masks = _clause_masks(f)
    full = (1 << n) - 1
    return [
        BitString(x, n) for x in range(1 << n)
        if all(x & pos or (full ^ x) & neg for pos, neg in masks)
    ]


def nae_assignments(f: CnfFormula, cap: Optional[int] = None) -> List[BitString]:
    n = f.variable_count
    _check_cap(1 << n, cap)
    out = []
    for x in range(1 << n):
        ok = True
        for clause in f.clauses:
            vals = {((x >> (n - abs(l))) & 1) == (1 if l > 0 else 0) for l in clause}
            if vals != {True, False}:
                ok = False
                break
        if ok:
            out.append(BitString(x, n))
    return out


def feasible_values(f: CnfFormula, var: int, cap: Optional[int] = None) -> set:
    """Truth values of ``var`` that extend to a satisfying assignment."""
    return {bool(w[var]) for w in sat_assignments(f, cap)}


# ---------------------------------------------------------------- generators

def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Per-trial seed: splitmix64 applied to (seed + index * golden gamma)."""
    return splitmix64((seed + index * 0x9E3779B97F4A7C15) & MASK64)


def _clause_vars(rng: random.Random, n: int) -> List[int]:
    if n >= 3:
        return rng.sample(range(n), 3)
    return [rng.randrange(n) for _ in range(3)]


def random_3cnf(n: int, m: int, seed: int) -> CnfFormula:
    rng = random.Random(seed)
    clauses = []
    for _ in range(m):
        clauses.append(tuple((v + 1) * rng.choice((1, -1)) for v in _clause_vars(rng, n)))
    return CnfFormula(n, clauses)


def planted_3cnf(n: int, m: int, seed: int) -> Tuple[CnfFormula, BitString]:
    """Random 3-CNF satisfied by a uniformly drawn planted assignment."""
    rng = random.Random(seed)
    plant = BitString(rng.getrandbits(n) if n else 0, n)
    clauses = []
    for _ in range(m):
        vs = _clause_vars(rng, n)
        while True:
            lits = tuple((v + 1) * rng.choice((1, -1)) for v in vs)
            if any(plant[abs(l) - 1] == (1 if l > 0 else 0) for l in lits):
                break
        clauses.append(lits)
    return CnfFormula(n, clauses), plant


def random_nae3sat(n: int, m: int, seed: int) -> Tuple[CnfFormula, BitString]:
    """Random 3-CNF that the planted assignment satisfies in the NAE sense."""
    if n < 2:
        raise ValueError("NAE clauses need at least two variables")
    rng = random.Random(seed)
    plant = BitString(rng.getrandbits(n), n)
    clauses = []
    for _ in range(m):
        vs = _clause_vars(rng, n)
        while True:
            lits = tuple((v + 1) * rng.choice((1, -1)) for v in vs)
            vals = {plant[abs(l) - 1] == (1 if l > 0 else 0) for l in lits}
            if vals == {True, False}:
                break
        clauses.append(lits)
    return CnfFormula(n, clauses), plant


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(a, b) for a, b in combinations(range(n), 2) if rng.random() < p])


# -------------------------------------------------------------------- corpus

_GENERATORS = {
    "3cnf": lambda p, s: random_3cnf(p["n"], p["m"], s),
    "planted_3cnf": lambda p, s: planted_3cnf(p["n"], p["m"], s)[0],
    "nae3sat": lambda p, s: random_nae3sat(p["n"], p["m"], s)[0],
    "graph": lambda p, s: random_graph(p["n"], p["p"], s),
}


def _payload(obj: Any) -> Dict[str, Any]:
    if isinstance(obj, Graph):
        return {"vertex_count": obj.vertex_count, "edges": [list(e) for e in obj.edges], "directed": obj.directed}
    if isinstance(obj, CnfFormula):
        return {"variable_count": obj.variable_count, "clauses": [list(c) for c in obj.clauses]}
    raise TypeError(type(obj))


def payload_instance(kind: str, payload: Dict[str, Any]):
    if kind == "graph":
        return Graph(payload["vertex_count"], [tuple(e) for e in payload["edges"]], payload.get("directed", False))
    return CnfFormula(payload["variable_count"], payload["clauses"])


@dataclass
class Corpus:
    seed: int
    instances: List[Dict[str, Any]] = field(default_factory=list)

    @classmethod
    def generate(cls, seed: int, requests: Sequence[Tuple[str, Dict[str, Any]]]) -> "Corpus":
        """One instance per (kind, params) request, seeded by position."""
        out = cls(seed)
        for i, (kind, params) in enumerate(requests):
            obj = _GENERATORS[kind](params, derive_seed(seed, i))
            out.instances.append({"kind": kind, "params": dict(params), "payload": _payload(obj)})
        return out

    def objects(self) -> List[Any]:
        return [payload_instance(inst["kind"], inst["payload"]) for inst in self.instances]

    def to_json(self) -> str:
        return json.dumps({"seed": self.seed, "instances": self.instances}, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Corpus":
        data = json.loads(text)
        return cls(data["seed"], data["instances"])


# ---------------------------------------------------------- gadget corpora

def vc_toy_corpus(seed: int, count: int, max_n: int = 4) -> List[Tuple[Graph, int]]:
    """Connected random graphs on 2..max_n vertices, each with a chosen non-isolated vertex."""
    rng = random.Random(seed)
    out: List[Tuple[Graph, int]] = []
    while len(out) < count:
        n = rng.randint(2, max_n)
        g = random_graph(n, rng.choice([0.4, 0.6, 0.8]), rng.getrandbits(32))
        if g.is_connected():
            out.append((g, rng.randrange(n)))
    return out


def _pair_invariant_holds(g: Graph, pair: Tuple[Tuple[int, int], Tuple[int, int]]) -> bool:
    cycles = hamiltonian_cycles(g)
    return bool(cycles) and all((pair[0] in c) != (pair[1] in c) for c in cycles)


def hc_toy_corpus(seed: int = 0, count: int = 12, max_n: int = 6) -> List[Tuple[Graph, Tuple[Tuple[int, int], Tuple[int, int]]]]:
    """Small digraphs with a registered opposite edge pair (1, 2) / (2, 1).

    The first entry is the 4-cycle 0->1->2->3->0 plus the back edge 2->1.
    Each further entry is a seeded random digraph in which every Hamiltonian
    cycle uses exactly one edge of the pair, and at least one cycle exists.
    """
    pair = ((1, 2), (2, 1))
    out = [(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 1)], directed=True), pair)]
    rng = random.Random(seed)
    while len(out) < count:
        n = rng.randint(4, max_n)
        arcs = [(a, b) for a in range(n) for b in range(n) if a != b and {a, b} != {1, 2}]
        chosen = [e for e in arcs if rng.random() < 0.35]
        g = Graph(n, chosen + list(pair), directed=True)
        if _pair_invariant_holds(g, pair):
            out.append((g, pair))
    return out

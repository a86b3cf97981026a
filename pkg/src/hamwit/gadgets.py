"""Amplification gadgets: padding one variable, vertex or edge pair.

Each construction blows up a single decision (a feasible value for one
variable, whether a vertex is in some minimum cover) into many coordinates,
so any string within n'/2 - n'^eps of a witness must agree with that
witness on a strict majority of the new coordinates. The decoders read the
decision back off an approximate witness.

Exponents: ``epsilon`` is rounded down to 1/ceil(1/epsilon), so the
blow-up n^(1/epsilon) is an integer power of n.
"""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, NamedTuple, Optional, Tuple

from hamwit.core import BitString
from hamwit.instances import CnfFormula, CnfVerifier, Graph, dimacs_str, edge_list_str

Edge = Tuple[int, int]


def blowup_exponent(epsilon: float) -> int:
    """ceil(1/epsilon); the padding size is n raised to this power."""
    if not 0 < epsilon <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    return math.ceil(1 / epsilon - 1e-12)


def guarantee_flips(n_prime: int, epsilon: float) -> int:
    """floor(n'/2 - n'^eps'), the largest corruption a compliant answer may carry."""
    eps = 1 / blowup_exponent(epsilon)
    return max(math.floor(n_prime / 2 - n_prime ** eps), 0)


# ------------------------------------------------------------------- 3-SAT

@dataclass(frozen=True)
class PaddedFormula:
    base: CnfFormula
    target_var: int
    duplicate_vars: Tuple[int, ...]
    epsilon: float
    formula: CnfFormula

    @property
    def n_prime(self) -> int:
        return self.formula.variable_count

    def extend(self, w: BitString) -> BitString:
        """Base assignment extended by copying the target's value onto every duplicate."""
        z = w[self.target_var]
        n = len(self.duplicate_vars)
        return BitString((w.value << n) | (((1 << n) - 1) if z else 0), self.n_prime)

    def dimacs(self) -> str:
        dup = " ".join(str(v + 1) for v in self.duplicate_vars)
        return dimacs_str(self.formula, [f"target: {self.target_var + 1}", f"duplicates: {dup}",
                                         f"epsilon: {self.epsilon}"])


def pad_sat(f: CnfFormula, epsilon: float, target_var: int = 0) -> PaddedFormula:
    """Add N = n^ceil(1/eps) copies of the target variable, each tied to it by z_i = z."""
    n = f.variable_count
    if n < 1:
        raise ValueError("formula has no variables")
    count = n ** blowup_exponent(epsilon)
    z = target_var + 1
    dups = tuple(range(n, n + count))
    clauses = list(f.clauses)
    for d in dups:
        lit = d + 1
        clauses.append((lit, -z, -z))   # z -> z_i
        clauses.append((-lit, z, z))    # z_i -> z
    return PaddedFormula(f, target_var, dups, epsilon, CnfFormula(n + count, clauses))


class MajorityDecode(NamedTuple):
    value: bool
    tie: bool


def decode_sat_majority(pf: PaddedFormula, a_prime: BitString) -> MajorityDecode:
    if a_prime.length != pf.n_prime:
        raise ValueError(f"expected {pf.n_prime} bits, got {a_prime.length}")
    ones = sum(a_prime[d] for d in pf.duplicate_vars)
    zeros = len(pf.duplicate_vars) - ones
    if ones == zeros:
        return MajorityDecode(True, True)
    return MajorityDecode(ones > zeros, False)


FeasibleOracle = Callable[[CnfFormula, int], bool]


def solve_sat_via_feasible_oracle(f: CnfFormula, oracle: FeasibleOracle,
                                  repeats_exponent: int = 0) -> Optional[BitString]:
    """Fix variables one at a time to the majority of n^repeats_exponent oracle votes.

    Fixed variables are pinned by unit clauses so the oracle always sees a
    3-CNF. Returns a satisfying assignment, or None when the final
    assignment fails verification.
    """
    n = f.variable_count
    repeats = max(n ** repeats_exponent, 1)
    current = f
    bits = []
    for var in range(n):
        votes = sum(1 for _ in range(repeats) if oracle(current, var))
        value = 2 * votes >= repeats
        bits.append(int(value))
        current = current.with_fixed(var, value)
    w = BitString.from_bits(bits)
    return w if CnfVerifier(f).accepts(w) else None


# ------------------------------------------------------------- vertex cover

class VcCase(str, enum.Enum):
    CONTAINS_V = "a"   # some minimum cover of G contains v
    EXCLUDES_V = "b"   # some minimum cover of G avoids v


@dataclass(frozen=True)
class VcGadget:
    base: Graph
    v: int
    k: int
    g_prime: Graph
    k_prime: int
    path: Tuple[int, ...]        # v = path[0], ..., path[-1] = v'
    p0: FrozenSet[int]
    p1: FrozenSet[int]

    @property
    def v_prime(self) -> int:
        return self.path[-1]

    @property
    def path_len(self) -> int:
        return len(self.path) - 1

    @property
    def path_vertices(self) -> FrozenSet[int]:
        return self.p0 | self.p1

    def sidecar(self) -> Dict:
        return {"v": self.v, "v_prime": self.v_prime, "k": self.k, "k_prime": self.k_prime,
                "path": list(self.path), "p0": sorted(self.p0), "p1": sorted(self.p1)}

    def write(self, stem: str) -> Tuple[str, str]:
        """Write ``<stem>.edges`` and ``<stem>.json``; returns both paths."""
        graph_path, meta_path = f"{stem}.edges", f"{stem}.json"
        with open(graph_path, "w") as fh:
            fh.write(edge_list_str(self.g_prime))
        with open(meta_path, "w") as fh:
            json.dump(self.sidecar(), fh, indent=1)
        return graph_path, meta_path


def build_vc_gadget(g: Graph, v: int, k: int, epsilon: float) -> VcGadget:
    """Copy v to v' and join them by an even path of about n^(1/eps) edges.

    Vertex numbering: v' = n, interior path vertices n+1, n+2, ... in order.
    """
    n = g.vertex_count
    nbrs = g.neighbors(v)
    if not nbrs:
        raise ValueError(f"vertex {v} is isolated")
    length = n ** blowup_exponent(epsilon)
    length += length % 2
    v_prime = n
    interior = list(range(n + 1, n + length))
    path = (v, *interior, v_prime)
    edges = list(g.edges)
    edges += [(v_prime, x) for x in nbrs]
    edges += list(zip(path, path[1:]))
    g_prime = Graph(n + length, edges)
    p0 = frozenset(path[2::2])
    p1 = frozenset(path[1::2])
    return VcGadget(g, v, k, g_prime, k + length // 2, path, p0, p1)


def _restricted_distance(chosen: Iterable[int], target: FrozenSet[int], universe: FrozenSet[int]) -> int:
    return len((set(chosen) & universe) ^ target)


def decode_vc_gadget(gdt: VcGadget, c_a: Iterable[int]) -> VcCase:
    c_a = set(c_a)
    d0 = _restricted_distance(c_a, gdt.p0, gdt.path_vertices)
    d1 = _restricted_distance(c_a, gdt.p1, gdt.path_vertices)
    return VcCase.CONTAINS_V if d0 < d1 else VcCase.EXCLUDES_V


# --------------------------------------------------------- Hamiltonian cycle

@dataclass
class EdgePairReduction:
    """A 3-SAT to directed Hamiltonian Cycle reduction, as far as the gadget needs it.

    ``var_edge_pairs[z] = ((u, v), (v, u))``: every Hamiltonian cycle uses
    exactly one of the two edges, the first meaning z = True.
    """

    graph: Graph
    var_edge_pairs: Dict[int, Tuple[Edge, Edge]]
    extract: Optional[Callable[[FrozenSet[Edge]], Dict[int, bool]]] = None

    def __post_init__(self):
        if not self.graph.directed:
            raise ValueError("the reduction produces a directed graph")
        present = set(self.graph.edges)
        for z, (fwd, back) in self.var_edge_pairs.items():
            if fwd not in present or back not in present or fwd != (back[1], back[0]):
                raise ValueError(f"variable {z}: {fwd}, {back} is not a pair of opposite edges of the graph")

    def extract_assignment(self, cycle: Iterable[Edge]) -> Dict[int, bool]:
        cycle = frozenset(cycle)
        if self.extract is not None:
            return self.extract(cycle)
        return {z: fwd in cycle for z, (fwd, _) in self.var_edge_pairs.items()}


@dataclass(frozen=True)
class HcGadget:
    reduction: EdgePairReduction
    target_var: int
    g_prime: Graph
    k: int
    chain: Tuple[int, ...]       # v = chain[0], interior..., chain[-1] = v'
    p0: FrozenSet[Edge]
    p1: FrozenSet[Edge]

    @property
    def duplicates(self) -> FrozenSet[Edge]:
        return self.p0 | self.p1

    def project_cycle(self, cycle: Iterable[Edge]) -> FrozenSet[Edge]:
        """Map a cycle of G' back to G by contracting the duplicated path."""
        cycle = set(cycle)
        v, vp = self.chain[0], self.chain[-1]
        out = cycle - self.duplicates
        if self.p0 <= cycle:
            out.add((v, vp))
        if self.p1 <= cycle:
            out.add((vp, v))
        return frozenset(out)

    def lift_cycle(self, cycle: Iterable[Edge]) -> FrozenSet[Edge]:
        """Map a cycle of G to G' by routing the pair edge it uses through its path."""
        cycle = set(cycle)
        v, vp = self.chain[0], self.chain[-1]
        if (v, vp) in cycle:
            return frozenset((cycle - {(v, vp)}) | self.p0)
        if (vp, v) in cycle:
            return frozenset((cycle - {(vp, v)}) | self.p1)
        raise ValueError("cycle avoids both edges of the pair")

    def edge_bits(self, edges: Iterable[Edge]) -> BitString:
        """Edge subset of G' as a bit string over the sorted edge list."""
        chosen = set(edges)
        return BitString.from_bits(int(e in chosen) for e in self.g_prime.edges)

    def bits_edges(self, w: BitString) -> FrozenSet[Edge]:
        return frozenset(e for i, e in enumerate(self.g_prime.edges) if w[i])

    def sidecar(self) -> Dict:
        return {"v": self.chain[0], "v_prime": self.chain[-1], "k": self.k,
                "target_var": self.target_var, "chain": list(self.chain),
                "p0": sorted(list(e) for e in self.p0), "p1": sorted(list(e) for e in self.p1)}

    def write(self, stem: str) -> Tuple[str, str]:
        graph_path, meta_path = f"{stem}.edges", f"{stem}.json"
        with open(graph_path, "w") as fh:
            fh.write(edge_list_str(self.g_prime))
        with open(meta_path, "w") as fh:
            json.dump(self.sidecar(), fh, indent=1)
        return graph_path, meta_path


def build_hc_gadget(red: EdgePairReduction, z: int, epsilon: float,
                    interior: Optional[int] = None) -> HcGadget:
    """Replace z's edge pair by two opposite paths over k shared new vertices.

    k = ceil(|E|^(1/eps) / 2) unless ``interior`` overrides it.
    """
    if z not in red.var_edge_pairs:
        raise KeyError(f"variable {z} has no registered edge pair")
    (v, vp), _ = red.var_edge_pairs[z]
    g = red.graph
    n_edges = len(g.edges)
    k = interior if interior is not None else math.ceil(n_edges ** blowup_exponent(epsilon) / 2)
    if k < 1:
        raise ValueError("the gadget needs at least one interior vertex")
    base_n = g.vertex_count
    chain = (v, *range(base_n, base_n + k), vp)
    p0 = frozenset(zip(chain, chain[1:]))
    p1 = frozenset((b, a) for a, b in zip(chain, chain[1:]))
    edges = [e for e in g.edges if e not in {(v, vp), (vp, v)}]
    edges += sorted(p0 | p1)
    g_prime = Graph(base_n + k, edges, directed=True)
    return HcGadget(red, z, g_prime, k, chain, p0, p1)


def decode_hc_gadget(gdt: HcGadget, p_prime: Iterable[Edge]) -> bool:
    chosen = set(p_prime) & gdt.duplicates
    d0 = len(chosen ^ gdt.p0)
    d1 = len(chosen ^ gdt.p1)
    return d0 < d1


# ---------------------------------------------------------------- helpers

def corrupt(w: BitString, flips: int, rng: random.Random) -> BitString:
    """Flip ``flips`` distinct uniformly chosen positions."""
    return w.flip(rng.sample(range(w.length), min(flips, w.length)))

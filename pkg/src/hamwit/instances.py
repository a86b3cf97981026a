"""Graph and CNF instances, their text formats, and natural verifiers.

Variables and vertices are 0-indexed. A witness bit string puts variable
(vertex) ``i`` at position ``i``, i.e. the most significant bit is index 0.
CNF literals use the DIMACS convention internally: ``+(i+1)`` is variable
``i``, ``-(i+1)`` its negation.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

from hamwit.core import BitString
from hamwit.verifier import Verifier

Edge = Tuple[int, int]
Clause = Tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: Tuple[Edge, ...]
    directed: bool = False

    def __init__(self, vertex_count: int, edges: Iterable[Edge] = (), directed: bool = False):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {vertex_count} vertices")
            norm.add((u, v) if directed or u < v else (v, u))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "directed", directed)

    @property
    def n(self) -> int:
        return self.vertex_count

    def neighbors(self, v: int) -> List[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return sorted(out)

    def adjacency_masks(self) -> List[int]:
        """Bit ``j`` of entry ``i`` is set when {i, j} is an edge (undirected view)."""
        adj = [0] * self.vertex_count
        for a, b in self.edges:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return adj

    def complement(self) -> "Graph":
        if self.directed:
            raise ValueError("complement is defined for undirected graphs only")
        present = set(self.edges)
        return Graph(
            self.vertex_count,
            (e for e in combinations(range(self.vertex_count), 2) if e not in present),
        )

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        adj = self.adjacency_masks()
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for i in range(self.vertex_count):
                if frontier >> i & 1:
                    nxt |= adj[i]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.vertex_count) - 1


@dataclass(frozen=True)
class CnfFormula:
    variable_count: int
    clauses: Tuple[Clause, ...]

    def __init__(self, variable_count: int, clauses: Iterable[Sequence[int]] = ()):
        cl = []
        for c in clauses:
            c = tuple(int(x) for x in c)
            for lit in c:
                if lit == 0 or abs(lit) > variable_count:
                    raise ValueError(f"literal {lit} references no variable of {variable_count}")
            cl.append(c)
        object.__setattr__(self, "variable_count", variable_count)
        object.__setattr__(self, "clauses", tuple(cl))

    @property
    def n(self) -> int:
        return self.variable_count

    def _masks(self) -> List[Tuple[int, int]]:
        n = self.variable_count
        out = []
        for c in self.clauses:
            pos = neg = 0
            for lit in c:
                bit = 1 << (n - abs(lit))
                if lit > 0:
                    pos |= bit
                else:
                    neg |= bit
            out.append((pos, neg))
        return out

    def satisfied_by(self, assignment: Union[BitString, int]) -> bool:
        value = assignment.value if isinstance(assignment, BitString) else assignment
        full = (1 << self.variable_count) - 1
        return all((value & p) or (~value & full & q) for p, q in self._masks())

    def with_fixed(self, var: int, value: bool) -> "CnfFormula":
        """Same formula plus a unit clause (repeated to width 3) fixing ``var``."""
        lit = var + 1 if value else -(var + 1)
        return CnfFormula(self.variable_count, self.clauses + ((lit, lit, lit),))


class CnfVerifier(Verifier):
    """Natural 3-SAT verifier: the witness is the truth assignment."""

    def __init__(self, formula: CnfFormula, label: str = "cnf"):
        self.formula = formula
        self.witness_length = formula.variable_count
        self._masks = formula._masks()
        self._full = (1 << formula.variable_count) - 1
        self.label = label

    def accepts_value(self, value: int) -> bool:
        inv = ~value & self._full
        for p, q in self._masks:
            if not ((value & p) or (inv & q)):
                return False
        return True


class NaeVerifier(Verifier):
    """Not-all-equal verifier: every clause needs a true and a false literal."""

    def __init__(self, formula: CnfFormula, label: str = "nae"):
        self.formula = formula
        self.witness_length = formula.variable_count
        self._masks = formula._masks()
        self._full = (1 << formula.variable_count) - 1
        self.label = label

    def accepts_value(self, value: int) -> bool:
        inv = ~value & self._full
        for p, q in self._masks:
            some_true = (value & p) or (inv & q)
            some_false = (inv & p) or (value & q)
            if not (some_true and some_false):
                return False
        return True


def subset_to_bits(subset: Iterable[int], n: int) -> BitString:
    value = 0
    for v in subset:
        value |= 1 << (n - 1 - v)
    return BitString(value, n)


def bits_to_subset(w: BitString) -> FrozenSet[int]:
    return frozenset(i for i in range(w.length) if w[i])


class VertexCoverVerifier(Verifier):
    """Accepts covers of size at most k (k=None: any cover)."""

    def __init__(self, graph: Graph, k: Optional[int] = None, label: str = "vc"):
        self.graph = graph
        self.k = k
        self.witness_length = graph.vertex_count
        self._edges = [(1 << (graph.n - 1 - a)) | (1 << (graph.n - 1 - b)) for a, b in graph.edges]
        self.label = label

    def accepts_value(self, value: int) -> bool:
        if self.k is not None and value.bit_count() > self.k:
            return False
        return all(value & e for e in self._edges)


class IndependentSetVerifier(Verifier):
    """Accepts independent sets of size at least k."""

    def __init__(self, graph: Graph, k: int = 0, label: str = "is"):
        self.graph = graph
        self.k = k
        self.witness_length = graph.vertex_count
        self._edges = [(1 << (graph.n - 1 - a)) | (1 << (graph.n - 1 - b)) for a, b in graph.edges]
        self.label = label

    def accepts_value(self, value: int) -> bool:
        if value.bit_count() < self.k:
            return False
        return all(value & e != e for e in self._edges)


# ---------------------------------------------------------------- text formats

def write_edge_list(g: Graph, fh: TextIO) -> None:
    fh.write(f"p {g.vertex_count} {len(g.edges)}\n")
    for a, b in g.edges:
        fh.write(f"{a} {b}\n")


def read_edge_list(fh: TextIO, directed: bool = False) -> Graph:
    n = None
    m = None
    edges = []
    for raw in fh:
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ValueError("duplicate header line")
            n, m = int(parts[1]), int(parts[2])
            continue
        if n is None:
            raise ValueError("edge before 'p <n> <m>' header")
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, edges, directed=directed)


def edge_list_str(g: Graph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()


def write_dimacs(f: CnfFormula, fh: TextIO, comments: Iterable[str] = ()) -> None:
    for c in comments:
        fh.write(f"c {c}\n")
    fh.write(f"p cnf {f.variable_count} {len(f.clauses)}\n")
    for clause in f.clauses:
        fh.write(" ".join(str(lit) for lit in clause) + " 0\n")


def read_dimacs(fh: TextIO) -> CnfFormula:
    n = None
    clauses: List[List[int]] = []
    current: List[int] = []
    for raw in fh:
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            n = int(parts[2])
            continue
        if n is None:
            raise ValueError("clause before 'p cnf' header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if n is None:
        raise ValueError("missing 'p cnf' header")
    return CnfFormula(n, clauses)


def dimacs_str(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    buf = io.StringIO()
    write_dimacs(f, buf, comments)
    return buf.getvalue()


def dimacs_comments(text: str) -> Dict[str, str]:
    """``c key: value`` comment lines as a dict."""
    out = {}
    for line in text.splitlines():
        if line.startswith("c ") and ":" in line:
            k, v = line[2:].split(":", 1)
            out[k.strip()] = v.strip()
    return out

import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamwit.gadgets import build_vc_gadget
from hamwit.instances import (
    CnfFormula, Graph, dimacs_comments, dimacs_str, edge_list_str, read_dimacs, read_edge_list, write_dimacs,
)


graphs = st.integers(1, 9).flatmap(lambda n: st.builds(
    lambda es: Graph(n, es),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]), max_size=20),
))

formulas = st.integers(1, 8).flatmap(lambda n: st.builds(
    lambda cs: CnfFormula(n, cs),
    st.lists(st.lists(st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v])), min_size=3, max_size=3),
             max_size=15),
))


class TestEdgeList:
    def test_format(self):
        assert edge_list_str(Graph(3, [(1, 0), (1, 2)])) == "p 3 2\n0 1\n1 2\n"

    @settings(max_examples=200)
    @given(graphs)
    def test_roundtrip(self, g):
        assert read_edge_list(io.StringIO(edge_list_str(g))) == g

    def test_directed_roundtrip(self):
        g = Graph(3, [(2, 0), (0, 2), (1, 2)], directed=True)
        assert read_edge_list(io.StringIO(edge_list_str(g)), directed=True) == g

    @pytest.mark.parametrize("text", ["0 1\n", "p 2 2\n0 1\n", "p 2 1\n0 1 1\n", "", "p 2 1\n0 5\n"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            read_edge_list(io.StringIO(text))

    def test_comments_ignored(self):
        assert read_edge_list(io.StringIO("c hi\np 2 1\n# note\n0 1\n")) == Graph(2, [(0, 1)])


class TestDimacs:
    def test_format(self):
        text = dimacs_str(CnfFormula(3, [(1, -2, 3)]), ["origin: test"])
        assert text == "c origin: test\np cnf 3 1\n1 -2 3 0\n"
        assert dimacs_comments(text) == {"origin": "test"}

    @settings(max_examples=200)
    @given(formulas)
    def test_roundtrip(self, f):
        buf = io.StringIO()
        write_dimacs(f, buf)
        assert read_dimacs(io.StringIO(buf.getvalue())) == f

    def test_multiline_clause(self):
        assert read_dimacs(io.StringIO("p cnf 3 1\n1 -2\n3 0\n")) == CnfFormula(3, [(1, -2, 3)])

    @pytest.mark.parametrize("text", ["1 2 3 0\n", "p sat 3 1\n", "p cnf 2 1\n1 5 2 0\n"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            read_dimacs(io.StringIO(text))


class TestSidecar:
    def test_gadget_files(self, tmp_path):
        gdt = build_vc_gadget(Graph(3, [(0, 1), (1, 2)]), 1, 1, 1)
        graph_path, meta_path = gdt.write(str(tmp_path / "gadget"))
        with open(graph_path) as fh:
            assert read_edge_list(fh) == gdt.g_prime
        with open(meta_path) as fh:
            meta = json.load(fh)
        assert set(meta) == {"v", "v_prime", "k", "k_prime", "path", "p0", "p1"}
        assert set(meta["p0"]) | set(meta["p1"]) == set(meta["path"][1:])

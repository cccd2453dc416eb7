"""Tests for the hypergraph core types and queries."""

from __future__ import annotations

from eris import Err
import numpy as np
from pytest import mark, param, raises

from hyperlim import (
    Hypergraph,
    InputError,
    UniformHypergraph,
    WeightedGraph,
    as_uniform,
    codegree,
    codegree_matrix,
    complete_hypergraph,
    decompose,
    degree,
    degree_vector,
    is_linear,
    union,
)


params = mark.parametrize

SINGLE_EDGE = UniformHypergraph.from_edges(3, [(0, 1, 2)], 3)


def test_from_edges_sorts_vertices_and_edges() -> None:
    """Edges may be given unsorted; the stored form is canonical."""
    H = Hypergraph.from_edges(5, [(4, 2, 3), (1, 0, 2)])
    assert H.edges == ((0, 1, 2), (2, 3, 4))
    assert H.rank == 3


@params(
    "n,edges",
    [
        param(3, [(0, 0, 1)], id="repeated-vertex"),
        param(3, [(0, 1, 3)], id="out-of-range"),
        param(3, [(0, 1), (1, 0)], id="duplicate-edge"),
        param(0, [], id="no-vertices"),
    ],
)
def test_invalid_hypergraphs(n: int, edges: list) -> None:
    """Malformed vertex or edge data raises an input error."""
    with raises(InputError):
        Hypergraph.from_edges(n, edges)


def test_uniform_rejects_mixed_edges() -> None:
    """Every edge of a UniformHypergraph must have r vertices."""
    with raises(InputError):
        UniformHypergraph.from_edges(4, [(0, 1), (1, 2, 3)], 2)
    with raises(InputError):
        as_uniform(Hypergraph.from_edges(4, [(0, 1), (1, 2, 3)]))


def test_text_format() -> None:
    """The text format round-trips and tolerates comments."""
    text = "# a triangle\nN 4\n0 1 2\n\n1 2 3\n"
    H_r = Hypergraph.from_text(text)
    H = H_r.ok()
    assert H.edges == ((0, 1, 2), (1, 2, 3))
    assert H.to_text() == "N 4\n0 1 2\n1 2 3\n"


@params(
    "text,lineno",
    [
        param("N 3\n0 1 x\n", 2, id="non-integer"),
        param("N 3\n2 1\n", 2, id="descending"),
        param("N 3\n0 3\n", 2, id="out-of-range"),
        param("M 3\n", 1, id="bad-header"),
    ],
)
def test_text_format_errors(text: str, lineno: int) -> None:
    """Parse errors are reported as Err results naming the line."""
    H_r = Hypergraph.from_text(text)
    assert isinstance(H_r, Err)
    assert f"line {lineno}" in str(H_r.err())


def test_degree_and_codegree() -> None:
    """Hand-checked incidence counts of a single 3-edge."""
    assert degree(SINGLE_EDGE, 0) == 1
    assert codegree(SINGLE_EDGE, 0, 1) == 1

    H = UniformHypergraph.from_edges(4, [(0, 1, 2)], 3)
    assert codegree(H, 0, 3) == 0
    assert degree(H, 3) == 0
    with raises(InputError):
        degree(H, 4)


def test_codegree_matrix_matches_pairwise_queries() -> None:
    """The incidence product agrees with the per-pair definitions."""
    H = UniformHypergraph.from_edges(
        5, [(0, 1, 2), (0, 1, 3), (1, 3, 4)], 3
    )
    C = codegree_matrix(H)
    for u in range(5):
        assert C[u, u] == degree(H, u)
        for v in range(5):
            if u != v:
                assert C[u, v] == codegree(H, u, v)
    assert list(degree_vector(H)) == [2, 3, 1, 2, 1]


def test_decompose() -> None:
    """Levels are split by edge size and size-1 edges are dropped."""
    H = Hypergraph.from_edges(4, [(0, 1), (0, 1, 2), (3,)])
    D = decompose(H)
    assert D.rank == 3
    assert sorted(D.levels) == [2, 3]
    assert D.levels[2].edges == ((0, 1),)
    assert D.ignored == 1

    with raises(InputError):
        decompose(Hypergraph.from_edges(2, [(0,), (1,)]))


@params(
    "edges,expected",
    [
        param([(0, 1, 2), (2, 3, 4)], True, id="share-one"),
        param([(0, 1, 2), (0, 1, 3)], False, id="share-two"),
    ],
)
def test_is_linear(edges: list, expected: bool) -> None:
    """Linearity means no pair of vertices lies in two edges."""
    assert is_linear(UniformHypergraph.from_edges(5, edges, 3)) is expected


def test_complete_and_union() -> None:
    """K_n^(r) has C(n, r) edges and union merges edge sets."""
    K = complete_hypergraph(5, 3)
    assert len(K.edges) == 10

    A = Hypergraph.from_edges(4, [(0, 1)])
    B = Hypergraph.from_edges(4, [(0, 1), (1, 2, 3)])
    assert union([A, B]).edges == ((0, 1), (1, 2, 3))


def test_weighted_graph_validation() -> None:
    """Weights must be square, symmetric and nonnegative."""
    G = WeightedGraph.from_matrix([[0, 1], [1, 0]])
    assert G.n == 2
    assert not G.weights.flags.writeable

    with raises(InputError):
        WeightedGraph.from_matrix([[0, 1], [2, 0]])
    with raises(InputError):
        WeightedGraph.from_matrix(np.array([[0, -1], [-1, 0]]))

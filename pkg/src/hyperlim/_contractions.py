"""Tensor-to-matrix contractions of hypergraph adjacency tensors."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from logrus import Logger
import numpy as np
from scipy import sparse

from ._constants import RW_VARIANT_EXPONENTS, RandomWalkVariant
from ._errors import DegeneracyError, InputError
from ._hypergraph import (
    Hypergraph,
    UniformHypergraph,
    WeightedGraph,
    codegree_matrix,
    decompose,
    degree_vector,
)


logger = Logger(__name__)


class IntersectionMatrices(NamedTuple):
    """The raw B(H) and its graphon normalization B(H)/N^(r-1)."""

    raw: WeightedGraph
    normalized: WeightedGraph


class RandomWalkMatrices(NamedTuple):
    """The (D, A) pair describing one hypergraph random walk."""

    degrees: np.ndarray
    adjacency: WeightedGraph


def codegree_section(H: UniformHypergraph) -> WeightedGraph:
    """The loopless codegree-section G[H] with weights codeg/N^(r-2)."""
    weights = codegree_matrix(H).astype(np.float64)
    np.fill_diagonal(weights, 0.0)
    weights /= float(H.n ** (H.r - 2))
    return WeightedGraph.from_matrix(weights)


def intersection_matrix(H: UniformHypergraph) -> IntersectionMatrices:
    """The vertex-vertex intersection matrix B(H).

    B[u][v] counts the (r-1)-sets S with S+u and S+v both edges. This is the
    ordered-tuple sum divided by (r-1)!, since each S is hit by (r-1)! ordered
    tuples. The diagonal is the degree.
    """
    n, r = H.n, H.r
    counts = np.zeros((n, n), dtype=np.int64)

    if H.edges:
        edges = H.edge_array
        faces = np.concatenate(
            [np.delete(edges, j, axis=1) for j in range(r)], axis=0
        )
        apexes = np.concatenate([edges[:, j] for j in range(r)])
        _, face_ids = np.unique(faces, axis=0, return_inverse=True)
        face_ids = face_ids.reshape(-1)
        membership = sparse.csr_matrix(
            (np.ones(len(apexes), dtype=np.int64), (face_ids, apexes)),
            shape=(int(face_ids.max()) + 1, n),
        )
        counts = np.asarray(
            (membership.T @ membership).toarray(), dtype=np.int64
        )

    raw = counts.astype(np.float64)
    normalized = raw / float(n ** (r - 1))
    return IntersectionMatrices(
        raw=WeightedGraph.from_matrix(raw),
        normalized=WeightedGraph.from_matrix(normalized),
    )


def p_weighted_adjacency(H: Hypergraph, p: Sequence[float]) -> WeightedGraph:
    """The p-weighted adjacency matrix A(H; p).

    Args:
        H: A hypergraph of rank R.
        p: Probability vector whose i-th entry is the weight of level i + 2.
    """
    levels = decompose(H)
    R = levels.rank
    if len(p) != R - 1:
        raise InputError(
            f"Weight vector has {len(p)} entries but the hypergraph has rank"
            f" {R} (expected {R - 1} entries for levels 2..{R})."
        )
    if any(p_r < 0 for p_r in p) or abs(sum(p) - 1.0) > 1e-9:
        raise InputError(f"Weights must be nonnegative and sum to 1: {p!r}")
    if p[-1] <= 0:
        raise InputError("The top-level weight p_R must be positive.")

    n = H.n
    total = np.zeros((n, n), dtype=np.float64)
    for r, level in levels.levels.items():
        section = codegree_section(level).weights
        total += p[r - 2] * float(n ** (r - 2)) * section
    total *= float(n) ** (2 - R)
    return WeightedGraph.from_matrix(total)


def rw_matrices(
    H: Hypergraph, variant: RandomWalkVariant
) -> RandomWalkMatrices:
    """The (D, A) matrices of one of the three hypergraph random walks."""
    deg_exp, adj_exp = RW_VARIANT_EXPONENTS[variant]
    levels = decompose(H)

    n = H.n
    degrees = np.zeros(n, dtype=np.float64)
    adjacency = np.zeros((n, n), dtype=np.float64)
    for r, level in levels.levels.items():
        codeg = codegree_matrix(level).astype(np.float64)
        np.fill_diagonal(codeg, 0.0)
        degrees += float(r - 1) ** deg_exp * degree_vector(level)
        adjacency += float(r - 1) ** adj_exp * codeg

    isolated = np.flatnonzero(degrees == 0)
    if isolated.size:
        v = int(isolated[0])
        raise DegeneracyError(
            f"Vertex {v} is isolated (D[{v}] = 0) for the {variant!r} random"
            " walk.",
            index=v,
        )

    logger.debug(
        "Built random walk matrices.",
        variant=variant,
        n=n,
        rank=levels.rank,
    )
    return RandomWalkMatrices(
        degrees=degrees, adjacency=WeightedGraph.from_matrix(adjacency)
    )


def random_walk_matrix(D: np.ndarray, A: WeightedGraph) -> np.ndarray:
    """The transition matrix M[i][j] = A[i][j] / D[i]."""
    D = np.asarray(D, dtype=np.float64)
    if D.shape != (A.n,):
        raise InputError(
            f"Degree vector has shape {D.shape}, expected {(A.n,)}."
        )

    bad = np.flatnonzero(D <= 0)
    if bad.size:
        v = int(bad[0])
        raise DegeneracyError(
            f"Vertex {v} has nonpositive degree D[{v}] = {D[v]}.", index=v
        )
    return A.weights / D[:, None]

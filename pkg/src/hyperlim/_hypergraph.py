"""Contains the Hypergraph, UniformHypergraph and WeightedGraph types."""

from __future__ import annotations

from functools import cached_property
import itertools as it
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    Type,
    TypeVar,
    Union,
)

from eris import ErisError, Err, Ok, Result
from logrus import Logger
import numpy as np
from pydantic.dataclasses import dataclass
from scipy import sparse

from ._errors import InputError


logger = Logger(__name__)

Hypergraph_T = TypeVar("Hypergraph_T", bound="Hypergraph")
Edge = Tuple[int, ...]


class ArrayConfig:
    """Lets pydantic dataclasses hold numpy arrays."""

    arbitrary_types_allowed = True


@dataclass(frozen=True)
class Hypergraph:
    """A vertex count plus a sorted list of distinct-vertex edges.

    Edges are strictly increasing tuples of 0-based vertex ids and the edge
    list itself is strictly increasing (lexicographically), so two equal
    hypergraphs compare equal field by field.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init_post_parse__(self) -> None:
        if self.n < 1:
            raise InputError(f"Vertex count must be positive: n={self.n}")

        previous: Optional[Edge] = None
        for edge in self.edges:
            if not edge:
                raise InputError("Hypergraph edges must be nonempty.")
            if any(a >= b for a, b in zip(edge, edge[1:])):
                raise InputError(
                    f"Edge {edge!r} is not strictly increasing (repeated or"
                    " unsorted vertex ids)."
                )
            if edge[0] < 0 or edge[-1] >= self.n:
                raise InputError(
                    f"Edge {edge!r} has a vertex id outside [0, {self.n})."
                )
            if previous is not None and edge <= previous:
                raise InputError(
                    f"Edge list is not strictly sorted at {edge!r} (duplicate"
                    " or out-of-order edge)."
                )
            previous = edge

    @classmethod
    def from_edges(
        cls: Type["Hypergraph_T"], n: int, edges: Iterable[Iterable[int]]
    ) -> "Hypergraph_T":
        """Builds a hypergraph from edges given in any order."""
        normalized = []
        for edge in edges:
            vertices = tuple(sorted(int(v) for v in edge))
            if len(set(vertices)) != len(vertices):
                raise InputError(f"Edge {vertices!r} repeats a vertex.")
            normalized.append(vertices)

        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise InputError(f"Duplicate edge: {a!r}")
        return cls(n=n, edges=tuple(normalized))

    @classmethod
    def from_text(
        cls: Type["Hypergraph_T"], text: str
    ) -> Result["Hypergraph_T", ErisError]:
        """Parses the `N <int>` + one-edge-per-line text format."""
        if not text.endswith("\n"):
            return Err("Hypergraph text must end with a newline.")

        n: Optional[int] = None
        edges = []
        for lineno, raw_line in enumerate(text.split("\n")[:-1], start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue

            if n is None:
                header = line.split()
                if len(header) != 2 or header[0] != "N":
                    return Err(
                        f"line {lineno}: expected header 'N <integer>', got"
                        f" {raw_line!r}"
                    )
                try:
                    n = int(header[1])
                except ValueError:
                    return Err(
                        f"line {lineno}: vertex count is not an integer:"
                        f" {header[1]!r}"
                    )
                continue

            try:
                edge = tuple(int(tok) for tok in line.split())
            except ValueError:
                return Err(
                    f"line {lineno}: edge contains a non-integer vertex id:"
                    f" {raw_line!r}"
                )
            if any(a >= b for a, b in zip(edge, edge[1:])):
                return Err(
                    f"line {lineno}: edge vertex ids must be strictly"
                    f" ascending: {raw_line!r}"
                )
            if edge[0] < 0 or edge[-1] >= n:
                return Err(
                    f"line {lineno}: vertex id out of range [0, {n}):"
                    f" {raw_line!r}"
                )
            edges.append(edge)

        if n is None:
            return Err("Hypergraph text is missing its 'N <integer>' header.")

        try:
            return Ok(cls.from_edges(n, edges))
        except InputError as e:
            return Err(f"Invalid hypergraph: {e}")

    def to_text(self) -> str:
        """Renders the hypergraph text format (bit-exact with from_text)."""
        lines = [f"N {self.n}"]
        lines.extend(" ".join(str(v) for v in edge) for edge in self.edges)
        return "\n".join(lines) + "\n"

    @property
    def rank(self) -> int:
        """Largest edge cardinality (0 for an edgeless hypergraph)."""
        return max((len(e) for e in self.edges), default=0)

    @cached_property
    def incidence(self) -> sparse.csr_matrix:
        """The |E| x n edge-vertex incidence matrix."""
        sizes = [len(e) for e in self.edges]
        rows = np.repeat(np.arange(len(self.edges)), sizes)
        cols = np.fromiter(
            it.chain.from_iterable(self.edges),
            dtype=np.int64,
            count=sum(sizes),
        )
        data = np.ones(len(cols), dtype=np.int64)
        return sparse.csr_matrix(
            (data, (rows, cols)), shape=(len(self.edges), self.n)
        )


@dataclass(frozen=True)
class UniformHypergraph:
    """An r-uniform hypergraph (every edge has exactly r vertices)."""

    base: Hypergraph
    r: int

    def __post_init_post_parse__(self) -> None:
        if self.r < 2:
            raise InputError(f"Uniformity must be at least 2: r={self.r}")
        for edge in self.base.edges:
            if len(edge) != self.r:
                raise InputError(
                    f"Edge {edge!r} does not have exactly r={self.r}"
                    " vertices."
                )

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[Iterable[int]], r: int
    ) -> UniformHypergraph:
        """Builds an r-uniform hypergraph from an edge list."""
        return cls(base=Hypergraph.from_edges(n, edges), r=r)

    @property
    def n(self) -> int:
        """Vertex count."""
        return self.base.n

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Sorted edge list."""
        return self.base.edges

    @cached_property
    def edge_array(self) -> np.ndarray:
        """The edges as an (|E|, r) integer array."""
        result = np.array(self.edges, dtype=np.int64).reshape(-1, self.r)
        result.setflags(write=False)
        return result


def as_uniform(H: Hypergraph, r: Optional[int] = None) -> UniformHypergraph:
    """Views H as r-uniform, inferring r from the edges when not given."""
    if r is None:
        sizes = {len(e) for e in H.edges}
        if len(sizes) != 1:
            raise InputError(
                "Cannot infer the uniformity of a hypergraph with edge sizes"
                f" {sorted(sizes)}."
            )
        (r,) = sizes
    return UniformHypergraph(base=H, r=r)


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class WeightedGraph:
    """A dense symmetric nonnegative weight matrix on n vertices."""

    n: int
    weights: np.ndarray

    def __post_init_post_parse__(self) -> None:
        weights = np.array(self.weights, dtype=np.float64)
        if weights.shape != (self.n, self.n):
            raise InputError(
                f"Weight matrix has shape {weights.shape}, expected"
                f" {(self.n, self.n)}."
            )
        if not np.all(np.isfinite(weights)):
            raise InputError("Weight matrix has non-finite entries.")
        if not np.array_equal(weights, weights.T):
            raise InputError("Weight matrix is not symmetric.")
        if np.any(weights < 0):
            raise InputError("Weight matrix has negative entries.")

        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_matrix(cls, matrix: Any) -> WeightedGraph:
        """Wraps a square weight matrix as a float64 weighted graph."""
        matrix = np.asarray(matrix, dtype=np.float64)
        return cls(n=matrix.shape[0], weights=matrix)


@dataclass(frozen=True)
class RankDecomposition:
    """The levels H^(r) of a hypergraph together with its rank R."""

    levels: Dict[int, UniformHypergraph]
    rank: int
    ignored: int = 0

    def __post_init_post_parse__(self) -> None:
        if not self.levels or self.rank != max(self.levels):
            raise InputError(
                "Rank must equal the largest level cardinality present."
            )


def _check_vertex(H: UniformHypergraph, v: int) -> None:
    if not 0 <= v < H.n:
        raise InputError(f"Vertex id {v} is outside [0, {H.n}).")


def degree(H: UniformHypergraph, v: int) -> int:
    """Number of edges containing v."""
    _check_vertex(H, v)
    return sum(1 for edge in H.edges if v in edge)


def codegree(H: UniformHypergraph, u: int, v: int) -> int:
    """Number of edges containing both u and v (the degree when u == v)."""
    _check_vertex(H, u)
    _check_vertex(H, v)
    return sum(1 for edge in H.edges if u in edge and v in edge)


def degree_vector(H: UniformHypergraph) -> np.ndarray:
    """All vertex degrees at once."""
    return np.bincount(H.edge_array.ravel(), minlength=H.n).astype(np.int64)


def codegree_matrix(
    H: Union[Hypergraph, UniformHypergraph]
) -> np.ndarray:
    """All codegrees at once; the diagonal holds the degrees.

    Computed as I^T I for the edge-vertex incidence matrix I, so the cost is
    proportional to the number of (edge, vertex pair) incidences.
    """
    base = H.base if isinstance(H, UniformHypergraph) else H
    incidence = base.incidence
    return np.asarray((incidence.T @ incidence).toarray(), dtype=np.int64)


def decompose(H: Hypergraph) -> RankDecomposition:
    """Splits H into its uniform levels, dropping size-1 edges."""
    by_size: Dict[int, List[Edge]] = {}
    ignored = 0
    for edge in H.edges:
        if len(edge) == 1:
            ignored += 1
            continue
        by_size.setdefault(len(edge), []).append(edge)

    if not by_size:
        raise InputError("Hypergraph has no edge of size 2 or more.")

    if ignored:
        logger.warning(
            "Ignoring %d size-1 edge(s) while decomposing into levels.",
            ignored,
            ignored=ignored,
        )

    levels = {
        r: UniformHypergraph(base=Hypergraph(n=H.n, edges=tuple(edges)), r=r)
        for r, edges in sorted(by_size.items())
    }
    return RankDecomposition(levels=levels, rank=max(levels), ignored=ignored)


def is_linear(H: UniformHypergraph) -> bool:
    """True iff no two distinct edges share two or more vertices."""
    seen = set()
    for edge in H.edges:
        for pair in it.combinations(edge, 2):
            if pair in seen:
                return False
            seen.add(pair)
    return True


def complete_hypergraph(n: int, r: int) -> UniformHypergraph:
    """All C(n, r) r-subsets of n vertices."""
    return UniformHypergraph(
        base=Hypergraph(n=n, edges=tuple(it.combinations(range(n), r))), r=r
    )


def union(levels: Sequence[Hypergraph]) -> Hypergraph:
    """Edge-set union of hypergraphs on a common vertex set."""
    if not levels:
        raise InputError("Cannot take the union of zero hypergraphs.")
    n = levels[0].n
    if any(H.n != n for H in levels):
        raise InputError("Hypergraphs in a union must share a vertex count.")
    return Hypergraph.from_edges(
        n, set(it.chain.from_iterable(H.edges for H in levels))
    )

"""Homomorphism numbers and densities of graphs and uniform hypergraphs."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, isclose
import string
from typing import (
    Any,
    Iterable,
    List,
    NamedTuple,
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

from ._constants import MAX_DENSITY_VERTICES
from ._contractions import codegree_section, intersection_matrix
from ._errors import CapacityError, InputError
from ._hypergraph import (
    Hypergraph,
    UniformHypergraph,
    WeightedGraph,
    codegree_matrix,
)
from ._step import StepKernel, StepTensor


logger = Logger(__name__)

Graph_T = TypeVar("Graph_T", bound="SimpleGraph")
Number = Union[int, float, Fraction]
Pair = Tuple[int, int]


@dataclass(frozen=True)
class SimpleGraph:
    """A loopless simple graph; edges are sorted pairs (u, v) with u < v."""

    n: int
    edges: Tuple[Pair, ...] = ()

    def __post_init_post_parse__(self) -> None:
        if self.n < 1:
            raise InputError(f"Vertex count must be positive: n={self.n}")
        for u, v in self.edges:
            if not 0 <= u < v < self.n:
                raise InputError(
                    f"Edge ({u}, {v}) is a loop, unsorted, or out of range."
                )
        if list(self.edges) != sorted(set(self.edges)):
            raise InputError("Edge list must be sorted without duplicates.")

    @classmethod
    def from_edges(
        cls: Type["Graph_T"], n: int, edges: Iterable[Sequence[int]]
    ) -> "Graph_T":
        """Builds a graph from unordered pairs given in any order."""
        pairs = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"Loops are not allowed: ({u}, {v})")
            pairs.add((min(u, v), max(u, v)))
        return cls(n=n, edges=tuple(sorted(pairs)))

    @classmethod
    def from_text(
        cls: Type["Graph_T"], text: str
    ) -> Result["Graph_T", ErisError]:
        """Parses the `N <int>` + one `u v` pair per line format."""
        n: Optional[int] = None
        pairs: List[Pair] = []
        for lineno, raw_line in enumerate(text.splitlines(), start=1):
            line = raw_line.strip()
            if not line or line.startswith("#"):
                continue

            tokens = line.split()
            if n is None:
                if len(tokens) != 2 or tokens[0] != "N":
                    return Err(
                        f"line {lineno}: expected header 'N <integer>', got"
                        f" {raw_line!r}"
                    )
                try:
                    n = int(tokens[1])
                except ValueError:
                    return Err(
                        f"line {lineno}: bad vertex count {tokens[1]!r}"
                    )
                continue

            try:
                u, v = (int(tok) for tok in tokens)
            except ValueError:
                return Err(
                    f"line {lineno}: expected a 'u v' integer pair, got"
                    f" {raw_line!r}"
                )
            pairs.append((u, v))

        if n is None:
            return Err("Graph text is missing its 'N <integer>' header.")

        try:
            return Ok(cls.from_edges(n, pairs))
        except InputError as e:
            return Err(f"Invalid graph: {e}")

    def to_text(self) -> str:
        """The simple graph text format: an N line, then one edge per line."""
        lines = [f"N {self.n}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DirectedGraph:
    """A loopless directed graph with at most one arc per ordered pair."""

    n: int
    arcs: Tuple[Pair, ...] = ()

    def __post_init_post_parse__(self) -> None:
        if self.n < 1:
            raise InputError(f"Vertex count must be positive: n={self.n}")
        for u, v in self.arcs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"Arc ({u}, {v}) is a loop or out of range.")
        if len(set(self.arcs)) != len(self.arcs):
            raise InputError("Duplicate arcs are not allowed.")


class MomentCheck(NamedTuple):
    """Both sides of hom(C_k, G) = Tr(A^k), plus the eigenvalue power sum."""

    hom: float
    trace: float
    eigen_sum: float


class IdentityCheck(NamedTuple):
    """Left side, right side and agreement of a homomorphism identity."""

    lhs: Number
    rhs: Number
    equal: bool


def cycle_graph(k: int) -> SimpleGraph:
    """The cycle C_k."""
    if k < 3:
        raise InputError(f"Cycles need at least 3 vertices: k={k}")
    return SimpleGraph.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> SimpleGraph:
    """The path on k vertices."""
    return SimpleGraph.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> SimpleGraph:
    """The complete graph K_k."""
    return SimpleGraph.from_edges(
        k, [(i, j) for i in range(k) for j in range(i + 1, k)]
    )


def directed_cycle(k: int) -> DirectedGraph:
    """The directed cycle 0 -> 1 -> ... -> k-1 -> 0."""
    if k < 2:
        raise InputError(f"Directed cycles need at least 2 vertices: k={k}")
    return DirectedGraph(n=k, arcs=tuple((i, (i + 1) % k) for i in range(k)))


def directed_path(k: int) -> DirectedGraph:
    """The directed path 0 -> 1 -> ... -> k-1."""
    return DirectedGraph(n=k, arcs=tuple((i, i + 1) for i in range(k - 1)))


def disjoint_union(F1: SimpleGraph, F2: SimpleGraph) -> SimpleGraph:
    """F1 followed by a relabeled copy of F2."""
    shifted = [(u + F1.n, v + F1.n) for u, v in F2.edges]
    return SimpleGraph.from_edges(F1.n + F2.n, list(F1.edges) + shifted)


def _multilinear_sum(
    num_vertices: int,
    factors: Iterable[Sequence[int]],
    values: np.ndarray,
    vertex_weights: np.ndarray,
) -> float:
    """Σ over vertex assignments of Π values[assigned factor] Π weights."""
    if num_vertices > MAX_DENSITY_VERTICES:
        raise CapacityError(
            f"Densities support at most {MAX_DENSITY_VERTICES} vertices"
            f" (got {num_vertices})."
        )

    letters = string.ascii_letters
    subscripts: List[str] = []
    operands: List[np.ndarray] = []
    weighted = set()
    for factor in factors:
        operand = values
        # Each vertex weight is folded into the first factor that uses it.
        for axis, v in enumerate(factor):
            if v not in weighted:
                weighted.add(v)
                shape = [1] * values.ndim
                shape[axis] = -1
                operand = operand * vertex_weights.reshape(shape)
        subscripts.append("".join(letters[v] for v in factor))
        operands.append(operand)

    isolated = num_vertices - len(weighted)
    scale = float(vertex_weights.sum()) ** isolated
    if not operands:
        return scale

    expr = ",".join(subscripts) + "->"
    return scale * float(np.einsum(expr, *operands, optimize="greedy"))


def _exact_weight(x: float) -> Union[int, Fraction]:
    return int(x) if float(x).is_integer() else Fraction(float(x))


def _hom_weighted_exact(
    F: SimpleGraph, G: WeightedGraph
) -> Union[int, Fraction]:
    matrix = [[_exact_weight(x) for x in row] for row in G.weights]
    earlier: List[List[int]] = [[] for _ in range(F.n)]
    for u, v in F.edges:
        earlier[v].append(u)

    phi = [0] * F.n

    def extend(i: int, acc: Union[int, Fraction]) -> Union[int, Fraction]:
        if i == F.n:
            return acc
        total: Union[int, Fraction] = 0
        for x in range(G.n):
            prod = acc
            for j in earlier[i]:
                prod = prod * matrix[phi[j]][x]
                if not prod:
                    break
            if prod:
                phi[i] = x
                total += extend(i + 1, prod)
        return total

    return extend(0, 1)


def hom_weighted(
    F: SimpleGraph, G: WeightedGraph, *, exact: bool = False
) -> Number:
    """Σ over all maps φ: V(F) -> V(G) of Π_{uv in E(F)} G[φ(u)][φ(v)].

    Non-injective maps count and diagonal (loop) weights participate. With
    exact=True the sum is evaluated in rational arithmetic.
    """
    if exact:
        return _hom_weighted_exact(F, G)
    return _multilinear_sum(F.n, F.edges, G.weights, np.ones(G.n))


def _assignment_order(F: UniformHypergraph) -> Tuple[List[int], List[int]]:
    order: List[int] = []
    seen = set()
    for edge in F.edges:
        for v in edge:
            if v not in seen:
                seen.add(v)
                order.append(v)
    isolated = [v for v in range(F.n) if v not in seen]
    return order, isolated


def hom_hypergraph(F: UniformHypergraph, H: UniformHypergraph) -> int:
    """Number of maps V(F) -> V(H) sending every edge of F onto an edge."""
    if F.r != H.r:
        raise InputError(
            f"Uniformity mismatch: F is {F.r}-uniform, H is {H.r}-uniform."
        )

    order, isolated = _assignment_order(F)
    position = {v: i for i, v in enumerate(order)}
    # checks[i] lists the edges whose last vertex is assigned at step i.
    checks: List[List[Tuple[int, ...]]] = [[] for _ in order]
    for edge in F.edges:
        checks[max(position[v] for v in edge)].append(edge)

    targets = set(H.edges)
    phi = {}

    def extend(i: int) -> int:
        if i == len(order):
            return 1
        total = 0
        for x in range(H.n):
            phi[order[i]] = x
            if all(
                tuple(sorted(phi[v] for v in edge)) in targets
                for edge in checks[i]
            ):
                total += extend(i + 1)
        return total

    return extend(0) * H.n ** len(isolated)


def directed_cycle_density(K: StepKernel, k: int) -> float:
    """t(C_k directed, K) as the trace of (M·diag(weights))^k."""
    return float(np.trace(np.linalg.matrix_power(K.operating_matrix(), k)))


def t_density(F: Any, X: Any) -> float:
    """The homomorphism density t(F, X).

    Supported pairs: (SimpleGraph, WeightedGraph), (SimpleGraph, symmetric
    StepKernel), (DirectedGraph, StepKernel), (UniformHypergraph, StepTensor)
    and (UniformHypergraph, UniformHypergraph).
    """
    if isinstance(F, SimpleGraph) and isinstance(X, WeightedGraph):
        return float(hom_weighted(F, X)) / X.n**F.n

    if isinstance(F, SimpleGraph) and isinstance(X, StepKernel):
        if not X.symmetric:
            raise InputError(
                "Undirected test graphs need a symmetric kernel; use a"
                " DirectedGraph for asymmetric kernels."
            )
        return _multilinear_sum(F.n, F.edges, X.values, X.weights)

    if isinstance(F, DirectedGraph) and isinstance(X, StepKernel):
        return _multilinear_sum(F.n, F.arcs, X.values, X.weights)

    if isinstance(F, UniformHypergraph) and isinstance(X, StepTensor):
        if F.r != X.order:
            raise InputError(
                f"Arity mismatch: F is {F.r}-uniform, tensor has order"
                f" {X.order}."
            )
        return _multilinear_sum(F.n, F.edges, X.values, X.weights)

    if isinstance(F, UniformHypergraph) and isinstance(X, UniformHypergraph):
        return hom_hypergraph(F, X) / X.n**F.n

    raise InputError(
        "Unsupported density arguments:"
        f" ({type(F).__name__}, {type(X).__name__})"
    )


def spectral_moment_check(G: WeightedGraph, k: int) -> MomentCheck:
    """hom(C_k, G) next to Tr(A^k) and Σ λ^k."""
    if k < 3:
        raise InputError(f"Cycle length must be at least 3: k={k}")
    hom = float(hom_weighted(cycle_graph(k), G))
    trace = float(np.trace(np.linalg.matrix_power(G.weights, k)))
    eigen_sum = float(np.sum(np.linalg.eigvalsh(G.weights) ** k))
    return MomentCheck(hom=hom, trace=trace, eigen_sum=eigen_sum)


def subdivide(F: SimpleGraph, r: int) -> UniformHypergraph:
    """The r-subdivision F_r: each edge padded with r fresh vertices."""
    if r < 1:
        raise InputError(f"Subdivision needs r >= 1: r={r}")
    edges = [
        (u, v, *range(F.n + r * t, F.n + r * (t + 1)))
        for t, (u, v) in enumerate(F.edges)
    ]
    n = F.n + r * len(F.edges)
    return UniformHypergraph(base=Hypergraph.from_edges(n, edges), r=r + 2)


def intersection_pattern(F: SimpleGraph, r: int) -> UniformHypergraph:
    """F^(r): two edges {u} + W_e and {v} + W_e per edge, W_e fresh."""
    if r < 1:
        raise InputError(f"Intersection patterns need r >= 1: r={r}")
    edges = []
    for t, (u, v) in enumerate(F.edges):
        internal = tuple(range(F.n + r * t, F.n + r * (t + 1)))
        edges.append((u, *internal))
        edges.append((v, *internal))
    n = F.n + r * len(F.edges)
    return UniformHypergraph(base=Hypergraph.from_edges(n, edges), r=r + 1)


def _resolve_r(H: UniformHypergraph, r: Optional[int], offset: int) -> int:
    inferred = H.r - offset
    if r is not None and r != inferred:
        raise InputError(
            f"Arity mismatch: r={r} needs a {r + offset}-uniform hypergraph,"
            f" got {H.r}-uniform."
        )
    if inferred < 1:
        raise InputError(
            f"A {H.r}-uniform hypergraph is too small for this identity."
        )
    return inferred


def _compare(lhs: Number, rhs: Number, exact: bool) -> IdentityCheck:
    if exact:
        equal = lhs == rhs
    else:
        equal = isclose(float(lhs), float(rhs), rel_tol=1e-9, abs_tol=1e-12)
    return IdentityCheck(lhs=lhs, rhs=rhs, equal=bool(equal))


def verify_subdivision_identity(
    F: SimpleGraph,
    H: UniformHypergraph,
    r: Optional[int] = None,
    *,
    exact: bool = True,
) -> IdentityCheck:
    """hom(F_r, H) against (r!·N^r)^|E(F)|·hom(F, G[H])."""
    r = _resolve_r(H, r, 2)
    e = len(F.edges)
    n = H.n
    lhs = hom_hypergraph(subdivide(F, r), H)

    if exact:
        # hom is homogeneous of degree |E(F)| in the weights, so the 1/N^r
        # of G[H] moves out as an exact rational factor.
        codeg = codegree_matrix(H).astype(np.float64)
        np.fill_diagonal(codeg, 0.0)
        hom = hom_weighted(F, WeightedGraph.from_matrix(codeg), exact=True)
        rhs: Number = Fraction((factorial(r) * n**r) ** e, n ** (r * e)) * hom
    else:
        rhs = (factorial(r) * n**r) ** e * float(
            hom_weighted(F, codegree_section(H))
        )

    check = _compare(lhs, rhs, exact)
    logger.debug(
        "Checked subdivision identity.", lhs=str(lhs), rhs=str(rhs), r=r
    )
    return check


def verify_intersection_identity(
    F: SimpleGraph,
    H: UniformHypergraph,
    r: Optional[int] = None,
    *,
    exact: bool = True,
) -> IdentityCheck:
    """hom(F^(r), H) against (r!)^|E(F)|·hom(F, B[H]) with loops included."""
    r = _resolve_r(H, r, 1)
    e = len(F.edges)
    lhs = hom_hypergraph(intersection_pattern(F, r), H)
    hom = hom_weighted(F, intersection_matrix(H).raw, exact=exact)
    rhs = factorial(r) ** e * hom

    check = _compare(lhs, rhs, exact)
    logger.debug(
        "Checked intersection identity.", lhs=str(lhs), rhs=str(rhs), r=r
    )
    return check

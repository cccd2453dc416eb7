"""Piecewise-constant kernels, r-graphons and 3-hypergraphons.

Every step object lives on a Partition of [0, 1] into k parts with positive
measures. Integrals become sums over part indices weighted by the product of
part measures, so every contraction below is exact for step functions.
"""

from __future__ import annotations

import itertools as it
from math import factorial
from typing import (
    Any,
    List,
    Literal,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from logrus import Logger
import numpy as np
from pydantic.dataclasses import dataclass

from ._constants import DEFAULT_HYPERGRAPHON_MAX_PARTS
from ._contractions import codegree_section
from ._errors import CapacityError, DegeneracyError, InputError
from ._hypergraph import (
    ArrayConfig,
    UniformHypergraph,
    WeightedGraph,
    degree_vector,
)


logger = Logger(__name__)

DegreeNormalization = Literal["integral", "hypergraph"]

# Position of the pair coordinate x_ab among (x1, x2, x3, x12, x13, x23).
_PAIR_AXIS = {
    frozenset((1, 2)): 3,
    frozenset((1, 3)): 4,
    frozenset((2, 3)): 5,
}


def _frozen_array(values: Any, *, ndim: Optional[int] = None) -> np.ndarray:
    result = np.array(values, dtype=np.float64)
    if ndim is not None and result.ndim != ndim:
        raise InputError(
            f"Expected a {ndim}-dimensional array, got shape {result.shape}."
        )
    if not np.all(np.isfinite(result)):
        raise InputError("Step values must be finite.")
    result.setflags(write=False)
    return result


def sigma_axes() -> List[Tuple[int, ...]]:
    """Axis permutations of a [k]^6 array induced by the six σ in S_3."""
    result = []
    for sigma in it.permutations((1, 2, 3)):
        s1, s2, s3 = sigma
        result.append(
            (
                s1 - 1,
                s2 - 1,
                s3 - 1,
                _PAIR_AXIS[frozenset((s1, s2))],
                _PAIR_AXIS[frozenset((s1, s3))],
                _PAIR_AXIS[frozenset((s2, s3))],
            )
        )
    return result


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class Partition:
    """Measures of the k parts of a partition of [0, 1]."""

    weights: np.ndarray

    def __post_init_post_parse__(self) -> None:
        weights = _frozen_array(self.weights, ndim=1)
        if weights.size == 0 or np.any(weights <= 0):
            raise InputError("Part measures must be positive.")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise InputError(
                f"Part measures must sum to 1 (got {weights.sum()!r})."
            )
        object.__setattr__(self, "weights", weights)

    @classmethod
    def equal(cls, k: int) -> Partition:
        """The partition of [0, 1] into k intervals of length 1/k."""
        if k < 1:
            raise InputError(f"Part count must be positive: k={k}")
        return cls(weights=np.full(k, 1.0 / k))

    @property
    def k(self) -> int:
        """Number of parts."""
        return int(self.weights.size)

    @property
    def is_equal(self) -> bool:
        """True iff every part has the same measure."""
        return bool(np.all(self.weights == self.weights[0]))

    def same_as(self, other: Partition) -> bool:
        """Exact equality of part measures."""
        return np.array_equal(self.weights, other.weights)

    def refine(self, q: int) -> Partition:
        """Splits every part into q parts of equal measure."""
        return Partition(weights=np.repeat(self.weights / q, q))


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class PartProfile:
    """A step function on [0, 1] (e.g. the degree function d_W)."""

    partition: Partition
    values: np.ndarray

    def __post_init_post_parse__(self) -> None:
        values = _frozen_array(self.values, ndim=1)
        if values.size != self.partition.k:
            raise InputError(
                f"Profile has {values.size} values for {self.partition.k}"
                " parts."
            )
        object.__setattr__(self, "values", values)


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class StepKernel:
    """A step kernel W(x, y) = values[i][j] for x in part i, y in part j.

    Graphons have symmetric values in [0, 1]. Differences of graphons and
    random-walk kernels are general bounded step kernels.
    """

    partition: Partition
    values: np.ndarray
    symmetric: bool = True

    def __post_init_post_parse__(self) -> None:
        values = _frozen_array(self.values, ndim=2)
        k = self.partition.k
        if values.shape != (k, k):
            raise InputError(
                f"Kernel values have shape {values.shape}, expected {(k, k)}."
            )
        if self.symmetric and not np.array_equal(values, values.T):
            raise InputError("Kernel is flagged symmetric but is not.")
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        """Number of parts."""
        return self.partition.k

    @property
    def weights(self) -> np.ndarray:
        """Part measures."""
        return self.partition.weights

    @property
    def is_graphon(self) -> bool:
        """Symmetric with values in [0, 1]."""
        return self.symmetric and bool(
            np.all((self.values >= 0) & (self.values <= 1))
        )

    def operating_matrix(self) -> np.ndarray:
        """M·diag(weights): the matrix of the integral operator."""
        return self.values * self.weights[None, :]

    def _combine(self, other: StepKernel, values: np.ndarray) -> StepKernel:
        if not self.partition.same_as(other.partition):
            raise InputError("Step kernels live on different partitions.")
        return StepKernel(
            partition=self.partition,
            values=values,
            symmetric=self.symmetric and other.symmetric,
        )

    def __add__(self, other: StepKernel) -> StepKernel:
        return self._combine(other, self.values + other.values)

    def __sub__(self, other: StepKernel) -> StepKernel:
        return self._combine(other, self.values - other.values)

    def __neg__(self) -> StepKernel:
        return self.scaled(-1.0)

    def scaled(self, c: float) -> StepKernel:
        """The kernel c·W."""
        return StepKernel(
            partition=self.partition,
            values=c * self.values,
            symmetric=self.symmetric,
        )

    def transposed(self) -> StepKernel:
        """The kernel W(y, x)."""
        return StepKernel(
            partition=self.partition,
            values=self.values.T,
            symmetric=self.symmetric,
        )

    def refine(self, q: int) -> StepKernel:
        """The same function on the q-fold refined partition."""
        values = np.repeat(np.repeat(self.values, q, axis=0), q, axis=1)
        return StepKernel(
            partition=self.partition.refine(q),
            values=values,
            symmetric=self.symmetric,
        )

    def permuted(self, perm: Sequence[int]) -> StepKernel:
        """Relabels part perm[i] as part i (equal partitions only)."""
        if not self.partition.is_equal:
            raise InputError("Only equal partitions can be permuted.")
        idx = np.asarray(perm)
        return StepKernel(
            partition=self.partition,
            values=self.values[np.ix_(idx, idx)],
            symmetric=self.symmetric,
        )

    def as_tensor(self) -> StepTensor:
        """The same data viewed as an order-2 StepTensor."""
        return StepTensor(
            partition=self.partition, order=2, values=self.values
        )


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class StepTensor:
    """A step function on [0, 1]^r, symmetric under permuting coordinates."""

    partition: Partition
    order: int
    values: np.ndarray

    def __post_init_post_parse__(self) -> None:
        if self.order < 2:
            raise InputError(f"Tensor order must be >= 2: {self.order}")

        values = _frozen_array(self.values, ndim=self.order)
        k = self.partition.k
        if values.shape != (k,) * self.order:
            raise InputError(
                f"Tensor values have shape {values.shape}, expected"
                f" {(k,) * self.order}."
            )

        # The two generators of S_r: one transposition and one cycle.
        axes = list(range(self.order))
        swap = [1, 0] + axes[2:]
        cycle = axes[1:] + axes[:1]
        for perm in (swap, cycle):
            if not np.array_equal(values, values.transpose(perm)):
                raise InputError(
                    "Tensor values are not invariant under permuting"
                    " coordinates."
                )
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        """Number of parts."""
        return self.partition.k

    @property
    def weights(self) -> np.ndarray:
        """Part measures."""
        return self.partition.weights

    def __sub__(self, other: StepTensor) -> StepTensor:
        if not self.partition.same_as(other.partition):
            raise InputError("Step tensors live on different partitions.")
        if self.order != other.order:
            raise InputError(
                f"Order mismatch: {self.order} vs {other.order}."
            )
        return StepTensor(
            partition=self.partition,
            order=self.order,
            values=self.values - other.values,
        )

    def refine(self, q: int) -> StepTensor:
        """The same function on the q-fold refined partition."""
        values = self.values
        for axis in range(self.order):
            values = np.repeat(values, q, axis=axis)
        return StepTensor(
            partition=self.partition.refine(q), order=self.order, values=values
        )

    def permuted(self, perm: Sequence[int]) -> StepTensor:
        """Relabels part perm[i] as part i along every axis."""
        if not self.partition.is_equal:
            raise InputError("Only equal partitions can be permuted.")
        values = self.values[np.ix_(*([np.asarray(perm)] * self.order))]
        return StepTensor(
            partition=self.partition, order=self.order, values=values
        )

    def as_kernel(self) -> StepKernel:
        """An order-2 tensor viewed as a symmetric StepKernel."""
        if self.order != 2:
            raise InputError(f"Only order-2 tensors are kernels: {self.order}")
        return StepKernel(partition=self.partition, values=self.values)


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class StepHypergraphon3:
    """A step 3-hypergraphon indexed by (i1, i2, i3, i12, i13, i23).

    Hypergraphons take values in [0, 1]; differences of hypergraphons (the
    inputs of the 2-cut norm) use the same type with signed values.
    """

    partition: Partition
    values: np.ndarray

    def __post_init_post_parse__(self) -> None:
        values = _frozen_array(self.values, ndim=6)
        k = self.partition.k
        if values.shape != (k,) * 6:
            raise InputError(
                f"Hypergraphon values have shape {values.shape}, expected"
                f" {(k,) * 6}."
            )
        for axes in sigma_axes():
            if not np.array_equal(values, values.transpose(axes)):
                raise InputError(
                    "Hypergraphon values are not invariant under the σ-action."
                )
        object.__setattr__(self, "values", values)

    @property
    def k(self) -> int:
        """Number of parts."""
        return self.partition.k

    @property
    def weights(self) -> np.ndarray:
        """Part measures."""
        return self.partition.weights

    @property
    def is_hypergraphon(self) -> bool:
        """Values in [0, 1]."""
        return bool(np.all((self.values >= 0) & (self.values <= 1)))

    def __sub__(self, other: StepHypergraphon3) -> StepHypergraphon3:
        if not self.partition.same_as(other.partition):
            raise InputError("Hypergraphons live on different partitions.")
        return StepHypergraphon3(
            partition=self.partition, values=self.values - other.values
        )


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class StepLaplacian:
    """The random-walk Laplacian L = Id - K of a random-walk kernel K.

    The identity part is implicit; `kernel` holds K and `degree` the degree
    function that makes K self-adjoint.
    """

    kernel: StepKernel
    degree: PartProfile

    def operating_matrix(self) -> np.ndarray:
        """I - K·diag(weights)."""
        return np.eye(self.kernel.k) - self.kernel.operating_matrix()


class RandomWalkKernel(NamedTuple):
    """A random-walk kernel together with its symmetrizing degree."""

    kernel: StepKernel
    degree: PartProfile
    assumption_holds: bool


def from_graph(G: WeightedGraph) -> StepKernel:
    """The step graphon W_G on the equal partition into n parts."""
    return StepKernel(
        partition=Partition.equal(G.n), values=G.weights, symmetric=True
    )


def from_hypergraph(H: UniformHypergraph) -> StepTensor:
    """The step r-graphon W_H (1 on ordered tuples of edge vertices)."""
    values = np.zeros((H.n,) * H.r, dtype=np.float64)
    edges = H.edge_array
    for perm in it.permutations(range(H.r)):
        values[tuple(edges[:, list(perm)].T)] = 1.0
    return StepTensor(partition=Partition.equal(H.n), order=H.r, values=values)


def degree_profile(W: Union[StepKernel, StepTensor]) -> PartProfile:
    """The degree function: integrate out every coordinate but the first."""
    values = W.values
    for _ in range(values.ndim - 1):
        values = values @ W.weights
    return PartProfile(partition=W.partition, values=values)


def random_walk_kernel(W: StepKernel, eps: float) -> RandomWalkKernel:
    """K_W = W / d_W where d_W > 0, and 0 elsewhere."""
    if eps <= 0:
        raise InputError(f"eps must be positive: {eps!r}")
    if not W.is_graphon:
        raise InputError(
            "Random-walk kernels need a symmetric [0, 1]-valued graphon."
        )

    degree = degree_profile(W)
    d = degree.values
    positive = d > 0
    values = np.zeros_like(W.values)
    values[positive] = W.values[positive] / d[positive, None]

    holds = bool(np.min(d) >= eps)
    if not holds:
        logger.warning(
            "Degree assumption fails: min degree %.6g is below eps=%.6g.",
            float(np.min(d)),
            eps,
            part=int(np.argmin(d)),
        )
    kernel = StepKernel(partition=W.partition, values=values, symmetric=False)
    return RandomWalkKernel(
        kernel=kernel, degree=degree, assumption_holds=holds
    )


def rw_laplacian(W: StepKernel, eps: float) -> StepLaplacian:
    """The random-walk Laplacian Id - K_W."""
    rw = random_walk_kernel(W, eps)
    return StepLaplacian(kernel=rw.kernel, degree=rw.degree)


def codegree_section_step(
    W: Union[StepTensor, StepHypergraphon3]
) -> StepKernel:
    """The codegree section G[W]: integrate out the middle coordinates."""
    w = W.weights
    if isinstance(W, StepHypergraphon3):
        # G(x, y) integrates the middle vertex and all three pair coordinates.
        values = np.einsum("ibjxyz,b,x,y,z->ij", W.values, w, w, w, w)
    else:
        values = W.values
        for _ in range(W.order - 2):
            values = np.tensordot(values, w, axes=([1], [0]))
        values = values / factorial(W.order - 2)

    return StepKernel(
        partition=W.partition, values=(values + values.T) / 2, symmetric=True
    )


def intersection_graphon(
    W: Union[StepTensor, StepHypergraphon3]
) -> StepKernel:
    """The vertex-vertex intersection graphon B(W)."""
    w = W.weights
    if isinstance(W, StepHypergraphon3):
        first = np.einsum("ibcxyz,x,y->ibcz", W.values, w, w)
        second = np.einsum("bcjzuv,u,v->bcjz", W.values, w, w)
        values = 0.5 * np.einsum("ibcz,bcjz,b,c,z->ij", first, second, w, w, w)
    else:
        if W.order != 3:
            raise InputError(
                f"Intersection graphons need order 3, got {W.order}."
            )
        weighted = W.values * w[None, :, None] * w[None, None, :]
        values = 0.5 * np.tensordot(weighted, W.values, axes=([1, 2], [0, 1]))

    return StepKernel(
        partition=W.partition, values=(values + values.T) / 2, symmetric=True
    )


def lift_to_hypergraphon(
    W: StepTensor, *, max_parts: int = DEFAULT_HYPERGRAPHON_MAX_PARTS
) -> StepHypergraphon3:
    """Views a 3-graphon as a hypergraphon constant in the pair coordinates."""
    if W.order != 3:
        raise InputError(f"Only order-3 tensors can be lifted: {W.order}")
    if W.k > max_parts:
        raise CapacityError(
            f"Hypergraphons are capped at {max_parts} parts (k={W.k})."
        )
    values = np.broadcast_to(
        W.values[:, :, :, None, None, None], (W.k,) * 6
    ).copy()
    return StepHypergraphon3(partition=W.partition, values=values)


def limit_rw_kernel(
    W: Union[StepTensor, UniformHypergraph],
    *,
    degree_normalization: DegreeNormalization = "integral",
) -> RandomWalkKernel:
    """The common limit S = G[W] / ((R - 1)·d_W) of the hypergraph walks.

    A UniformHypergraph top level is handled through W_H without building the
    N^R tensor: G[W_H] is the codegree section and the degree function is
    d_{W_H} = (R-1)!·deg/N^(R-1).

    With degree_normalization="hypergraph" the degree is divided by (R-1)!,
    which matches the hypergraph degree and makes S row-stochastic.
    """
    if isinstance(W, UniformHypergraph):
        R = W.r
        partition = Partition.equal(W.n)
        section = codegree_section(W).weights
        d = factorial(R - 1) * degree_vector(W) / float(W.n ** (R - 1))
    else:
        R = W.order
        partition = W.partition
        section = codegree_section_step(W).values
        d = degree_profile(W).values

    if degree_normalization == "hypergraph":
        d = d / factorial(R - 1)

    bad = np.flatnonzero(d <= 0)
    if bad.size:
        part = int(bad[0])
        raise DegeneracyError(
            f"Part {part} has zero degree; the limit kernel is undefined.",
            index=part,
        )

    scaled_degree = (R - 1) * d
    kernel = StepKernel(
        partition=partition,
        values=section / scaled_degree[:, None],
        symmetric=False,
    )
    return RandomWalkKernel(
        kernel=kernel,
        degree=PartProfile(partition=partition, values=scaled_degree),
        assumption_holds=True,
    )

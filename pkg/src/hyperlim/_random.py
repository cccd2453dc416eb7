"""Seeded random hypergraph models and random step objects.

Edge inclusion is counter-based: the uniform variate deciding an r-subset
sits at the subset's colexicographic rank in a Philox stream keyed by
(seed, r). Inclusion decisions therefore do not depend on enumeration order.
"""

from __future__ import annotations

import itertools as it
from math import comb
from typing import List, Literal, Sequence, Tuple, Union

from logrus import Logger
import numpy as np

from ._constants import DEFAULT_HYPERGRAPHON_MAX_PARTS
from ._errors import CapacityError, InputError
from ._hypergraph import Hypergraph, UniformHypergraph
from ._step import (
    Partition,
    StepHypergraphon3,
    StepKernel,
    StepTensor,
    sigma_axes,
)


logger = Logger(__name__)

StepKind = Literal["symmetric", "sigma-invariant", "none"]


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InputError(f"Probability must lie in [0, 1]: p={p!r}")


def _philox(seed: int, r: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence([seed, r]))
    )


def _all_subsets(n: int, r: int) -> np.ndarray:
    """Every r-subset of range(n) in lexicographic order, one per row."""
    count = comb(n, r)
    flat = np.fromiter(
        it.chain.from_iterable(it.combinations(range(n), r)),
        dtype=np.int64,
        count=count * r,
    )
    return flat.reshape(count, r)


def colex_rank(subsets: np.ndarray) -> np.ndarray:
    """Colexicographic ranks Σ_i C(c_i, i) of sorted subsets (i from 1)."""
    subsets = np.asarray(subsets, dtype=np.int64)
    r = subsets.shape[1]
    n = int(subsets.max()) + 1 if subsets.size else 1
    table = np.array(
        [[comb(c, i) for i in range(1, r + 1)] for c in range(n)],
        dtype=np.int64,
    )
    return table[subsets, np.arange(r)].sum(axis=1)


def _build(n: int, r: int, selected: np.ndarray) -> UniformHypergraph:
    edges = tuple(tuple(edge) for edge in selected.tolist())
    return UniformHypergraph(base=Hypergraph(n=n, edges=edges), r=r)


def gen_uniform_er(N: int, p: float, r: int, seed: int) -> UniformHypergraph:
    """The r-uniform Erdős–Rényi hypergraph G(N, p; r)."""
    _check_probability(p)
    if r < 2:
        raise InputError(f"Uniformity must be at least 2: r={r}")
    if N < r:
        raise InputError(f"Need at least r={r} vertices: N={N}")

    subsets = _all_subsets(N, r)
    uniforms = _philox(seed, r).random(len(subsets))
    selected = subsets[uniforms[colex_rank(subsets)] < p]

    logger.debug(
        "Generated uniform ER hypergraph.",
        n=N,
        p=p,
        r=r,
        seed=seed,
        edges=len(selected),
    )
    return _build(N, r, selected)


def gen_triangle_hypergraph(N: int, p: float, seed: int) -> UniformHypergraph:
    """T(N, p): the triangles of G(N, p; 2) as a 3-uniform hypergraph."""
    if N < 3:
        raise InputError(f"Need at least 3 vertices: N={N}")

    graph = gen_uniform_er(N, p, 2, seed)
    adjacency = np.zeros((N, N), dtype=bool)
    if graph.edges:
        u, v = graph.edge_array.T
        adjacency[u, v] = adjacency[v, u] = True

    triples = _all_subsets(N, 3)
    a, b, c = triples.T
    present = adjacency[a, b] & adjacency[a, c] & adjacency[b, c]
    return _build(N, 3, triples[present])


def gen_nonuniform(N: int, p: Sequence[float], seed: int) -> Hypergraph:
    """Independent union of G(N, p_r; r) over r = 2..R; p[i] is for r = i+2."""
    if not p:
        raise InputError("Need at least one level probability.")
    for p_r in p:
        _check_probability(p_r)
    if p[-1] <= 0:
        raise InputError("The top-level probability p_R must be positive.")

    edges: List[Tuple[int, ...]] = []
    for r, p_r in enumerate(p, start=2):
        if p_r > 0:
            edges.extend(gen_uniform_er(N, p_r, r, seed).edges)
    return Hypergraph(n=N, edges=tuple(sorted(edges)))


def _orbit_average(
    raw: np.ndarray, perms: Sequence[Sequence[int]]
) -> np.ndarray:
    """Averages raw over the axis permutation group, exactly invariant.

    The mean is read off at one canonical index per orbit (the smallest
    flat index) so every orbit member holds the bit-identical value.
    """
    average = sum(raw.transpose(perm) for perm in perms) / len(perms)
    indices = np.indices(raw.shape).reshape(raw.ndim, -1)
    canonical = np.min(
        [
            np.ravel_multi_index(tuple(indices[list(perm)]), raw.shape)
            for perm in perms
        ],
        axis=0,
    )
    return average.reshape(-1)[canonical].reshape(raw.shape)


def gen_random_step(
    k: int, order: int, seed: int, kind: StepKind = "symmetric"
) -> Union[StepKernel, StepTensor, StepHypergraphon3]:
    """Uniform [0, 1] step values on the equal k-partition.

    kind="symmetric" gives a StepKernel (order 2) or StepTensor (order >= 3);
    kind="sigma-invariant" gives a StepHypergraphon3 (order 3); kind="none"
    gives an asymmetric StepKernel (order 2).
    """
    if k < 1:
        raise InputError(f"Part count must be positive: k={k}")
    partition = Partition.equal(k)
    rng = np.random.default_rng(seed)

    if kind == "none":
        if order != 2:
            raise InputError("Only order-2 step kernels can be asymmetric.")
        return StepKernel(
            partition=partition,
            values=rng.random((k, k)),
            symmetric=False,
        )

    if kind == "sigma-invariant":
        if order != 3:
            raise InputError("σ-invariant step objects are 3-hypergraphons.")
        if k > DEFAULT_HYPERGRAPHON_MAX_PARTS:
            raise CapacityError(
                "Step 3-hypergraphons support at most"
                f" {DEFAULT_HYPERGRAPHON_MAX_PARTS} parts (got {k})."
            )
        values = _orbit_average(rng.random((k,) * 6), sigma_axes())
        return StepHypergraphon3(partition=partition, values=values)

    if order < 2:
        raise InputError(f"Order must be at least 2: {order}")
    values = _orbit_average(
        rng.random((k,) * order), list(it.permutations(range(order)))
    )
    if order == 2:
        return StepKernel(partition=partition, values=values)
    return StepTensor(partition=partition, order=order, values=values)

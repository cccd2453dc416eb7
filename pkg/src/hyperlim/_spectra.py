"""Real spectra of adjacency, step-kernel and random-walk operators."""

from __future__ import annotations

from typing import Any, NamedTuple, Optional, Tuple, Union

from logrus import Logger
import numpy as np
from pydantic.dataclasses import dataclass

from ._constants import DEFAULT_SPECTRAL_TOP
from ._errors import DegeneracyError, InputError
from ._hom import (
    cycle_graph,
    directed_cycle_density,
    t_density,
)
from ._hypergraph import ArrayConfig, WeightedGraph
from ._step import (
    PartProfile,
    RandomWalkKernel,
    StepKernel,
    StepLaplacian,
    random_walk_kernel,
)


logger = Logger(__name__)

_SYMMETRY_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False, config=ArrayConfig)
class Spectrum:
    """Real eigenvalues sorted descending, repeated by multiplicity."""

    eigenvalues: np.ndarray

    def __post_init_post_parse__(self) -> None:
        values = np.array(self.eigenvalues, dtype=np.float64).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise InputError("Eigenvalues must be finite.")
        if np.any(np.diff(values) > 0):
            raise InputError("Eigenvalues must be sorted descending.")
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)

    @classmethod
    def from_values(cls, values: Any) -> Spectrum:
        """Sorts arbitrary real eigenvalues into a Spectrum."""
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        return cls(eigenvalues=np.sort(values)[::-1])

    def __len__(self) -> int:
        return int(self.eigenvalues.size)

    def moment(self, k: int) -> float:
        """Σ λ^k."""
        return float(np.sum(self.eigenvalues**k))


class MomentRow(NamedTuple):
    """One cycle length of a moment/spectrum comparison."""

    k: int
    density: float
    eigen_sum: float
    deviation: float


class MomentReport(NamedTuple):
    """Cycle densities against spectral power sums for 3 <= k <= kmax."""

    rows: Tuple[MomentRow, ...]
    max_deviation: float


def _symmetric_eigenvalues(S: np.ndarray) -> Spectrum:
    return Spectrum.from_values(np.linalg.eigvalsh(S))


def spectrum_symmetric(A: Union[WeightedGraph, np.ndarray]) -> Spectrum:
    """All eigenvalues of a symmetric matrix."""
    matrix = A.weights if isinstance(A, WeightedGraph) else np.asarray(A)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InputError(f"Expected a square matrix, got {matrix.shape}.")
    if not np.array_equal(matrix, matrix.T):
        raise InputError("Matrix is not symmetric.")
    return _symmetric_eigenvalues(matrix.astype(np.float64))


def _weighted_symmetrization(
    K: StepKernel, degree: PartProfile
) -> np.ndarray:
    d = degree.values
    if np.any(d <= 0):
        v = int(np.flatnonzero(d <= 0)[0])
        raise DegeneracyError(
            f"Degree of part {v} is {d[v]}; cannot symmetrize.", index=v
        )

    w = K.weights
    S = np.sqrt(w * d)[:, None] * K.values * np.sqrt(w / d)[None, :]
    scale = max(1.0, float(np.max(np.abs(S))))
    if np.max(np.abs(S - S.T)) > _SYMMETRY_TOLERANCE * scale:
        raise InputError(
            "Kernel is not self-adjoint with respect to the supplied degree"
            " profile."
        )
    return (S + S.T) / 2


def spectrum_step_operator(
    W: Union[StepKernel, StepLaplacian, RandomWalkKernel],
    degree: Optional[PartProfile] = None,
) -> Spectrum:
    """The spectrum of the integral operator of a step kernel.

    The operating matrix is M·diag(weights). Symmetric kernels use the
    similarity diag(√w)·M·diag(√w). Random-walk kernels (and Laplacians)
    are self-adjoint on the degree-weighted space and use the similarity
    diag(√(w·d))·M·diag(√(w/d)), so the result is always real.
    """
    if isinstance(W, StepLaplacian):
        inner = spectrum_step_operator(W.kernel, W.degree)
        return Spectrum.from_values(1.0 - inner.eigenvalues)
    if isinstance(W, RandomWalkKernel):
        return spectrum_step_operator(W.kernel, W.degree)

    if W.symmetric:
        root = np.sqrt(W.weights)
        return _symmetric_eigenvalues(
            root[:, None] * W.values * root[None, :]
        )

    if degree is None:
        raise InputError(
            "Asymmetric kernels need the degree profile that symmetrizes"
            " them (pass degree=...)."
        )
    return _symmetric_eigenvalues(_weighted_symmetrization(W, degree))


def spectrum_random_walk(D: np.ndarray, A: WeightedGraph) -> Spectrum:
    """The spectrum of D^-1·A via the similarity D^-1/2·A·D^-1/2."""
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

    root = 1.0 / np.sqrt(D)
    S = root[:, None] * A.weights * root[None, :]
    return _symmetric_eigenvalues((S + S.T) / 2)


def rw_spectra(W: StepKernel, eps: float) -> Tuple[Spectrum, Spectrum]:
    """Spectra of the random-walk kernel K_W and the Laplacian Id - K_W."""
    rw = random_walk_kernel(W, eps)
    if not rw.assumption_holds:
        d = rw.degree.values
        v = int(np.argmin(d))
        raise DegeneracyError(
            f"Part {v} has degree {d[v]:.6g}, below eps={eps}.", index=v
        )

    kernel_spectrum = spectrum_step_operator(rw)
    laplacian_spectrum = Spectrum.from_values(
        1.0 - kernel_spectrum.eigenvalues
    )
    return kernel_spectrum, laplacian_spectrum


def _by_magnitude(values: np.ndarray) -> np.ndarray:
    order = np.lexsort((-values, -np.abs(values)))
    return values[order]


def pointwise_distance(
    S: Spectrum, T: Spectrum, m: int = DEFAULT_SPECTRAL_TOP
) -> float:
    """Largest gap among the top-m eigenvalues ordered by |λ|.

    The shorter spectrum is padded with zeros; ties in |λ| are broken by
    value, larger first.
    """
    if m < 1:
        raise InputError(f"m must be positive: {m}")

    size = max(len(S), len(T), m)
    padded = []
    for spectrum in (S, T):
        values = np.zeros(size)
        values[: len(spectrum)] = spectrum.eigenvalues
        padded.append(_by_magnitude(values)[:m])
    return float(np.max(np.abs(padded[0] - padded[1])))


def moment_spectrum_consistency(
    W: Union[StepKernel, RandomWalkKernel], kmax: int
) -> MomentReport:
    """Compares cycle densities with spectral power sums for 3 <= k <= kmax.

    Symmetric kernels use undirected cycles; random-walk kernels use directed
    cycles. Deviations are relative to Σ|λ|^k.
    """
    if kmax < 3:
        raise InputError(f"kmax must be at least 3: {kmax}")

    spectrum = spectrum_step_operator(W)
    rows = []
    for k in range(3, kmax + 1):
        if isinstance(W, RandomWalkKernel):
            density = directed_cycle_density(W.kernel, k)
        else:
            density = t_density(cycle_graph(k), W)
        eigen_sum = spectrum.moment(k)
        scale = max(float(np.sum(np.abs(spectrum.eigenvalues) ** k)), 1e-300)
        deviation = abs(density - eigen_sum) / scale
        rows.append(MomentRow(k, density, eigen_sum, deviation))

    report = MomentReport(
        rows=tuple(rows), max_deviation=max(row.deviation for row in rows)
    )
    logger.debug(
        "Compared cycle densities with the spectrum.",
        kmax=kmax,
        max_deviation=report.max_deviation,
    )
    return report

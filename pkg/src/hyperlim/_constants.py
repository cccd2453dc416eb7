"""Contains constant variables."""

from __future__ import annotations

from typing import Dict, Final, Literal, Tuple


GenModel = Literal["er-uniform", "triangle", "nonuniform"]
ContractKind = Literal[
    "codegree",
    "intersection-raw",
    "intersection-normalized",
    "p-weighted",
]
SpectrumOperator = Literal["adjacency", "rw-kernel", "rw-laplacian"]
HomVia = Literal["codegree", "intersection"]
NormMode = Literal["exact", "heuristic"]
NormBound = Literal["value", "lower", "upper"]
OverlayKind = Literal["identity", "exhaustive", "annealed"]
OutputFormat = Literal["csv"]

IncidenceVariant = Literal["incidence"]
UniformEdgeVariant = Literal["uniform-edge"]
CodegreeWeightedVariant = Literal["codegree-weighted"]
RandomWalkVariant = Literal[
    IncidenceVariant,
    UniformEdgeVariant,
    CodegreeWeightedVariant,
]

# Each variant scales level r of D by (r-1)**a and of A by (r-1)**b.
RW_VARIANT_EXPONENTS: Final[Dict[RandomWalkVariant, Tuple[int, int]]] = {
    "incidence": (1, 0),
    "uniform-edge": (0, -1),
    "codegree-weighted": (2, 1),
}

ExperimentName = Literal[
    "spectral-convergence",
    "intersection-discrimination",
    "lipschitz-audit",
    "rw-equivalence",
    "counting-lemma-audit",
    "codegree-distribution",
]

EXIT_OK: Final = 0
EXIT_DATA_ERROR: Final = 1
EXIT_USAGE_ERROR: Final = 2
EXIT_DEGENERATE: Final = 3

DEFAULT_CUT_NORM_CAP: Final = 20
DEFAULT_RESTARTS: Final = 10
DEFAULT_ANNEAL_ITERATIONS_PER_PART: Final = 200
DEFAULT_ANNEAL_COOLING: Final = 0.995
DEFAULT_HYPERGRAPHON_MAX_PARTS: Final = 4
DEFAULT_TWO_CUT_EXACT_BITS: Final = 20
EXHAUSTIVE_OVERLAY_MAX_PARTS: Final = 8
MAX_DENSITY_VERTICES: Final = 52
DEFAULT_SPECTRAL_TOP: Final = 5

MATRIX_DIGITS: Final = 17
REPORT_DIGITS: Final = 12
SEED_POLICY: Final = "philox-seedsequence"

PROJECT_NAME: Final = "hyperlim"

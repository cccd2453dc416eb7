"""Cut norms of step objects and permutation-overlay cut distance bounds.

Every objective here is multilinear in the per-part averages of its test
functions, so the supremum over [0, 1]-valued test functions is attained at
{0, 1}-valued part indicators. The exact methods enumerate all but one test
function and choose the last one greedily.
"""

from __future__ import annotations

from functools import reduce
import itertools as it
import string
from typing import Callable, NamedTuple, Optional, Sequence, Tuple

from logrus import Logger
import numpy as np

from ._constants import (
    DEFAULT_ANNEAL_COOLING,
    DEFAULT_ANNEAL_ITERATIONS_PER_PART,
    DEFAULT_CUT_NORM_CAP,
    DEFAULT_RESTARTS,
    DEFAULT_TWO_CUT_EXACT_BITS,
    EXHAUSTIVE_OVERLAY_MAX_PARTS,
    NormBound,
    NormMode,
    OverlayKind,
)
from ._errors import CapacityError, InputError
from ._step import Partition, StepHypergraphon3, StepKernel, StepTensor


logger = Logger(__name__)

_CHUNK = 1 << 14
_MAX_ROUNDS = 100
# Overlay searches evaluate the inner norm once per candidate permutation.
_EXACT_SEARCH_BITS = 12
_EXHAUSTIVE_TENSOR_OVERLAY_MAX_PARTS = 5


class CutNormEstimate(NamedTuple):
    """A heuristic cut norm value plus the part sets attaining it."""

    value: float
    row_set: Tuple[int, ...]
    col_set: Tuple[int, ...]


class NormResult(NamedTuple):
    """A norm value tagged with how it was computed."""

    value: float
    method: NormMode
    bound: NormBound


class CutDistance(NamedTuple):
    """An upper bound on a cut distance and the overlay class behind it."""

    value: float
    method: NormMode
    overlay: OverlayKind
    blowup: int


def _cube(k: int, start: int, stop: int) -> np.ndarray:
    """Rows are the {0, 1}^k vertices with codes start..stop-1."""
    codes = np.arange(start, stop, dtype=np.int64)
    return ((codes[:, None] >> np.arange(k)) & 1).astype(np.float64)


def _weighted(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    return values * reduce(np.multiply.outer, [weights] * values.ndim)


def _bilinear_max(
    M: np.ndarray,
) -> Tuple[float, np.ndarray, np.ndarray]:
    """max over f, g in {0, 1}^k of |f·M·g| with its maximizers."""
    k = M.shape[0]
    best_value = 0.0
    best_f = np.zeros(k)
    best_g = np.zeros(k)
    for start in range(0, 2**k, _CHUNK):
        F = _cube(k, start, min(start + _CHUNK, 2**k))
        R = F @ M
        positive = np.where(R > 0, R, 0.0).sum(axis=1)
        negative = np.where(R < 0, -R, 0.0).sum(axis=1)
        for scores, sign in ((positive, 1.0), (negative, -1.0)):
            i = int(np.argmax(scores))
            if scores[i] > best_value:
                best_value = float(scores[i])
                best_f = F[i]
                best_g = (sign * R[i] > 0).astype(np.float64)
    return best_value, best_f, best_g


def _kernel_matrix(W: StepKernel) -> np.ndarray:
    return W.weights[:, None] * W.values * W.weights[None, :]


def cut_norm_exact(W: StepKernel, *, cap: int = DEFAULT_CUT_NORM_CAP) -> float:
    """The exact cut norm sup_{f,g} |∫ W(x, y) f(x) g(y)| of a step kernel."""
    if W.k > cap:
        raise CapacityError(
            f"Exact cut norm supports at most {cap} parts (got {W.k}); use"
            " cut_norm_heuristic instead."
        )
    value, _, _ = _bilinear_max(_kernel_matrix(W))
    return value


def _random_indicator(
    rng: np.random.Generator, size: int, restart: int
) -> np.ndarray:
    if restart == 0:
        return np.ones(size)
    return rng.integers(0, 2, size=size).astype(np.float64)


def cut_norm_heuristic(
    W: StepKernel, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> CutNormEstimate:
    """A lower bound on the cut norm by alternating best responses.

    Restart 0 starts from the all-ones indicator; restart i > 0 draws its
    start from a generator keyed by (seed, i).
    """
    if restarts < 1:
        raise InputError(f"At least one restart is required: {restarts}")

    M = _kernel_matrix(W)
    best = CutNormEstimate(0.0, (), ())
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        start = _random_indicator(rng, W.k, restart)
        for sign in (1.0, -1.0):
            f = start
            value = -np.inf
            for _ in range(_MAX_ROUNDS):
                g = (sign * (f @ M) > 0).astype(np.float64)
                f = (sign * (M @ g) > 0).astype(np.float64)
                new_value = sign * float(f @ M @ g)
                if new_value <= value:
                    break
                value = new_value
                if value > best.value:
                    best = CutNormEstimate(
                        value,
                        tuple(int(i) for i in np.flatnonzero(f)),
                        tuple(int(j) for j in np.flatnonzero(g)),
                    )
    return best


def _contract_except(
    T: np.ndarray, functions: Sequence[np.ndarray], keep: int
) -> np.ndarray:
    letters = string.ascii_lowercase[: T.ndim]
    subscripts = [letters] + [
        letters[j] for j in range(T.ndim) if j != keep
    ]
    operands = [T] + [functions[j] for j in range(T.ndim) if j != keep]
    expr = ",".join(subscripts) + "->" + letters[keep]
    return np.einsum(expr, *operands)


def _one_cut_exact(Tw: np.ndarray) -> float:
    k, r = Tw.shape[0], Tw.ndim
    cube = _cube(k, 0, 2**k)
    best = 0.0
    for prefix in it.product(range(2**k), repeat=r - 2):
        contracted = Tw
        for code in prefix:
            contracted = np.tensordot(cube[code], contracted, axes=(0, 0))
        value, _, _ = _bilinear_max(contracted)
        best = max(best, value)
    return best


def _one_cut_heuristic(Tw: np.ndarray, restarts: int, seed: int) -> float:
    k, r = Tw.shape[0], Tw.ndim
    letters = string.ascii_lowercase[:r]
    full_expr = ",".join([letters] + list(letters)) + "->"

    best = 0.0
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        starts = [_random_indicator(rng, k, restart) for _ in range(r)]
        for sign in (1.0, -1.0):
            functions = list(starts)
            value = -np.inf
            for _ in range(_MAX_ROUNDS):
                for j in range(r):
                    coef = sign * _contract_except(Tw, functions, j)
                    functions[j] = (coef > 0).astype(np.float64)
                new_value = sign * float(np.einsum(full_expr, Tw, *functions))
                if new_value <= value:
                    break
                value = new_value
                best = max(best, value)
    return best


def one_cut_norm(
    T: StepTensor,
    mode: NormMode = "exact",
    *,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    cap: int = DEFAULT_CUT_NORM_CAP,
) -> NormResult:
    """The 1-cut norm sup |∫ T(x_1..x_r) f_1(x_1)···f_r(x_r)|."""
    Tw = _weighted(T.values, T.weights)
    if mode == "heuristic":
        value = _one_cut_heuristic(Tw, restarts, seed)
        return NormResult(value, "heuristic", "lower")

    bits = T.k * (T.order - 1)
    if bits > cap:
        raise CapacityError(
            f"Exact 1-cut norm needs k·(r-1) <= {cap} (got {bits}); use"
            " mode='heuristic' instead."
        )
    return NormResult(_one_cut_exact(Tw), "exact", "value")


def _test_function_ids(k: int) -> Tuple[np.ndarray, int]:
    """Free-variable ids of the k^3 entries of a test function on [k]^3.

    The entries (a, b, x) and (b, a, x) share an id.
    """
    triples = np.array(list(it.product(range(k), repeat=3)), dtype=np.int64)
    triples = np.column_stack(
        [
            np.minimum(triples[:, 0], triples[:, 1]),
            np.maximum(triples[:, 0], triples[:, 1]),
            triples[:, 2],
        ]
    )
    _, ids = np.unique(triples, axis=0, return_inverse=True)
    ids = ids.reshape(-1)
    return ids, int(ids.max()) + 1


def _aggregate(coef: np.ndarray, onehot: np.ndarray) -> np.ndarray:
    return coef.reshape(coef.shape[0], -1) @ onehot


# D axes: (a, b, c, ab, ac, bc) = (x1, x2, x3, x12, x13, x23).
_F_EXPR = "abcxyz,bcz,acy->abx"
_G_EXPR = "abcxyz,abx,acy->bcz"
_H_EXPR = "abcxyz,abx,bcz->acy"
_FULL_EXPR = "abcxyz,abx,bcz,acy->"


def _two_cut_exact(Dw: np.ndarray, ids: np.ndarray, nfree: int) -> float:
    k = Dw.shape[0]
    onehot = np.zeros((k**3, nfree))
    onehot[np.arange(k**3), ids] = 1.0
    assignments = _cube(nfree, 0, 2**nfree)[:, ids].reshape(-1, k, k, k)

    best = 0.0
    for f in assignments:
        partial = np.einsum("abcxyz,abx->abcyz", Dw, f)
        coef = _aggregate(
            np.einsum("abcyz,nbcz->nacy", partial, assignments), onehot
        )
        positive = np.where(coef > 0, coef, 0.0).sum(axis=1).max()
        negative = np.where(coef < 0, -coef, 0.0).sum(axis=1).max()
        best = max(best, float(positive), float(negative))
    return best


def _two_cut_heuristic(
    Dw: np.ndarray, ids: np.ndarray, nfree: int, restarts: int, seed: int
) -> float:
    k = Dw.shape[0]
    onehot = np.zeros((k**3, nfree))
    onehot[np.arange(k**3), ids] = 1.0

    def best_response(coef: np.ndarray, sign: float) -> np.ndarray:
        free = (sign * _aggregate(coef[None], onehot)[0]) > 0
        return free[ids].reshape(k, k, k).astype(np.float64)

    best = 0.0
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        starts = [
            _random_indicator(rng, nfree, restart)[ids].reshape(k, k, k)
            for _ in range(3)
        ]
        for sign in (1.0, -1.0):
            f, g, h = starts
            value = -np.inf
            for _ in range(_MAX_ROUNDS):
                f = best_response(np.einsum(_F_EXPR, Dw, g, h), sign)
                g = best_response(np.einsum(_G_EXPR, Dw, f, h), sign)
                h = best_response(np.einsum(_H_EXPR, Dw, f, g), sign)
                new_value = sign * float(np.einsum(_FULL_EXPR, Dw, f, g, h))
                if new_value <= value:
                    break
                value = new_value
                best = max(best, value)
    return best


def two_cut_norm(
    D: StepHypergraphon3,
    mode: NormMode = "exact",
    *,
    seed: int = 0,
    restarts: int = DEFAULT_RESTARTS,
    cap: int = DEFAULT_TWO_CUT_EXACT_BITS,
) -> NormResult:
    """The 2-cut norm of a (difference of) step 3-hypergraphon(s).

    Test functions f(x1, x2, x12), g(x2, x3, x23) and h(x1, x3, x13) are
    {0, 1}-valued on triples of part indices and invariant under swapping
    their two vertex coordinates, so f(a, b, x) = f(b, a, x). The exact
    method enumerates f and g, so it needs twice the number of free test
    function entries to stay within `cap` bits.
    """
    ids, nfree = _test_function_ids(D.k)
    Dw = _weighted(D.values, D.weights)

    if mode == "heuristic":
        value = _two_cut_heuristic(Dw, ids, nfree, restarts, seed)
        return NormResult(value, "heuristic", "lower")

    if 2 * nfree > cap:
        raise CapacityError(
            f"Exact 2-cut norm needs 2·{nfree} free entries <= {cap} bits"
            f" (k={D.k}); use mode='heuristic' instead."
        )
    return NormResult(_two_cut_exact(Dw, ids, nfree), "exact", "value")


def _check_overlay_inputs(P: Partition, Q: Partition, q: int) -> None:
    if q < 1:
        raise InputError(f"Blow-up factor must be positive: q={q}")
    if P.k != Q.k or not (P.is_equal and Q.is_equal):
        raise InputError(
            "Overlay search needs equal-weight partitions with the same part"
            f" count (got k={P.k} and k={Q.k})."
        )


def _overlay_search(
    n: int,
    objective: Callable[[np.ndarray], float],
    *,
    seed: int,
    max_iterations: Optional[int],
    exhaustive_limit: int,
) -> Tuple[np.ndarray, float, OverlayKind]:
    identity = np.arange(n)
    if max_iterations == 0 or n == 1:
        return identity, objective(identity), "identity"

    if n <= exhaustive_limit and max_iterations is None:
        best_perm, best_value = identity, objective(identity)
        for perm in it.permutations(range(n)):
            candidate = np.array(perm)
            value = objective(candidate)
            if value < best_value:
                best_perm, best_value = candidate, value
        return best_perm, best_value, "exhaustive"

    iterations = (
        DEFAULT_ANNEAL_ITERATIONS_PER_PART * n
        if max_iterations is None
        else max_iterations
    )
    rng = np.random.default_rng(seed)
    current, current_value = identity, objective(identity)
    best_perm, best_value = current, current_value
    temperature = max(0.1 * current_value, 1e-12)
    for _ in range(iterations):
        i, j = rng.choice(n, size=2, replace=False)
        candidate = current.copy()
        candidate[[i, j]] = candidate[[j, i]]
        value = objective(candidate)
        if value <= current_value or rng.random() < np.exp(
            (current_value - value) / temperature
        ):
            current, current_value = candidate, value
            if value < best_value:
                best_perm, best_value = candidate, value
        temperature *= DEFAULT_ANNEAL_COOLING
    return best_perm, best_value, "annealed"


def cut_distance_upper(
    U: StepKernel,
    W: StepKernel,
    q: int = 1,
    *,
    seed: int = 0,
    max_iterations: Optional[int] = None,
    restarts: int = DEFAULT_RESTARTS,
    cap: int = DEFAULT_CUT_NORM_CAP,
) -> CutDistance:
    """An upper bound on δ_□(U, W) over q-fold blown-up part permutations.

    Permutation overlays are a strict subset of measure preserving maps, so
    the result bounds the cut distance from above. The search is exhaustive
    for at most 8 refined parts and annealed beyond that; max_iterations=0
    keeps the identity overlay. With more than `cap` refined parts the
    reported norm is itself a heuristic estimate (method="heuristic").
    """
    _check_overlay_inputs(U.partition, W.partition, q)
    Uq, Wq = U.refine(q), W.refine(q)
    n = Uq.k

    def norm(perm: np.ndarray, exact: bool) -> float:
        diff = Uq - Wq.permuted(perm)
        if exact:
            return cut_norm_exact(diff, cap=cap)
        return cut_norm_heuristic(diff, restarts, seed).value

    search_exact = n <= min(cap, _EXACT_SEARCH_BITS)
    perm, value, overlay = _overlay_search(
        n,
        lambda p: norm(p, search_exact),
        seed=seed,
        max_iterations=max_iterations,
        exhaustive_limit=EXHAUSTIVE_OVERLAY_MAX_PARTS,
    )

    method: NormMode = "exact" if n <= cap else "heuristic"
    if method == "exact" and not search_exact:
        value = norm(perm, True)

    logger.debug(
        "Bounded cut distance.",
        value=value,
        method=method,
        overlay=overlay,
        parts=n,
    )
    return CutDistance(value, method, overlay, q)


def one_cut_distance_upper(
    U: StepTensor,
    W: StepTensor,
    q: int = 1,
    *,
    seed: int = 0,
    max_iterations: Optional[int] = None,
    restarts: int = DEFAULT_RESTARTS,
    cap: int = DEFAULT_CUT_NORM_CAP,
) -> CutDistance:
    """The 1-cut analogue of cut_distance_upper for step r-graphons."""
    _check_overlay_inputs(U.partition, W.partition, q)
    if U.order != W.order:
        raise InputError(f"Order mismatch: {U.order} vs {W.order}.")

    Uq, Wq = U.refine(q), W.refine(q)
    n = Uq.k
    bits = n * (Uq.order - 1)

    def norm(perm: np.ndarray, mode: NormMode) -> float:
        diff = Uq - Wq.permuted(perm)
        return one_cut_norm(
            diff, mode, seed=seed, restarts=restarts, cap=cap
        ).value

    search_mode: NormMode = (
        "exact" if bits <= min(cap, _EXACT_SEARCH_BITS) else "heuristic"
    )
    perm, value, overlay = _overlay_search(
        n,
        lambda p: norm(p, search_mode),
        seed=seed,
        max_iterations=max_iterations,
        exhaustive_limit=_EXHAUSTIVE_TENSOR_OVERLAY_MAX_PARTS,
    )

    method: NormMode = "exact" if bits <= cap else "heuristic"
    if method == "exact" and search_mode == "heuristic":
        value = norm(perm, "exact")

    logger.debug(
        "Bounded 1-cut distance.",
        value=value,
        method=method,
        overlay=overlay,
        parts=n,
    )
    return CutDistance(value, method, overlay, q)


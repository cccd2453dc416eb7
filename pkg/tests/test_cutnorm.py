"""Tests for cut norms and overlay cut distance bounds."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
from pytest import mark, param, raises

from hyperlim import (
    CapacityError,
    InputError,
    Partition,
    StepHypergraphon3,
    StepKernel,
    StepTensor,
    cut_distance_upper,
    cut_norm_exact,
    cut_norm_heuristic,
    gen_random_step,
    one_cut_distance_upper,
    one_cut_norm,
    two_cut_norm,
)


params = mark.parametrize


def constant_kernel(k: int, c: float) -> StepKernel:
    return StepKernel(partition=Partition.equal(k), values=np.full((k, k), c))


def random_kernel(k: int, seed: int) -> StepKernel:
    W = gen_random_step(k, 2, seed)
    assert isinstance(W, StepKernel)
    return W


@params(
    "W,expected",
    [
        param(constant_kernel(3, 0.0), 0.0, id="zero"),
        param(constant_kernel(3, 0.4), 0.4, id="constant"),
        param(constant_kernel(2, -0.7), 0.7, id="negative"),
        param(
            StepKernel(
                partition=Partition.equal(2),
                values=np.array([[1.0, -1.0], [-1.0, 1.0]]),
            ),
            0.25,
            id="checkerboard",
        ),
        param(
            StepKernel(
                partition=Partition.equal(2),
                values=np.array([[0.0, 1.0], [0.0, 0.0]]),
                symmetric=False,
            ),
            0.25,
            id="asymmetric",
        ),
    ],
)
def test_cut_norm_exact(W: StepKernel, expected: float) -> None:
    """Hand-computed cut norms."""
    assert abs(cut_norm_exact(W) - expected) < 1e-12


def test_cut_norm_exact_respects_part_weights() -> None:
    """Unequal parts weigh the kernel entries."""
    W = StepKernel(
        partition=Partition(weights=np.array([0.25, 0.75])),
        values=np.array([[1.0, 0.0], [0.0, 0.0]]),
    )
    assert abs(cut_norm_exact(W) - 0.0625) < 1e-12


def test_cut_norm_exact_capacity() -> None:
    """More parts than the cap is refused."""
    with raises(CapacityError):
        cut_norm_exact(constant_kernel(3, 0.5), cap=2)


@params("seed", range(8))
def test_cut_norm_heuristic_is_a_lower_bound(seed: int) -> None:
    """0 <= heuristic <= exact on signed random kernels."""
    W = random_kernel(6, seed) - random_kernel(6, seed + 100)
    exact = cut_norm_exact(W)
    estimate = cut_norm_heuristic(W, restarts=5, seed=seed)
    assert 0.0 <= estimate.value <= exact + 1e-12


def test_cut_norm_heuristic_constant() -> None:
    """The all-ones start already attains the norm of a constant."""
    estimate = cut_norm_heuristic(constant_kernel(3, 0.5), restarts=1)
    assert abs(estimate.value - 0.5) < 1e-12
    assert estimate.row_set == (0, 1, 2)
    assert estimate.col_set == (0, 1, 2)


def test_cut_norm_heuristic_is_deterministic() -> None:
    """The same seed gives the same estimate."""
    W = random_kernel(5, 1) - random_kernel(5, 2)
    assert cut_norm_heuristic(W, 4, seed=9) == cut_norm_heuristic(W, 4, 9)

    with raises(InputError):
        cut_norm_heuristic(W, restarts=0)


@params("mode", ["exact", "heuristic"])
def test_one_cut_norm_constant(mode: str) -> None:
    """A constant r-graphon has 1-cut norm equal to the constant."""
    T = StepTensor(
        partition=Partition.equal(2), order=3, values=np.full((2, 2, 2), 0.3)
    )
    result = one_cut_norm(T, mode)  # type: ignore[arg-type]
    assert abs(result.value - 0.3) < 1e-12
    assert result.method == mode
    assert result.bound == ("value" if mode == "exact" else "lower")


@params("seed", range(4))
def test_one_cut_norm_of_order_two_is_the_cut_norm(seed: int) -> None:
    """On order 2 the 1-cut norm is the ordinary cut norm."""
    W = random_kernel(4, seed) - random_kernel(4, seed + 50)
    result = one_cut_norm(W.as_tensor())
    assert abs(result.value - cut_norm_exact(W)) < 1e-12


@params("seed", range(4))
def test_one_cut_norm_heuristic_is_a_lower_bound(seed: int) -> None:
    """The alternating search never beats exhaustive enumeration."""
    T1 = gen_random_step(3, 3, seed)
    T2 = gen_random_step(3, 3, seed + 10)
    assert isinstance(T1, StepTensor) and isinstance(T2, StepTensor)
    diff = T1 - T2
    exact = one_cut_norm(diff).value
    lower = one_cut_norm(diff, "heuristic", seed=seed, restarts=4).value
    assert 0.0 <= lower <= exact + 1e-12


def test_one_cut_norm_capacity() -> None:
    """k·(r-1) above the cap is refused in exact mode."""
    T = gen_random_step(4, 3, 0)
    assert isinstance(T, StepTensor)
    with raises(CapacityError):
        one_cut_norm(T, cap=6)


def constant_hypergraphon(k: int, c: float) -> StepHypergraphon3:
    return StepHypergraphon3(
        partition=Partition.equal(k), values=np.full((k,) * 6, c)
    )


@params("k", [1, 2])
def test_two_cut_norm_constant(k: int) -> None:
    """A constant hypergraphon has 2-cut norm equal to the constant."""
    D = constant_hypergraphon(k, 0.6)
    exact = two_cut_norm(D)
    assert abs(exact.value - 0.6) < 1e-12
    assert exact.bound == "value"

    lower = two_cut_norm(D, "heuristic", restarts=2)
    assert abs(lower.value - 0.6) < 1e-12
    assert lower.bound == "lower"


def random_difference(seed: int) -> StepHypergraphon3:
    D1 = gen_random_step(2, 3, seed, kind="sigma-invariant")
    D2 = gen_random_step(2, 3, seed + 20, kind="sigma-invariant")
    assert isinstance(D1, StepHypergraphon3)
    assert isinstance(D2, StepHypergraphon3)
    return D1 - D2


def swap_invariant_indicators() -> np.ndarray:
    """All 64 functions F on [2]^3 with F(a, b, x) = F(b, a, x)."""
    pairs = [(0, 0), (0, 1), (1, 1)]
    out = np.zeros((64, 2, 2, 2))
    for n, bits in enumerate(itertools.product([0.0, 1.0], repeat=6)):
        for (a, b), x, bit in zip(
            [p for p in pairs for _ in range(2)], [0, 1] * 3, bits
        ):
            out[n, a, b, x] = out[n, b, a, x] = bit
    return out


@params("seed", range(20))
def test_two_cut_norm_matches_brute_force(seed: int) -> None:
    """Exact mode maximizes over swap-invariant test functions only."""
    D = random_difference(seed)
    F = swap_invariant_indicators()
    Dw = D.values / 2.0**6
    totals = np.einsum(
        "abcxyz,fabx,gbcz,hacy->fgh", Dw, F, F, F, optimize=True
    )
    expected = float(np.abs(totals).max())

    exact = two_cut_norm(D)
    assert exact.method == "exact"
    assert abs(exact.value - expected) < 1e-12


@params("seed", range(3))
def test_two_cut_norm_heuristic_is_lower_bound(seed: int) -> None:
    """The alternating heuristic never exceeds the exact value."""
    diff = random_difference(seed)
    exact = two_cut_norm(diff).value
    lower = two_cut_norm(diff, "heuristic", seed=seed, restarts=3).value
    assert 0.0 <= lower <= exact + 1e-12


def test_two_cut_norm_capacity() -> None:
    """Three parts need 2·18 free bits in exact mode."""
    with raises(CapacityError):
        two_cut_norm(constant_hypergraphon(3, 0.5))


def test_cut_distance_to_itself_is_zero() -> None:
    """δ(W, W) = 0 with the exhaustive overlay search."""
    W = random_kernel(3, 0)
    dist = cut_distance_upper(W, W)
    assert dist.value == 0.0
    assert dist.method == "exact"
    assert dist.overlay == "exhaustive"
    assert dist.blowup == 1


def test_cut_distance_finds_the_relabeling() -> None:
    """A relabeled copy is found at distance zero."""
    W = random_kernel(5, 3)
    U = W.permuted([2, 0, 4, 3, 1])
    assert cut_norm_exact(U - W) > 0.0
    assert cut_distance_upper(U, W).value == 0.0


def test_cut_distance_identity_overlay() -> None:
    """max_iterations=0 keeps the identity overlay."""
    U, W = random_kernel(4, 1), random_kernel(4, 2)
    dist = cut_distance_upper(U, W, max_iterations=0)
    assert dist.overlay == "identity"
    assert abs(dist.value - cut_norm_exact(U - W)) < 1e-12


def test_cut_distance_annealed_improves_on_identity() -> None:
    """Beyond eight parts the search anneals and never gets worse."""
    W = random_kernel(10, 4)
    U = W.permuted([9, 3, 0, 7, 1, 8, 2, 6, 4, 5])
    dist = cut_distance_upper(U, W, seed=1)
    assert dist.overlay == "annealed"
    assert dist.method == "exact"
    assert 0.0 <= dist.value <= cut_norm_exact(U - W) + 1e-12


def test_cut_distance_blowup() -> None:
    """Blow-ups never do worse than the unrefined overlay."""
    U, W = random_kernel(2, 5), random_kernel(2, 6)
    plain = cut_distance_upper(U, W)
    blown = cut_distance_upper(U, W, 2)
    assert blown.blowup == 2
    assert blown.value <= plain.value + 1e-12


def test_cut_distance_input_errors() -> None:
    """Bad blow-up factors and mismatched partitions are rejected."""
    W = random_kernel(3, 0)
    with raises(InputError):
        cut_distance_upper(W, W, 0)
    with raises(InputError):
        cut_distance_upper(W, random_kernel(4, 0))


def test_one_cut_distance() -> None:
    """Relabeled step tensors are at 1-cut distance zero."""
    T = gen_random_step(3, 3, 7)
    assert isinstance(T, StepTensor)
    dist = one_cut_distance_upper(T.permuted([1, 2, 0]), T)
    assert dist.value == 0.0
    assert dist.overlay == "exhaustive"
    assert dist.method == "exact"

    with raises(InputError):
        one_cut_distance_upper(T, random_kernel(3, 0).as_tensor())


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=6))
def test_cut_norm_sandwich(seed: int, k: int) -> None:
    """|∫W| <= ‖W‖ <= ∫|W| and the heuristic stays below the exact value."""
    W = random_kernel(k, seed) - random_kernel(k, seed + 1)
    mass = W.weights[:, None] * W.values * W.weights[None, :]
    exact = cut_norm_exact(W)

    assert abs(mass.sum()) <= exact + 1e-12
    assert exact <= np.abs(mass).sum() + 1e-12
    assert cut_norm_heuristic(W, 3, seed).value <= exact + 1e-12


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5))
def test_cut_norm_triangle_inequality(seed: int, k: int) -> None:
    """‖U - W‖ <= ‖U - V‖ + ‖V - W‖."""
    U, V, W = (random_kernel(k, seed + i) for i in range(3))
    assert cut_norm_exact(U - W) <= (
        cut_norm_exact(U - V) + cut_norm_exact(V - W) + 1e-12
    )

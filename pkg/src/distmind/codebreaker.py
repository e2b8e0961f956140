"""Nonadaptive query strategies recovering the hidden vector exactly.

Every solver first builds its complete query plan, then feeds the plan to
the oracle, then interprets the answer vector; no query depends on an
earlier answer.  The generic separable solver turns sign queries x = k*sigma
into inner products of binary vectors with the odd-part vector of the
hidden coordinates: f(k*sigma - y) = 1.h_even(y) + sigma.h_odd(y), and the
two centering queries +-k*1 supply 1.h_even(y) and 1.h_odd(y).  Shifting by
the odd part's minimum and dividing by its minimum gap turns those inner
products into detecting-matrix measurements of well-separated digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codemaker import Oracle
from .detecting import (
    DetectingMatrix,
    DigitImageSet,
    RadixProfile,
    construct,
    decode_digits,
    plan_size,
)
from .measures import OddProfile, SeparableMeasure, build_odd_profile

# Digit space (bits of log2 prod d_i) beyond which doubles cannot carry the
# detecting-matrix path; only smoothmax at large radius gets near this.
MATRIX_PATH_BIT_LIMIT = 4096


class OracleInconsistencyError(ValueError):
    """Oracle answers are mutually inconsistent with any hidden vector."""


@dataclass(frozen=True)
class QueryPlan:
    """A fully predetermined sequence of legal queries with role tags."""

    n: int
    k: int
    queries: tuple[tuple[int, ...], ...]
    roles: tuple[str, ...]

    def __post_init__(self):
        if len(self.queries) != len(self.roles):
            raise ValueError("one role per query required")
        for q in self.queries:
            if len(q) != self.n or any(abs(v) > self.k for v in q):
                raise ValueError("query entries must lie in [-k, k]")


@dataclass(frozen=True)
class RecoveryResult:
    recovered: tuple[int, ...]
    queries_used: int
    strategy: str


def _signs_from_binary(tau: Sequence[int], k: int) -> tuple[int, ...]:
    # sigma_i = (-1)^(tau_i + 1): +1 where tau has a 1, -1 where it has a 0
    return tuple(k if t else -k for t in tau)


def plan_separable(n: int, k: int, matrix: DetectingMatrix) -> QueryPlan:
    """One sign query per matrix row, then the two centering queries."""
    queries = [_signs_from_binary(row, k) for row in matrix.entries]
    roles = ["sign-row"] * len(queries)
    queries.append((k,) * n)
    roles.append("all-plus")
    queries.append((-k,) * n)
    roles.append("all-minus")
    return QueryPlan(n=n, k=k, queries=tuple(queries), roles=tuple(roles))


def plan_naive(n: int, k: int) -> QueryPlan:
    """Sign queries for the n standard basis vectors, plus centering."""
    queries = []
    for i in range(n):
        tau = [0] * n
        tau[i] = 1
        queries.append(_signs_from_binary(tau, k))
    roles = ["basis"] * n
    queries.append((k,) * n)
    roles.append("all-plus")
    queries.append((-k,) * n)
    roles.append("all-minus")
    return QueryPlan(n=n, k=k, queries=tuple(queries), roles=tuple(roles))


def plan_linf(n: int, k: int) -> QueryPlan:
    """The 2n queries +-k e_i."""
    queries = []
    for i in range(n):
        plus = [0] * n
        plus[i] = k
        minus = [0] * n
        minus[i] = -k
        queries.append(tuple(plus))
        queries.append(tuple(minus))
    return QueryPlan(n=n, k=k, queries=tuple(queries), roles=("linf-pair",) * (2 * n))


def plan_l2(n: int, k: int, matrix: DetectingMatrix | None = None) -> QueryPlan:
    """Zero query, then basis vectors (mode A) or 0/1 matrix rows (mode B)."""
    queries: list[tuple[int, ...]] = [(0,) * n]
    roles = ["zero"]
    if matrix is None:
        for i in range(n):
            e = [0] * n
            e[i] = 1
            queries.append(tuple(e))
            roles.append("basis")
    else:
        for row in matrix.entries:
            queries.append(tuple(int(v) for v in row))
            roles.append("sign-row")
    return QueryPlan(n=n, k=k, queries=tuple(queries), roles=tuple(roles))


def _restore_powers(measure: SeparableMeasure, answers: Sequence[float]) -> np.ndarray:
    """Undo the oracle's reporting convention: p-th powers for lp measures."""
    arr = np.asarray(answers, dtype=float)
    if measure.reports_root:
        return arr**measure.p
    return arr


def _binary_measurements(measure: SeparableMeasure, profile: OddProfile,
                         taus: np.ndarray, answers: Sequence[float]) -> np.ndarray:
    """Turn sign-query answers into tau . phi(y) for each binary row tau.

    answers holds the sign-row answers followed by the all-plus and
    all-minus centering answers, as reported by the oracle.
    """
    sums = _restore_powers(measure, answers)
    rows, centering = sums[:-2], sums[-2:]
    even_dot = (centering[0] + centering[1]) / 2.0  # 1 . h_even(y)
    odd_dot = (centering[0] - centering[1]) / 2.0   # 1 . h_odd(y)
    tau_odd = (rows - even_dot + odd_dot) / 2.0      # tau . h_odd(y)
    tau_weight = taus.sum(axis=1).astype(float)
    return (tau_odd - tau_weight * profile.m_min) / profile.delta


def solve_separable(measure: SeparableMeasure, n: int, k: int, oracle: Oracle, *,
                    matrix: DetectingMatrix | None = None,
                    check_l1_identity: bool = False) -> RecoveryResult:
    """Recover y exactly via detecting-matrix sign queries: s + 2 in total.

    ``matrix`` may supply a preloaded detecting matrix; its radices must
    match the measure's digit profile.  When the digit space is too wide
    for doubles (smoothmax at large radius), falls back to the basis
    strategy, whose per-coordinate measurements need no mixed-radix
    separation across coordinates.
    """
    profile = build_odd_profile(measure, k)
    if n * math.log2(profile.radix) > MATRIX_PATH_BIT_LIMIT:
        return solve_naive_basis(measure, n, k, oracle)
    radices = RadixProfile(profile.radices(n))
    if matrix is None:
        matrix = construct(radices)
    elif matrix.radices != radices:
        raise ValueError(
            f"supplied matrix has radices {matrix.radices.radices[:4]}..., "
            f"the measure needs {radices.radices[:4]}...")
    plan = plan_separable(n, k, matrix)
    answers = [oracle(q) for q in plan.queries]
    meas = _binary_measurements(measure, profile, matrix.entries, answers)
    images = DigitImageSet.uniform(profile.image, n)
    digits = decode_digits(matrix, meas, images).digits
    recovered = tuple(profile.invert_phi(d) for d in digits)
    if check_l1_identity and measure.kind == "lp" and measure.p == 1:
        _assert_l1_identity(plan, answers, recovered, n, k)
    return RecoveryResult(recovered=recovered, queries_used=len(plan.queries),
                          strategy="separable")


def _assert_l1_identity(plan: QueryPlan, answers: Sequence[float],
                        recovered: tuple[int, ...], n: int, k: int) -> None:
    """Diagnostic: every sign answer must equal k*n - sigma . y_recovered."""
    y = np.asarray(recovered, dtype=float)
    for query, role, answer in zip(plan.queries, plan.roles, answers):
        if role not in ("sign-row", "basis", "all-plus", "all-minus"):
            continue
        sigma = np.asarray(query, dtype=float) / k
        expected = k * n - float(sigma @ y)
        if abs(answer - expected) > 1e-9 * max(1.0, k * n):
            raise OracleInconsistencyError(
                f"sign-query identity violated: answer {answer} vs {expected}")


def solve_naive_basis(measure: SeparableMeasure, n: int, k: int,
                      oracle: Oracle) -> RecoveryResult:
    """Recover y from basis sign queries plus centering: n + 2 queries."""
    profile = build_odd_profile(measure, k)
    plan = plan_naive(n, k)
    answers = [oracle(q) for q in plan.queries]
    taus = np.eye(n, dtype=np.int64)
    meas = _binary_measurements(measure, profile, taus, answers)
    recovered = tuple(profile.invert_phi(float(v)) for v in meas)
    return RecoveryResult(recovered=recovered, queries_used=len(plan.queries),
                          strategy="naive")


def solve_l2_direct(n: int, k: int, oracle: Oracle, *, mode: str = "basis") -> RecoveryResult:
    """Recover y from Euclidean queries via inner products.

    <x, y> = (|x|^2 + |y|^2 - |x - y|^2) / 2, so the zero query plus the n
    basis queries read off the coordinates directly (mode "basis", n + 1
    queries).  Mode "matrix" instead queries the 0/1 rows of a detecting
    matrix for the shifted vector y + k*1 with radices 2k + 1; "auto" picks
    whichever plans fewer queries.
    """
    if mode not in ("basis", "matrix", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    matrix = None
    if mode in ("matrix", "auto"):
        radices = RadixProfile((2 * k + 1,) * n)
        if mode == "matrix" or (1 << plan_size(radices)) < n:
            matrix = construct(radices)
    plan = plan_l2(n, k, matrix)
    answers = [oracle(q) for q in plan.queries]
    norm_sq = answers[0] ** 2
    if matrix is None:
        coords = []
        for a in answers[1:]:
            inner = (1.0 + norm_sq - a**2) / 2.0  # <e_i, y>
            coords.append(_snap_int(inner, low=-k, high=k))
        return RecoveryResult(recovered=tuple(coords), queries_used=len(plan.queries),
                              strategy="l2-basis")
    rows = matrix.entries
    weights = rows.sum(axis=1).astype(float)
    inner = (weights + norm_sq - np.asarray(answers[1:]) ** 2) / 2.0  # <tau, y>
    meas = inner + k * weights  # <tau, y + k*1>
    images = DigitImageSet.integer_box(matrix.radices)
    digits = decode_digits(matrix, meas, images).digits
    recovered = tuple(_snap_int(d, low=0, high=2 * k) - k for d in digits)
    return RecoveryResult(recovered=recovered, queries_used=len(plan.queries),
                          strategy="l2-matrix")


def _snap_int(value: float, *, low: int, high: int) -> int:
    nearest = round(value)
    if abs(value - nearest) > 0.25 or not low <= nearest <= high:
        raise OracleInconsistencyError(
            f"recovered inner product {value!r} is not an admissible integer")
    return int(nearest)


def solve_linf(n: int, k: int, oracle: Oracle) -> RecoveryResult:
    """Recover y from max-coordinate queries: exactly 2n of them.

    With x = +-k e_i, every other coordinate contributes at most k, so an
    answer above k pins |the i-th coordinate|: y_i = q_i^- - k when the
    minus query exceeds k, y_i = -(q_i^+ - k) when the plus query does,
    and y_i = 0 when both answers equal k.
    """
    plan = plan_linf(n, k)
    answers = [oracle(q) for q in plan.queries]
    coords = []
    for i in range(n):
        q_plus, q_minus = answers[2 * i], answers[2 * i + 1]
        if q_plus > k and q_minus > k:
            raise OracleInconsistencyError(
                f"coordinate {i}: both one-sided answers exceed k ({q_plus}, {q_minus})")
        if q_minus > k:
            coords.append(_snap_int(q_minus - k, low=-k, high=k))
        elif q_plus > k:
            coords.append(-_snap_int(q_plus - k, low=-k, high=k))
        else:
            coords.append(0)
    return RecoveryResult(recovered=tuple(coords), queries_used=len(plan.queries),
                          strategy="linf")


def choose_strategy(measure: SeparableMeasure, n: int, k: int) -> str:
    """Pick the smaller planned budget: "naive" (n+2) vs "separable" (s+2).

    Ties go to naive.  The separable path is also refused when the digit
    space exceeds what doubles can separate (see MATRIX_PATH_BIT_LIMIT).
    """
    profile = build_odd_profile(measure, k)
    if n * math.log2(profile.radix) > MATRIX_PATH_BIT_LIMIT:
        return "naive"
    s = 1 << plan_size(RadixProfile(profile.radices(n)))
    return "naive" if n + 2 <= s + 2 else "separable"


def run_strategy(measure, n: int, k: int, oracle: Oracle, strategy: str) -> RecoveryResult:
    """Dispatch a solver by label ("auto" resolves via choose_strategy)."""
    if strategy == "auto":
        strategy = choose_strategy(measure, n, k)
    if strategy == "separable":
        return solve_separable(measure, n, k, oracle)
    if strategy == "naive":
        return solve_naive_basis(measure, n, k, oracle)
    if strategy == "l2":
        return solve_l2_direct(n, k, oracle)
    if strategy == "linf":
        return solve_linf(n, k, oracle)
    raise ValueError(f"unknown strategy {strategy!r}")

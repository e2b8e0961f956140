"""Independent brute-force ground truth for tests and acceptance checks.

Everything here enumerates exhaustively and uses exact integer arithmetic
for matrix images, so a failure is never a tolerance artifact.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .codebreaker import run_strategy
from .codemaker import HiddenVector, make_honest_oracle
from .detecting import DetectingMatrix, RadixProfile
from .measures import CHEBYSHEV

DETECT_CAP_ENV = "DISTMIND_DETECT_CAP"
RECOVERY_CAP_ENV = "DISTMIND_RECOVERY_CAP"
DEFAULT_DETECT_CAP = 10**6
DEFAULT_RECOVERY_CAP = 10**5


class FeasibilityError(ValueError):
    """The requested exhaustive check exceeds its case cap."""


@dataclass(frozen=True)
class ExhaustiveReport:
    total: int
    failures: tuple[tuple, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _cap(env_name: str, default: int, override: int | None) -> int:
    if override is not None:
        return override
    return int(os.environ.get(env_name, default))


def detecting_property_check(matrix, radices: RadixProfile, *,
                             case_cap: int | None = None) -> ExhaustiveReport:
    """Enumerate the whole radix box and assert all images M u are distinct.

    ``matrix`` is a DetectingMatrix or a raw 0/1 ndarray.  Failures are
    (u, v) pairs with identical images.
    """
    entries = matrix.entries if isinstance(matrix, DetectingMatrix) else np.asarray(matrix)
    cap = _cap(DETECT_CAP_ENV, DEFAULT_DETECT_CAP, case_cap)
    total = prod(radices.radices)
    if total > cap:
        raise FeasibilityError(f"box has {total} vectors, cap is {cap}")
    m = entries.astype(np.int64)
    seen: dict[bytes, tuple[int, ...]] = {}
    failures = []
    for u in itertools.product(*[range(d) for d in radices.radices]):
        image = m @ np.asarray(u, dtype=np.int64)
        key = image.tobytes()
        if key in seen:
            failures.append((seen[key], u))
        else:
            seen[key] = u
    return ExhaustiveReport(total=total, failures=tuple(failures))


def exhaustive_recovery_check(measure, n: int, k: int, solver: str = "separable", *,
                              case_cap: int | None = None) -> ExhaustiveReport:
    """Run a solver against an honest oracle for every vector in the box.

    ``solver`` is a codebreaker strategy label; pass measure=None with
    solver="linf" for max-norm recovery.  Failures are (hidden, recovered)
    pairs; solver exceptions count as failures with the message recorded.
    """
    cap = _cap(RECOVERY_CAP_ENV, DEFAULT_RECOVERY_CAP, case_cap)
    total = (2 * k + 1) ** n
    if total > cap:
        raise FeasibilityError(f"box has {total} vectors, cap is {cap}")
    oracle_measure = measure if measure is not None else CHEBYSHEV
    failures = []
    for y in itertools.product(range(-k, k + 1), repeat=n):
        hidden = HiddenVector(y=y, n=n, k=k)
        oracle = make_honest_oracle(hidden, oracle_measure)
        try:
            result = run_strategy(measure, n, k, oracle, solver)
            recovered: tuple = result.recovered
        except Exception as exc:  # noqa: BLE001 - report, do not mask, solver bugs
            recovered = ("error", repr(exc))
        if recovered != y:
            failures.append((y, recovered))
    return ExhaustiveReport(total=total, failures=tuple(failures))

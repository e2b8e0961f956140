"""Oracles answering distance queries: honest, counting, and adversarial.

The honest oracle evaluates the chosen measure at y - x.  The noisy
adversary answers lp queries with a query-dependent blur, the p-th root of
the expected p-th power of the distance from a uniformly random alphabet
vector, whenever that value sits inside the legal (1 +- eps) band around
the honest answer; blurred answers carry no information about the hidden
vector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .measures import SeparableMeasure, eval_distance

Oracle = Callable[[Sequence[int]], float]


class InvalidQueryError(ValueError):
    """Query vector outside the alphabet {-k..k}^n."""


@dataclass(frozen=True)
class HiddenVector:
    """The codemaker's secret y in {-k..k}^n."""

    y: tuple[int, ...]
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1 or len(self.y) != self.n:
            raise ValueError(f"need n >= 1, k >= 1 and len(y) == n, got n={self.n} k={self.k}")
        if any(int(v) != v or abs(v) > self.k for v in self.y):
            raise ValueError(f"entries must be integers in [-{self.k}, {self.k}]")

    @classmethod
    def from_values(cls, values: Sequence[int], k: int) -> "HiddenVector":
        return cls(y=tuple(int(v) for v in values), n=len(values), k=k)


@dataclass(frozen=True)
class TranscriptEntry:
    index: int
    query: tuple[int, ...]
    answer: float
    blurred: bool | None = None


@dataclass
class Transcript:
    """Append-only record of (query, answer) pairs."""

    entries: list[TranscriptEntry] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.entries)

    def record(self, query: Sequence[int], answer: float, blurred: bool | None = None) -> None:
        self.entries.append(TranscriptEntry(
            index=len(self.entries),
            query=tuple(int(v) for v in query),
            answer=float(answer),
            blurred=blurred,
        ))

    def answers(self) -> tuple[float, ...]:
        return tuple(e.answer for e in self.entries)

    def to_jsonl(self) -> str:
        """One JSON object per query: {index, query, answer, blurred?}."""
        lines = []
        for e in self.entries:
            obj = {"index": e.index, "query": list(e.query), "answer": e.answer}
            if e.blurred is not None:
                obj["blurred"] = e.blurred
            lines.append(json.dumps(obj))
        return "\n".join(lines) + ("\n" if lines else "")


def _check_query(x: Sequence[int], n: int, k: int) -> np.ndarray:
    arr = np.asarray(x)
    if arr.shape != (n,):
        raise InvalidQueryError(f"query must have {n} entries, got shape {arr.shape}")
    if not np.all(arr == np.round(arr)) or np.any(np.abs(arr) > k):
        raise InvalidQueryError(f"query entries must be integers in [-{k}, {k}]")
    return arr.astype(np.int64)


def make_honest_oracle(hidden: HiddenVector, measure) -> Oracle:
    """Deterministic oracle answering f(y - x) for the given measure.

    ``measure`` is a SeparableMeasure or anything exposing .distance(u),
    e.g. measures.CHEBYSHEV for max-coordinate queries.
    """
    y = np.asarray(hidden.y, dtype=np.int64)

    def oracle(x: Sequence[int]) -> float:
        q = _check_query(x, hidden.n, hidden.k)
        return float(measure.distance(y - q))

    return oracle


@lru_cache(maxsize=None)
def coordinate_power_means(k: int, p: float) -> tuple[float, ...]:
    """m(v) = mean over z in {-k..k} of |v-z|^p, for v = -k..k."""
    zs = np.arange(-k, k + 1, dtype=float)
    return tuple(float(np.mean(np.abs(v - zs) ** p)) for v in range(-k, k + 1))


def expected_query_power(x: Sequence[int], k: int, p: float) -> float:
    """sum_i m(x_i): expected |y - x|_p^p over a uniform alphabet vector y."""
    means = coordinate_power_means(k, p)
    return float(sum(means[int(v) + k] for v in x))


@dataclass
class NoisyAdversary:
    """Callable oracle answering lp queries within the (1 +- eps) band.

    Answers the hidden-vector-independent blur whenever legal, otherwise
    the honest value; every emitted answer is checked against the band.
    """

    hidden: HiddenVector
    p: float
    eps: float
    transcript: Transcript = field(default_factory=Transcript)

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must be in (0, 1), got {self.eps}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")

    def blur(self, x: Sequence[int]) -> float:
        return expected_query_power(x, self.hidden.k, self.p) ** (1.0 / self.p)

    def __call__(self, x: Sequence[int]) -> float:
        q = _check_query(x, self.hidden.n, self.hidden.k)
        diff = np.asarray(self.hidden.y, dtype=np.int64) - q
        honest = float(np.sum(np.abs(diff) ** self.p) ** (1.0 / self.p))
        candidate = self.blur(q)
        blurred = (1.0 - self.eps) * honest <= candidate <= (1.0 + self.eps) * honest
        answer = candidate if blurred else honest
        assert (1.0 - self.eps) * honest <= answer <= (1.0 + self.eps) * honest
        self.transcript.record(q, answer, blurred=blurred)
        return answer


def make_noisy_adversary(hidden: HiddenVector, p: float, eps: float) -> NoisyAdversary:
    return NoisyAdversary(hidden=hidden, p=p, eps=eps)


def wrap_counting(oracle: Oracle) -> tuple[Oracle, Transcript]:
    """Pass-through wrapper recording every (query, answer) pair."""
    transcript = Transcript()

    def wrapped(x: Sequence[int]) -> float:
        answer = oracle(x)
        transcript.record(x, answer)
        return answer

    return wrapped, transcript

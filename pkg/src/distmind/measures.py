"""Separable distance measures f(x) = sum_i g(|x_i|) and their digit profiles.

A measure's per-coordinate loss g, shifted to h(x) = g(k - x) on the integer
alphabet {-k..k} and split into even and odd parts, yields the odd-part
table that drives exact recovery: the odd part is injective whenever its
minimum gap is positive, and normalizing by that gap produces per-coordinate
"digits" phi(x) in [0, d-1] whose distinct values are at least 1 apart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

KINDS = ("lp", "l1l2", "huber", "fair", "smoothmax")

# Relative floor below which the odd part is treated as non-injective.
DEGENERACY_FLOOR = 1e-12


class DegenerateMeasureError(ValueError):
    """The odd-part table has no usable gap at working precision."""


class DigitInversionError(ValueError):
    """A decoded digit did not land near any tabulated odd-part value."""


@dataclass(frozen=True)
class SeparableMeasure:
    """Descriptor of a coordinate-wise distance.

    kind: one of "lp", "l1l2", "huber", "fair", "smoothmax".
    p, tau, c: the parameter of the lp / huber / fair families.
    Oracles report the p-th root of the coordinate sum for lp measures
    (``reports_root``) and the plain sum for everything else.
    """

    kind: str
    p: float | None = None
    tau: float | None = None
    c: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "lp":
            if self.p is None or self.p < 1:
                raise ValueError(f"lp needs p >= 1, got {self.p}")
        elif self.kind == "huber":
            if self.tau is None or self.tau <= 0:
                raise ValueError(f"huber needs tau > 0, got {self.tau}")
        elif self.kind == "fair":
            if self.c is None or self.c <= 0:
                raise ValueError(f"fair needs c > 0, got {self.c}")

    @property
    def reports_root(self) -> bool:
        return self.kind == "lp"

    def g(self, t):
        """Per-coordinate loss evaluated at |t| (scalar or ndarray)."""
        t = np.abs(np.asarray(t, dtype=float))
        if self.kind == "lp":
            return t**self.p
        if self.kind == "l1l2":
            return 2.0 * (np.sqrt(1.0 + t * t / 2.0) - 1.0)
        if self.kind == "huber":
            tau = self.tau
            return np.where(t <= tau, t * t / (2.0 * tau), t - tau / 2.0)
        if self.kind == "fair":
            c = self.c
            return c * c * (t / c - np.log1p(t / c))
        return np.exp(t)  # smoothmax

    def distance(self, u: Sequence[float]) -> float:
        return eval_distance(self, u)

    def label(self) -> str:
        if self.kind == "lp":
            return f"lp:{self.p:g}"
        if self.kind == "huber":
            return f"huber:{self.tau:g}"
        if self.kind == "fair":
            return f"fair:{self.c:g}"
        return self.kind


@dataclass(frozen=True)
class ChebyshevDistance:
    """Max-coordinate distance; not separable, served by its own 2n-query solver."""

    def distance(self, u: Sequence[float]) -> float:
        u = np.asarray(u, dtype=float)
        return float(np.max(np.abs(u))) if u.size else 0.0

    def label(self) -> str:
        return "linf"


CHEBYSHEV = ChebyshevDistance()


def make_measure(kind: str, *, p: float | None = None, tau: float | None = None,
                 c: float | None = None) -> SeparableMeasure:
    """Build a measure descriptor, validating its parameter."""
    return SeparableMeasure(kind=kind, p=p, tau=tau, c=c)


def parse_measure(spec: str):
    """Parse a CLI measure string: lp:2, lp:1.5, huber:1.0, fair:1.0, l1l2, smoothmax, linf."""
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if name == "lp":
        return make_measure("lp", p=float(arg))
    if name == "huber":
        return make_measure("huber", tau=float(arg) if arg else 1.0)
    if name == "fair":
        return make_measure("fair", c=float(arg) if arg else 1.0)
    if name in ("l1l2", "smoothmax"):
        if arg:
            raise ValueError(f"measure {name} takes no parameter")
        return make_measure(name)
    if name == "linf":
        return CHEBYSHEV
    raise ValueError(f"unrecognized measure spec {spec!r}")


def eval_distance(m: SeparableMeasure, u: Sequence[float]) -> float:
    """sum_i g(|u_i|), reported as the p-th root for lp measures."""
    total = float(np.sum(m.g(np.asarray(u, dtype=float)))) if len(u) else 0.0
    if m.reports_root:
        return total ** (1.0 / m.p)
    return total


def even_odd_decompose(h: Callable[[float], float], k: int):
    """Tabulate the even and odd parts of h on the integer grid {-k..k}.

    Returns (even, odd) ndarrays indexed by x + k, with
    even(x) = (h(x) + h(-x))/2 and odd(x) = (h(x) - h(-x))/2.
    """
    xs = np.arange(-k, k + 1, dtype=float)
    vals = np.array([float(h(x)) for x in xs])
    flipped = vals[::-1]  # h(-x), since the grid is symmetric
    return (vals + flipped) / 2.0, (vals - flipped) / 2.0


@dataclass(frozen=True)
class OddProfile:
    """Odd-part table of h(x) = g(k - x) on {-k..k} and its derived digits.

    All provided measures apply the same g on every coordinate, so one table
    serves all of them; ``radices`` materializes the per-coordinate radix
    vector for a given dimension.  A heterogeneous-loss variant would carry
    one profile per coordinate through the identical interface.
    """

    k: int
    points: np.ndarray      # x = -k..k
    h_even: np.ndarray
    h_odd: np.ndarray
    m_min: float
    m_max: float
    delta: float            # minimum gap between distinct odd-part values
    radix: int              # ceil((m_max - m_min)/delta) + 1
    phi: np.ndarray         # (h_odd - m_min)/delta, indexed by x + k
    image: np.ndarray       # phi values sorted ascending
    image_points: np.ndarray  # x value realizing each sorted phi entry

    def __post_init__(self):
        for arr in (self.points, self.h_even, self.h_odd, self.phi,
                    self.image, self.image_points):
            arr.flags.writeable = False

    def phi_of(self, y: int) -> float:
        return float(self.phi[int(y) + self.k])

    def radices(self, n: int) -> tuple[int, ...]:
        return (self.radix,) * n

    def invert_phi(self, value: float) -> int:
        """Map a decoded digit back to the alphabet point it came from.

        Accepts only if the nearest tabulated digit is within 1/3 (one third
        of the normalized gap); anything farther signals a corrupted decode.
        """
        idx = int(np.searchsorted(self.image, value))
        best, err = None, math.inf
        for j in (idx - 1, idx, idx + 1):
            if 0 <= j < self.image.shape[0]:
                e = abs(float(self.image[j]) - value)
                if e < err:
                    best, err = j, e
        if best is None or err > 1.0 / 3.0:
            raise DigitInversionError(
                f"no tabulated digit within tolerance of {value!r} (nearest off by {err:.3g})")
        return int(self.image_points[best])


def build_odd_profile(m: SeparableMeasure, k: int) -> OddProfile:
    """Tabulate h(x) = g(k - x) on {-k..k} and derive the digit quantities.

    Raises DegenerateMeasureError when the odd part is constant or its
    minimum gap sits below the floating-point floor, and when the table is
    not finite (smoothmax outside its operating range).
    """
    if k < 1:
        raise ValueError(f"alphabet radius must be >= 1, got {k}")
    xs = np.arange(-k, k + 1, dtype=float)
    h = np.asarray(m.g(k - xs), dtype=float)  # k - x >= 0 on the grid
    if not np.all(np.isfinite(h)):
        raise DegenerateMeasureError(
            f"{m.label()} overflows at radius {k}; outside the operating range")
    h_odd = (h - h[::-1]) / 2.0
    h_even = (h + h[::-1]) / 2.0
    m_min = float(h_odd.min())
    m_max = float(h_odd.max())
    gaps = np.diff(np.sort(h_odd))
    delta = float(gaps.min()) if gaps.size else 0.0
    if delta <= DEGENERACY_FLOOR * max(abs(m_min), abs(m_max), 1.0):
        raise DegenerateMeasureError(
            f"odd part of {m.label()} is not injective at working precision (gap {delta:.3g})")
    radix = math.ceil((m_max - m_min) / delta) + 1
    phi = (h_odd - m_min) / delta
    order = np.argsort(phi)
    return OddProfile(
        k=k,
        points=xs.astype(np.int64),
        h_even=h_even,
        h_odd=h_odd,
        m_min=m_min,
        m_max=m_max,
        delta=delta,
        radix=radix,
        phi=phi,
        image=phi[order],
        image_points=xs[order].astype(np.int64),
    )

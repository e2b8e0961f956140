"""Fourier analysis of real-valued functions on the hypercube {-1,+1}^nu.

Conventions, fixed once and shared with the detecting-matrix builder:

- Points are enumerated by binary counting of the row index t in [0, 2^nu):
  coordinate i of the point carries bit (nu - 1 - i) of t, with bit 0
  mapping to -1 and bit 1 to +1.  Coordinate 0 is the most significant bit.
- Characters a in {0,1}^nu are packed into integers the same way, so the
  spectrum array is indexed by the packed character.  chi_a(x) is the
  product of x_i over the set bits of a (empty product = +1).
- ``rank_order`` sorts characters by weight descending, ties broken by
  packed value ascending.  "Above" in the triangular-spectrum sense means
  earlier in this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from ._kernels import fwht_inplace


@dataclass(frozen=True)
class CharacterIndex:
    """A character of the hypercube, stored as a tuple of 0/1 flags."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"character bits must be 0 or 1, got {self.bits}")

    @property
    def weight(self) -> int:
        return sum(self.bits)

    @property
    def dimension(self) -> int:
        return len(self.bits)

    @property
    def packed(self) -> int:
        """Integer encoding with bits[0] as the most significant bit."""
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    @classmethod
    def from_packed(cls, packed: int, nu: int) -> "CharacterIndex":
        if not 0 <= packed < (1 << nu):
            raise ValueError(f"packed value {packed} out of range for nu={nu}")
        return cls(tuple((packed >> (nu - 1 - i)) & 1 for i in range(nu)))


@dataclass(frozen=True)
class HypercubeFunction:
    """Values of f on {-1,+1}^nu in the canonical point order."""

    values: tuple[float, ...]

    def __post_init__(self):
        n = len(self.values)
        if n == 0 or n & (n - 1):
            raise ValueError("value table length must be a power of two")

    @property
    def dimension(self) -> int:
        return len(self.values).bit_length() - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class FourierSpectrum:
    """Coefficients indexed by packed character (lexicographic order)."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        n = len(self.coeffs)
        if n == 0 or n & (n - 1):
            raise ValueError("coefficient table length must be a power of two")

    @property
    def dimension(self) -> int:
        return len(self.coeffs).bit_length() - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)


def char_eval(a: CharacterIndex, x: Sequence[float]) -> float:
    """Evaluate chi_a at a point x in {-1,+1}^nu."""
    if len(x) != a.dimension:
        raise ValueError(f"dimension mismatch: character has {a.dimension} bits, point has {len(x)}")
    out = 1.0
    for bit, xi in zip(a.bits, x):
        if bit:
            out *= xi
    return out


def point(t: int, nu: int) -> tuple[int, ...]:
    """The t-th point of {-1,+1}^nu in the canonical order."""
    return tuple(1 if (t >> (nu - 1 - i)) & 1 else -1 for i in range(nu))


@lru_cache(maxsize=None)
def parity_signs(nu: int) -> np.ndarray:
    """(-1)^weight(a) for every packed character a, as a read-only array."""
    signs = np.ones(1)
    for _ in range(nu):
        signs = np.concatenate([signs, -signs])
    signs.flags.writeable = False
    return signs


def _as_table(values) -> np.ndarray:
    if isinstance(values, (HypercubeFunction, FourierSpectrum)):
        values = values.values if isinstance(values, HypercubeFunction) else values.coeffs
    table = np.array(values, dtype=float)
    n = table.shape[0]
    if table.ndim != 1 or n == 0 or n & (n - 1):
        raise ValueError("table length must be a positive power of two")
    return table


def wht(values) -> np.ndarray:
    """Forward transform: coeffs[a] = 2^-nu * sum_x f(x) chi_a(x).

    Accepts a HypercubeFunction or any sequence of 2^nu reals; returns the
    spectrum as an ndarray in packed-character order.  Runs in O(nu 2^nu).
    """
    table = _as_table(values)
    fwht_inplace(table)
    nu = table.shape[0].bit_length() - 1
    table *= parity_signs(nu)
    table /= table.shape[0]
    return table


def inverse_wht(coeffs) -> np.ndarray:
    """Inverse transform: f(x) = sum_a coeffs[a] chi_a(x)."""
    table = _as_table(coeffs)
    nu = table.shape[0].bit_length() - 1
    table *= parity_signs(nu)
    fwht_inplace(table)
    return table


@lru_cache(maxsize=None)
def rank_order(nu: int) -> tuple[int, ...]:
    """Packed characters sorted by weight descending, then packed ascending."""
    return tuple(sorted(range(1 << nu), key=lambda a: (-a.bit_count(), a)))


@lru_cache(maxsize=None)
def rank_of(nu: int) -> np.ndarray:
    """rank_of(nu)[a] = position of packed character a in rank_order(nu)."""
    ranks = np.empty(1 << nu, dtype=np.int64)
    for pos, a in enumerate(rank_order(nu)):
        ranks[a] = pos
    ranks.flags.writeable = False
    return ranks

"""Binary detecting matrices with triangular Fourier structure.

A (d_1,...,d_n)-detecting matrix M maps every vector u of the mixed-radix
box prod_i {0..d_i-1} to a distinct measurement M u.  Columns are built as
0/1-valued functions on {-1,+1}^nu whose spectra are triangular in the
character order of :mod:`distmind.fourier`: column i of the group owned by
character a has coefficient (d_{r+1} * ... * d_{r+i-1}) / 2^wt(a) at a and
zero at every character strictly above a.  Measurements therefore peel off
group by group: the top surviving coefficient encodes one group's digits as
a mixed-radix sum, which also works for real-valued digits as long as they
sit in [0, d_i - 1] and distinct values are at least 1 apart.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from .fourier import CharacterIndex, rank_order, wht

logger = logging.getLogger(__name__)

# Half the minimum spacing of admissible mixed-radix sums: digit images are
# >= 1 apart, so sums for distinct tuples differ by >= 1 before the 2^-wt
# scaling, and 0.25 leaves margin for accumulated floating-point error.
DECODE_TOL = 0.25

IMAGE_GAP_SLACK = 1e-9


class CapacityError(ValueError):
    """The hypercube dimension cannot host all requested columns."""


class ConstructionError(RuntimeError):
    """No 0/1 column realizes the prescribed coefficients (internal error)."""


class DecodeError(ValueError):
    """The measurement is inconsistent with every admissible digit tuple."""


@dataclass(frozen=True)
class RadixProfile:
    """Nondecreasing per-coordinate radices d_i >= 2."""

    radices: tuple[int, ...]

    def __post_init__(self):
        if not self.radices:
            raise ValueError("radix profile must be nonempty")
        if any(int(d) != d or d < 2 for d in self.radices):
            raise ValueError(f"radices must be integers >= 2, got {self.radices}")
        if any(a > b for a, b in zip(self.radices, self.radices[1:])):
            raise ValueError(f"radices must be nondecreasing, got {self.radices}")

    def __len__(self) -> int:
        return len(self.radices)

    @property
    def total(self) -> int:
        return sum(self.radices)


@dataclass(frozen=True)
class Group:
    """A run of columns owned by one character: start column and length."""

    char: CharacterIndex
    start: int
    length: int


@dataclass(frozen=True)
class GroupPlan:
    dimension: int
    groups: tuple[Group, ...]

    def __post_init__(self):
        col = 0
        for g in self.groups:
            if g.start != col or g.length < 1:
                raise ValueError("groups must cover columns consecutively")
            col += g.length

    @property
    def columns(self) -> int:
        return sum(g.length for g in self.groups)


@dataclass(frozen=True)
class DetectingMatrix:
    entries: np.ndarray  # s x n, uint8 in {0,1}
    plan: GroupPlan
    radices: RadixProfile

    def __post_init__(self):
        s, n = self.entries.shape
        if s != 1 << self.plan.dimension or n != self.plan.columns or n != len(self.radices):
            raise ValueError("matrix shape disagrees with its plan")
        if self.entries.dtype != np.uint8 or self.entries.max(initial=0) > 1:
            raise ValueError("entries must be uint8 values in {0, 1}")
        self.entries.flags.writeable = False

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def columns(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class DigitImageSet:
    """Admissible digit values per coordinate, sorted ascending.

    Values must be nonnegative with within-coordinate gaps >= 1 (up to a
    1e-9 slack); decode additionally checks them against the matrix radices.
    """

    values: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        for i, vals in enumerate(self.values):
            if not vals:
                raise ValueError(f"coordinate {i} has an empty image")
            if vals[0] < -IMAGE_GAP_SLACK:
                raise ValueError(f"coordinate {i} has a negative digit value")
            if any(b - a < 1.0 - IMAGE_GAP_SLACK for a, b in zip(vals, vals[1:])):
                raise ValueError(f"coordinate {i} image values are closer than 1 apart")

    @classmethod
    def integer_box(cls, radices: RadixProfile) -> "DigitImageSet":
        return cls(tuple(tuple(float(v) for v in range(d)) for d in radices.radices))

    @classmethod
    def uniform(cls, image: Sequence[float], n: int) -> "DigitImageSet":
        one = tuple(float(v) for v in image)
        return cls((one,) * n)


@dataclass(frozen=True)
class DigitTuple:
    digits: tuple[float, ...]


def plan_groups(radices: RadixProfile, nu: int) -> GroupPlan:
    """Assign columns to characters, largest weight first.

    Column i of a group carries place weight W_i = d_{r+1} ... d_{r+i-1}
    (empty product 1) in the group's mixed-radix sum, and a 0/1-valued
    column can realize coefficient W_i / 2^wt only when W_i <= 2^(wt-1),
    which is half the points of the subcube fixed by the character.  Each
    group therefore takes the maximal run of columns whose place weights
    stay within that cap.  Raises CapacityError when the characters of
    {0,1}^nu cannot host all columns (nu too small).
    """
    if nu < 1:
        raise ValueError(f"hypercube dimension must be >= 1, got {nu}")
    n = len(radices)
    d = radices.radices
    groups = []
    col = 0
    for a in rank_order(nu):
        if col == n:
            break
        wt = a.bit_count()
        if wt == 0:
            continue
        cap = 1 << (wt - 1)
        length, weight = 0, 1
        while col + length < n and weight <= cap:
            weight *= d[col + length]
            length += 1
        if length:
            groups.append(Group(CharacterIndex.from_packed(a, nu), col, length))
            col += length
    if col < n:
        raise CapacityError(
            f"characters of dimension {nu} host only {col} of {n} columns")
    return GroupPlan(dimension=nu, groups=tuple(groups))


def size_bound_terms(s: int, radices: RadixProfile) -> tuple[float, float]:
    """(lhs, rhs) of the size guarantee s*(log2 s - 4) <= 2n*log2(d/n)."""
    n = len(radices)
    lhs = s * (math.log2(s) - 4.0)
    rhs = 2.0 * n * math.log2(radices.total / n)
    return lhs, rhs


def plan_size(radices: RadixProfile) -> int:
    """Smallest nu for which plan_groups covers every column.

    Every nonzero character hosts at least one column (its leading place
    weight is 1), so nu = ceil(log2(n + 1)) always suffices.  Logs a
    diagnostic if the resulting size misses the guarantee of
    :func:`size_bound_terms`.
    """
    n = len(radices)
    cap = max(1, math.ceil(math.log2(n + 1)))
    nu = None
    for trial in range(1, cap + 1):
        try:
            plan_groups(radices, trial)
        except CapacityError:
            continue
        nu = trial
        break
    if nu is None:
        raise ConstructionError(
            f"no plan found up to the dimension cap {cap} for n={n}")
    s = 1 << nu
    if math.log2(s) > 4:
        lhs, rhs = size_bound_terms(s, radices)
        if lhs > rhs:
            logger.warning(
                "constructed size s=%d exceeds the size guarantee: %.3f > %.3f", s, lhs, rhs)
    return nu


@lru_cache(maxsize=64)
def construct(radices: RadixProfile) -> DetectingMatrix:
    """Build the detecting matrix for a radix profile, deterministically.

    Each column is a disjoint union of subcubes: the group's character
    fixes a coordinate set S, and the column marks the points agreeing with
    W_i chosen sign patterns on S, all of product +1.  Distinct patterns on
    the same S touch disjoint point sets, so the column is 0/1-valued, its
    coefficient at the character is exactly W_i / 2^wt, and every character
    not contained in S (in particular everything strictly above) gets zero.
    """
    nu = plan_size(radices)
    plan = plan_groups(radices, nu)
    s, n = 1 << nu, len(radices)
    entries = np.zeros((s, n), dtype=np.uint8)
    t = np.arange(s, dtype=np.int64)
    for group in plan.groups:
        a = group.char.packed
        wt = group.char.weight
        support = [i for i in range(nu) if (a >> (nu - 1 - i)) & 1]
        # bit j of proj = point bit at support[j] (1 means coordinate +1)
        proj = np.zeros(s, dtype=np.int64)
        for j, pos in enumerate(support):
            proj |= ((t >> (nu - 1 - pos)) & 1) << (wt - 1 - j)
        plus_parity = [q for q in range(1 << wt) if (wt - q.bit_count()) % 2 == 0]
        weight = 1
        for i in range(group.length):
            if weight > len(plus_parity):
                raise ConstructionError(
                    f"place weight {weight} exceeds the {len(plus_parity)} "
                    f"product-plus patterns of a weight-{wt} character")
            entries[np.isin(proj, plus_parity[:weight]), group.start + i] = 1
            weight *= radices.radices[group.start + i]
    return DetectingMatrix(entries=entries, plan=plan, radices=radices)


def group_place_weights(matrix: DetectingMatrix, group: Group) -> list[int]:
    """Mixed-radix place weights of a group's columns (leading weight 1)."""
    weights = [1]
    for i in range(1, group.length):
        weights.append(weights[-1] * matrix.radices.radices[group.start + i - 1])
    return weights


def _search_group(target: float, matrix: DetectingMatrix, group: Group,
                  images: DigitImageSet, tol: float) -> list[float]:
    """Find the unique digit tuple of a group whose mixed-radix sum hits target.

    Ranks enumerate the group's image box with the first coordinate cycling
    fastest; the sum is strictly increasing along that order (each step
    raises some digit by >= 1 at its place weight, which dominates the
    lower places), so a binary search over ranks suffices:
    O(sum_i log |image_i|) comparisons.
    """
    r, length = group.start, group.length
    ims = [images.values[r + i] for i in range(length)]
    sizes = [len(im) for im in ims]
    weights = group_place_weights(matrix, group)

    def value_at(rank: int) -> float:
        total = 0.0
        for i in range(length):
            rank, idx = divmod(rank, sizes[i])
            total += ims[i][idx] * weights[i]
        return total

    count = math.prod(sizes)
    lo, hi = 0, count - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if value_at(mid) < target:
            lo = mid + 1
        else:
            hi = mid
    best = min(
        (rank for rank in (lo - 1, lo, lo + 1) if 0 <= rank < count),
        key=lambda rank: abs(value_at(rank) - target),
    )
    err = abs(value_at(best) - target)
    if err > tol:
        raise DecodeError(
            f"no digit tuple matches the extracted coefficient "
            f"(target {target!r}, nearest off by {err:.3g})")
    digits = []
    rank = best
    for i in range(length):
        rank, idx = divmod(rank, sizes[i])
        digits.append(ims[i][idx])
    return digits


def decode_digits(matrix: DetectingMatrix, measurement: Sequence[float],
                  images: DigitImageSet, *, tol: float = DECODE_TOL) -> DigitTuple:
    """Recover the digit vector phi from measurement = M phi.

    Repeatedly transforms the residual measurement, takes the highest-ranked
    character whose coefficient exceeds tol / 2^wt, decodes that group's
    digits by binary search over its image box, subtracts the decoded
    columns, and recurses.  Groups never surfacing above the tolerance hold
    digit tuples with a (near-)zero sum and are resolved against the final
    residual spectrum.
    """
    if len(images.values) != matrix.columns:
        raise ValueError("image set has the wrong number of coordinates")
    for i, (vals, d) in enumerate(zip(images.values, matrix.radices.radices)):
        if vals[-1] > d - 1 + IMAGE_GAP_SLACK:
            raise ValueError(f"coordinate {i} image exceeds its radix range [0, {d - 1}]")
    nu = matrix.plan.dimension
    resid = np.array(measurement, dtype=float)
    if resid.shape != (matrix.rows,):
        raise ValueError(f"measurement must have {matrix.rows} entries")
    by_char = {g.char.packed: g for g in matrix.plan.groups}
    digits: list[float | None] = [None] * matrix.columns
    order = rank_order(nu)
    spectrum = wht(resid)
    while True:
        found = None
        for a in order:
            if abs(spectrum[a]) > tol / (1 << a.bit_count()):
                found = a
                break
        if found is None:
            break
        group = by_char.get(found)
        if group is None or digits[group.start] is not None:
            raise DecodeError(
                f"residual coefficient at character {found:#0{nu + 2}b} "
                "matches no undecoded group (inconsistent measurement)")
        target = float(spectrum[found]) * (1 << group.char.weight)
        vals = _search_group(target, matrix, group, images, tol)
        digits[group.start:group.start + group.length] = vals
        resid -= matrix.entries[:, group.start:group.start + group.length] @ np.asarray(vals)
        spectrum = wht(resid)
    for group in matrix.plan.groups:
        if digits[group.start] is None:
            target = float(spectrum[group.char.packed]) * (1 << group.char.weight)
            vals = _search_group(target, matrix, group, images, tol)
            digits[group.start:group.start + group.length] = vals
    return DigitTuple(digits=tuple(float(v) for v in digits))


def spectrum_certificate(matrix: DetectingMatrix) -> float:
    """Max spectral deviation over all columns from the triangular contract.

    For each column of each group: |coeff at the group character minus its
    place weight / 2^wt|, and |coeff| at every strictly higher-ranked
    character.  Zero (up to float noise) for correctly constructed matrices.
    """
    nu = matrix.plan.dimension
    ranks = {a: pos for pos, a in enumerate(rank_order(nu))}
    worst = 0.0
    for group in matrix.plan.groups:
        a = group.char.packed
        weights = group_place_weights(matrix, group)
        for i in range(group.length):
            coeffs = wht(matrix.entries[:, group.start + i].astype(float))
            prescribed = weights[i] / (1 << group.char.weight)
            worst = max(worst, abs(float(coeffs[a]) - prescribed))
            for b in range(1 << nu):
                if ranks[b] < ranks[a]:
                    worst = max(worst, abs(float(coeffs[b])))
    return worst


def save_matrix(matrix: DetectingMatrix, path: str | Path) -> None:
    """Text format: 'nu=<nu> n=<n>' header, one radix per line, then the rows."""
    lines = [f"nu={matrix.plan.dimension} n={matrix.columns}"]
    lines.extend(str(d) for d in matrix.radices.radices)
    lines.extend("".join(str(int(v)) for v in row) for row in matrix.entries)
    Path(path).write_text("\n".join(lines) + "\n")


def load_matrix(path: str | Path) -> DetectingMatrix:
    lines = Path(path).read_text().splitlines()
    header = dict(part.split("=") for part in lines[0].split())
    nu, n = int(header["nu"]), int(header["n"])
    radices = RadixProfile(tuple(int(v) for v in lines[1:1 + n]))
    rows = lines[1 + n:1 + n + (1 << nu)]
    entries = np.array([[int(ch) for ch in row] for row in rows], dtype=np.uint8)
    if entries.shape != (1 << nu, n):
        raise ValueError(f"matrix file {path} has shape {entries.shape}, expected {(1 << nu, n)}")
    return DetectingMatrix(entries=entries, plan=plan_groups(radices, nu), radices=radices)

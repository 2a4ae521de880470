"""Shared types, tolerance policy and the error hierarchy.

Every construction in the package trades in :class:`SymMatrix` and
:class:`Spectrum`.  Both are immutable once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class IEPGError(Exception):
    """Base class for all package errors."""


class StructuralError(IEPGError, ValueError):
    """Malformed input: wrong lengths, bad orders, out-of-range indices."""


class HypothesisError(IEPGError, ValueError):
    """A construction precondition on the input data does not hold."""


class ParameterError(HypothesisError):
    """Graph/size parameters (n, k, r, i, j) outside the supported range."""


class FewerThanTwoDistinct(HypothesisError):
    pass


class TooFewDistinct(HypothesisError):
    pass


class PinConflict(HypothesisError):
    pass


class Infeasible(HypothesisError):
    pass


class InterlacingViolated(HypothesisError):
    pass


class DuplicateMu(HypothesisError):
    pass


class NegativeRadicand(HypothesisError):
    pass


class NotInFamily(HypothesisError):
    pass


class NumericalError(IEPGError, ArithmeticError):
    """A construction ran but its result failed a numerical check."""


class SearchExhausted(NumericalError):
    pass


class SeparationFailed(NumericalError):
    pass


class EigenpairMismatch(NumericalError):
    pass


class NotUnit(NumericalError):
    pass


class PatternMismatch(NumericalError):
    pass


class SpectrumMismatch(NumericalError):
    pass


# ---------------------------------------------------------------------------
# Tolerances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToleranceProfile:
    """Scale-relative thresholds.

    Each value is multiplied by ``max(1, magnitude of the data)`` at the
    point of use; see :func:`scale_of`.
    """

    spec_tol: float = 1e-8
    zero_tol: float = 1e-10
    rank_tol: float = 1e-9

    def __post_init__(self):
        for name in ("spec_tol", "zero_tol", "rank_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise StructuralError(f"{name} must be a positive finite number, got {value!r}")
        if self.spec_tol <= np.finfo(float).eps:
            raise StructuralError("spec_tol must exceed machine epsilon")


DEFAULT_TOL = ToleranceProfile()


def scale_of(values) -> float:
    """``max(1, max |x|)`` over an array-like (empty gives 1)."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return 1.0
    return max(1.0, float(np.max(np.abs(arr))))


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------


class Spectrum(Sequence[float]):
    """Multiset of real eigenvalue targets, kept sorted descending.

    The sort is stable, so equal values keep their input order (this only
    matters for ``-0.0`` vs ``0.0`` and for reproducible output).
    """

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[float]):
        vals = [float(v) for v in values]
        if not vals:
            raise StructuralError("a spectrum needs at least one value")
        if not all(math.isfinite(v) for v in vals):
            raise StructuralError("spectrum values must be finite")
        self._values = tuple(sorted(vals, key=lambda v: -v))

    @property
    def values(self) -> tuple[float, ...]:
        return self._values

    def __getitem__(self, idx):
        return self._values[idx]

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self):
        return iter(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, Spectrum):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._values)

    def __repr__(self) -> str:
        return f"Spectrum({list(self._values)!r})"

    def scale(self) -> float:
        return scale_of(self._values)

    def classes(self, tol: ToleranceProfile = DEFAULT_TOL) -> list[list[float]]:
        """Group the (sorted) values into runs closer than ``zero_tol * scale``."""
        eps = tol.zero_tol * self.scale()
        groups: list[list[float]] = [[self._values[0]]]
        for v in self._values[1:]:
            if groups[-1][-1] - v <= eps:
                groups[-1].append(v)
            else:
                groups.append([v])
        return groups

    def distinct_values(self, tol: ToleranceProfile = DEFAULT_TOL) -> list[float]:
        """One representative (the first, i.e. largest) per equivalence class."""
        return [g[0] for g in self.classes(tol)]

    def distinct_count(self, tol: ToleranceProfile = DEFAULT_TOL) -> int:
        return len(self.classes(tol))

    def multiplicity(self, value: float, tol: ToleranceProfile = DEFAULT_TOL) -> int:
        eps = tol.zero_tol * self.scale()
        for g in self.classes(tol):
            if any(abs(value - v) <= eps for v in g):
                return len(g)
        return 0

    def multiplicities(self, tol: ToleranceProfile = DEFAULT_TOL) -> list[tuple[float, int]]:
        return [(g[0], len(g)) for g in self.classes(tol)]


def spectrum_equal(s1, s2, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """Multiset equality of two spectra up to ``spec_tol * max(1, max|s1|)``."""
    a = s1 if isinstance(s1, Spectrum) else Spectrum(s1)
    b = s2 if isinstance(s2, Spectrum) else Spectrum(s2)
    if len(a) != len(b):
        return False
    diff = np.max(np.abs(np.asarray(a.values) - np.asarray(b.values)))
    return bool(diff <= tol.spec_tol * a.scale())


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


def _mirror_upper(arr: np.ndarray) -> np.ndarray:
    upper = np.triu(arr)
    return upper + np.triu(arr, 1).T


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense real symmetric matrix.

    The constructor copies the upper triangle onto the lower one, so the
    stored entries are symmetric bit-for-bit.  Inputs whose two triangles
    disagree by more than ``1e-9`` (relative) are rejected.
    """

    entries: np.ndarray = field(repr=False)

    def __init__(self, entries, *, check: bool = True):
        arr = np.array(entries, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise StructuralError(f"expected a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise StructuralError("matrix entries must be finite")
        if check:
            skew = np.max(np.abs(arr - arr.T))
            if skew > 1e-9 * scale_of(arr):
                raise StructuralError(f"matrix is not symmetric (max |a_ij - a_ji| = {skew:.3g})")
        sym = _mirror_upper(arr)
        sym.setflags(write=False)
        object.__setattr__(self, "entries", sym)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries.copy()
        return self.entries.astype(dtype)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __repr__(self) -> str:
        return f"SymMatrix(n={self.n})"

    def __eq__(self, other) -> bool:
        if isinstance(other, SymMatrix):
            return self.entries.shape == other.entries.shape and bool(np.array_equal(self.entries, other.entries))
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def scale(self) -> float:
        return scale_of(self.entries)

    def principal_submatrix(self, i: int) -> "SymMatrix":
        """``M(i)``: drop row and column ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise StructuralError(f"index {i} outside 1..{self.n}")
        keep = [t for t in range(self.n) if t != i - 1]
        return SymMatrix(self.entries[np.ix_(keep, keep)])


@dataclass(frozen=True)
class BorderedMatrix:
    """``[[diag(mu), b], [b^T, a]]``: arrowhead with the border in the last row/column."""

    diag: tuple[float, ...]
    border: tuple[float, ...]
    corner: float

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(float(x) for x in self.diag))
        object.__setattr__(self, "border", tuple(float(x) for x in self.border))
        object.__setattr__(self, "corner", float(self.corner))

    @property
    def order(self) -> int:
        return len(self.diag) + 1

    @classmethod
    def from_matrix(cls, m: SymMatrix) -> "BorderedMatrix":
        """Read back the parts of an assembled bordered matrix.

        Nonzero entries off the diagonal and outside the last row/column
        raise :class:`StructuralError`.
        """
        arr = m.entries
        n = m.n
        inner = arr[: n - 1, : n - 1]
        if np.any(inner - np.diag(np.diag(inner))):
            raise StructuralError("matrix is not bordered: leading block is not diagonal")
        return cls(tuple(np.diag(inner)), tuple(arr[: n - 1, n - 1]), arr[n - 1, n - 1])


def assemble_bordered(b: BorderedMatrix) -> SymMatrix:
    if len(b.diag) != len(b.border):
        raise StructuralError(
            f"diag has {len(b.diag)} entries but border has {len(b.border)}"
        )
    n = b.order
    arr = np.zeros((n, n))
    arr[np.arange(n - 1), np.arange(n - 1)] = b.diag
    arr[: n - 1, n - 1] = b.border
    arr[n - 1, : n - 1] = b.border
    arr[n - 1, n - 1] = b.corner
    return SymMatrix(arr)

"""Matrix constructions with a prescribed spectrum and graph.

Building blocks
    * :func:`r_matrix` / :func:`r_inverse` -- the nonsingular similarity ``R``
      whose first column is the all-ones vector, with its closed-form inverse.
    * :func:`complete_realize` -- ``A = R D R^{-1}``: symmetric, every
      off-diagonal entry nonzero, constant row sums ``D_11``, and known
      eigenvectors (the columns of ``R``).
    * :func:`bordered_realize` -- arrowhead matrix with a diagonal leading
      block and a prescribed spectrum (strictly interlacing data gives a
      nonzero border).
    * :func:`smith_glue` -- replace the last diagonal entry ``mu`` of one
      matrix by a whole matrix having the eigenpair ``(mu, u)``.

Composites
    * :func:`clique_cluster_realize` -- clique ``K_k`` plus an independent
      cluster of ``n - k`` vertices attached to ``r`` clique vertices.
    * :func:`cluster_clique_realize` -- same, but the cluster is itself a
      clique.
    * :func:`kn_minus_edge_realize`, :func:`join_realize` -- special cases.

Every composite verifies its output (spectrum via an eigensolver, pattern
via edge-set equality) before returning it.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    BorderedMatrix,
    DuplicateMu,
    EigenpairMismatch,
    FewerThanTwoDistinct,
    HypothesisError,
    Infeasible,
    InterlacingViolated,
    NegativeRadicand,
    NotUnit,
    ParameterError,
    PatternMismatch,
    PinConflict,
    SearchExhausted,
    SeparationFailed,
    Spectrum,
    SpectrumMismatch,
    StructuralError,
    SymMatrix,
    ToleranceProfile,
    TooFewDistinct,
    assemble_bordered,
    scale_of,
    spectrum_equal,
)
from .graphs import build_clique_cluster, build_join_family, build_kn_minus_edge
from .verify import check_interlacing, check_realization, eig_symmetric

log = logging.getLogger(__name__)

MAX_ARRANGEMENTS = 10_000  # cap on diagonal entries placed by the search
MU_GRID = 64
MAX_PARTITIONS = 256


# ---------------------------------------------------------------------------
# R and its inverse
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _r_cached(m: int) -> np.ndarray:
    r = np.zeros((m, m))
    r[0, :] = 1.0
    for i in range(2, m + 1):
        r[i - 1, : m - i + 1] = 1.0
        r[i - 1, m - i + 1] = -(i - 1)
    r.setflags(write=False)
    return r


@lru_cache(maxsize=None)
def _r_inv_cached(m: int) -> np.ndarray:
    h = np.zeros((m, m))
    # head[t] is the common leading entry of every column in row t
    head = [1.0 / m] + [1.0 / ((m - t + 2) * (m - t + 1)) for t in range(2, m + 1)]
    h[:, 0] = head
    for j in range(2, m + 1):
        lead = m - j + 1
        h[:lead, j - 1] = head[:lead]
        h[lead, j - 1] = -1.0 / j
    h.setflags(write=False)
    return h


def r_matrix(m: int) -> np.ndarray:
    """Row 1 all ones; row ``i`` has ``m-i+1`` ones, then ``-(i-1)``, then zeros."""
    if m < 2:
        raise StructuralError(f"R needs order m >= 2, got {m}")
    return _r_cached(m).copy()


def r_inverse(m: int) -> np.ndarray:
    """Closed-form inverse of :func:`r_matrix`; no linear solve involved."""
    if m < 2:
        raise StructuralError(f"R needs order m >= 2, got {m}")
    return _r_inv_cached(m).copy()


def eigvec_for_position(m: int, p: int, normalized: bool = False) -> np.ndarray:
    """Column ``p`` of ``R``: ``m-p+1`` ones, then ``-(m-p+1)``, then ``p-2`` zeros.

    This is the eigenvector of ``R D R^{-1}`` for the eigenvalue ``D_pp``.
    """
    if not 2 <= p <= m:
        raise StructuralError(f"position must satisfy 2 <= p <= {m}, got {p}")
    x = _r_cached(m)[:, p - 1].copy()
    if normalized:
        x /= np.linalg.norm(x)
    return x


# ---------------------------------------------------------------------------
# Complete-graph realization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pin:
    position: int
    value: float

    def __post_init__(self):
        if int(self.position) != self.position or self.position < 2:
            raise PinConflict(f"pin position must be an integer >= 2 (position 1 holds the row sum), got {self.position}")
        object.__setattr__(self, "position", int(self.position))
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class CompleteRealization:
    matrix: SymMatrix
    diag_order: tuple[float, ...]
    eigvecs: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return self.matrix.n


def _similarity(d: Sequence[float]) -> np.ndarray:
    m = len(d)
    a = (_r_cached(m) * np.asarray(d, dtype=float)) @ _r_inv_cached(m)
    return (a + a.T) / 2.0


def _offdiag_nonzero(a: np.ndarray, tol: ToleranceProfile) -> bool:
    m = a.shape[0]
    off = np.abs(a[~np.eye(m, dtype=bool)])
    return bool(np.all(off > tol.zero_tol * max(1.0, float(off.max()))))


def complete_realize(
    values,
    pins: Sequence[Pin] = (),
    tol: ToleranceProfile = DEFAULT_TOL,
    max_attempts: int = MAX_ARRANGEMENTS,
) -> CompleteRealization:
    """Realize ``values`` by a matrix with no zero off-diagonal entry.

    The diagonal of ``D`` is searched over distinct arrangements of the
    unpinned values, in lexicographic order starting from the descending
    one.  Position 1 always holds the largest unpinned value, position 2 a
    different value, and each pin fixes one position.  The first
    arrangement whose ``R D R^{-1}`` has every off-diagonal entry above
    ``zero_tol`` wins.  ``max_attempts`` bounds the number of placements
    the search makes before giving up with :class:`SearchExhausted`.
    """
    spec = values if isinstance(values, Spectrum) else Spectrum(values)
    m = len(spec)
    if spec.distinct_count(tol) < 2:
        raise FewerThanTwoDistinct("a complete-graph realization needs at least 2 distinct eigenvalues")
    eps = tol.zero_tol * spec.scale()

    remaining = list(spec.values)
    fixed: dict[int, float] = {}
    for pin in pins:
        if pin.position > m:
            raise PinConflict(f"pin position {pin.position} exceeds the order {m}")
        if pin.position in fixed:
            raise PinConflict(f"two pins at position {pin.position}")
        idx = next((t for t, v in enumerate(remaining) if abs(v - pin.value) <= eps), None)
        if idx is None:
            raise PinConflict(f"pinned value {pin.value!r} is not (or no longer) in the multiset")
        fixed[pin.position] = remaining.pop(idx)

    # group the free values into tolerance classes, largest first
    classes: list[list[float]] = []
    for v in remaining:
        if not classes or classes[-1][0] - v > eps:
            classes.append([])
        classes[-1].append(v)
    top = classes[0][0]

    if 2 in fixed:
        if abs(fixed[2] - top) <= eps:
            raise PinConflict("pin at position 2 equals the largest unpinned value, forcing D_11 = D_22")
    elif len(classes) < 2:
        raise PinConflict("all unpinned values are equal, so D_11 = D_22 is forced")

    # Entry (i, j), i < j, of R D R^{-1} depends only on j and on the prefix
    # d_1..d_{m-j+2}, so a depth-first search in lexicographic order can drop
    # a prefix as soon as the entry it settles vanishes.  The first leaf is
    # the same arrangement a full lexicographic scan would return.
    rinv = _r_inv_cached(m)
    counts = [len(c) for c in classes]
    used = [0] * len(classes)
    d: list[float] = [0.0] * m
    attempts = 0

    def settled_entry(length: int) -> float:
        col = m - length + 1  # 0-based column fixed by a prefix of this length
        return float(np.dot(d[:length], rinv[:length, col]))

    def extend(pos: int, peak: float) -> Optional[CompleteRealization]:
        nonlocal attempts
        if pos > m:
            a = _similarity(d)
            if _offdiag_nonzero(a, tol):
                vecs = tuple(_r_cached(m)[:, p].copy() for p in range(m))
                return CompleteRealization(SymMatrix(a), tuple(d), vecs)
            return None
        if pos in fixed:
            choices = [None]
        elif pos == 1:
            choices = [0]
        else:
            choices = [c for c in range(len(classes)) if used[c] < counts[c] and not (pos == 2 and c == 0)]
        for c in choices:
            if attempts >= max_attempts:
                return None
            attempts += 1
            if c is None:
                d[pos - 1] = fixed[pos]
            else:
                d[pos - 1] = classes[c][used[c]]
                used[c] += 1
            new_peak = peak
            ok = True
            if pos >= 2:
                entry = abs(settled_entry(pos))
                new_peak = max(peak, entry)
                # the final threshold can only be larger, so this never drops a valid leaf
                ok = entry > tol.zero_tol * max(1.0, new_peak)
            found = extend(pos + 1, new_peak) if ok else None
            if c is not None:
                used[c] -= 1
            if found is not None:
                return found
        return None

    found = extend(1, 0.0)
    if found is not None:
        return found
    raise SearchExhausted(
        f"no arrangement of the diagonal gave a matrix without zero off-diagonal entries "
        f"({attempts} tried, cap {max_attempts})"
    )


# ---------------------------------------------------------------------------
# Bordered matrices
# ---------------------------------------------------------------------------


def border_squares(targets: Sequence[float], mus: Sequence[float]) -> list[float]:
    """``b_i^2 = -prod_j (mu_i - lambda_j) / prod_{j != i} (mu_i - mu_j)``."""
    out = []
    for i, mu in enumerate(mus):
        num = math.prod(mu - lam for lam in targets)
        den = math.prod(mu - other for j, other in enumerate(mus) if j != i)
        out.append(-num / den)
    return out


def bordered_realize(
    targets,
    mus: Sequence[float],
    signs: Optional[Sequence[int]] = None,
    tol: ToleranceProfile = DEFAULT_TOL,
    require_star: bool = True,
) -> BorderedMatrix:
    """Arrowhead matrix ``[[diag(mus), b], [b^T, a]]`` with spectrum ``targets``.

    ``signs`` picks the sign of each border entry (default all positive);
    the spectrum only fixes ``b_i^2``.  With ``require_star`` the
    interlacing must be strict so that no border entry vanishes.
    """
    spec = targets if isinstance(targets, Spectrum) else Spectrum(targets)
    mus = [float(x) for x in mus]
    m = len(spec)
    if len(mus) != m - 1:
        raise StructuralError(f"need {m - 1} interior values for {m} targets, got {len(mus)}")
    if signs is None:
        signs = [1] * len(mus)
    signs = list(signs)
    if len(signs) != len(mus) or any(s not in (1, -1) for s in signs):
        raise StructuralError("signs must be a list of +1/-1, one per interior value")

    scale = scale_of(list(spec.values) + mus)
    eps = tol.zero_tol * scale
    ordered = sorted(mus, reverse=True)
    if any(x - y <= eps for x, y in zip(ordered, ordered[1:])):
        raise DuplicateMu("interior values must be pairwise distinct")
    if not check_interlacing(spec.values, ordered, strict=require_star, eps=eps if require_star else 0.0):
        kind = "strictly " if require_star else ""
        raise InterlacingViolated(f"targets and interior values do not {kind}interlace")

    squares = border_squares(spec.values, mus)
    for i, sq in enumerate(squares):
        if sq < -tol.spec_tol * scale**2:
            raise NegativeRadicand(f"b_{i + 1}^2 = {sq:.6g} < 0")
    border = tuple(s * math.sqrt(max(sq, 0.0)) for s, sq in zip(signs, squares))
    corner = math.fsum(spec.values) - math.fsum(mus)
    result = BorderedMatrix(tuple(mus), border, corner)

    got = eig_symmetric(assemble_bordered(result))
    if not spectrum_equal(got, spec, tol):
        raise SpectrumMismatch("bordered matrix does not reproduce the target spectrum")
    return result


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


def smith_glue(a: SymMatrix, b: SymMatrix, u, tol: ToleranceProfile = DEFAULT_TOL) -> SymMatrix:
    """``[[A1, c u^T], [u c^T, B]]`` where ``A = [[A1, c], [c^T, mu]]`` and ``B u = mu u``.

    The spectrum of the result is that of ``A`` together with that of ``B``
    minus one copy of ``mu``; this is checked before returning.
    """
    u = np.asarray(u, dtype=float).ravel()
    if u.shape[0] != b.n:
        raise StructuralError(f"u has length {u.shape[0]} but B has order {b.n}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-12:
        raise NotUnit(f"u must have unit norm, got {np.linalg.norm(u):.17g}")
    na = a.n
    mu = float(a.entries[na - 1, na - 1])
    bu = b.entries @ u
    resid = float(np.linalg.norm(bu - mu * u))
    if resid > tol.spec_tol * max(scale_of(b.entries), abs(mu)):
        raise EigenpairMismatch(f"|Bu - mu u| = {resid:.3e} for mu = {mu!r}")
    if na == 1:
        return b

    border = a.entries[: na - 1, na - 1]
    size = na - 1 + b.n
    c = np.zeros((size, size))
    c[: na - 1, : na - 1] = a.entries[: na - 1, : na - 1]
    c[: na - 1, na - 1 :] = np.outer(border, u)
    c[na - 1 :, : na - 1] = np.outer(u, border)
    c[na - 1 :, na - 1 :] = b.entries
    glued = SymMatrix(c)

    eig_a = list(eig_symmetric(a).values)
    eig_b = list(eig_symmetric(b).values)
    eig_b.pop(int(np.argmin([abs(x - mu) for x in eig_b])))
    if not spectrum_equal(eig_symmetric(glued), eig_a + eig_b, tol):
        raise SpectrumMismatch("glued matrix does not carry the combined spectrum")
    return glued


# ---------------------------------------------------------------------------
# Splitting the target spectrum
# ---------------------------------------------------------------------------


class Variant(str, enum.Enum):
    INTERLACE = "interlace"  # independent cluster: outer matrix is bordered
    COMPLETE = "complete"    # cluster is a clique: outer matrix is R D R^{-1}


class HypothesisVerdict(str, enum.Enum):
    SATISFIES_THEOREM = "SatisfiesTheorem"
    SATISFIES_RELAXED = "SatisfiesRelaxed"
    FAILS = "Fails"


@dataclass(frozen=True)
class PartitionChoice:
    """How the target spectrum is split between the two glued factors.

    ``lambda1`` is realized by the outer (cluster side) matrix, ``lambda2``
    together with ``a`` by the inner clique matrix.  ``a`` is the outer
    matrix's last diagonal entry and the shared eigenvalue.
    """

    variant: Variant
    lambda1: Spectrum
    lambda2: Spectrum
    a: float
    mus: tuple[float, ...] = ()
    leading: tuple[float, float] = (math.nan, math.nan)

    @property
    def gamma(self) -> Spectrum:
        return Spectrum(list(self.lambda2.values) + [self.a])


def _check_sizes(lam: Spectrum, n: int, k: int) -> None:
    if len(lam) != n:
        raise StructuralError(f"spectrum has {len(lam)} values but n = {n}")
    if n - k < 2:
        raise ParameterError(f"the cluster needs at least 2 vertices (n - k = {n - k})")
    if k < 2:
        raise ParameterError(f"the clique needs at least 2 vertices (k = {k})")


def _check_r(k: int, r: int) -> None:
    if r == 1:
        raise ParameterError(
            "r = 1 is not supported: the shared eigenvector would need k - 1 zero entries, "
            "which no column of R provides"
        )
    if not 2 <= r <= k:
        raise ParameterError(f"need 2 <= r <= k, got r = {r}, k = {k}")


def _remove_one(values: list[float], target: float, eps: float) -> bool:
    for t, v in enumerate(values):
        if abs(v - target) <= eps:
            del values[t]
            return True
    return False


def _split(lam: Spectrum, chosen: Sequence[float], eps: float) -> Optional[list[float]]:
    rest = list(lam.values)
    for v in chosen:
        if not _remove_one(rest, v, eps):
            return None
    return rest


def _separation(a: float, others: Sequence[float]) -> float:
    return min((abs(a - v) for v in others), default=math.inf)


def _lambda2_usable(rest: list[float], r: Optional[int], k: int, eps: float) -> bool:
    # with r < k position 2 of the inner diagonal is free and must differ from position 1
    if len(rest) <= 1 or r is None or r == k:
        return True
    return max(rest) - min(rest) > eps


def _interlace_mus(l1: Sequence[float], l2: Sequence[float], sep: float):
    """Yield interior values for ``l1`` giving a corner away from ``l2``.

    Midpoints first.  If that corner collides, the last interior value is
    moved across a fixed grid of its interval and the grid points are
    yielded best first: best means the corner keeps the largest distance
    from ``l2`` while the interior value stays away from the interval ends.
    """
    mids = [(x + y) / 2.0 for x, y in zip(l1, l1[1:])]
    total = math.fsum(l1)
    a_mid = total - math.fsum(mids)
    if _separation(a_mid, l2) > sep:
        yield tuple(mids), a_mid
    hi, lo = l1[-2], l1[-1]
    width = hi - lo
    scored = []
    for g in range(1, MU_GRID):
        last = lo + width * g / MU_GRID
        trial = mids[:-1] + [last]
        a = total - math.fsum(trial)
        gap = _separation(a, l2)
        if gap > sep:
            scored.append((-min(gap, last - lo, hi - last), g, tuple(trial), a))
    scored.sort(key=lambda t: (t[0], t[1]))
    for _, _, trial, a in scored[:4]:
        yield trial, a


def partition_candidates(
    lam,
    n: int,
    k: int,
    variant: Variant | str,
    tol: ToleranceProfile = DEFAULT_TOL,
    *,
    r: Optional[int] = None,
    mus: Optional[Sequence[float]] = None,
    lambda1: Optional[Sequence[float]] = None,
) -> Iterator[PartitionChoice]:
    """All usable splits of ``lam`` in a fixed, deterministic order.

    The first candidate takes the largest values for ``lambda1`` (largest
    distinct values for the interlace variant).  ``mus`` and ``lambda1``
    pin the choice down instead of searching.
    """
    variant = Variant(variant)
    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    _check_sizes(lam, n, k)
    size1 = n - k + 1
    eps = tol.zero_tol * lam.scale()
    sep = tol.spec_tol * lam.scale()
    distinct = lam.distinct_values(tol)

    if variant is Variant.INTERLACE:
        if lambda1 is None and len(distinct) < size1:
            raise Infeasible(
                f"the clique-cluster construction requires at least n-k+1 = {size1} distinct elements, "
                f"got {len(distinct)}"
            )
        if lambda1 is not None:
            groups = [sorted((float(x) for x in lambda1), reverse=True)]
            if len(groups[0]) != size1 or any(x - y <= eps for x, y in zip(groups[0], groups[0][1:])):
                raise Infeasible(f"lambda1 must hold {size1} strictly decreasing values")
        else:
            groups = ([distinct[t] for t in idx] for idx in combinations(range(len(distinct)), size1))
        for l1 in groups:
            rest = _split(lam, l1, eps)
            if rest is None:
                raise Infeasible("lambda1 is not a sub-multiset of the spectrum")
            if not _lambda2_usable(rest, r, k, eps):
                continue
            if mus is not None:
                chosen = tuple(float(x) for x in mus)
                if len(chosen) != size1 - 1:
                    raise StructuralError(f"need {size1 - 1} interior values, got {len(chosen)}")
                a = math.fsum(l1) - math.fsum(chosen)
                if _separation(a, rest) <= sep:
                    raise Infeasible(f"the chosen interior values give a = {a!r}, which lies in lambda2")
                options = [(chosen, a)]
            else:
                options = _interlace_mus(l1, rest, sep)
            for chosen, a in options:
                yield PartitionChoice(variant, Spectrum(l1), Spectrum(rest), a, chosen)
        return

    if len(distinct) < 2:
        raise Infeasible("the cluster-clique construction requires at least 2 distinct elements")
    if lambda1 is not None:
        groups = [sorted((float(x) for x in lambda1), reverse=True)]
        if len(groups[0]) != size1:
            raise Infeasible(f"lambda1 must hold n-k+1 = {size1} values")
    else:
        seen = set()
        groups = []
        for idx in combinations(range(n), size1):
            key = tuple(lam.values[t] for t in idx)
            if key not in seen:
                seen.add(key)
                groups.append(list(key))
    for l1 in groups:
        rest = _split(lam, l1, eps)
        if rest is None:
            raise Infeasible("lambda1 is not a sub-multiset of the spectrum")
        d1 = l1[0]
        below = [v for v in l1 if d1 - v > eps]
        if not below:
            if lambda1 is not None:
                raise Infeasible("lambda1 needs at least 2 distinct values")
            continue
        d2 = below[0]
        # corner of the order-(n-k+1) complete realization: (1/m)(d1 - d2) + d2
        a = (d1 - d2) / size1 + d2
        if _separation(a, rest) <= sep:
            if lambda1 is not None:
                raise Infeasible(f"(1/{size1})(d1 - d2) + d2 = {a!r} lies in lambda2")
            continue
        if not _lambda2_usable(rest, r, k, eps):
            continue
        yield PartitionChoice(variant, Spectrum(l1), Spectrum(rest), a, (), (d1, d2))


def choose_partition(
    lam,
    n: int,
    k: int,
    variant: Variant | str,
    tol: ToleranceProfile = DEFAULT_TOL,
    **overrides,
) -> PartitionChoice:
    """The first candidate of :func:`partition_candidates`."""
    it = partition_candidates(lam, n, k, variant, tol, **overrides)
    try:
        return next(it)
    except StopIteration:
        variant = Variant(variant)
        if variant is Variant.INTERLACE and overrides.get("mus") is None:
            raise SeparationFailed(
                "no choice of interior values keeps the corner a out of lambda2"
            ) from None
        raise Infeasible("no split of the spectrum satisfies the construction's requirements") from None


def check_hypotheses(
    lam,
    n: int,
    k: int,
    variant: Variant | str,
    tol: ToleranceProfile = DEFAULT_TOL,
    r: Optional[int] = None,
) -> HypothesisVerdict:
    """Classify ``lam`` against the construction's sufficient condition.

    ``SATISFIES_THEOREM``: the hypothesis holds verbatim (enough distinct
    values and at least two of multiplicity >= 2).  ``SATISFIES_RELAXED``:
    it does not, but a usable split of the spectrum still exists.
    """
    variant = Variant(variant)
    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    _check_sizes(lam, n, k)
    mults = [c for _, c in lam.multiplicities(tol)]
    distinct = len(mults)
    repeated = sum(1 for c in mults if c >= 2)
    needed = n - k + 1 if variant is Variant.INTERLACE else 3
    if distinct >= needed and repeated >= 2:
        return HypothesisVerdict.SATISFIES_THEOREM
    try:
        next(partition_candidates(lam, n, k, variant, tol, r=r))
    except (StopIteration, HypothesisError):
        return HypothesisVerdict.FAILS
    return HypothesisVerdict.SATISFIES_RELAXED


# ---------------------------------------------------------------------------
# Composite realizations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Realization:
    """A glued matrix together with the pieces it was built from."""

    matrix: SymMatrix
    outer: SymMatrix
    inner: CompleteRealization
    u: np.ndarray = field(repr=False)
    partition: PartitionChoice
    pin_position: int


def _glue_and_check(part, outer, k, r, u_sign, lam, graph, tol) -> Realization:
    p = k - r + 2
    inner = complete_realize(part.gamma, [Pin(p, part.a)], tol)
    u = u_sign * eigvec_for_position(k, p, normalized=True)
    m = smith_glue(outer, inner.matrix, u, tol)
    report = check_realization(m, graph, lam, tol)
    if not report.spectrum_ok:
        raise SpectrumMismatch(f"glued matrix misses the target spectrum ({report.notes})")
    if not report.pattern_ok:
        raise PatternMismatch(f"glued matrix has the wrong pattern ({report.notes})")
    return Realization(m, outer, inner, u, part, p)


def _run_candidates(candidates, build) -> Realization:
    last: Optional[Exception] = None
    tried = 0
    for part in candidates:
        tried += 1
        try:
            return build(part)
        except (SearchExhausted, PinConflict, SpectrumMismatch, PatternMismatch) as exc:
            log.debug("partition %s rejected: %s", part, exc)
            last = exc
        if tried >= MAX_PARTITIONS:
            break
    if last is not None:
        raise last
    raise Infeasible("no split of the spectrum satisfies the construction's requirements")


def _check_sign(u_sign: int) -> int:
    if u_sign not in (1, -1):
        raise StructuralError(f"u_sign must be +1 or -1, got {u_sign!r}")
    return u_sign


def clique_cluster_construct(
    lam,
    n: int,
    k: int,
    r: int,
    tol: ToleranceProfile = DEFAULT_TOL,
    *,
    mus: Optional[Sequence[float]] = None,
    lambda1: Optional[Sequence[float]] = None,
    signs: Optional[Sequence[int]] = None,
    u_sign: int = 1,
) -> Realization:
    """Clique ``K_k`` plus an independent cluster of ``n - k`` vertices with ``|S| = r``."""
    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    _check_sizes(lam, n, k)
    _check_r(k, r)
    _check_sign(u_sign)
    graph = build_clique_cluster(n, k, r, False)

    def build(part: PartitionChoice) -> Realization:
        bordered = bordered_realize(part.lambda1, part.mus, signs, tol)
        return _glue_and_check(part, assemble_bordered(bordered), k, r, u_sign, lam, graph, tol)

    candidates = partition_candidates(lam, n, k, Variant.INTERLACE, tol, r=r, mus=mus, lambda1=lambda1)
    return _run_candidates(candidates, build)


def clique_cluster_realize(lam, n: int, k: int, r: int, tol: ToleranceProfile = DEFAULT_TOL, **overrides) -> SymMatrix:
    return clique_cluster_construct(lam, n, k, r, tol, **overrides).matrix


def cluster_clique_construct(
    lam,
    n: int,
    k: int,
    r: int,
    tol: ToleranceProfile = DEFAULT_TOL,
    *,
    lambda1: Optional[Sequence[float]] = None,
    u_sign: int = 1,
) -> Realization:
    """Like :func:`clique_cluster_construct` but the cluster is itself a clique."""
    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    _check_sizes(lam, n, k)
    _check_r(k, r)
    _check_sign(u_sign)
    graph = build_clique_cluster(n, k, r, True)

    def build(part: PartitionChoice) -> Realization:
        d1, d2 = part.leading
        outer = complete_realize(part.lambda1, [Pin(2, d2)], tol)
        if outer.diag_order[0] != d1:
            raise PinConflict("outer realization did not place the largest value first")
        return _glue_and_check(part, outer.matrix, k, r, u_sign, lam, graph, tol)

    candidates = partition_candidates(lam, n, k, Variant.COMPLETE, tol, r=r, lambda1=lambda1)
    return _run_candidates(candidates, build)


def cluster_clique_realize(lam, n: int, k: int, r: int, tol: ToleranceProfile = DEFAULT_TOL, **overrides) -> SymMatrix:
    return cluster_clique_construct(lam, n, k, r, tol, **overrides).matrix


def kn_minus_edge_realize(lam, n: int, tol: ToleranceProfile = DEFAULT_TOL) -> SymMatrix:
    """Matrix with spectrum ``lam`` whose graph is ``K_n`` minus the edge ``{1,2}``."""
    lam = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    if n < 3:
        raise ParameterError(f"K_n - e realization needs n >= 3, got {n}")
    if len(lam) != n:
        raise StructuralError(f"spectrum has {len(lam)} values but n = {n}")
    distinct = lam.distinct_count(tol)
    if n == 3 and distinct != 3:
        raise TooFewDistinct("for n = 3, S(K_3 - e) admits exactly the spectra with three distinct elements")
    if distinct < 3:
        raise TooFewDistinct(f"K_n - e construction requires at least three distinct elements, got {distinct}")
    if n == 3:
        # K_3 - e is the star 1-3-2: a bordered matrix with a nonzero border
        vals = lam.values
        mids = [(vals[0] + vals[1]) / 2.0, (vals[1] + vals[2]) / 2.0]
        m = assemble_bordered(bordered_realize(lam, mids, None, tol))
        report = check_realization(m, build_kn_minus_edge(3), lam, tol)
        if not report.ok:
            raise PatternMismatch(report.notes)
        return m
    return clique_cluster_realize(lam, n, n - 2, n - 2, tol)


def join_realize(
    lam,
    n: int,
    i: int,
    j: int,
    tol: ToleranceProfile = DEFAULT_TOL,
    **overrides,
) -> SymMatrix:
    return join_construct(lam, n, i, j, tol, **overrides).matrix


def join_construct(lam, n: int, i: int, j: int, tol: ToleranceProfile = DEFAULT_TOL, **overrides) -> Realization:
    """``K_i v (K_j u K_{n-i-j})`` viewed as cluster ``K_j`` on clique ``K_{n-j}`` with ``|S| = i``."""
    build_join_family(n, i, j)  # parameter validation
    if j < 2:
        raise ParameterError(f"the K_j block is the cluster and needs j >= 2, got j = {j}")
    return cluster_clique_construct(lam, n, n - j, i, tol, **overrides)

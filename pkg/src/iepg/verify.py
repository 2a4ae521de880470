"""Independent checks for constructed matrices.

Nothing here imports the construction code: the eigensolver, pattern
comparison, interlacing test, SSP nullity and the exact characteristic
polynomial only look at the finished matrix.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from .core import DEFAULT_TOL, StructuralError, Spectrum, SymMatrix, ToleranceProfile, scale_of, spectrum_equal
from .graphs import Edge, GraphSpec, pattern_of

CHARPOLY_MAX_ORDER = 8


def eig_symmetric(m: SymMatrix, vectors: bool = False):
    """Eigenvalues of ``m``, sorted descending, as a :class:`Spectrum`.

    With ``vectors=True`` also returns the matching orthonormal
    eigenvectors as the columns of an array.
    """
    arr = np.asarray(m.entries if isinstance(m, SymMatrix) else m, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise StructuralError("matrix entries must be finite")
    w, v = np.linalg.eigh(arr)
    order = np.argsort(-w, kind="stable")
    spec = Spectrum(w[order])
    if vectors:
        return spec, v[:, order]
    return spec


@dataclass(frozen=True)
class RealizationReport:
    spectrum_ok: bool
    max_eig_residual: float
    pattern_ok: bool
    missing_edges: tuple[Edge, ...] = ()
    spurious_edges: tuple[Edge, ...] = ()
    row_sum_constant: Optional[float] = None
    notes: str = ""

    @property
    def ok(self) -> bool:
        return self.spectrum_ok and self.pattern_ok

    def to_dict(self) -> dict:
        d = asdict(self)
        d["missing_edges"] = [list(e) for e in self.missing_edges]
        d["spurious_edges"] = [list(e) for e in self.spurious_edges]
        return d


def check_realization(m: SymMatrix, g: GraphSpec, lam, tol: ToleranceProfile = DEFAULT_TOL) -> RealizationReport:
    """Compare ``m`` against a target graph and a target spectrum."""
    target = lam if isinstance(lam, Spectrum) else Spectrum(lam)
    if m.n != g.n or m.n != len(target):
        raise StructuralError(
            f"order mismatch: matrix {m.n}, graph {g.n}, spectrum {len(target)}"
        )
    computed = eig_symmetric(m)
    residual = float(np.max(np.abs(np.asarray(computed.values) - np.asarray(target.values))))
    spectrum_ok = spectrum_equal(computed, target, tol)

    got = pattern_of(m, tol)
    missing = tuple(sorted(g.edges - got.edges))
    spurious = tuple(sorted(got.edges - g.edges))

    sums = m.entries.sum(axis=1)
    row_sum = None
    if float(np.max(sums) - np.min(sums)) <= tol.spec_tol * scale_of(sums):
        row_sum = float(np.mean(sums))

    notes = []
    if not spectrum_ok:
        notes.append(f"spectrum off by {residual:.3e}")
    if missing:
        notes.append(f"{len(missing)} missing edge(s)")
    if spurious:
        notes.append(f"{len(spurious)} spurious edge(s)")
    return RealizationReport(
        spectrum_ok=spectrum_ok,
        max_eig_residual=residual,
        pattern_ok=not missing and not spurious,
        missing_edges=missing,
        spurious_edges=spurious,
        row_sum_constant=row_sum,
        notes="; ".join(notes),
    )


def check_interlacing(lam: Sequence[float], mu: Sequence[float], strict: bool = False, eps: float = 0.0) -> bool:
    """``lam[0] >= mu[0] >= lam[1] >= ... >= mu[-1] >= lam[-1]``.

    Both inputs are expected sorted descending.  ``eps`` is an absolute
    slack (non-strict) or margin (strict).
    """
    lam = list(lam)
    mu = list(mu)
    if len(mu) != len(lam) - 1:
        raise StructuralError(f"need len(mu) == len(lam) - 1, got {len(mu)} and {len(lam)}")
    chain = [lam[0]]
    for a, b in zip(mu, lam[1:]):
        chain += [a, b]
    if strict:
        return all(x - y > eps for x, y in zip(chain, chain[1:]))
    return all(x - y >= -eps for x, y in zip(chain, chain[1:]))


# ---------------------------------------------------------------------------
# Strong spectral property
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SspVerdict:
    has_ssp: bool
    nullity: int
    smallest_retained_singular_value: Optional[float]
    free_unknowns: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def ssp_unknowns(a: SymMatrix, tol: ToleranceProfile = DEFAULT_TOL) -> list[Edge]:
    """Off-diagonal positions (1-based, ``i < j``) where ``a`` vanishes."""
    g = pattern_of(a, tol)
    return [(i, j) for i in range(1, a.n + 1) for j in range(i + 1, a.n + 1) if (i, j) not in g.edges]


def commutator_system(a: SymMatrix, tol: ToleranceProfile = DEFAULT_TOL) -> np.ndarray:
    """Matrix of ``X -> AX - XA`` restricted to the admissible symmetric ``X``.

    One column per free unknown; rows are the ``n*n`` entries of the
    commutator in row-major order.
    """
    arr = np.asarray(a.entries)
    n = a.n
    free = ssp_unknowns(a, tol)
    cols = np.zeros((n * n, len(free)))
    for c, (i, j) in enumerate(free):
        x = np.zeros((n, n))
        x[i - 1, j - 1] = x[j - 1, i - 1] = 1.0
        cols[:, c] = (arr @ x - x @ arr).ravel()
    return cols


def check_ssp(a: SymMatrix, tol: ToleranceProfile = DEFAULT_TOL) -> SspVerdict:
    system = commutator_system(a, tol)
    nfree = system.shape[1]
    if nfree == 0:
        return SspVerdict(True, 0, None, 0)
    sv = np.linalg.svd(system, compute_uv=False)
    cut = tol.rank_tol * max(1.0, float(sv[0]))
    retained = sv[sv > cut]
    nullity = nfree - retained.size
    smallest = float(retained[-1]) if retained.size else None
    return SspVerdict(nullity == 0, int(nullity), smallest, nfree)


# ---------------------------------------------------------------------------
# q(K_n - e) and the characteristic polynomial oracle
# ---------------------------------------------------------------------------


def q_kn_minus_edge(n: int) -> int:
    """Minimum number of distinct eigenvalues over S(K_n - e)."""
    if n < 2:
        raise StructuralError(f"K_n - e needs n >= 2, got {n}")
    if n == 2:
        return 1
    if n == 3:
        return 3
    return 2


def charpoly_oracle(m) -> list[Fraction]:
    """Exact coefficients of ``det(tI - M)``, highest degree first.

    Faddeev-LeVerrier run in rational arithmetic on the exact binary values
    of the float entries, so the only rounding is in the input itself.
    """
    arr = np.asarray(m.entries if isinstance(m, SymMatrix) else m, dtype=float)
    n = arr.shape[0]
    if n > CHARPOLY_MAX_ORDER:
        raise StructuralError(f"charpoly oracle is limited to order {CHARPOLY_MAX_ORDER}, got {n}")
    a = [[Fraction(float(x)) for x in row] for row in arr]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum((a[i][t] * mk[t][j] for t in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[-1]
        mk = prod
        trace = sum((sum((a[i][t] * mk[t][i] for t in range(n)), Fraction(0)) for i in range(n)), Fraction(0))
        coeffs.append(-trace / k)
    return coeffs


def charpoly_roots(coeffs: Sequence[Fraction], dps: int = 60) -> list[float]:
    """Real parts of the polynomial's roots, sorted descending.

    Roots are found at ``dps`` digits so that clustered or repeated
    eigenvalues still come out accurate in double precision.
    """
    if len(coeffs) == 1:
        return []
    with mpmath.workdps(dps):
        mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        roots = mpmath.polyroots(mp_coeffs, maxsteps=2000, extraprec=4 * dps)
        out = [float(mpmath.re(z)) for z in roots]
    return sorted(out, reverse=True)

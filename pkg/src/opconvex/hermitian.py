"""Dense Hermitian linear algebra.

Eigendecomposition and functional calculus, tolerance-aware semidefinite
ordering, seeded random ensembles with prescribed spectral interval, and
completion of isometries to unitaries.

Matrices are plain complex ndarrays; every constructor in this module
symmetrizes its output, so downstream code may assume exact Hermiticity up
to 1e-14 * (1 + maxabs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConfigError, InputError, SingularityError, SpectrumDomainError

#: Scale-invariant acceptance threshold: a >= b holds when
#: lambda_min(a - b) >= -DEFAULT_TOL * (1 + max(||a||, ||b||)).
DEFAULT_TOL = 1e-8


def hermitian(entries) -> np.ndarray:
    """Build a Hermitian matrix from array-like entries, symmetrizing (a + a*)/2."""
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix has non-finite entries")
    return (a + a.conj().T) / 2.0


def opnorm(a) -> float:
    """Operator norm (largest singular value)."""
    return float(np.linalg.norm(np.asarray(a, dtype=complex), 2))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and an orthonormal eigenvector basis."""

    eigenvalues: np.ndarray
    basis: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        return hermitian(self.basis @ np.diag(self.eigenvalues) @ self.basis.conj().T)


def eigh(m) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix, eigenvalues ascending."""
    m = hermitian(m)
    w, v = np.linalg.eigh(m)
    return SpectralDecomposition(eigenvalues=w, basis=v)


@dataclass(frozen=True)
class Interval:
    """Real interval with optionally open endpoints; lo/hi may be -+inf."""

    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ConfigError("interval endpoints must not be NaN")
        degenerate = lo == hi and self.lo_closed and self.hi_closed and math.isfinite(lo)
        if not (lo < hi or degenerate):
            raise ConfigError(f"empty interval [{lo}, {hi}]")
        if math.isinf(lo) and self.lo_closed:
            object.__setattr__(self, "lo_closed", False)
        if math.isinf(hi) and self.hi_closed:
            object.__setattr__(self, "hi_closed", False)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def strictly_inside(self, x: float) -> bool:
        return self.lo < x < self.hi

    def contains_interval(self, other: "Interval") -> bool:
        lo_ok = self.lo < other.lo or (
            self.lo == other.lo and (self.lo_closed or not other.lo_closed)
        )
        hi_ok = self.hi > other.hi or (
            self.hi == other.hi and (self.hi_closed or not other.hi_closed)
        )
        return lo_ok and hi_ok

    def shrink(self, margin: float) -> "Interval":
        if not self.bounded:
            raise ConfigError("cannot shrink an unbounded interval")
        if not 0 < margin < self.length / 2:
            raise ConfigError(f"margin {margin} incompatible with length {self.length}")
        return Interval(self.lo + margin, self.hi - margin, True, True)

    def grid(self, k: int) -> np.ndarray:
        """k points spanning the interval, nudged inside open endpoints."""
        if not self.bounded:
            raise ConfigError("grid requires a bounded interval")
        pts = np.linspace(self.lo, self.hi, k)
        eps = 1e-9 * max(1.0, self.length)
        if not self.lo_closed:
            pts[0] += eps
        if not self.hi_closed:
            pts[-1] -= eps
        return pts

    def as_dict(self) -> dict:
        enc = lambda v: v if math.isfinite(v) else ("-inf" if v < 0 else "inf")
        return {
            "lo": enc(self.lo),
            "hi": enc(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }

    def __str__(self):
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{self.lo}, {self.hi}{rb}"


REAL_LINE = Interval(-math.inf, math.inf, False, False)


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of one tolerance-aware a >= b comparison."""

    min_eigenvalue: float
    scale: float
    tolerance: float
    passed: bool


def psd_verdict(slack, scale: float, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """Verdict on slack >= 0 with margin lambda_min(slack)."""
    margin = float(np.linalg.eigvalsh(hermitian(slack))[0])
    return PsdVerdict(
        min_eigenvalue=margin,
        scale=float(scale),
        tolerance=float(tol),
        passed=margin >= -tol * scale,
    )


def is_psd_geq(a, b, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """Tolerance-aware test of a >= b in the semidefinite order."""
    a = hermitian(a)
    b = hermitian(b)
    if a.shape != b.shape:
        raise InputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if tol <= 0:
        raise InputError("tol must be positive")
    scale = 1.0 + max(opnorm(a), opnorm(b))
    return psd_verdict(a - b, scale, tol)


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def ginibre(n: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """n x m matrix of iid standard complex Gaussians."""
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def gue(n: int, rng: np.random.Generator) -> np.ndarray:
    a = ginibre(n, n, rng)
    return (a + a.conj().T) / 2.0


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR of a complex Gaussian."""
    q, r = np.linalg.qr(ginibre(n, n, rng))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def hermitian_with_spectrum(eigenvalues, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with the prescribed eigenvalues (Haar basis)."""
    lam = np.asarray(eigenvalues, dtype=float)
    u = haar_unitary(len(lam), rng)
    return hermitian(u @ np.diag(lam) @ u.conj().T)


def random_hermitian_in(
    interval: Interval,
    n: int,
    seed,
    margin: float | None = None,
    box: tuple[float, float] | None = None,
) -> np.ndarray:
    """Random Hermitian matrix whose spectrum lies in the margin-shrunk interval.

    A GUE draw is rescaled affinely so its extreme eigenvalues land exactly on
    [lo + margin, hi - margin]; for unbounded intervals an explicit sampling
    `box` must be supplied. Deterministic given (seed, n, interval, margin).
    """
    if n < 1:
        raise InputError("dimension must be >= 1")
    target = interval
    if not target.bounded:
        if box is None:
            raise ConfigError(f"interval {interval} is unbounded; pass an explicit sampling box")
        lo = max(target.lo, float(box[0]))
        hi = min(target.hi, float(box[1]))
        target = Interval(lo, hi, True, True)
    if margin is None:
        margin = 1e-2 * target.length
    shrunk = target.shrink(margin)
    rng = _rng(seed)
    decomp = eigh(gue(n, rng))
    lam = decomp.eigenvalues
    span = lam[-1] - lam[0]
    if span < 1e-12:
        new_lam = np.full(n, shrunk.midpoint)
    else:
        new_lam = shrunk.lo + (lam - lam[0]) * (shrunk.length / span)
    return hermitian(decomp.basis @ np.diag(new_lam) @ decomp.basis.conj().T)


def random_operator(kind: str, n: int, seed, rank: int | None = None) -> np.ndarray:
    """Random structured operand: exact projection, soft 0<=p<=1, or contraction.

    Projections come from orthonormalized Gaussian columns so p*p = p holds to
    machine precision; contractions are general (non-Hermitian) matrices with
    singular values clipped to 1.
    """
    if n < 1:
        raise InputError("dimension must be >= 1")
    rng = _rng(seed)
    if kind == "projection":
        if rank is None or not 0 <= rank <= n:
            raise InputError(f"projection rank must be in 0..{n}, got {rank}")
        if rank == 0:
            return np.zeros((n, n), dtype=complex)
        q, _ = np.linalg.qr(ginibre(n, rank, rng))
        return hermitian(q @ q.conj().T)
    if kind == "soft":
        return hermitian_with_spectrum(rng.uniform(0.0, 1.0, n), rng)
    if kind == "contraction":
        u, s, vh = np.linalg.svd(ginibre(n, n, rng))
        return u @ np.diag(np.minimum(s, 1.0)) @ vh
    raise InputError(f"unknown operator kind {kind!r}")


def sqrtm_psd(a, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian square root of a PSD matrix; tiny negative eigenvalues are clipped."""
    d = eigh(a)
    scale = 1.0 + float(np.max(np.abs(d.eigenvalues), initial=0.0))
    if d.eigenvalues[0] < -tol * scale:
        raise InputError(f"matrix is not PSD (lambda_min = {d.eigenvalues[0]:.3e})")
    lam = np.clip(d.eigenvalues, 0.0, None)
    return hermitian(d.basis @ np.diag(np.sqrt(lam)) @ d.basis.conj().T)


def spd_inverse(c, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a strictly positive definite Hermitian matrix via Cholesky."""
    c = hermitian(c)
    scale = 1.0 + opnorm(c)
    lam_min = float(np.linalg.eigvalsh(c)[0])
    if lam_min <= tol * scale:
        raise SingularityError(
            f"block is not strictly positive definite (lambda_min = {lam_min:.3e})"
        )
    try:
        cf = scipy.linalg.cho_factor(c)
        inv = scipy.linalg.cho_solve(cf, np.eye(c.shape[0], dtype=complex))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded above
        raise SingularityError(str(exc)) from exc
    return hermitian(inv)


def apply_fn(f, m) -> np.ndarray:
    """Evaluate a scalar function on a Hermitian matrix by functional calculus.

    Every eigenvalue must lie in f.domain; closed-endpoint membership is
    honored, with eigenvalues within 1e-10 * (1 + maxabs) of a closed endpoint
    clamped onto it to absorb eigensolver roundoff.
    """
    d = eigh(m)
    dom = f.domain
    lam = d.eigenvalues.copy()
    slack = 1e-10 * (1.0 + float(np.max(np.abs(lam))))
    for i, x in enumerate(lam):
        if dom.contains(x):
            continue
        if dom.lo_closed and 0 < dom.lo - x <= slack:
            lam[i] = dom.lo
        elif dom.hi_closed and 0 < x - dom.hi <= slack:
            lam[i] = dom.hi
        else:
            raise SpectrumDomainError(
                f"eigenvalue {x!r} outside domain {dom} of {f.label or 'function'}",
                eigenvalue=float(x),
            )
    vals = np.array([f.eval(x) for x in lam], dtype=float)
    return hermitian(d.basis @ np.diag(vals) @ d.basis.conj().T)


def complete_isometry(columns, tol: float = 1e-10) -> list[np.ndarray]:
    """Complete the isometry v = [a_1; ...; a_k] to a unitary (v w).

    Returns the blocks b_1..b_k of w, each m x (k-1)m, whose stacked columns
    form an orthonormal basis of range(v)-perp. Two special cases return the
    closed forms: a_2 = (1 - a_1* a_1)^(1/2) gives b_1 = (1 - a a*)^(1/2),
    b_2 = -a*; scalar multiples of the identity are a sub-case.
    """
    blocks = [np.asarray(a, dtype=complex) for a in columns]
    if not blocks:
        raise InputError("need at least one column block")
    m = blocks[0].shape[1]
    if any(b.ndim != 2 or b.shape != (m, m) for b in blocks):
        raise InputError("all column blocks must be square with equal size")
    k = len(blocks)
    v = np.vstack(blocks)
    gram = v.conj().T @ v
    scale = 1.0 + opnorm(gram)
    if opnorm(gram - np.eye(m)) > tol * scale:
        raise InputError("column blocks do not form an isometry (sum a_i* a_i != 1)")

    w = None
    if k == 2:
        a, a2 = blocks
        if (
            opnorm(a2 - a2.conj().T) <= tol * scale
            and float(np.linalg.eigvalsh(hermitian(a2))[0]) >= -tol * scale
            and opnorm(a2 @ a2 - (np.eye(m) - a.conj().T @ a)) <= tol * scale
        ):
            b1 = sqrtm_psd(np.eye(m) - a @ a.conj().T)
            w = np.vstack([b1, -a.conj().T])
    if w is None:
        # Orthonormal basis of ker(v*): trailing left-singular vectors of v.
        u_full, _, _ = np.linalg.svd(v, full_matrices=True)
        w = u_full[:, m:]

    u = np.hstack([v, w])
    dim = k * m
    if opnorm(u.conj().T @ u - np.eye(dim)) > 1e-8 * dim or opnorm(
        u @ u.conj().T - np.eye(dim)
    ) > 1e-8 * dim:
        raise InputError("isometry completion failed the unitarity check")
    return [w[i * m : (i + 1) * m, :] for i in range(k)]


def block2(a, b, c) -> np.ndarray:
    """Hermitian 2x2 block matrix [[a, b], [b*, c]]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    c = np.asarray(c, dtype=complex)
    top = np.hstack([a, b])
    bot = np.hstack([b.conj().T, c])
    return hermitian(np.vstack([top, bot]))


def schur_psd_equivalent(a, b, c, tol: float = DEFAULT_TOL) -> tuple[PsdVerdict, PsdVerdict]:
    """Verdicts on [[a,b],[b*,c]] >= 0 and on a >= b c^-1 b*.

    The two pass flags agree whenever c is comfortably positive definite
    (lambda_min(c) > 10 * tol * scale).
    """
    a = hermitian(a)
    c = hermitian(c)
    b = np.asarray(b, dtype=complex)
    c_inv = spd_inverse(c, tol)  # raises SingularityError when c is not PD
    blk = block2(a, b, c)
    block_v = psd_verdict(blk, 1.0 + opnorm(blk), tol)
    comp = a - b @ c_inv @ b.conj().T
    schur_scale = 1.0 + max(opnorm(a), opnorm(b @ c_inv @ b.conj().T))
    schur_v = psd_verdict(comp, schur_scale, tol)
    return block_v, schur_v

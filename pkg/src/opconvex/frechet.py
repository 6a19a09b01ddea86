"""Derivatives of the matrix function t -> f(t) on Hermitian matrices.

First derivatives come from the Loewner matrix of first divided differences
(Schur-multiplied against the perturbation in the eigenbasis of t); second
derivatives from the symmetric triple sum over second divided differences.
Confluent eigenvalue pairs fall back to the analytic derivatives the catalog
provides, since plain divided differences lose all digits when gaps shrink
below sqrt(machine epsilon). A central finite-difference oracle provides an
independent cross-check of both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DerivativeRequiredError, SpectrumDomainError, StepTooLargeError
from .functions import ScalarFunction, negative_reciprocal
from .hermitian import apply_fn, eigh, hermitian, opnorm, spd_inverse

#: Gap threshold, relative to max(1, spectral spread), below which divided
#: differences switch to derivative fallbacks.
CONFLUENCE_DELTA = 1e-6


def _spread_delta(lam: np.ndarray) -> float:
    spread = max(1.0, float(lam.max() - lam.min())) if len(lam) else 1.0
    return CONFLUENCE_DELTA * spread


def divided_diff_first(f: ScalarFunction, lambdas) -> np.ndarray:
    """Table of first divided differences f[li, lj] over the given nodes.

    Entry (i, j) is (f(li) - f(lj)) / (li - lj) for well-separated nodes and
    f'((li + lj)/2) for confluent ones; deriv1 is only required when a
    confluent pair (including the diagonal) actually occurs.
    """
    lam = np.asarray(lambdas, dtype=float)
    n = len(lam)
    delta = _spread_delta(lam)
    fv = np.array([f.eval(x) for x in lam], dtype=float)
    table = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(i, n):
            gap = lam[i] - lam[j]
            if abs(gap) > delta:
                val = (fv[i] - fv[j]) / gap
            else:
                if f.deriv1 is None:
                    raise DerivativeRequiredError(
                        f"confluent nodes {lam[i]!r}, {lam[j]!r} need deriv1 of "
                        f"{f.label or 'f'}"
                    )
                val = f.deriv1(0.5 * (lam[i] + lam[j]))
            table[i, j] = table[j, i] = val
    return table


def divided_diff_second(f: ScalarFunction, lambdas) -> np.ndarray:
    """Fully symmetric table of second divided differences f[li, lj, lk].

    Computed on the ascending reordering so the outer pair of each triple is
    its widest gap: f[a,b,c] = (f[a,b] - f[b,c]) / (a - c), with the
    f''(mean)/2 fallback when the whole triple is confluent.
    """
    if f.deriv1 is None or f.deriv2 is None:
        raise DerivativeRequiredError(
            f"second divided differences need deriv1 and deriv2 of {f.label or 'f'}"
        )
    lam = np.asarray(lambdas, dtype=float)
    n = len(lam)
    order = np.argsort(lam, kind="stable")
    ls = lam[order]
    delta = _spread_delta(lam)
    first = divided_diff_first(f, ls)
    sorted_table = np.empty((n, n, n), dtype=float)
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                outer = ls[k] - ls[i]
                if outer > delta:
                    val = (first[i, j] - first[j, k]) / (ls[i] - ls[k])
                else:
                    val = 0.5 * f.deriv2((ls[i] + ls[j] + ls[k]) / 3.0)
                for p in ((i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)):
                    sorted_table[p] = val
    inv = np.empty(n, dtype=int)
    inv[order] = np.arange(n)
    return sorted_table[np.ix_(inv, inv, inv)]


@dataclass(frozen=True)
class DividedDifferenceTable:
    """Nodes with their first and second divided-difference tables."""

    eigenvalues: np.ndarray
    first: np.ndarray
    second: np.ndarray

    @classmethod
    def build(cls, f: ScalarFunction, lambdas) -> "DividedDifferenceTable":
        lam = np.asarray(lambdas, dtype=float)
        return cls(
            eigenvalues=lam,
            first=divided_diff_first(f, lam),
            second=divided_diff_second(f, lam),
        )


def _domain_check(f: ScalarFunction, lam: np.ndarray):
    for x in lam:
        if not f.domain.contains(x):
            raise SpectrumDomainError(
                f"eigenvalue {x!r} outside domain {f.domain} of {f.label or 'f'}",
                eigenvalue=float(x),
            )


def frechet_first(f: ScalarFunction, t, h) -> np.ndarray:
    """First derivative of t -> f(t) applied to the direction h (linear in h)."""
    t = hermitian(t)
    h = hermitian(h)
    d = eigh(t)
    _domain_check(f, d.eigenvalues)
    table = divided_diff_first(f, d.eigenvalues)
    h_t = d.basis.conj().T @ h @ d.basis
    res = table * h_t
    return hermitian(d.basis @ res @ d.basis.conj().T)


def frechet_second(f: ScalarFunction, t, h) -> np.ndarray:
    """Second derivative of t -> f(t) along (h, h); quadratic in h.

    Normalized so the scalar case returns f''(t) h^2, i.e. in the eigenbasis
    entry (i, j) is 2 * sum_k f[li, lk, lj] h_ik h_kj.
    """
    t = hermitian(t)
    h = hermitian(h)
    d = eigh(t)
    _domain_check(f, d.eigenvalues)
    table = divided_diff_second(f, d.eigenvalues)
    h_t = d.basis.conj().T @ h @ d.basis
    res = 2.0 * np.einsum("ikj,ik,kj->ij", table, h_t, h_t)
    return hermitian(d.basis @ res @ d.basis.conj().T)


def fd_oracle(f: ScalarFunction, t, h, order: int = 1, step: float | None = None) -> np.ndarray:
    """Central finite-difference derivative of t -> f(t), independent of the
    divided-difference path.

    Default steps (1e-4 for order 1, 1e-3 for order 2, scale-normalized)
    balance truncation against cancellation for the acceptance tolerances.
    """
    t = hermitian(t)
    h = hermitian(h)
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if step is None:
        step = (1e-4 if order == 1 else 1e-3) * (1.0 + opnorm(t)) / (1.0 + opnorm(h))
    try:
        plus = apply_fn(f, t + step * h)
        minus = apply_fn(f, t - step * h)
        if order == 1:
            return hermitian((plus - minus) / (2.0 * step))
        center = apply_fn(f, t)
        return hermitian((plus - 2.0 * center + minus) / step**2)
    except SpectrumDomainError as exc:
        raise StepTooLargeError(
            f"step {step!r} pushes the spectrum outside {f.domain}; halve it"
        ) from exc


def neg_recip_second_identity_gap(f: ScalarFunction, t, h, tol: float = 1e-8) -> float:
    """Relative gap in the chain identity for g = -1/f:

        G''(t)(h,h) = F^-1 F''(t)(h,h) F^-1 - 2 F^-1 (F'(t)h) F^-1 (F'(t)h) F^-1

    with F = f(t). The left side is computed from divided differences of g,
    the right side from the derivatives of f, so the identity cross-checks
    both routes. Requires f > 0 on the spectrum of t.
    """
    g = negative_reciprocal(f)
    lhs = frechet_second(g, t, h)
    fmat = apply_fn(f, t)
    finv = spd_inverse(fmat, tol)
    d1 = frechet_first(f, t, h)
    d2 = frechet_second(f, t, h)
    rhs = finv @ d2 @ finv - 2.0 * finv @ d1 @ finv @ d1 @ finv
    return opnorm(lhs - rhs) / (1.0 + opnorm(lhs))

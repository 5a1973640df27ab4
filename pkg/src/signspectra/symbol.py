"""Symbol calculus for periodic sign operators.

A period-m sign pattern k determines a family of m x m matrices a(phi):
zero diagonal, ones on the superdiagonal, k_1..k_{m-1} on the subdiagonal,
and two phase-carrying corners, (1,m) += k_m e^{i phi} and (m,1) += e^{-i phi}.
The operator spectrum is the union of spec(a(phi)) over phi.

Determinants of a(phi) - lambda I collapse onto a single monic integer
polynomial p of degree m:

    det(a(phi) - lambda I) = (-1)^m (p(lambda) - e^{i phi} K - e^{-i phi}),

K = product of the k_j.  When the -1 count of k is even (K = +1) the right
side becomes (-1)^m (p(lambda) - 2 cos phi), so the operator spectrum is
exactly the p-preimage of the segment [-2, 2].
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cloud import SpectrumCloud
from .errors import NumericalConsistencyError
from .polyroot import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    ComplexPolynomial,
    IntPolynomial,
    roots_many,
)
from .signmodel import SignVector, ensure_even_parity

__all__ = [
    "SymbolMatrix",
    "SymbolPolynomial",
    "symbol_matrix",
    "symbol_array",
    "symbol_char_value",
    "symbol_char_values",
    "symbol_poly",
    "symbol_eigenvalues",
    "periodic_spectrum",
    "two_cos_pi",
]


def two_cos_pi(numer: int, denom: int) -> float:
    """2 cos(pi numer/denom), exact at the integer-valued points.

    Plain cos(pi/2) is 6.1e-17 in floats, which would push targets that are
    exactly 0 (or +-1, +-2) slightly off and ruin scale-normalized residuals
    at roots of the characteristic polynomial near zero.  Folding the angle
    exactly over the integers and special-casing the rational points with
    integer cosine keeps those targets exact; mirror angles (numer and
    2*denom - numer) also become bit-identical.
    """
    if denom <= 0:
        raise ValueError("denominator must be positive")
    s = numer % (2 * denom)
    if s > denom:
        s = 2 * denom - s
    sign = 1.0
    if 2 * s > denom:
        s = denom - s
        sign = -1.0
    if s == 0:
        return sign * 2.0
    if 2 * s == denom:
        return 0.0
    if 3 * s == denom:
        return sign * 1.0
    return sign * 2.0 * math.cos(math.pi * s / denom)


def symbol_array(k: SignVector, phi: float) -> np.ndarray:
    """Dense m x m array of the symbol at angle phi.

    All contributions are accumulated with +=, which resolves the m = 1 and
    m = 2 degeneracies (corner positions coincide with the diagonal or the
    off-diagonals) by entry summation.
    """
    m = len(k)
    signs = k.signs
    a = np.zeros((m, m), dtype=complex)
    idx = np.arange(m - 1)
    if m >= 2:
        a[idx, idx + 1] += 1.0
        a[idx + 1, idx] += signs[:-1]
    a[0, m - 1] += signs[-1] * cmath.exp(1j * phi)
    a[m - 1, 0] += cmath.exp(-1j * phi)
    return a


@dataclass(frozen=True)
class SymbolMatrix:
    k: SignVector
    phi: float
    matrix: np.ndarray

    @property
    def period(self) -> int:
        return len(self.k)


def symbol_matrix(k: SignVector, phi: float) -> SymbolMatrix:
    return SymbolMatrix(k, float(phi), symbol_array(k, phi))


def symbol_char_value(k: SignVector, phi: float, lam: complex) -> complex:
    """det(a(phi) - lambda I) by LU with partial pivoting.

    This is the reference route against which the polynomial identity is
    tested; it shares no code with symbol_poly.
    """
    a = symbol_array(k, phi)
    np.fill_diagonal(a, a.diagonal() - lam)
    return complex(np.linalg.det(a))


def symbol_char_values(k, phis, lams) -> np.ndarray:
    """Vectorized symbol_char_value over paired (phi, lambda) samples."""
    phis = np.asarray(phis, dtype=float).ravel()
    lams = np.asarray(lams, dtype=complex).ravel()
    if phis.shape != lams.shape:
        raise ValueError("phis and lams must pair up")
    m = len(k)
    signs = k.signs
    stack = np.zeros((len(phis), m, m), dtype=complex)
    idx = np.arange(m - 1)
    if m >= 2:
        stack[:, idx, idx + 1] += 1.0
        stack[:, idx + 1, idx] += signs[:-1]
    stack[:, 0, m - 1] += signs[-1] * np.exp(1j * phis)
    stack[:, m - 1, 0] += np.exp(-1j * phis)
    di = np.arange(m)
    stack[:, di, di] -= lams[:, None]
    return np.linalg.det(stack)


@dataclass(frozen=True)
class SymbolPolynomial:
    """Monic integer polynomial p of degree m plus the sign product K."""

    p: ComplexPolynomial
    k_product: int
    k: SignVector

    def int_poly(self) -> IntPolynomial:
        return IntPolynomial(tuple(int(round(c.real)) for c in self.p.coeffs))


def symbol_poly(k: SignVector) -> SymbolPolynomial:
    """Recover p by interpolating the determinant route.

    p(lambda) = (-1)^m det(a(0) - lambda I) + K + 1 is sampled at the m+1
    roots of unity e^{2 pi i s/(m+1)} and inverted by a discrete Fourier
    transform.  Radius-1 nodes keep every coefficient error near machine
    epsilon (a radius r leaks r^m rounding noise into the constant term,
    which breaches the snap gate around m = 14).  Coefficients must land on
    integers; a snap error above 1e-8 means the implementation (not the
    data) is broken, hence the hard error.
    """
    m = len(k)
    kprod = k.product()
    sign = -1.0 if m % 2 else 1.0
    s = np.arange(m + 1)
    nodes = np.exp(2j * np.pi * s / (m + 1))
    vals = symbol_char_values(k, np.zeros(m + 1), nodes)
    f = sign * vals + kprod + 1.0
    # f_s = sum_t c_t omega^{st}  =>  inverse transform
    omega = np.exp(-2j * np.pi * np.outer(s, s) / (m + 1))
    coeffs = omega @ f / (m + 1)
    snapped = np.round(coeffs.real)
    err = float(np.max(np.abs(coeffs - snapped)))
    if err > 1e-8:
        raise NumericalConsistencyError(
            f"symbol polynomial coefficients {err:.3e} away from integers "
            f"for pattern {k.to_text()}"
        )
    if snapped[m] != 1:
        raise NumericalConsistencyError(
            f"symbol polynomial not monic for pattern {k.to_text()}"
        )
    p = ComplexPolynomial(tuple(complex(c) for c in snapped))
    return SymbolPolynomial(p=p, k_product=kprod, k=k)


def symbol_eigenvalues(
    k: SignVector,
    phi: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """spec(a(phi)) with multiplicity: roots of p - e^{i phi} K - e^{-i phi}."""
    sp = symbol_poly(k)
    target = sp.k_product * cmath.exp(1j * phi) + cmath.exp(-1j * phi)
    row = sp.p.as_array()
    row[0] -= target
    return roots_many([row], tol, max_iter)[0]


def periodic_spectrum(
    k: SignVector,
    samples: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectrumCloud:
    """Sampled operator spectrum as the p-preimage of [-2, 2].

    The pattern is parity-doubled first when its -1 count is odd, so the
    segment form applies.  Angles are uniform, phi_s = pi s/(samples-1), and
    the targets 2 cos phi_s are Chebyshev-distributed in [-2, 2], which
    resolves the arc endpoints well.  Each point is tagged with its angle.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    keff = ensure_even_parity(k)
    meff = len(keff)
    sp = symbol_poly(keff)
    base = sp.p.as_array()
    phis = np.pi * np.arange(samples) / (samples - 1)
    rows = np.tile(base, (samples, 1))
    rows[:, 0] -= np.array([two_cos_pi(s, samples - 1) for s in range(samples)])
    solved = roots_many(list(rows), tol, max_iter)
    parts = [
        SpectrumCloud.from_values(vals, f"per:m={meff}:phi={phi:.3f}")
        for vals, phi in zip(solved, phis)
    ]
    return SpectrumCloud().merged(*parts)

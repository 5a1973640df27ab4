"""Block-circulant assembly and the constructive spectral embedding.

Arranging the symbol matrices a(xi_j) at the n-th roots of unity
xi_j = 2 pi j / n into a block-diagonal matrix and undoing the discrete
Fourier conjugation yields the nm x nm block circulant

    M = tridiagonal(sub = k repeated n, super = ones)
        + corner (1, nm) = k_m + corner (nm, 1) = 1,

so charpoly(M) factors through the symbol.  Angles come in conjugate pairs
xi_j, xi_{n-j}, hence every eigenvalue of M away from the real angles
j = n and j = n/2 has a two-dimensional eigenspace; combining two
eigenvectors kills the first coordinate, and deleting the first row and
column of M leaves a plain tridiagonal sign matrix that inherits those
eigenvalues.  That is the embedding this module verifies numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cloud import SpectrumCloud
from .errors import CapExceededError, WitnessDegenerateError
from .finite import charpoly_eval_many
from .polyroot import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    IntPolynomial,
    int_charpoly_oracle,
    roots_many,
)
from .signmodel import SignVector, ensure_even_parity
from .symbol import symbol_array, symbol_char_values, symbol_poly, two_cos_pi

__all__ = [
    "BlockCirculant",
    "Witness",
    "ExcludedTarget",
    "EmbeddingResult",
    "build_block_circulant",
    "block_circulant_charpoly",
    "circulant_factorization_check",
    "target_set",
    "truncate",
    "verify_embedding",
]

FACTORIZATION_SIZE_CAP = 64


@dataclass(frozen=True)
class BlockCirculant:
    k: SignVector
    n: int
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return len(self.k) * self.n


def build_block_circulant(k: SignVector, n: int) -> BlockCirculant:
    """The nm x nm circulant-coupled tridiagonal matrix for pattern k.

    Identical to the symbol of the n-fold repeated pattern at angle 0, so
    the nm = 2 degeneracy (corners meeting off-diagonals) is resolved by the
    same entry-summation rule.  Parity of k is NOT adjusted here; callers
    that need the even-parity form double the pattern first.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    a = symbol_array(k.repeated(n), 0.0)
    return BlockCirculant(k=k, n=n, matrix=a.real.copy())


def _continuant_coeffs(signs) -> list[int]:
    # D_{len+1} of the zero-diagonal tridiagonal with these subdiagonal
    # signs and unit superdiagonal, ascending integer coefficients
    prev = [1]
    cur = [0, -1]
    for s in signs:
        s = int(s)
        nxt = [0] + [-c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= s * c
        prev, cur = cur, nxt
    return cur


def block_circulant_charpoly(k: SignVector, n: int) -> IntPolynomial:
    """Exact det(M - x I) of the block circulant, any size.

    Uses the corner-expansion of the determinant: with D the full continuant,
    E the continuant of the interior (rows and columns 2..N-1), and corners
    a = M[1,N], c = M[N,1],

        det(M - xI) = D(x) - a c E(x) + (-1)^{N+1} (a prod(sub) + c prod(super)).

    All quantities are integers here, so the result is exact.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    pattern = k.repeated(n)
    size = len(pattern)
    if size == 2:
        dense = build_block_circulant(k, n).matrix.astype(int)
        return int_charpoly_oracle(dense)
    signs = pattern.signs
    a = signs[-1]
    c = 1
    full = _continuant_coeffs(signs[:-1])
    inner = _continuant_coeffs(signs[1:-2])
    out = [0] * (size + 1)
    for i, v in enumerate(full):
        out[i] += v
    for i, v in enumerate(inner):
        out[i] -= a * c * v
    sub_prod = 1
    for s in signs[:-1]:
        sub_prod *= int(s)
    wrap = a * sub_prod + c  # super entries are all ones
    out[0] += wrap if (size + 1) % 2 == 0 else -wrap
    return IntPolynomial(tuple(out))


def _read_corner_det(matrix: np.ndarray, lam: np.ndarray):
    """det(matrix - lam I) for tridiagonal-plus-corners, vectorized in lam.

    Entry values are read from the matrix, so corruptions on the allowed
    support change the result; positions off the support are the caller's
    job to check.
    """
    size = matrix.shape[0]
    sub = np.diagonal(matrix, -1)
    sup = np.diagonal(matrix, 1)
    a = matrix[0, size - 1]
    c = matrix[size - 1, 0]
    t = sub * sup

    def continuant(tvals):
        prev = np.ones_like(lam)
        cur = -lam
        for tv in tvals:
            prev, cur = cur, -lam * cur - tv * prev
        return cur

    full = continuant(t)
    inner = continuant(t[1:-1])
    wrap = a * np.prod(sub) + c * np.prod(sup)
    sign = 1.0 if (size + 1) % 2 == 0 else -1.0
    return full - a * c * inner + sign * wrap


_SUPPORT_CACHE: dict[int, np.ndarray] = {}


def _support_mask(size: int) -> np.ndarray:
    mask = _SUPPORT_CACHE.get(size)
    if mask is None:
        mask = np.zeros((size, size), dtype=bool)
        idx = np.arange(size - 1)
        mask[idx, idx + 1] = True
        mask[idx + 1, idx] = True
        mask[0, size - 1] = True
        mask[size - 1, 0] = True
        _SUPPORT_CACHE[size] = mask
    return mask


def circulant_factorization_check(
    k: SignVector,
    n: int,
    tol: float = 1e-9,
    matrix: np.ndarray | None = None,
) -> bool:
    """Spectral factorization test: det(M - xI) vs the symbol product.

    Compares the determinant of the assembled matrix (read entrywise, so
    mutations register) against prod_j det(a(xi_j) - xI) at 4*nm seeded
    sample points on the circle |x| = 3, which keeps every sample at
    distance >= 1 from the spectrum.  Returns False on any mismatch or on
    off-support entries; raises only for sizes beyond the test-scale cap.
    """
    m = len(k)
    size = n * m
    if size > FACTORIZATION_SIZE_CAP:
        raise CapExceededError(
            f"factorization check capped at nm <= {FACTORIZATION_SIZE_CAP}"
        )
    if matrix is None:
        matrix = build_block_circulant(k, n).matrix
    matrix = np.asarray(matrix)
    if matrix.shape != (size, size):
        return False
    if size >= 3 and np.any(matrix[~_support_mask(size)] != 0):
        return False

    rng = np.random.default_rng(20240331)
    lam = 3.0 * np.exp(2j * np.pi * rng.random(4 * size))

    if size == 2:
        lhs = np.array(
            [np.linalg.det(matrix - z * np.eye(2)) for z in lam], dtype=complex
        )
    else:
        lhs = _read_corner_det(matrix, lam)

    xi = 2.0 * np.pi * np.arange(1, n + 1) / n
    rhs = np.ones_like(lam)
    for z_i, z in enumerate(lam):
        dets = symbol_char_values(k, xi, np.full(n, z))
        rhs[z_i] = np.prod(dets)

    err = np.abs(lhs - rhs)
    ref = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    return bool(np.all(err <= tol * ref))


def target_set(
    k: SignVector,
    n: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectrumCloud:
    """Guaranteed embedded eigenvalues: spec(a(xi_j)) over allowed angles.

    Allowed angles are j in {1,...,n-1} minus n/2 (the exclusion only exists
    for even n); the excluded angles are exactly those whose target 2cos(xi_j)
    hits the segment endpoints +-2, where the conjugate-pair multiplicity
    argument fails.  Requires an even-parity pattern.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if k.minus_count() % 2:
        raise ValueError("target_set needs an even-parity pattern; double it first")
    js = [j for j in range(1, n) if 2 * j != n]
    if not js:
        return SpectrumCloud(
            (), warnings=(f"empty target set: n = {n} excludes every angle",)
        )
    sp = symbol_poly(k)
    base = sp.p.as_array()
    rows = []
    for j in js:
        row = base.copy()
        row[0] -= two_cos_pi(2 * j, n)
        rows.append(row)
    solved = roots_many(rows, tol, max_iter)
    parts = [
        SpectrumCloud.from_values(vals, f"target:j={j}") for j, vals in zip(js, solved)
    ]
    return SpectrumCloud().merged(*parts)


def truncate(k: SignVector, n: int) -> SignVector:
    """Subdiagonal pattern after deleting row and column 1 of the circulant.

    Both corners sit in the deleted row/column, so the submatrix is plain
    tridiagonal: the n-fold repetition of k shifted left by one, length nm-2.
    """
    pattern = k.repeated(n)
    size = len(pattern)
    if size < 3:
        raise ValueError("truncation needs nm >= 3")
    keep = size - 2
    return SignVector(keep, (pattern.bits >> 1) & ((1 << keep) - 1))


@dataclass(frozen=True)
class Witness:
    target_index: int
    value: complex
    vector: np.ndarray
    first_component: float
    residual: float


@dataclass(frozen=True)
class ExcludedTarget:
    j: int
    values: tuple[complex, ...]
    residuals: tuple[float, ...]


@dataclass(frozen=True)
class EmbeddingResult:
    l: SignVector
    n: int
    m: int
    targets: SpectrumCloud
    residuals: tuple[float, ...]
    verified: bool
    worst_residual: float
    witnesses: tuple[Witness, ...] | None
    excluded: tuple[ExcludedTarget, ...]


def _residuals_at(l: SignVector, values: np.ndarray) -> tuple[float, ...]:
    vals, scales = charpoly_eval_many(l, values)
    out = []
    for v, s in zip(vals, scales):
        if v == 0:
            out.append(0.0)
        else:
            out.append(float(abs(v)) / float(s))
    return tuple(out)


def _inverse_iterate(mat: np.ndarray, shift: complex, rng, steps: int = 4):
    size = mat.shape[0]
    v = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    v /= np.linalg.norm(v)
    shifted = mat - shift * np.eye(size)
    for _ in range(steps):
        v = np.linalg.solve(shifted, v)
        v /= np.linalg.norm(v)
    return v


def _witness_for(mat, lam, index, rng) -> Witness:
    eps = 1e-7 * max(1.0, abs(lam))
    v = _inverse_iterate(mat, lam + eps, rng)
    w = _inverse_iterate(mat, lam - eps, rng)
    if abs(v[0]) <= 1e-13:
        x = v
    else:
        perp = w - (np.conjugate(v) @ w) * v
        if np.linalg.norm(perp) < 1e-6:
            raise WitnessDegenerateError(
                f"eigenspace at target {index} (value {lam:.6g}) is numerically "
                "one-dimensional",
                target_index=index,
            )
        x = w[0] * v - v[0] * w
    norm = np.linalg.norm(x)
    if norm < 1e-12:
        raise WitnessDegenerateError(
            f"vanishing combination at target {index}", target_index=index
        )
    x = x / norm
    residual = float(np.linalg.norm(mat @ x - lam * x))
    return Witness(
        target_index=index,
        value=complex(lam),
        vector=x,
        first_component=float(abs(x[0])),
        residual=residual,
    )


def verify_embedding(
    k: SignVector,
    n: int,
    tol: float = 1e-8,
    want_witness: bool = False,
) -> EmbeddingResult:
    """Check that every guaranteed target is an eigenvalue of the truncation.

    The pattern is parity-doubled if needed; the result records the effective
    period.  Verification evaluates the truncated matrix's characteristic
    determinant at each target and normalizes by the running magnitude bound.
    Residuals at the excluded angles (j = n and, for even n, j = n/2) are
    reported for inspection but never asserted.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    keff = ensure_even_parity(k)
    m = len(keff)
    targets = target_set(keff, n)
    l = truncate(keff, n)
    values = targets.values()
    residuals = _residuals_at(l, values) if len(values) else ()
    worst = max(residuals, default=0.0)
    verified = all(r <= tol for r in residuals)

    excluded = []
    sp = symbol_poly(keff)
    for j in ([n // 2] if n % 2 == 0 else []) + [n]:
        row = sp.p.as_array()
        row[0] -= two_cos_pi(2 * j, n)
        vals = roots_many([row])[0]
        excluded.append(
            ExcludedTarget(
                j=j,
                values=tuple(complex(v) for v in vals),
                residuals=_residuals_at(l, vals),
            )
        )

    witnesses = None
    if want_witness and len(values):
        mat = build_block_circulant(keff, n).matrix
        found = []
        for i, lam in enumerate(values):
            rng = np.random.default_rng(1000 + i)
            found.append(_witness_for(mat, complex(lam), i, rng))
        witnesses = tuple(found)

    return EmbeddingResult(
        l=l,
        n=n,
        m=m,
        targets=targets,
        residuals=residuals,
        verified=verified,
        worst_residual=worst,
        witnesses=witnesses,
        excluded=tuple(excluded),
    )

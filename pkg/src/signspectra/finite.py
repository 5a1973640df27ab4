"""Finite sign-matrix spectra via the three-term continuant recursion.

For the (n+1) x (n+1) matrix with subdiagonal pattern k and superdiagonal
ones, the characteristic determinant D_{n+1}(x) = det(A - x I) obeys

    D_0 = 1,  D_1 = -x,  D_{j+1} = -x D_j - k_j D_{j-1},

so coefficients are exact integers and point evaluation is O(n).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .cloud import SpectrumCloud
from .errors import CapExceededError
from .polyroot import DEFAULT_MAX_ITER, DEFAULT_TOL, IntPolynomial, roots_many
from .signmodel import SignVector, all_sign_vectors

__all__ = [
    "charpoly_finite",
    "charpoly_eval_at",
    "charpoly_eval_many",
    "finite_eigenvalues",
    "enumerate_sigma",
    "ENUMERATION_CAP",
    "COEFF_SIZE_CAP",
]

ENUMERATION_CAP = 16
COEFF_SIZE_CAP = 64


def charpoly_finite(k: SignVector) -> IntPolynomial:
    """det(A - x I) as an exact integer polynomial, degree n+1."""
    n = len(k)
    if n > COEFF_SIZE_CAP:
        raise CapExceededError(
            f"exact coefficients limited to n <= {COEFF_SIZE_CAP}; "
            "use charpoly_eval_at beyond that"
        )
    prev = [1]
    cur = [0, -1]
    for s in k.signs:
        s = int(s)
        nxt = [0] + [-c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= s * c
        prev, cur = cur, nxt
    return IntPolynomial(tuple(cur))


def charpoly_eval_at(k: SignVector, lam: complex) -> tuple[complex, float]:
    """Continuant evaluation at one point.

    Returns (D_{n+1}(lam), S_{n+1}) where S is the running magnitude bound
    S_0 = 1, S_1 = |lam|, S_{j+1} = |lam| S_j + S_{j-1}; |D_j| <= S_j always,
    so |value|/scale is a meaningful normalized residual (S vanishes only
    where D provably vanishes too).
    """
    values, scales = charpoly_eval_many(k, np.array([lam], dtype=complex))
    return complex(values[0]), float(scales[0])


def charpoly_eval_many(k: SignVector, lams) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized continuant evaluation over an array of points."""
    z = np.asarray(lams, dtype=complex)
    az = np.abs(z)
    d_prev = np.ones_like(z)
    d_cur = -z
    s_prev = np.ones_like(az)
    s_cur = az.copy()
    for s in k.signs:
        d_prev, d_cur = d_cur, -z * d_cur - s * d_prev
        s_prev, s_cur = s_cur, az * s_cur + s_prev
    return d_cur, s_cur


def finite_eigenvalues(
    k: SignVector,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SpectrumCloud:
    """All n+1 eigenvalues, tagged with the matrix size parameter."""
    poly = charpoly_finite(k)
    vals = roots_many([np.asarray(poly.coeffs, dtype=complex)], tol, max_iter)[0]
    return SpectrumCloud.from_values(vals, f"fin:n={len(k)}")


def _class_representatives(n: int, dedup: bool):
    """(pattern, multiplicity) pairs covering all 2^n patterns.

    With dedup, one member per reversal class; reversing the pattern
    transposes the matrix, so both members share one exact characteristic
    polynomial and the multiset union is unchanged.
    """
    if not dedup:
        for k in all_sign_vectors(n):
            yield k, 1
        return
    for bits in range(1 << n):
        k = SignVector(n, bits)
        rev = k.reflected()
        if rev.bits < bits:
            continue
        yield k, (1 if rev.bits == bits else 2)


def _solve_chunk(args):
    chunk, tol, max_iter, tag = args
    rows = [np.asarray(charpoly_finite(k).coeffs, dtype=complex) for k, _ in chunk]
    solved = roots_many(rows, tol, max_iter)
    out = []
    for (_, mult), vals in zip(chunk, solved):
        for _ in range(mult):
            out.append(SpectrumCloud.from_values(vals, tag))
    return out


def enumerate_sigma(
    n: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    cap: int = ENUMERATION_CAP,
    dedup_reversal: bool = False,
    threads: int = 1,
) -> SpectrumCloud:
    """Union of finite_eigenvalues over all 2^n patterns of length n.

    Output is a multiset ordered by (re, im, tag); the union is associative
    and order-independent, so chunked parallel collection is safe.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise CapExceededError(
            f"n = {n} above enumeration cap {cap}; raise it explicitly "
            "(cap argument / --cap flag) if you mean it"
        )
    tag = f"fin:n={n}"
    pairs = list(_class_representatives(n, dedup_reversal))
    chunk_size = 2048
    chunks = [pairs[i : i + chunk_size] for i in range(0, len(pairs), chunk_size)]
    jobs = [(c, tol, max_iter, tag) for c in chunks]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunked = list(pool.map(_solve_chunk, jobs))
    else:
        chunked = [_solve_chunk(j) for j in jobs]
    parts = [cloud for group in chunked for cloud in group]
    return SpectrumCloud().merged(*parts).sorted()

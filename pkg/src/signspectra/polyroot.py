"""Polynomial containers and the simultaneous root iteration.

Root finding uses Aberth-Ehrlich: all roots are iterated together from a
deterministic starting circle, with no deflation, so no general dense
eigensolver is needed anywhere in the package.  Exact integer polynomials
(arbitrary precision) back the characteristic-polynomial oracles.

Residual convention: a root r of p is accepted when

    |p(r)| <= tol * scale(r),      scale(r) = sum_i |c_i| |r|^i,

which is the backward-stable yardstick for Horner evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .cloud import SpectrumCloud
from .errors import CapExceededError, ConvergenceError

__all__ = [
    "ComplexPolynomial",
    "IntPolynomial",
    "evaluate",
    "roots",
    "roots_many",
    "preimage",
    "from_roots",
    "int_charpoly_oracle",
    "match_multisets",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 200

# Irrational angular offset for the starting circle; breaks the symmetry of
# polynomials whose root sets are invariant under rotations by 2 pi / d.
_ANGLE_OFFSET = 0.6180339887498949


def _trim(coeffs: tuple) -> tuple:
    i = len(coeffs)
    while i > 1 and coeffs[i - 1] == 0:
        i -= 1
    return coeffs[:i]


@dataclass(frozen=True)
class ComplexPolynomial:
    """Coefficients in ascending degree order; trailing zeros trimmed."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        trimmed = _trim(tuple(complex(c) for c in self.coeffs))
        object.__setattr__(self, "coeffs", trimmed)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def shifted_constant(self, c: complex) -> "ComplexPolynomial":
        """p(x) - c, i.e. subtract from the constant term."""
        cs = list(self.coeffs)
        cs[0] -= c
        return ComplexPolynomial(tuple(cs))

    def derivative(self) -> "ComplexPolynomial":
        if self.degree == 0:
            return ComplexPolynomial((0j,))
        d = tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        return ComplexPolynomial(d)

    def monic(self) -> "ComplexPolynomial":
        lead = self.coeffs[-1]
        if lead == 0:
            raise ValueError("zero polynomial has no monic form")
        return ComplexPolynomial(tuple(c / lead for c in self.coeffs))


@dataclass(frozen=True)
class IntPolynomial:
    """Exact integer coefficients, ascending order, arbitrary precision."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        trimmed = _trim(tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "coeffs", trimmed)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + other.scaled(-1)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    def scaled(self, s: int) -> "IntPolynomial":
        return IntPolynomial(tuple(s * c for c in self.coeffs))

    def times_x(self) -> "IntPolynomial":
        return IntPolynomial((0,) + self.coeffs)

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex(self) -> ComplexPolynomial:
        return ComplexPolynomial(tuple(complex(c) for c in self.coeffs))


def evaluate(p: ComplexPolynomial | IntPolynomial, z: complex) -> tuple[complex, float]:
    """Horner value and the coefficient-magnitude scale at z."""
    coeffs = p.coeffs
    acc = 0j
    sc = 0.0
    az = abs(z)
    for c in reversed(coeffs):
        acc = acc * z + complex(c)
        sc = sc * az + abs(complex(c))
    return acc, sc


def _horner_batch(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    # c: (B, D+1), z: (B, d); vectorized over both axes
    acc = np.repeat(c[:, -1][:, None], z.shape[1], axis=1)
    for i in range(c.shape[1] - 2, -1, -1):
        acc = acc * z + c[:, i][:, None]
    return acc


def _aberth_batch(
    coeffs: np.ndarray, tol: float, max_iter: int
) -> tuple[np.ndarray, float]:
    """Aberth-Ehrlich on a stack of same-degree polynomials.

    coeffs: (B, d+1) complex, ascending, leading column nonzero, d >= 2.
    Returns (roots (B, d), worst residual seen on the last iteration).
    """
    b, dp1 = coeffs.shape
    d = dp1 - 1
    monic = coeffs / coeffs[:, -1:]
    deriv = monic[:, 1:] * np.arange(1, dp1)
    absc = np.abs(monic)

    radius = 1.0 + np.max(np.abs(monic[:, :-1]), axis=1)
    angles = 2.0 * np.pi * np.arange(d) / d + _ANGLE_OFFSET
    z = radius[:, None] * np.exp(1j * angles)[None, :]

    worst = np.inf
    for _ in range(max_iter):
        pv = _horner_batch(monic, z)
        sc = _horner_batch(absc, np.abs(z).astype(complex)).real
        ok = np.abs(pv) <= tol * sc
        row_ok = ok.all(axis=1)
        if row_ok.all():
            return z, 0.0
        rows = np.flatnonzero(~row_ok)
        zz = z[rows]
        dv = _horner_batch(deriv[rows], zz)
        bad_dv = dv == 0
        if bad_dv.any():
            dv = np.where(bad_dv, 1.0, dv)
        w = pv[rows] / dv
        diff = zz[:, :, None] - zz[:, None, :]
        idx = np.arange(d)
        diff[:, idx, idx] = 1.0
        with np.errstate(divide="ignore", invalid="ignore"):
            recip = 1.0 / diff
        recip[:, idx, idx] = 0.0
        s = recip.sum(axis=2)
        denom = 1.0 - w * s
        bad = bad_dv | (denom == 0) | ~np.isfinite(denom)
        denom = np.where(bad, 1.0, denom)
        step = w / denom
        if bad.any():
            # collision or critical point: nudge deterministically, with an
            # index-dependent size so coincident iterates separate
            nudge = (1e-3 + 1e-3j) * (1.0 + np.abs(zz)) * (1.0 + idx)[None, :]
            step = np.where(bad, nudge, step)
        z[rows] = zz - step
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.abs(pv) / np.where(sc > 0, sc, 1.0)
        worst = float(rel.max())
    raise ConvergenceError(
        f"root iteration did not converge within {max_iter} iterations "
        f"(worst residual {worst:.3e}, tol {tol:.1e})",
        worst_residual=worst,
    )


def _split_zero_roots(c: np.ndarray) -> tuple[int, np.ndarray]:
    q = 0
    while q < len(c) - 1 and c[q] == 0:
        q += 1
    return q, c[q:]


def roots(
    p: ComplexPolynomial | IntPolynomial,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """All complex roots of p, with multiplicity, degree(p) of them.

    Exact zero constant terms are peeled off first (those roots are exact),
    then the remaining factor goes through the batch iteration.
    """
    out = roots_many([np.asarray(p.coeffs, dtype=complex)], tol, max_iter)
    return out[0]


def roots_many(
    coeff_rows: Sequence[np.ndarray],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> list[np.ndarray]:
    """Roots for many polynomials, grouped and batched by shape.

    Rows may have different degrees; each row is ascending complex
    coefficients with nonzero leading entry.  Returns one root array per
    input row, in input order.
    """
    prepared = []
    for i, row in enumerate(coeff_rows):
        c = np.asarray(row, dtype=complex)
        if c.ndim != 1 or len(c) < 2:
            raise ValueError(f"row {i}: need degree >= 1")
        if c[-1] == 0:
            raise ValueError(f"row {i}: leading coefficient is zero")
        q, core = _split_zero_roots(c)
        prepared.append((q, core))

    results: list[np.ndarray | None] = [None] * len(prepared)
    groups: dict[int, list[int]] = {}
    for i, (q, core) in enumerate(prepared):
        deg = len(core) - 1
        if deg == 0:
            results[i] = np.zeros(q, dtype=complex)
        elif deg == 1:
            r = -prepared[i][1][0] / prepared[i][1][1]
            results[i] = np.concatenate([np.zeros(q, dtype=complex), [r]])
        else:
            groups.setdefault(deg, []).append(i)

    for deg, idxs in groups.items():
        stack = np.array([prepared[i][1] for i in idxs])
        found, _ = _aberth_batch(stack, tol, max_iter)
        for row_pos, i in enumerate(idxs):
            q = prepared[i][0]
            results[i] = np.concatenate([np.zeros(q, dtype=complex), found[row_pos]])
    return results  # type: ignore[return-value]


def preimage(
    p: ComplexPolynomial,
    targets: Sequence[complex],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    tags: Sequence[str] | None = None,
) -> SpectrumCloud:
    """Multiset union of roots of p(x) - t over the targets.

    Each target contributes exactly degree(p) points.  Points are tagged by
    target index unless explicit tags are supplied.
    """
    if p.degree < 1:
        raise ValueError("preimage needs degree >= 1")
    targets = list(targets)
    if tags is None:
        tags = [f"t={i}" for i in range(len(targets))]
    elif len(tags) != len(targets):
        raise ValueError(f"{len(tags)} tags for {len(targets)} targets")
    base = np.asarray(p.coeffs, dtype=complex)
    rows = []
    for t in targets:
        c = base.copy()
        c[0] -= t
        rows.append(c)
    pts = []
    if rows:
        for sol, tag in zip(roots_many(rows, tol, max_iter), tags):
            pts.append(SpectrumCloud.from_values(sol, tag))
    return SpectrumCloud().merged(*pts)


def from_roots(values: Iterable[complex]) -> ComplexPolynomial:
    """Monic polynomial with the given roots, by coefficient convolution."""
    coeffs = np.array([1.0 + 0j])
    for r in values:
        coeffs = np.convolve(coeffs, np.array([-r, 1.0 + 0j]))
    return ComplexPolynomial(tuple(coeffs))


def int_charpoly_oracle(matrix, max_size: int = 12) -> IntPolynomial:
    """Exact characteristic polynomial det(xI - A) of an integer matrix.

    Division-free Berkowitz recursion over the leading principal
    submatrices, so every intermediate stays an integer.  Deliberately
    small-scale: refuses sizes above ``max_size`` (default 12) because this
    is a correctness oracle, not a production path.
    """
    a = [[int(v) for v in row] for row in np.asarray(matrix)]
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise ValueError("matrix must be square and nonempty")
    if n > max_size:
        raise CapExceededError(
            f"size {n} above oracle bound {max_size}; pass max_size to raise it"
        )
    check = np.asarray(matrix)
    if not np.array_equal(check, np.array(a)):
        raise ValueError("matrix entries must be integers")

    # c holds det(xI - A_r) for the leading r x r block, descending powers
    c = [1, -a[0][0]]
    for i in range(1, n):
        row = a[i][:i]
        col = [a[t][i] for t in range(i)]
        v = [1, -a[i][i]]
        u = col
        for j in range(i):
            v.append(-sum(row[t] * u[t] for t in range(i)))
            if j < i - 1:
                u = [sum(a[r][t] * u[t] for t in range(i)) for r in range(i)]
        new_c = [0] * (i + 2)
        for ai, va in enumerate(v):
            if va == 0:
                continue
            top = min(i + 2 - ai, len(c))
            for bi in range(top):
                new_c[ai + bi] += va * c[bi]
        c = new_c
    return IntPolynomial(tuple(reversed(c)))


def match_multisets(a, b, tol: float) -> bool:
    """Greedy bipartite matching of two complex multisets at tolerance tol."""
    xs = sorted(np.asarray(a, dtype=complex).ravel(), key=lambda z: (z.real, z.imag))
    ys = list(np.asarray(b, dtype=complex).ravel())
    if len(xs) != len(ys):
        return False
    for x in xs:
        best_i = -1
        best_d = tol
        for i, y in enumerate(ys):
            d = abs(x - y)
            if d <= best_d:
                best_d = d
                best_i = i
        if best_i < 0:
            return False
        ys.pop(best_i)
    return True

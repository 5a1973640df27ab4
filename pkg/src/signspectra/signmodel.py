"""Sign patterns, tridiagonal sign matrices, and gauge normalization.

A sign pattern is a finite word over {+1, -1}.  A finite tridiagonal sign
matrix of size n+1 has zero diagonal, a superdiagonal sign pattern of length
n and a subdiagonal sign pattern of length n.  A periodic operator spec is
the analogous pair of patterns read cyclically on the doubly infinite line.

Diagonal conjugation by a +-1 diagonal turns any superdiagonal pattern into
all ones while multiplying each subdiagonal entry by the matching
superdiagonal entry.  That normalization is what the rest of the package
relies on: only the subdiagonal pattern matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import ParseError

__all__ = [
    "SignVector",
    "TridiagSignMatrix",
    "PeriodicOperatorSpec",
    "parse_sign_vector",
    "gauge_normalize_finite",
    "gauge_normalize_periodic",
    "ensure_even_parity",
    "dense_matrix",
    "all_sign_vectors",
]


@dataclass(frozen=True)
class SignVector:
    """Packed +-1 word: bit i of ``bits`` is set exactly when entry i is -1."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("sign vector needs at least one entry")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bit mask {self.bits:#x} out of range for n={self.n}")

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVector":
        bits = 0
        count = 0
        for i, s in enumerate(signs):
            if s == -1:
                bits |= 1 << i
            elif s != 1:
                raise ValueError(f"entry {i} is {s!r}, expected +1 or -1")
            count += 1
        return cls(count, bits)

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        for _ in range(self.n):
            yield -1 if bits & 1 else 1
            bits >>= 1

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return -1 if (self.bits >> i) & 1 else 1

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(self)

    def to_array(self) -> np.ndarray:
        return np.fromiter(self, dtype=np.float64, count=self.n)

    def to_text(self) -> str:
        return "".join("-" if (self.bits >> i) & 1 else "+" for i in range(self.n))

    def minus_count(self) -> int:
        return self.bits.bit_count()

    def product(self) -> int:
        return -1 if self.bits.bit_count() & 1 else 1

    def reflected(self) -> "SignVector":
        rev = 0
        for i in range(self.n):
            if (self.bits >> i) & 1:
                rev |= 1 << (self.n - 1 - i)
        return SignVector(self.n, rev)

    def doubled(self) -> "SignVector":
        return SignVector(2 * self.n, self.bits | (self.bits << self.n))

    def repeated(self, times: int) -> "SignVector":
        if times < 1:
            raise ValueError("times must be positive")
        bits = 0
        for i in range(times):
            bits |= self.bits << (i * self.n)
        return SignVector(times * self.n, bits)

    def __repr__(self) -> str:  # compact, test-friendly
        return f"SignVector({self.to_text()!r})"


def parse_sign_vector(text: str) -> SignVector:
    """Parse a '+'/'-' word.  Rejects empty input and foreign characters."""
    if not text:
        raise ParseError("empty sign pattern (position 0)", position=0)
    bits = 0
    for i, ch in enumerate(text):
        if ch == "-":
            bits |= 1 << i
        elif ch != "+":
            raise ParseError(
                f"invalid character {ch!r} at position {i}; expected '+' or '-'",
                position=i,
            )
    return SignVector(len(text), bits)


@dataclass(frozen=True)
class TridiagSignMatrix:
    """Finite matrix of size n+1: zero diagonal, super pattern, sub pattern."""

    sub: SignVector
    super: SignVector

    def __post_init__(self):
        if self.sub.n != self.super.n:
            raise ValueError(
                f"sub length {self.sub.n} != super length {self.super.n}"
            )

    @property
    def size(self) -> int:
        return self.sub.n + 1


@dataclass(frozen=True)
class PeriodicOperatorSpec:
    """Period-m operator on the doubly infinite line, stored by one period."""

    sub: SignVector
    super: SignVector

    def __post_init__(self):
        if self.sub.n != self.super.n:
            raise ValueError(
                f"sub length {self.sub.n} != super length {self.super.n}"
            )

    @property
    def period(self) -> int:
        return self.sub.n


def ones(n: int) -> SignVector:
    """All +1 pattern of length n."""
    return SignVector(n, 0)


def dense_matrix(t: TridiagSignMatrix) -> np.ndarray:
    """Dense float matrix for a finite tridiagonal sign matrix."""
    size = t.size
    a = np.zeros((size, size))
    sup = t.super.to_array()
    sub = t.sub.to_array()
    a[np.arange(size - 1), np.arange(1, size)] = sup
    a[np.arange(1, size), np.arange(size - 1)] = sub
    return a


def gauge_normalize_finite(k: SignVector, l: SignVector) -> SignVector:
    """Subdiagonal pattern after conjugating the super pattern to all ones.

    The conjugating diagonal is d_1 = 1, d_{i+1} = d_i * l_i (partial
    products of l), which is unitary since every l_i is +-1.  The
    superdiagonal becomes all ones and subdiagonal entry i becomes k_i * l_i,
    so the spectrum only depends on the products.
    """
    if k.n != l.n:
        raise ValueError(f"k length {k.n} != l length {l.n}")
    return SignVector(k.n, k.bits ^ l.bits)


def gauge_normalize_periodic(spec: PeriodicOperatorSpec) -> PeriodicOperatorSpec:
    """Normalize a periodic spec so the super pattern is all ones.

    When the product of the super entries over one period is +1 the same
    entrywise product rule as the finite case applies and the period is
    unchanged.  When the product is -1 the period is doubled first (both
    patterns repeated twice) so that a periodic +-1 gauge exists; the doubled
    spec describes the identical operator, merely listed with period 2m.
    """
    k, l = spec.sub, spec.super
    if l.product() == -1:
        k = k.doubled()
        l = l.doubled()
    ktilde = SignVector(k.n, k.bits ^ l.bits)
    return PeriodicOperatorSpec(ktilde, ones(k.n))


def ensure_even_parity(k: SignVector) -> SignVector:
    """Return k unchanged if its -1 count is even, else k repeated twice.

    Repeating the period leaves the periodic operator untouched and makes the
    sign product +1, which is what turns the symbol determinant into a real
    2 cos(phi) target.
    """
    if k.minus_count() & 1:
        return k.doubled()
    return k


def all_sign_vectors(n: int) -> Iterator[SignVector]:
    """All 2^n sign patterns of length n, in increasing bit-mask order."""
    for bits in range(1 << n):
        yield SignVector(n, bits)

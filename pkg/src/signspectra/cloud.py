"""Tagged point clouds in the complex plane.

Clouds are finite multisets: duplicate coordinates are kept, every point
carries exactly one provenance tag (which pattern, which angle, which
truncation size produced it).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = ["CloudPoint", "SpectrumCloud"]


@dataclass(frozen=True)
class CloudPoint:
    re: float
    im: float
    tag: str

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


class SpectrumCloud:
    """Immutable multiset of tagged complex points."""

    __slots__ = ("_points", "warnings")

    def __init__(self, points: Iterable[CloudPoint] = (), warnings: Sequence[str] = ()):
        self._points = tuple(points)
        self.warnings = tuple(warnings)

    @classmethod
    def from_values(cls, values, tag) -> "SpectrumCloud":
        """Build from complex values; ``tag`` is one string or one per value."""
        vals = np.asarray(values, dtype=complex).ravel()
        if isinstance(tag, str):
            tags = [tag] * vals.size
        else:
            tags = list(tag)
            if len(tags) != vals.size:
                raise ValueError(f"{len(tags)} tags for {vals.size} values")
        return cls(
            CloudPoint(float(v.real), float(v.imag), t) for v, t in zip(vals, tags)
        )

    @property
    def points(self) -> tuple[CloudPoint, ...]:
        return self._points

    def values(self) -> np.ndarray:
        return np.array([p.value for p in self._points], dtype=complex)

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[CloudPoint]:
        return iter(self._points)

    def __bool__(self) -> bool:
        return bool(self._points)

    def merged(self, *others: "SpectrumCloud") -> "SpectrumCloud":
        pts = list(self._points)
        warns = list(self.warnings)
        for o in others:
            pts.extend(o.points)
            warns.extend(o.warnings)
        return SpectrumCloud(pts, warns)

    def sorted(self) -> "SpectrumCloud":
        """Deterministic ordering by (re, im, tag)."""
        return SpectrumCloud(
            tuple(sorted(self._points, key=lambda p: (p.re, p.im, p.tag))),
            self.warnings,
        )

    def snapped(self, cell: float = 1e-6) -> "SpectrumCloud":
        """Grid-snap dedup for plotting: one point per occupied cell.

        The representative of a cell is its lexicographically smallest
        (re, im, tag) member, so the result is deterministic.
        """
        if cell <= 0:
            raise ValueError("cell must be positive")
        best: dict[tuple[int, int], CloudPoint] = {}
        for p in sorted(self._points, key=lambda p: (p.re, p.im, p.tag)):
            key = (int(round(p.re / cell)), int(round(p.im / cell)))
            best.setdefault(key, p)
        return SpectrumCloud(
            tuple(sorted(best.values(), key=lambda p: (p.re, p.im, p.tag))),
            self.warnings,
        )

    def __repr__(self) -> str:
        return f"SpectrumCloud({len(self._points)} points)"

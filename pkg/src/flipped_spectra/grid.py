"""Ordered sample points on an interval."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PROVENANCES = ("closed_form", "root_found", "numeric")


@dataclass(frozen=True)
class Grid:
    """Ascending points in ``interval``.

    Attributes
    ----------
    points : ndarray
        Non-decreasing sample points, read-only.
    interval : tuple of float
        The enclosing interval ``(a, b)``.
    provenance : str
        One of ``closed_form``, ``root_found`` or ``numeric``.
    """

    points: np.ndarray
    interval: tuple = (0.0, np.pi)
    provenance: str = "closed_form"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        a, b = (float(x) for x in self.interval)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("a grid needs a nonempty 1-d set of points")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        slack = 1e-12 * max(1.0, abs(a), abs(b))
        if pts[0] < a - slack or pts[-1] > b + slack or np.any(np.diff(pts) < -slack):
            raise ValueError("grid points must be ascending inside the interval")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "interval", (a, b))

    def __len__(self):
        return self.points.size

    @classmethod
    def uniform(cls, n: int, interval=(0.0, np.pi)) -> "Grid":
        """The grid ``a + j (b - a) / (n + 1)``, ``j = 1..n``."""
        a, b = interval
        j = np.arange(1, n + 1)
        return cls(a + j * (b - a) / (n + 1), (a, b), "closed_form")


def au_deviation(g: Grid) -> float:
    """Maximum distance from the reference uniform grid ``a + j (b - a) / n``."""
    a, b = g.interval
    n = len(g)
    ref = a + np.arange(1, n + 1) * (b - a) / n
    return float(np.max(np.abs(g.points - ref)))

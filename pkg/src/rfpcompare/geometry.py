"""Coverage-layout geometry: regular cell shapes, their exact constants, and a
Monte Carlo re-derivation of the mean site-to-point distance.

All cells are normalized to a maximum (center-to-vertex) distance of 1 and are
centered on the site. Conventions, fixed once so every module agrees:

- highway: the 1-D segment [-1, 1] embedded in the plane at ordinate 0;
- square: axis-aligned with vertices on the diagonals at distance 1,
  i.e. half-side 1/sqrt(2);
- hexagonal: flat-topped regular hexagon with a vertex at (1, 0)
  (edge midpoints at angles 30 + k*60 degrees);
- circle: the unit disc, used only as the upper-bound reference for alpha.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import NoTessellationError

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)


class LayoutKind(str, Enum):
    """The supported coverage-cell shapes."""

    HIGHWAY = "highway"
    SQUARE = "square"
    HEXAGONAL = "hexagonal"
    CIRCLE = "circle"


#: Kinds that tile the plane (the circle is a reference shape only).
TESSELLATING_KINDS = (LayoutKind.HIGHWAY, LayoutKind.SQUARE, LayoutKind.HEXAGONAL)


def layout_alpha(kind: LayoutKind) -> float:
    """Mean distance from the site to a uniform point of the unit cell.

    Evaluated from the exact closed forms, never from rounded decimals.
    """
    kind = LayoutKind(kind)
    if kind is LayoutKind.HIGHWAY:
        return 0.5
    if kind is LayoutKind.SQUARE:
        return _SQRT2 / 6.0 * (_SQRT2 + math.log(1.0 + _SQRT2))
    if kind is LayoutKind.HEXAGONAL:
        return 1.0 / 3.0 + math.log(3.0) / 4.0
    return 2.0 / 3.0  # circle


def layout_zeta(kind: LayoutKind) -> float:
    """Overlap parameter: half the inter-site distance in units of d_max.

    Set so adjacent cells leave no coverage hole (the cell inradius).
    """
    kind = LayoutKind(kind)
    if kind is LayoutKind.HIGHWAY:
        return 1.0
    if kind is LayoutKind.SQUARE:
        return 1.0 / _SQRT2
    if kind is LayoutKind.HEXAGONAL:
        return _SQRT3 / 2.0
    raise NoTessellationError("the circle layout does not tessellate: zeta is undefined")


def layout_neighbor_count(kind: LayoutKind) -> int:
    """Number of adjacent sites charged in the neighbor upper bound."""
    kind = LayoutKind(kind)
    if kind is LayoutKind.HIGHWAY:
        return 2
    if kind is LayoutKind.SQUARE:
        return 8
    if kind is LayoutKind.HEXAGONAL:
        return 6
    raise NoTessellationError(
        "the circle layout does not tessellate: neighbor count is undefined"
    )


class Layout:
    """Immutable bundle of the geometry constants for one layout kind.

    ``alpha`` is always defined; ``zeta`` and ``n_neighbors`` raise
    :class:`NoTessellationError` for the circle.
    """

    __slots__ = ("_kind",)

    def __init__(self, kind: LayoutKind) -> None:
        self._kind = LayoutKind(kind)

    @property
    def kind(self) -> LayoutKind:
        return self._kind

    @property
    def alpha(self) -> float:
        return layout_alpha(self._kind)

    @property
    def zeta(self) -> float:
        return layout_zeta(self._kind)

    @property
    def n_neighbors(self) -> int:
        return layout_neighbor_count(self._kind)

    @property
    def tessellates(self) -> bool:
        return self._kind in TESSELLATING_KINDS

    def __repr__(self) -> str:
        return f"Layout({self._kind.value!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Layout):
            return NotImplemented
        return self._kind is other._kind

    def __hash__(self) -> int:
        return hash(self._kind)


def contains_mask(kind: LayoutKind, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vectorized membership test for the unit cell (boundary included)."""
    kind = LayoutKind(kind)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if kind is LayoutKind.HIGHWAY:
        # 1-D segment: points off the axis are outside by definition.
        return (y == 0.0) & (np.abs(x) <= 1.0)
    if kind is LayoutKind.SQUARE:
        half = 1.0 / _SQRT2
        return (np.abs(x) <= half) & (np.abs(y) <= half)
    if kind is LayoutKind.HEXAGONAL:
        # Flat-topped hexagon, vertex at (1, 0): three pairs of parallel edges.
        return (
            (np.abs(y) <= _SQRT3 / 2.0)
            & (np.abs(_SQRT3 * x + y) <= _SQRT3)
            & (np.abs(_SQRT3 * x - y) <= _SQRT3)
        )
    return x * x + y * y <= 1.0  # circle


def cell_contains(kind: LayoutKind, point: tuple[float, float]) -> bool:
    """True iff ``point`` (in units of d_max, site at the origin) lies in the cell."""
    x, y = point
    return bool(contains_mask(kind, np.float64(x), np.float64(y)))


#: Tight bounding box ((x_lo, x_hi), (y_lo, y_hi)) of each unit cell.
_BOUNDING_BOX = {
    LayoutKind.SQUARE: ((-1.0 / _SQRT2, 1.0 / _SQRT2), (-1.0 / _SQRT2, 1.0 / _SQRT2)),
    LayoutKind.HEXAGONAL: ((-1.0, 1.0), (-_SQRT3 / 2.0, _SQRT3 / 2.0)),
    LayoutKind.CIRCLE: ((-1.0, 1.0), (-1.0, 1.0)),
}

_MC_CHUNK = 1 << 20  # candidate points drawn per rejection round


def estimate_alpha_monte_carlo(
    kind: LayoutKind, n_samples: int, seed: int
) -> tuple[float, float]:
    """Estimate alpha by uniform sampling of the unit cell.

    Draws exactly ``n_samples`` accepted points (rejection sampling from the
    tight bounding box; for the highway, directly uniform on [-1, 1]), and
    returns the sample mean distance to the origin together with its standard
    error. Uses numpy's seeded PCG64 generator, so a fixed seed reproduces the
    estimate bit-for-bit on a given platform.
    """
    kind = LayoutKind(kind)
    if n_samples < 1000:
        raise ValueError(f"n_samples must be >= 1000, got {n_samples}")
    rng = np.random.default_rng(seed)

    if kind is LayoutKind.HIGHWAY:
        d = np.abs(rng.uniform(-1.0, 1.0, n_samples))
    else:
        (x_lo, x_hi), (y_lo, y_hi) = _BOUNDING_BOX[kind]
        d = np.empty(n_samples)
        filled = 0
        while filled < n_samples:
            m = min(_MC_CHUNK, max(2 * (n_samples - filled), 4096))
            x = rng.uniform(x_lo, x_hi, m)
            y = rng.uniform(y_lo, y_hi, m)
            keep = contains_mask(kind, x, y)
            take = min(int(keep.sum()), n_samples - filled)
            d[filled : filled + take] = np.hypot(x[keep][:take], y[keep][:take])
            filled += take

    estimate = float(d.mean())
    stderr = float(d.std(ddof=1) / math.sqrt(n_samples))
    return estimate, stderr

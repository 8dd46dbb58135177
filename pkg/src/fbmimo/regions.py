"""
Two-dimensional rate-region algebra.

The workhorse is :class:`TriBoundRegion`, the polytope
``{R1, R2 >= 0 : R1 <= b1, R2 <= b2, R1 + R2 <= b12}``. General convex
polygons (hulls over many such regions) are :class:`ConvexRegion2D`.
All quantities are in bits.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

__all__ = [
    "RegionError",
    "COLLINEAR_TOL",
    "CONTAIN_TOL",
    "TriBoundRegion",
    "Rect",
    "ConvexRegion2D",
    "tighten",
    "oplus",
    "ominus",
    "contains",
    "hull_union",
    "per_constraint_gap",
    "scalar_gap",
    "to_csv",
    "read_csv",
]

COLLINEAR_TOL = 1e-12
CONTAIN_TOL = 1e-9


class RegionError(ValueError):
    """Invalid region input or a violated containment precondition."""


def _check_bound(name: str, v: float) -> float:
    v = float(v)
    if not np.isfinite(v):
        raise RegionError(f"{name} must be finite, got {v}")
    if v < 0:
        raise RegionError(f"{name} must be >= 0, got {v}")
    return v


@dataclass(frozen=True)
class TriBoundRegion:
    """Region cut out by ``R1 <= b1``, ``R2 <= b2``, ``R1 + R2 <= b12``.

    Instances are always canonical: redundant bounds are tightened on
    construction, so ``b1, b2 <= b12 <= b1 + b2``.
    """

    b1: float
    b2: float
    b12: float

    def __post_init__(self):
        b1 = _check_bound("b1", self.b1)
        b2 = _check_bound("b2", self.b2)
        b12 = _check_bound("b12", self.b12)
        b1 = min(b1, b12)
        b2 = min(b2, b12)
        b12 = min(b12, b1 + b2)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)
        object.__setattr__(self, "b12", b12)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.b1, self.b2, self.b12)

    def vertices(self) -> np.ndarray:
        """Counterclockwise vertices starting at the origin, deduplicated."""
        b1, b2, b12 = self.as_tuple()
        pts = [(0.0, 0.0), (b1, 0.0), (b1, b12 - b1), (b12 - b2, b2),
               (0.0, b2)]
        return _simplify(pts)

    def polygon(self) -> "ConvexRegion2D":
        return ConvexRegion2D(self.vertices())

    def member(self, r1: float, r2: float, tol: float = CONTAIN_TOL) -> bool:
        return (r1 >= -tol and r2 >= -tol and r1 <= self.b1 + tol
                and r2 <= self.b2 + tol and r1 + r2 <= self.b12 + tol)


@dataclass(frozen=True)
class Rect:
    """The rectangle ``[0, a] x [0, b]``."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _check_bound("a", self.a))
        object.__setattr__(self, "b", _check_bound("b", self.b))


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _simplify(pts: Sequence) -> np.ndarray:
    """Drop repeated and collinear points from a closed CCW vertex cycle."""
    out = []
    for p in pts:
        p = (float(p[0]), float(p[1]))
        if not out or (abs(p[0] - out[-1][0]) > COLLINEAR_TOL
                       or abs(p[1] - out[-1][1]) > COLLINEAR_TOL):
            out.append(p)
    while (len(out) > 1 and abs(out[0][0] - out[-1][0]) <= COLLINEAR_TOL
           and abs(out[0][1] - out[-1][1]) <= COLLINEAR_TOL):
        out.pop()
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(len(out)):
            prev, cur, nxt = out[i - 1], out[i], out[(i + 1) % len(out)]
            if abs(_cross(prev, cur, nxt)) <= COLLINEAR_TOL:
                del out[i]
                changed = True
                break
    return np.array(out, dtype=float).reshape(-1, 2)


class ConvexRegion2D:
    """Convex polygon in the nonnegative quadrant, vertices counterclockwise.

    Degenerate polygons (a single point or a segment) are allowed.
    """

    __slots__ = ("_v",)

    def __init__(self, vertices):
        v = np.array(vertices, dtype=float).reshape(-1, 2)
        if v.shape[0] == 0:
            raise RegionError("a region needs at least one vertex")
        if not np.all(np.isfinite(v)):
            raise RegionError("non-finite vertex")
        if np.any(v < -CONTAIN_TOL):
            raise RegionError("vertex outside the nonnegative quadrant")
        n = v.shape[0]
        if n >= 3:
            for i in range(n):
                if _cross(v[i - 1], v[i], v[(i + 1) % n]) < -COLLINEAR_TOL:
                    raise RegionError("vertices are not convex and CCW")
        v.setflags(write=False)
        self._v = v

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    def __len__(self):
        return self._v.shape[0]

    def __repr__(self):
        return f"ConvexRegion2D({self._v.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, ConvexRegion2D):
            return NotImplemented
        return np.array_equal(self._v, other._v)

    __hash__ = None

    def member(self, r1: float, r2: float, tol: float = CONTAIN_TOL) -> bool:
        """Point membership; points within ``tol`` of the polygon count."""
        p = np.array([r1, r2], dtype=float)
        v = self._v
        n = v.shape[0]
        if n >= 3:
            inside = True
            for i in range(n):
                a, b = v[i], v[(i + 1) % n]
                edge = b - a
                length = float(np.hypot(*edge))
                if _cross(a, b, p) < -tol * length:
                    inside = False
                    break
            if inside:
                return True
        return _dist_to_boundary(v, p) <= tol

    def member_many(self, pts, tol: float = CONTAIN_TOL) -> np.ndarray:
        """Vectorized :meth:`member` for an ``(k, 2)`` array of points."""
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        v = self._v
        n = v.shape[0]
        if n < 3:
            return np.array([self.member(x, y, tol) for x, y in pts], dtype=bool)
        ok = np.ones(pts.shape[0], dtype=bool)
        for i in range(n):
            a, b = v[i], v[(i + 1) % n]
            edge = b - a
            cr = edge[0] * (pts[:, 1] - a[1]) - edge[1] * (pts[:, 0] - a[0])
            ok &= cr >= -tol * float(np.hypot(*edge))
        return ok


def _dist_to_boundary(v: np.ndarray, p: np.ndarray) -> float:
    n = v.shape[0]
    if n == 1:
        return float(np.hypot(*(p - v[0])))
    best = np.inf
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        ab = b - a
        denom = float(ab @ ab)
        t = 0.0 if denom == 0 else min(1.0, max(0.0, float((p - a) @ ab) / denom))
        best = min(best, float(np.hypot(*(a + t * ab - p))))
    return best


def tighten(b1: float, b2: float, b12: float) -> TriBoundRegion:
    """Remove redundant bounds; rejects negative input."""
    return TriBoundRegion(b1, b2, b12)


def oplus(r: TriBoundRegion, rect: Rect) -> TriBoundRegion:
    """``r`` grown by a rectangle: points whose clamped shift lands in ``r``."""
    return tighten(r.b1 + rect.a, r.b2 + rect.b, r.b12 + rect.a + rect.b)


def ominus(r: TriBoundRegion, rect: Rect) -> TriBoundRegion:
    """Shrink ``r`` by a rectangle, clamping every bound at zero."""
    return tighten(max(r.b1 - rect.a, 0.0), max(r.b2 - rect.b, 0.0),
                   max(r.b12 - rect.a - rect.b, 0.0))


def _as_polygon(r) -> ConvexRegion2D:
    if isinstance(r, ConvexRegion2D):
        return r
    if isinstance(r, TriBoundRegion):
        return r.polygon()
    raise TypeError(f"not a region: {type(r).__name__}")


def contains(outer, inner, tol: float = CONTAIN_TOL) -> bool:
    """True iff every vertex of ``inner`` lies in ``outer`` within ``tol``."""
    return first_violation(outer, inner, tol) is None


def first_violation(outer, inner, tol: float = CONTAIN_TOL):
    """First vertex of ``inner`` outside ``outer``, or ``None``."""
    verts = _as_polygon(inner).vertices
    if isinstance(outer, TriBoundRegion):
        test = outer.member
    else:
        test = _as_polygon(outer).member
    for x, y in verts:
        if not test(x, y, tol):
            return (float(x), float(y))
    return None


def hull_union(regions: Iterable) -> ConvexRegion2D:
    """Convex hull of the union of regions, plus the origin (monotone chain)."""
    pts = [(0.0, 0.0)]
    count = 0
    for r in regions:
        count += 1
        pts.extend(map(tuple, _as_polygon(r).vertices))
    if count == 0:
        raise RegionError("hull_union needs at least one region")
    pts = sorted(set((float(x), float(y)) for x, y in pts))
    if len(pts) <= 2:
        return ConvexRegion2D(_simplify(pts))

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= COLLINEAR_TOL:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return ConvexRegion2D(_simplify(lower[:-1] + upper[:-1]))


class GapTriple(NamedTuple):
    g1: float
    g2: float
    g12: float


def per_constraint_gap(outer, inner, tol: float = CONTAIN_TOL) -> GapTriple:
    """Bound-by-bound differences ``outer - inner``.

    Accepts anything with ``b1``, ``b2``, ``b12`` attributes. A difference
    below ``-tol`` means ``inner`` is not inside ``outer`` and raises
    :class:`RegionError`.
    """
    g = GapTriple(outer.b1 - inner.b1, outer.b2 - inner.b2,
                  outer.b12 - inner.b12)
    if min(g) < -tol:
        raise RegionError(f"inner region is not contained in outer: gaps {g}")
    return g


def scalar_gap(outer, inner: TriBoundRegion) -> float:
    """Smallest ``b`` with ``outer`` inside ``inner`` grown by ``[0,b]^2``.

    Growing ``inner`` by a square of side ``b`` gives the region with
    bounds ``(b1 + b, b2 + b, b12 + 2b)``, so each outer vertex ``v``
    needs ``b >= max(v1 - b1, v2 - b2, (v1 + v2 - b12) / 2)``.
    """
    worst = 0.0
    for v1, v2 in _as_polygon(outer).vertices:
        worst = max(worst, v1 - inner.b1, v2 - inner.b2,
                    (v1 + v2 - inner.b12) / 2.0)
    return float(worst)


def to_csv(region) -> str:
    """Vertex list as CSV text with header ``r1,r2``; floats use repr."""
    buf = io.StringIO()
    buf.write("r1,r2\n")
    for x, y in _as_polygon(region).vertices:
        buf.write(f"{float(x)!r},{float(y)!r}\n")
    return buf.getvalue()


def read_csv(text: str) -> ConvexRegion2D:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["r1", "r2"]:
        raise RegionError("region CSV must start with header r1,r2")
    return ConvexRegion2D([[float(a), float(b)] for a, b in rows[1:]])

"""Newton polygon of a two-variable exponent set.

Exponent points are pairs (i, k) where i is the total degree in the space
frequency and k the degree in the spectral parameter.  The polygon is the
convex hull of the generating points together with their projections onto
the coordinate axes and the origin.  All geometry is done in exact rational
arithmetic so that side slopes can be ordered reliably.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedShapeError

INF = math.inf

Point = tuple[Fraction, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Side:
    """Non-axis side of the polygon.

    The exterior normal is (1, r); every polygon point (a, b) satisfies
    a + r*b <= d with equality on the side.  For a horizontal top side
    r is infinite and d is None (no finite support value).
    """

    r: Fraction | float
    d: Fraction | None
    start: Point
    end: Point

    @property
    def is_horizontal(self) -> bool:
        return self.r == INF


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex hull data: vertices clockwise from the origin, non-axis sides."""

    vertices: tuple[Point, ...]
    sides: tuple[Side, ...]
    degenerate: bool = False
    generators: tuple[tuple[int, int], ...] = field(default=())

    @property
    def i_max(self) -> Fraction:
        return max(v[0] for v in self.vertices)

    @property
    def k_max(self) -> Fraction:
        return max(v[1] for v in self.vertices)

    def contains(self, a, b) -> bool:
        a, b = Fraction(a), Fraction(b)
        if a < 0 or b < 0 or b > self.k_max or a > self.i_max:
            return False
        for s in self.sides:
            if not s.is_horizontal and a + s.r * b > s.d:
                return False
        return True

    def integer_points(self) -> list[tuple[int, int]]:
        """All lattice points inside or on the hull."""
        pts = []
        for k in range(int(self.k_max) + 1):
            bound = self.i_max
            for s in self.sides:
                if not s.is_horizontal:
                    bound = min(bound, s.d - s.r * k)
            if bound < 0:
                continue
            pts.extend((i, k) for i in range(int(bound) + 1))
        return pts

    def slopes(self) -> list[Fraction | float]:
        return [s.r for s in self.sides]


def build_polygon(points) -> NewtonPolygon:
    """Convex hull of the points, their axis projections and the origin.

    Raises UnsupportedShapeError if the hull has a (non-degenerate) vertical
    last side; such polygons are outside the supported calculus.
    """
    pts = set()
    for (i, k) in points:
        i, k = int(i), int(k)
        if i < 0 or k < 0:
            raise ValueError(f"exponent point ({i},{k}) has a negative entry")
        pts.add((Fraction(i), Fraction(k)))
        pts.add((Fraction(i), Fraction(0)))
        pts.add((Fraction(0), Fraction(k)))
    pts.add((Fraction(0), Fraction(0)))
    gens = tuple(sorted((int(i), int(k)) for (i, k) in points))

    i_max = max(p[0] for p in pts)
    k_max = max(p[1] for p in pts)

    # Degenerate shapes: single point or all generators on one axis.
    if i_max == 0 and k_max == 0:
        origin = (Fraction(0), Fraction(0))
        return NewtonPolygon((origin,), (), degenerate=True, generators=gens)
    if i_max == 0:
        verts = ((Fraction(0), Fraction(0)), (Fraction(0), k_max))
        return NewtonPolygon(verts, (), degenerate=True, generators=gens)
    if k_max == 0:
        verts = ((Fraction(0), Fraction(0)), (i_max, Fraction(0)))
        return NewtonPolygon(verts, (), degenerate=True, generators=gens)

    # Monotone chain, counterclockwise, collinear points dropped.
    sorted_pts = sorted(pts)
    lower: list[Point] = []
    for p in sorted_pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(sorted_pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull_ccw = lower[:-1] + upper[:-1]

    # Re-order clockwise starting at the origin.
    start = hull_ccw.index((Fraction(0), Fraction(0)))
    hull_cw = [hull_ccw[start]] + [hull_ccw[(start - t) % len(hull_ccw)]
                                   for t in range(1, len(hull_ccw))]

    # Walk clockwise from the top vertex (0, k_max) down to (i_max, 0);
    # those edges are the non-axis sides.
    top = hull_cw.index((Fraction(0), k_max))
    bottom = hull_cw.index((i_max, Fraction(0)))
    chain = hull_cw[top:bottom + 1]

    sides = []
    for u, v in zip(chain[:-1], chain[1:]):
        da, db = v[0] - u[0], u[1] - v[1]
        if db == 0:
            r: Fraction | float = INF
            d = None
        elif da == 0:
            raise UnsupportedShapeError(
                f"vertical side from {u} to {v}: last side must not be vertical")
        else:
            r = da / db
            d = u[0] + r * u[1]
        sides.append(Side(r=r, d=d, start=u, end=v))

    rs = [s.r for s in sides]
    if any(r2 >= r1 for r1, r2 in zip(rs[:-1], rs[1:])):
        raise UnsupportedShapeError(f"side slopes not strictly decreasing: {rs}")

    return NewtonPolygon(tuple(hull_cw), tuple(sides), degenerate=False,
                         generators=gens)


def r_degree(np_: NewtonPolygon, r):
    """Support value max(a + r*b) over the polygon.

    For finite r > 0 this is the r-degree, an exact rational.  For r = inf
    the support value is not finite; following the horizontal-side
    convention we return the pair (b1, a2): the maximal ordinate and the
    maximal abscissa among polygon points at that ordinate.
    """
    if r == INF:
        b1 = np_.k_max
        a2 = max((v[0] for v in np_.vertices if v[1] == b1), default=Fraction(0))
        return (b1, a2)
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive or infinite")
    return max(v[0] + r * v[1] for v in np_.vertices)


def principal_part(terms, r):
    """Terms of a coefficient table on the side of exterior normal (1, r).

    `terms` is a sequence of (alpha, k, coeff) with alpha a multi-index.
    Keeps exactly the terms with |alpha| + r*k maximal; for r = inf keeps
    the terms with maximal k and, among those, maximal |alpha|.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("empty coefficient table")
    if r == INF:
        b1 = max(k for (_, k, _) in terms)
        a2 = max(sum(alpha) for (alpha, k, _) in terms if k == b1)
        return [(alpha, k, c) for (alpha, k, c) in terms
                if k == b1 and sum(alpha) == a2]
    r = Fraction(r)
    degs = [Fraction(sum(alpha)) + r * k for (alpha, k, _) in terms]
    d = max(degs)
    return [t for t, dg in zip(terms, degs) if dg == d]

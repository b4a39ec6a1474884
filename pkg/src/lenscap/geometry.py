"""Exact integer/rational plane geometry on the standard lattice.

Everything here is computed with arbitrary-precision rationals; there is no
floating point anywhere.  Lattice-point counting is done by bounding-box scan
with exact point-in-polygon tests, so it is slow but trustworthy; Pick's
theorem is used as a cross-check in the test suite, never as the primary
method.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor, gcd
from typing import NamedTuple, Sequence, Union

Scalar = Union[int, Fraction]


class GeometryError(ValueError):
    """Invalid geometric input (inexact scalar, zero vector, bad polygon...)."""


def exact(value) -> Scalar:
    """Coerce to an exact scalar; floats are rejected, "p/q" strings parsed."""
    if isinstance(value, bool):
        raise GeometryError(f"not a scalar: {value!r}")
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise GeometryError(f"cannot parse exact scalar from {value!r}") from err
    raise GeometryError(f"inexact or unsupported scalar: {value!r}")


class Vec(NamedTuple):
    """A plane vector with exact (int or Fraction) coordinates."""

    x: Scalar
    y: Scalar

    def __add__(self, other):
        return Vec(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Vec(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Vec(-self.x, -self.y)

    def scale(self, r: Scalar) -> "Vec":
        return Vec(self.x * r, self.y * r)

    def is_lattice(self) -> bool:
        return Fraction(self.x).denominator == 1 and Fraction(self.y).denominator == 1

    def as_lattice(self) -> "Vec":
        if not self.is_lattice():
            raise GeometryError(f"not a lattice point: {self}")
        return Vec(int(self.x), int(self.y))


def vec(x, y) -> Vec:
    return Vec(exact(x), exact(y))


def cross(u, v) -> Scalar:
    """Cross product u.x*v.y - u.y*v.x, exact."""
    return u[0] * v[1] - u[1] * v[0]


def primitive_decompose(v: Vec) -> tuple[Vec, int]:
    """Split a nonzero integer vector into (primitive direction, multiplicity)."""
    v = Vec(*v).as_lattice()
    if v.x == 0 and v.y == 0:
        raise GeometryError("zero vector has no primitive decomposition")
    g = gcd(abs(v.x), abs(v.y))
    return Vec(v.x // g, v.y // g), g


def sl2_apply(matrix, v) -> Vec:
    """Apply a determinant-one integer matrix to a vector, exactly."""
    (a, b), (c, d) = matrix
    if a * d - b * c != 1:
        raise GeometryError(f"matrix {matrix!r} does not have determinant 1")
    return Vec(a * v[0] + b * v[1], c * v[0] + d * v[1])


def trivialization_vector(n: int, m: int) -> Vec:
    """Canonical v with (n,m) x v = 1.

    For m = 0 (so n = 1) this is (0,1).  Otherwise v1 is the smallest
    nonnegative solution of m*v1 = -1 (mod n) and v2 = (1 + m*v1)/n.
    """
    if gcd(n, m) != 1:
        raise GeometryError(f"({n},{m}) is not coprime")
    if m == 0:
        return Vec(0, 1)
    for v1 in range(n):
        if (1 + m * v1) % n == 0:
            return Vec(v1, (1 + m * v1) // n)
    raise GeometryError(f"no trivialization vector for ({n},{m})")  # unreachable


def segment_bbox_contains(p: Vec, a: Vec, b: Vec) -> bool:
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def point_on_segment(p, a, b) -> bool:
    """Exact test: p lies on the closed segment [a, b]."""
    p, a, b = Vec(*p), Vec(*a), Vec(*b)
    if cross(b - a, p - a) != 0:
        return False
    return segment_bbox_contains(p, a, b)


def _orient(a: Vec, b: Vec, c: Vec) -> int:
    v = cross(b - a, c - a)
    return (v > 0) - (v < 0)


def segments_touch(a: Vec, b: Vec, c: Vec, d: Vec) -> bool:
    """True iff closed segments [a,b] and [c,d] share at least one point."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and segment_bbox_contains(c, a, b):
        return True
    if o2 == 0 and segment_bbox_contains(d, a, b):
        return True
    if o3 == 0 and segment_bbox_contains(a, c, d):
        return True
    if o4 == 0 and segment_bbox_contains(b, c, d):
        return True
    return False


def normalize_polygon(vertices: Sequence) -> list[Vec]:
    verts = [vec(*v) for v in vertices]
    if len(verts) < 2:
        raise GeometryError("polygon needs at least two vertices")
    for v, w in zip(verts, verts[1:] + verts[:1]):
        if v == w:
            raise GeometryError(f"repeated consecutive vertex {v}")
    return verts


def polygon_area(vertices: Sequence) -> Fraction:
    """Signed shoelace area; positive for counterclockwise orientation."""
    verts = normalize_polygon(vertices)
    total = sum(cross(v, w) for v, w in zip(verts, verts[1:] + verts[:1]))
    return Fraction(total, 2)


def is_degenerate_polygon(vertices: Sequence) -> bool:
    """A flat vertex chain: fewer than three vertices, or all collinear."""
    verts = normalize_polygon(vertices)
    if len(verts) < 3:
        return True
    base = verts[1] - verts[0]
    return all(cross(base, v - verts[0]) == 0 for v in verts[2:])


def is_simple_polygon(vertices: Sequence) -> bool:
    """Exact simplicity test: non-adjacent edges disjoint, adjacent edges
    meeting only at the shared vertex."""
    verts = normalize_polygon(vertices)
    k = len(verts)
    if k < 3:
        return False
    edges = [(verts[i], verts[(i + 1) % k]) for i in range(k)]
    for i in range(k):
        a, b = edges[i]
        for j in range(i + 1, k):
            c, d = edges[j]
            adjacent = (j == i + 1) or (i == 0 and j == k - 1)
            if adjacent:
                shared = b if j == i + 1 else a
                other_i = a if j == i + 1 else b
                other_j = d if j == i + 1 else c
                # collinear backtracking would overlap beyond the shared vertex
                if cross(other_i - shared, other_j - shared) == 0 and (
                    point_on_segment(other_i, shared, other_j)
                    or point_on_segment(other_j, shared, other_i)
                ):
                    return False
            elif segments_touch(a, b, c, d):
                return False
    return True


def point_in_polygon(p, vertices: Sequence) -> bool:
    """Closed-region membership (boundary counts as inside), exact."""
    p = vec(*p)
    verts = normalize_polygon(vertices)
    k = len(verts)
    for i in range(k):
        if point_on_segment(p, verts[i], verts[(i + 1) % k]):
            return True
    crossings = 0
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        if (a.y > p.y) != (b.y > p.y):
            x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x_int > p.x:
                crossings += 1
    return crossings % 2 == 1


def lattice_points_in_polygon(
    vertices: Sequence, excluded_arcs: Sequence = ()
) -> tuple[int, list[Vec]]:
    """Lattice points of the closed polygon, minus those on any excluded arc.

    The polygon must be simple (a zero-area vertex chain is allowed and is
    treated as the union of its segments).  Returns (count, points) with the
    points in lexicographic order.
    """
    verts = normalize_polygon(vertices)
    arcs = [(vec(*a), vec(*b)) for a, b in excluded_arcs]

    def excluded(p: Vec) -> bool:
        return any(point_on_segment(p, a, b) for a, b in arcs)

    points: list[Vec] = []
    if is_degenerate_polygon(verts):
        closing = verts[1:] + ([verts[0]] if len(verts) > 2 else [])
        segs = list(zip(verts, closing)) if len(verts) > 2 else [(verts[0], verts[1])]
        seen = set()
        for a, b in segs:
            for p in lattice_points_on_segment(a, b):
                if p not in seen and not excluded(p):
                    seen.add(p)
                    points.append(p)
        points.sort()
        return len(points), points

    if not is_simple_polygon(verts):
        raise GeometryError("polygon is not simple")

    xs = [Fraction(v.x) for v in verts]
    ys = [Fraction(v.y) for v in verts]
    for x in range(ceil(min(xs)), floor(max(xs)) + 1):
        for y in range(ceil(min(ys)), floor(max(ys)) + 1):
            p = Vec(x, y)
            if point_in_polygon(p, verts) and not excluded(p):
                points.append(p)
    points.sort()
    return len(points), points


def lattice_points_on_segment(a, b) -> list[Vec]:
    """All lattice points on the closed segment [a, b] (rational endpoints)."""
    a, b = vec(*a), vec(*b)
    if a == b:
        return [a] if a.is_lattice() else []
    d = b - a
    pts = []
    if d.x == 0:
        if Fraction(a.x).denominator != 1:
            return []
        lo, hi = min(a.y, b.y), max(a.y, b.y)
        for y in range(ceil(Fraction(lo)), floor(Fraction(hi)) + 1):
            pts.append(Vec(int(a.x), y))
        return pts
    lo, hi = min(a.x, b.x), max(a.x, b.x)
    for x in range(ceil(Fraction(lo)), floor(Fraction(hi)) + 1):
        y = a.y + (x - a.x) * d.y / d.x
        if Fraction(y).denominator == 1:
            pts.append(Vec(x, int(y)))
    return pts

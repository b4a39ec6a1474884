"""Rational concave toric domains in the singular cone spanned by (n,m) and (0,1).

A domain is described by its outer boundary: a rational polygonal line from a
point on the open ray {t(n,m) : t>0} to a point on the open positive y-axis,
concave in the sense that the region above it in the cone is convex.  The
frame (1,0) is the classical quadrant case.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .geometry import Scalar, Vec, cross, exact, vec


class DomainError(ValueError):
    """Domain data violates a structural or geometric invariant."""


class SchemaError(DomainError):
    """A domain document does not match the file schema."""


@dataclass(frozen=True)
class Frame:
    """The pair (n,m) naming the cone and the lens space it bounds."""

    n: int
    m: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.m, int)):
            raise DomainError("frame entries must be integers")
        if self.n < 1 or self.m < 0:
            raise DomainError(f"frame ({self.n},{self.m}) out of range")
        if gcd(self.n, self.m) != 1:
            raise DomainError(f"frame ({self.n},{self.m}) is not coprime")
        if self.m == 0 and self.n != 1:
            raise DomainError("m = 0 is only allowed as the quadrant frame (1,0)")

    @property
    def ray(self) -> Vec:
        return Vec(self.n, self.m)

    def in_open_cone(self, p) -> bool:
        return p[0] > 0 and self.n * p[1] - self.m * p[0] > 0

    def is_valid_edge_direction(self, u) -> bool:
        """Directions strictly between -(n,m) and (0,1)."""
        return u[0] < 0 and self.n * u[1] - self.m * u[0] > 0


@dataclass(frozen=True)
class Domain:
    """A validated concave toric domain: frame plus boundary vertices ray->axis."""

    frame: Frame
    vertices: tuple[Vec, ...]


def _on_open_ray(frame: Frame, p: Vec) -> bool:
    if frame.m == 0:
        return p.y == 0 and p.x > 0
    return p.x * frame.m == p.y * frame.n and p.x > 0


def validate_domain(domain) -> Domain:
    """Check all invariants and return the normalized domain.

    Collinear interior vertices are merged so structural equality is
    meaningful.  The first violated invariant is reported.
    """
    if isinstance(domain, Domain):
        frame, raw = domain.frame, domain.vertices
    else:
        frame, raw = domain
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    try:
        verts = [vec(*v) for v in raw]
    except Exception as err:
        raise DomainError(f"irrational or malformed vertex: {err}") from err
    if len(verts) < 2:
        raise DomainError("boundary needs at least two vertices")
    for v, w in zip(verts, verts[1:]):
        if v == w:
            raise DomainError(f"repeated consecutive vertex {v}")
    if not _on_open_ray(frame, verts[0]):
        raise DomainError(f"first vertex {verts[0]} is not on the open ray")
    if not (verts[-1].x == 0 and verts[-1].y > 0):
        raise DomainError(f"last vertex {verts[-1]} is not on the open positive y-axis")
    for v in verts[1:-1]:
        if not frame.in_open_cone(v):
            raise DomainError(f"interior vertex {v} is not strictly inside the cone")
    edges = [w - v for v, w in zip(verts, verts[1:])]
    for u in edges:
        if not frame.is_valid_edge_direction(u):
            raise DomainError(f"edge direction {u} is outside the allowed fan")
    # merge collinear interior vertices
    merged = [verts[0]]
    for i, v in enumerate(verts[1:-1], start=1):
        u_in = v - merged[-1]
        u_out = verts[i + 1] - v
        if cross(u_in, u_out) != 0:
            merged.append(v)
    merged.append(verts[-1])
    edges = [w - v for v, w in zip(merged, merged[1:])]
    for u1, u2 in zip(edges, edges[1:]):
        if cross(u1, u2) >= 0:
            raise DomainError(f"convex turn between edges {u1} and {u2}")
    return Domain(frame, tuple(merged))


def make_singular_ellipsoid(frame, a, b) -> Domain:
    """The domain over the triangle with apexes (a/m)(n,m) and (0,b/m).

    For the quadrant frame (1,0) this is the classical ellipsoid region with
    intercepts (a,0) and (0,b).
    """
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    a, b = exact(a), exact(b)
    if a <= 0 or b <= 0:
        raise DomainError("ellipsoid periods must be positive")
    if frame.m == 0:
        return validate_domain(Domain(frame, (vec(a, 0), vec(0, b))))
    ray_end = frame.ray.scale(Fraction(a, 1) / frame.m)
    axis_end = vec(0, Fraction(b, 1) / frame.m)
    return validate_domain(Domain(frame, (ray_end, axis_end)))


def support_value(domain: Domain, w) -> tuple[Scalar, Vec]:
    """Minimum of cross(w, p) over the boundary vertices, with its minimizer.

    w must point from the axis toward the ray (positive x-component).  Ties
    are broken toward the ray endpoint.  This value is the action of the Reeb
    orbit whose direction is -w.
    """
    w = vec(*w)
    if w.x <= 0:
        raise DomainError(f"support direction {w} must have positive x-component")
    best_value, best_point = None, None
    for p in domain.vertices:
        value = cross(w, p)
        if best_value is None or value < best_value:
            best_value, best_point = value, p
    return best_value, best_point


def scale_domain(domain: Domain, r) -> Domain:
    r = exact(r)
    if r <= 0:
        raise DomainError("scale factor must be positive")
    return Domain(domain.frame, tuple(v.scale(r) for v in domain.vertices))


def domain_height(domain: Domain, x) -> Fraction:
    """Height of the outer boundary over x, for 0 <= x <= ray-endpoint x."""
    x = Fraction(exact(x))
    verts = list(reversed(domain.vertices))  # increasing x
    if not (0 <= x <= verts[-1].x):
        raise DomainError(f"x={x} outside the boundary span")
    for v, w in zip(verts, verts[1:]):
        if v.x <= x <= w.x:
            return Fraction(v.y) + (x - v.x) * (w.y - v.y) / (w.x - v.x)
    raise DomainError("unreachable")


def domain_contains(outer: Domain, inner: Domain) -> bool:
    """Exact region containment for two domains in the same frame."""
    if outer.frame != inner.frame:
        raise DomainError("frames differ")
    if inner.vertices[0].x > outer.vertices[0].x:
        return False
    xs = {Fraction(v.x) for v in inner.vertices}
    xs.update(Fraction(v.x) for v in outer.vertices if v.x <= inner.vertices[0].x)
    return all(domain_height(inner, x) <= domain_height(outer, x) for x in xs)


def _encode_scalar(value: Scalar):
    f = Fraction(value)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def encode_domain(domain: Domain) -> str:
    """Serialize to the canonical domain document (byte-stable)."""
    doc = {
        "n": domain.frame.n,
        "m": domain.frame.m,
        "boundary": [[_encode_scalar(v.x), _encode_scalar(v.y)] for v in domain.vertices],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _decode_scalar(raw, path: str) -> Scalar:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise SchemaError(f"{path}: expected integer or 'p/q' string, got {raw!r}")
    try:
        return exact(raw)
    except Exception as err:
        raise SchemaError(f"{path}: {err}") from err


def decode_domain(text: str) -> Domain:
    """Parse and validate a domain document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"document is not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise SchemaError("document root must be an object")
    unknown = set(doc) - {"n", "m", "boundary"}
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")
    for field in ("n", "m", "boundary"):
        if field not in doc:
            raise SchemaError(f"{field}: missing")
    if isinstance(doc["n"], bool) or not isinstance(doc["n"], int):
        raise SchemaError("n: expected integer")
    if isinstance(doc["m"], bool) or not isinstance(doc["m"], int):
        raise SchemaError("m: expected integer")
    try:
        frame = Frame(doc["n"], doc["m"])
    except DomainError as err:
        raise SchemaError(f"n/m: {err}") from err
    if not isinstance(doc["boundary"], list):
        raise SchemaError("boundary: expected array")
    verts = []
    for i, entry in enumerate(doc["boundary"]):
        if not isinstance(entry, list) or len(entry) != 2:
            raise SchemaError(f"boundary[{i}]: expected a 2-element array")
        verts.append(
            Vec(
                _decode_scalar(entry[0], f"boundary[{i}][0]"),
                _decode_scalar(entry[1], f"boundary[{i}][1]"),
            )
        )
    return validate_domain(Domain(frame, tuple(verts)))


def check_capacity_sequence(values) -> tuple[Scalar, ...]:
    """Assert the capacity-sequence invariants: starts at 0, nondecreasing."""
    values = tuple(exact(v) for v in values)
    if not values or values[0] != 0:
        raise DomainError("capacity sequence must start at 0")
    for a, b in zip(values, values[1:]):
        if b < a:
            raise DomainError("capacity sequence must be nondecreasing")
    return values

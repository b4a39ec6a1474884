"""Concave lattice paths in the cone: validation, counting, length, enumeration.

A path runs from s*(n,m) on the ray to (0,t) on the y-axis, stored as runs
(primitive direction, multiplicity) traversed ray->axis.  Every direction
points strictly between -(n,m) and (0,1), and consecutive directions turn
strictly so the region above the path is convex.  The empty path (s = 0, no
edges) is the distinguished trivial generator.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .domains import Domain, Frame, support_value
from .geometry import Vec, cross, lattice_points_in_polygon

DEFAULT_COUNT_BOUND = 20


class PathError(ValueError):
    """A concave-path invariant is violated."""


class EnumerationBoundError(RuntimeError):
    """A requested lattice count exceeds the configured enumeration bound."""


@dataclass(frozen=True)
class ConcavePath:
    frame: Frame
    start_multiple: int
    edges: tuple[tuple[Vec, int], ...]

    @property
    def is_empty(self) -> bool:
        return self.start_multiple == 0 and not self.edges

    @property
    def start(self) -> Vec:
        return self.frame.ray.scale(self.start_multiple)

    @property
    def end(self) -> Vec:
        p = self.start
        for d, mult in self.edges:
            p = p + d.scale(mult)
        return p

    @property
    def end_height(self) -> int:
        return int(self.end.y)

    def vertices(self) -> list[Vec]:
        """Run breakpoints, endpoints included; empty list for the empty path."""
        if self.is_empty:
            return []
        pts = [self.start]
        for d, mult in self.edges:
            pts.append(pts[-1] + d.scale(mult))
        return pts

    def step_points(self) -> list[Vec]:
        """Every lattice point along the path, one primitive step at a time."""
        if self.is_empty:
            return []
        pts = [self.start]
        for d, mult in self.edges:
            for _ in range(mult):
                pts.append(pts[-1] + d)
        return pts


def empty_path(frame) -> ConcavePath:
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    return ConcavePath(frame, 0, ())


def validate_path(path: ConcavePath) -> ConcavePath:
    frame = path.frame if isinstance(path.frame, Frame) else Frame(*path.frame)
    s = path.start_multiple
    if not isinstance(s, int) or s < 0:
        raise PathError("start multiple must be a nonnegative integer")
    edges = tuple((Vec(*d).as_lattice(), mult) for d, mult in path.edges)
    if s == 0:
        if edges:
            raise PathError("a path through the origin must be the empty path")
        return ConcavePath(frame, 0, ())
    for d, mult in edges:
        if not (isinstance(mult, int) and mult >= 1):
            raise PathError(f"multiplicity {mult!r} must be a positive integer")
        if gcd(abs(d.x), abs(d.y)) != 1:
            raise PathError(f"direction {d} is not primitive")
        if not frame.is_valid_edge_direction(d):
            raise PathError(f"direction {d} is outside the allowed fan")
    for (d1, _), (d2, _) in zip(edges, edges[1:]):
        if d1 == d2:
            raise PathError(f"consecutive runs share direction {d1}")
        if cross(d1, d2) >= 0:
            raise PathError(f"convex turn from {d1} to {d2}")
    norm = ConcavePath(frame, s, edges)
    end = norm.end
    if end.x != 0:
        raise PathError(f"path ends at {end}, not on the y-axis")
    if end.y < 1:
        raise PathError(f"non-empty path must end at height >= 1, got {end.y}")
    return norm


def region_polygon(path: ConcavePath) -> list[Vec]:
    """The compact region bounded by the path, the ray, and the y-axis (ccw)."""
    if path.is_empty:
        raise PathError("the empty path bounds no region")
    return [Vec(0, 0)] + path.vertices()


@functools.lru_cache(maxsize=None)
def lattice_points(path: ConcavePath) -> tuple[Vec, ...]:
    """Lattice points counted by the path: points of its region not on the path.

    Points on the ray and axis segments (including the origin) do count.
    """
    validate_path(path)
    if path.is_empty:
        return ()
    poly = region_polygon(path)
    verts = path.vertices()
    arcs = list(zip(verts, verts[1:]))
    _, pts = lattice_points_in_polygon(poly, arcs)
    return tuple(pts)


def lattice_count(path: ConcavePath) -> int:
    return len(lattice_points(path))


def omega_length(domain: Domain, path: ConcavePath):
    """Total action of the path against the domain boundary.

    Each run contributes multiplicity times the support value of the flipped
    direction; the support point is the boundary point whose tangent fan
    contains the run direction.
    """
    if domain.frame != path.frame:
        raise PathError(f"frame mismatch: {domain.frame} vs {path.frame}")
    validate_path(path)
    total = Fraction(0)
    for d, mult in path.edges:
        value, _ = support_value(domain, Vec(-d.x, -d.y))
        total += mult * value
    return total


def _direction_candidates(frame: Frame, max_dx: int, min_dy: int, max_dy: int) -> list[Vec]:
    dirs = []
    for p in range(-max_dx, 0):
        for q in range(min_dy, max_dy + 1):
            d = Vec(p, q)
            if gcd(abs(p), abs(q)) == 1 and frame.is_valid_edge_direction(d):
                dirs.append(d)
    # fan order, ray side first: d1 precedes d2 iff cross(d1, d2) < 0
    dirs.sort(key=functools.cmp_to_key(lambda u, v: -1 if cross(u, v) < 0 else 1))
    return dirs


def _paths_between(frame: Frame, s: int, t: int) -> list[ConcavePath]:
    """All concave paths from s*(n,m) to (0,t); complete by hull confinement."""
    start = frame.ray.scale(s)
    goal = Vec(0, t)
    chord = goal - start
    origin_side = cross(chord, Vec(0, 0) - start)  # nonzero: t >= 1 is off the ray

    def in_triangle(p: Vec) -> bool:
        if p.x < 0 or frame.n * p.y - frame.m * p.x < 0:
            return False
        side = cross(chord, p - start)
        return side == 0 or (side > 0) == (origin_side > 0)
    dirs = _direction_candidates(frame, s * frame.n, -s * frame.m - 1, t + 1)
    found: list[ConcavePath] = []
    steps: list[Vec] = []

    def runs_from_steps() -> tuple[tuple[Vec, int], ...]:
        runs: list[tuple[Vec, int]] = []
        for d in steps:
            if runs and runs[-1][0] == d:
                runs[-1] = (d, runs[-1][1] + 1)
            else:
                runs.append((d, 1))
        return tuple(runs)

    def dfs(pos: Vec, dir_index: int) -> None:
        if pos == goal:
            found.append(ConcavePath(frame, s, runs_from_steps()))
            return
        if pos.x == 0:
            return
        for i in range(dir_index, len(dirs)):
            d = dirs[i]
            if steps and d != steps[-1] and cross(steps[-1], d) >= 0:
                continue
            nxt = pos + d
            if in_triangle(nxt):
                steps.append(d)
                dfs(nxt, i)
                steps.pop()

    dfs(start, 0)
    return found


@functools.lru_cache(maxsize=None)
def enumerate_paths(frame: Frame, count: int, bound: int = DEFAULT_COUNT_BOUND):
    """All concave paths with the given lattice count, canonically ordered.

    Complete because a non-empty path counts the origin, its s-1 interior ray
    points and its t-1 interior axis points, so s + t <= count + 1, and every
    path with those endpoints stays inside the triangle spanned by them.
    """
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    if count < 0:
        raise PathError("lattice count must be nonnegative")
    if count > bound:
        raise EnumerationBoundError(f"lattice count {count} exceeds bound {bound}")
    if count == 0:
        return (empty_path(frame),)
    result = []
    for s in range(1, count + 1):
        for t in range(1, count + 2 - s):
            for path in _paths_between(frame, s, t):
                if lattice_count(path) == count:
                    result.append(path)
    result.sort(key=lambda p: (p.start_multiple, p.end_height, p.edges))
    return tuple(result)


def capacity_by_paths(domain: Domain, k: int, bound: int = DEFAULT_COUNT_BOUND):
    """k-th capacity of the domain: maximal action over paths of count k."""
    if k == 0:
        return Fraction(0)
    candidates = enumerate_paths(domain.frame, k, bound)
    if not candidates:
        raise PathError(f"no paths with lattice count {k}")  # pragma: no cover
    return max(omega_length(domain, p) for p in candidates)


@dataclass(frozen=True)
class DecoratedPath:
    """A concave path with one 'e' or 'h' label per run.

    An 'h' on a run of multiplicity m stands for one hyperbolic orbit plus
    m-1 elliptic covers.
    """

    path: ConcavePath
    labels: tuple[str, ...]

    @property
    def h_count(self) -> int:
        return sum(1 for lab in self.labels if lab == "h")


def validate_decorated(decorated: DecoratedPath) -> DecoratedPath:
    path = validate_path(decorated.path)
    labels = tuple(decorated.labels)
    if len(labels) != len(path.edges):
        raise PathError("need exactly one label per edge run")
    for lab in labels:
        if lab not in ("e", "h"):
            raise PathError(f"label {lab!r} must be 'e' or 'h'")
    return DecoratedPath(path, labels)


def all_elliptic(path: ConcavePath) -> DecoratedPath:
    return DecoratedPath(path, ("e",) * len(path.edges))

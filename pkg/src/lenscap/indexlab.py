"""Geometric index apparatus: Conley-Zehnder numbers, rotation numbers, index
components, Fredholm index, partition conditions, and the singular-ellipsoid
index bijection.

Irrational rotation data is modeled exactly as a rational plus a signed
infinitesimal tilt, compared lexicographically, so floors and strict
line-sidedness are well defined without real arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .domains import Frame
from .geometry import GeometryError, Vec, cross, exact
from .paths import lattice_count, validate_decorated


class TiltTieError(ValueError):
    """An exact tie occurred where a tilt was required to break it."""


@dataclass(frozen=True, order=False)
class Tilted:
    """value + eps * (positive infinitesimal); compared lexicographically."""

    value: Fraction
    eps: Fraction = Fraction(0)

    def _coerce(self, other) -> "Tilted":
        if isinstance(other, Tilted):
            return other
        return Tilted(Fraction(exact(other)))

    def __add__(self, other):
        other = self._coerce(other)
        return Tilted(self.value + other.value, self.eps + other.eps)

    def __sub__(self, other):
        other = self._coerce(other)
        return Tilted(self.value - other.value, self.eps - other.eps)

    def __mul__(self, scalar):
        scalar = Fraction(exact(scalar))
        return Tilted(self.value * scalar, self.eps * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return Tilted(-self.value, -self.eps)

    def _key(self):
        return (self.value, self.eps)

    def __lt__(self, other):
        return self._key() < self._coerce(other)._key()

    def __le__(self, other):
        return self._key() <= self._coerce(other)._key()

    def __gt__(self, other):
        return self._key() > self._coerce(other)._key()

    def __ge__(self, other):
        return self._key() >= self._coerce(other)._key()

    def __floor__(self) -> int:
        if self.value.denominator == 1:
            if self.eps < 0:
                return int(self.value) - 1
            return int(self.value)
        return math.floor(self.value)

    def __ceil__(self) -> int:
        if self.value.denominator == 1:
            if self.eps > 0:
                return int(self.value) + 1
            return int(self.value)
        return math.ceil(self.value)


def tilted(value, eps=0) -> Tilted:
    if isinstance(value, Tilted):
        return value
    return Tilted(Fraction(exact(value)), Fraction(exact(eps)))


def cz_elliptic(theta, cover: int = 1) -> int:
    """Conley-Zehnder number 2*floor(cover*theta) + 1 of an elliptic cover."""
    if not isinstance(cover, int) or cover < 1:
        raise ValueError("cover must be a positive integer")
    return 2 * math.floor(tilted(theta) * cover) + 1

def cz_hyperbolic(winding: int) -> int:
    """A hyperbolic orbit's Conley-Zehnder number is its eigenvector winding."""
    return winding


def cz_trivialization_shift(cover: int, delta_tau: int) -> int:
    """Change of the Conley-Zehnder number of a k-fold cover under a
    trivialization shift: 2 * k * (tau - tau')."""
    return 2 * cover * delta_tau


def rotation_numbers(a0_prime, a1_prime, frame, v) -> tuple[Fraction, Fraction]:
    """Rotation numbers of the two special orbits from the boundary tangents.

    a0_prime / a1_prime are the tangent vectors at the ray and axis ends; v
    trivializes the ray orbit, so (n,m) x v = 1 is required.
    """
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    a0p, a1p, v = Vec(*a0_prime), Vec(*a1_prime), Vec(*v)
    if cross(frame.ray, v) != 1:
        raise GeometryError(f"{v} is not a trivialization vector for {frame}")
    denom = cross(a0p, frame.ray)
    if denom == 0:
        raise GeometryError("ray tangent is parallel to the ray")
    if a1p.x == 0:
        raise GeometryError("axis tangent is vertical")
    phi_plus = Fraction(cross(a0p, v)) / Fraction(denom)
    phi_minus = Fraction(a1p.y) / Fraction(a1p.x)
    return phi_plus, phi_minus


@dataclass(frozen=True)
class IndexComponents:
    chern: int
    self_intersection: int
    cz_total: int

    @property
    def total(self) -> int:
        return self.chern + self.self_intersection + self.cz_total


def index_components(decorated, frame=None, trivialization=None) -> IndexComponents:
    """Chern, self-intersection, and Conley-Zehnder parts of the grading.

    The closing of the path uses s copies of the ray vector and t copies of
    (0,1), so the Chern term is s + t; the self-intersection term is twice
    the area of the bounded region; each elliptic cover contributes -1 after
    the normalizing perturbation and each hyperbolic orbit 0.  Generators
    carry no special orbits, so the total is independent of the chosen
    trivialization vector.
    """
    decorated = validate_decorated(decorated)
    path = decorated.path
    frame = path.frame if frame is None else (frame if isinstance(frame, Frame) else Frame(*frame))
    if frame != path.frame:
        raise GeometryError("frame mismatch")
    if trivialization is not None and cross(frame.ray, Vec(*trivialization)) != 1:
        raise GeometryError(f"{trivialization} is not a trivialization vector for {frame}")
    if path.is_empty:
        return IndexComponents(0, 0, 0)
    chern = path.start_multiple + path.end_height
    area = _region_double_area(path)
    elliptic_covers = sum(
        mult - (1 if lab == "h" else 0)
        for (_, mult), lab in zip(path.edges, decorated.labels)
    )
    return IndexComponents(chern, area, -elliptic_covers)


def _region_double_area(path) -> int:
    verts = [Vec(0, 0)] + path.vertices()
    return int(sum(cross(v, w) for v, w in zip(verts, verts[1:] + verts[:1])))


def cz_total_with_special(
    elliptic_count: int,
    n_plus: int,
    n_minus: int,
    phi_plus=None,
    phi_minus=None,
) -> int:
    """Total Conley-Zehnder term when special-orbit covers are present.

    -e + n_plus + n_minus + 2*sum floor(i*phi_plus) + 2*sum floor(-j*phi_minus).
    """
    total = -elliptic_count + n_plus + n_minus
    if n_plus:
        phi = tilted(phi_plus)
        total += 2 * sum(math.floor(phi * i) for i in range(1, n_plus + 1))
    if n_minus:
        phi = tilted(phi_minus)
        total += 2 * sum(math.floor(-phi * j) for j in range(1, n_minus + 1))
    return total


def fredholm_index(genus: int, elliptic_negative_ends: int, hyperbolic_ends: int, chern_sum: int) -> int:
    """-2 + 2g + 2e + h + 2c for an irreducible curve."""
    for arg in (genus, elliptic_negative_ends, hyperbolic_ends):
        if arg < 0:
            raise ValueError("counts must be nonnegative")
    return -2 + 2 * genus + 2 * elliptic_negative_ends + hyperbolic_ends + 2 * chern_sum


# ---------------------------------------------------------------------------
# partition conditions


def _hull_displacements(points: list[Vec], upper: bool) -> tuple[int, ...]:
    """Horizontal gaps between consecutive lattice points on the extremal
    (upper or lower) hull of an x-sorted point set, split at every lattice
    point lying on the hull."""
    sign = 1 if upper else -1
    chain: list[Vec] = []
    for p in points:
        while len(chain) >= 2 and sign * cross(chain[-1] - chain[-2], p - chain[-1]) >= 0:
            chain.pop()
        chain.append(p)
    gaps = []
    for a, b in zip(chain, chain[1:]):
        g = math.gcd(int(b.x - a.x), abs(int(b.y - a.y)))
        gaps.extend([int(b.x - a.x) // g] * g)
    return tuple(gaps)


def partitions(kind: str, mult: int, theta=None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Positive and negative end partitions of a multiplicity-mult orbit.

    Positive hyperbolic: all ones.  Negative hyperbolic: twos with a trailing
    one if mult is odd.  Elliptic with rotation data theta: horizontal
    displacements of the extremal lattice paths pinched against y = theta*x.
    """
    if mult < 1:
        raise ValueError("multiplicity must be positive")
    if kind == "positive-hyperbolic":
        ones = (1,) * mult
        return ones, ones
    if kind == "negative-hyperbolic":
        twos = (2,) * (mult // 2) + ((1,) if mult % 2 else ())
        return twos, twos
    if kind != "elliptic":
        raise ValueError(f"unknown orbit kind {kind!r}")
    if theta is None:
        raise ValueError("elliptic partitions need rotation data")
    theta = tilted(theta)
    below = [Vec(x, math.floor(theta * x)) for x in range(mult + 1)]
    above = [Vec(x, math.ceil(theta * x)) for x in range(mult + 1)]
    return _hull_displacements(below, upper=True), _hull_displacements(above, upper=False)


# ---------------------------------------------------------------------------
# singular-ellipsoid index bijection


def ellipsoid_generator_point(frame, r: int, s: int) -> Vec:
    """Cone lattice point attached to the orbit pair (r,s); requires the
    homology condition r + m*s = 0 mod n."""
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    if r < 0 or s < 0:
        raise ValueError("multiplicities must be nonnegative")
    if (r + frame.m * s) % frame.n != 0:
        raise ValueError(f"({r},{s}) is not admissible for {frame}")
    return Vec(s, (r + frame.m * s) // frame.n)


def _action_functional(frame: Frame, a, b, tilt: int):
    """g(x,y) = a*n*y + (b - a*m)*x as a tilted-linear form; the level lines
    are parallel to the slanted ellipsoid boundary and g sorts by action."""
    a = Fraction(exact(a))
    b = tilted(b, tilt)

    def g(p: Vec) -> Tilted:
        return b * p.x + Tilted(a * (frame.n * p.y - frame.m * p.x))

    return g


def ellipsoid_eta(frame, a, b, point, tilt: int = 1) -> int:
    """Lattice points of the cone strictly under the tilted line through
    `point` parallel to the slanted ellipsoid boundary."""
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    point = Vec(*point).as_lattice()
    if point.x < 0 or frame.n * point.y - frame.m * point.x < 0:
        raise ValueError(f"{point} is not in the cone")
    g = _action_functional(frame, a, b, tilt)
    level = g(point)
    b_value = Fraction(exact(b))
    count = 0
    x = 0
    while b_value * x <= level.value:  # g >= b*x on the cone column over x
        y = -(-frame.m * x // frame.n)  # ceil(m*x/n), lowest cone point
        while True:
            q = Vec(x, y)
            value = g(q)
            if value == level:
                if q != point:
                    raise TiltTieError(f"action tie at {q} without tilt")
                break
            if value > level:
                break
            count += 1
            y += 1
        x += 1
    return count


def _count_below(bound: Tilted, self_slot: bool) -> int:
    """Nonnegative integers strictly below an exact bound.

    An exact integer boundary is a tie unless it is the generator's own slot.
    """
    if bound <= 0:
        if bound.value == 0 and bound.eps == 0 and not self_slot:
            raise TiltTieError("action tie without tilt")
        return 0
    if bound.eps == 0 and bound.value.denominator == 1:
        if not self_slot:
            raise TiltTieError("action tie without tilt")
        return int(bound.value)
    return math.ceil(bound)


def ellipsoid_generator_index(frame, a, b, r: int, s: int, tilt: int = 1) -> int:
    """Grading of the orbit pair (r,s) on the tilted singular ellipsoid.

    Computed as twice the number of admissible pairs of strictly smaller
    action, via a sum of exact ceiling terms; equals 2 * eta at the
    corresponding cone point.
    """
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    ellipsoid_generator_point(frame, r, s)  # validates admissibility
    a_value = Fraction(exact(a))
    b_tilted = tilted(b, tilt)
    level = b_tilted * s + Tilted(a_value * r)
    count = 0
    s2 = 0
    while b_tilted * s2 <= level:
        # partners (r2, s2) with r2 = rho mod n and a*r2 + b*s2 < level
        rho = (-frame.m * s2) % frame.n
        slots = ((level - b_tilted * s2) * Fraction(1, a_value) - rho) * Fraction(1, frame.n)
        count += _count_below(slots, self_slot=(s2 == s))
        s2 += 1
    return 2 * count

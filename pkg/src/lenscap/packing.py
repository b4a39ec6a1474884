"""Weight expansions and ball-packing capacities.

A domain over the frame (n,1) peels into one singular ball plus classical
balls: remove the largest inscribed model triangle, split the remainder along
the cut line, and move each side to a classical concave domain by a lattice
translation (left) or a translation plus a determinant-one matrix (right).
The packing capacities are the max-plus convolution of the balls' spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .domains import (
    Domain,
    DomainError,
    Frame,
    check_capacity_sequence,
    domain_height,
    validate_domain,
)
from .geometry import Vec, cross, exact, polygon_area, sl2_apply
from .paths import capacity_by_paths
from .spectrum import classical_spectrum, singular_ellipsoid_spectrum

DEFAULT_DEPTH_GUARD = 4000

# moves the peeled corner to the origin and the ray direction (n,1) to (1,0)
def _right_piece_matrix(n: int):
    return ((0, 1), (-1, n))

# classical shears flattening the diagonal cut onto an axis
_LEFT_SHEAR = ((1, 0), (1, 1))
_RIGHT_SHEAR = ((1, 1), (0, 1))


@dataclass(frozen=True)
class WeightExpansion:
    """One optional singular weight plus a multiset of classical weights."""

    singular_weight: Fraction | None
    classical_weights: tuple[Fraction, ...]

    def all_weights(self) -> tuple[Fraction, ...]:
        head = () if self.singular_weight is None else (self.singular_weight,)
        return head + self.classical_weights


def domain_area(domain: Domain) -> Fraction:
    return polygon_area([Vec(0, 0)] + list(domain.vertices))


def _boundary_touch_range(domain: Domain, value_at, target) -> tuple[Fraction, Fraction]:
    """Min and max x where the affine functional `value_at(x, y)` equals
    `target` on the boundary path."""
    xs = []
    for v, w in zip(domain.vertices, domain.vertices[1:]):
        fv, fw = value_at(v), value_at(w)
        if fv == fw:
            if fv == target:
                xs.extend([Fraction(v.x), Fraction(w.x)])
            continue
        lo, hi = min(fv, fw), max(fv, fw)
        if lo <= target <= hi:
            t = Fraction(target - fv) / (fw - fv)
            xs.append(Fraction(v.x) + t * (w.x - v.x))
    if not xs:
        raise DomainError("cut line does not touch the boundary")
    return min(xs), max(xs)


def _piece_from_vertices(raw: list[Vec]) -> Domain | None:
    """Build a classical concave domain from candidate vertices, or None when
    the piece is empty."""
    verts = []
    for v in raw:
        if not verts or verts[-1] != v:
            verts.append(v)
    if len(verts) < 2:
        return None
    if polygon_area([Vec(0, 0)] + verts) == 0:
        return None
    return validate_domain(Domain(Frame(1, 0), tuple(verts)))


def _max_inscribed_singular(domain: Domain) -> Fraction:
    """Largest a with the triangle (0,0), (n*a, a), (0, a) inside the domain."""
    n = domain.frame.n
    t0 = Fraction(domain.vertices[0].y)
    t1 = Fraction(domain.vertices[-1].y)
    candidates = {t0, t1}
    for v in domain.vertices[1:-1]:
        candidates.add(Fraction(v.y))
    for v, w in zip(domain.vertices, domain.vertices[1:]):
        slope = Fraction(w.y - v.y) / (w.x - v.x)
        denom = 1 - n * slope
        if denom != 0:
            candidates.add(Fraction(v.y - v.x * slope) / denom)

    def contained(a: Fraction) -> bool:
        if a <= 0 or a > t0:
            return False
        xs = {Fraction(0), n * a}
        xs.update(Fraction(v.x) for v in domain.vertices if 0 <= v.x <= n * a)
        return all(domain_height(domain, x) >= a for x in xs)

    valid = [a for a in candidates if contained(a)]
    if not valid:
        raise DomainError("no inscribed model triangle")  # pragma: no cover
    return max(valid)


def _max_inscribed_classical(domain: Domain) -> Fraction:
    """Largest a with the triangle x + y <= a inside the classical domain."""
    x_int = Fraction(domain.vertices[0].x)
    candidates = {x_int, Fraction(domain.vertices[-1].y)}
    for v in domain.vertices[1:-1]:
        candidates.add(Fraction(v.x + v.y))

    def contained(a: Fraction) -> bool:
        if a <= 0 or a > x_int:
            return False
        xs = {Fraction(0), a}
        xs.update(Fraction(v.x) for v in domain.vertices if 0 <= v.x <= a)
        return all(domain_height(domain, x) >= a - x for x in xs)

    valid = [a for a in candidates if contained(a)]
    if not valid:
        raise DomainError("no inscribed model triangle")  # pragma: no cover
    return max(valid)


def _split_vertices(domain: Domain, x2: Fraction, x3: Fraction, cut_point) -> tuple[list[Vec], list[Vec]]:
    """Boundary vertices of the raw left (x <= x2) and right (x >= x3) pieces."""
    left = [cut_point(x2)] + [v for v in domain.vertices if v.x < x2]
    right = [v for v in domain.vertices if v.x > x3] + [cut_point(x3)]
    return left, right


def _classical_weights(domain: Domain, depth: int) -> list[Fraction]:
    if depth <= 0:
        raise DomainError("weight expansion recursion depth exceeded")
    verts = domain.vertices
    x_int, y_int = Fraction(verts[0].x), Fraction(verts[-1].y)
    if len(verts) == 2 and x_int == y_int:
        return [x_int]
    a = _max_inscribed_classical(domain)
    x2, x3 = _boundary_touch_range(domain, lambda p: p.x + p.y, a)
    left_raw, right_raw = _split_vertices(domain, x2, x3, lambda x: Vec(x, a - x))
    weights = [a]
    left = _piece_from_vertices(
        [sl2_apply(_LEFT_SHEAR, v - Vec(0, a)) for v in left_raw]
    )
    if left is not None:
        weights.extend(_classical_weights(left, depth - 1))
    right = _piece_from_vertices(
        [sl2_apply(_RIGHT_SHEAR, v - Vec(a, 0)) for v in right_raw]
    )
    if right is not None:
        weights.extend(_classical_weights(right, depth - 1))
    return weights


def weight_expansion(domain: Domain, depth_guard: int = DEFAULT_DEPTH_GUARD) -> WeightExpansion:
    """Peel the domain into ball weights; frames (n,1) and (1,0) only."""
    domain = validate_domain(domain)
    frame = domain.frame
    if frame.m == 0:
        weights = _classical_weights(domain, depth_guard)
        return WeightExpansion(None, tuple(sorted(weights, reverse=True)))
    if frame.m != 1:
        raise DomainError(f"weight expansion is only defined for m in {{0,1}}, got m={frame.m}")
    a = _max_inscribed_singular(domain)
    x2, x3 = _boundary_touch_range(domain, lambda p: Fraction(p.y), a)
    left_raw, right_raw = _split_vertices(domain, x2, x3, lambda x: Vec(x, a))
    classical: list[Fraction] = []
    left = _piece_from_vertices([v - Vec(0, a) for v in left_raw])
    if left is not None:
        classical.extend(_classical_weights(left, depth_guard - 1))
    right = _piece_from_vertices(
        [
            sl2_apply(_right_piece_matrix(frame.n), v - Vec(frame.n * a, a))
            for v in right_raw
        ]
    )
    if right is not None:
        classical.extend(_classical_weights(right, depth_guard - 1))
    return WeightExpansion(a, tuple(sorted(classical, reverse=True)))


def weight_area_identity(domain: Domain, expansion: WeightExpansion) -> bool:
    """n*a1^2/2 + sum a_j^2/2 must equal the domain area (peels are
    area-preserving)."""
    total = Fraction(0)
    if expansion.singular_weight is not None:
        total += Fraction(domain.frame.n) * expansion.singular_weight**2 / 2
    total += sum((w**2 / 2 for w in expansion.classical_weights), Fraction(0))
    return total == domain_area(domain)


def max_plus_convolve(sequences, count: int):
    """Iterated pairwise max-plus convolution, truncated to `count` terms."""
    seqs = [check_capacity_sequence(seq) for seq in sequences]
    if not seqs:
        raise ValueError("need at least one sequence")
    result = list(seqs[0][:count])
    for seq in seqs[1:]:
        merged = []
        for k in range(min(count, len(result) + len(seq) - 1)):
            lo = max(0, k - len(seq) + 1)
            merged.append(
                max(result[i] + seq[k - i] for i in range(lo, min(k, len(result) - 1) + 1))
            )
        result = merged
    return tuple(result)


def packing_capacities(domain: Domain, count: int):
    """Capacities of the disjoint union of the expansion's balls."""
    expansion = weight_expansion(domain)
    seqs = []
    if expansion.singular_weight is not None:
        a1 = expansion.singular_weight
        seqs.append(
            singular_ellipsoid_spectrum(Frame(domain.frame.n, 1), a1, a1, count)
        )
    for w in expansion.classical_weights:
        seqs.append(classical_spectrum(w, w, count))
    return max_plus_convolve(seqs, count)


@dataclass(frozen=True)
class PackingReport:
    ok: bool
    k_max: int
    packing_values: tuple
    path_values: tuple
    first_discrepancy: int | None


def verify_packing(domain: Domain, k_max: int) -> PackingReport:
    """Compare packing capacities against the lattice-path maximization."""
    packing = packing_capacities(domain, k_max + 1)
    paths = tuple(capacity_by_paths(domain, k) for k in range(k_max + 1))
    first = next((k for k in range(k_max + 1) if packing[k] != paths[k]), None)
    return PackingReport(first is None, k_max, packing, paths, first)

"""Combinatorial embedded contact complex of a concave lens space.

Generators are decorated concave paths graded by twice the lattice count plus
the number of 'h' labels.  The differential transfers exactly one counted
lattice point at a corner of the smaller path while the h-count rises by one;
coefficients live in the two-element field.  Homology ranks are the normative
arbiter for the labeling conventions, so the label rule is isolated in
``_survivor_label`` / ``_arc_label_budget`` and the pairwise predicate
``boundary_pair``.
"""

from __future__ import annotations

import functools
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .domains import Domain, Frame
from .geometry import Vec, cross, lattice_points_in_polygon, primitive_decompose
from .paths import (
    ConcavePath,
    DecoratedPath,
    DEFAULT_COUNT_BOUND,
    EnumerationBoundError,
    PathError,
    all_elliptic,
    empty_path,
    enumerate_paths,
    lattice_count,
    lattice_points,
    omega_length,
    validate_decorated,
)

DEFAULT_INDEX_BOUND = 24


def ech_index(decorated: DecoratedPath) -> int:
    """Grading: 2 * lattice count + number of 'h' labels."""
    decorated = validate_decorated(decorated)
    return 2 * lattice_count(decorated.path) + decorated.h_count


@dataclass(frozen=True)
class Generator:
    decorated: DecoratedPath
    index: int

    @property
    def path(self) -> ConcavePath:
        return self.decorated.path

    @property
    def labels(self) -> tuple[str, ...]:
        return self.decorated.labels


def make_generator(decorated: DecoratedPath) -> Generator:
    return Generator(validate_decorated(decorated), ech_index(decorated))


def empty_generator(frame) -> Generator:
    return make_generator(DecoratedPath(empty_path(frame), ()))


def _gen_key(g: Generator):
    p = g.path
    return (p.start_multiple, p.end_height, p.edges, g.labels)


def generators_of_index(frame, index: int, bound: int = DEFAULT_INDEX_BOUND):
    """All decorated paths of the given grading, canonically ordered."""
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    if index < 0:
        return ()
    if index > bound:
        raise EnumerationBoundError(f"index {index} exceeds bound {bound}")
    gens = []
    for count in range(index // 2 + 1):
        h = index - 2 * count
        for path in enumerate_paths(frame, count, bound=max(DEFAULT_COUNT_BOUND, bound)):
            runs = len(path.edges)
            if h > runs:
                continue
            for positions in itertools.combinations(range(runs), h):
                labels = tuple("h" if i in positions else "e" for i in range(runs))
                gens.append(make_generator(DecoratedPath(path, labels)))
    gens.sort(key=_gen_key)
    return tuple(gens)


# ---------------------------------------------------------------------------
# geometric helpers


def path_height(path: ConcavePath, x) -> Fraction:
    """Height of the path over x in [0, start.x]; the path is x-monotone."""
    x = Fraction(x)
    verts = list(reversed(path.vertices()))
    if not verts or not (0 <= x <= verts[-1].x):
        raise PathError(f"x={x} outside path span")
    for v, w in zip(verts, verts[1:]):
        if v.x <= x <= w.x:
            return Fraction(v.y) + (x - v.x) * Fraction(w.y - v.y, w.x - v.x)
    return Fraction(verts[-1].y)


def no_crossing(upper: ConcavePath, lower: ConcavePath) -> bool:
    """True iff `lower` is nowhere strictly above `upper` (region containment)."""
    if lower.is_empty:
        return True
    if upper.is_empty:
        return False
    if upper.frame != lower.frame:
        raise PathError("frame mismatch")
    if lower.start.x > upper.start.x:
        return False
    xs = {Fraction(v.x) for v in lower.vertices()}
    xs.update(Fraction(v.x) for v in upper.vertices() if v.x <= lower.start.x)
    return all(path_height(lower, x) <= path_height(upper, x) for x in xs)


def _direction_order(u: Vec, v: Vec) -> int:
    """-1 if u strictly precedes v in the ray-to-axis fan rotation."""
    c = cross(u, v)
    return 0 if c == 0 else (-1 if c < 0 else 1)


def slice_class(alpha: DecoratedPath, beta: DecoratedPath, cut: Vec) -> Vec:
    """Homology class of a cobordism slice between the orbit directions.

    `cut` is a direction in the open fan; edges strictly before it (ray side)
    contribute with sign -1 for alpha and +1 for beta, plus the difference of
    ray-closing copies.  Identical paths give (0,0) at every cut.
    """
    pa, pb = alpha.path, beta.path
    if pa.frame != pb.frame:
        raise PathError("frame mismatch")
    frame = pa.frame
    cut = Vec(*cut)
    total = frame.ray.scale(pb.start_multiple - pa.start_multiple)
    for d, mult in pa.edges:
        if _direction_order(d, cut) < 0:
            total = total - d.scale(mult)
    for d, mult in pb.edges:
        if _direction_order(d, cut) < 0:
            total = total + d.scale(mult)
    return total


def slice_positivity(alpha: DecoratedPath, beta: DecoratedPath) -> bool:
    """Combinatorial local-energy inequality along every slice gap."""
    frame = alpha.path.frame
    dirs = sorted(
        {d for d, _ in alpha.path.edges} | {d for d, _ in beta.path.edges},
        key=functools.cmp_to_key(_direction_order),
    )
    fan = [Vec(-frame.n, -frame.m)] + dirs + [Vec(0, 1)]
    for lo, hi in zip(fan, fan[1:]):
        sigma = slice_class(alpha, beta, lo + hi)  # cut strictly inside the gap
        if cross(lo, sigma) < 0 or cross(hi, sigma) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# the corounding move


def _local_label_budget(k: int) -> int:
    # the move consumes the k h's meeting the corner and re-issues k-1 of
    # them anywhere in the changed locality (new arc runs or the surviving
    # portions of the split runs); this placement freedom is what makes the
    # differential square to zero at corners with two h's
    return k - 1


def _chain_facing(j1: Vec, corner: Vec, j2: Vec) -> list[Vec]:
    """Boundary chain from j1 to j2 of the triangle's lattice hull minus the
    corner, on the corner side.  x decreases strictly along the chain."""
    _, pts = lattice_points_in_polygon([j1, corner, j2])
    u = j2 - j1
    side = cross(u, corner - j1)
    assert side != 0, "degenerate rounding wedge"
    sgn = 1 if side > 0 else -1
    best: dict = {}
    for p in pts:
        if p == corner:
            continue
        eta = sgn * cross(u, p - j1)
        if p.x not in best or eta > best[p.x][0]:
            best[p.x] = (eta, p)
    ordered = [best[x][1] for x in sorted(best, reverse=True)]
    chain: list[Vec] = []
    for p in ordered:
        while len(chain) >= 2 and cross(chain[-1] - chain[-2], p - chain[-1]) >= 0:
            chain.pop()
        chain.append(p)
    assert chain[0] == j1 and chain[-1] == j2
    # the corner must be strictly beyond every chain edge, all other lattice
    # points weakly on the near side
    for a, b in zip(chain, chain[1:]):
        assert sgn * cross(b - a, corner - a) > 0, "chain does not face the corner"
        assert all(
            p == corner or sgn * cross(b - a, p - a) <= 0 for p in pts
        ), "lattice point left on the corner side of the chain"
    return chain


def _runs_from_points(points: list[Vec]) -> list[tuple[Vec, int]]:
    runs: list[tuple[Vec, int]] = []
    for a, b in zip(points, points[1:]):
        d, mult = primitive_decompose(b - a)
        if runs and runs[-1][0] == d:
            runs[-1] = (d, runs[-1][1] + mult)
        else:
            runs.append((d, mult))
    return runs


def roundings(gen: Generator) -> list[Generator]:
    """All generators A with <dA, gen> = 1, built by rounding a corner.

    Rounding at a corner c of the path takes the convex hull of the region
    above the path with c removed; the new path counts exactly one more
    lattice point (c itself) and the h-count drops by one: the k h-labeled
    runs meeting c are consumed and k-1 h labels reappear on the new arc.
    """
    dec = gen.decorated
    path = dec.path
    if path.is_empty:
        return []
    frame = path.frame
    verts = path.vertices()
    runs = list(zip(path.edges, dec.labels))  # ((dir, mult), label)
    results: list[Generator] = []

    for ci, c in enumerate(verts):
        incident = [j for j in range(len(runs)) if verts[j] == c or verts[j + 1] == c]
        k = sum(1 for j in incident if runs[j][1] == "h")
        if k not in (1, 2):
            continue

        # fixed runs keep their labels; local runs (new arc plus surviving
        # portions of the split incident runs) share the k-1 re-issued h's
        if ci == 0:  # ray endpoint: the start moves one ray step out
            new_start = frame.ray.scale(path.start_multiple + 1)
            j2 = c + runs[0][0][0]
            arc_runs = _runs_from_points(_chain_facing(new_start, c, j2))
            (d0, m0), _ = runs[0]
            local = arc_runs + ([(d0, m0 - 1)] if m0 > 1 else [])
            pre: list = []
            post = runs[1:]
            s_new = path.start_multiple + 1
        elif ci == len(verts) - 1:  # axis endpoint: the end moves one step up
            j1 = c - runs[-1][0][0]
            new_end = Vec(0, path.end_height + 1)
            arc_runs = _runs_from_points(_chain_facing(j1, c, new_end))
            (dl, ml), _ = runs[-1]
            local = ([(dl, ml - 1)] if ml > 1 else []) + arc_runs
            pre = runs[:-1]
            post = []
            s_new = path.start_multiple
        else:  # interior corner between run ci-1 and run ci
            (din, min_), _ = runs[ci - 1]
            (dout, mout), _ = runs[ci]
            j1, j2 = c - din, c + dout
            arc_runs = _runs_from_points(_chain_facing(j1, c, j2))
            local = (
                ([(din, min_ - 1)] if min_ > 1 else [])
                + arc_runs
                + ([(dout, mout - 1)] if mout > 1 else [])
            )
            pre = runs[: ci - 1]
            post = runs[ci + 1 :]
            s_new = path.start_multiple

        if pre and local:
            assert pre[-1][0][0] != local[0][0], "local runs merge into a fixed run"
        if post and local:
            assert local[-1][0] != post[0][0][0], "local runs merge into a fixed run"

        budget = _local_label_budget(k)
        placements = [()] if budget == 0 else [(i,) for i in range(len(local))]
        for placement in placements:
            local_labeled = [
                ((d, m), "h" if i in placement else "e")
                for i, (d, m) in enumerate(local)
            ]
            new_runs = pre + local_labeled + post
            new_path = ConcavePath(frame, s_new, tuple(r for r, _ in new_runs))
            new_dec = DecoratedPath(new_path, tuple(lab for _, lab in new_runs))
            new_gen = make_generator(new_dec)
            assert new_gen.index == gen.index + 1, "rounding must raise the index by 1"
            results.append(new_gen)
    return results


def _direction_table(dec: DecoratedPath) -> dict[Vec, tuple[int, str]]:
    return {d: (mult, lab) for (d, mult), lab in zip(dec.path.edges, dec.labels)}


def boundary_pair(gen_a: Generator, gen_b: Generator) -> int:
    """Differential coefficient of the ordered pair (A, B) over GF(2).

    Checked extensionally: region containment with a single transferred
    lattice point c sitting at a corner of the smaller path, plus the label
    bookkeeping around c.  Raises unless index(A) - index(B) = 1.
    """
    if gen_a.index - gen_b.index != 1:
        raise PathError(f"index gap {gen_a.index - gen_b.index} != 1")
    pa, pb = gen_a.path, gen_b.path
    if pa.frame != pb.frame:
        raise PathError("frame mismatch")
    if pb.is_empty:
        return 0
    if lattice_count(pb) != lattice_count(pa) - 1:
        return 0
    if not no_crossing(pa, pb):
        return 0
    pts_a, pts_b = set(lattice_points(pa)), set(lattice_points(pb))
    if not (pts_b <= pts_a) or len(pts_a - pts_b) != 1:
        return 0
    (c,) = pts_a - pts_b

    seq_a, seq_b = pa.step_points(), pb.step_points()
    pre = 0
    while pre < min(len(seq_a), len(seq_b)) and seq_a[pre] == seq_b[pre]:
        pre += 1
    suf = 0
    while (
        suf < min(len(seq_a), len(seq_b)) - pre
        and seq_a[len(seq_a) - 1 - suf] == seq_b[len(seq_b) - 1 - suf]
    ):
        suf += 1
    mid_b = seq_b[pre : len(seq_b) - suf]
    if mid_b != [c]:
        return 0

    verts_b = pb.vertices()
    if c not in verts_b:
        return 0
    incident = {
        pb.edges[j][0]
        for j in range(len(pb.edges))
        if verts_b[j] == c or verts_b[j + 1] == c
    }
    table_a, table_b = _direction_table(gen_a.decorated), _direction_table(gen_b.decorated)
    k = sum(1 for d in incident if table_b[d][1] == "h")
    if k not in (1, 2):
        return 0
    for d, (mult_b, lab_b) in table_b.items():
        if d in incident:
            mult_a = table_a[d][0] if d in table_a else 0
            if mult_a >= mult_b:
                return 0
        else:
            if d not in table_a or table_a[d] != (mult_b, lab_b):
                return 0
    local_h = sum(
        1
        for d, (_, lab) in table_a.items()
        if (d not in table_b or d in incident) and lab == "h"
    )
    if local_h != _local_label_budget(k):
        return 0
    return 1


def differential(gen: Generator, bound: int = DEFAULT_INDEX_BOUND) -> list[Generator]:
    """All generators one index below hit by the differential."""
    if gen.index == 0:
        return []
    targets = generators_of_index(gen.path.frame, gen.index - 1, bound)
    return [b for b in targets if boundary_pair(gen, b) == 1]


# ---------------------------------------------------------------------------
# slices, matrices over GF(2), homology


def gf2_rank(rows) -> int:
    rank = 0
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
            rank += 1
    return rank


def gf2_in_span(vector: int, basis_rows) -> bool:
    basis: list[int] = []
    for row in basis_rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
            basis.sort(reverse=True)
    for b in basis:
        vector = min(vector, vector ^ b)
    return vector == 0


@dataclass(frozen=True)
class ComplexSlice:
    """Generators and boundary matrices up to a top index.

    ``boundaries[i]`` maps degree-i generators to degree-(i-1) generators;
    row r is a bitmask over source columns, rows indexed by the targets.
    """

    frame: Frame
    top_index: int
    generators: tuple[tuple[Generator, ...], ...]
    boundaries: tuple[tuple[int, ...], ...]

    def generator_position(self, gen: Generator) -> int:
        return self.generators[gen.index].index(gen)


@functools.lru_cache(maxsize=None)
def build_complex(frame: Frame, top_index: int, bound: int = DEFAULT_INDEX_BOUND) -> ComplexSlice:
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    gens = tuple(generators_of_index(frame, i, bound) for i in range(top_index + 1))
    boundaries: list[tuple[int, ...]] = [()]
    for i in range(1, top_index + 1):
        position = {g: col for col, g in enumerate(gens[i])}
        rows = [0] * len(gens[i - 1])
        for r, b in enumerate(gens[i - 1]):
            for a in roundings(b):
                col = position.get(a)
                assert col is not None, "rounding produced an unlisted generator"
                rows[r] ^= 1 << col
        boundaries.append(tuple(rows))
    return ComplexSlice(frame, top_index, gens, tuple(boundaries))


def boundary_of(slice_: ComplexSlice, degree: int, vector: int) -> int:
    """Apply the degree-th boundary matrix to a source bitmask."""
    rows = slice_.boundaries[degree]
    out = 0
    for r, row in enumerate(rows):
        if (row & vector).bit_count() % 2:
            out |= 1 << r
    return out


def verify_d_squared(slice_: ComplexSlice) -> bool:
    for i in range(2, slice_.top_index + 1):
        for col in range(len(slice_.generators[i])):
            once = boundary_of(slice_, i, 1 << col)
            if boundary_of(slice_, i - 1, once) != 0:
                return False
    return True


@dataclass(frozen=True)
class HomologyRanks:
    """GF(2) homology dimensions for the complete degrees [0, top_degree)."""

    complete: tuple[int, ...]
    top_degree: int
    top_kernel_dim: int


def homology_ranks(frame, top_index: int, bound: int = DEFAULT_INDEX_BOUND) -> HomologyRanks:
    """Homology dimensions ker/im for degrees 0..top_index-1.

    The degree top_index kernel dimension is reported separately because the
    incoming boundary from above is not available there.
    """
    if not isinstance(frame, Frame):
        frame = Frame(*frame)
    slice_ = build_complex(frame, top_index, bound)
    ranks = [gf2_rank(list(slice_.boundaries[i])) if i >= 1 else 0 for i in range(top_index + 1)]
    # rank of d_i as a map out of degree i equals the row-space rank of the
    # transpose; row ranks agree with column ranks so reuse the row bitmasks
    complete = []
    for i in range(top_index):
        n_i = len(slice_.generators[i])
        rank_out = ranks[i]
        rank_in = ranks[i + 1]
        complete.append(n_i - rank_out - rank_in)
    top_kernel = len(slice_.generators[top_index]) - ranks[top_index]
    return HomologyRanks(tuple(complete), top_index, top_kernel)


# ---------------------------------------------------------------------------
# capacities out of the complex


def capacities_from_complex(domain: Domain, k_max: int, bound: int = DEFAULT_INDEX_BOUND):
    """c_k as the action of the canonical cycle: the sum of the all-elliptic
    generators of index 2k, whose action is the max over its summands."""
    values = []
    for k in range(k_max + 1):
        gens = [
            g
            for g in generators_of_index(domain.frame, 2 * k, bound)
            if g.decorated.h_count == 0
        ]
        if not gens:
            raise PathError(f"no all-elliptic generators of index {2 * k}")
        values.append(max(omega_length(domain, g.path) for g in gens))
    return tuple(values)


def capacity_min_max_oracle(domain: Domain, k: int, bound: int = DEFAULT_INDEX_BOUND):
    """Exhaustive min-max over closed, non-nullhomologous, minimal sums of
    index-2k generators.  Exponential; intended for k <= 3."""
    if k == 0:
        return Fraction(0)
    slice_ = build_complex(domain.frame, 2 * k + 1, bound)
    gens = slice_.generators[2 * k]
    n = len(gens)
    if n > 18:
        raise EnumerationBoundError("oracle slice too large")
    actions = [omega_length(domain, g.path) for g in gens]
    image_rows = []
    for col in range(len(slice_.generators[2 * k + 1])):
        image_rows.append(boundary_of(slice_, 2 * k + 1, 1 << col))

    def is_cycle(vector: int) -> bool:
        return boundary_of(slice_, 2 * k, vector) == 0

    best = None
    for vector in range(1, 1 << n):
        if not is_cycle(vector):
            continue
        if gf2_in_span(vector, image_rows):
            continue
        support = [i for i in range(n) if vector >> i & 1]
        minimal = True
        for r in range(1, len(support)):
            for sub in itertools.combinations(support, r):
                sub_vec = sum(1 << i for i in sub)
                if is_cycle(sub_vec):
                    minimal = False
                    break
            if not minimal:
                break
        if not minimal:
            continue
        value = max(actions[i] for i in support)
        if best is None or value < best:
            best = value
    if best is None:
        raise PathError(f"no qualifying cycle in degree {2 * k}")
    return best


# ---------------------------------------------------------------------------
# export


def export_complex(slice_: ComplexSlice) -> str:
    """Structured text document: generator descriptors plus boundary matrices
    in (row, column) coordinate form."""
    doc = {
        "n": slice_.frame.n,
        "m": slice_.frame.m,
        "top_index": slice_.top_index,
        "generators": {
            str(i): [
                {
                    "start_multiple": g.path.start_multiple,
                    "edges": [
                        [int(d.x), int(d.y), mult, lab]
                        for (d, mult), lab in zip(g.path.edges, g.labels)
                    ],
                    "index": g.index,
                }
                for g in slice_.generators[i]
            ]
            for i in range(slice_.top_index + 1)
        },
        "boundaries": {
            str(i): [
                [r, c]
                for r, row in enumerate(slice_.boundaries[i])
                for c in range(len(slice_.generators[i]))
                if row >> c & 1
            ]
            for i in range(1, slice_.top_index + 1)
        },
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

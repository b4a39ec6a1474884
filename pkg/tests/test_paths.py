import random
from fractions import Fraction
from math import ceil, floor

import pytest

from lenscap.domains import Domain, Frame, make_singular_ellipsoid, scale_domain, validate_domain
from lenscap.geometry import Vec, vec
from lenscap.paths import (
    ConcavePath,
    DecoratedPath,
    EnumerationBoundError,
    PathError,
    capacity_by_paths,
    empty_path,
    enumerate_paths,
    lattice_count,
    lattice_points,
    omega_length,
    validate_decorated,
    validate_path,
)
from lenscap.spectrum import singular_ellipsoid_spectrum

F21 = Frame(2, 1)


def path(frame, s, *edges):
    return validate_path(
        ConcavePath(frame, s, tuple((Vec(*d), mult) for d, mult in edges))
    )


def brute_lattice_count(p: ConcavePath) -> int:
    """Independent oracle: direct scan of the column strips under the path."""
    if p.is_empty:
        return 0
    verts = list(reversed(p.vertices()))  # increasing x

    def height(x: Fraction) -> Fraction:
        for v, w in zip(verts, verts[1:]):
            if v.x <= x <= w.x:
                return v.y + (x - v.x) * Fraction(w.y - v.y, w.x - v.x)
        raise AssertionError

    def on_path(q: Vec) -> bool:
        from lenscap.geometry import point_on_segment

        return any(
            point_on_segment(q, v, w) for v, w in zip(verts, verts[1:])
        )

    n, m = p.frame.n, p.frame.m
    count = 0
    for x in range(0, int(p.start.x) + 1):
        lo = ceil(Fraction(m * x, n))
        hi = floor(height(Fraction(x)))
        for y in range(lo, hi + 1):
            if not on_path(Vec(x, y)):
                count += 1
    return count


def test_validate_rejects_nonprimitive():
    with pytest.raises(PathError):
        validate_path(ConcavePath(F21, 1, ((Vec(-2, 0), 1),)))


def test_validate_path_good_cases():
    p = path(F21, 1, ((-1, 0), 2))
    assert p.end == Vec(0, 1)
    p = path(F21, 1, ((-1, 0), 1), ((-1, 1), 1))
    assert p.end == Vec(0, 2)


def test_validate_path_bad_direction():
    with pytest.raises(PathError):
        path(F21, 1, ((-1, -1), 1))  # n*q - m*p = -1 <= 0


def test_validate_path_convex_turn():
    with pytest.raises(PathError):
        path(F21, 2, ((-1, 1), 1), ((-1, 0), 1))


def test_validate_path_endpoint():
    with pytest.raises(PathError):
        path(F21, 1, ((-1, 0), 1))  # ends at (1,1), not on the axis
    with pytest.raises(PathError):
        validate_path(ConcavePath(F21, 0, ((Vec(-1, 0), 1),)))


def test_lattice_count_examples():
    assert lattice_count(path(F21, 1, ((-1, 0), 2))) == 1
    assert lattice_count(path(F21, 1, ((-1, 0), 1), ((-1, 1), 1))) == 2
    assert lattice_count(empty_path(F21)) == 0
    assert lattice_points(path(F21, 1, ((-1, 0), 2))) == (Vec(0, 0),)


def test_lattice_count_against_brute_oracle():
    for frame in (Frame(1, 0), F21, Frame(3, 2), Frame(3, 1)):
        for count in range(0, 5):
            for p in enumerate_paths(frame, count):
                assert brute_lattice_count(p) == count


def test_omega_length_examples():
    b2 = make_singular_ellipsoid(F21, 1, 1)
    assert omega_length(b2, path(F21, 1, ((-1, 0), 2))) == 2
    assert omega_length(b2, path(F21, 1, ((-1, 0), 1), ((-1, 1), 1))) == 2
    assert omega_length(scale_domain(b2, 2), path(F21, 1, ((-1, 0), 2))) == 4
    assert omega_length(b2, empty_path(F21)) == 0
    with pytest.raises(PathError):
        omega_length(make_singular_ellipsoid(Frame(3, 1), 1, 1), path(F21, 1, ((-1, 0), 2)))


def test_enumerate_paths_small():
    assert enumerate_paths(F21, 0) == (empty_path(F21),)
    level1 = enumerate_paths(F21, 1)
    assert [p.edges for p in level1] == [((Vec(-1, 0), 2),)]
    level2 = enumerate_paths(F21, 2)
    assert path(F21, 1, ((-1, 0), 1), ((-1, 1), 1)) in level2
    assert path(F21, 2, ((-3, -1), 1), ((-1, 0), 1)) in level2
    assert len(level2) == len(set(level2))
    for p in level2:
        assert validate_path(p) == p
        assert lattice_count(p) == 2


def test_enumerate_paths_bound():
    with pytest.raises(EnumerationBoundError):
        enumerate_paths(F21, 25)


def test_capacity_examples():
    b2 = make_singular_ellipsoid(F21, 1, 1)
    assert capacity_by_paths(b2, 0) == 0
    assert [capacity_by_paths(b2, k) for k in (1, 2, 4)] == [2, 2, 4]
    b4 = make_singular_ellipsoid(Frame(4, 1), 1, 1)
    assert [capacity_by_paths(b4, k) for k in range(1, 6)] == [4] * 5


@pytest.mark.parametrize("nm", [(1, 0), (2, 1), (3, 1)])
def test_capacity_matches_spectrum(nm):
    rng = random.Random(sum(nm))
    frame = Frame(*nm)
    for _ in range(2):
        a = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        b = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        dom = make_singular_ellipsoid(frame, a, b)
        caps = [capacity_by_paths(dom, k) for k in range(7)]
        assert tuple(caps) == singular_ellipsoid_spectrum(frame, a, b, 7)


def test_capacity_vs_spectrum_frame_3_2_normalization():
    # For m >= 2 the path capacities of the slanted triangle with apexes
    # (a/m)(n,m) and (0,b/m) are the admissible-combination sequence divided
    # by m: the boundary orbits have actions a/m and b/m, not a and b.
    frame = Frame(3, 2)
    for a, b in [(1, 1), (2, 3)]:
        dom = make_singular_ellipsoid(frame, a, b)
        caps = [capacity_by_paths(dom, k) * frame.m for k in range(7)]
        assert tuple(caps) == singular_ellipsoid_spectrum(frame, a, b, 7)


def test_capacity_nondecreasing_and_conformal():
    dom = validate_domain(Domain(F21, (vec(4, 2), vec(1, 2), vec(0, 3))))
    caps = [capacity_by_paths(dom, k) for k in range(7)]
    assert all(x <= y for x, y in zip(caps, caps[1:]))
    r = Fraction(3, 7)
    scaled = scale_domain(dom, r)
    assert [capacity_by_paths(scaled, k) for k in range(7)] == [r * c for c in caps]


def test_capacity_monotone_under_containment():
    small = make_singular_ellipsoid(F21, 1, 1)
    big = validate_domain(Domain(F21, (vec(4, 2), vec(1, 2), vec(0, 3))))
    for k in range(6):
        assert capacity_by_paths(small, k) <= capacity_by_paths(big, k)


def test_decorated_validation():
    p = path(F21, 1, ((-1, 0), 2))
    validate_decorated(DecoratedPath(p, ("h",)))
    with pytest.raises(PathError):
        validate_decorated(DecoratedPath(p, ("h", "e")))
    with pytest.raises(PathError):
        validate_decorated(DecoratedPath(p, ("x",)))

import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lenscap.geometry import (
    GeometryError,
    Vec,
    cross,
    lattice_points_in_polygon,
    lattice_points_on_segment,
    point_in_polygon,
    polygon_area,
    primitive_decompose,
    sl2_apply,
    trivialization_vector,
    vec,
)

coords = st.integers(min_value=-30, max_value=30)


def test_cross_examples():
    assert cross(Vec(1, 0), Vec(0, 1)) == 1
    assert cross(Vec(2, 1), Vec(1, 1)) == 1
    for v in [Vec(3, -7), Vec(0, 0), Vec(-2, 5)]:
        assert cross(v, v) == 0


@given(st.tuples(coords, coords), st.tuples(coords, coords))
def test_cross_antisymmetry(u, v):
    assert cross(u, v) == -cross(v, u)


def test_primitive_decompose_examples():
    assert primitive_decompose(Vec(-4, 2)) == (Vec(-2, 1), 2)
    assert primitive_decompose(Vec(-1, 0)) == (Vec(-1, 0), 1)
    assert primitive_decompose(Vec(0, 3)) == (Vec(0, 1), 3)
    with pytest.raises(GeometryError):
        primitive_decompose(Vec(0, 0))


def test_polygon_area_examples():
    assert polygon_area([(0, 0), (2, 1), (0, 1)]) == 1
    assert polygon_area([(0, 0), (1, 0), (1, 1), (0, 1)]) == 1
    assert polygon_area([(0, 0), (1, 0), (0, 1)]) == Fraction(1, 2)


def test_lattice_points_examples():
    count, pts = lattice_points_in_polygon(
        [(0, 0), (2, 1), (0, 1)], excluded_arcs=[((2, 1), (0, 1))]
    )
    assert (count, pts) == (1, [Vec(0, 0)])
    count, pts = lattice_points_in_polygon(
        [(0, 0), (2, 1), (0, 2)], excluded_arcs=[((2, 1), (0, 2))]
    )
    assert count == 3
    assert pts == [Vec(0, 0), Vec(0, 1), Vec(1, 1)]


def test_degenerate_polygon_counts_segment_points():
    count, pts = lattice_points_in_polygon([(0, 0), (2, 1)])
    assert pts == [Vec(0, 0), Vec(2, 1)]
    count, pts = lattice_points_in_polygon([(0, 0), (3, 0)])
    assert count == 4


def test_non_simple_polygon_rejected():
    bowtie = [(0, 0), (2, 2), (2, 0), (0, 2)]
    with pytest.raises(GeometryError):
        lattice_points_in_polygon(bowtie)


def test_point_in_polygon_boundary_inclusive():
    square = [(0, 0), (2, 0), (2, 2), (0, 2)]
    assert point_in_polygon((1, 1), square)
    assert point_in_polygon((2, 1), square)
    assert point_in_polygon((0, 0), square)
    assert not point_in_polygon((3, 1), square)
    assert point_in_polygon((Fraction(1, 2), Fraction(1, 2)), square)


def _random_star_polygon(rng: random.Random) -> list[Vec]:
    # star-shaped around the centroid, hence simple
    while True:
        pts = {(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(rng.randint(3, 8))}
        if len(pts) < 3:
            continue
        cx = Fraction(sum(p[0] for p in pts), len(pts))
        cy = Fraction(sum(p[1] for p in pts), len(pts))
        import math

        ordered = sorted(
            pts, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx))
        )
        poly = [Vec(*p) for p in ordered]
        area = polygon_area(poly)
        if area > 0:
            try:
                lattice_points_in_polygon(poly)
            except GeometryError:
                continue
            return poly


def test_pick_theorem_on_random_lattice_polygons():
    rng = random.Random(20240811)
    for _ in range(25):
        poly = _random_star_polygon(rng)
        area = polygon_area(poly)
        _, closed = lattice_points_in_polygon(poly)
        # boundary points via the independent gcd-per-edge formula
        boundary = sum(
            gcd(abs(int(b.x - a.x)), abs(int(b.y - a.y)))
            for a, b in zip(poly, poly[1:] + poly[:1])
        )
        interior = len(closed) - boundary
        assert area == interior + Fraction(boundary, 2) - 1


def test_lattice_count_invariant_under_sl2():
    rng = random.Random(7)
    matrices = [((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (-1, 1)), ((2, 1), (1, 1))]
    for _ in range(10):
        poly = _random_star_polygon(rng)
        count, _ = lattice_points_in_polygon(poly)
        for mat in matrices:
            image = [sl2_apply(mat, v) for v in poly]
            if polygon_area(image) < 0:
                image = list(reversed(image))
            image_count, _ = lattice_points_in_polygon(image)
            assert image_count == count


def test_trivialization_vector():
    assert trivialization_vector(1, 0) == Vec(0, 1)
    for n, m in [(2, 1), (3, 2), (3, 1), (4, 1), (5, 3), (1, 4)]:
        v = trivialization_vector(n, m)
        assert cross((n, m), v) == 1
        assert 0 <= v.x < max(n, 1)
    with pytest.raises(GeometryError):
        trivialization_vector(4, 2)


def test_sl2_apply():
    assert sl2_apply(((0, 1), (-1, 2)), Vec(2, 1)) == Vec(1, 0)
    assert sl2_apply(((1, 0), (0, 1)), Vec(-3, 7)) == Vec(-3, 7)
    assert sl2_apply(((1, 1), (0, 1)), Vec(0, 1)) == Vec(1, 1)
    with pytest.raises(GeometryError):
        sl2_apply(((1, 1), (1, 1)), Vec(1, 0))


def test_exact_rejects_floats():
    with pytest.raises(GeometryError):
        vec(0.5, 1)
    assert vec("1/2", 1) == Vec(Fraction(1, 2), 1)


def test_lattice_points_on_segment():
    assert lattice_points_on_segment((0, 0), (4, 2)) == [Vec(0, 0), Vec(2, 1), Vec(4, 2)]
    assert lattice_points_on_segment((Fraction(1, 2), 0), (Fraction(5, 2), 1)) == []
    assert lattice_points_on_segment((Fraction(1, 2), 0), (Fraction(3, 2), 2)) == [Vec(1, 1)]

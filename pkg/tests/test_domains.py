import random
from fractions import Fraction

import pytest

from lenscap.domains import (
    Domain,
    DomainError,
    Frame,
    SchemaError,
    check_capacity_sequence,
    decode_domain,
    domain_contains,
    encode_domain,
    make_singular_ellipsoid,
    scale_domain,
    support_value,
    validate_domain,
)
from lenscap.geometry import Vec, vec


def b2_unit() -> Domain:
    return make_singular_ellipsoid(Frame(2, 1), 1, 1)


def test_frame_invariants():
    Frame(2, 1)
    Frame(1, 0)
    Frame(1, 4)
    with pytest.raises(DomainError):
        Frame(4, 2)
    with pytest.raises(DomainError):
        Frame(2, 0)
    with pytest.raises(DomainError):
        Frame(0, 1)


def test_validate_domain_examples():
    d = validate_domain(Domain(Frame(2, 1), (vec(2, 1), vec(0, 1))))
    assert d.vertices == (Vec(2, 1), Vec(0, 1))
    d = validate_domain(Domain(Frame(2, 1), (vec(4, 2), vec(1, 2), vec(0, 3))))
    assert len(d.vertices) == 3
    with pytest.raises(DomainError):
        validate_domain(Domain(Frame(2, 1), (vec(2, 1), vec(1, 2), vec(0, 2))))


def test_validate_domain_merges_collinear_and_is_idempotent():
    d = validate_domain(
        Domain(Frame(2, 1), (vec(4, 2), vec(2, 2), vec(1, 2), vec(0, 3)))
    )
    assert d.vertices == (Vec(4, 2), Vec(1, 2), Vec(0, 3))
    assert validate_domain(d) == d


def test_validate_domain_error_cases():
    with pytest.raises(DomainError):  # first vertex off the ray
        validate_domain(Domain(Frame(2, 1), (vec(3, 1), vec(0, 1))))
    with pytest.raises(DomainError):  # last vertex off the axis
        validate_domain(Domain(Frame(2, 1), (vec(2, 1), vec(1, 3))))
    with pytest.raises(DomainError):  # bad edge direction (x increasing)
        validate_domain(Domain(Frame(2, 1), (vec(2, 1), vec(3, 4), vec(0, 5))))
    with pytest.raises(DomainError):  # irrational input
        validate_domain(Domain(Frame(2, 1), ((2.0, 1.0), (0.0, 1.0))))


def test_make_singular_ellipsoid():
    assert b2_unit().vertices == (Vec(2, 1), Vec(0, 1))
    e = make_singular_ellipsoid(Frame(1, 0), 2, 3)
    assert e.vertices == (Vec(2, 0), Vec(0, 3))
    e = make_singular_ellipsoid(Frame(3, 2), 2, 2)
    assert e.vertices == (Vec(3, 2), Vec(0, 1))
    with pytest.raises(DomainError):
        make_singular_ellipsoid(Frame(2, 1), 0, 1)


def test_support_value_examples():
    d = b2_unit()
    assert support_value(d, Vec(1, 0)) == (1, Vec(2, 1))  # tie broken toward the ray
    assert support_value(d, Vec(1, -1)) == (1, Vec(0, 1))
    assert support_value(d, Vec(2, -1)) == (2, Vec(0, 1))
    with pytest.raises(DomainError):
        support_value(d, Vec(0, 1))


def test_support_scaling_property():
    rng = random.Random(11)
    d = validate_domain(Domain(Frame(2, 1), (vec(4, 2), vec(1, 2), vec(0, 3))))
    for _ in range(20):
        w = Vec(rng.randint(1, 5), rng.randint(-4, 4))
        r = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        v1, _ = support_value(scale_domain(d, r), w)
        v0, _ = support_value(d, w)
        assert v1 == r * v0


def test_support_monotone_under_containment():
    small = b2_unit()
    big = validate_domain(Domain(Frame(2, 1), (vec(4, 2), vec(1, 2), vec(0, 3))))
    assert domain_contains(big, small)
    # sample w as negated edge directions of the fan (positive contributions)
    for w in [Vec(1, 0), Vec(1, -1), Vec(2, -1), Vec(3, 1), Vec(4, 1)]:
        assert small.frame.is_valid_edge_direction(Vec(-w.x, -w.y))
        assert 0 < support_value(small, w)[0] <= support_value(big, w)[0]


def test_scale_domain():
    d = b2_unit()
    assert scale_domain(d, 2).vertices == (Vec(4, 2), Vec(0, 2))
    assert scale_domain(d, 1) == d
    assert scale_domain(scale_domain(d, Fraction(1, 2)), 2) == d
    with pytest.raises(DomainError):
        scale_domain(d, 0)


def test_codec_round_trip():
    d = validate_domain(
        Domain(Frame(2, 1), (vec(4, 2), vec(Fraction(3, 2), 2), vec(0, 3)))
    )
    text = encode_domain(d)
    assert decode_domain(text) == d
    assert encode_domain(decode_domain(text)) == text
    # byte stability
    assert encode_domain(d) == encode_domain(d)


def test_decode_schema_errors():
    with pytest.raises(SchemaError):
        decode_domain('{"n": 4, "m": 2, "boundary": [[4,2],[0,1]]}')
    with pytest.raises(SchemaError):
        decode_domain('{"n": 2, "m": 1}')
    with pytest.raises(SchemaError):
        decode_domain('{"n": 2, "m": 1, "boundary": [[1.5, 2], [0, 1]]}')
    with pytest.raises(SchemaError):
        decode_domain('{"n": 2, "m": 1, "boundary": [[2, 1], [0, 1]], "extra": 0}')
    with pytest.raises(DomainError):  # vertex off the ray: validation error
        decode_domain('{"n": 2, "m": 1, "boundary": [[3, 1], [0, 1]]}')


def test_check_capacity_sequence():
    check_capacity_sequence((0, 1, 1, 2))
    with pytest.raises(DomainError):
        check_capacity_sequence((1, 2))
    with pytest.raises(DomainError):
        check_capacity_sequence((0, 2, 1))

import math

import pytest

from hexnav.hexgrid import HexDirection, angle_between_deg, bearing_of

from oracles import turn_delta_by_angle


def test_clockwise_indexing():
    assert [d.name for d in sorted(HexDirection, key=lambda d: d.index)] == \
        ["N", "NE", "SE", "S", "SW", "NW"]
    assert HexDirection.N.index == 0
    assert HexDirection.NW.index == 5


def test_opposite_is_index_plus_three():
    for d in HexDirection:
        assert d.opposite().index == (d.index + 3) % 6
        assert d.opposite().opposite() is d


def test_unit_vectors_sum_to_zero():
    sx = sum(d.vector[0] for d in HexDirection)
    sy = sum(d.vector[1] for d in HexDirection)
    assert abs(sx) < 1e-12 and abs(sy) < 1e-12


def test_vectors_are_unit_length():
    for d in HexDirection:
        assert math.hypot(*d.vector) == pytest.approx(1.0, abs=1e-12)


def test_adjacent_indices_are_sixty_degrees_apart():
    for d in HexDirection:
        nxt = d.rotated(1)
        assert angle_between_deg(*d.vector, *nxt.vector) == pytest.approx(60.0, abs=1e-9)


def test_named_vectors_match_definition():
    h = math.sqrt(3) / 2
    assert HexDirection.N.vector == (0.0, 1.0)
    assert HexDirection.NE.vector == pytest.approx((h, 0.5))
    assert HexDirection.SE.vector == pytest.approx((h, -0.5))
    assert HexDirection.S.vector == (0.0, -1.0)
    assert HexDirection.SW.vector == pytest.approx((-h, -0.5))
    assert HexDirection.NW.vector == pytest.approx((-h, 0.5))


def test_bearing_of_exact_and_tolerant():
    assert bearing_of(0.0, 1.0) is HexDirection.N
    assert bearing_of(0.5543, 0.32) is HexDirection.NE     # within 1 degree
    assert bearing_of(0.5543, -0.32) is HexDirection.SE
    assert bearing_of(1.0, 1.0) is None                    # 45 degrees off axis
    assert bearing_of(0.0, 0.0) is None


def test_rotated_agrees_with_angle_arithmetic():
    for d in HexDirection:
        for k in range(6):
            assert turn_delta_by_angle(d, d.rotated(k)) == k

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_instance, small_instances
from roadmatch import Address, Road, Roadmap, roadmap_distance, validate_instance
from roadmatch.errors import (
    CardinalityMismatch,
    CoordinateOutOfRange,
    DanglingEndpoint,
    Disconnected,
    NonPositiveLength,
    ParseError,
    UnknownRoad,
)


def raw(roads, S=(), T=(), vertices=("u", "v")):
    return {
        "vertices": list(vertices),
        "roads": [dict(zip(("id", "tail", "head", "length"), r)) for r in roads],
        "S": [{"road": r, "y": y} for r, y in S],
        "T": [{"road": r, "y": y} for r, y in T],
    }


def test_empty_instance_is_valid():
    inst = validate_instance(raw([("r", "u", "v", 1.0)]))
    assert inst.M == 0


@pytest.mark.parametrize("length", [-2.0, 0.0, math.inf, math.nan])
def test_bad_length(length):
    with pytest.raises(NonPositiveLength):
        validate_instance(raw([("r", "u", "v", length)]))


def test_disconnected():
    with pytest.raises(Disconnected):
        validate_instance(
            raw([("r1", "a", "b", 1.0), ("r2", "c", "d", 1.0)], vertices="abcd")
        )


def test_dangling_endpoint():
    with pytest.raises(DanglingEndpoint):
        validate_instance(raw([("r", "u", "x", 1.0)]))


def test_cardinality_mismatch():
    with pytest.raises(CardinalityMismatch):
        validate_instance(raw([("r", "u", "v", 1.0)], S=[("r", 0.1)]))


@pytest.mark.parametrize("y", [-0.1, 1.5])
def test_coordinate_out_of_range(y):
    with pytest.raises(CoordinateOutOfRange):
        validate_instance(raw([("r", "u", "v", 1.0)], S=[("r", y)], T=[("r", 0.5)]))


def test_endpoint_coordinates_admitted():
    inst = validate_instance(raw([("r", "u", "v", 1.0)], S=[("r", 0.0)], T=[("r", 1.0)]))
    assert inst.M == 1


def test_unknown_road():
    with pytest.raises(UnknownRoad):
        validate_instance(raw([("r", "u", "v", 1.0)], S=[("q", 0.1)], T=[("r", 0.5)]))


def test_missing_field_is_parse_error():
    with pytest.raises(ParseError):
        validate_instance({"vertices": ["u"], "roads": []})


def test_same_road_distance():
    rm = Roadmap(("u", "v"), (Road("r", "u", "v", 10.0),))
    assert roadmap_distance(rm, Address("r", 2.0), Address("r", 7.0)) == pytest.approx(5.0)


def test_parallel_roads_distance():
    rm = Roadmap(("u", "v"), (Road("r1", "u", "v", 1.0), Road("r2", "u", "v", 3.0)))
    # via u: 0.5 + 0.5; via v: 0.5 + 2.5
    assert roadmap_distance(rm, Address("r1", 0.5), Address("r2", 0.5)) == pytest.approx(1.0)


def test_self_loop_distance():
    rm = Roadmap(("u",), (Road("r", "u", "u", 10.0),))
    assert roadmap_distance(rm, Address("r", 0.5), Address("r", 9.5)) == pytest.approx(1.0)


def test_same_road_shortcut_through_other_road():
    rm = Roadmap(("u", "v"), (Road("r1", "u", "v", 10.0), Road("r2", "u", "v", 1.0)))
    assert roadmap_distance(rm, Address("r1", 1.0), Address("r1", 9.0)) == pytest.approx(3.0)


def _addresses(inst, rng, k):
    rm = inst.roadmap
    out = []
    for _ in range(k):
        r = int(rng.integers(rm.n_roads))
        out.append(Address(rm.roads[r].id, float(rng.uniform(0, rm.lengths[r]))))
    return out


@given(small_instances(max_points=0), st.integers(0, 2**32 - 1))
def test_metric_properties(inst, seed):
    rm = inst.roadmap
    a, b, c = _addresses(inst, np.random.default_rng(seed), 3)
    dab = roadmap_distance(rm, a, b)
    assert dab == pytest.approx(roadmap_distance(rm, b, a), rel=1e-9, abs=1e-12)
    assert roadmap_distance(rm, a, c) <= dab + roadmap_distance(rm, b, c) + 1e-9
    assert roadmap_distance(rm, a, a) == 0.0
    assert dab <= rm.total_length + 1e-9


@given(st.floats(0.1, 100), st.floats(0, 1), st.floats(0, 1))
def test_single_road_reduces_to_offset(length, fa, fb):
    rm = Roadmap(("u", "v"), (Road("r", "u", "v", length),))
    a, b = Address("r", fa * length), Address("r", fb * length)
    assert roadmap_distance(rm, a, b) == pytest.approx(abs(a.y - b.y), rel=1e-9, abs=1e-12)


def test_instance_addresses_roundtrip():
    inst = make_instance(["u", "v"], [("r", "u", "v", 2.0)], [("r", 0.5)], [("r", 1.5)])
    assert inst.S == [Address("r", 0.5)]
    assert inst.T == [Address("r", 1.5)]

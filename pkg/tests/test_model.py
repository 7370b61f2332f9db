"""Constraint schema, validation, cad graphs, tangency, serialization."""

import random
from fractions import Fraction

import pytest

from bodycad import (
    KIND_NAMES,
    KINDS,
    Framework,
    constraint,
    framework,
    framework_from_data,
    framework_to_data,
    reduce_tangency,
    tangency,
    validate,
)
from bodycad.errors import DegenerateDirection, InputError, InvalidRadius
from bodycad.geometry import vec3
from bodycad.model import Body, Line, Plane, cad_graph_of, primitive_graph_of
from conftest import EXPECTED_COUNTS, load_framework, random_constraint, random_framework


def test_kind_registry_matches_reference_counts():
    assert KIND_NAMES == tuple(EXPECTED_COUNTS)
    for name, (na, nb) in EXPECTED_COUNTS.items():
        assert (KINDS[name].n_angular, KINDS[name].n_blind) == (na, nb), name


def test_degenerate_elements_rejected():
    with pytest.raises(DegenerateDirection):
        Line(vec3(0, 0, 0), vec3(0, 0, 0))
    with pytest.raises(DegenerateDirection):
        Plane(vec3(1, 1, 1), vec3(0, 0, 0))
    with pytest.raises(DegenerateDirection):
        constraint("line_line_parallel", "A", "B",
                   point_i=(0, 0, 0), point_j=(1, 1, 1), direction=(0, 0, 0))


def test_constraint_schema_errors():
    with pytest.raises(InputError):
        constraint("sphere_sphere_tangency", "A", "B")
    with pytest.raises(InputError):
        constraint("point_point_distance", "A", "A",
                   point_i=(0, 0, 0), point_j=(1, 0, 0), distance=1)
    with pytest.raises(InputError):  # missing distance
        constraint("point_point_distance", "A", "B",
                   point_i=(0, 0, 0), point_j=(1, 0, 0))
    with pytest.raises(InputError):  # stray field
        constraint("point_point_coincidence", "A", "B", point=(0, 0, 0), distance=1)
    with pytest.raises(InputError):
        constraint("point_point_distance", "A", "B",
                   point_i=(0, 0, 0), point_j=(1, 0, 0), distance=-1)


def test_angle_payload_forms():
    exact = constraint("line_line_fixed_angular", "A", "B",
                       line_i=((0, 0, 0), (1, 0, 0)),
                       line_j=((0, 0, 0), (3, 4, 0)),
                       angle={"cos": "3/5"})
    assert exact.cos == Fraction(3, 5) and exact.angle_exact

    ninety = constraint("plane_plane_fixed_angular", "A", "B",
                        plane_i=((0, 0, 0), (1, 0, 0)),
                        plane_j=((0, 0, 0), (0, 1, 0)),
                        angle={"degrees": 60})
    assert ninety.cos == Fraction(1, 2) and ninety.angle_exact

    skew = constraint("line_line_fixed_angular", "A", "B",
                      line_i=((0, 0, 0), (1, 0, 0)),
                      line_j=((0, 0, 0), (1, 1, 0)),
                      angle={"degrees": 37})
    assert not skew.angle_exact

    fw = framework(["A", "B"], [skew])
    assert not fw.exact
    with pytest.raises(InputError):
        constraint("line_line_fixed_angular", "A", "B",
                   line_i=((0, 0, 0), (1, 0, 0)),
                   line_j=((0, 0, 0), (0, 1, 0)),
                   angle={"radians": 1})


def test_framework_body_checks():
    with pytest.raises(InputError):
        framework(["A", "A"], [])
    with pytest.raises(InputError):
        framework(["A", "B"],
                  [constraint("point_point_coincidence", "A", "C", point=(0, 0, 0))])


@pytest.mark.parametrize("name", [
    "dice.json", "dice-minus-distance.json", "dice-two-lines.json",
    "tight-but-flexible.json", "chain.json", "sixbar.json",
])
def test_fixture_frameworks_validate(name):
    assert validate(load_framework(name)) == []


def test_validate_flags_wrong_payloads():
    bad_bar = framework(["A", "B"], [
        constraint("point_point_distance", "A", "B",
                   point_i=(0, 0, 0), point_j=(3, 4, 0), distance=6),
    ])
    violations = validate(bad_bar)
    assert len(violations) == 1 and "squared distance" in violations[0].message

    off_plane = framework(["A", "B"], [
        constraint("point_plane_coincidence", "A", "B",
                   point_i=(0, 0, 1), plane_j=((0, 0, 0), (0, 0, 1))),
    ])
    assert len(validate(off_plane)) == 1

    # parallel lines must use the parallel kind, not a fixed angle
    parallel = framework(["A", "B"], [
        constraint("line_line_fixed_angular", "A", "B",
                   line_i=((0, 0, 0), (1, 0, 0)),
                   line_j=((5, 5, 5), (2, 0, 0)),
                   angle={"cos": 1}),
    ])
    assert any("parallel" in v.message for v in validate(parallel))


def test_validate_tolerance_for_inexact_angles():
    fw = framework(["A", "B"], [
        constraint("line_line_fixed_angular", "A", "B",
                   line_i=((0, 0, 0), (1, 0, 0)),
                   line_j=((0, 0, 0), (1, 1, 0)),
                   angle={"degrees": 45}),
    ])
    assert validate(fw) == []
    assert validate(fw, tolerance=Fraction(0)) != []


def test_random_payloads_validate_for_every_kind():
    rng = random.Random(2024)
    for kind in KIND_NAMES:
        for _ in range(10):
            c = random_constraint(kind, "A", "B", rng)
            assert validate(framework(["A", "B"], [c])) == [], kind


def test_cad_and_primitive_graphs():
    fw = load_framework("dice.json")
    cg = cad_graph_of(fw)
    assert cg.body_ids == ("A", "B")
    assert [(e.n_angular, e.n_blind) for e in cg.edges] == [(2, 0), (1, 0), (1, 1), (0, 3)]

    pg = primitive_graph_of(fw)
    assert pg.n == 2
    assert len(pg.edges) == 8
    colors = [e.color for e in pg.edges]
    assert colors == ["red", "red", "red", "red", "black", "black", "black", "black"]
    for k, c in enumerate(fw.constraints):
        mine = [e for e in pg.edges if e.constraint_index == k]
        info = KINDS[c.kind]
        assert [e.ordinal for e in mine] == list(range(info.n_angular + info.n_blind))
        assert all(e.color == "red" for e in mine[: info.n_angular])
        assert all(e.color == "black" for e in mine[info.n_angular:])


def test_tangency_reductions():
    ss = tangency("sphere_sphere", "A", "B",
                  center_i=(0, 0, 0), center_j=(5, 0, 0), radius_i=2, radius_j=3)
    r = reduce_tangency(ss)
    assert r.kind == "point_point_distance" and r.distance == 5

    internal = tangency("sphere_sphere", "A", "B", internal=True,
                        center_i=(0, 0, 0), center_j=(1, 0, 0), radius_i=2, radius_j=3)
    assert reduce_tangency(internal).distance == 1

    sp = tangency("sphere_plane", "A", "B",
                  center_i=(0, 0, 2), plane_j=((0, 0, 0), (0, 0, 1)), radius_i=2)
    r = reduce_tangency(sp)
    assert (r.kind, r.i, r.j, r.distance) == ("point_plane_distance", "A", "B", 2)

    cc = tangency("cylinder_cylinder", "A", "B",
                  axis_i=((0, 0, 0), (1, 0, 0)), axis_j=((0, 0, 3), (0, 1, 0)),
                  radius_i=1, radius_j=2)
    r = reduce_tangency(cc)
    assert (r.kind, r.distance) == ("line_line_distance", 3)

    # the reduced point-line kinds put the point on body i, so the
    # cylinder-on-i forms come out with swapped endpoints
    cs = tangency("cylinder_sphere", "A", "B",
                  axis_i=((0, 0, 0), (1, 0, 0)), center_j=(0, 0, 3), radius_i=1, radius_j=2)
    r = reduce_tangency(cs)
    assert (r.kind, r.i, r.j, r.distance) == ("point_line_distance", "B", "A", 3)

    cp = tangency("cylinder_point", "A", "B",
                  axis_i=((0, 0, 0), (1, 0, 0)), point_j=(0, 2, 0), radius_i=2)
    r = reduce_tangency(cp)
    assert (r.kind, r.i, r.j) == ("point_line_distance", "B", "A")


def test_tangency_radius_errors():
    with pytest.raises(InvalidRadius):
        reduce_tangency(tangency("sphere_plane", "A", "B",
                                 center_i=(0, 0, 0), plane_j=((0, 0, 0), (0, 0, 1)),
                                 radius_i=0))
    with pytest.raises(InvalidRadius):  # equal radii internal: zero distance
        reduce_tangency(tangency("sphere_sphere", "A", "B", internal=True,
                                 center_i=(0, 0, 0), center_j=(1, 0, 0),
                                 radius_i=2, radius_j=2))
    with pytest.raises(InputError):  # internal tangency needs a second radius
        reduce_tangency(tangency("sphere_plane", "A", "B", internal=True,
                                 center_i=(0, 0, 0), plane_j=((0, 0, 0), (0, 0, 1)),
                                 radius_i=2))
    with pytest.raises(InputError):
        tangency("cone_plane", "A", "B", radius_i=1)
    with pytest.raises(InputError):
        tangency("sphere_sphere", "A", "B", center_i=(0, 0, 0), wobble=3, radius_i=1)


def test_serialization_round_trip():
    rng = random.Random(7)
    for _ in range(25):
        fw = random_framework(rng)
        again = framework_from_data(framework_to_data(fw))
        assert again == fw

    for name in ("dice.json", "tight-but-flexible.json", "sixbar.json"):
        fw = load_framework(name)
        assert framework_from_data(framework_to_data(fw)) == fw


def test_framework_from_data_rejects_bad_input():
    with pytest.raises(InputError):
        framework_from_data([])
    with pytest.raises(InputError):
        framework_from_data({"version": 2, "bodies": [{"id": "A"}], "constraints": []})
    with pytest.raises(InputError):
        framework_from_data({"version": 1, "bodies": [], "constraints": []})
    with pytest.raises(InputError):
        framework_from_data({"version": 1, "bodies": [{"id": "A"}], "constraints": [3]})


def test_body_labels_survive_round_trip():
    fw = Framework((Body("A", "base"), Body("B")), ())
    data = framework_to_data(fw)
    assert data["bodies"][0] == {"id": "A", "label": "base"}
    assert framework_from_data(data) == fw

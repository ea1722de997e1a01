import copy
import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import ALL_BUILDERS, surface
from isodirac import builders
from isodirac.errors import (
    DegenerateCorner,
    Disconnected,
    EulerMismatch,
    InvalidRotation,
    NonBipartite,
    NonPositiveAngle,
    NotIncident,
    WhiteAngleSum,
)
from isodirac.surface import (
    TWO_PI,
    build_surface,
    cone_angles,
    edge_direction,
    load_surface,
    save_surface,
    singular_set,
    star_area,
    turning_angle,
)


def test_honeycomb_is_flat_everywhere():
    s = surface("honeycomb")
    assert all(abs(t - TWO_PI) < 1e-12 for t in cone_angles(s).values())
    assert singular_set(s) == {}


def test_genus2_has_one_singular_face_of_angle_6pi():
    s = surface("genus2")
    sing = singular_set(s)
    assert len(sing) == 1
    (kind, _), theta = next(iter(sing.items()))
    assert kind == "face" and theta == pytest.approx(6 * math.pi, abs=1e-12)
    assert s.euler_characteristic == -2
    assert max(len(f) for f in s.faces) == 12


def test_total_defect_of_genus2():
    s = surface("genus2")
    defect = sum(TWO_PI - t for t in cone_angles(s).values())
    assert defect == pytest.approx(-4 * math.pi, abs=1e-9)


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_surface_invariants(name):
    s = surface(name)
    assert sum(len(f) for f in s.faces) == 2 * s.n_edges
    assert sorted(d for f in s.faces for d in f.darts) == list(range(2 * s.n_edges))
    for f in s.faces:
        assert len(f) % 2 == 0
        colors = [s.is_white[v] for v in f.corners]
        assert all(a != b for a, b in zip(colors, colors[1:] + colors[:1]))
    d = np.array([s.edge_length(e) for e in range(s.n_edges)])
    assert np.allclose(d * s.dual_lengths, 2 * s.delta ** 2 * np.sin(s.alpha), atol=1e-12)
    defect = sum(TWO_PI - t for t in cone_angles(s).values())
    assert abs(defect - TWO_PI * s.euler_characteristic) < 1e-9


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_directions_increase_around_white_vertices(name):
    s = surface(name)
    for w in s.white_vertices:
        dirs = [edge_direction(s, w, e) for e in s.rotation[w]]
        assert dirs[0] == 0.0
        assert all(a < b for a, b in zip(dirs, dirs[1:]))
        assert dirs[-1] < TWO_PI


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_face_turning_angles_sum_to_cone_angle(name):
    s = surface(name)
    for f in s.faces:
        total = sum(math.pi - turning_angle(s, f.darts, v) for v in f.corners)
        assert total == pytest.approx(s.face_angle[f.index], abs=1e-9)


def test_edge_direction_examples():
    s = surface("honeycomb")
    w = s.vertex_index("w0_0")
    rot = s.rotation[w]
    assert edge_direction(s, w, rot[0]) == 0.0
    assert edge_direction(s, w, rot[2]) == pytest.approx(4 * math.pi / 3)
    assert edge_direction(s, w, rot[1], offset=0.5) == pytest.approx(2 * math.pi / 3 - 0.5)
    other = next(e for e in range(s.n_edges) if e not in rot)
    with pytest.raises(NotIncident):
        edge_direction(s, w, other)


def test_turning_angle_examples():
    s = surface("honeycomb")
    f = s.faces[0]
    w = next(v for v in f.corners if s.is_white[v])
    assert turning_angle(s, f.darts, w) == pytest.approx(2 * math.pi / 3)
    sq = builders.square_torus(4, 4)
    # a horizontal row of the square lattice is a straight line
    row = []
    for x in range(4):
        e = sq.edge_index(f"h0_{x}")
        v = sq.vertex_index(f"{'w' if x % 2 == 0 else 'b'}0_{x}")
        row.append(sq.dart_from(e, v))
    assert all(turning_angle(sq, row, sq.tail(d)) == pytest.approx(math.pi) for d in row)
    d = row[0]
    with pytest.raises(DegenerateCorner):
        turning_angle(sq, [d, d ^ 1], sq.tail(d))


def test_star_area():
    s = surface("honeycomb")
    assert star_area(s, 0) == pytest.approx(3 * math.sqrt(3) / 2)
    sq = builders.square_torus(2, 2)
    assert star_area(sq, sq.white_vertices[0]) == pytest.approx(4 * sq.delta ** 2)


@pytest.mark.parametrize("name", ALL_BUILDERS)
def test_star_area_bounds(name):
    s = surface(name)
    for w in s.white_vertices:
        a = star_area(s, w)
        assert 0 < a <= math.pi * s.delta ** 2 * len(s.rotation[w]) / 2


def test_json_round_trip(tmp_path):
    s = surface("genus2")
    path = tmp_path / "s.json"
    save_surface(s, path)
    t = load_surface(path)
    assert t.to_dict() == s.to_dict()
    assert [f.darts for f in t.faces] == [f.darts for f in s.faces]


def _spec():
    return copy.deepcopy(surface("honeycomb").to_dict())


def test_rejects_white_angle_sum():
    spec = _spec()
    spec["edges"]["u0_0"]["alpha"] = 2.0
    with pytest.raises(WhiteAngleSum):
        build_surface(spec)


def test_rejects_degree_two_white_vertex():
    spec = {
        "delta": 1.0,
        "vertices": [{"id": "w", "color": "white"}, {"id": "b", "color": "black"}],
        "edges": {"a": {"white": "w", "black": "b", "alpha": math.pi / 2},
                  "c": {"white": "w", "black": "b", "alpha": math.pi / 2}},
        "rotations": {"w": ["a", "c"], "b": ["c", "a"]},
    }
    with pytest.raises(WhiteAngleSum):
        build_surface(spec)


def test_rejects_non_bipartite():
    spec = _spec()
    spec["vertices"][0]["color"] = "black"
    with pytest.raises(NonBipartite):
        build_surface(spec)


def test_rejects_bad_angle():
    spec = _spec()
    spec["edges"]["u0_0"]["alpha"] = -0.1
    with pytest.raises(NonPositiveAngle):
        build_surface(spec)


def test_rejects_broken_rotation():
    spec = _spec()
    spec["rotations"]["w0_0"] = spec["rotations"]["w0_0"][:2]
    with pytest.raises(InvalidRotation):
        build_surface(spec)


def test_rejects_sphere():
    # one white star of degree 3 around a single black vertex is a sphere
    a = 2 * math.pi / 3
    spec = {
        "delta": 1.0,
        "vertices": [{"id": "w", "color": "white"}, {"id": "b", "color": "black"}],
        "edges": {k: {"white": "w", "black": "b", "alpha": a} for k in "xyz"},
        "rotations": {"w": ["x", "y", "z"], "b": ["z", "y", "x"]},
    }
    with pytest.raises(EulerMismatch):
        build_surface(spec)


def test_rejects_disconnected():
    one = surface("honeycomb11").to_dict()
    two = json.loads(json.dumps(one).replace('"w0_0"', '"W"').replace('"b0_0"', '"B"')
                     .replace('"u0_0"', '"U"').replace('"l0_0"', '"L"').replace('"r0_0"', '"R"'))
    spec = {"delta": 1.0, "vertices": one["vertices"] + two["vertices"],
            "edges": {**one["edges"], **two["edges"]},
            "rotations": {**one["rotations"], **two["rotations"]}}
    with pytest.raises(Disconnected):
        build_surface(spec)


@given(st.integers(1, 5), st.integers(1, 5))
def test_honeycomb_counts(rows, cols):
    s = builders.honeycomb_torus(rows, cols)
    assert (s.n_vertices, s.n_edges, s.n_faces) == (2 * rows * cols, 3 * rows * cols, rows * cols)
    assert s.genus == 1

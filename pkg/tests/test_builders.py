import math

import pytest
from hypothesis import given, strategies as st

from conftest import surface
from isodirac import builders, dirac, homology
from isodirac.errors import (
    AngleOutOfRange,
    ConstructionInvalid,
    InputError,
    WhiteDegreeTooSmall,
)
from isodirac.surface import TWO_PI, singular_set


@pytest.mark.parametrize("name,counts,genus", [
    ("honeycomb", (18, 27, 9), 1),
    ("k33", (6, 9, 3), 1),
    ("rtorus", (36, 72, 36), 1),
    ("genus2", (20, 40, 18), 2),
    ("slit", (32, 64, 30), 2),
])
def test_counts(name, counts, genus):
    s = surface(name)
    assert (s.n_vertices, s.n_edges, s.n_faces) == counts
    assert s.genus == genus


def test_k33_is_a_flat_hexagonal_torus():
    s = surface("k33")
    assert all(len(f) == 6 for f in s.faces)
    assert singular_set(s) == {}
    assert all(a == pytest.approx(2 * math.pi / 3) for a in s.alpha)


@given(st.sampled_from([2, 4, 6]), st.integers(1, 4),
       st.lists(st.floats(0.2, math.pi - 0.2), min_size=6, max_size=6))
def test_rhombi_torus_is_flat_for_any_row_angles(m, n, angles):
    s = builders.rhombi_torus(m, n, row_angles=angles[:m])
    assert s.genus == 1
    assert singular_set(s) == {}
    assert all(len(f) == 4 for f in s.faces)


def test_rhombi_torus_shift():
    plain, shifted = surface("rtorus"), surface("rtorus_shifted")
    assert (plain.n_vertices, plain.n_edges) == (shifted.n_vertices, shifted.n_edges)
    assert singular_set(shifted) == {}
    assert dirac.condition_ii(plain, homology.cycle_basis(plain))[0]
    assert not dirac.condition_ii(shifted, homology.cycle_basis(shifted))[0]


@pytest.mark.parametrize("shift", range(7))
def test_rhombi_torus_shift_parity(shift):
    # residues are 0 or pi, the latter exactly for odd shifts
    s = builders.rhombi_torus(6, 6, shift=shift)
    ok, res = dirac.condition_ii(s, homology.cycle_basis(s))
    assert ok == (shift % 2 == 0)
    assert all(min(abs(r), abs(abs(r) - math.pi)) < 1e-9 for r in res)


def test_rhombi_torus_shear_keeps_gauss_bonnet():
    angles = [math.pi / 3, 2 * math.pi / 3] * 3
    angles[0] = 1.2
    s = builders.rhombi_torus(6, 6, row_angles=angles)
    assert sum(TWO_PI - t for t in s.face_angle) == pytest.approx(0, abs=1e-9)
    assert dirac.condition_i(s)


def test_rhombi_torus_rejects_bad_input():
    with pytest.raises(InputError):
        builders.rhombi_torus(5, 2)
    with pytest.raises(InputError):
        builders.rhombi_torus(4, 2, row_angles=[1.0])
    with pytest.raises(AngleOutOfRange):
        builders.rhombi_torus(2, 2, row_angles=[1.0, math.pi])


def test_genus2_octagon_parity_rule():
    with pytest.raises(ConstructionInvalid):
        builders.genus2_octagon(1, (3, 3, 2, 1))
    with pytest.raises(InputError):
        builders.genus2_octagon(0)
    big = builders.genus2_octagon(2)
    assert big.genus == 2 and big.n_vertices == 80


def test_octagon_corners():
    pts = builders.octagon_corners((4, 4, 2, 2), 1)
    area = 0.5 * abs(sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1])))
    assert area == 20


def test_slit_double_torus_faces():
    s = surface("slit")
    sing = singular_set(s)
    assert sorted(t / math.pi for t in sing.values()) == pytest.approx([4, 4])
    assert all(k == "face" for k, _ in sing)


def test_square_torus_rejects_odd_sizes():
    with pytest.raises(InputError):
        builders.square_torus(3, 4)


def test_realize_bipartite_errors():
    edges = {"a": ("w", "b"), "c": ("w", "b")}
    with pytest.raises(WhiteDegreeTooSmall):
        builders.realize_bipartite(["w"], ["b"], edges, {"w": ["a", "c"], "b": ["c", "a"]})
    with pytest.raises(InputError):
        builders.realize_bipartite(["w"], ["b"], {"a": ("x", "b")}, {})


def test_realize_bipartite_without_genus_check():
    edges = {k: ("w", "b") for k in "xyz"}
    s = builders.realize_bipartite(["w"], ["b"], edges, {"w": list("xyz"), "b": list("zyx")},
                                   require_genus=False)
    assert s.euler_characteristic == 2


@given(st.floats(-0.4, 0.4), st.integers(0, 5))
def test_balanced_two_row_shear_keeps_cycle_condition(t, k):
    # the residue is the alternating sum of the row perturbations
    angles = [math.pi / 3 if j % 2 == 0 else 2 * math.pi / 3 for j in range(6)]
    angles[k] += t
    angles[(k + 1) % 6] += t
    s = builders.rhombi_torus(6, 6, row_angles=angles)
    ok, res = dirac.condition_ii(s, homology.cycle_basis(s))
    assert ok, res
    single = list(angles)
    single[(k + 1) % 6] -= t
    _, res1 = dirac.condition_ii(builders.rhombi_torus(6, 6, row_angles=single),
                                 homology.cycle_basis(s))
    assert max(abs(r) for r in res1) == pytest.approx(abs(t), abs=1e-9)

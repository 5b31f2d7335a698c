from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surgery_forms.controlled import (
    AmbiguousLift,
    ControlError,
    GeometricForm,
    TorusPoint,
    _lift,
    control_realize,
    forget_control,
    geodesic_distance_sq,
    radius,
    transfer_permutation,
)
from surgery_forms.forms import make_psi_n
from surgery_forms.matrix import RingMatrix
from surgery_forms.transfer import Cover, transfer_matrix

from conftest import polys, z

F = Fraction


def one_minus_z1():
    return RingMatrix(2, [[1 - z(1, 2)]])


def test_distance_examples():
    o = TorusPoint.origin(2)
    assert geodesic_distance_sq(o, TorusPoint([F(1, 2), 0])) == F(1, 4)
    assert geodesic_distance_sq(o, TorusPoint([F(3, 4), 0])) == F(1, 16)
    x = TorusPoint(["1/3", "2/5"])
    assert geodesic_distance_sq(x, x) == 0
    with pytest.raises(ValueError):
        geodesic_distance_sq(o, TorusPoint.origin(3))
    with pytest.raises(ValueError):
        TorusPoint([1, 0])
    assert TorusPoint.wrap([F(-1, 4), F(5, 4)]).coords == (F(3, 4), F(1, 4))


def test_realize_one_minus_z1():
    g = control_realize(one_minus_z1(), 3)
    assert g.size == 9
    pos = {lab: a for a, lab in enumerate(g.labels)}
    a = pos[((0, 0), 1)]
    assert g.entries[(a, a)] == 1
    assert g.entries[(a, pos[((1, 0), 1)])] == -1
    assert len(g.entries) == 18
    assert radius(g) == F(1, 9)


def test_constant_form_is_diagonal():
    g = control_realize(RingMatrix(2, [[5]]), 3)
    assert all(a == b and c == 5 for (a, b), c in g.entries.items())
    assert radius(g) == 0
    back = forget_control(g, F(1, 16))
    assert back == RingMatrix.identity(9, 2).scale(5)


def test_radius_scaling():
    r4 = radius(control_realize(one_minus_z1(), 4))
    r8 = radius(control_realize(one_minus_z1(), 8))
    assert r4 == F(1, 16) and r8 == r4 / 4


def test_k_too_small():
    with pytest.raises(ControlError):
        control_realize(RingMatrix(2, [[z(1, 2, 2)]]), 4)
    with pytest.raises(ValueError):
        control_realize(RingMatrix.zeros(1, 2, 2), 5)


def test_forget_preconditions():
    g = control_realize(one_minus_z1(), 3)
    with pytest.raises(ControlError):
        forget_control(g, F(1, 4))
    with pytest.raises(ControlError):
        forget_control(g, F(1, 10))


def test_lift_ambiguity_detected():
    x, y = TorusPoint.origin(1), TorusPoint([F(1, 2)])
    with pytest.raises(AmbiguousLift):
        _lift(x, y, F(1, 3))


def test_psi1_round_trip_and_radius():
    psi = make_psi_n(1).psi
    g = control_realize(psi, 8)
    nterms = sum(len(psi[i, j]) for i in range(16) for j in range(16))
    assert len(g.entries) == 64 * nterms
    assert radius(g) <= 2 * F(1, 8) ** 2
    back = forget_control(g, F(1, 16))
    assert back == transfer_matrix(psi, Cover([8, 8])).permute(transfer_permutation(g))


def test_per_generator_base_points():
    psi = RingMatrix(2, [[1 - z(1, 2), z(2, 2)], [0, 1]])
    pts = [TorusPoint.origin(2), TorusPoint([F(1, 20), 0])]
    g = control_realize(psi, 5, pts)
    back = forget_control(g, F(1, 9))
    assert back == transfer_matrix(psi, Cover([5, 5])).permute(transfer_permutation(g))


def test_json_roundtrip():
    g = control_realize(one_minus_z1(), 3, TorusPoint(["1/7", "0"]))
    obj = g.to_json()
    assert obj["basis"][0]["x"] == ["1/21", "0"]
    assert GeometricForm.from_json(obj) == g


def test_equivariance_of_forget():
    # relabelling the basis conjugates the output by the same permutation
    g = control_realize(one_minus_z1(), 3)
    perm = list(range(g.size))[::-1]
    inv = {p: a for a, p in enumerate(perm)}
    h = GeometricForm(g.k, g.n2, g.parity, [g.labels[p] for p in perm], [g.locations[p] for p in perm],
                      {(inv[a], inv[b]): c for (a, b), c in g.entries.items()})
    assert forget_control(h, F(1, 8)) == forget_control(g, F(1, 8)).permute(perm)


def test_sup_norm_bound_is_not_enough_in_two_dimensions():
    # k > 2|psi| holds (5 > 4) but the diagonal offset (2, 2)/5 sits at squared distance 8/25 > 1/4
    g = control_realize(RingMatrix(2, [[z(1, 2, 2) * z(2, 2, 2)]]), 5)
    assert radius(g) == F(8, 25)
    with pytest.raises(ControlError):
        forget_control(g, radius(g) + F(1, 1000))


# k > 2 sqrt(2) |psi| keeps every offset inside the injectivity radius
@settings(max_examples=200)
@given(st.lists(polys(2, max_terms=3, max_exp=2), min_size=4, max_size=4), st.integers(6, 7))
def test_random_round_trip(entries, k):
    psi = RingMatrix(2, [entries[:2], entries[2:]])
    g = control_realize(psi, k)
    width = psi.max_order() if not psi.is_zero() else 0
    assert radius(g) <= 2 * F(width, k) ** 2
    delta_sq = radius(g) + F(1, 1000)
    back = forget_control(g, delta_sq)
    assert back == transfer_matrix(psi, Cover([k, k])).permute(transfer_permutation(g))

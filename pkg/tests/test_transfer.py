import pytest
from hypothesis import given
from hypothesis import strategies as st

from surgery_forms import fixtures
from surgery_forms.forms import QuadraticForm, make_alpha, make_psi0, nilpotency_check
from surgery_forms.matrix import RingMatrix, mat_mul
from surgery_forms.ring import ContextMismatch, LaurentPoly
from surgery_forms.transfer import (
    Cover,
    basis_labels,
    composition_permutation,
    transfer_form,
    transfer_matrix,
    transfer_poly,
)

from conftest import matrices, polys

SMALL = dict(max_terms=3, max_exp=3, max_coeff=2)
COVERS = st.lists(st.integers(1, 3), min_size=2, max_size=2).map(Cover)


def mono(j1, j2):
    return LaurentPoly.monomial((j1, j2))


@pytest.mark.parametrize("j1", range(-4, 5))
@pytest.mark.parametrize("j2", [-1, 0, 2])
def test_double_cover_monomials(j1, j2):
    t = transfer_poly(mono(j1, j2), Cover([2, 1]))
    zero = LaurentPoly.zero(2)
    if j1 % 2 == 0:
        m = mono(j1 // 2, j2)
        assert t == RingMatrix(2, [[m, zero], [zero, m]])
    else:
        assert t == RingMatrix(2, [[zero, mono((j1 + 1) // 2, j2)], [mono((j1 - 1) // 2, j2), zero]])


def test_cover_basics():
    c = Cover.parse("2,3")
    assert c.index == 6 and c.rank == 2
    assert c.basis[:3] == [(0, 0), (0, 1), (0, 2)]
    assert c.position((1, 0)) == 3
    assert Cover.uniform(4, 2).multipliers == (4, 4)
    with pytest.raises(ValueError):
        Cover([0, 1])
    with pytest.raises(ContextMismatch):
        transfer_poly(LaurentPoly.constant(1, 3), c)


def test_basis_labels():
    assert basis_labels(Cover([2, 1]), 2) == [
        {"i": 1, "c": [0, 0]}, {"i": 1, "c": [1, 0]}, {"i": 2, "c": [0, 0]}, {"i": 2, "c": [1, 0]}]


def test_alpha_example_and_witnesses():
    cover = Cover(fixtures.value("transfer", "cover"))
    t = transfer_form(make_alpha(1, 1), cover)
    assert t.alpha.permute(fixtures.value("transfer", "basis_permutation")) == fixtures.matrix("transfer", "alpha")
    assert nilpotency_check(t) == 2


def test_transfer_commutes_with_star_on_example():
    a = make_alpha(1, 1).alpha
    cover = Cover([2, 1])
    assert transfer_matrix(a.conj_transpose(), cover) == transfer_matrix(a, cover).conj_transpose()


def test_trivial_cover_is_identity():
    a = make_alpha(1, 1)
    assert transfer_form(a, Cover([1, 1])) == a
    q = QuadraticForm(make_psi0().psi.embed(2), 0)
    assert transfer_form(q, Cover([1, 1])) == q


def test_identity_transfers_to_identity():
    assert transfer_matrix(RingMatrix.identity(3, 2), Cover([2, 3])) == RingMatrix.identity(18, 2)


@given(COVERS, polys(2, **SMALL), polys(2, **SMALL))
def test_ring_homomorphism(cover, a, b):
    ta, tb = transfer_poly(a, cover), transfer_poly(b, cover)
    assert transfer_poly(a + b, cover) == ta + tb
    assert transfer_poly(a * b, cover) == mat_mul(ta, tb)
    assert transfer_poly(LaurentPoly.constant(1, 2), cover) == RingMatrix.identity(cover.index, 2)


@given(COVERS, polys(2, **SMALL))
def test_involution_compatible(cover, a):
    assert transfer_poly(a.involute(), cover) == transfer_poly(a, cover).conj_transpose()


@given(COVERS, st.integers(-4, 4), st.integers(-4, 4))
def test_augmented_monomial_is_permutation(cover, j1, j2):
    aug = transfer_poly(mono(j1, j2), cover).augment()
    assert all(sorted(r) == [0] * (cover.index - 1) + [1] for r in aug)
    assert all(sorted(c) == [0] * (cover.index - 1) + [1] for c in zip(*aug))


@given(COVERS, matrices(2, 2, 2, **SMALL), matrices(2, 2, 2, **SMALL))
def test_matrix_functoriality(cover, a, b):
    assert transfer_matrix(mat_mul(a, b), cover) == mat_mul(transfer_matrix(a, cover), transfer_matrix(b, cover))


@given(st.integers(1, 2).flatmap(lambda r: matrices(2, r, r, **SMALL)))
def test_cover_composition(a):
    k1 = k2 = Cover([2, 1])
    iterated = transfer_matrix(transfer_matrix(a, k1), k2)
    assert iterated == transfer_matrix(a, k1.compose(k2)).permute(composition_permutation(k1, k2, a.rows))


def test_cover_composition_mixed():
    a = make_alpha(1, 1).alpha
    k1, k2 = Cover([2, 3]), Cover([3, 1])
    iterated = transfer_matrix(transfer_matrix(a, k1), k2)
    assert iterated == transfer_matrix(a, k1.compose(k2)).permute(composition_permutation(k1, k2, 2))


def test_rejects_unknown_kind():
    with pytest.raises(TypeError):
        transfer_form(RingMatrix.identity(1, 2), Cover([2, 1]))

from fractions import Fraction

import pytest

from cmtool import catalog
from cmtool.errors import InputError
from cmtool.exact import det, mat_mul
from cmtool.orders import (
    CMOrder, Order, cm_order_test, decompose_rational_algebra, field_automorphisms,
    has_cm_structure, is_cm_field, is_cm_order, normalize_basis, primitive_idempotents,
    trace_and_gram,
)

from oracles import tensor_mult

ZI = catalog.power_basis_tensor([1, 0, 1])
ZI_SKEW = [[[1, 0], [0, 1]], [[0, 1], [-2, 2]]]     # basis 1, 1+i


def test_trace_and_gram_examples():
    tr, G, disc = trace_and_gram(Order(ZI, [[1, 0], [0, -1]]))
    assert (tr, G, disc) == ([2, 0], [[2, 0], [0, 2]], -4)
    _, G, disc = trace_and_gram(Order(catalog.power_basis_tensor([5, 0, 1]), [[1, 0], [0, -1]]))
    assert G == [[2, 0], [0, 10]] and disc == -20
    tr, G, disc = trace_and_gram(Order(catalog.product_tensor([[[1]]], [[[1]]]), [[1, 0], [0, 1]]))
    assert (tr, G, disc) == ([1, 1], [[1, 0], [0, 1]], 1)


def test_multiplication_matches_oracle():
    A = catalog.cyclotomic(5)
    x, y = [1, -2, 0, 3], [0, 1, 1, -1]
    assert A.mult(x, y) == tensor_mult(A.mul, x, y)
    assert A.mult(A.one, x) == x


def test_invalid_tensors_rejected():
    with pytest.raises(InputError):
        Order([[[1, 0], [0, 1]], [[0, 1], [1, 1]]][:1])
    noncomm = [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]
    with pytest.raises(InputError):
        Order(noncomm)


def test_normalize_basis_examples():
    A = catalog.gaussian_integers()
    B, T = normalize_basis(A)
    assert T == [[1, 0], [0, 1]] and B.mul == A.mul
    skew = Order(ZI_SKEW, [[1, 0], [2, -1]])
    B, T = normalize_basis(skew)
    assert B.gram == [[2, 0], [0, 2]]
    assert sorted(map(tuple, (map(abs, r) for r in T))) == [(1, 0), (1, 1)]
    assert abs(det(T)) == 1


def test_normalize_records_input_coordinates():
    res = cm_order_test(Order(ZI_SKEW))
    A = res.order
    assert A.involution_in_input() == [[1, 0], [2, -1]]
    for i in range(2):
        e = A.basis_vector(i)
        assert A.from_input(A.to_input_coords(e)) == e


def test_decomposition_examples():
    assert [c.degree for c in decompose_rational_algebra(Order(catalog.power_basis_tensor([-1, 0, 1])))] == [1, 1]
    assert [c.degree for c in decompose_rational_algebra(Order(ZI))] == [2]
    assert [c.degree for c in decompose_rational_algebra(catalog.cyclotomic(5))] == [4]
    with pytest.raises(InputError):
        decompose_rational_algebra(Order(catalog.dual_numbers_tensor()))


def test_decomposition_idempotents_are_orthogonal():
    A = catalog.sqrt2_times_gaussian()
    comps = decompose_rational_algebra(A)
    assert sorted(c.degree for c in comps) == [2, 2]
    total = [sum(c.idempotent[k] for c in comps) for k in range(A.n)]
    assert total == A.one
    e, f = comps[0].idempotent, comps[1].idempotent
    assert A.mult(e, e) == e and not any(A.mult(e, f))


def test_field_automorphism_counts():
    assert len(field_automorphisms([1, 0, 1])) == 2
    assert len(field_automorphisms([-2, 0, 0, 1])) == 1
    assert len(field_automorphisms([0, 1])) == 1
    assert len(field_automorphisms(catalog.cyclotomic_poly(5))) == 4


def test_cm_field_examples():
    S = is_cm_field([1, 0, 1])
    assert S == [[1, 0], [0, -1]]
    assert is_cm_field([-2, 0, 1]) == [[1, 0], [0, 1]]
    assert is_cm_field([-2, 0, 0, 1]) is None


@pytest.mark.parametrize("mul, involution", [
    (ZI, [[1, 0], [0, -1]]),
    (catalog.power_basis_tensor([-2, 0, 1]), [[1, 0], [0, 1]]),
    (catalog.cyclotomic(5).mul, catalog.cyclotomic(5).involution),
    (catalog.cyclic_group_ring_tensor(2), [[1, 0], [0, 1]]),
    (catalog.product_tensor([[[1]]], [[[1]]]), [[1, 0], [0, 1]]),
])
def test_cm_recognition_accepts(mul, involution):
    A = is_cm_order(Order(mul))
    assert A is not None
    assert A.involution_in_input() == involution
    assert det(A.gram) == A.abs_disc


@pytest.mark.parametrize("mul, step", [
    (catalog.dual_numbers_tensor(), "discriminant is zero"),
    (catalog.weil_tensor(), "involution does not preserve the order"),
    (catalog.cube_root2_tensor(), "a field factor is not a CM-field"),
])
def test_cm_recognition_rejects(mul, step):
    res = cm_order_test(Order(mul))
    assert res.order is None and res.failed_step == step


def test_weil_number_conjugate_is_not_integral():
    # conj(pi) = 2 / pi; solving pi y = 2 gives coordinates with a denominator
    A = Order(catalog.weil_tensor())
    pi = A.basis_vector(1)
    y = A.divide([2, 0, 0, 0], pi)
    assert y is not None and any(Fraction(c).denominator != 1 for c in y)


def test_has_cm_structure():
    A = catalog.gaussian_integers()
    assert has_cm_structure(A, [[1, 0], [0, -1]])
    assert not has_cm_structure(A, [[1, 0], [0, 1]])     # Tr(x^2) is indefinite
    assert not has_cm_structure(A, [[1, 0], [0, 2]])
    assert not has_cm_structure(A, [[1, 0], [Fraction(1, 2), -1]])


@pytest.mark.parametrize("order, expected", [
    (catalog.z_times_z(), [[1, 0], [0, 1]]),
    (catalog.gaussian_integers(), [[1, 0]]),
    (catalog.same_parity(5), [[1, 0, 0, 0, 0]]),
])
def test_primitive_idempotent_examples(order, expected):
    assert sorted(primitive_idempotents(order)) == sorted(expected)


def test_group_ring_is_connected():
    # Z[C_2] has rational idempotents (1 +- g)/2, neither integral
    A = catalog.group_ring_c2()
    assert primitive_idempotents(A) == [A.one]
    B = catalog.sqrt2_times_gaussian()
    assert sorted(primitive_idempotents(B)) == [[0, 0, 1, 0], [1, 0, 0, 0]]


def test_minpoly_and_inverse():
    A = catalog.gaussian_integers()
    assert A.minpoly([0, 1]) == [1, 0, 1]
    assert A.inverse([1, 1]) == [Fraction(1, 2), Fraction(-1, 2)]
    assert A.inverse([0, 0]) is None
    assert A.is_totally_positive([5, 0]) and not A.is_totally_positive([-1, 0])
    Q = catalog.sqrt2()
    assert Q.is_totally_positive([3, 2]) and not Q.is_totally_positive([1, 1])


def test_conjugation_is_ring_morphism():
    A = catalog.cyclotomic(5)
    x, y = [2, -1, 0, 1], [1, 1, -3, 0]
    assert A.conj(A.mult(x, y)) == A.mult(A.conj(x), A.conj(y))
    assert A.conj(A.conj(x)) == x
    assert mat_mul(A.involution, A.involution) == [[int(i == j) for j in range(4)] for i in range(4)]


def test_cmorder_rejects_bad_involution():
    with pytest.raises(InputError):
        CMOrder(ZI, [[1, 0], [0, 1]])

import random
from math import ceil, floor, gcd, log

import pytest
import sympy

from cmtool import catalog
from cmtool.alattice import lattice_from_Iw, meets_gap, standard_lattice
from cmtool.auxideals import (
    beta, bound_b, bound_c, coprime_base, exponent_in, good_ideal_set, is_vigilant, k_of_ideal,
    psi, usable_sets,
)
from cmtool.exact import mat_mul, transpose
from cmtool.finite_rings import factor_index_ideal, primes_above
from cmtool.ideals import FracIdeal
from cmtool.lattice import lll_reduce, shortest_norm

from oracles import box_size, box_vectors, smooth_count

ZI = catalog.gaussian_integers()


def test_bound_examples():
    assert (bound_b(1), bound_c(1)) == (2, 2)
    assert (beta(2), bound_c(2)) == (3, 4)
    assert (beta(3), bound_c(3)) == (5, 9)


def test_beta_is_within_one():
    for n in range(3, 400):
        b = bound_b(n)
        assert beta(n) - 1 < b <= beta(n)


@pytest.mark.parametrize("x, y, count", [(2, 2, 2), (4, 3, 4), (9, 4, 7)])
def test_psi_examples(x, y, count):
    assert psi(x, y) == count


def test_psi_matches_trial_division():
    for x, y in [(100, 5), (500, 7), (1000, 13), (81, 3), (1, 2)]:
        assert psi(x, y) == smooth_count(x, y)


@pytest.mark.parametrize("values, base", [([6, 10], [2, 3, 5]), ([4, 9], [4, 9]), ([12], [12])])
def test_coprime_base_examples(values, base):
    assert coprime_base(values) == base


def test_coprime_base_factors_every_input():
    rng = random.Random(5)
    for _ in range(30):
        vals = [rng.randint(1, 3000) for _ in range(5)]
        base = coprime_base(vals)
        assert all(gcd(a, b) == 1 for i, a in enumerate(base) for b in base[i + 1:])
        for v in vals:
            rest = v
            for t in base:
                rest //= t ** exponent_in(rest, t)
            assert rest == 1


def test_k_of_ideal_examples():
    s0 = [(P, 0) for P in primes_above(ZI, 2)]
    assert k_of_ideal(ZI, s0, two_power=True) == 8
    ((P, _),) = factor_index_ideal(ZI, 2)
    assert k_of_ideal(ZI, [(P, 2)]) == 2
    ((Q, _),) = factor_index_ideal(ZI, 3)
    assert k_of_ideal(ZI, [(Q, 6)]) == 1944


def test_usable_set_examples():
    us = usable_sets(ZI)
    assert len(us.sets) == 1 and [P.ideal for P in us.s0] == [FracIdeal.principal(ZI, [1, 1])]
    us = usable_sets(catalog.integers())
    assert len(us.sets) == 1 and [P.ideal.hnf for P in us.s0] == [[[2]]]
    A = catalog.z_times_z()
    us = usable_sets(A)
    assert len(us.s0) == 2 and is_vigilant(A, us.s0) and not is_vigilant(A, us.s0[:1])


def test_usable_sets_are_vigilant():
    A = catalog.real_cyclotomic11()
    us = usable_sets(A)
    assert len(us.sets) == 2
    assert all(is_vigilant(A, S) for S in us.sets)


@pytest.mark.parametrize("order, ks, k", [
    (catalog.gaussian_integers, [8], 8),
    (catalog.integers, [2], 2),
    (catalog.z_times_z, [4], 4),
    (lambda: catalog.cyclotomic(5), [240], 240),
    (catalog.real_cyclotomic11, [992, 16608551322301686], 2),
])
def test_good_ideal_examples(order, ks, k):
    A = order()
    data = good_ideal_set(A)
    assert [g.k for g in data.ideals] == ks and data.k == k
    assert data.ideals[0].ideal == FracIdeal.scalar(A, 2 ** (A.n + 1))
    assert sum(f * g.k for f, g in zip(data.f, data.ideals)) == k
    g = 0
    for x in ks:
        g = gcd(g, x)
    assert g == k
    assert all(p <= bound_c(A.n) for p in sympy.factorint(k))
    assert log(k, 2) <= 2 * A.n


def power_mod(A, x, e, ideal):
    acc = list(A.one)
    base = ideal.reduce(x)
    while e:
        if e & 1:
            acc = ideal.reduce([int(c) for c in A.mult(acc, base)])
        e >>= 1
        if e:
            base = ideal.reduce([int(c) for c in A.mult(base, base)])
    return acc


@pytest.mark.parametrize("order", [
    catalog.gaussian_integers, lambda: catalog.cyclotomic(5), catalog.real_cyclotomic11,
    catalog.z_times_z, catalog.sqrt_minus5,
])
def test_unit_exponent_divides_k(order):
    A = order()
    rng = random.Random(11)
    for g in good_ideal_set(A).ideals:
        H = g.ideal.hnf
        found = 0
        while found < 30:
            x = [rng.randrange(H[i][i]) for i in range(A.n)]
            if not g.ideal.is_unit_mod(x):
                continue
            found += 1
            assert power_mod(A, x, g.k, g.ideal) == g.ideal.reduce(A.one)


def test_unit_exponent_example():
    # i has order 4 in (Z[i] / 8)^*, which divides k(8A) = 8
    eight = FracIdeal.scalar(ZI, 8)
    assert power_mod(ZI, [0, 1], 2, eight) == [7, 0]
    assert power_mod(ZI, [0, 1], 8, eight) == [1, 0]


def test_psi_bound_small_range():
    for n in range(1, 200):
        assert psi(bound_c(n), floor(bound_b(n)), stop_above=n) > n


def test_small_primes_witness_nontrivial_powers():
    rng = random.Random(3)
    for n in (2, 3, 4, 5, 8):
        for _ in range(20):
            ell = sympy.nextprime(bound_c(n) + rng.randint(0, 10 ** 6))
            assert any(pow(h, n, ell) != 1 for h in range(2, floor(bound_b(n)) + 1))


@pytest.mark.parametrize("order, lattices", [
    (catalog.gaussian_integers, lambda A: [standard_lattice(A),
                                           lattice_from_Iw(A, FracIdeal.principal(A, [2, 1]), [5, 0])]),
    (catalog.sqrt_minus5, lambda A: [lattice_from_Iw(A, FracIdeal.from_generators(A, [[2, 0], [1, 1]]), [2, 0])]),
    (lambda: catalog.cyclotomic(5), lambda A: [standard_lattice(A)]),
])
def test_good_ideals_separate(order, lattices):
    A = order()
    n = A.n
    for L in lattices(A):
        for g in good_ideal_set(A).ideals:
            sub = L.submodule(g.ideal)
            G = mat_mul(mat_mul(sub, L.gram), transpose(sub))
            m = shortest_norm(G)
            assert meets_gap(m, n)
            # independent confirmation: no vector below the threshold
            Gr, _ = lll_reduce(G)
            threshold = ceil((2 ** (n / 2) + 1) ** 2 * n) - 1
            if box_size(Gr, threshold) <= 10 ** 5:
                assert box_vectors(Gr, threshold) == []

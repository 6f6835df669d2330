"""Constructors for the small orders used by tests and demos."""
from __future__ import annotations

from .exact import poly_divmod
from .orders import CMOrder, Order, is_cm_order


def power_basis_tensor(poly):
    """Structure tensor of Z[x]/(poly) on 1, x, ..., x^(n-1).

    ``poly`` is a monic integer polynomial in ascending coefficients.
    """
    n = len(poly) - 1
    if poly[-1] != 1:
        raise ValueError("polynomial must be monic")
    mul = []
    for i in range(n):
        row = []
        for j in range(n):
            mono = [0] * (i + j) + [1]
            r = poly_divmod(mono, poly)[1]
            r = [int(c) for c in r] + [0] * (n - len(r))
            row.append(r)
        mul.append(row)
    return mul


def product_tensor(*tensors):
    """Structure tensor of the product ring on concatenated bases."""
    n = sum(len(t) for t in tensors)
    mul = [[[0] * n for _ in range(n)] for _ in range(n)]
    off = 0
    for t in tensors:
        m = len(t)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    mul[off + i][off + j][off + k] = t[i][j][k]
        off += m
    return mul


def cyclic_group_ring_tensor(m):
    """Structure tensor of Z[C_m] on the group elements."""
    return [[[int(k == (i + j) % m) for k in range(m)] for j in range(m)]
            for i in range(m)]


def cyclotomic_poly(m):
    import sympy
    x = sympy.Symbol("x")
    return [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())]


def same_parity_tensor(n):
    """Structure tensor of ``{x in Z^n : all x_i of equal parity}``.

    Basis: ``(1, ..., 1)`` and ``2 e_i`` for ``i >= 2``.
    """
    vecs = [[1] * n] + [[2 if k == i else 0 for k in range(n)] for i in range(1, n)]
    # coordinates of a vector v of the sublattice on this basis
    def coords(v):
        c0 = v[0]
        return [c0] + [(v[i] - c0) // 2 for i in range(1, n)]
    mul = []
    for a in vecs:
        row = []
        for b in vecs:
            row.append(coords([x * y for x, y in zip(a, b)]))
        mul.append(row)
    return mul


def cm(mul) -> CMOrder:
    out = is_cm_order(Order(mul))
    if out is None:
        raise ValueError("not a CM-order")
    return out


def gaussian_integers() -> CMOrder:
    return CMOrder(power_basis_tensor([1, 0, 1]), [[1, 0], [0, -1]])


def sqrt_minus5() -> CMOrder:
    return CMOrder(power_basis_tensor([5, 0, 1]), [[1, 0], [0, -1]])


def sqrt2() -> CMOrder:
    return CMOrder(power_basis_tensor([-2, 0, 1]), [[1, 0], [0, 1]])


def integers() -> CMOrder:
    return CMOrder([[[1]]], [[1]])


def z_times_z() -> CMOrder:
    return CMOrder(product_tensor([[[1]]], [[[1]]]), [[1, 0], [0, 1]])


def cyclotomic(m) -> CMOrder:
    """Z[zeta_m] in the power basis, conjugation sending zeta to zeta^-1."""
    poly = cyclotomic_poly(m)
    mul = power_basis_tensor(poly)
    A = Order(mul)
    n = A.n
    zeta = A.basis_vector(1) if n > 1 else A.one
    zinv = A.power(zeta, m - 1)
    inv = [A.power(zinv, i) for i in range(n)]
    return CMOrder(mul, inv)


def sqrt2_times_gaussian() -> CMOrder:
    mul = product_tensor(power_basis_tensor([-2, 0, 1]), power_basis_tensor([1, 0, 1]))
    inv = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    return CMOrder(mul, inv)


def real_cyclotomic11() -> CMOrder:
    """Z[zeta_11 + zeta_11^-1], the totally real quintic, with trivial involution."""
    # minimal polynomial of -2 cos(2 pi / 11)
    poly = [-1, 3, 3, -4, -1, 1]
    mul = power_basis_tensor(poly)
    return CMOrder(mul, [[int(i == j) for j in range(5)] for i in range(5)])


def sqrt3() -> CMOrder:
    return CMOrder(power_basis_tensor([-3, 0, 1]), [[1, 0], [0, 1]])


def group_ring_c2() -> CMOrder:
    """Z[C_2] on the group elements; the involution inverts them, which is trivial."""
    return CMOrder(cyclic_group_ring_tensor(2), [[1, 0], [0, 1]])


def same_parity(n: int) -> CMOrder:
    return CMOrder(same_parity_tensor(n), [[int(i == j) for j in range(n)] for i in range(n)])


# tensors of orders that are not CM, for recognition tests

def dual_numbers_tensor():
    """Z[x]/(x^2): not reduced."""
    return power_basis_tensor([0, 0, 1])


def weil_tensor():
    """Z[pi] for a root of x^4 - x^3 + 2x^2 - 2x + 4, a Weil number of weight 2.

    The CM-algebra is fine but complex conjugation does not preserve Z[pi].
    """
    return power_basis_tensor([4, -2, 2, -1, 1])


def cube_root2_tensor():
    """Z[2^(1/3)]: its field has a real embedding and no CM structure."""
    return power_basis_tensor([-2, 0, 0, 1])


def tensor_product_tensor(t1, t2):
    """Structure tensor of ``R1 tensor_Z R2`` on the basis ``a_i b_j`` (j fastest)."""
    n1, n2 = len(t1), len(t2)
    n = n1 * n2
    mul = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i1 in range(n1):
        for i2 in range(n2):
            for j1 in range(n1):
                for j2 in range(n2):
                    out = mul[i1 * n2 + i2][j1 * n2 + j2]
                    for k1, c1 in enumerate(t1[i1][j1]):
                        if c1:
                            for k2, c2 in enumerate(t2[i2][j2]):
                                if c2:
                                    out[k1 * n2 + k2] += c1 * c2
    return mul


def golden17_gaussian() -> CMOrder:
    """Z[(1 + sqrt 17)/2, i] on the basis 1, i, theta, theta i."""
    mul = tensor_product_tensor(power_basis_tensor([-4, -1, 1]), power_basis_tensor([1, 0, 1]))
    inv = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    return CMOrder(mul, inv)

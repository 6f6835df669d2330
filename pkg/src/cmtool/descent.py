"""Deciding whether a lattice is isomorphic to the standard one.

The pipeline works on a connected CM-order ``A`` of rank ``n``:

* ``ingredient4`` finds an integer ``k`` with small prime factors and a
  unit ``s`` mod ``b = 2^(n+1) A`` such that, if ``L`` has a short vector,
  the coset ``s e^k`` of ``L^k / b L^k`` contains one;
* ``almost_main`` takes an ``r``-th root: from the short vector of ``L^r``
  it builds a graded order whose roots of unity of degree one are short
  vectors of ``L``;
* ``conn_main`` peels off the prime factors of ``k`` one at a time;
* ``main_standard_iso`` splits a general order into connected factors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .auxideals import GoodIdealData, good_ideal_set
from .errors import InputError, InternalError
from .exact import (
    det, factor_integer, frac, hnf, inverse, is_integral, mat_mul, solve_integer,
    transpose, vec_mat,
)
from .finite_rings import cyclic_generator, divide_in_cyclic_quotient
from .ideals import FracIdeal
from .alattice import (
    ALattice, conj_lattice, ensure_ideal_form, invertible_test, is_short, phi_pairing,
    lattice_from_Iw, short_in_coset, tensor_mul, tensor_pow,
)
from .lattice import DEFAULT_BUDGET, enumerate_norm_at_most, norm
from .orders import CMOrder, has_cm_structure, primitive_idempotents


# ---------------------------------------------------------------------------
# roots of unity

def roots_of_unity(B: CMOrder, budget: int = DEFAULT_BUDGET):
    """All ``x`` in ``B`` with ``x conj(x) = 1``.

    These are exactly the vectors of trace norm ``rank(B)`` that satisfy the
    identity, so a bounded enumeration finds all of them.
    """
    out = []
    for v in enumerate_norm_at_most(B.gram, B.n, budget):
        if norm(B.gram, v) == B.n and B.mult(v, B.conj(v)) == B.one:
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# the graded order

class GradedOrder(CMOrder):
    """``B = I^0 + ... + I^(r-1)`` with ``I^i I^j -> I^(i+j)`` twisted by ``nu``.

    Coordinates run over the concatenated HNF bases of the pieces;
    ``piece_bases[i]`` lists those basis elements as rational rows of
    ``A tensor Q``.
    """

    def __init__(self, mul, involution, r, piece_bases, nu, w, base_order):
        super().__init__(mul, involution, validate=False)
        self.r = r
        self.piece_bases = piece_bases
        self.nu = nu
        self.w = w
        self.base_order = base_order
        m = base_order.n
        self.degree_of_index = [i // m for i in range(r * m)]

    def degree(self, x):
        """Degree of a homogeneous element, or None if it mixes pieces."""
        m = self.base_order.n
        degs = {i for i in range(self.r) if any(x[i * m:(i + 1) * m])}
        if len(degs) != 1:
            return None
        return degs.pop()

    def piece_element(self, x, i):
        """Piece ``i`` of ``x`` as an element of ``A tensor Q``."""
        m = self.base_order.n
        return vec_mat(x[i * m:(i + 1) * m], self.piece_bases[i])


def build_graded_order(A: CMOrder, powers, nu, r: int, w=None,
                       check_ring: bool = False) -> GradedOrder:
    """The graded order for the ideal powers ``powers[i] = I^i`` (``i < r``).

    ``nu`` lies in ``I^r`` with ``nu conj(nu) = w^r``; ``w`` defaults to 1.
    The result is checked to be a CM-order by its involution certificate.
    """
    n = A.n
    if w is None:
        w = A.one
    w = [frac(c) for c in w]
    nu = [frac(c) for c in nu]
    if len(powers) < r:
        raise InputError("need the ideal powers I^0, ..., I^(r-1)")
    w_r = A.power(w, r)
    if A.mult(nu, A.conj(nu)) != w_r:
        raise InputError("nu conj(nu) is not w^r")
    nu_inv = A.inverse(nu)
    if nu_inv is None:
        raise InputError("nu is not invertible")
    bases = [[[Fraction(x, P.den) for x in row] for row in P.hnf] for P in powers[:r]]
    invs = [inverse(b) for b in bases]

    def coords(x, i):
        c = vec_mat(x, invs[i])
        if not is_integral(c):
            raise InternalError(f"product left the graded piece {i}")
        return [int(v) for v in c]

    N = r * n
    mul = [[None] * N for _ in range(N)]
    for i in range(r):
        for a in range(n):
            x = bases[i][a]
            for j in range(i, r):
                for b in range(0 if j > i else a, n):
                    p = A.mult(x, bases[j][b])
                    k = i + j
                    if k >= r:
                        p = A.mult(p, nu_inv)
                        k -= r
                    vec = [0] * N
                    vec[k * n:(k + 1) * n] = coords(p, k)
                    mul[i * n + a][j * n + b] = vec
                    mul[j * n + b][i * n + a] = vec
    w_inv_pows = [A.one]
    w_inv = A.inverse(w)
    for _ in range(1, r):
        w_inv_pows.append(A.mult(w_inv_pows[-1], w_inv))
    inv = []
    for i in range(r):
        for a in range(n):
            x = A.conj(bases[i][a])
            k = 0
            if i > 0:
                x = A.mult(A.mult(x, nu), w_inv_pows[i])
                k = r - i
            vec = [0] * N
            vec[k * n:(k + 1) * n] = coords(x, k)
            inv.append(vec)
    B = GradedOrder(mul, inv, r, bases, nu, w, A)
    if not has_cm_structure(B, inv, check_ring=check_ring):
        raise InternalError("graded order is not a CM-order")
    return B


# ---------------------------------------------------------------------------
# one root extraction

def _two_power_ideal(A):
    return FracIdeal.scalar(A, 2 ** (A.n + 1))


def _ideal_powers(A, beta, count):
    out = []
    p = A.one
    for _ in range(count):
        out.append(FracIdeal.from_generators(A, [A.one, p]))
        p = A.mult(p, beta)
    return out


def almost_main(A: CMOrder, L: ALattice, r: int, eps, s, budget: int = DEFAULT_BUDGET,
                check_ring: bool = False):
    """Pass from a short vector of ``L^r`` to one of ``L``.

    ``eps`` (lattice coordinates) generates ``L`` modulo ``2^(n+1) L`` and
    ``s`` is such that ``s eps^r`` holds a short vector of ``L^r``, both
    read through the ideal form of ``L`` determined by ``eps``. Returns
    ``t`` mod ``2^(n+1) A`` with ``t eps`` containing a short vector of
    ``L``, or None when ``L`` has no short vector.
    """
    n = A.n
    b = _two_power_ideal(A)
    e = [int(c) for c in eps]
    E = [L.act(A.basis_vector(i), e) for i in range(n)]
    q = abs(det(E))
    if q == 0:
        raise InternalError("coset representative is a zero divisor")
    Einv = inverse(E)
    if q == 1:
        beta = A.one
    else:
        eq = cyclic_generator(A, FracIdeal.scalar(A, q), L)
        if eq is None:
            raise InternalError("no generator of L modulo q L")
        beta = vec_mat(eq, Einv)
    powers = _ideal_powers(A, beta, r + 1)
    if powers[1] != FracIdeal.from_module_rows(A, Einv):
        raise InternalError("A + A beta differs from the ideal of e")
    w = A.inverse(phi_pairing(L, e, e))
    w_r = A.power(w, r)
    Lr = lattice_from_Iw(A, powers[r], w_r)
    s_coords = Lr.ideal_form.from_element([frac(c) for c in s])
    if not is_integral(s_coords):
        raise InternalError("s is not in I^r")
    y = short_in_coset(Lr, b, [int(c) for c in s_coords], check_gap=False, budget=budget)
    if y is None:
        raise InternalError("the coset s eps^r holds no short vector")
    nu = Lr.ideal_form.to_element(y)
    if r == 1:
        return b.reduce([int(c) for c in s])
    B = build_graded_order(A, powers[:r], nu, r, w, check_ring=check_ring)
    mu = roots_of_unity(B, budget)
    deg_one = [z for z in mu if B.degree(z) == 1]
    if not deg_one:
        return None
    # prefer a root whose r-th power is 1, so that t^r = s modulo b
    alpha = next((z for z in deg_one if B.power(z, r) == B.one), deg_one[0])
    a = B.piece_element(alpha, 1)
    return _lift_to_order(A, powers[1], a, b)


def _lift_to_order(A, I, a, b):
    """``t`` in ``A`` with ``t = a`` modulo ``2^(n+1) I``, reduced mod ``b``."""
    n = A.n
    m = 2 ** (n + 1)
    d = I.den
    gens = [[d * int(i == j) for j in range(n)] for i in range(n)]
    gens += [[m * x for x in row] for row in I.hnf]
    target = [frac(c) * d for c in a]
    x = solve_integer(gens, target)
    if x is None:
        raise InternalError("element is not in A + 2^(n+1) I")
    return b.reduce(x[:n])


# ---------------------------------------------------------------------------
# the auxiliary exponent

@dataclass
class Ingredient:
    k: int
    e2: list
    s: list
    data: GoodIdealData = field(repr=False, default=None)
    powers: dict = field(repr=False, default_factory=dict)


def cached_good_ideals(A) -> GoodIdealData:
    """``good_ideal_set`` memoized on the order object."""
    data = getattr(A, "_good_ideal_cache", None)
    if data is None:
        data = good_ideal_set(A)
        A._good_ideal_cache = data
    return data


def _positive_mod(f, m):
    g = f % m
    return g if g else m


def ingredient4(A: CMOrder, L: ALattice, good: GoodIdealData | None = None,
                budget: int = DEFAULT_BUDGET):
    """The triple ``(k, e2, s)``, or None when ``L`` has no short vector.

    ``e2`` generates ``L`` modulo ``2 L``; the coset ``s e2^k`` of
    ``L^k / 2^(n+1) L^k`` contains a short vector when ``L`` has one.
    """
    L = ensure_ideal_form(L)
    if good is None:
        good = cached_good_ideals(A)
    two_adic = good.ideals[0]
    b = two_adic.ideal
    kb = two_adic.k
    e2 = cyclic_generator(A, FracIdeal.scalar(A, 2), L)
    if e2 is None:
        raise InputError("lattice is not invertible")
    eb = L.reduce_mod(b, e2)
    s = A.one
    for gi, f in zip(good.ideals[1:], good.f[1:]):
        a = gi.ideal
        ea = cyclic_generator(A, a, L, maxes=[P for P, _ in gi.factors])
        if ea is None:
            raise InputError("lattice is not invertible")
        Lk, (ea_k, eb_k) = tensor_pow(L, gi.k, [(ea, a), (eb, b)])
        nu = short_in_coset(Lk, a, ea_k, check_gap=False, budget=budget)
        if nu is None:
            return None
        sa = divide_in_cyclic_quotient(A, b, Lk, Lk.reduce_mod(b, nu), eb_k)
        if sa is None:
            raise InternalError("short vector is not in the cyclic quotient")
        g = _positive_mod(f, kb)
        s = b.reduce(A.mult(s, _power_mod_ideal(A, sa, g, b)))
    Lk, (eb_k,) = tensor_pow(L, good.k, [(eb, b)])
    ing = Ingredient(good.k, e2, s, good)
    ing.powers[good.k] = (Lk, eb_k)
    rep = Lk.reduce_mod(b, Lk.act(s, eb_k))
    if short_in_coset(Lk, b, rep, check_gap=False, budget=budget) is None:
        return None
    return ing


def _power_mod_ideal(A, x, e, ideal):
    result = ideal.reduce(A.one)
    base = ideal.reduce(list(x))
    while e:
        if e & 1:
            result = ideal.reduce(A.mult(result, base))
        e >>= 1
        if e:
            base = ideal.reduce(A.mult(base, base))
    return result


# ---------------------------------------------------------------------------
# certificates

@dataclass
class IsoCertificate:
    """An A-isomorphism given by the images of a basis, in target coordinates.

    For ``standard-iso`` the source is the standard lattice of the order and
    ``short_vector`` is the image of 1.  For ``lattice-iso`` the matrix maps
    the second lattice onto the first and ``element`` is the multiplier in
    ideal form.
    """
    kind: str
    short_vector: list | None
    matrix: list
    element: list | None = None


def standard_iso_matrix(A, L: ALattice, z):
    return [L.act(A.basis_vector(i), z) for i in range(A.n)]


def verify_iso(A, source_gram, source_action, target: ALattice, M) -> bool:
    """Whether ``M`` (rows = images of the source basis) is an A-isomorphism."""
    if len(M) != target.rank or any(len(r) != target.rank for r in M):
        return False
    if not all(isinstance(x, int) for r in M for x in r):
        return False
    if abs(det(M)) != 1:
        return False
    if mat_mul(mat_mul(M, target.gram), transpose(M)) != [list(r) for r in source_gram]:
        return False
    for j in range(A.n):
        if mat_mul(source_action[j], M) != mat_mul(M, target.action[j]):
            return False
    return True


def verify_standard_iso(A, L: ALattice, z) -> bool:
    z = [int(c) for c in z]
    action = [A.mult_matrix(A.basis_vector(j)) for j in range(A.n)]
    return (L.rank == A.n and is_short(L, z)
            and verify_iso(A, A.gram, action, L, standard_iso_matrix(A, L, z)))


# ---------------------------------------------------------------------------
# connected orders

def conn_main(A: CMOrder, L: ALattice, budget: int = DEFAULT_BUDGET,
              good: GoodIdealData | None = None):
    """Short vector of an invertible lattice over a connected order, or None."""
    n = A.n
    L = ensure_ideal_form(L)
    ing = ingredient4(A, L, good, budget)
    if ing is None:
        return None
    b = _two_power_ideal(A)
    eb = L.reduce_mod(b, ing.e2)
    primes = []
    for p, e in sorted(factor_integer(ing.k).items()):
        primes.extend([p] * e)
    t = ing.s
    q = ing.k
    for p in primes:
        q //= p
        if q not in ing.powers:
            Lq, (rep,) = tensor_pow(L, q, [(eb, b)])
            ing.powers[q] = (Lq, rep)
        Lq, rep = ing.powers[q]
        t = almost_main(A, Lq, p, rep, t, budget)
        if t is None:
            return None
    z = short_in_coset(L, b, L.reduce_mod(b, L.act(t, eb)), check_gap=False, budget=budget)
    if z is None:
        raise InternalError("final coset holds no short vector")
    if L.rank != n or not is_short(L, z):
        raise InternalError("recovered vector is not short")
    return IsoCertificate("standard-iso", z, standard_iso_matrix(A, L, z))


# ---------------------------------------------------------------------------
# general orders

def _coords_in(rows, x):
    c = solve_integer(rows, x)
    if c is None:
        raise InternalError("vector is not in the expected submodule")
    return c


def split_component(A: CMOrder, L: ALattice, eps):
    """The factor order ``eps A`` and lattice ``eps L`` for an idempotent.

    Returns ``(A_i, L_i, R, S)`` with ``R`` the basis of ``eps A`` in ``A``
    coordinates and ``S`` the basis of ``eps L`` in ``L`` coordinates.
    """
    n = A.n
    R = hnf([A.mult(eps, A.basis_vector(j)) for j in range(n)])
    m = len(R)
    mul = [[_coords_in(R, A.mult(R[a], R[c])) for c in range(m)] for a in range(m)]
    inv = [_coords_in(R, A.conj(R[a])) for a in range(m)]
    Ai = CMOrder(mul, inv, validate=False)
    S = hnf([L.act(eps, [int(i == j) for j in range(L.rank)]) for i in range(L.rank)])
    gram = mat_mul(mat_mul(S, L.gram), transpose(S))
    action = [[_coords_in(S, L.act(R[a], row)) for row in S] for a in range(m)]
    Li = ALattice(Ai, gram, action, validate=False)
    return Ai, Li, R, S


def main_standard_iso(A: CMOrder, L: ALattice, budget: int = DEFAULT_BUDGET):
    """An isomorphism from the standard lattice of ``A`` onto ``L``, or None."""
    if L.order is not A and L.order.mul != A.mul:
        raise InputError("lattice is over a different order")
    if L.rank != A.n:
        return None
    form = invertible_test(L)
    if form is None:
        return None
    L = L.with_ideal_form(form)
    idems = primitive_idempotents(A)
    if len(idems) == 1:
        cert = conn_main(A, L, budget)
        if cert is None:
            return None
        z = cert.short_vector
    else:
        z = [0] * L.rank
        for eps in idems:
            Ai, Li, _, S = split_component(A, L, eps)
            cert = conn_main(Ai, Li, budget)
            if cert is None:
                return None
            z = [a + c for a, c in zip(z, vec_mat(cert.short_vector, S))]
    if not verify_standard_iso(A, L, z):
        raise InternalError("assembled isomorphism does not verify")
    return IsoCertificate("standard-iso", z, standard_iso_matrix(A, L, z))


def iso_between(A: CMOrder, L: ALattice, M: ALattice, budget: int = DEFAULT_BUDGET):
    """An A-isomorphism ``M -> L`` of invertible lattices, or None.

    The returned matrix has the images of the basis of ``M`` as rows, in
    ``L`` coordinates; ``element`` is the multiplier ``u`` in the sense of the
    ideal forms of the inputs: ``m -> u m``.
    """
    if L.rank != A.n or M.rank != A.n:
        return None
    fl = L.ideal_form or invertible_test(L)
    fm = M.ideal_form or invertible_test(M)
    if fl is None or fm is None:
        return None
    L = L.with_ideal_form(fl)
    M = M.with_ideal_form(fm)
    N, g = tensor_mul(L, conj_lattice(M))
    cert = main_standard_iso(A, N, budget)
    if cert is None:
        return None
    zhat = A.mult(N.ideal_form.to_element(cert.short_vector), g)
    u = A.mult(zhat, A.inverse(fm.w))
    T = []
    for row in fm.basis:
        c = fl.from_element(A.mult(u, row))
        if not is_integral(c):
            raise InternalError("multiplier does not map M into L")
        T.append([int(x) for x in c])
    if not verify_iso(A, M.gram, M.action, L, T):
        raise InternalError("lattice isomorphism does not verify")
    return IsoCertificate("lattice-iso", None, T, element=u)

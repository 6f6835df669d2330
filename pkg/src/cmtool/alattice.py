"""Lattices with an action of a CM-order, and their ideal-form description.

An ``ALattice`` over a CM-order ``A`` of rank ``n`` has an integral Gram
matrix and one integer matrix ``action[i]`` per basis element of ``A`` with
``alpha_i * b_j = sum_k action[i][j][k] b_k``. Lattice elements are integer
coordinate rows.

An invertible lattice is isomorphic to ``L_(I, w)``: the fractional ideal
``I`` with ``<x, y> = Tr(x conj(y) / w)``. ``IdealForm`` records such an
isomorphism through the images of the lattice basis in ``I``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InternalError
from .exact import (
    count_nonpositive_real_roots, det, frac, inverse, is_integral, mat_mul,
    reduce_mod_hnf, transpose, vec_mat,
)
from .finite_rings import cyclic_generator, submodule_rows
from .ideals import FracIdeal
from .lattice import (
    DEFAULT_BUDGET, enumerate_norm_at_most, gram_schmidt, inner, is_positive_definite,
    lll_reduce, nearest_plane, norm,
)


@dataclass
class IdealForm:
    """Isomorphism ``L -> L_(I, w)``; row ``k`` of ``basis`` is the image of ``b_k``."""
    ideal: FracIdeal
    w: list
    basis: list
    generator: list | None = None
    _inv: list | None = field(default=None, repr=False)

    def to_element(self, x):
        return vec_mat(x, self.basis)

    def from_element(self, a):
        if self._inv is None:
            self._inv = inverse(self.basis)
        return vec_mat([frac(c) for c in a], self._inv)


class ALattice:
    def __init__(self, order, gram, action, ideal_form: IdealForm | None = None,
                 validate: bool = True):
        self.order = order
        self.gram = [[int(x) for x in row] for row in gram]
        self.action = [[[int(x) for x in row] for row in D] for D in action]
        self.rank = len(self.gram)
        self.ideal_form = ideal_form
        self._sub_cache = {}
        if validate:
            self._validate()

    def _validate(self):
        A = self.order
        m = self.rank
        if len(self.action) != A.n:
            raise InputError("action tensor must have one matrix per order basis element")
        for D in self.action:
            if len(D) != m or any(len(r) != m for r in D):
                raise InputError("action matrices have the wrong shape")
        if not is_positive_definite(self.gram) or any(
                self.gram[i][j] != self.gram[j][i] for i in range(m) for j in range(m)):
            raise InputError("Gram matrix is not symmetric positive definite")
        ident = [[int(i == j) for j in range(m)] for i in range(m)]
        if self.action_matrix(A.one) != ident:
            raise InputError("unity does not act as the identity")
        for i in range(A.n):
            for j in range(A.n):
                lhs = mat_mul(self.action[j], self.action[i])
                if lhs != self.action_matrix(A.mul[i][j]):
                    raise InputError("action is not compatible with multiplication")
        for i in range(A.n):
            Dc = self.action_matrix(A.involution[i])
            if mat_mul(self.action[i], self.gram) != mat_mul(self.gram, transpose(Dc)):
                raise InputError("action is not compatible with the involution")

    # -- basic operations -------------------------------------------------
    def action_matrix(self, a):
        m = self.rank
        M = [[0] * m for _ in range(m)]
        for c, D in zip(a, self.action):
            if c:
                for j in range(m):
                    row, Dj = M[j], D[j]
                    for k in range(m):
                        if Dj[k]:
                            row[k] += c * Dj[k]
        return M

    def act(self, a, x):
        return vec_mat(x, self.action_matrix(a))

    def inner(self, x, y):
        return inner(self.gram, x, y)

    def norm(self, x):
        return norm(self.gram, x)

    def submodule(self, ideal: FracIdeal):
        """HNF rows of ``ideal * L`` in lattice coordinates (cached)."""
        key = ideal.key()
        if key not in self._sub_cache:
            self._sub_cache[key] = submodule_rows(self, ideal)
        return self._sub_cache[key]

    def reduce_mod(self, ideal: FracIdeal, x):
        return reduce_mod_hnf(list(x), self.submodule(ideal))

    def with_ideal_form(self, form: IdealForm) -> "ALattice":
        L = ALattice(self.order, self.gram, self.action, form, validate=False)
        L._sub_cache = self._sub_cache
        return L


def meets_gap(value, n: int) -> bool:
    """Exact test of ``value >= (2^(n/2) + 1)^2 * n``."""
    t = Fraction(value) / n - 2 ** n - 1
    return t >= 0 and t * t >= 4 * 2 ** n


def standard_lattice(A) -> ALattice:
    """The order itself with ``<x, y> = Tr(x conj(y))``."""
    n = A.n
    action = [A.mult_matrix(A.basis_vector(i)) for i in range(n)]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    form = IdealForm(FracIdeal.unit(A), A.one, ident, generator=A.one)
    return ALattice(A, A.gram, action, form, validate=False)


def _gram_from_elements(A, rows, w_inv):
    m = len(rows)
    conj_rows = [A.conj(r) for r in rows]
    G = [[None] * m for _ in range(m)]
    for i in range(m):
        xi = A.mult(rows[i], w_inv)
        for j in range(i, m):
            v = A.trace(A.mult(xi, conj_rows[j]))
            G[i][j] = G[j][i] = v
    return G


def _action_on_rows(A, rows, rows_inv):
    n = A.n
    action = []
    for i in range(n):
        a = A.basis_vector(i)
        D = [vec_mat(A.mult(a, r), rows_inv) for r in rows]
        if not all(is_integral(r) for r in D):
            raise InputError("module is not stable under the order")
        action.append([[int(x) for x in r] for r in D])
    return action


# callables ``f(order, gram)`` run on every reduced Gram built from an ideal
REDUCTION_OBSERVERS: list = []


def lattice_from_Iw(A, ideal: FracIdeal, w, reduce: bool = True) -> ALattice:
    """The lattice ``L_(I, w)`` on an LLL-reduced basis of ``I``.

    Raises InputError if the resulting Gram matrix is not integral or not
    positive definite.
    """
    w = [frac(c) for c in w]
    if A.conj(w) != w:
        raise InputError("w is not fixed by the involution")
    w_inv = A.inverse(w)
    if w_inv is None:
        raise InputError("w is not invertible")
    rows = ideal.basis()
    G = _gram_from_elements(A, rows, w_inv)
    if not all(frac(x).denominator == 1 for r in G for x in r):
        raise InputError("Tr(x conj(y) / w) is not integral on I")
    G = [[int(x) for x in r] for r in G]
    if not is_positive_definite(G):
        raise InputError("w is not totally positive")
    if reduce:
        G, T = lll_reduce(G)
        rows = mat_mul(T, rows)
        for observer in REDUCTION_OBSERVERS:
            observer(A, G)
    rows_inv = inverse(rows)
    action = _action_on_rows(A, rows, rows_inv)
    form = IdealForm(ideal, w, rows, _inv=rows_inv)
    return ALattice(A, G, action, form, validate=False)


def phi_pairing(L: ALattice, x, y):
    """The element ``z`` of the order with ``Tr(alpha_i z) = <alpha_i x, y>``."""
    A = L.order
    vals = [L.inner(L.act(A.basis_vector(i), x), y) for i in range(A.n)]
    return A.solve_trace(vals)


def is_short(L: ALattice, x) -> bool:
    return phi_pairing(L, x, x) == [Fraction(c) for c in L.order.one]


def is_regular(L: ALattice, x) -> bool:
    """``phi(x, x)`` is invertible and totally positive."""
    A = L.order
    z = phi_pairing(L, x, x)
    if A.inverse(z) is None:
        return False
    cnt, _ = count_nonpositive_real_roots(A.charpoly(z))
    return cnt == 0


def invertible_test(L: ALattice):
    """An ideal form of ``L`` when it is invertible, else None.

    The returned form maps the 2-adic generator ``e`` found on the way to 1.
    """
    A = L.order
    n = A.n
    if L.rank != n:
        return None
    two = FracIdeal.scalar(A, 2)
    e = cyclic_generator(A, two, L)
    if e is None:
        return None
    E = [L.act(A.basis_vector(i), e) for i in range(n)]
    if det(E) == 0:
        raise InternalError("2-adic generator is a zero divisor")
    P = inverse(E)
    I = FracIdeal.from_module_rows(A, P)
    z = phi_pairing(L, e, e)
    if (I * I.conj()).scale(z) != FracIdeal.unit(A):
        return None
    w = A.inverse(z)
    form = IdealForm(I, w, P, generator=e, _inv=[[frac(x) for x in r] for r in E])
    G = _gram_from_elements(A, P, z)
    if G != [[Fraction(x) for x in r] for r in L.gram]:
        raise InternalError("ideal form does not reproduce the Gram matrix")
    return form


def conj_lattice(L: ALattice) -> ALattice:
    """The conjugate lattice: same group and inner product, conjugated action."""
    A = L.order
    action = [L.action_matrix(A.involution[i]) for i in range(A.n)]
    form = None
    if L.ideal_form is not None:
        f = L.ideal_form
        form = IdealForm(f.ideal.conj(), f.w, [A.conj(r) for r in f.basis])
    return ALattice(A, L.gram, action, form, validate=False)


def ensure_ideal_form(L: ALattice) -> ALattice:
    if L.ideal_form is not None:
        return L
    form = invertible_test(L)
    if form is None:
        raise InputError("lattice is not invertible")
    return L.with_ideal_form(form)


def _renormalize(L: ALattice):
    """Rescale the ideal form by a regular reduced basis vector ``g``.

    The lattice itself is unchanged; the new form maps ``b_k`` to
    ``old(b_k) / g``. Returns ``(L, g)``.
    """
    A = L.order
    f = L.ideal_form
    g = next((r for r in f.basis if A.inverse(r) is not None), None)
    if g is None:
        return L, A.one
    g_inv = A.inverse(g)
    rows = [A.mult(r, g_inv) for r in f.basis]
    ideal = f.ideal.scale(g_inv)
    w = A.mult(A.mult(f.w, g_inv), A.conj(g_inv))
    return L.with_ideal_form(IdealForm(ideal, w, rows)), g


def tensor_mul(L: ALattice, M: ALattice, renormalize: bool = True):
    """``L tensor_A M`` for invertible lattices, on an LLL-reduced basis.

    Returns ``(N, g)``: an element ``x`` of the product ideal corresponds to
    ``x / g`` in the ideal form carried by ``N``.
    """
    A = L.order
    L = ensure_ideal_form(L)
    M = ensure_ideal_form(M)
    fl, fm = L.ideal_form, M.ideal_form
    N = lattice_from_Iw(A, fl.ideal * fm.ideal, A.mult(fl.w, fm.w))
    if renormalize:
        return _renormalize(N)
    return N, A.one


def _reduce_elements(N, elems, ideals, g_inv):
    A = N.order
    f = N.ideal_form
    out = []
    for x, ideal in zip(elems, ideals):
        y = A.mult(x, g_inv) if g_inv is not None else x
        c = f.from_element(y)
        if not is_integral(c):
            raise InternalError("coset representative left the lattice")
        c = N.reduce_mod(ideal, [int(v) for v in c])
        out.append(f.to_element(c))
    return out


def tensor_pow(L: ALattice, r: int, cosets=()):
    """``L^(tensor r)`` with cosets ``d_i + a_i L`` sent to ``d_i^r + a_i L^r``.

    ``cosets`` is a sequence of ``(rep, ideal)`` with ``rep`` in lattice
    coordinates. Returns ``(L^r, reps)``, the new representatives reduced
    into the HNF box of ``a_i L^r``. For ``r = 0`` this is the standard
    lattice with every coset sent to the coset of 1.
    """
    if r < 0:
        raise InputError("tensor power needs r >= 0")
    if r == 0:
        S = standard_lattice(L.order)
        one = [int(c) for c in L.order.one]
        return S, [S.reduce_mod(I, one) for _, I in cosets]
    L = ensure_ideal_form(L)
    ideals = [c[1] for c in cosets]
    if r == 1:
        return L, [L.reduce_mod(I, rep) for rep, I in cosets]
    f = L.ideal_form
    base = (L, [f.to_element(rep) for rep, _ in cosets])
    result = None
    e = r
    while e:
        if e & 1:
            result = base if result is None else _mul_with_cosets(result, base, ideals)
        e >>= 1
        if e:
            base = _mul_with_cosets(base, base, ideals)
    N, elems = result
    return N, [[int(v) for v in N.ideal_form.from_element(x)] for x in elems]


def _mul_with_cosets(P, Q, ideals):
    (L, xs), (M, ys) = P, Q
    A = L.order
    N, g = tensor_mul(L, M)
    g_inv = A.inverse(g)
    prods = [A.mult(x, y) for x, y in zip(xs, ys)]
    return N, _reduce_elements(N, prods, ideals, g_inv)


def short_in_coset(L: ALattice, ideal: FracIdeal, rep, check_gap: bool = True,
                   budget: int = DEFAULT_BUDGET):
    """The short vector of the coset ``rep + ideal L``, or None.

    With ``check_gap`` the separation hypothesis on ``ideal L`` is verified
    first (by Gram-Schmidt bounds, falling back to enumeration); failure is
    an InputError.
    """
    A = L.order
    n = A.n
    sub = L.submodule(ideal)
    Gs = mat_mul(mat_mul(sub, L.gram), transpose(sub))
    Gr, T = lll_reduce(Gs)
    B = mat_mul(T, sub)
    if check_gap:
        _, bstar = gram_schmidt(Gr)
        if not meets_gap(min(bstar), n):
            # an integer bound at or above the irrational threshold
            bound = (2 ** n + 1) * n + 2 * n * 2 ** ((n + 1) // 2)
            for v in enumerate_norm_at_most(Gr, bound, budget):
                if not meets_gap(norm(Gr, v), n):
                    raise InputError("ideal L contains vectors that are too short")
    target = vec_mat([frac(c) for c in rep], inverse(B))
    p = nearest_plane(Gr, target)
    y = [a - b for a, b in zip(rep, vec_mat(p, B))]
    if L.norm(y) == n and is_short(L, y):
        return [int(c) for c in y]
    return None

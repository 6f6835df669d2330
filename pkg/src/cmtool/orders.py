"""Orders given by structure constants, and recognition of CM-orders.

An order of rank ``n`` is stored as the tensor ``mul[i][j][k]`` with
``alpha_i * alpha_j = sum_k mul[i][j][k] alpha_k``. Elements of the order or
of its rational span are coordinate rows in that basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import sympy

from .errors import InputError, InternalError
from .exact import (
    RelationFinder, charpoly, common_denominator, det, factor_squarefree, frac, inverse, is_integral,
    mat_mul, poly_divmod, poly_mul, poly_trim, poly_xgcd, solve_rational, vec_mat,
)
from .lattice import is_positive_definite, lll_reduce


class Order:
    """A commutative ring with a Z-basis, optionally with an involution."""

    def __init__(self, mul, involution=None, validate: bool = True):
        self.n = n = len(mul)
        if validate:
            _check_tensor(mul)
        self.mul = [[[int(mul[i][j][k]) for k in range(n)] for j in range(n)]
                    for i in range(n)]
        self._one = self._find_one()
        if validate:
            _check_ring_axioms(self)
        self.involution = None
        if involution is not None:
            self.involution = [[int(x) for x in row] for row in involution]
            if validate:
                self._check_involution()
        self._trace_vec = [sum(self.mul[i][j][j] for j in range(n)) for i in range(n)]

    # -- arithmetic -------------------------------------------------------
    @property
    def one(self):
        return list(self._one)

    def basis_vector(self, i):
        return [int(i == j) for j in range(self.n)]

    def zero(self):
        return [0] * self.n

    def mult(self, x, y):
        n = self.n
        out = [0] * n
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            Mi = self.mul[i]
            for j in range(n):
                c = xi * y[j]
                if c:
                    row = Mi[j]
                    for k in range(n):
                        if row[k]:
                            out[k] += c * row[k]
        return out

    def mult_matrix(self, x):
        """Matrix ``M`` with ``y M`` the coordinates of ``x * y``."""
        n = self.n
        M = [[0] * n for _ in range(n)]
        for i in range(n):
            xi = x[i]
            if not xi:
                continue
            for j in range(n):
                row = self.mul[i][j]
                Mj = M[j]
                for k in range(n):
                    if row[k]:
                        Mj[k] += xi * row[k]
        return M

    def power(self, x, e):
        result = self.one
        base = list(x)
        while e:
            if e & 1:
                result = self.mult(result, base)
            e >>= 1
            if e:
                base = self.mult(base, base)
        return result

    def trace(self, x):
        return sum(a * t for a, t in zip(x, self._trace_vec))

    @property
    def trace_vector(self):
        return list(self._trace_vec)

    def conj(self, x):
        if self.involution is None:
            raise InputError("order has no involution")
        return vec_mat(x, self.involution)

    def inverse(self, x):
        """Inverse in the rational span, or None for zero divisors."""
        M = self.mult_matrix(x)
        try:
            Minv = inverse(M)
        except InputError:
            return None
        return vec_mat(self.one, Minv)

    def divide(self, x, y):
        yi = self.inverse(y)
        if yi is None:
            raise InputError("division by a zero divisor")
        return self.mult(x, yi)

    def is_regular(self, x) -> bool:
        return det(self.mult_matrix([frac(a) for a in x])) != 0

    def charpoly(self, x):
        return charpoly(self.mult_matrix(x))

    def minpoly(self, x):
        """Monic minimal polynomial over Q of an element of the rational span."""
        rf = RelationFinder()
        p = self.one
        while True:
            rel = rf.add(p)
            if rel is not None:
                lead = rel[-1]
                return [frac(c) / lead for c in rel]
            p = self.mult(p, x)

    def trace_matrix(self):
        n = self.n
        return [[self.trace(self.mul[i][j]) for j in range(n)] for i in range(n)]

    def discriminant(self):
        return det(self.trace_matrix())

    def is_in_order(self, x) -> bool:
        return is_integral(x)

    # -- internals --------------------------------------------------------
    def _find_one(self):
        n = self.n
        # e * alpha_j = alpha_j for all j: sum_i e_i mul[i][j][k] = delta_jk
        A = []
        b = []
        for j in range(n):
            for k in range(n):
                A.append([self.mul[i][j][k] for i in range(n)])
                b.append(int(j == k))
        try:
            e = solve_rational(A, b)
        except InputError:
            e = None
        if e is None:
            raise InputError("structure tensor has no unity")
        if not is_integral(e):
            raise InputError("unity is not in the Z-span of the basis")
        return [int(x) for x in e]

    def _check_involution(self):
        n = self.n
        C = self.involution
        if len(C) != n or any(len(r) != n for r in C):
            raise InputError("involution matrix has the wrong shape")
        if mat_mul(C, C) != [[int(i == j) for j in range(n)] for i in range(n)]:
            raise InputError("involution does not square to the identity")
        for i in range(n):
            for j in range(n):
                lhs = vec_mat(self.mul[i][j], C)
                rhs = self.mult(C[i], C[j])
                if lhs != rhs:
                    raise InputError("involution is not a ring automorphism")


def _check_tensor(mul):
    n = len(mul)
    if n == 0:
        raise InputError("order must have positive rank")
    for i in range(n):
        if len(mul[i]) != n or any(len(mul[i][j]) != n for j in range(n)):
            raise InputError("structure tensor must be n x n x n")
        for j in range(n):
            for k in range(n):
                if frac(mul[i][j][k]).denominator != 1:
                    raise InputError("structure tensor is not integral")


def _check_ring_axioms(A: Order):
    n = A.n
    for i in range(n):
        for j in range(n):
            if A.mul[i][j] != A.mul[j][i]:
                raise InputError("structure tensor is not commutative")
    for i in range(n):
        ei = A.basis_vector(i)
        for j in range(n):
            ij = A.mul[i][j]
            for k in range(n):
                if A.mult(ij, A.basis_vector(k)) != A.mult(ei, A.mul[j][k]):
                    raise InputError("structure tensor is not associative")


def trace_and_gram(A: Order):
    """Return ``(traces, gram, disc)`` for an order with involution.

    ``gram[i][j] = Tr(alpha_i * conj(alpha_j))`` and ``disc`` is the
    determinant of the trace form ``Tr(alpha_i alpha_j)``.
    """
    n = A.n
    tr = A.trace_vector
    G = [[A.trace(A.mult(A.basis_vector(i), A.involution[j])) for j in range(n)]
         for i in range(n)]
    return tr, G, A.discriminant()


class CMOrder(Order):
    """An order with its CM involution.

    The basis is whatever the caller supplies; ``normalize_basis`` produces
    an LLL-reduced copy. ``to_input`` holds the basis in the coordinates the
    order was originally supplied in; ``from_input`` and ``to_input_coords``
    convert elements.
    """

    def __init__(self, mul, involution, validate: bool = True, to_input=None):
        super().__init__(mul, involution, validate)
        if self.involution is None:
            raise InputError("a CM-order needs an involution")
        _, self.gram, self.disc = trace_and_gram(self)
        if validate and not is_positive_definite(self.gram):
            raise InputError("trace form Tr(x conj(y)) is not positive definite")
        n = self.n
        self.to_input = to_input or [[int(i == j) for j in range(n)] for i in range(n)]
        self._from_input = inverse(self.to_input)
        Tm = self.trace_matrix()
        self.trace_matrix_inv = inverse(Tm)

    @property
    def abs_disc(self) -> int:
        return abs(self.disc)

    def from_input(self, x):
        return vec_mat([frac(a) for a in x], self._from_input)

    def to_input_coords(self, x):
        return vec_mat(x, self.to_input)

    def involution_in_input(self):
        """Matrix of the involution on the basis the order was supplied in."""
        M = mat_mul(mat_mul(self._from_input, self.involution), self.to_input)
        return [[int(x) for x in row] for row in M]

    def trace_dual_basis(self):
        """Basis of the trace dual as rational coordinate rows."""
        return [list(r) for r in self.trace_matrix_inv]

    def solve_trace(self, values):
        """The unique ``z`` with ``Tr(alpha_i z) = values[i]`` for every ``i``."""
        return vec_mat(values, self.trace_matrix_inv)

    def is_totally_positive(self, x) -> bool:
        from .exact import count_nonpositive_real_roots
        if self.conj(x) != [frac(a) for a in x] and self.conj(x) != list(x):
            return False
        cnt, _ = count_nonpositive_real_roots(self.charpoly(x))
        return cnt == 0


def normalize_basis(A: Order, to_input=None):
    """LLL-reduce the basis of a CM-order with respect to ``Tr(x conj(y))``.

    Returns ``(CMOrder, T)`` with ``T`` the reduced basis in the coordinates
    of ``A``.
    """
    _, G, _ = trace_and_gram(A)
    _, T = lll_reduce(G)
    n = A.n
    Tinv = inverse(T)
    new_mul = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = A.mult(T[i], T[j])
            row.append([int(c) for c in vec_mat(prod, Tinv)])
        new_mul.append(row)
    inv = [[int(c) for c in vec_mat(A.conj(T[i]), Tinv)] for i in range(n)]
    base = to_input if to_input is not None else [[int(i == j) for j in range(n)] for i in range(n)]
    return CMOrder(new_mul, inv, validate=False, to_input=mat_mul(T, base)), T


# ---------------------------------------------------------------------------
# rational algebra splitting

@dataclass
class FieldComponent:
    """One field factor ``e * (A tensor Q)`` of an etale algebra.

    The field is Q[x]/(minpoly) in the power basis of ``theta * e``.
    ``embed`` rows are that power basis in order coordinates.
    """
    idempotent: list
    minpoly: list
    embed: list
    degree: int = field(init=False)

    def __post_init__(self):
        self.degree = len(self.minpoly) - 1


def _candidate_elements(n):
    for i in range(n):
        yield [int(k == i) for k in range(n)]
    for c in range(1, 2 * n + 3):
        for i, j in combinations(range(n), 2):
            v = [0] * n
            v[i] += 1
            v[j] += c
            yield v
    for c in range(1, n + 2):
        yield [c ** k for k in range(n)]


def primitive_element(A: Order):
    """An element whose minimal polynomial has full degree ``n``."""
    for v in _candidate_elements(A.n):
        m = A.minpoly(v)
        if len(m) - 1 == A.n:
            return v, m
    raise InternalError("no primitive element found among candidates")


def decompose_rational_algebra(A: Order):
    """Split the etale algebra ``A tensor Q`` into its field factors.

    Raises InputError if the discriminant vanishes.
    """
    if A.discriminant() == 0:
        raise InputError("discriminant is zero: algebra is not etale")
    theta, m = primitive_element(A)
    factors = factor_squarefree(m)
    comps = []
    for g in factors:
        h = poly_divmod(m, g)[0]
        _, s, _ = poly_xgcd(h, g)
        idem_poly = poly_mul(s, h)
        e = _eval_in_order(A, idem_poly, theta)
        embed = []
        p = e
        for _ in range(len(g) - 1):
            embed.append(p)
            p = A.mult(p, theta)
        comps.append(FieldComponent(e, g, embed))
    return comps


def _eval_in_order(A, poly, x):
    acc = [Fraction(0)] * A.n
    for c in reversed(poly_trim(poly)):
        acc = A.mult(acc, x)
        acc = [a + c * o for a, o in zip(acc, A.one)]
    return acc


def component_projector(A: Order, comps):
    """Matrix sending order coordinates to concatenated field coordinates."""
    W = [row for c in comps for row in c.embed]
    return inverse(W)


# ---------------------------------------------------------------------------
# number fields Q[x]/(g) in the power basis

def field_mult(g, a, b):
    return _pad(poly_divmod(poly_mul(a, b), g)[1], len(g) - 1)


def _pad(p, d):
    p = list(p)[:d]
    return p + [Fraction(0)] * (d - len(p))


def field_trace(g, a):
    d = len(g) - 1
    M = []
    for k in range(d):
        xk = [Fraction(0)] * d
        xk[k] = Fraction(1)
        M.append(field_mult(g, a, xk))
    return sum(M[i][i] for i in range(d))


def field_automorphisms(g):
    """Automorphisms of Q[x]/(g) as images of the generator ``x``.

    Each element of the returned list holds power-basis coordinates; the
    identity comes first.
    """
    g = [frac(c) for c in g]
    d = len(g) - 1
    if d == 1:
        return [[Fraction(0)]]
    x = sympy.Symbol("x")
    den = common_denominator(g)
    gz = sympy.Poly([int(c * den) for c in reversed(g)], x, domain="ZZ")
    K = sympy.QQ.algebraic_field(sympy.CRootOf(gz, 0))
    mod = [_from_mpq(c) for c in K.mod.to_list()]
    if [c / mod[0] for c in mod] != [c / g[-1] for c in reversed(g)]:
        raise InternalError("algebraic field generator does not match the field polynomial")
    roots = []
    for f, _ in sympy.Poly(gz, x, domain=K).factor_list()[1]:
        if f.degree() != 1:
            continue
        a, b = f.monic().rep.to_list()
        coeffs = [_from_mpq(c) for c in K.neg(b).to_list()]
        roots.append(_pad(list(reversed(coeffs)), d))
    generator = _pad([Fraction(0), Fraction(1)], d)
    roots.sort(key=lambda r: (r != generator, r))
    for r in roots:
        val = [Fraction(0)] * d
        for c in reversed(g):
            val = field_mult(g, val, r)
            val[0] += c
        if any(val):
            raise InternalError("computed automorphism does not map roots to roots")
    return roots


def _from_mpq(c):
    return Fraction(int(c.numerator), int(c.denominator))


def automorphism_matrix(g, image):
    """Matrix of the automorphism ``x -> image`` on the power basis."""
    d = len(g) - 1
    rows = []
    p = _pad([Fraction(1)], d)
    for _ in range(d):
        rows.append(p)
        p = field_mult(g, p, image)
    return rows


def is_cm_field(g):
    """Complex conjugation of Q[x]/(g) on the power basis, or None.

    Totally real fields qualify with the identity.
    """
    d = len(g) - 1
    for image in field_automorphisms(g):
        S = automorphism_matrix(g, image)
        if mat_mul(S, S) != [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]:
            continue
        basis = [_pad([Fraction(0)] * k + [Fraction(1)], d) for k in range(d)]
        Q = [[field_trace(g, field_mult(g, basis[i], S[j])) for j in range(d)]
             for i in range(d)]
        if all(det([row[:k] for row in Q[:k]]) > 0 for k in range(1, d + 1)):
            return S
    return None


@dataclass
class CMTestResult:
    order: CMOrder | None
    failed_step: str | None = None

    @property
    def answer(self) -> bool:
        return self.order is not None


def cm_order_test(A: Order) -> CMTestResult:
    """Decide whether ``A`` is a CM-order and recover its involution."""
    if A.discriminant() == 0:
        return CMTestResult(None, "discriminant is zero")
    comps = decompose_rational_algebra(A)
    P = component_projector(A, comps)
    conj_blocks = []
    for c in comps:
        S = is_cm_field(c.minpoly)
        if S is None:
            return CMTestResult(None, "a field factor is not a CM-field")
        conj_blocks.append(S)
    n = A.n
    C = []
    for i in range(n):
        coords = vec_mat(A.basis_vector(i), P)
        img = [Fraction(0)] * n
        off = 0
        for c, S in zip(comps, conj_blocks):
            block = coords[off:off + c.degree]
            img_block = vec_mat(block, S)
            for a, row in zip(img_block, c.embed):
                if a:
                    img = [u + a * v for u, v in zip(img, row)]
            off += c.degree
        C.append(img)
    if not all(is_integral(r) for r in C):
        return CMTestResult(None, "involution does not preserve the order")
    C = [[int(x) for x in r] for r in C]
    base = Order(A.mul, C, validate=False)
    cm, _ = normalize_basis(base)
    return CMTestResult(cm)


def is_cm_order(A: Order):
    """The normalized CMOrder when ``A`` is a CM-order, else None."""
    return cm_order_test(A).order


def has_cm_structure(A: Order, involution, check_ring: bool = True) -> bool:
    """Cheap certificate that ``involution`` makes ``A`` a CM-order.

    An automorphism of order dividing two whose twisted trace form
    ``Tr(x sigma(y))`` is positive definite is the canonical involution of a
    CM-algebra; integrality of the matrix then makes ``A`` a CM-order.
    ``check_ring=False`` skips the associativity check for tensors that are
    associative by construction.
    """
    if any(frac(x).denominator != 1 for row in involution for x in row):
        return False
    try:
        B = Order(A.mul, None, validate=check_ring)
        B.involution = [[int(x) for x in row] for row in involution]
        B._check_involution()
    except (InputError, ValueError):
        return False
    _, G, disc = trace_and_gram(B)
    return disc != 0 and is_positive_definite(G)


# ---------------------------------------------------------------------------
# idempotents

def primitive_idempotents(A: Order):
    """Primitive idempotents of the order (not of its rational span)."""
    comps = decompose_rational_algebra(A)
    s = len(comps)
    integral_sets = []
    for size in range(1, s + 1):
        for subset in combinations(range(s), size):
            e = [sum(comps[j].idempotent[k] for j in subset) for k in range(A.n)]
            if is_integral(e):
                integral_sets.append(frozenset(subset))
    atoms = set()
    for j in range(s):
        atom = frozenset(range(s))
        for S in integral_sets:
            if j in S:
                atom = atom & S
        atoms.add(atom)
    out = []
    for atom in sorted(atoms, key=lambda a: sorted(a)):
        e = [sum(comps[j].idempotent[k] for j in atom) for k in range(A.n)]
        out.append([int(x) for x in e])
    return out

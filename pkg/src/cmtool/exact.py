"""Exact integer and rational linear algebra plus univariate polynomials.

Matrices are lists of rows. Vectors are lists. Polynomials are coefficient
lists in ascending degree (``p[i]`` is the coefficient of ``x**i``). Every
routine is exact; rationals are ``fractions.Fraction``.

When a modulus ``p`` is given, polynomial routines work over the field with
``p`` elements and coefficients are ints in ``[0, p)``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

import sympy

from .errors import InputError, NotSquarefreeError


# ---------------------------------------------------------------------------
# small helpers

def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def round_half_up(q: Fraction) -> int:
    """Nearest integer, ties rounded towards +infinity."""
    q = frac(q)
    return (2 * q.numerator + q.denominator) // (2 * q.denominator)


def ceil_frac(q: Fraction) -> int:
    q = frac(q)
    return -((-q.numerator) // q.denominator)


def floor_frac(q: Fraction) -> int:
    q = frac(q)
    return q.numerator // q.denominator


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, frac(v).denominator)
    return d


def is_integral(values) -> bool:
    return all(frac(v).denominator == 1 for v in values)


def as_ints(values) -> list[int]:
    out = []
    for v in values:
        v = frac(v)
        if v.denominator != 1:
            raise InputError(f"expected an integer, got {v}")
        out.append(v.numerator)
    return out


def factor_integer(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer."""
    if n < 1:
        raise InputError("can only factor positive integers")
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


# ---------------------------------------------------------------------------
# dense matrices

def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> list[list[int]]:
    return [[0] * c for _ in range(r)]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A, B):
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def vec_mat(v, M):
    """Row vector times matrix."""
    if not M:
        return []
    out = [0] * len(M[0])
    for a, row in zip(v, M):
        if a:
            for j, m in enumerate(row):
                if m:
                    out[j] += a * m
    return out


def mat_vec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def scale_vec(c, v):
    return [c * a for a in v]


def add_vec(u, v):
    return [a + b for a, b in zip(u, v)]


def sub_vec(u, v):
    return [a - b for a, b in zip(u, v)]


def _echelon(M):
    """Fraction-valued reduced row echelon form; returns (rows, pivots)."""
    R = [[frac(x) for x in row] for row in M]
    pivots = []
    r = 0
    ncols = len(R[0]) if R else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(M) -> int:
    return len(_echelon(M)[1]) if M else 0


def det(M):
    """Determinant (Bareiss for integer input, elimination otherwise)."""
    n = len(M)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in M for x in row):
        A = [list(row) for row in M]
        sign, prev = 1, 1
        for k in range(n - 1):
            if A[k][k] == 0:
                sw = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if sw is None:
                    return 0
                A[k], A[sw] = A[sw], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    A = [[frac(x) for x in row] for row in M]
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return d


def inverse(M):
    n = len(M)
    aug = [[frac(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, piv = _echelon(aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise InputError("matrix is singular")
    return [row[n:] for row in R]


def solve_rational(A, b):
    """Unique rational ``x`` with ``A x = b``, or None when there is none.

    Raises InputError when the solution is not unique.
    """
    n = len(A[0])
    aug = [[frac(x) for x in row] + [frac(bi)] for row, bi in zip(A, b)]
    R, piv = _echelon(aug)
    if n in piv:
        return None
    if len(piv) < n:
        raise InputError("linear system has no unique solution")
    return [R[i][n] for i in range(n)]


def left_kernel(M):
    """Rational basis of ``{x : x M = 0}``."""
    m = len(M)
    if m == 0:
        return []
    cols = len(M[0])
    aug = [[frac(x) for x in row] + [Fraction(int(i == j)) for j in range(m)]
           for i, row in enumerate(M)]
    # eliminate on the first ``cols`` columns only
    R = aug
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, m) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c] / R[r][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        r += 1
    return [row[cols:] for row in R[r:]]


def primitive_integer_vector(v):
    """Scale a rational vector to a primitive integer vector."""
    d = common_denominator(v)
    w = [int(x * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w] if g else w


# ---------------------------------------------------------------------------
# Hermite normal form and integer solving

def _hnf_core(rows, ncols):
    """Row-style HNF of integer ``rows`` on the first ``ncols`` columns.

    Rows may carry extra trailing columns (used for the transform); those
    are carried along but never used for pivoting.
    """
    A = [list(r) for r in rows]
    m = len(A)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if all(A[i][c] == 0 for i in range(r, m)):
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, r, pivots


def hnf(rows, ncols: int | None = None) -> list[list[int]]:
    """Hermite normal form of the row span of an integer matrix.

    Upper echelon with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, zero rows dropped.
    """
    rows = [as_ints(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0]) if ncols is None else ncols
    A, r, _ = _hnf_core(rows, ncols)
    return [row for row in A[:r]]


def hnf_with_transform(rows):
    """Return ``(H, U, K)`` with ``U rows = H`` and ``K rows = 0``.

    ``U`` and ``K`` together form a unimodular matrix; ``K`` spans the
    integer left kernel.
    """
    rows = [as_ints(r) for r in rows]
    m = len(rows)
    n = len(rows[0])
    aug = [row + [int(i == j) for j in range(m)] for i, row in enumerate(rows)]
    A, r, _ = _hnf_core(aug, n)
    H = [row[:n] for row in A[:r]]
    U = [row[n:] for row in A[:r]]
    K = [row[n:] for row in A[r:]]
    return H, U, K


def solve_in_hnf(H, target):
    """Integer ``y`` with ``y H = target`` for an HNF ``H``, or None."""
    t = list(target)
    y = []
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        v = frac(t[c])
        if v.denominator != 1 or v.numerator % row[c]:
            return None
        q = v.numerator // row[c]
        y.append(q)
        if q:
            t = [a - q * b for a, b in zip(t, row)]
    if any(t):
        return None
    return y


def solve_integer(gens, target):
    """Integer ``x`` with ``x gens = target`` (row convention), or None."""
    H, U, _ = hnf_with_transform(gens)
    y = solve_in_hnf(H, target)
    if y is None:
        return None
    return vec_mat(y, U) if U else [0] * len(gens)


def solve_linear(A, b, ring: str = "Q"):
    """Solve ``A x = b`` over the rationals (``'Q'``) or the integers (``'Z'``).

    Returns None when no solution exists in the requested ring.
    """
    if ring == "Q":
        return solve_rational(A, b)
    if ring == "Z":
        cols = transpose([as_ints(r) for r in A])
        return solve_integer(cols, b)
    raise InputError(f"unknown ring {ring!r}")


def reduce_mod_hnf(v, H):
    """Canonical representative of ``v`` modulo the row span of HNF ``H``.

    Only meaningful when ``H`` has full column rank; each pivot coordinate
    ends in ``[0, pivot)``.
    """
    v = list(v)
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        q = floor_frac(frac(v[c]) / row[c])
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def integer_basis_of_span(rows):
    """HNF basis of the Z-module spanned by rational row vectors.

    Returns ``(den, H)`` with the module equal to ``H / den``.
    """
    d = common_denominator(x for r in rows for x in r)
    H = hnf([[int(frac(x) * d) for x in r] for r in rows])
    g = 0
    for row in H:
        for x in row:
            g = gcd(g, x)
    g = gcd(g, d) if g else d
    H = [[x // g for x in row] for row in H]
    return d // g, H


# ---------------------------------------------------------------------------
# polynomials

def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_deg(p) -> int:
    return len(poly_trim(p)) - 1


def _norm(p, mod):
    if mod is None:
        return poly_trim(frac(c) for c in p)
    return poly_trim(c % mod for c in p)


def poly_add(a, b, mod=None):
    n = max(len(a), len(b))
    return _norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)], mod)


def poly_sub(a, b, mod=None):
    return poly_add(a, [-c for c in b], mod)


def poly_mul(a, b, mod=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _norm(out, mod)


def _inv(c, mod):
    return pow(c, -1, mod) if mod is not None else 1 / frac(c)


def poly_divmod(a, b, mod=None):
    a = _norm(a, mod)
    b = _norm(b, mod)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = _inv(b[-1], mod)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1] * inv
        if mod is not None:
            c %= mod
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = _norm(r, mod)
    return _norm(q, mod), r


def poly_monic(p, mod=None):
    p = _norm(p, mod)
    if not p:
        return p
    inv = _inv(p[-1], mod)
    return _norm([c * inv for c in p], mod)


def poly_gcd(a, b, mod=None):
    a, b = _norm(a, mod), _norm(b, mod)
    while b:
        a, b = b, poly_divmod(a, b, mod)[1]
    return poly_monic(a, mod)


def poly_xgcd(a, b, mod=None):
    """Return ``(g, s, t)`` with ``s a + t b = g`` monic."""
    r0, r1 = _norm(a, mod), _norm(b, mod)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, mod)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, mod), mod)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, mod), mod)
    inv = _inv(r0[-1], mod)
    sc = [inv]
    return (poly_mul(r0, sc, mod), poly_mul(s0, sc, mod), poly_mul(t0, sc, mod))


def poly_deriv(p, mod=None):
    return _norm([i * c for i, c in enumerate(p)][1:], mod)


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_compose_shift(p, c):
    """Return ``p(x + c)``."""
    out = []
    for coeff in reversed(poly_trim(p)):
        out = poly_add(poly_mul(out, [c, 1]), [coeff])
    return out


def is_squarefree(p, mod=None) -> bool:
    p = _norm(p, mod)
    if len(p) <= 2:
        return True
    return poly_deg(poly_gcd(p, poly_deriv(p, mod), mod)) == 0


_X = sympy.Symbol("x")


def factor_squarefree(p, mod: int | None = None):
    """Monic irreducible factors of a squarefree polynomial.

    Over the rationals when ``mod`` is None, otherwise over the prime field
    with ``mod`` elements. Raises NotSquarefreeError for repeated factors.
    """
    p = _norm(p, mod)
    if not p:
        raise InputError("cannot factor the zero polynomial")
    if not is_squarefree(p, mod):
        raise NotSquarefreeError("polynomial is not squarefree")
    p = poly_monic(p, mod)
    if len(p) <= 2:
        return [p] if len(p) == 2 else []
    if mod is None:
        den = common_denominator(p)
        poly = sympy.Poly([int(c * den) for c in reversed(p)], _X, domain="ZZ")
        factors = []
        for f, _ in poly.factor_list()[1]:
            cs = [Fraction(int(c)) for c in reversed(f.all_coeffs())]
            factors.append(poly_monic(cs))
    else:
        poly = sympy.Poly(list(reversed(p)), _X, modulus=mod)
        factors = []
        for f, _ in poly.factor_list()[1]:
            cs = [int(c) % mod for c in reversed(f.all_coeffs())]
            factors.append(poly_monic(cs, mod))
    factors.sort(key=lambda f: (len(f), [frac(c) for c in f]))
    return factors


def charpoly(M):
    """Characteristic polynomial ``det(x I - M)`` of a square matrix."""
    n = len(M)
    A = [[frac(x) for x in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = mat_mul(A, Mk) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        c_prev = coeffs[n - k + 1]
        Mk = [[AM[i][j] + (c_prev if i == j else 0) for j in range(n)]
              for i in range(n)]
        AMk = mat_mul(A, Mk)
        coeffs[n - k] = -sum(AMk[i][i] for i in range(n)) / k
    return coeffs


def _sign_changes(seq) -> int:
    signs = [s for s in seq if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def sturm_sequence(p):
    p = poly_trim(frac(c) for c in p)
    seq = [p, poly_deriv(p)]
    while seq[-1] and poly_deg(seq[-1]) > 0:
        r = poly_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def count_nonpositive_real_roots(p):
    """Distinct real roots in ``(-inf, 0]`` of a rational polynomial.

    Returns ``(count, has_zero_root)``.
    """
    p = poly_trim(frac(c) for c in p)
    if not p:
        raise InputError("zero polynomial has infinitely many roots")
    zero = p[0] == 0
    while p and p[0] == 0:
        p = p[1:]
    if len(p) == 1:
        return int(zero), zero
    seq = sturm_sequence(p)
    at_minus_inf = [s[-1] * (-1) ** (len(s) - 1) for s in seq]
    at_zero = [s[0] for s in seq]
    negatives = _sign_changes(at_minus_inf) - _sign_changes(at_zero)
    return negatives + int(zero), zero


# ---------------------------------------------------------------------------
# incremental linear dependence

class RelationFinder:
    """Detects the first linear dependence in a stream of vectors.

    Works over the rationals or, with ``mod``, over a prime field.
    """

    def __init__(self, mod: int | None = None):
        self.mod = mod
        self.rows = []   # (pivot, reduced vector, combination)
        self.count = 0

    def _scal(self, x):
        return x % self.mod if self.mod is not None else frac(x)

    def add(self, v):
        """Add ``v``; return the relation coefficients if it is dependent."""
        k = self.count
        self.count += 1
        v = [self._scal(x) for x in v]
        combo = [0] * k + [1]
        for piv, row, rc in self.rows:
            c = v[piv]
            if c:
                v = [self._scal(a - c * b) for a, b in zip(v, row)]
                rc = rc + [0] * (len(combo) - len(rc))
                combo = [self._scal(a - c * b) for a, b in zip(combo, rc)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return combo
        inv = _inv(v[piv], self.mod)
        v = [self._scal(x * inv) for x in v]
        combo = [self._scal(x * inv) for x in combo]
        self.rows.append((piv, v, combo))
        return None

"""Finite quotients of orders: maximal ideals and cyclic module generators.

Modules over the order are anything exposing ``rank`` and
``action_matrix(a)`` (the matrix of multiplication by ``a`` on integer
coordinate rows); ``RegularModule`` wraps the order acting on itself.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalError
from .exact import (
    RelationFinder, factor_integer, factor_squarefree, hnf, reduce_mod_hnf,
    solve_integer, vec_mat,
)
from .ideals import FracIdeal


class RegularModule:
    """The order viewed as a module over itself."""

    def __init__(self, order):
        self.order = order
        self.rank = order.n

    def action_matrix(self, a):
        return self.order.mult_matrix(a)


@dataclass(frozen=True)
class MaxIdeal:
    ideal: FracIdeal
    p: int
    residue_degree: int

    @property
    def norm(self) -> int:
        return self.p ** self.residue_degree

    def sort_key(self):
        return (self.p, [x for row in self.ideal.hnf for x in row])

    def __repr__(self):
        return f"MaxIdeal(p={self.p}, f={self.residue_degree}, hnf={self.ideal.hnf})"


# ---------------------------------------------------------------------------
# linear algebra over F_p

def _rref_mod(rows, p):
    """Reduced echelon rows mod ``p`` with their pivot columns."""
    R = [[x % p for x in r] for r in rows]
    out = []
    pivots = []
    for r in R:
        for piv, row in zip(pivots, out):
            c = r[piv]
            if c:
                r = [(a - c * b) % p for a, b in zip(r, row)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = pow(r[piv], -1, p)
        r = [(x * inv) % p for x in r]
        for k, row in enumerate(out):
            c = row[piv]
            if c:
                out[k] = [(a - c * b) % p for a, b in zip(row, r)]
        out.append(r)
        pivots.append(piv)
    return out, pivots


def _left_kernel_mod(M, p):
    """Basis of ``{x : x M = 0 mod p}``."""
    m = len(M)
    cols = len(M[0]) if M else 0
    aug = [[x % p for x in row] + [int(i == j) for j in range(m)] for i, row in enumerate(M)]
    R = [list(r) for r in aug]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, m) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = pow(R[r][c], -1, p)
        R[r] = [(x * inv) % p for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [(a - f * b) % p for a, b in zip(R[i], R[r])]
        r += 1
    return [row[cols:] for row in R[r:]]


class _Reducer:
    """Reduction modulo a subspace of ``F_p^n`` given by echelon rows."""

    def __init__(self, rows, p):
        self.p = p
        self.rows, self.pivots = _rref_mod(rows, p)

    def __call__(self, v):
        p = self.p
        v = [x % p for x in v]
        for piv, row in zip(self.pivots, self.rows):
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v


# ---------------------------------------------------------------------------
# maximal ideals above a prime

def _mult_mod(A, x, y, p):
    return [c % p for c in A.mult(x, y)]


def _power_mod(A, x, e, p):
    result = [c % p for c in A.one]
    base = [c % p for c in x]
    while e:
        if e & 1:
            result = _mult_mod(A, result, base, p)
        e >>= 1
        if e:
            base = _mult_mod(A, base, base, p)
    return result


def primes_above(A, p: int):
    """Maximal ideals of ``A`` containing the prime ``p``.

    Sorted by ``(p, flattened HNF)``.
    """
    n = A.n
    # nilradical of A/pA is the kernel of a large enough Frobenius power
    q = p
    while q < n:
        q *= p
    frob = [_power_mod(A, A.basis_vector(i), q, p) for i in range(n)]
    rad = _left_kernel_mod(frob, p)
    red = _Reducer(rad, p)
    one = red(A.one)
    # Berlekamp subalgebra of the reduced quotient
    berl_rows = [red([a - b for a, b in zip(_power_mod(A, A.basis_vector(i), p, p),
                                            A.basis_vector(i))]) for i in range(n)]
    berl = [red(v) for v in _left_kernel_mod(berl_rows, p)]
    berl = [v for v in berl if any(v)]
    comps = [one]
    for y in berl:
        new = []
        for e in comps:
            z = red(_mult_mod(A, y, e, p))
            new.extend(_split_idempotent(A, e, z, p, red))
        comps = new
    out = []
    for e in comps:
        images = [red(_mult_mod(A, A.basis_vector(i), e, p)) for i in range(n)]
        ker = _left_kernel_mod(images, p)
        f = n - len(ker)
        rows = [[int(x) for x in v] for v in ker] + [[p * int(i == j) for j in range(n)]
                                                    for i in range(n)]
        I = FracIdeal(A, 1, hnf(rows))
        out.append(MaxIdeal(I, p, f))
    out.sort(key=MaxIdeal.sort_key)
    return out


def _split_idempotent(A, e, z, p, red):
    """Split the component ``e`` along the eigenvalues of ``z`` (with z^p = z)."""
    rf = RelationFinder(mod=p)
    pw = e
    while True:
        rel = rf.add(pw)
        if rel is not None:
            break
        pw = red(_mult_mod(A, pw, z, p))
    minpoly = [c % p for c in rel]
    if len(minpoly) <= 2:
        return [e]
    roots = [(-f[0]) % p for f in factor_squarefree(minpoly, p)]
    if any(len(f) != 2 for f in factor_squarefree(minpoly, p)):
        raise InternalError("Berlekamp element has an irreducible factor of degree > 1")
    out = []
    for c in roots:
        acc = e
        for c2 in roots:
            if c2 == c:
                continue
            inv = pow((c - c2) % p, -1, p)
            factor = [((a - c2 * b) * inv) % p for a, b in zip(z, e)]
            acc = red(_mult_mod(A, acc, factor, p))
        out.append(acc)
    return out


def maximal_ideals_containing(A, ideal: FracIdeal):
    """All maximal ideals containing an integral ideal of finite index."""
    out = []
    for p in sorted(factor_integer(ideal.index())):
        out.extend(m for m in primes_above(A, p) if m.ideal.contains_ideal(ideal))
    return out


def factor_index_ideal(A, m: int):
    """Factor ``m A`` as ``prod P^t`` over maximal ideals ``P``.

    Returns ``[(MaxIdeal, t)]``. Raises InputError when ``m < 2`` or when
    ``m A`` is not such a product.
    """
    if m < 2:
        raise InputError("factor_index_ideal needs m >= 2")
    target = FracIdeal.scalar(A, m)
    out = []
    for p in sorted(factor_integer(m)):
        for P in primes_above(A, p):
            t = 0
            power = FracIdeal.unit(A)
            while True:
                nxt = power * P.ideal
                if not nxt.contains_ideal(target):
                    break
                power, t = nxt, t + 1
            out.append((P, t))
    prod = FracIdeal.unit(A)
    for P, t in out:
        prod = prod * (P.ideal ** t)
    if prod != target:
        raise InputError("m A is not a product of maximal ideals")
    return out


# ---------------------------------------------------------------------------
# submodules and cyclic generators

def submodule_rows(module, ideal: FracIdeal):
    """HNF (in module coordinates) of ``ideal * L`` for an integral ideal."""
    if not ideal.is_integral():
        raise InputError("expected an integral ideal")
    rows = []
    for b in ideal.hnf:
        rows.extend(module.action_matrix(b))
    return hnf(rows)


def generates_mod(A, module, ideal, e, sub=None) -> bool:
    """Whether ``A e + ideal L = L``."""
    rows = [vec_mat(e, module.action_matrix(A.basis_vector(i))) for i in range(A.n)]
    rows += sub if sub is not None else submodule_rows(module, ideal)
    return hnf(rows) == [[int(i == j) for j in range(module.rank)] for i in range(module.rank)]


def _crt_idempotents(A, maxes):
    """Elements equal to 1 mod one maximal ideal and 0 mod the others."""
    if len(maxes) == 1:
        return [A.one]
    out = []
    for i, P in enumerate(maxes):
        J = FracIdeal.unit(A)
        for j, Q in enumerate(maxes):
            if j != i:
                J = J * Q.ideal
        gens = P.ideal.hnf + J.hnf
        x = solve_integer(gens, A.one)
        if x is None:
            raise InternalError("maximal ideals are not coprime")
        b = vec_mat(x[len(P.ideal.hnf):], J.hnf)
        out.append(b)
    return out


def cyclic_generator(A, ideal: FracIdeal, module, maxes=None):
    """An ``e`` in ``L`` with ``A e + ideal L = L``, or None if none exists.

    ``maxes`` may list the maximal ideals containing ``ideal``; they are
    computed otherwise.
    """
    m = module.rank
    if ideal == FracIdeal.unit(A):
        return [int(j == 0) for j in range(m)]
    if maxes is None:
        maxes = maximal_ideals_containing(A, ideal)
    local = []
    for P in maxes:
        sub = submodule_rows(module, P.ideal)
        size = 1
        for i, row in enumerate(sub):
            size *= row[i]
        if size != P.norm:
            return None
        g = next(([int(i == j) for j in range(m)] for i in range(m)
                  if reduce_mod_hnf([int(i == j) for j in range(m)], sub) != [0] * m),
                 None)
        if g is None:
            raise InternalError("L equals P L for a maximal ideal P")
        local.append(g)
    idems = _crt_idempotents(A, maxes)
    e = [0] * m
    for eps, g in zip(idems, local):
        e = [a + b for a, b in zip(e, vec_mat(g, module.action_matrix(eps)))]
    sub = submodule_rows(module, ideal)
    e = reduce_mod_hnf(e, sub)
    if not generates_mod(A, module, ideal, e, sub):
        raise InternalError("CRT lift does not generate the quotient module")
    return e


def divide_in_cyclic_quotient(A, ideal: FracIdeal, module, nu, e):
    """The ``s`` in ``A / ideal`` with ``nu = s e`` modulo ``ideal L``.

    Returns None when ``nu`` is not in the cyclic module; raises InputError
    if ``e`` is not a generator.
    """
    n = A.n
    sub = submodule_rows(module, ideal)
    if not generates_mod(A, module, ideal, e, sub):
        raise InputError("e does not generate L / ideal L")
    E = [vec_mat(e, module.action_matrix(A.basis_vector(i))) for i in range(n)]
    x = solve_integer(E + sub, nu)
    if x is None:
        return None
    return ideal.reduce(x[:n])

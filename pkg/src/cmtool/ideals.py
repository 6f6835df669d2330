"""Fractional ideals of an order.

An ideal is stored canonically as ``(den, H)``: ``H`` is the HNF of
``den * I`` and ``den`` is the least positive integer making that integral.
"""
from __future__ import annotations

from fractions import Fraction
from .errors import InputError
from .exact import (
    det, frac, integer_basis_of_span, inverse, reduce_mod_hnf,
    solve_in_hnf, transpose, vec_mat,
)


class FracIdeal:
    __slots__ = ("order", "den", "hnf")

    def __init__(self, order, den: int, H):
        self.order = order
        self.den = int(den)
        self.hnf = [list(r) for r in H]

    # -- construction ------------------------------------------------------
    @classmethod
    def from_module_rows(cls, order, rows):
        """Ideal whose Z-basis spans ``rows``; A-stability is not checked."""
        d, H = integer_basis_of_span(rows)
        if len(H) != order.n:
            raise InputError("module does not have full rank")
        return cls(order, d, H)

    @classmethod
    def from_basis(cls, order, rows):
        """Ideal with the given Z-basis, verifying it is an A-module."""
        I = cls.from_module_rows(order, rows)
        for b in I.basis():
            for i in range(order.n):
                if not I.contains(order.mult(order.basis_vector(i), b)):
                    raise InputError("module is not stable under the order")
        return I

    @classmethod
    def from_generators(cls, order, gens):
        """The A-module generated by the given elements."""
        rows = []
        for g in gens:
            g = [frac(x) for x in g]
            for i in range(order.n):
                rows.append(order.mult(order.basis_vector(i), g))
        return cls.from_module_rows(order, rows)

    @classmethod
    def principal(cls, order, x):
        return cls.from_generators(order, [x])

    @classmethod
    def unit(cls, order):
        return cls(order, 1, [[int(i == j) for j in range(order.n)] for i in range(order.n)])

    @classmethod
    def scalar(cls, order, m):
        return cls.principal(order, [m * c for c in order.one])

    # -- basic queries -------------------------------------------------------
    def basis(self):
        return [[Fraction(x, self.den) for x in row] for row in self.hnf]

    def key(self):
        return (self.den, tuple(tuple(r) for r in self.hnf))

    def __eq__(self, other):
        return isinstance(other, FracIdeal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FracIdeal(den={self.den}, hnf={self.hnf})"

    def is_integral(self) -> bool:
        return self.den == 1

    def contains(self, x) -> bool:
        v = [frac(a) * self.den for a in x]
        return solve_in_hnf(self.hnf, v) is not None

    def contains_ideal(self, other) -> bool:
        return all(self.contains(b) for b in other.basis())

    def norm(self) -> Fraction:
        """Index ``(A : I)`` generalised multiplicatively to fractional ideals."""
        return Fraction(det(self.hnf), self.den ** self.order.n)

    def index(self) -> int:
        if not self.is_integral():
            raise InputError("index is only defined for integral ideals")
        return det(self.hnf)

    def coords(self, x):
        """Coordinates of ``x`` on the HNF basis (rational in general)."""
        return vec_mat([frac(a) * self.den for a in x], inverse(self.hnf))

    # -- arithmetic ----------------------------------------------------------
    def __mul__(self, other):
        A = self.order
        if isinstance(other, FracIdeal):
            rows = [A.mult(a, b) for a in self.basis() for b in other.basis()]
            return FracIdeal.from_module_rows(A, rows)
        return self.scale(other)

    def scale(self, x):
        A = self.order
        return FracIdeal.from_module_rows(A, [A.mult(b, [frac(c) for c in x]) for b in self.basis()])

    def __add__(self, other):
        return FracIdeal.from_module_rows(self.order, self.basis() + other.basis())

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = FracIdeal.unit(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def conj(self):
        A = self.order
        return FracIdeal.from_module_rows(A, [A.conj(b) for b in self.basis()])

    def colon_order(self):
        """``(A : I) = {x : x I in A}``."""
        A = self.order
        # x (A : I) iff x * M_b is integral for every basis vector b of I
        cols = []
        for b in self.basis():
            M = A.mult_matrix(b)
            cols.extend(transpose(M))
        d, H = integer_basis_of_span(cols)
        B = [[Fraction(x, d) for x in row] for row in H]
        dual = transpose(inverse(B))
        return FracIdeal.from_module_rows(A, dual)

    def inverse(self):
        J = self.colon_order()
        if self * J != FracIdeal.unit(self.order):
            raise InputError("ideal is not invertible")
        return J

    def is_invertible(self) -> bool:
        return self * self.colon_order() == FracIdeal.unit(self.order)

    def divide(self, x):
        y = self.order.inverse([frac(c) for c in x])
        if y is None:
            raise InputError("cannot divide an ideal by a zero divisor")
        return self.scale(y)

    def reduce(self, x):
        """Canonical representative of ``x`` modulo an integral ideal."""
        if not self.is_integral():
            raise InputError("reduction needs an integral ideal")
        return reduce_mod_hnf(x, self.hnf)

    def is_unit_mod(self, x) -> bool:
        """Whether ``x`` is a unit of ``A / I`` for integral ``I``."""
        A = self.order
        x = [frac(c) for c in x]
        rows = [A.mult(A.basis_vector(i), x) for i in range(A.n)] + self.basis()
        return FracIdeal.from_module_rows(A, rows) == FracIdeal.unit(A)


def integral_ideal(order, H):
    """Integral ideal from integer basis rows."""
    return FracIdeal.from_basis(order, H)


def ideal_mul(I: FracIdeal, J: FracIdeal) -> FracIdeal:
    return I * J


def ideal_inverse(I: FracIdeal) -> FracIdeal:
    return I.inverse()


def ideal_conj(I: FracIdeal) -> FracIdeal:
    return I.conj()


def ideal_equal(I: FracIdeal, J: FracIdeal) -> bool:
    return I == J

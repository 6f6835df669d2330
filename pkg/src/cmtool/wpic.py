"""Principal pairs and equality in the Witt-Picard group.

A pair ``(I, w)`` has ``I`` an invertible fractional ideal and ``w`` a
totally positive element fixed by the involution with ``I conj(I) = A w``.
Two pairs are equal in the group when ``I1 = v I2`` and ``w1 = v conj(v) w2``
for some ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .descent import iso_between, main_standard_iso
from .errors import InputError, InternalError
from .exact import frac
from .ideals import FracIdeal
from .alattice import lattice_from_Iw
from .lattice import DEFAULT_BUDGET


class InvalidPairError(InputError):
    """A pair violates one of its invariants; ``violation`` names it."""

    def __init__(self, violation: str):
        super().__init__(violation)
        self.violation = violation


@dataclass(frozen=True)
class WPicPair:
    ideal: FracIdeal
    w: tuple

    def key(self):
        return (self.ideal.key(), self.w)


@dataclass
class QueryResult:
    answer: str                      # "yes" or "no"
    certificate: object = None
    verification: list = field(default_factory=list)

    def __bool__(self):
        return self.answer == "yes"


def validate_pair(A, I: FracIdeal, w) -> WPicPair:
    """Check the pair invariants in a fixed order and return the pair.

    The order is: ``w`` fixed by the involution, ``w`` totally positive,
    ``I`` invertible, ``I conj(I) = A w``.
    """
    w = [frac(c) for c in w]
    if len(w) != A.n:
        raise InputError("w has the wrong length")
    if A.conj(w) != w:
        raise InvalidPairError("not conj-fixed")
    if not A.is_totally_positive(w):
        raise InvalidPairError("not totally positive")
    if not I.is_invertible():
        raise InvalidPairError("not invertible")
    if I * I.conj() != FracIdeal.principal(A, w):
        raise InvalidPairError("product mismatch")
    return WPicPair(I, tuple(w))


def identity(A) -> WPicPair:
    return validate_pair(A, FracIdeal.unit(A), A.one)


def product(A, p: WPicPair, q: WPicPair) -> WPicPair:
    return validate_pair(A, p.ideal * q.ideal, A.mult(list(p.w), list(q.w)))


def inverse(A, p: WPicPair) -> WPicPair:
    """The inverse class ``(conj(I), w)``."""
    return validate_pair(A, p.ideal.conj(), list(p.w))


def verify_principal(A, p: WPicPair, v) -> list:
    """Transcript lines; raises InternalError unless ``A v = I`` and ``v conj(v) = w``."""
    v = [frac(c) for c in v]
    lines = []
    ok_ideal = FracIdeal.principal(A, v) == p.ideal if A.inverse(v) is not None else False
    lines.append(f"A v = I: {ok_ideal}")
    ok_norm = A.mult(v, A.conj(v)) == list(p.w)
    lines.append(f"v conj(v) = w: {ok_norm}")
    if not (ok_ideal and ok_norm):
        raise InternalError("witness does not verify")
    return lines


def principal_test(A, p: WPicPair, budget: int = DEFAULT_BUDGET,
                   verify: bool = True) -> QueryResult:
    """Whether ``(I, w) = (A v, v conj(v))`` for some ``v``; the witness ``v``."""
    L = lattice_from_Iw(A, p.ideal, list(p.w))
    cert = main_standard_iso(A, L, budget)
    if cert is None:
        return QueryResult("no")
    v = L.ideal_form.to_element(cert.short_vector)
    lines = verify_principal(A, p, v) if verify else []
    return QueryResult("yes", v, lines)


def verify_equal(A, p: WPicPair, q: WPicPair, v) -> list:
    v = [frac(c) for c in v]
    lines = []
    ok_ideal = q.ideal.scale(v) == p.ideal if A.inverse(v) is not None else False
    lines.append(f"I1 = v I2: {ok_ideal}")
    ok_norm = A.mult(A.mult(v, A.conj(v)), list(q.w)) == list(p.w)
    lines.append(f"w1 = v conj(v) w2: {ok_norm}")
    if not (ok_ideal and ok_norm):
        raise InternalError("witness does not verify")
    return lines


def wpic_equal(A, p: WPicPair, q: WPicPair, budget: int = DEFAULT_BUDGET,
               verify: bool = True) -> QueryResult:
    """Whether the two pairs have the same class; the witness ``v``."""
    L = lattice_from_Iw(A, p.ideal, list(p.w))
    M = lattice_from_Iw(A, q.ideal, list(q.w))
    cert = iso_between(A, L, M, budget)
    if cert is None:
        return QueryResult("no")
    v = cert.element
    lines = verify_equal(A, p, q, v) if verify else []
    return QueryResult("yes", v, lines)

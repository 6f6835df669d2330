"""JSON encoding of orders, lattices, ideals, elements and pairs.

Integers beyond ``2^53 - 1`` in absolute value are written as decimal
strings; on input both forms are accepted everywhere.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from .alattice import ALattice
from .errors import InputError
from .ideals import FracIdeal
from .orders import CMOrder, Order, cm_order_test

SAFE_INT = 2 ** 53 - 1


def _int(x, what="value") -> int:
    if isinstance(x, bool):
        raise InputError(f"{what}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"{what}: expected an integer, got {x!r}")


def _int_array(x, depth, what):
    if depth == 0:
        return _int(x, what)
    if not isinstance(x, list):
        raise InputError(f"{what}: expected a nested list")
    return [_int_array(y, depth - 1, what) for y in x]


def enc_int(x: int):
    x = int(x)
    return str(x) if abs(x) > SAFE_INT else x


def enc_array(x):
    if isinstance(x, list):
        return [enc_array(y) for y in x]
    return enc_int(x)


def _require(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{what}: missing field {key!r}")
    return obj[key]


# -- orders ------------------------------------------------------------------

def decode_order_raw(obj):
    """``(mul, involution or None)`` with shapes checked."""
    mul = _int_array(_require(obj, "mul", "order"), 3, "order.mul")
    n = len(mul)
    if "rank" in obj and _int(obj["rank"], "order.rank") != n:
        raise InputError("order: rank does not match the multiplication tensor")
    if n == 0 or any(len(m) != n or any(len(r) != n for r in m) for m in mul):
        raise InputError("order: multiplication tensor must be n x n x n")
    inv = obj.get("involution")
    if inv is not None:
        inv = _int_array(inv, 2, "order.involution")
        if len(inv) != n or any(len(r) != n for r in inv):
            raise InputError("order: involution must be n x n")
    return mul, inv


def decode_order(obj) -> CMOrder:
    """A CM-order on the basis of the file.

    Without an explicit involution the CM test supplies one; an order that
    is not CM is an InputError.
    """
    mul, inv = decode_order_raw(obj)
    if inv is None:
        res = cm_order_test(Order(mul))
        if res.order is None:
            raise InputError(f"order is not a CM-order: {res.failed_step}")
        inv = res.order.involution_in_input()
    return CMOrder(mul, inv, validate=True)


def encode_order(A) -> dict:
    out = {"rank": A.n, "mul": enc_array(A.mul)}
    if A.involution is not None:
        out["involution"] = enc_array(A.involution)
    return out


# -- lattices -----------------------------------------------------------------

def decode_lattice(obj, A) -> ALattice:
    gram = _int_array(_require(obj, "gram", "lattice"), 2, "lattice.gram")
    action = _int_array(_require(obj, "action", "lattice"), 3, "lattice.action")
    m = len(gram)
    if any(len(r) != m for r in gram):
        raise InputError("lattice: Gram matrix must be square")
    return ALattice(A, gram, action, validate=True)


def encode_lattice(L: ALattice) -> dict:
    return {"gram": enc_array(L.gram), "action": enc_array(L.action)}


# -- ideals and elements ------------------------------------------------------

def decode_ideal(obj, A) -> FracIdeal:
    den = _int(_require(obj, "den", "ideal"), "ideal.den")
    if den <= 0:
        raise InputError("ideal: den must be positive")
    rows = _int_array(_require(obj, "basis", "ideal"), 2, "ideal.basis")
    if any(len(r) != A.n for r in rows):
        raise InputError("ideal: basis rows have the wrong length")
    return FracIdeal.from_basis(A, [[Fraction(x, den) for x in r] for r in rows])


def encode_ideal(I: FracIdeal) -> dict:
    return {"den": enc_int(I.den), "basis": enc_array(I.hnf)}


def decode_element(obj, n: int):
    num = _int_array(_require(obj, "num", "element"), 1, "element.num")
    den = _int(obj.get("den", 1), "element.den")
    if den <= 0:
        raise InputError("element: den must be positive")
    if len(num) != n:
        raise InputError("element: wrong number of coordinates")
    return [Fraction(x, den) for x in num]


def encode_element(x) -> dict:
    x = [Fraction(c) for c in x]
    d = 1
    for c in x:
        d = lcm(d, c.denominator)
    return {"num": [enc_int(c * d) for c in x], "den": enc_int(d)}


def decode_pair(obj, A):
    """Ideal and ``w`` of a pair file; validation is left to the caller."""
    I = decode_ideal(_require(obj, "ideal", "pair"), A)
    w = decode_element(_require(obj, "w", "pair"), A.n)
    return I, w


def encode_pair(p) -> dict:
    return {"ideal": encode_ideal(p.ideal), "w": encode_element(list(p.w))}


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def dump_json(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")

"""Auxiliary ideals whose unit groups have smooth, small exponent.

For a connected CM-order this module constructs a finite set of ideals,
each far enough from the origin that a coset of ``a L`` holds at most one
short vector, together with integers ``k(a)`` killing ``(A/a)^*`` and a
Bezout combination of those integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, log

import mpmath

from .errors import InternalError
from .exact import factor_integer, hnf_with_transform, lcm
from .finite_rings import MaxIdeal, primes_above
from .ideals import FracIdeal
from .alattice import meets_gap
from .orders import decompose_rational_algebra


# ---------------------------------------------------------------------------
# the two bound functions

def bound_c(n: int) -> int:
    return 2 if n == 1 else n * n


def bound_b(n: int) -> float:
    """Real value of the small-prime bound (4 (ln n)^2 from n = 3 on)."""
    if n == 1:
        return 2.0
    if n == 2:
        return 3.0
    return 4 * log(n) ** 2


def beta(n: int) -> int:
    """Certified ceiling of ``bound_b(n)``; an integer within 1 of it."""
    if n <= 2:
        return int(bound_b(n))
    with mpmath.workdps(50):
        v = 4 * mpmath.log(n) ** 2
        c = int(mpmath.ceil(v))
        if not (c - 1 < v <= c):
            raise InternalError("could not certify the ceiling of the prime bound")
    return c


def primes_up_to(x: int):
    if x < 2:
        return []
    sieve = bytearray([1]) * (x + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(x ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, v in enumerate(sieve) if v]


def psi(x: int, y: int, stop_above: int | None = None) -> int:
    """Number of ``y``-smooth integers in ``(0, x]`` (1 counts).

    With ``stop_above`` the count stops as soon as it exceeds that value.
    """
    ps = primes_up_to(int(y))
    count = 0

    def rec(i, m):
        nonlocal count
        count += 1
        if stop_above is not None and count > stop_above:
            return True
        for j in range(i, len(ps)):
            q = m * ps[j]
            if q > x:
                break
            if rec(j, q):
                return True
        return False

    if x >= 1:
        rec(0, 1)
    return count


def coprime_base(values):
    """Pairwise coprime integers > 1 whose products give every input."""
    base = sorted({v for v in values if v > 1})
    changed = True
    while changed:
        changed = False
        for i in range(len(base)):
            for j in range(i + 1, len(base)):
                a, b = base[i], base[j]
                g = gcd(a, b)
                if g > 1:
                    new = set(base[:i] + base[i + 1:j] + base[j + 1:])
                    for v in (g, a // g, b // g):
                        if v > 1:
                            new.add(v)
                    base = sorted(new)
                    changed = True
                    break
            if changed:
                break
    return base


def exponent_in(value: int, t: int) -> int:
    e = 0
    while value % t == 0:
        value //= t
        e += 1
    return e


# ---------------------------------------------------------------------------
# usable sets

def minimal_primes(A):
    """Minimal primes of a reduced order, one per field factor, as Z-bases."""
    out = []
    for comp in decompose_rational_algebra(A):
        M = A.mult_matrix(comp.idempotent)
        d = 1
        for row in M:
            for x in row:
                d = lcm(d, x.denominator if hasattr(x, "denominator") else 1)
        Mz = [[int(x * d) for x in row] for row in M]
        _, _, K = hnf_with_transform(Mz)
        out.append((comp, K))
    return out


def _contains_rows(P: MaxIdeal, rows):
    return all(P.ideal.contains(r) for r in rows)


@dataclass
class UsableSets:
    sets: list
    s0: list
    beta: int
    maximal: list


def usable_sets(A) -> UsableSets:
    """A usable family of sets of maximal ideals; the first one is ``S_0``."""
    n = A.n
    minp = minimal_primes(A)
    bt = max(beta(comp.degree) for comp, _ in minp)
    maxes = []
    for p in primes_up_to(bt):
        maxes.extend(primes_above(A, p))
    covers = {id(P): [k for k, (_, K) in enumerate(minp) if _contains_rows(P, K)]
              for P in maxes}
    s0 = [P for P in maxes if P.p == 2]
    cn = bound_c(n)
    small = primes_up_to(cn)
    base = coprime_base(small + [P.norm - 1 for P in maxes])
    t_prime = [t for t in base if t not in small]
    if any(gcd(t, l) != 1 for t in t_prime for l in small):
        raise InternalError("coprime base mixes small primes into other elements")
    t_dprime = [t for t in t_prime if max(exponent_in(P.norm - 1, t) for P in s0) > 0]
    sets = [s0]
    for t in t_dprime:
        chosen = []
        for k in range(len(minp)):
            P = next((P for P in maxes
                      if exponent_in(P.norm - 1, t) == 0 and k in covers[id(P)]), None)
            if P is None:
                raise InternalError("no maximal ideal avoids t over some minimal prime")
            if P not in chosen:
                chosen.append(P)
        sets.append(chosen)
    return UsableSets(sets, s0, bt, maxes)


# ---------------------------------------------------------------------------
# good ideals

@dataclass
class GoodIdeal:
    ideal: FracIdeal
    factors: list         # [(MaxIdeal, exponent)]
    k: int
    is_two_power: bool    # the ideal 2^(n+1) A


def k_of_ideal(A, factors, two_power: bool = False) -> int:
    """Integer killing the unit group of ``A / prod P^t``.

    ``two_power`` selects the sharper value used for ``2^(n+1) A``; then
    ``factors`` must list the maximal ideals above 2.
    """
    if two_power:
        n = A.n
        num = 1
        den = 1
        for P, _ in factors:
            num = lcm(num, P.norm - 1)
            den *= P.norm
        val = 2 ** (2 * n) * num
        if val % den:
            raise InternalError("k(2^(n+1) A) is not an integer")
        return val // den
    k = 1
    for P, t in factors:
        if t > 0:
            k = lcm(k, (P.norm - 1) * P.p ** (t - 1))
    return k


@dataclass
class GoodIdealData:
    ideals: list          # GoodIdeal, the two-power ideal first
    k: int
    f: list               # Bezout coefficients aligned with ``ideals``
    usable: UsableSets


def _bezout(values):
    g, coeffs = 0, []
    for v in values:
        if g == 0:
            g, coeffs = v, [1]
            continue
        # extended Euclid on (g, v)
        r0, r1, s0, s1, t0, t1 = g, v, 1, 0, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        coeffs = [c * s0 for c in coeffs] + [t0]
        g = r0
    return g, coeffs


def good_ideal_set(A) -> GoodIdealData:
    """Good ideals, their ``k`` values, ``k = gcd`` and Bezout coefficients.

    Asserts the four guarantees: separation of ``a L``, the Bezout identity,
    smoothness of ``k`` and ``k <= 4^n``.
    """
    n = A.n
    us = usable_sets(A)
    ideals = []
    two = FracIdeal.scalar(A, 2 ** (n + 1))
    s0 = [(P, 0) for P in us.s0]
    ideals.append(GoodIdeal(two, s0, k_of_ideal(A, s0, two_power=True), True))
    t = n * (n + 1)
    for S in us.sets[1:]:
        I = FracIdeal.unit(A)
        for P in S:
            I = I * (P.ideal ** t)
        fac = [(P, t) for P in S]
        ideals.append(GoodIdeal(I, fac, k_of_ideal(A, fac), False))
    ks = [g.k for g in ideals]
    k, f = _bezout(ks)
    # (a): 2^(2n+2) bounds the two-power ideal; vigilant sets with exponent
    # n(n+1) give at least the same bound
    if not meets_gap(2 ** (2 * n + 2), n):
        raise InternalError("2^(n+1) A is not separated enough")
    for g in ideals[1:]:
        if any(tt < n * (n + 1) for _, tt in g.factors):
            raise InternalError("exponent of a good ideal is too small")
    if sum(a * b for a, b in zip(f, ks)) != k:
        raise InternalError("Bezout identity fails")
    cn = bound_c(n)
    if any(l > cn for l in factor_integer(k)):
        raise InternalError("k has a prime factor above c(n)")
    if k > 2 ** (2 * n):
        raise InternalError("k exceeds 4^n")
    return GoodIdealData(ideals, k, f, us)


def is_vigilant(A, S) -> bool:
    """Every minimal prime lies in some member of ``S``."""
    minp = minimal_primes(A)
    return all(any(_contains_rows(P, K) for P in S) for _, K in minp)

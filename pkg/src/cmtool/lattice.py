"""Exact lattice reduction and search on integral Gram matrices.

A lattice is described only by its Gram matrix ``G`` on some basis; vectors
are integer coordinate rows on that basis.

Reduction is the integral LLL algorithm with Lovasz constant 3/4. Its
output therefore satisfies ``|mu_ij| <= 1/2`` and
``|b_i*|^2 <= 2 |b_{i+1}*|^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError, ResourceError
from .exact import floor_frac, frac, mat_mul, round_half_up, transpose, vec_mat

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class GramLattice:
    gram: tuple

    @classmethod
    def of(cls, G):
        return cls(tuple(tuple(int(x) for x in row) for row in G))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def rows(self):
        return [list(r) for r in self.gram]


def check_gram(G):
    n = len(G)
    for i in range(n):
        if len(G[i]) != n:
            raise InputError("Gram matrix is not square")
        for j in range(n):
            if G[i][j] != G[j][i]:
                raise InputError("Gram matrix is not symmetric")
            if frac(G[i][j]).denominator != 1:
                raise InputError("Gram matrix is not integral")


def norm(G, x):
    return sum(x[i] * sum(G[i][j] * x[j] for j in range(len(x)) if x[j])
               for i in range(len(x)) if x[i])


def inner(G, x, y):
    return sum(x[i] * sum(G[i][j] * y[j] for j in range(len(y)) if y[j])
               for i in range(len(x)) if x[i])


def transform_gram(T, G):
    """Gram matrix of the basis whose rows (in old coordinates) are ``T``."""
    return mat_mul(mat_mul(T, G), transpose(T))


def gram_schmidt(G):
    """Exact Gram-Schmidt data ``(mu, norms)`` of a positive definite Gram.

    ``mu[i][j]`` for ``j < i`` are the projection coefficients and
    ``norms[i] = |b_i*|^2``.
    """
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = []
    for i in range(n):
        for j in range(i):
            s = frac(G[i][j]) - sum(mu[j][k] * mu[i][k] * norms[k] for k in range(j))
            mu[i][j] = s / norms[j]
        mu[i][i] = Fraction(1)
        b = frac(G[i][i]) - sum(mu[i][k] ** 2 * norms[k] for k in range(i))
        if b <= 0:
            raise InputError("Gram matrix is not positive definite")
        norms.append(b)
    return mu, norms


def is_positive_definite(G) -> bool:
    try:
        gram_schmidt(G)
    except InputError:
        return False
    return True


def is_lll_reduced(G) -> bool:
    mu, norms = gram_schmidt(G)
    n = len(G)
    if any(abs(mu[i][j]) > Fraction(1, 2) for i in range(n) for j in range(i)):
        return False
    return all(norms[i] <= 2 * norms[i + 1] for i in range(n - 1))


def lll_reduce(G):
    """LLL-reduce a positive definite integral Gram matrix.

    Returns ``(G_red, T)`` where the rows of the unimodular ``T`` are the
    reduced basis in input coordinates. The output is exactly what the
    integral LLL recurrence produces, so it is deterministic in the input.
    """
    check_gram(G)
    n = len(G)
    G = [[int(x) for x in row] for row in G]
    H = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return G, H
    lam = [[0] * n for _ in range(n)]
    d = [1] + [0] * n          # d[i + 1] is the i-th leading Gram minor
    d[1] = G[0][0]
    if d[1] <= 0:
        raise InputError("Gram matrix is not positive definite")

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = round_half_up(Fraction(lam[k][l], d[l + 1]))
            H[k] = [a - q * b for a, b in zip(H[k], H[l])]
            G[k] = [a - q * b for a, b in zip(G[k], G[l])]
            for row in G:
                row[k] -= q * row[l]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        H[k], H[k - 1] = H[k - 1], H[k]
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = G[k][j]
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise InputError("Gram matrix is not positive definite")
                    d[k + 1] = u
        red(k, k - 1)
        if 4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return G, H


def lll_bound_violations(G, disc_abs: int):
    """Check the size bounds an LLL-reduced Gram of an invertible lattice obeys.

    ``disc_abs`` is ``|Delta|`` of the order. Returns a list of violated
    inequalities (empty when all hold).
    """
    n = len(G)
    _, norms = gram_schmidt(G)
    out = []
    for i in range(n):
        lo = Fraction(1, 2 ** i)
        hi = 2 ** (n - 1 - i) * disc_abs
        if not lo <= norms[i] <= hi:
            out.append(f"|b_{i+1}*|^2 = {norms[i]} outside [{lo}, {hi}]")
    cap = 2 ** (n - 1) * disc_abs
    for i in range(n):
        if G[i][i] > cap:
            out.append(f"|b_{i+1}|^2 = {G[i][i]} > {cap}")
        for j in range(n):
            if abs(G[i][j]) > cap:
                out.append(f"|<b_{i+1}, b_{j+1}>| = {abs(G[i][j])} > {cap}")
    return out


def nearest_plane(G, target):
    """Babai nearest-plane rounding on a reduced basis.

    ``target`` holds rational coordinates on the basis of ``G``. Returns the
    integer coordinates of the chosen lattice point.
    """
    mu, _ = gram_schmidt(G)
    n = len(G)
    r = [frac(t) for t in target]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        c = sum(r[j] * mu[j][i] for j in range(i, n))
        q = round_half_up(c)
        x[i] = q
        r[i] -= q
    return x


def _integer_window(center: Fraction, radius_sq: Fraction):
    """All integers ``c`` with ``(c - center)^2 <= radius_sq``."""
    if radius_sq < 0:
        return range(0)
    s = isqrt(floor_frac(radius_sq)) + 1
    lo = floor_frac(center) - s
    hi = floor_frac(center) + s + 1
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def _orthogonal_blocks(G):
    n = len(G)
    seen = [False] * n
    blocks = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and G[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(comp))
    return blocks


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.left = budget

    def tick(self, k=1):
        self.left -= k
        if self.left < 0:
            raise ResourceError(f"enumeration budget of {self.budget} search nodes exhausted")


def _fincke_pohst(G, bound, counter):
    """All ``(x, norm)`` with ``x G x^T <= bound``, zero vector included."""
    n = len(G)
    Gr, T = lll_reduce(G)
    mu, B = gram_schmidt(Gr)
    out = []
    x = [0] * n

    def rec(i, remaining):
        counter.tick()
        if i < 0:
            out.append((vec_mat(x, T), bound - remaining))
            return
        c = -sum(mu[j][i] * x[j] for j in range(i + 1, n))
        for v in _integer_window(c, remaining / B[i]):
            x[i] = v
            rec(i - 1, remaining - B[i] * (v - c) ** 2)
        x[i] = 0

    rec(n - 1, frac(bound))
    return [(v, int(nm)) for v, nm in out]


def enumerate_norm_at_most(G, bound, budget: int = DEFAULT_BUDGET):
    """All nonzero ``x`` with ``x G x^T <= bound``.

    Orthogonal summands of ``G`` are enumerated separately and recombined,
    which keeps block-diagonal searches cheap. Raises ResourceError when
    more than ``budget`` search nodes are visited.
    """
    check_gram(G)
    n = len(G)
    counter = _Counter(budget)
    per_block = []
    blocks = _orthogonal_blocks(G)
    for idx in blocks:
        sub = [[G[i][j] for j in idx] for i in idx]
        per_block.append((idx, _fincke_pohst(sub, bound, counter)))
    per_block = [(idx, sorted(vs, key=lambda t: t[1])) for idx, vs in per_block]
    results = []
    x = [0] * n

    def combine(b, used):
        if b == len(per_block):
            if any(x):
                counter.tick()
                results.append(list(x))
            return
        idx, vs = per_block[b]
        for v, nm in vs:
            if used + nm > bound:
                break
            for i, c in zip(idx, v):
                x[i] = c
            combine(b + 1, used + nm)
        for i in idx:
            x[i] = 0

    combine(0, 0)
    results.sort(key=lambda v: (norm(G, v), [-abs(c) for c in v], [-c for c in v]))
    return results


def shortest_norm(G, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum of ``x G x^T`` over nonzero ``x``."""
    Gr, _ = lll_reduce(G)
    bound = min(Gr[i][i] for i in range(len(Gr)))
    return min(norm(G, v) for v in enumerate_norm_at_most(G, bound, budget))

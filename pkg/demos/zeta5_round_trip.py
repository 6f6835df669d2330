"""Hide a generator of a principal ideal of Z[zeta_5] and recover it.

For random ``v`` the pair ``(A v, v conj(v))`` is handed to the principal
test; the recovered witness agrees with ``v`` up to a root of unity.
"""
import random
import sys
import time

from cmtool import catalog
from cmtool.descent import roots_of_unity
from cmtool.ideals import FracIdeal
from cmtool.wpic import principal_test, validate_pair


def main(count: int = 10, seed: int = 0):
    A = catalog.cyclotomic(5)
    mu = {tuple(z) for z in roots_of_unity(A)}
    rng = random.Random(seed)
    done = 0
    while done < count:
        v = [rng.randint(-5, 5) for _ in range(4)]
        if A.inverse(v) is None:
            continue
        done += 1
        w = A.mult(v, A.conj(v))
        t0 = time.perf_counter()
        res = principal_test(A, validate_pair(A, FracIdeal.principal(A, v), w))
        ratio = A.mult(res.certificate, A.inverse(v))
        print(f"v = {v!s:<18} witness = {[int(c) for c in res.certificate]!s:<18} "
              f"unit ratio: {tuple(ratio) in mu}  ({time.perf_counter() - t0:.2f} s)")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 10)

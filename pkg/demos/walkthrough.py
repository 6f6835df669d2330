"""A guided tour: recognise CM-orders, build ideal lattices, test principality.

Run with ``python demos/walkthrough.py``.
"""
from cmtool import catalog
from cmtool.alattice import invertible_test, lattice_from_Iw, standard_lattice
from cmtool.auxideals import good_ideal_set
from cmtool.descent import main_standard_iso, roots_of_unity
from cmtool.ideals import FracIdeal
from cmtool.orders import Order, cm_order_test
from cmtool.wpic import identity, principal_test, product, validate_pair, wpic_equal


def element(x):
    return "(" + ", ".join(str(c) for c in x) + ")"


def show(title, value):
    print(f"{title:<48} {value}")


def recognition():
    print("-- CM recognition from bare multiplication tables")
    for name, mul in [("Z[i]", catalog.power_basis_tensor([1, 0, 1])),
                      ("Z[zeta_5]", catalog.power_basis_tensor([1, 1, 1, 1, 1])),
                      ("Z[x]/(x^2)", catalog.dual_numbers_tensor()),
                      ("Z[pi], pi a Weil number", catalog.weil_tensor()),
                      ("Z[2^(1/3)]", catalog.cube_root2_tensor())]:
        res = cm_order_test(Order(mul))
        verdict = (f"yes, involution {res.order.involution_in_input()}" if res.order
                   else f"no ({res.failed_step})")
        show(name, verdict)


def lattices():
    print("\n-- lattices from ideals")
    A = catalog.sqrt_minus5()
    I = FracIdeal.from_generators(A, [[2, 0], [1, 1]])
    L = lattice_from_Iw(A, I, [2, 0])
    show("Z[sqrt -5], ideal <2, 1 + sqrt -5>, HNF", I.hnf)
    show("reduced Gram of L_(I, 2)", L.gram)
    show("invertible", invertible_test(L) is not None)
    show("isomorphic to the standard lattice", main_standard_iso(A, L) is not None)
    L2 = lattice_from_Iw(A, I * I, [4, 0])
    cert = main_standard_iso(A, L2)
    show("L_(I^2, 4): short vector (lattice coordinates)", cert.short_vector)


def auxiliary():
    print("\n-- auxiliary ideals and exponents")
    for name, A in [("Z[i]", catalog.gaussian_integers()), ("Z[zeta_5]", catalog.cyclotomic(5)),
                    ("Z[zeta_11 + zeta_11^-1]", catalog.real_cyclotomic11())]:
        data = good_ideal_set(A)
        show(f"{name}: k per good ideal, gcd k", ([g.k for g in data.ideals], data.k))


def picard():
    print("\n-- principal pairs and the Witt-Picard group")
    Z = catalog.gaussian_integers()
    p = validate_pair(Z, FracIdeal.from_generators(Z, [[2, 0], [1, 1]]), [2, 0])
    show("Z[i]: (<2, 1 + i>, 2) principal, witness", element(principal_test(Z, p).certificate))
    a = validate_pair(Z, FracIdeal.principal(Z, [2, 1]), [5, 0])
    b = validate_pair(Z, FracIdeal.principal(Z, [2, -1]), [5, 0])
    show("Z[i]: (<2+i>, 5) ~ (<2-i>, 5), multiplier", element(wpic_equal(Z, a, b).certificate))
    A = catalog.sqrt_minus5()
    q = validate_pair(A, FracIdeal.from_generators(A, [[2, 0], [1, 1]]), [2, 0])
    show("Z[sqrt -5]: (I, 2) principal", principal_test(A, q).answer)
    show("Z[sqrt -5]: (I, 2)^2 equals the identity", wpic_equal(A, product(A, q, q), identity(A)).answer)
    show("roots of unity of Z[zeta_5]", len(roots_of_unity(catalog.cyclotomic(5))))
    show("standard lattice of Z[zeta_5] is standard",
         main_standard_iso(catalog.cyclotomic(5), standard_lattice(catalog.cyclotomic(5))) is not None)


if __name__ == "__main__":
    recognition()
    lattices()
    auxiliary()
    picard()

"""Regenerate the JSON fixtures in data/ from the order catalog."""
from pathlib import Path

from cmtool import catalog
from cmtool.alattice import lattice_from_Iw, standard_lattice
from cmtool.ideals import FracIdeal
from cmtool.io import dump_json, encode_element, encode_ideal, encode_lattice, enc_array

OUT = Path(__file__).resolve().parent.parent / "data"


def order_file(name, mul, involution=None):
    obj = {"rank": len(mul), "mul": enc_array(mul)}
    if involution is not None:
        obj["involution"] = enc_array(involution)
    dump_json(OUT / f"{name}.json", obj)


def pair_file(name, ideal, w):
    dump_json(OUT / f"{name}.json", {"ideal": encode_ideal(ideal), "w": encode_element(w)})


def main():
    OUT.mkdir(exist_ok=True)
    zi = catalog.gaussian_integers()
    z5 = catalog.sqrt_minus5()
    order_file("zi", zi.mul)
    order_file("zsqrtm5", z5.mul, z5.involution)
    order_file("zeta5", catalog.cyclotomic(5).mul)
    order_file("zxz", catalog.z_times_z().mul)
    order_file("dual_numbers", catalog.dual_numbers_tensor())
    order_file("weil", catalog.weil_tensor())

    I_1pi = FracIdeal.from_generators(zi, [[2, 0], [1, 1]])
    I_2pi = FracIdeal.principal(zi, [2, 1])
    I_2mi = FracIdeal.principal(zi, [2, -1])
    I_ns = FracIdeal.from_generators(z5, [[2, 0], [1, 1]])
    lattices = {
        "lattice_zi_standard": standard_lattice(zi),
        "lattice_zi_2pi": lattice_from_Iw(zi, I_2pi, [5, 0]),
        "lattice_zi_2mi": lattice_from_Iw(zi, I_2mi, [5, 0]),
        "lattice_zsqrtm5_standard": standard_lattice(z5),
        "lattice_zsqrtm5_I2": lattice_from_Iw(z5, I_ns, [2, 0]),
    }
    for name, L in lattices.items():
        dump_json(OUT / f"{name}.json", encode_lattice(L))

    pair_file("pair_1pi", I_1pi, [2, 0])
    pair_file("pair_2pi", I_2pi, [5, 0])
    pair_file("pair_2mi", I_2mi, [5, 0])
    pair_file("pair_zi_unit", FracIdeal.unit(zi), [1, 0])
    pair_file("pair_I2", I_ns, [2, 0])
    pair_file("pair_I3", I_ns, [3, 0])
    pair_file("pair_zsqrtm5_unit", FracIdeal.unit(z5), [1, 0])
    pair_file("pair_zsqrtm5_negative_w", FracIdeal.unit(z5), [-1, 0])


if __name__ == "__main__":
    main()

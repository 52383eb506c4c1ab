import itertools
import math

import pytest
from hypothesis import given, strategies as st

from rp2_triangle.errors import DomainError, UnboundedQueryError
from rp2_triangle.lattice import (
    ORTHOGONAL_TO_H,
    LatticeClass,
    Mod2Class,
    blowup_lattice,
    c1_degree,
    enumerate_classes,
    is_primitive,
    pairing,
    pontrjagin_square,
    tilde_lattice,
)

L1 = blowup_lattice(1)
L3 = blowup_lattice(3)
L4 = tilde_lattice()
SIGMA = L4(0, 1, -1, -1, -1)

coeff = st.integers(-50, 50)


def classes(lat):
    return st.tuples(*[coeff] * lat.rank).map(lambda c: LatticeClass(lat, c))


def test_lattice_shape():
    assert L3.rank == 4 and L3.n_exceptional == 3
    assert L4.basis_labels == ("H", "E~0", "E~1", "E~2", "E~3")
    assert L4.c1.coefficients == (3, -1, -1, -1, -1)
    assert L3.form == (1, -1, -1, -1)


def test_pairing_examples():
    assert pairing(L4.H, L4.H) == 1
    assert pairing(SIGMA, SIGMA) == -4
    assert pairing(SIGMA, L4.H) == 0
    assert L4.E(2) @ L4.E(2) == -1


def test_pairing_rejects_mixed_lattices():
    with pytest.raises(DomainError):
        pairing(L3.H, L4.H)
    with pytest.raises(DomainError):
        L3.H + L4.H


def test_non_integer_coefficients_rejected():
    with pytest.raises(DomainError):
        LatticeClass(L3, (1, 0.5, 0, 0))
    with pytest.raises(DomainError):
        LatticeClass(L3, (1, 0))


def test_c1_degree_examples():
    assert c1_degree(SIGMA) == -2
    assert c1_degree(2 * L3.E(3)) == 2
    assert c1_degree(L4.zero()) == 0
    assert c1_degree(L3.H) == 3


def test_is_primitive():
    assert is_primitive(SIGMA)
    assert not is_primitive(2 * L3.E(1))
    assert is_primitive(3 * L3.H - 2 * L3.E(1))
    with pytest.raises(DomainError):
        is_primitive(L3.zero())


def test_pontrjagin_square_examples():
    assert pontrjagin_square(Mod2Class(L3(0, 1, 1, 1))) == 1
    assert pontrjagin_square(Mod2Class(L3.zero())) == 0
    assert pontrjagin_square(Mod2Class(L1.E(1))) == 3


def test_mod2_reduction():
    m = Mod2Class(L3(3, -1, 2, 5))
    assert m.reduction == (1, 1, 0, 1)
    assert m == Mod2Class(L3(1, 1, 0, -1))


@given(classes(L4), classes(L4), classes(L4), st.integers(-9, 9))
def test_pairing_bilinear_symmetric(a, b, c, k):
    assert pairing(a, b) == pairing(b, a)
    assert pairing(a + b, c) == pairing(a, c) + pairing(b, c)
    assert pairing(k * a, b) == k * pairing(a, b)


@given(classes(L3), classes(L3))
def test_pontrjagin_square_lift_independent(x, y):
    assert pontrjagin_square(Mod2Class(x)) == pontrjagin_square(Mod2Class(x + 2 * y))


def brute_force(lat, square, c1_deg, orth, a, primitive):
    bound = math.isqrt(a * a - square) if a * a >= square else -1
    out = []
    for tail in itertools.product(range(-bound, bound + 1), repeat=lat.n_exceptional):
        cls = LatticeClass(lat, (a,) + tail)
        if cls.square() != square or c1_degree(cls) != c1_deg:
            continue
        if any(pairing(cls, v) for v in orth):
            continue
        if primitive and (cls.is_zero() or not is_primitive(cls)):
            continue
        out.append(cls)
    return out


def test_enumerate_known_lists():
    e = [L4.E(i) for i in range(4)]
    got = enumerate_classes(L4, -4, 2, [L4.H, SIGMA], primitive_only=True)
    assert set(got) == {e[0] + e[1] + e[2] - e[3], e[0] + e[1] - e[2] + e[3], e[0] - e[1] + e[2] + e[3]}
    assert len(got) == 3
    got = enumerate_classes(L4, -2, 0, [L4.H, SIGMA], primitive_only=True)
    assert set(got) == {s * (e[i] - e[j]) for i, j in ((1, 2), (1, 3), (2, 3)) for s in (1, -1)}
    got = enumerate_classes(L4, -4, -2, [L4.H], primitive_only=True)
    assert set(got) == {e[i] - sum((e[j] for j in range(4) if j != i), L4.zero()) for i in range(4)}


def test_enumerate_imprimitive_extras():
    every = enumerate_classes(L4, -4, -2, [L4.H])
    prim = enumerate_classes(L4, -4, -2, [L4.H], primitive_only=True)
    assert len(every) == 8 and len(prim) == 4
    assert set(every) - set(prim) == {-2 * L4.E(i) for i in range(4)}


@pytest.mark.parametrize(
    "lat,square,c1_deg,orth,a",
    [
        (L4, -4, 2, ["H", "S"], 0),
        (L4, -2, 0, ["H", "S"], 0),
        (L4, -4, -2, ["H"], 0),
        (L4, 1, 3, [], 1),
        (L4, 1, 3, [], 2),
        (L4, -1, 1, [], 0),
        (L4, 0, 2, [], 1),
        (L3, -1, 1, [], 1),
        (L3, 1, 3, [], 2),
        (L3, -1, 1, [], 2),
        (L3, -2, 0, ["H"], 0),
    ],
)
@pytest.mark.parametrize("primitive", [False, True])
def test_enumerate_matches_box_scan(lat, square, c1_deg, orth, a, primitive):
    orth = [{"H": lat.H, "S": SIGMA}[o] for o in orth]
    got = enumerate_classes(lat, square, c1_deg, orth, a, primitive)
    assert got == sorted(brute_force(lat, square, c1_deg, orth, a, primitive), key=lambda c: c.coefficients)


def test_enumerate_sorted_lexicographically():
    got = enumerate_classes(L4, -2, 0, [L4.H, SIGMA])
    assert [c.coefficients for c in got] == sorted(c.coefficients for c in got)


def test_enumerate_orthogonal_to_h_sentinel():
    assert enumerate_classes(L4, -4, -2, h_degree=ORTHOGONAL_TO_H) == enumerate_classes(L4, -4, -2, [L4.H])


def test_enumerate_unbounded_rejected():
    with pytest.raises(UnboundedQueryError, match="indefinite"):
        enumerate_classes(L4, -4, -2, [SIGMA])


def test_class_str():
    assert str(SIGMA) == "E~0 - E~1 - E~2 - E~3"
    assert str(3 * L3.H - 2 * L3.E(1)) == "3H - 2E1"
    assert str(L3.zero()) == "0"

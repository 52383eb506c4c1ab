import itertools
import random
from fractions import Fraction as Q

import pytest
from sympy import Matrix

from rp2_triangle.blowup import PeriodVector3, fiber_class, fiber_partner, sigma_class
from rp2_triangle.cone import (
    KahlerClass,
    area,
    ball_form_conditions,
    decompose_curve_class,
    decomposition_basis,
    decomposition_determinant,
    positivity_certificate,
    tilde_cone_membership,
)
from rp2_triangle.decision import Certificate, admits_lagrangian_rp2, audin_scan, replay
from rp2_triangle.errors import DomainError
from rp2_triangle.lattice import LatticeClass, Mod2Class, blowup_lattice, pairing, pontrjagin_square, tilde_lattice

L4 = tilde_lattice()
W = KahlerClass.of(1, "1/2", "1/10", "1/10", "1/10")
SIGMA = sigma_class()
F = fiber_class()


def sympy_coordinates(cls):
    """Oracle: solve x . B = C over the rationals for the basis B."""
    basis = Matrix([list(b.coefficients) for b in decomposition_basis()])
    x = basis.T.solve(Matrix(cls.coefficients))
    return [int(v) for v in x]


def test_area_examples():
    assert area(W, SIGMA) == Q(1, 5)
    assert area(W, F) == Q(1, 2)
    assert area(W, L4.H) == 1
    assert area(PeriodVector3.of("3/10", "1/5", "1/10"), blowup_lattice(3).E(2)) == Q(1, 5)
    with pytest.raises(DomainError):
        area(W, blowup_lattice(3).H)


def test_cone_membership_examples():
    assert tilde_cone_membership(W).holds
    report = tilde_cone_membership(KahlerClass.of(1, "3/10", "1/10", "1/10", "1/10"))
    assert not report.holds and report.failed_groups == ["(3~)"]
    assert report.failed[0].margin == 0
    report = tilde_cone_membership(KahlerClass.of(1, "1/2", "-1/10", "1/10", "1/10"))
    assert "(2~)" in report.failed_groups


def test_ball_form_conditions():
    assert ball_form_conditions(PeriodVector3.of("3/10", "3/10", "3/10")).holds
    report = ball_form_conditions(PeriodVector3.of("1/5", "1/5", "1/2"))
    assert report.failed_groups == ["(3) triangle"]
    report = ball_form_conditions(PeriodVector3.of("3/5", "3/5", "1/10"))
    assert "(2) effectivity" in report.failed_groups
    assert any(c.name == "μ₁ + μ₂ < 1" for c in report.failed)


def test_decomposition_basis_unimodular():
    assert abs(decomposition_determinant()) == 1
    assert abs(Matrix([list(b.coefficients) for b in decomposition_basis()]).det()) == 1


@pytest.mark.parametrize(
    "cls,expected",
    [
        (L4.H, (1, 4, (1, 1, 1))),
        (SIGMA, (1, 0, (0, 0, 0))),
        (L4.E(1), (0, 1, (1, 0, 0))),
    ],
)
def test_decompose_examples(cls, expected):
    dec = decompose_curve_class(cls)
    assert (dec.d, dec.m, dec.n_prime) == expected
    d, m, *neg = sympy_coordinates(cls)
    assert (d, m, tuple(-n for n in neg)) == expected


def test_decompose_random_against_oracle():
    rng = random.Random(3)
    for _ in range(100):
        c = LatticeClass(L4, tuple(rng.randint(-20, 20) for _ in range(5)))
        dec = decompose_curve_class(c)
        d, m, *neg = sympy_coordinates(c)
        assert (dec.d, dec.m, dec.n_prime) == (d, m, tuple(-n for n in neg))
        assert dec.m == pairing(c, SIGMA) + 4 * dec.d
        assert dec.reconstruct() == c


def test_positivity_cases():
    v = positivity_certificate(SIGMA, W)
    assert v.case == "a" and v.area == Q(1, 5)
    v = positivity_certificate(fiber_partner(1), W)
    assert v.case == "b" and v.area == Q(2, 5)
    v = positivity_certificate(5 * L4.H - L4.E(0), W)
    assert v.case == "c"
    assert v.area == Q(9, 2) == v.summand_total()
    v = positivity_certificate(L4.H, W)
    assert v.case == "c" and v.area == 1 == v.summand_total()


def test_positivity_refuses_uncovered_classes():
    assert positivity_certificate(L4.E(0), W).case is None  # E~0.Sigma < 0
    assert positivity_certificate(-F, W).case is None
    assert positivity_certificate(2 * L4.H + 3 * L4.E(1), W).case is None
    with pytest.raises(DomainError):
        positivity_certificate(SIGMA, KahlerClass.of(1, "3/10", "1/10", "1/10", "1/10"))


def test_case_c_summands_sum_to_area():
    count = 0
    for coeffs in itertools.product(range(0, 5), range(-4, 3), range(-2, 2), range(-2, 2), range(-2, 2)):
        c = LatticeClass(L4, coeffs)
        v = positivity_certificate(c, W)
        if v.case == "c":
            count += 1
            assert v.summand_total() == area(W, c) > 0
            assert all(s.coefficient >= 0 and s.area >= 0 for s in v.summands)
    assert count > 10


def test_audin_scan():
    assert audin_scan(1) == []
    assert audin_scan(2) == []
    lat3 = blowup_lattice(3)
    assert audin_scan(3) == [Mod2Class(lat3(0, 1, 1, 1))]
    assert pontrjagin_square(audin_scan(3)[0]) == 1
    with pytest.raises(DomainError):
        audin_scan(4)


def test_decide_examples():
    cert = admits_lagrangian_rp2(PeriodVector3.of("3/10", "3/10", "3/10"))
    assert cert.yes and cert.epsilon_sup == Q(3, 20) and cert.witness_epsilon == Q(3, 40)
    assert replay(cert)
    cert = admits_lagrangian_rp2(PeriodVector3.of("1/5", "1/5", "1/2"))
    assert not cert.yes and cert.violation == "μ₁ + μ₂ > μ₃ fails"
    assert replay(cert)
    cert = admits_lagrangian_rp2(PeriodVector3.of("1/5", "3/10", "1/2"))
    assert not cert.yes and replay(cert)


def test_decide_domain_errors():
    with pytest.raises(DomainError, match="effectivity: μ₁ \\+ μ₂ < 1 fails"):
        admits_lagrangian_rp2(PeriodVector3.of("0.6", "0.6", "0.1"))
    with pytest.raises(DomainError, match="μ₂ > 0"):
        admits_lagrangian_rp2(PeriodVector3.of("0.2", "0", "0.1"))


def test_certificate_json_round_trip():
    cert = admits_lagrangian_rp2(PeriodVector3.of("2/7", "1/3", "2/5"))
    data = cert.to_json()
    assert set(data) == {"verdict", "mu", "epsilon_sup", "attained", "witness", "violation", "engine"}
    assert data["attained"] is False
    assert Certificate.from_json(data) == cert
    assert replay(data)


def test_tampered_certificates_fail_replay():
    data = admits_lagrangian_rp2(PeriodVector3.of("3/10", "3/10", "3/10")).to_json()
    forged = dict(data, witness=dict(data["witness"], epsilon="3/20"))
    assert not replay(forged)
    forged = dict(data, witness=dict(data["witness"], mu_tilde=["1/2", "1/10", "1/10", "1/10"]))
    assert not replay(forged)
    no = admits_lagrangian_rp2(PeriodVector3.of("1/5", "1/5", "1/2")).to_json()
    assert not replay(dict(no, violation="μ₁ + μ₃ > μ₂ fails"))
    assert not replay(dict(no, verdict="YES"))

"""Kähler cone of X~4, curve-class decomposition and positivity certificates.

X~4 is CP^2 blown up at a point x~0 and then at three points of the
exceptional curve.  The pencil of lines through x~0 rules it over H with
fibre F = H - E~0; three fibres split as E~i + E~'_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import intmat
from .blowup import Condition, PeriodVector3, PeriodVector4, fiber_class, fiber_partner, sigma_class
from .errors import DomainError
from .lattice import LatticeClass, blowup_lattice, pairing, tilde_lattice
from .rationals import sub

# Kähler classes lam*H - sum mu~_i E~_i carry exactly the data of PeriodVector4.
KahlerClass = PeriodVector4


class GroupedCondition(NamedTuple):
    group: str
    name: str
    holds: bool
    margin: Fraction


@dataclass(frozen=True)
class ConditionReport:
    checks: tuple[GroupedCondition, ...]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    @property
    def failed_groups(self) -> list[str]:
        out = []
        for c in self.checks:
            if not c.holds and c.group not in out:
                out.append(c.group)
        return out

    @property
    def failed(self) -> list[GroupedCondition]:
        return [c for c in self.checks if not c.holds]

    def __bool__(self) -> bool:
        return self.holds


def _grouped(group: str, cond: Condition) -> GroupedCondition:
    return GroupedCondition(group, cond.name, cond.holds, cond.margin)


def area(w: PeriodVector4 | PeriodVector3, cls: LatticeClass) -> Fraction:
    """Pairing of [w] = lam*H - sum mu_i E_i with a class; E_i has area mu_i."""
    if isinstance(w, PeriodVector4):
        lam, mu, lat = w.lam, w.mu_tilde, tilde_lattice()
    elif isinstance(w, PeriodVector3):
        lam, mu, lat = Fraction(1), w.mu, blowup_lattice(3)
    else:
        raise DomainError(f"cannot take the area of {cls} under {w!r}")
    if cls.lattice != lat:
        raise DomainError(f"{cls} is not a class of {lat.name}")
    c_h, *c_e = cls.coefficients
    return lam * c_h + sum(m * c for m, c in zip(mu, c_e))


def tilde_cone_membership(w: KahlerClass) -> ConditionReport:
    """Is [w] in the Kähler cone of X~4?  All comparisons are strict."""
    lam, m = w.lam, w.mu_tilde
    checks = [
        _grouped("(1~)", Condition.positive("λ² − Σμ̃ᵢ² > 0", lam * lam - sum(x * x for x in m)))
    ]
    checks += [_grouped("(2~)", Condition.positive(f"μ̃{sub(i)} > 0", m[i])) for i in range(4)]
    checks += [
        _grouped("(2~)", Condition.positive(f"μ̃₀ + μ̃{sub(i)} < λ", lam - m[0] - m[i]))
        for i in (1, 2, 3)
    ]
    checks.append(_grouped("(3~)", Condition.positive("μ̃₀ − (μ̃₁ + μ̃₂ + μ̃₃) > 0", w.sigma_area())))
    return ConditionReport(tuple(checks))


def ball_form_conditions(p: PeriodVector3) -> ConditionReport:
    """Conditions (1) positive volume, (2) effectivity, (3) triangle, on B3."""
    checks = [_grouped("(1) positive volume", Condition.positive("1 − Σμᵢ² > 0", p.volume()))]
    checks += [_grouped("(2) effectivity", c) for c in p.effectivity()]
    checks += [_grouped("(3) triangle", c) for c in p.triangle()]
    return ConditionReport(tuple(checks))


@dataclass(frozen=True)
class DecompositionCoefficients:
    """[C] = d*Sigma + m*F - sum n'_i E~'_i."""

    d: int
    m: int
    n_prime: tuple[int, int, int]

    def reconstruct(self) -> LatticeClass:
        out = self.d * sigma_class() + self.m * fiber_class()
        for i, n in zip((1, 2, 3), self.n_prime):
            out = out - n * fiber_partner(i)
        return out


def decomposition_basis() -> list[LatticeClass]:
    return [sigma_class(), fiber_class()] + [fiber_partner(i) for i in (1, 2, 3)]


def decomposition_determinant() -> int:
    return intmat.det([list(b.coefficients) for b in decomposition_basis()])


def decompose_curve_class(cls: LatticeClass) -> DecompositionCoefficients:
    """Coordinates in the unimodular basis {Sigma, F, E~'_1, E~'_2, E~'_3}.

    Sigma.F = 1, F.F = 0, Sigma.E~'_i = F.E~'_i = 0 and E~'_i.E~'_j = -delta_ij,
    which gives d = C.F, n'_i = C.E~'_i and m = C.Sigma + 4d.
    """
    if cls.lattice != tilde_lattice():
        raise DomainError(f"{cls} is not a class of Z<H, E~0..E~3>")
    d = pairing(cls, fiber_class())
    n_prime = tuple(pairing(cls, fiber_partner(i)) for i in (1, 2, 3))
    m = pairing(cls, sigma_class()) + 4 * d
    out = DecompositionCoefficients(d, m, n_prime)
    if out.reconstruct() != cls:
        raise ArithmeticError(f"decomposition of {cls} does not reconstruct")
    return out


class Summand(NamedTuple):
    coefficient: int
    label: str
    base: LatticeClass
    area: Fraction


@dataclass(frozen=True)
class PositivityVerdict:
    case: str | None
    cls: LatticeClass
    area: Fraction
    summands: tuple[Summand, ...] = ()
    reason: str = ""

    @property
    def covered(self) -> bool:
        return self.case is not None

    def summand_total(self) -> Fraction:
        return sum((s.area for s in self.summands), Fraction(0))


def fiber_components() -> dict[str, LatticeClass]:
    lat4 = tilde_lattice()
    out = {"F": fiber_class()}
    for i in (1, 2, 3):
        out[f"E~{i}"] = lat4.E(i)
        out[f"E~'{i}"] = fiber_partner(i)
    return out


def positivity_certificate(cls: LatticeClass, w: KahlerClass) -> PositivityVerdict:
    """Explain why [w] is positive on an irreducible curve of class ``cls``.

    Mirrors the three cases of the Nakai-Moishezon argument on X~4:
    (a) the (-4)-curve Sigma, (b) components of fibres of the ruling,
    (c) curves with d = C.F > 0, rewritten as a non-negative combination of
    Sigma, F and E~_i = F - E~'_i.  Classes that cannot be irreducible
    curves by these lattice tests get ``case=None``.
    """
    report = tilde_cone_membership(w)
    if not report.holds:
        raise DomainError(f"class is outside the Kähler cone: {', '.join(report.failed_groups)} fail")
    total = area(w, cls)
    sigma = sigma_class()
    if cls == sigma:
        return PositivityVerdict("a", cls, total, reason="area of Σ is μ̃₀ − Σμ̃ᵢ > 0 by (3~)")

    coeffs = decompose_curve_class(cls)
    d, m, n_prime = coeffs.d, coeffs.m, coeffs.n_prime
    if d == 0:
        for name, comp in fiber_components().items():
            if cls == comp:
                return PositivityVerdict("b", cls, total, reason=f"fibre component {name}; positive by (2~)")
        return PositivityVerdict(None, cls, total, reason="C.F = 0 but C is not a fibre component")
    if d < 0:
        return PositivityVerdict(None, cls, total, reason=f"C.F = {d} < 0")
    if not all(0 <= n <= d for n in n_prime):
        return PositivityVerdict(None, cls, total, reason=f"n' = {n_prime} leaves [0, {d}]")
    if pairing(cls, sigma) < 0:
        return PositivityVerdict(None, cls, total, reason="C.Σ < 0 for C ≠ Σ")

    fiber = fiber_class()
    lat4 = tilde_lattice()
    parts = [(d, "Σ", sigma), (m - 3 * d, "F", fiber)]
    parts += [(d - n, "F", fiber) for n in n_prime]
    parts += [(n, f"F − E~'{i}", lat4.E(i)) for i, n in zip((1, 2, 3), n_prime)]
    summands = tuple(Summand(k, label, base, k * area(w, base)) for k, label, base in parts)
    return PositivityVerdict(
        "c",
        cls,
        total,
        summands,
        reason=f"d = {d}, m = {m}, m − 4d = {m - 4 * d} ≥ 0, n' = {n_prime}",
    )

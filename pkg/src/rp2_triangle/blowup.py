"""Homology and period bookkeeping for the rational blow-up of RP^2 in B3.

Blowing up a Lagrangian RP^2 in B3(mu1, mu2, mu3) with size 4*eps turns
the three exceptional classes E1..E3 into the four classes E~0..E~3 of a
quadruple blow-up, with the (-4)-sphere Sigma = E~0 - E~1 - E~2 - E~3.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DomainError
from .lattice import (
    BlowupLattice,
    LatticeClass,
    blowup_lattice,
    c1_degree,
    enumerate_classes,
    enumerate_h_range,
    pairing,
    tilde_lattice,
)
from .rationals import parse_rational, sub

PAIRS = ((0, 1), (0, 2), (1, 2))


class Condition(NamedTuple):
    """One strict inequality ``lhs > 0`` evaluated exactly."""

    name: str
    holds: bool
    margin: Fraction

    @classmethod
    def positive(cls, name, margin):
        margin = Fraction(margin)
        return cls(name, margin > 0, margin)


def _fractions(values, length):
    values = tuple(parse_rational(v) for v in values)
    if len(values) != length:
        raise DomainError(f"expected {length} periods, got {len(values)}")
    return values


@dataclass(frozen=True)
class PeriodVector3:
    """Blow-up sizes (mu1, mu2, mu3) of B3, ball normalised to volume 1."""

    mu: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "mu", _fractions(self.mu, 3))

    @classmethod
    def of(cls, *mu) -> PeriodVector3:
        return cls(tuple(mu))

    def effectivity(self) -> list[Condition]:
        out = [Condition.positive(f"μ{sub(i + 1)} > 0", m) for i, m in enumerate(self.mu)]
        for i, j in PAIRS:
            out.append(
                Condition.positive(f"μ{sub(i + 1)} + μ{sub(j + 1)} < 1", 1 - self.mu[i] - self.mu[j])
            )
        return out

    def volume(self) -> Fraction:
        return 1 - sum(m * m for m in self.mu)

    def is_valid(self) -> bool:
        return all(c.holds for c in self.effectivity())

    def triangle(self) -> list[Condition]:
        """The three strict triangle inequalities mu_i + mu_j > mu_k."""
        out = []
        for k in (2, 1, 0):
            i, j = (x for x in range(3) if x != k)
            out.append(
                Condition.positive(
                    f"μ{sub(i + 1)} + μ{sub(j + 1)} > μ{sub(k + 1)}",
                    self.mu[i] + self.mu[j] - self.mu[k],
                )
            )
        return out


@dataclass(frozen=True)
class PeriodVector4:
    """Periods (lam; mu~0..mu~3) of a class lam*H - sum mu~_i E~_i on X~4."""

    lam: Fraction
    mu_tilde: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "lam", parse_rational(self.lam))
        object.__setattr__(self, "mu_tilde", _fractions(self.mu_tilde, 4))

    @classmethod
    def of(cls, lam, *mu_tilde) -> PeriodVector4:
        return cls(lam, tuple(mu_tilde))

    def sigma_area(self) -> Fraction:
        m = self.mu_tilde
        return m[0] - m[1] - m[2] - m[3]

    def conditions(self) -> list[Condition]:
        """Strict inequalities for a valid rational blow-up, in a fixed order."""
        lam, m = self.lam, self.mu_tilde
        out = [Condition.positive(f"μ̃{sub(i)} > 0", m[i]) for i in range(4)]
        out.append(Condition.positive("λ² − Σμ̃ᵢ² > 0", lam * lam - sum(x * x for x in m)))
        out.append(Condition.positive("μ̃₀ − (μ̃₁ + μ̃₂ + μ̃₃) > 0", self.sigma_area()))
        for i in (1, 2, 3):
            out.append(Condition.positive(f"μ̃₀ + μ̃{sub(i)} < λ", lam - m[0] - m[i]))
        return out

    @property
    def violations(self) -> list[str]:
        return [c.name + " fails" for c in self.conditions() if not c.holds]

    @property
    def valid(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class EpsilonValue:
    """Rational blow-up parameter; the blow-up itself has size 4*eps."""

    eps: Fraction

    def __post_init__(self):
        eps = parse_rational(self.eps)
        if eps <= 0:
            raise DomainError(f"ε must be positive, got {eps}")
        object.__setattr__(self, "eps", eps)

    @property
    def size_of_blowup(self) -> Fraction:
        return 4 * self.eps


def _eps(e) -> Fraction:
    return e.eps if isinstance(e, EpsilonValue) else parse_rational(e)


@dataclass(frozen=True)
class BettiTriple:
    b1: int
    b2_plus: int
    b2_minus: int

    def __post_init__(self):
        if min(self.b1, self.b2_plus, self.b2_minus) < 0:
            raise DomainError("Betti numbers are non-negative")


class EpsilonSupremum(NamedTuple):
    value: Fraction
    attained: bool
    binding: str | None


class BlowdownPeriods(NamedTuple):
    periods: PeriodVector3
    eps: Fraction

    @property
    def flagged(self) -> bool:
        """True when eps <= 0, i.e. no rational blow-up of that size exists."""
        return self.eps <= 0


def sigma_class(lat4: BlowupLattice | None = None) -> LatticeClass:
    lat4 = tilde_lattice() if lat4 is None else lat4
    if lat4 != tilde_lattice():
        raise DomainError(f"Σ lives in the lattice Z<H, E~0..E~3>, not {lat4.name}")
    return lat4(0, 1, -1, -1, -1)


def fiber_class(lat4: BlowupLattice | None = None) -> LatticeClass:
    """F = H - E~0, the fibre of the ruling of X~1 by lines through x~0."""
    lat4 = tilde_lattice() if lat4 is None else lat4
    return lat4.H - lat4.E(0)


def fiber_partner(i: int, lat4: BlowupLattice | None = None) -> LatticeClass:
    """E~'_i = F - E~_i, the other component of the i-th singular fibre."""
    lat4 = tilde_lattice() if lat4 is None else lat4
    return fiber_class(lat4) - lat4.E(i)


@dataclass(frozen=True)
class Correspondence:
    """Images in Z<H, E~0..E~3> of the generators H, 2E1, 2E2, 2E3 of Lambda'_3.

    The map is defined on the rational span and extends to all of Lambda'_3
    (classes with even E-coefficient sum) exactly when half-differences of
    the images of 2E_i are integral.
    """

    images: tuple[LatticeClass, LatticeClass, LatticeClass, LatticeClass]

    @property
    def matrix(self) -> list[list[int]]:
        return [list(c.coefficients) for c in self.images]

    @staticmethod
    def source_generators() -> list[LatticeClass]:
        lat3 = blowup_lattice(3)
        return [lat3.H] + [2 * lat3.E(i) for i in (1, 2, 3)]

    def image(self, cls: LatticeClass) -> LatticeClass:
        if cls.lattice != blowup_lattice(3):
            raise DomainError(f"{cls} is not a class of B3")
        a0, *a = cls.coefficients
        if sum(a) % 2:
            raise DomainError(f"{cls} pairs oddly with E1 + E2 + E3, so it is not in Λ'₃")
        # a0*H + sum a_i E_i  ->  a0*image(H) + sum a_i * image(2E_i) / 2
        half = [0] * len(self.images[0].coefficients)
        for k, img in zip(a, self.images[1:]):
            half = [h + k * c for h, c in zip(half, img.coefficients)]
        if any(h % 2 for h in half):
            raise DomainError(f"image of {cls} is not integral")
        out = [a0 * c + h // 2 for c, h in zip(self.images[0].coefficients, half)]
        return LatticeClass(self.images[0].lattice, tuple(out))

    def half_differences(self) -> list[LatticeClass | None]:
        """(image(2E_i) - image(2E_j)) / 2 for i < j, or None if not integral."""
        out = []
        for i, j in PAIRS:
            diff = self.images[1 + i] - self.images[1 + j]
            if any(c % 2 for c in diff.coefficients):
                out.append(None)
            else:
                out.append(LatticeClass(diff.lattice, tuple(c // 2 for c in diff.coefficients)))
        return out

    def is_isometry(self) -> bool:
        src = self.source_generators()
        return all(
            pairing(src[i], src[j]) == pairing(self.images[i], self.images[j])
            for i in range(4)
            for j in range(4)
        )

    def preserves_c1(self) -> bool:
        return all(c1_degree(s) == c1_degree(t) for s, t in zip(self.source_generators(), self.images))

    def lands_in_sigma_perp(self) -> bool:
        sigma = sigma_class(self.images[0].lattice)
        return all(pairing(img, sigma) == 0 for img in self.images)

    def half_differences_ok(self) -> bool:
        halves = self.half_differences()
        return all(h is not None and h.square() == -2 for h in halves)

    def invariants_hold(self) -> bool:
        return (
            self.is_isometry()
            and self.preserves_c1()
            and self.lands_in_sigma_perp()
            and self.half_differences_ok()
        )


def standard_correspondence() -> Correspondence:
    lat4 = tilde_lattice()
    images = [lat4.H]
    for i in (1, 2, 3):
        images.append(lat4.E(0) + lat4.E(1) + lat4.E(2) + lat4.E(3) - 2 * lat4.E(i))
    return Correspondence(tuple(images))


def permuted_correspondence(perm: Sequence[int]) -> Correspondence:
    """The standard map composed with a permutation of E~1, E~2, E~3."""
    std = standard_correspondence()
    lat4 = std.images[0].lattice
    images = [std.images[0]]
    for i in range(3):
        src = std.images[1 + i].coefficients
        coeffs = list(src[:2]) + [0, 0, 0]
        for j in range(3):
            coeffs[2 + perm[j]] = src[2 + j]
        images.append(LatticeClass(lat4, tuple(coeffs)))
    return Correspondence(tuple(images))


def enumerate_correspondences() -> list[Correspondence]:
    """All c1-preserving isometric embeddings Lambda'_3 -> Sigma-perp.

    Image of H: square 1, c1-degree 3.  With H-coefficient a and exceptional
    part k, sum k_i^2 = a^2 - 1 and sum k_i = 3 - 3a, so Cauchy-Schwarz over
    four coordinates gives (3a - 3)^2 <= 4(a^2 - 1), i.e. 1 <= a <= 13/5.
    Searching |a| <= 3 is therefore exhaustive.
    """
    lat4 = tilde_lattice()
    sigma = sigma_class(lat4)
    h_images = enumerate_h_range(lat4, 1, 3, 3, orthogonal_to=[sigma])
    # a = 2 gives 2H - (three of E~0..E~3), none orthogonal to Sigma
    if h_images != [lat4.H]:
        raise ArithmeticError(f"unexpected images of H: {[str(c) for c in h_images]}")
    minus4 = enumerate_classes(lat4, -4, 2, [lat4.H, sigma], h_degree=0)
    found = []
    for triple in itertools.permutations(minus4, 3):
        cand = Correspondence((lat4.H,) + triple)
        if cand.invariants_hold():
            found.append(cand)
    found.sort(key=lambda c: c.matrix)
    return found


def period_forward(p: PeriodVector3, e) -> PeriodVector4:
    """mu~0 = (mu1+mu2+mu3)/2 + eps, mu~i = (mu_j+mu_k-mu_i)/2 - eps, lam = 1.

    Total on rationals; check ``.valid`` / ``.violations`` on the result.
    """
    eps = _eps(e)
    m1, m2, m3 = p.mu
    return PeriodVector4(
        Fraction(1),
        (
            (m1 + m2 + m3) / 2 + eps,
            (m2 + m3 - m1) / 2 - eps,
            (m1 + m3 - m2) / 2 - eps,
            (m1 + m2 - m3) / 2 - eps,
        ),
    )


def period_inverse(q: PeriodVector4) -> BlowdownPeriods:
    if q.lam != 1:
        raise DomainError(f"the line class must have area 1, got λ = {q.lam}")
    t0, t1, t2, t3 = q.mu_tilde
    mu = PeriodVector3(((t0 - t1 + t2 + t3) / 2, (t0 + t1 - t2 + t3) / 2, (t0 + t1 + t2 - t3) / 2))
    return BlowdownPeriods(mu, (t0 - t1 - t2 - t3) / 4)


def linear_relations(p: PeriodVector3, q: PeriodVector4, e) -> list[Fraction]:
    """Residuals of mu~0 - sum mu~i = 4 eps and mu~0 - mu~i + mu~j + mu~k = 2 mu_i."""
    eps = _eps(e)
    t = q.mu_tilde
    res = [t[0] - t[1] - t[2] - t[3] - 4 * eps]
    for i in (1, 2, 3):
        res.append(t[0] + sum(t[j] for j in (1, 2, 3) if j != i) - t[i] - 2 * p.mu[i - 1])
    return res


def epsilon_supremum(p: PeriodVector3) -> EpsilonSupremum:
    """Exact sup of the admissible eps for ``period_forward(p, eps)``.

    mu~i > 0 bounds eps by (mu_j + mu_k - mu_i)/2.  mu~0 + mu~i = mu_j + mu_k,
    so the conditions mu~0 + mu~i < 1 do not involve eps.  The volume
    condition reads eps^2 < (1 - sum mu_i^2)/4; it is compared by squaring
    and, on the open domain, is always slack at the linear bound.
    """
    failed = [c for c in p.effectivity() if not c.holds]
    if failed:
        raise DomainError(f"not a blown-up ball: {failed[0].name} fails")
    triangle = p.triangle()
    bad = next((c for c in triangle if not c.holds), None)
    if bad is not None:
        return EpsilonSupremum(Fraction(0), False, bad.name)
    m = p.mu
    bounds = [((m[j] + m[k] - m[i]) / 2, f"μ̃{sub(i + 1)} > 0") for i, j, k in ((0, 1, 2), (1, 0, 2), (2, 0, 1))]
    value, binding = min(bounds, key=lambda b: b[0])
    if 4 * value * value >= p.volume():
        raise ArithmeticError(f"volume bound binds before the linear bound for {p}")
    return EpsilonSupremum(value, False, binding)


def volume_identity(p: PeriodVector3, e) -> bool:
    """sum mu~_i^2 == sum mu_i^2 + 4 eps^2, i.e. vol(B3) = vol(B4) + 4 eps^2."""
    eps = _eps(e)
    q = period_forward(p, eps)
    return sum(x * x for x in q.mu_tilde) == sum(x * x for x in p.mu) + 4 * eps * eps


def betti_transport(x: BettiTriple, direction: str) -> BettiTriple:
    if direction == "blowdown":
        if x.b2_minus < 1:
            raise DomainError("rational blow-down needs b2- >= 1 on the source")
        return BettiTriple(x.b1, x.b2_plus, x.b2_minus - 1)
    if direction == "blowup":
        return BettiTriple(x.b1, x.b2_plus, x.b2_minus + 1)
    raise DomainError(f"direction must be 'blowdown' or 'blowup', got {direction!r}")

"""Self-verification: re-derive every lattice fact and inequality behind the decision."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import (
    PAIRS,
    PeriodVector3,
    enumerate_correspondences,
    epsilon_supremum,
    linear_relations,
    period_forward,
    period_inverse,
    permuted_correspondence,
    sigma_class,
    standard_correspondence,
    volume_identity,
)
from .cone import (
    KahlerClass,
    area,
    decompose_curve_class,
    decomposition_determinant,
    fiber_components,
    positivity_certificate,
)
from .decision import admits_lagrangian_rp2, audin_scan, replay
from .lattice import (
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
from .sublattice import (
    Sublattice,
    direct_sum,
    discriminant,
    gram,
    inclusion_index,
    kernel_of_mod2_pairing,
    multiple_membership,
    orthogonal_complement,
    quotient_structure,
)

SEED = 20240531


@dataclass
class Check:
    lemma: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.lemma}: {self.name}" + (f" -- {self.detail}" if self.detail else "")

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "name": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, lemma, name, passed, detail=""):
        self.checks.append(Check(lemma, name, bool(passed), detail))

    def to_json(self) -> dict:
        return {"overall": "pass" if self.passed else "fail", "checks": [c.to_json() for c in self.checks]}


def box_scan(lat, square, c1_deg, orthogonal_to, primitive_only):
    """Brute force over the whole coefficient box; H-orthogonality must be listed."""
    bound = math.isqrt(-square) if square < 0 else 0
    out = []
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=lat.rank):
        cls = LatticeClass(lat, coeffs)
        if cls.square() != square or c1_degree(cls) != c1_deg:
            continue
        if any(pairing(cls, v) for v in orthogonal_to):
            continue
        if primitive_only and (cls.is_zero() or not is_primitive(cls)):
            continue
        out.append(cls)
    return sorted(out, key=lambda c: c.coefficients)


def _fmt(classes):
    return "{" + ", ".join(str(c) for c in classes) + "}"


def check_sigma_uniqueness(report):
    lat4 = tilde_lattice()
    sigma = sigma_class(lat4)
    prim = enumerate_classes(lat4, -4, -2, [lat4.H], primitive_only=True)
    perms = sorted(
        {LatticeClass(lat4, (0,) + tuple(-1 if j != i else 1 for j in range(4))) for i in range(4)},
        key=lambda c: c.coefficients,
    )
    report.add("Σ-uniqueness", "primitive (−4, c₁ = −2, ⟂H) classes are the 4 permutations of Σ",
               prim == perms and sigma in prim, _fmt(prim))
    every = enumerate_classes(lat4, -4, -2, [lat4.H])
    doubles = [-2 * lat4.E(i) for i in range(4)]
    report.add("Σ-uniqueness", "without primitivity: 8 classes, extra ones are −2Ẽᵢ",
               len(every) == 8 and set(every) == set(perms) | set(doubles), f"{len(every)} classes")
    report.add("Σ-uniqueness", "Σ² = −4, c₁·Σ = −2, Σ·H = 0",
               (sigma.square(), c1_degree(sigma), pairing(sigma, lat4.H)) == (-4, -2, 0))


def check_class_lists(report):
    lat4 = tilde_lattice()
    sigma = sigma_class(lat4)
    orth = [lat4.H, sigma]
    minus2 = enumerate_classes(lat4, -2, 0, orth, primitive_only=True)
    expected2 = {s * (lat4.E(i) - lat4.E(j)) for i, j in ((1, 2), (1, 3), (2, 3)) for s in (1, -1)}
    report.add("class lists", "(−2, c₁ = 0, ⟂{H, Σ}) = ±(Ẽᵢ − Ẽⱼ)",
               set(minus2) == expected2 and len(minus2) == 6
               and minus2 == box_scan(lat4, -2, 0, orth, True), f"{len(minus2)} classes")
    minus4 = enumerate_classes(lat4, -4, 2, orth, primitive_only=True)
    e = [lat4.E(i) for i in range(4)]
    expected4 = {e[0] + e[1] + e[2] - e[3], e[0] + e[1] - e[2] + e[3], e[0] - e[1] + e[2] + e[3]}
    report.add("class lists", "(−4, c₁ = 2, ⟂{H, Σ}) = Ẽ₀ + Ẽ₁ + Ẽ₂ + Ẽ₃ − 2Ẽᵢ for i = 1, 2, 3",
               set(minus4) == expected4 and len(minus4) == 3
               and minus4 == box_scan(lat4, -4, 2, orth, True), _fmt(minus4))
    unfiltered = enumerate_classes(lat4, -4, -2, [lat4.H])
    report.add("class lists", "unfiltered (−4, c₁ = −2, ⟂H) agrees with box scan",
               unfiltered == box_scan(lat4, -4, -2, [lat4.H], False))


def check_sublattice_arithmetic(report):
    lat3 = blowup_lattice(3)
    lat4 = tilde_lattice()
    sigma = sigma_class(lat4)
    w_l = Mod2Class(lat3(0, 1, 1, 1))
    kernel3 = kernel_of_mod2_pairing(lat3, w_l)
    full3 = Sublattice.full(lat3)
    d3 = discriminant(kernel3)
    report.add("sublattices", f"discriminant(Λ′₃) = {d3}", d3 == 4)
    report.add("sublattices", f"index [Λ₃ : Λ′₃] = {inclusion_index(kernel3, full3)}",
               inclusion_index(kernel3, full3) == 2 and quotient_structure(kernel3, full3) == [2])
    difference_family = Sublattice(lat3, (lat3.H, lat3.E(1) - lat3.E(2), lat3.E(2) - lat3.E(3), 2 * lat3.E(3)))
    report.add("sublattices", "Λ′₃ = ⟨H, Eᵢ − Eⱼ, 2Eᵢ⟩ (mutual membership)",
               kernel3.same_as(difference_family)
               and all(kernel3.contains(2 * lat3.E(i)) for i in (1, 2, 3))
               and all(kernel3.contains(lat3.E(i) - lat3.E(j)) for i, j in ((1, 2), (1, 3), (2, 3))))
    z_sigma = Sublattice.span(sigma)
    report.add("sublattices", f"discriminant(ℤ⟨Σ⟩) = {discriminant(z_sigma)}", discriminant(z_sigma) == 4)
    perp = orthogonal_complement(lat4, [sigma])
    report.add("sublattices", f"discriminant(Λ̃′₄) = {discriminant(perp)}", discriminant(perp) == 4)
    total = direct_sum(perp, z_sigma)
    full4 = Sublattice.full(lat4)
    d_total = discriminant(total)
    idx = inclusion_index(total, full4)
    quot = quotient_structure(total, full4)
    report.add("sublattices", f"discriminant(Λ̃′₄ ⊕ ℤ⟨Σ⟩) = {d_total} = 4·4", d_total == 16)
    quot_name = "×".join(f"ℤ{n}".translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")) for n in quot) or "0"
    report.add("quotient", f"index = {idx}, quotient = {quot_name}",
               idx == 4 and quot == [4] and idx * idx * discriminant(full4) == d_total)
    four = [multiple_membership(b, 4, total) for b in lat4.basis()]
    report.add("sublattices", "4λ ∈ Λ̃′₄ ⊕ ℤ⟨Σ⟩ for every basis vector λ", all(four))
    report.add("sublattices", "2Ẽ₀ ∉ Λ̃′₄ ⊕ ℤ⟨Σ⟩ (quotient is not ℤ₂×ℤ₂)",
               not multiple_membership(lat4.E(0), 2, total))
    std = standard_correspondence()
    image = Sublattice(lat4, tuple(std.image(g) for g in kernel3.generators))
    report.add("correspondence", "correspondence maps Λ′₃ isometrically onto Λ̃′₄",
               image.same_as(perp) and gram(image) == gram(kernel3))


def check_isomorphism_lemma(report):
    found = enumerate_correspondences()
    orbit = {tuple(map(tuple, permuted_correspondence(p).matrix)) for p in itertools.permutations(range(3))}
    report.add("correspondence", f"c₁-preserving isomorphisms: {len(found)} (𝔖₃-orbit of the standard map)",
               len(found) == 6 and {tuple(map(tuple, c.matrix)) for c in found} == orbit
               and standard_correspondence() in found)
    report.add("correspondence", "each is an isometry preserving c₁ with integral half-differences of square −2",
               all(c.is_isometry() and c.preserves_c1() and c.half_differences_ok() for c in found))
    lat4 = tilde_lattice()
    halves = standard_correspondence().half_differences()
    report.add("correspondence", "½(image(2E₁) − image(2E₂)) = Ẽ₂ − Ẽ₁", halves[0] == lat4.E(2) - lat4.E(1))


def random_rational(rng, lo=-3, hi=3, max_den=60):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def check_period_algebra(report, samples=1000):
    rng = random.Random(SEED)
    ok_roundtrip = ok_relations = ok_volume = ok_sigma = True
    for _ in range(samples):
        p = PeriodVector3(tuple(random_rational(rng) for _ in range(3)))
        eps = random_rational(rng, 0, 1)
        q = period_forward(p, eps)
        back = period_inverse(q)
        ok_roundtrip &= back.periods == p and back.eps == eps
        ok_relations &= all(r == 0 for r in linear_relations(p, q, eps))
        ok_volume &= volume_identity(p, eps)
        ok_sigma &= q.sigma_area() == 4 * eps
    report.add("periods", f"forward∘inverse = identity on {samples} random inputs", ok_roundtrip)
    report.add("periods", "the four linear relations hold exactly", ok_relations)
    report.add("periods", "Σμ̃ᵢ² = Σμᵢ² + 4ε² exactly", ok_volume)
    report.add("periods", "μ̃₀ − Σμ̃ᵢ = 4ε exactly", ok_sigma)


def grid(den=20):
    for a in itertools.product(range(1, den), repeat=3):
        p = PeriodVector3(tuple(Fraction(x, den) for x in a))
        if p.is_valid():
            yield p


def check_decision_grid(report, den=20):
    count = yes = 0
    consistent = replays = True
    for p in grid(den):
        count += 1
        cert = admits_lagrangian_rp2(p)
        sup = epsilon_supremum(p).value
        m = p.mu
        direct = m[0] < m[1] + m[2] and m[1] < m[0] + m[2] and m[2] < m[0] + m[1]
        consistent &= cert.yes == (sup > 0) == direct
        replays &= replay(cert) and replay(cert.to_json())
        yes += cert.yes
    report.add("decision", f"verdict ⟺ ε_sup > 0 ⟺ triangle inequalities on the 1/{den} grid",
               consistent, f"{count} points, {yes} YES")
    report.add("decision", "every certificate replays", replays)


def check_worked_instances(report):
    p = PeriodVector3.of("3/10", "3/10", "3/10")
    cert = admits_lagrangian_rp2(p)
    report.add("decision", "(3/10, 3/10, 3/10) → YES, ε_sup = 3/20",
               cert.yes and cert.epsilon_sup == Fraction(3, 20) and cert.witness_epsilon == Fraction(3, 40))
    cert = admits_lagrangian_rp2(PeriodVector3.of("1/5", "1/5", "1/2"))
    report.add("decision", "(1/5, 1/5, 1/2) → NO", not cert.yes, cert.violation or "")
    cert = admits_lagrangian_rp2(PeriodVector3.of("1/5", "3/10", "1/2"))
    report.add("decision", "(1/5, 3/10, 1/2) → NO (equality case)", not cert.yes, cert.violation or "")


def check_audin(report):
    one, two, three = audin_scan(1), audin_scan(2), audin_scan(3)
    lat3 = blowup_lattice(3)
    target = Mod2Class(lat3(0, 1, 1, 1))
    report.add("Audin", "no class with P(x) ≡ 1 mod 4 in the 1- and 2-fold blow-ups", not one and not two)
    report.add("Audin", "3-fold blow-up: only E₁ + E₂ + E₃, with P ≡ 1 mod 4",
               three == [target] and pontrjagin_square(target) == 1)


def check_cone(report, samples=100):
    lat4 = tilde_lattice()
    det = decomposition_determinant()
    report.add("Kähler cone", f"det{{Σ, F, Ẽ′₁, Ẽ′₂, Ẽ′₃}} = {det}", abs(det) == 1)
    rng = random.Random(SEED + 1)
    ok = True
    for _ in range(samples):
        c = LatticeClass(lat4, tuple(rng.randint(-10, 10) for _ in range(5)))
        dec = decompose_curve_class(c)
        ok &= dec.reconstruct() == c and dec.m == pairing(c, sigma_class()) + 4 * dec.d
    report.add("Kähler cone", f"decomposition reconstructs {samples} random classes, m = C·Σ + 4d", ok)
    w = KahlerClass.of(1, "1/2", "1/10", "1/10", "1/10")
    named = dict(fiber_components())
    named["Σ"] = sigma_class()
    named["E~0"] = lat4.E(0)
    report.add("Kähler cone", "(1; 1/2, 1/10, 1/10, 1/10): positive on Σ, F, Ẽᵢ, Ẽ′ᵢ",
               all(area(w, c) > 0 for c in named.values()))
    covered = sums_ok = True
    count = 0
    for coeffs in itertools.product(range(0, 6), range(-5, 3), range(-2, 3), range(-2, 3), range(-2, 3)):
        c = LatticeClass(lat4, coeffs)
        v = positivity_certificate(c, w)
        if v.case == "c":
            count += 1
            sums_ok &= v.summand_total() == v.area and all(s.area >= 0 for s in v.summands) and v.area > 0
        if v.case in ("a", "b"):
            covered &= v.area > 0
    report.add("Kähler cone", f"case-(c) summand areas total area(C) ({count} classes)", sums_ok and covered)


def check_automatic_positivity(report, samples=10_000):
    rng = random.Random(SEED + 2)
    ok = True
    n = 0
    while n < samples:
        den = rng.randint(2, 1000)
        mu = [Fraction(rng.randint(1, den - 1), den) for _ in range(3)]
        # effectivity, checked inline: building Conditions per sample is the bottleneck
        if any(mu[i] + mu[j] >= 1 for i, j in PAIRS):
            continue
        n += 1
        ok &= PeriodVector3(tuple(mu)).volume() > 0
    report.add("periods", f"1 − Σμᵢ² > 0 on {samples} random effective samples", ok)


def check_cli(report):
    from .cli import run

    first = run(["--json", "decide", "0.3", "0.3", "0.3"])
    second = run(["--json", "decide", "3/10", "3/10", "3/10"])
    report.add("CLI", "JSON is byte-identical across runs and for 0.3 vs 3/10",
               first == second and first[0] == 0, f"exit {first[0]}")
    codes = (run(["decide", "1/5", "1/5", "1/2"])[0], run(["decide", "0.6", "0.6", "0.1"])[0])
    report.add("CLI", "exit codes: YES 0, NO 1, domain error 2", (first[0],) + codes == (0, 1, 2))


CHECKS = [
    check_sigma_uniqueness,
    check_class_lists,
    check_sublattice_arithmetic,
    check_isomorphism_lemma,
    check_period_algebra,
    check_decision_grid,
    check_worked_instances,
    check_audin,
    check_cone,
    check_automatic_positivity,
    check_cli,
]


def run_all() -> VerifyReport:
    report = VerifyReport()
    for check in CHECKS:
        try:
            check(report)
        except Exception as exc:  # a crash is a failed check, not a crashed report
            report.add(check.__name__, "raised", False, f"{type(exc).__name__}: {exc}")
    return report

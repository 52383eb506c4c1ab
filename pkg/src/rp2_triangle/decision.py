"""Deciding whether B3(mu1, mu2, mu3) contains a Lagrangian RP^2."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .blowup import PeriodVector3, PeriodVector4, epsilon_supremum, period_forward
from .cone import ball_form_conditions
from .errors import DomainError
from .lattice import LatticeClass, Mod2Class, blowup_lattice, pontrjagin_square
from .rationals import format_rational, parse_rational

ENGINE = f"rp2-triangle {__version__}"

_DIGITS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")
_TRIANGLE = re.compile(r"^μ(\d) \+ μ(\d) > μ(\d) fails$")


def audin_scan(n: int) -> list[Mod2Class]:
    """Mod-2 classes of the n-fold blown-up ball whose Pontrjagin square is 1 mod 4.

    A Lagrangian RP^2 can only represent such a class.
    """
    if n not in (1, 2, 3):
        raise DomainError(f"the scan covers 1, 2 or 3 blow-ups, got {n}")
    lat = blowup_lattice(n)
    hits = []
    for bits in itertools.product((0, 1), repeat=n):
        m = Mod2Class(LatticeClass(lat, (0,) + bits))
        if pontrjagin_square(m) == 1:
            hits.append(m)
    return hits


@dataclass(frozen=True)
class Certificate:
    verdict: str
    mu: tuple[Fraction, Fraction, Fraction]
    epsilon_sup: Fraction
    witness_epsilon: Fraction | None = None
    witness_mu_tilde: tuple[Fraction, ...] | None = None
    violation: str | None = None
    attained: bool = False
    engine: str = ENGINE

    @property
    def yes(self) -> bool:
        return self.verdict == "YES"

    def to_json(self) -> dict:
        witness = None
        if self.witness_epsilon is not None:
            witness = {
                "epsilon": format_rational(self.witness_epsilon),
                "mu_tilde": [format_rational(x) for x in self.witness_mu_tilde],
            }
        return {
            "verdict": self.verdict,
            "mu": [format_rational(x) for x in self.mu],
            "epsilon_sup": format_rational(self.epsilon_sup),
            "attained": self.attained,
            "witness": witness,
            "violation": self.violation,
            "engine": self.engine,
        }

    @classmethod
    def from_json(cls, data: dict) -> Certificate:
        witness = data.get("witness")
        return cls(
            verdict=data["verdict"],
            mu=tuple(parse_rational(x) for x in data["mu"]),
            epsilon_sup=parse_rational(data["epsilon_sup"]),
            witness_epsilon=parse_rational(witness["epsilon"]) if witness else None,
            witness_mu_tilde=tuple(parse_rational(x) for x in witness["mu_tilde"]) if witness else None,
            violation=data.get("violation"),
            attained=bool(data.get("attained", False)),
            engine=data.get("engine", ENGINE),
        )


def admits_lagrangian_rp2(p: PeriodVector3) -> Certificate:
    """YES iff mu_i < mu_j + mu_k for every i, with a replayable certificate.

    Raises DomainError when (mu1, mu2, mu3) does not describe a blown-up
    ball at all (positive volume or effectivity fails).
    """
    report = ball_form_conditions(p)
    for check in report.failed:
        if not check.group.startswith("(3)"):
            raise DomainError(f"{check.group.split(' ', 1)[1]}: {check.name} fails")
    sup = epsilon_supremum(p)
    failed_triangle = [c for c in p.triangle() if not c.holds]
    if failed_triangle:
        return Certificate("NO", p.mu, Fraction(0), violation=failed_triangle[0].name + " fails")
    if sup.value <= 0:
        raise ArithmeticError(f"triangle inequalities hold but ε-supremum is {sup.value}")
    eps = sup.value / 2
    witness = period_forward(p, eps)
    if not witness.valid:
        raise ArithmeticError(f"witness at ε = {eps} is invalid: {witness.violations}")
    return Certificate("YES", p.mu, sup.value, eps, witness.mu_tilde)


def replay(cert: Certificate | dict) -> bool:
    """Re-check a certificate from its own data.

    YES: the witness must be the period transform of the input at the
    stated epsilon, and must satisfy every strict inequality, with epsilon
    inside (0, epsilon_sup).  NO: the named triangle inequality must be
    false on the input.
    """
    if isinstance(cert, dict):
        cert = Certificate.from_json(cert)
    p = PeriodVector3(cert.mu)
    if cert.yes:
        if cert.witness_epsilon is None or cert.violation is not None:
            return False
        eps = cert.witness_epsilon
        if not 0 < eps < cert.epsilon_sup:
            return False
        q = period_forward(p, eps)
        return q.mu_tilde == tuple(cert.witness_mu_tilde) and PeriodVector4(1, cert.witness_mu_tilde).valid
    if cert.verdict == "NO":
        match = _TRIANGLE.match((cert.violation or "").translate(_DIGITS))
        if match is None:
            return False
        i, j, k = (int(g) - 1 for g in match.groups())
        if sorted((i, j, k)) != [0, 1, 2]:
            return False
        return not (p.mu[i] + p.mu[j] > p.mu[k])
    return False

"""Homology lattices of blown-up projective planes.

The lattice of the n-fold blow-up is Z<H, E_1, ..., E_n> with the diagonal
intersection form (+1, -1, ..., -1).  The rational blow-up of a Lagrangian
RP^2 in the triply blown-up ball lives in a second rank-5 lattice with
exceptional generators E~0, ..., E~3.  Everything here is integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError, UnboundedQueryError

ORTHOGONAL_TO_H = "orthogonal-to-H"


@dataclass(frozen=True)
class BlowupLattice:
    name: str
    basis_labels: tuple[str, ...]

    def __post_init__(self):
        if not self.basis_labels or self.basis_labels[0] != "H":
            raise DomainError("the first basis vector must be the line class H")

    @property
    def n_exceptional(self) -> int:
        return len(self.basis_labels) - 1

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    @property
    def form(self) -> tuple[int, ...]:
        """Diagonal of the intersection form."""
        return (1,) + (-1,) * self.n_exceptional

    @property
    def c1(self) -> LatticeClass:
        return LatticeClass(self, (3,) + (-1,) * self.n_exceptional)

    def zero(self) -> LatticeClass:
        return LatticeClass(self, (0,) * self.rank)

    def basis(self) -> list[LatticeClass]:
        return [self.vector(i) for i in range(self.rank)]

    def vector(self, index: int) -> LatticeClass:
        coeffs = [0] * self.rank
        coeffs[index] = 1
        return LatticeClass(self, tuple(coeffs))

    def __getitem__(self, label: str) -> LatticeClass:
        try:
            return self.vector(self.basis_labels.index(label))
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name}") from None

    @property
    def H(self) -> LatticeClass:
        return self.vector(0)

    def E(self, i: int) -> LatticeClass:
        """Exceptional generator E_i (1-based on B_n, 0-based on B4)."""
        return self[self._exceptional_prefix() + str(i)]

    def _exceptional_prefix(self) -> str:
        return self.basis_labels[1].rstrip("0123456789") if self.n_exceptional else "E"

    def __call__(self, *coefficients: int) -> LatticeClass:
        return LatticeClass(self, tuple(coefficients))


def blowup_lattice(n: int) -> BlowupLattice:
    """Z<H, E_1..E_n>, the 2-homology of CP^2 blown up n times."""
    if n < 0:
        raise DomainError("number of blow-ups must be non-negative")
    return BlowupLattice(f"B{n}", ("H",) + tuple(f"E{i}" for i in range(1, n + 1)))


def tilde_lattice() -> BlowupLattice:
    """Z<H, E~0..E~3>: the lattice of the rational blow-up of RP^2 in B3."""
    return BlowupLattice("B4", ("H", "E~0", "E~1", "E~2", "E~3"))


@dataclass(frozen=True)
class LatticeClass:
    lattice: BlowupLattice
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coefficients)
        if len(coeffs) != self.lattice.rank:
            raise DomainError(
                f"{self.lattice.name} has rank {self.lattice.rank}, got {len(coeffs)} coefficients"
            )
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise DomainError(f"class coefficients must be integers, got {c!r}")
        object.__setattr__(self, "coefficients", coeffs)

    def _check(self, other: LatticeClass):
        if not isinstance(other, LatticeClass):
            return NotImplemented
        if other.lattice != self.lattice:
            raise DomainError(
                f"classes live in different lattices ({self.lattice.name} vs {other.lattice.name})"
            )
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LatticeClass(self.lattice, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return LatticeClass(self.lattice, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return LatticeClass(self.lattice, tuple(-a for a in self.coefficients))

    def __mul__(self, k):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return LatticeClass(self.lattice, tuple(k * a for a in self.coefficients))

    __rmul__ = __mul__

    def __matmul__(self, other):
        return pairing(self, other)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def square(self) -> int:
        return pairing(self, self)

    def to_json(self) -> dict:
        return {"basis": list(self.lattice.basis_labels), "coefficients": list(self.coefficients)}

    def __str__(self) -> str:
        terms = []
        for label, c in zip(self.lattice.basis_labels, self.coefficients):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append((sign, f"{mag}{label}"))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class Mod2Class:
    """A mod-2 homology class, stored through an integral lift."""

    lift: LatticeClass
    reduction: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "reduction", tuple(c % 2 for c in self.lift.coefficients))

    @property
    def lattice(self) -> BlowupLattice:
        return self.lift.lattice

    def is_zero(self) -> bool:
        return not any(self.reduction)

    def __eq__(self, other):
        if not isinstance(other, Mod2Class):
            return NotImplemented
        return self.lattice == other.lattice and self.reduction == other.reduction

    def __hash__(self):
        return hash((self.lattice, self.reduction))

    def __str__(self) -> str:
        return str(LatticeClass(self.lattice, self.reduction)) + " (mod 2)"


def pairing(a: LatticeClass, b: LatticeClass) -> int:
    if a.lattice != b.lattice:
        raise DomainError(f"cannot pair classes of {a.lattice.name} and {b.lattice.name}")
    return sum(s * x * y for s, x, y in zip(a.lattice.form, a.coefficients, b.coefficients))


def c1_degree(a: LatticeClass) -> int:
    return pairing(a.lattice.c1, a)


def is_primitive(a: LatticeClass) -> bool:
    if a.is_zero():
        raise DomainError("primitivity is undefined for the zero class")
    return math.gcd(*a.coefficients) == 1


def pontrjagin_square(m: Mod2Class) -> int:
    """Z/4 refinement of the mod-2 self-intersection.

    Replacing the lift x by x + 2y changes x.x by 4(x.y + y.y), so the
    residue does not depend on the lift.
    """
    return m.lift.square() % 4


def _sum_of_squares_vectors(length: int, total: int) -> Iterable[tuple[int, ...]]:
    """All integer vectors of the given length whose squares sum to ``total``."""
    if length == 0:
        if total == 0:
            yield ()
        return
    bound = math.isqrt(total)
    for k in range(-bound, bound + 1):
        for rest in _sum_of_squares_vectors(length - 1, total - k * k):
            yield (k,) + rest


def enumerate_classes(
    lat: BlowupLattice,
    square: int,
    c1_deg: int,
    orthogonal_to: Sequence[LatticeClass] = (),
    h_degree: int | str | None = None,
    primitive_only: bool = False,
) -> list[LatticeClass]:
    """Every class with the prescribed square, Chern degree and orthogonality.

    The form is indefinite, so the search is only finite once the
    H-coefficient ``a`` is fixed: then the exceptional coefficients satisfy
    sum k_i^2 = a^2 - square.  ``h_degree`` fixes ``a``; passing
    ``ORTHOGONAL_TO_H`` (or listing H in ``orthogonal_to``) fixes ``a = 0``.
    Results are sorted lexicographically by coefficient vector.
    """
    orthogonal_to = list(orthogonal_to)
    for v in orthogonal_to:
        if v.lattice != lat:
            raise DomainError(f"orthogonality constraint {v} is not in {lat.name}")
    if h_degree == ORTHOGONAL_TO_H or (h_degree is None and lat.H in orthogonal_to):
        h_degree = 0
    if h_degree is None:
        raise UnboundedQueryError(
            "the intersection form is indefinite, so a level set without a fixed "
            "H-coefficient is infinite; pass h_degree or require orthogonality to H"
        )
    if isinstance(h_degree, bool) or not isinstance(h_degree, int):
        raise DomainError(f"h_degree must be an integer or {ORTHOGONAL_TO_H!r}")
    budget = h_degree * h_degree - square
    if budget < 0:
        return []
    found = []
    for tail in _sum_of_squares_vectors(lat.n_exceptional, budget):
        cls = LatticeClass(lat, (h_degree,) + tail)
        if c1_degree(cls) != c1_deg:
            continue
        if any(pairing(cls, v) != 0 for v in orthogonal_to):
            continue
        if primitive_only and (cls.is_zero() or not is_primitive(cls)):
            continue
        found.append(cls)
    found.sort(key=lambda c: c.coefficients)
    return found


def enumerate_h_range(
    lat: BlowupLattice,
    square: int,
    c1_deg: int,
    h_bound: int,
    orthogonal_to: Sequence[LatticeClass] = (),
    primitive_only: bool = False,
) -> list[LatticeClass]:
    """Union of ``enumerate_classes`` over H-coefficients in [-h_bound, h_bound]."""
    out = itertools.chain.from_iterable(
        enumerate_classes(lat, square, c1_deg, orthogonal_to, a, primitive_only)
        for a in range(-h_bound, h_bound + 1)
    )
    return sorted(out, key=lambda c: c.coefficients)

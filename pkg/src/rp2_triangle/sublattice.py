"""Sublattices given by generators: Gram matrices, discriminants, indices, quotients."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import intmat
from .errors import DomainError
from .lattice import BlowupLattice, LatticeClass, Mod2Class, pairing


@dataclass(frozen=True)
class Sublattice:
    ambient: BlowupLattice
    generators: tuple[LatticeClass, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.lattice != self.ambient:
                raise DomainError(f"generator {g} does not lie in {self.ambient.name}")
        if gens and intmat.rank(self.coefficient_matrix(gens)) != len(gens):
            raise DomainError("sublattice generators are linearly dependent")
        object.__setattr__(self, "generators", gens)

    @staticmethod
    def coefficient_matrix(gens) -> list[list[int]]:
        return [list(g.coefficients) for g in gens]

    @classmethod
    def full(cls, lat: BlowupLattice) -> Sublattice:
        return cls(lat, tuple(lat.basis()))

    @classmethod
    def span(cls, *gens: LatticeClass) -> Sublattice:
        if not gens:
            raise DomainError("span of no generators needs an explicit ambient lattice")
        return cls(gens[0].lattice, gens)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def contains(self, cls: LatticeClass) -> bool:
        return multiple_membership(cls, 1, self)

    def same_as(self, other: Sublattice) -> bool:
        """Equality as subgroups, decided by mutual membership of generators."""
        return (
            self.ambient == other.ambient
            and all(other.contains(g) for g in self.generators)
            and all(self.contains(g) for g in other.generators)
        )

    def __str__(self) -> str:
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


def kernel_of_mod2_pairing(lat: BlowupLattice, w: Mod2Class) -> Sublattice:
    """Generators of ``{x : x . lift(w) = 0 mod 2}``.

    For ``w = 0`` the whole lattice comes back (index 1); otherwise the
    result has index 2.
    """
    if w.lattice != lat:
        raise DomainError(f"{w} is not a class of {lat.name}")
    # x . w = sum_i form_i x_i w_i, and form_i = +-1, so mod 2 this is x . reduction
    odd = [i for i, bit in enumerate(w.reduction) if bit]
    if not odd:
        return Sublattice.full(lat)
    pivot = odd[-1]
    gens = []
    for i in range(lat.rank):
        e = lat.vector(i)
        if i == pivot:
            gens.append(2 * e)
        elif i in odd:
            gens.append(e - lat.vector(pivot))
        else:
            gens.append(e)
    return Sublattice(lat, tuple(gens))


def kernel_of_mod2_index(lat: BlowupLattice, w: Mod2Class) -> int:
    return 1 if w.is_zero() else 2


def orthogonal_complement(lat: BlowupLattice, classes: Sequence[LatticeClass]) -> Sublattice:
    """``{x in lat : x . c = 0 for all c}`` computed as an integer kernel."""
    rows = [[s * c for s, c in zip(lat.form, v.coefficients)] for v in classes]
    basis = intmat.integer_kernel(rows, lat.rank)
    return Sublattice(lat, tuple(LatticeClass(lat, tuple(b)) for b in basis))


def direct_sum(a: Sublattice, b: Sublattice) -> Sublattice:
    """Internal orthogonal sum; raises if the summands are not orthogonal."""
    if a.ambient != b.ambient:
        raise DomainError("summands live in different lattices")
    for x in a.generators:
        for y in b.generators:
            if pairing(x, y) != 0:
                raise DomainError(f"summands are not orthogonal: {x} . {y} = {pairing(x, y)}")
    return Sublattice(a.ambient, a.generators + b.generators)


def gram(s: Sublattice) -> list[list[int]]:
    return [[pairing(x, y) for y in s.generators] for x in s.generators]


def discriminant(s: Sublattice) -> int:
    d = abs(intmat.det(gram(s)))
    if d == 0:
        raise DomainError(f"the form restricted to {s} is degenerate")
    return d


def inclusion_matrix(sub: Sublattice, full: Sublattice) -> list[list[int]]:
    """Rows express each generator of ``sub`` in the generators of ``full``."""
    if sub.ambient != full.ambient:
        raise DomainError("sublattices live in different lattices")
    if sub.rank != full.rank:
        raise DomainError(f"rank mismatch: {sub.rank} vs {full.rank}")
    cols = intmat.transpose(Sublattice.coefficient_matrix(full.generators))
    rows = []
    for g in sub.generators:
        x = intmat.solve_integer(cols, list(g.coefficients))
        if x is None:
            raise DomainError(f"{g} is not an integral combination of the generators of {full}")
        rows.append(x)
    return rows


def inclusion_index(sub: Sublattice, full: Sublattice) -> int:
    return abs(intmat.det(inclusion_matrix(sub, full)))


def quotient_structure(sub: Sublattice, full: Sublattice) -> list[int]:
    """Invariant factors (> 1) of ``full / sub``; [] for the trivial group."""
    return [d for d in intmat.invariant_factors(inclusion_matrix(sub, full)) if d > 1]


def multiple_membership(cls: LatticeClass, k: int, sub: Sublattice) -> bool:
    """Is ``k * cls`` an integral combination of the generators of ``sub``?"""
    if cls.lattice != sub.ambient:
        raise DomainError(f"{cls} is not in {sub.ambient.name}")
    if k <= 0:
        raise DomainError("multiplier must be positive")
    target = [k * c for c in cls.coefficients]
    if not sub.generators:
        return not any(target)
    cols = intmat.transpose(Sublattice.coefficient_matrix(sub.generators))
    return intmat.solve_integer(cols, target) is not None

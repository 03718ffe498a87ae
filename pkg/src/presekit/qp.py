"""Quivers with potentials and their Jacobian algebras.

A potential is a finite linear combination of oriented cycles, taken modulo
commutators.  Each cycle is stored in its lexicographically least rotation
(compared by arrow index), so equal classes compare equal.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import AlgebraModel, Quiver, Relation, build_algebra
from .errors import Inadmissible
from .linalg import P_DEFAULT


def _least_rotation(word: tuple[int, ...]) -> tuple[int, ...]:
    return min(word[k:] + word[:k] for k in range(len(word)))


@dataclass(frozen=True)
class Potential:
    """``terms = ((coeff, cycle as arrow names), ...)`` in canonical form."""

    quiver: Quiver
    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @classmethod
    def from_terms(cls, quiver: Quiver, terms: Iterable[tuple[int, Sequence[str]]],
                   p: int = P_DEFAULT) -> "Potential":
        if quiver.has_oriented_2_cycle():
            raise Inadmissible("quiver has an oriented 2-cycle")
        acc: dict[tuple[int, ...], int] = defaultdict(int)
        for coeff, names in terms:
            word = quiver.word(tuple(names))
            if not word or not quiver.composable(word) or quiver.tail(word) != quiver.head(word):
                raise Inadmissible(f"{'*'.join(names) or '1'} is not an oriented cycle")
            acc[_least_rotation(word)] += int(coeff)
        names = [a.name for a in quiver.arrows]
        out = tuple((c, tuple(names[i] for i in w))
                    for w, c in sorted(acc.items()) if c % p)
        return cls(quiver, out)

    @classmethod
    def parse(cls, quiver: Quiver, text: str, p: int = P_DEFAULT) -> "Potential":
        """Parse ``"c*b*a + 2*d*e*f"`` like a relation."""
        return cls.from_terms(quiver, Relation.parse(text).terms, p)

    def __add__(self, other: "Potential") -> "Potential":
        if other.quiver != self.quiver:
            raise ValueError("potentials live on different quivers")
        return Potential.from_terms(self.quiver, self.terms + other.terms)

    def __str__(self) -> str:
        return str(Relation(self.terms)) if self.terms else "0"


def cyclic_derivative(S: Potential, arrow: str) -> Relation | None:
    """``∂_a S``; ``None`` when a does not occur in S."""
    acc: dict[tuple[str, ...], int] = defaultdict(int)
    for coeff, cycle in S.terms:
        for k, name in enumerate(cycle):
            if name == arrow:
                acc[cycle[k + 1:] + cycle[:k]] += coeff
    terms = tuple((c, w) for w, c in sorted(acc.items()) if c)
    return Relation(terms) if terms else None


def jacobian_relations(S: Potential) -> list[Relation]:
    """Nonzero cyclic derivatives, one per arrow in declaration order."""
    out = []
    for a in S.quiver.arrows:
        rel = cyclic_derivative(S, a.name)
        if rel is None:
            continue
        if any(len(w) < 2 for _, w in rel.terms):
            raise Inadmissible(f"derivative by {a.name} has a term of length < 2")
        out.append(rel)
    return out


def jacobian_algebra(S: Potential, L: int, p: int = P_DEFAULT) -> AlgebraModel:
    """``kQ / ∂S``, truncated at path length ``L``."""
    return build_algebra(S.quiver, jacobian_relations(S), L, p)

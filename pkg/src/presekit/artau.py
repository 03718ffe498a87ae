"""Decorated representations and the AR-transformation on two-term complexes.

Right modules are handled as left modules over the opposite algebra.  The
transpose of a presentation ``f`` is the presentation over A^op whose matrix is
the reversed-and-transposed matrix of f; its cokernel is the transpose ``Tr``
of ``Coker f``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _proj, linalg, present, repmod
from .algebra import AlgebraModel
from .present import Presentation
from .repmod import Representation


@dataclass(frozen=True, eq=False)
class DecoratedRep:
    """A pair (positive part M, negative part V) with V a dimension vector."""

    positive: Representation
    negative: tuple[int, ...]

    @property
    def algebra(self) -> AlgebraModel:
        return self.positive.algebra

    def __post_init__(self) -> None:
        object.__setattr__(self, "negative", tuple(int(x) for x in self.negative))
        if len(self.negative) != self.algebra.n or min(self.negative, default=0) < 0:
            raise ValueError(f"bad negative part {self.negative}")

    def __repr__(self) -> str:
        return f"DecoratedRep(dims={self.positive.dims}, negative={self.negative})"

    @property
    def beta0(self) -> tuple[int, ...]:
        return repmod.betti(self.positive).beta0

    @property
    def beta1(self) -> tuple[int, ...]:
        b1 = repmod.betti(self.positive).beta1
        return tuple(a + b for a, b in zip(b1, self.negative))

    @property
    def delta(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.beta0, self.beta1))

    def dual(self, target: AlgebraModel | None = None) -> "DecoratedRep":
        """The trivial dual, over the opposite algebra."""
        return DecoratedRep(repmod.dual(self.positive, target), self.negative)


def positive(M: Representation) -> DecoratedRep:
    return DecoratedRep(M, (0,) * M.algebra.n)


def negative_simple(A: AlgebraModel, v: int) -> DecoratedRep:
    return DecoratedRep(repmod.zero_rep(A), tuple(int(w == v) for w in range(A.n)))


def direct_sum(*ms: DecoratedRep) -> DecoratedRep:
    return DecoratedRep(repmod.direct_sum(*(m.positive for m in ms)),
                        tuple(sum(col) for col in zip(*(m.negative for m in ms))))


@dataclass(frozen=True, eq=False)
class K2Object:
    """A homotopy-minimal presentation."""

    presentation: Presentation

    @classmethod
    def of(cls, f: Presentation) -> "K2Object":
        g = present.minimize(f)
        if len(g.P1) != len(f.P1):
            warnings.warn("presentation was not minimal; contractible summands removed", stacklevel=2)
        return cls(g)

    @property
    def delta(self) -> tuple[int, ...]:
        return self.presentation.delta


def _shifted_part(A: AlgebraModel, V: Sequence[int]) -> Presentation:
    P1 = present.expand(V)
    return Presentation(A, P1, (), _proj.zeros(A, len(P1), 0))


def to_presentation(m: DecoratedRep) -> Presentation:
    """``minimal_presentation(M) ⊕ P(V)[1]``."""
    return present.direct_sum(repmod.minimal_presentation(m.positive), _shifted_part(m.algebra, m.negative))


def from_presentation(f: Presentation) -> DecoratedRep:
    """Inverse of :func:`to_presentation` (input is minimized first)."""
    g = K2Object.of(f).presentation
    M = repmod.cokernel(g)
    b1 = repmod.betti(M).beta1
    V = tuple(a - b for a, b in zip(g.beta1, b1))
    return DecoratedRep(M, V)


def transpose(f: Presentation) -> Presentation:
    """``Hom(f, A)`` written as a presentation over A^op."""
    A = f.algebra
    op = A.opposite()
    conv = A.to_opposite
    F = _proj.zeros(op, len(f.P0), len(f.P1))
    for j in range(len(f.P1)):
        for i in range(len(f.P0)):
            if f.F[j, i].any():
                F[i, j] = linalg.matmul(conv, f.F[j, i].reshape(-1, 1), A.p).reshape(-1)
    return Presentation(op, f.P0, f.P1, F)


def _tau_positive(M: Representation) -> tuple[Representation, tuple[int, ...]]:
    """``(D Tr M, π)`` where π counts the projective summands of M."""
    A = M.algebra
    f = repmod.minimal_presentation(M)
    T = repmod.cokernel(transpose(f))
    ft = repmod.minimal_presentation(T)
    pi = tuple(a - b for a, b in zip(f.beta0, ft.beta1))
    return repmod.dual(T, A), pi


def tau(m: DecoratedRep) -> DecoratedRep:
    """AR-transformation: ``(M, V) ↦ (D Tr M ⊕ I(V), π(M))``."""
    A = m.algebra
    dtr, pi = _tau_positive(m.positive)
    parts = [dtr] + [repmod.injective(A, v) for v in present.expand(m.negative)]
    return DecoratedRep(repmod.direct_sum(*parts), pi)


def tau_inverse(m: DecoratedRep) -> DecoratedRep:
    """``τ⁻¹ 𝓜 = (τ_{A^op} 𝓜*)*``."""
    A = m.algebra
    return tau(m.dual()).dual(A)


def tau_presentation(f: Presentation, direction: str = "forward") -> Presentation:
    """τ or τ⁻¹ on a presentation, through its decorated representation."""
    m = from_presentation(f)
    if direction == "forward":
        out = tau(m)
    elif direction == "inverse":
        out = tau_inverse(m)
    else:
        raise ValueError("direction must be 'forward' or 'inverse'")
    return to_presentation(out)


@dataclass(frozen=True)
class EInvariants:
    e_proj: int
    e_inj: int
    hom_plus: int


def e_proj(m: DecoratedRep, n: DecoratedRep) -> int:
    return present.dim_E(to_presentation(m), to_presentation(n))


def e_inj(m: DecoratedRep, n: DecoratedRep) -> int:
    op = m.algebra.opposite()
    return present.dim_E(to_presentation(n.dual(op)), to_presentation(m.dual(op)))


def hom_plus(m: DecoratedRep, n: DecoratedRep) -> int:
    return repmod.hom_dim(m.positive, n.positive)


def e_invariants(m: DecoratedRep, n: DecoratedRep) -> EInvariants:
    return EInvariants(e_proj(m, n), e_inj(m, n), hom_plus(m, n))


def minus_beta0_of_dual(m: DecoratedRep) -> tuple[int, ...]:
    """``−β₀(𝓜*)``."""
    return tuple(-x for x in m.dual().beta0)


def minus_delta_of_dual(m: DecoratedRep) -> tuple[int, ...]:
    """``−δ(𝓜*)``."""
    return tuple(-x for x in m.dual().delta)


def random_decorated(A: AlgebraModel, rng: np.random.Generator, size: int = 2) -> DecoratedRep:
    """Decorated representation of a random presentation."""
    delta = tuple(int(x) for x in rng.integers(-size, size + 1, size=A.n))
    return from_presentation(present.sample(A, delta, rng))

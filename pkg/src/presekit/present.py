"""Two-term complexes of projectives, δ-vectors and the spaces E and H."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _proj, linalg
from .algebra import AlgebraModel

DEFAULT_TRIALS = 3


def split_delta(delta: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The reduced split ``δ = β0 − β1`` with disjoint supports, as ``(β1, β0)``."""
    b0 = tuple(max(int(x), 0) for x in delta)
    b1 = tuple(max(-int(x), 0) for x in delta)
    return b1, b0


def expand(beta: Sequence[int]) -> tuple[int, ...]:
    """Summand vertex list of ``P(β)`` in vertex order."""
    return tuple(v for v, k in enumerate(beta) for _ in range(int(k)))


def count(vlist: Sequence[int], n: int) -> tuple[int, ...]:
    out = [0] * n
    for v in vlist:
        out[v] += 1
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Presentation:
    """A map ``P(β1) → P(β0)`` given by an A-matrix.

    ``P1`` lists the vertices ``v_1..v_n`` of the domain summands and ``P0``
    the vertices ``w_1..w_m`` of the codomain summands; ``F[j, i]`` lies in
    ``e_{v_j} A e_{w_i}`` and component i of the image of ``(x_j)`` is
    ``Σ_j x_j·F[j, i]``.
    """

    algebra: AlgebraModel = field(repr=False)
    P1: tuple[int, ...]
    P0: tuple[int, ...]
    F: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        A = self.algebra
        F = np.asarray(self.F, dtype=np.int64) % A.p
        if F.shape != (len(self.P1), len(self.P0), A.dim):
            raise ValueError(f"matrix shape {F.shape} does not match summands")
        for j, v in enumerate(self.P1):
            for i, w in enumerate(self.P0):
                mask = np.ones(A.dim, dtype=bool)
                mask[A.elems(v, w)] = False
                if F[j, i, mask].any():
                    raise ValueError(f"entry ({j},{i}) is not in e_v A e_w")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "P1", tuple(int(v) for v in self.P1))
        object.__setattr__(self, "P0", tuple(int(v) for v in self.P0))

    @property
    def beta1(self) -> tuple[int, ...]:
        return count(self.P1, self.algebra.n)

    @property
    def beta0(self) -> tuple[int, ...]:
        return count(self.P0, self.algebra.n)

    @property
    def delta(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.beta0, self.beta1))

    def is_zero(self) -> bool:
        return not self.P1 and not self.P0

    @cached_property
    def vertex_maps(self) -> list[np.ndarray]:
        return _proj.vertex_maps(self.algebra, self.F, self.P1, self.P0)

    def __repr__(self) -> str:
        return f"Presentation(beta1={self.beta1}, beta0={self.beta0})"

    def describe(self) -> str:
        A = self.algebra
        names = A.quiver.vertices
        rows = []
        for j, v in enumerate(self.P1):
            cells = [A.format_vector(self.F[j, i]) for i in range(len(self.P0))]
            rows.append(f"  P_{names[v]}: [" + ", ".join(cells) + "]")
        head = " + ".join(f"P_{names[w]}" for w in self.P0) or "0"
        return f"{self.beta1} -> {self.beta0}  (delta {self.delta})\n  target summands: {head}\n" + "\n".join(rows)

    def to_json(self, seed: int | None = None) -> dict:
        A = self.algebra
        entries = []
        for j, v in enumerate(self.P1):
            row = []
            for i, w in enumerate(self.P0):
                row.append([linalg.symmetric(int(x), A.p) for x in self.F[j, i, A.elems(v, w)]])
            entries.append(row)
        return {
            "algebra_hash": A.fingerprint,
            "seed": seed,
            "P1": [A.quiver.vertices[v] for v in self.P1],
            "P0": [A.quiver.vertices[w] for w in self.P0],
            "beta1": list(self.beta1),
            "beta0": list(self.beta0),
            "entries": entries,
        }

    @classmethod
    def from_json(cls, A: AlgebraModel, data: dict | str) -> "Presentation":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("algebra_hash") not in (None, A.fingerprint):
            raise ValueError("presentation was written for a different algebra")
        P1 = tuple(A.quiver.vertex(x) for x in data["P1"])
        P0 = tuple(A.quiver.vertex(x) for x in data["P0"])
        F = _proj.zeros(A, len(P1), len(P0))
        for j, v in enumerate(P1):
            for i, w in enumerate(P0):
                F[j, i, A.elems(v, w)] = [int(x) % A.p for x in data["entries"][j][i]]
        return cls(A, P1, P0, F)


# ---------------------------------------------------------------------------
# constructors


def zero(A: AlgebraModel) -> Presentation:
    return Presentation(A, (), (), _proj.zeros(A, 0, 0))


def projective(A: AlgebraModel, v: int) -> Presentation:
    """The stalk complex ``0 → P_v``."""
    return Presentation(A, (), (v,), _proj.zeros(A, 0, 1))


def shifted(A: AlgebraModel, v: int) -> Presentation:
    """The stalk complex ``P_v → 0``, written ``P_v[1]``."""
    return Presentation(A, (v,), (), _proj.zeros(A, 1, 0))


def regular(A: AlgebraModel) -> Presentation:
    """``0 → A = ⊕_v P_v``."""
    return Presentation(A, (), tuple(range(A.n)), _proj.zeros(A, 0, A.n))


def direct_sum(*fs: Presentation) -> Presentation:
    A = fs[0].algebra
    P1 = sum((f.P1 for f in fs), ())
    P0 = sum((f.P0 for f in fs), ())
    F = _proj.zeros(A, len(P1), len(P0))
    r = c = 0
    for f in fs:
        F[r : r + len(f.P1), c : c + len(f.P0)] = f.F
        r += len(f.P1)
        c += len(f.P0)
    return Presentation(A, P1, P0, F)


def sample(A: AlgebraModel, what, rng: np.random.Generator) -> Presentation:
    """Uniform random presentation in ``PHom(β1, β0)``.

    ``what`` is either a δ-vector (the reduced split is used) or a pair
    ``(β1, β0)``.
    """
    if len(what) == 2 and all(isinstance(x, (tuple, list)) for x in what):
        b1, b0 = what
    else:
        b1, b0 = split_delta(what)
    P1, P0 = expand(b1), expand(b0)
    F = _proj.hom_space(A, tuple(P1), tuple(P0)).random(rng)
    return Presentation(A, P1, P0, F)


# ---------------------------------------------------------------------------
# E, H and morphisms in the homotopy category


def e_matrix(f: Presentation, g: Presentation) -> np.ndarray:
    """Matrix of ``(g0, g1) ↦ g0∘f − g∘g1`` into ``Hom(P1', P0'')``."""
    A = f.algebra
    a = _proj.left_compose(A, f.F, f.P1, f.P0, g.P0)
    b = _proj.right_compose(A, g.F, f.P1, g.P1, g.P0)
    return np.concatenate([a, (-b) % A.p], axis=1)


def E_space(f: Presentation, g: Presentation) -> tuple[int, int]:
    """``(dim E(f, g), dim H(f, g))``: corank and nullity of :func:`e_matrix`."""
    m = e_matrix(f, g)
    rk = linalg.rank(m, f.algebra.p) if m.size else 0
    return m.shape[0] - rk, m.shape[1] - rk


def dim_E(f: Presentation, g: Presentation) -> int:
    return E_space(f, g)[0]


def chain_maps(f: Presentation, g: Presentation) -> list[tuple[np.ndarray, np.ndarray]]:
    """Basis of ``{(u1, u0) : u0∘f = g∘u1}`` as pairs of A-matrices."""
    A = f.algebra
    m = e_matrix(f, g)
    h0 = _proj.hom_space(A, tuple(f.P0), tuple(g.P0))
    h1 = _proj.hom_space(A, tuple(f.P1), tuple(g.P1))
    if m.shape[1] == 0:
        return []
    if m.shape[0] == 0:
        ker = np.eye(m.shape[1], dtype=np.int64)
    else:
        ker = linalg.nullspace(m, A.p)
    out = []
    for v in ker:
        out.append((h1.to_amatrix(v[h0.dim :]), h0.to_amatrix(v[: h0.dim])))
    return out


def hom_k2(f: Presentation, g: Presentation) -> int:
    """Dimension of chain maps ``f → g`` modulo homotopy."""
    A = f.algebra
    chain = E_space(f, g)[1]
    # homotopies h: P0' → P1'' give (u1, u0) = (h∘f, g∘h)
    u1 = _proj.left_compose(A, f.F, f.P1, f.P0, g.P1)
    u0 = _proj.right_compose(A, g.F, f.P0, g.P1, g.P0)
    stack = np.concatenate([u1, u0], axis=0)
    rk = linalg.rank(stack, A.p) if stack.size else 0
    return chain - rk


def is_rigid(f: Presentation) -> bool:
    return dim_E(f, f) == 0


def e_generic(A: AlgebraModel, d1: Sequence[int], d2: Sequence[int], trials: int = DEFAULT_TRIALS,
              rng: np.random.Generator | None = None) -> int:
    """Minimum of ``dim E`` over independent samples of the reduced spaces.

    When the trial values disagree the number of trials is doubled once.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    vals = [dim_E(sample(A, d1, rng), sample(A, d2, rng)) for _ in range(max(1, trials))]
    if len(set(vals)) > 1:
        vals += [dim_E(sample(A, d1, rng), sample(A, d2, rng)) for _ in range(max(1, trials))]
    return min(vals)


def subpres_exists(A: AlgebraModel, sub: Sequence[int], delta: Sequence[int], trials: int = DEFAULT_TRIALS,
                   rng: np.random.Generator | None = None) -> bool:
    """Whether a general element of ``PHom(δ)`` has a subpresentation of class δ′."""
    rest = tuple(int(a) - int(b) for a, b in zip(delta, sub))
    return e_generic(A, sub, rest, trials, rng) == 0


# ---------------------------------------------------------------------------
# homotopy minimization


def _unit_coeff(A: AlgebraModel, vec: np.ndarray, v: int) -> int:
    return int(vec[A.idempotent(v)])


def local_inverse(A: AlgebraModel, u: np.ndarray, v: int) -> np.ndarray:
    """Inverse of ``u ∈ e_v A e_v`` with nonzero unit coefficient."""
    idx = A.elems(v, v)
    m = A.left_mul_vec(u)[np.ix_(idx, idx)]
    e = np.zeros(len(idx), dtype=np.int64)
    e[list(idx).index(A.idempotent(v))] = 1
    sol = linalg.solve(m, e, A.p)
    out = np.zeros(A.dim, dtype=np.int64)
    out[idx] = sol
    return out


def minimize(f: Presentation) -> Presentation:
    """Cancel summands ``P_v → P_v`` linked by an invertible entry."""
    A = f.algebra
    p = A.p
    P1, P0, F = list(f.P1), list(f.P0), f.F.copy()
    while True:
        pivot = None
        for j, v in enumerate(P1):
            for i, w in enumerate(P0):
                if v == w and _unit_coeff(A, F[j, i], v):
                    pivot = (j, i)
                    break
            if pivot:
                break
        if pivot is None:
            break
        j, i = pivot
        v = P1[j]
        uinv = local_inverse(A, F[j, i], v)
        for j2 in range(len(P1)):
            if j2 != j and F[j2, i].any():
                c = A.mul_vec(F[j2, i], uinv)
                for i2 in range(len(P0)):
                    F[j2, i2] = (F[j2, i2] - A.mul_vec(c, F[j, i2])) % p
        for i2 in range(len(P0)):
            if i2 != i and F[j, i2].any():
                dvec = A.mul_vec(uinv, F[j, i2])
                for j2 in range(len(P1)):
                    F[j2, i2] = (F[j2, i2] - A.mul_vec(F[j2, i], dvec)) % p
        F = np.delete(np.delete(F, j, axis=0), i, axis=1)
        del P1[j]
        del P0[i]
    return Presentation(A, tuple(P1), tuple(P0), F)


def sorted_form(f: Presentation) -> Presentation:
    """The same complex with summands listed in vertex order."""
    o1 = sorted(range(len(f.P1)), key=lambda j: f.P1[j])
    o0 = sorted(range(len(f.P0)), key=lambda i: f.P0[i])
    F = f.F.take(o1, axis=0).take(o0, axis=1)
    return Presentation(f.algebra, tuple(f.P1[j] for j in o1), tuple(f.P0[i] for i in o0), F)

"""Representations of a bound quiver algebra.

A representation stores one matrix ``M(a): M(ta) → M(ha)`` per arrow.  Paths
act by composing these along the word, rightmost arrow first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import _proj, linalg, present
from .algebra import AlgebraModel
from .errors import HasRelations, InvalidRepresentation
from .present import Presentation


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: AlgebraModel = field(repr=False)
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self) -> None:
        A = self.algebra
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != A.n or min(dims, default=0) < 0:
            raise InvalidRepresentation(f"bad dimension vector {dims}")
        if len(self.maps) != len(A.quiver.arrows):
            raise InvalidRepresentation("one matrix per arrow is required")
        maps = []
        for arr, m in zip(A.quiver.arrows, self.maps):
            m = np.asarray(m, dtype=np.int64)
            shape = (dims[arr.head], dims[arr.tail])
            if m.size != shape[0] * shape[1]:
                raise InvalidRepresentation(f"matrix of arrow {arr.name} has the wrong shape")
            maps.append(m.reshape(shape) % A.p)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", tuple(maps))
        bad = self.violated_relation()
        if bad is not None:
            raise InvalidRepresentation(f"relation {bad} does not act as zero")

    # -- path action -------------------------------------------------------

    def word_action(self, word: Sequence[int]) -> np.ndarray:
        """The matrix of a nonempty composable word."""
        word = tuple(word)
        if word not in self._words:
            if len(word) == 1:
                out = self.maps[word[0]]
            else:
                out = linalg.matmul(self.maps[word[0]], self.word_action(word[1:]), self.algebra.p)
            self._words[word] = out
        return self._words[word]

    @cached_property
    def _words(self) -> dict:
        return {}

    def element_action(self, vec: np.ndarray, v: int, w: int) -> np.ndarray:
        """Action ``M(w) → M(v)`` of the component of ``vec`` in ``e_v A e_w``."""
        A = self.algebra
        out = np.zeros((self.dims[v], self.dims[w]), dtype=np.int64)
        for b in A.elems(v, w):
            c = int(vec[b]) % A.p
            if not c:
                continue
            word = A.basis.words[b]
            m = np.eye(self.dims[v], dtype=np.int64) if not word else self.word_action(word)
            out = (out + c * m) % A.p
        return out

    def basis_action(self, b: int) -> np.ndarray:
        A = self.algebra
        word = A.basis.words[b]
        if not word:
            return np.eye(self.dims[A.basis.tails[b]], dtype=np.int64)
        return self.word_action(word)

    def violated_relation(self):
        """The first defining relation acting nonzero, if any."""
        A = self.algebra
        q = A.quiver
        p = A.p
        for r in A.minimal_relations:
            t, h = r.tail, r.head
            acc = np.zeros((self.dims[h], self.dims[t]), dtype=np.int64)
            for c, w in r.terms:
                acc = (acc + int(c) * self.word_action(w)) % p
            if acc.any():
                return r.to_relation(q, p)
        if A.relations:
            # relations may leave long paths alive only through truncation
            for w in q.paths(A.nilpotency):
                if self.word_action(w).any():
                    return "*".join(q.arrows[a].name for a in w)
        return None

    # -- basic structure -----------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "algebra_hash": A.fingerprint,
            "dims": list(self.dims),
            "maps": {
                arr.name: [[linalg.symmetric(int(x), A.p) for x in row] for row in m]
                for arr, m in zip(A.quiver.arrows, self.maps)
            },
        }

    @classmethod
    def from_json(cls, A: AlgebraModel, data: dict | str) -> "Representation":
        if isinstance(data, str):
            data = json.loads(data)
        dims = tuple(data["dims"])
        maps = []
        for arr in A.quiver.arrows:
            m = np.array(data["maps"].get(arr.name, []), dtype=np.int64)
            maps.append(m.reshape(dims[arr.head], dims[arr.tail]))
        return cls(A, dims, tuple(maps))


# ---------------------------------------------------------------------------
# constructors


def zero_rep(A: AlgebraModel) -> Representation:
    return Representation(A, (0,) * A.n, tuple(np.zeros((0, 0), dtype=np.int64) for _ in A.quiver.arrows))


def simple(A: AlgebraModel, v: int) -> Representation:
    dims = tuple(int(w == v) for w in range(A.n))
    maps = tuple(np.zeros((dims[a.head], dims[a.tail]), dtype=np.int64) for a in A.quiver.arrows)
    return Representation(A, dims, maps)


def _rep_of_projectives(A: AlgebraModel, X: Sequence[int]) -> Representation:
    pb = _proj.ProjBasis(A, tuple(X))
    return Representation(A, tuple(pb.dims()), tuple(_proj.proj_arrow_maps(A, tuple(X))))


def projective_rep(A: AlgebraModel, v: int) -> Representation:
    """``P_v`` with the basis of paths starting at v."""
    return _rep_of_projectives(A, (v,))


def injective(A: AlgebraModel, v: int) -> Representation:
    """``I_v``: the dual of the paths ending at v, arrows acting by transposes."""
    dims = tuple(len(A.elems(v, w)) for w in range(A.n))
    maps = []
    for a, arr in enumerate(A.quiver.arrows):
        rm = A.right_mul_vec(A.arrow_vec[a])  # column y -> y·a
        src = A.elems(v, arr.tail)
        dst = A.elems(v, arr.head)
        maps.append(rm[np.ix_(src, dst)].T.copy())
    return Representation(A, dims, tuple(maps))


def direct_sum(*reps: Representation) -> Representation:
    A = reps[0].algebra
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(A.n))
    maps = tuple(linalg.block_diag([r.maps[a] for r in reps]) for a in range(len(A.quiver.arrows)))
    return Representation(A, dims, maps)


def dual(M: Representation, target: AlgebraModel | None = None) -> Representation:
    """The k-dual, a representation of the opposite algebra (or of ``target``,
    which must have the reversed quiver)."""
    op = target if target is not None else M.algebra.opposite()
    return Representation(op, M.dims, tuple(m.T.copy() for m in M.maps))


def random_rep(A: AlgebraModel, dims: Sequence[int], rng: np.random.Generator) -> Representation:
    """Entrywise uniform matrices; only meaningful without relations."""
    if not A.is_path_algebra():
        raise HasRelations("uniform matrices do not satisfy relations; use random_module")
    maps = tuple(linalg.random_mat(rng, dims[a.head], dims[a.tail], A.p) for a in A.quiver.arrows)
    return Representation(A, tuple(dims), maps)


def random_module(A: AlgebraModel, rng: np.random.Generator, delta: Sequence[int] | None = None,
                  size: int = 2) -> Representation:
    """Cokernel of a random presentation; works with relations."""
    if delta is None:
        delta = tuple(int(x) for x in rng.integers(-size, size + 1, size=A.n))
    return cokernel(present.sample(A, delta, rng))


# ---------------------------------------------------------------------------
# cokernels and presentations


def _quotient(m: np.ndarray, n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Complement inclusion ``s`` and projection ``q`` for ``k^n / Im m``."""
    if m.shape[1] == 0:
        eye = np.eye(n, dtype=np.int64)
        return eye, eye
    comp = linalg.image_complement(m, p)  # rows = unit vectors
    img = linalg.row_space(m.T, p)
    basis = np.concatenate([img, comp], axis=0).T
    inv = linalg.inverse(basis, p)
    return comp.T.copy(), inv[img.shape[0] :].copy()


def cokernel(f: Presentation) -> Representation:
    """``Coker f`` with the basis given by unit vectors outside the image."""
    A = f.algebra
    p = A.p
    pb = _proj.ProjBasis(A, f.P0)
    arrows = _proj.proj_arrow_maps(A, f.P0)
    vm = f.vertex_maps
    sq = [_quotient(vm[w], len(pb.at[w]), p) for w in range(A.n)]
    dims = tuple(s.shape[1] for s, _ in sq)
    maps = []
    for a, arr in enumerate(A.quiver.arrows):
        s = sq[arr.tail][0]
        q = sq[arr.head][1]
        maps.append(linalg.chain([q, arrows[a], s], p, 0))
    return Representation(A, dims, tuple(maps))


def _phi(M: Representation, v: int) -> np.ndarray:
    """``⊕_{ha=v} M(ta) → M(v)``, blocks in arrow order."""
    blocks = [M.maps[a] for a, arr in enumerate(M.algebra.quiver.arrows) if arr.head == v]
    if not blocks:
        return np.zeros((M.dims[v], 0), dtype=np.int64)
    return np.concatenate(blocks, axis=1)


def _psi(M: Representation, v: int) -> np.ndarray:
    """``⊕_{r: hr=v} M(tr) → ⊕_{ha=v} M(ta)`` from the leftmost arrows of Q₂."""
    A = M.algebra
    p = A.p
    into = [a for a, arr in enumerate(A.quiver.arrows) if arr.head == v]
    offs = np.cumsum([0] + [M.dims[A.quiver.arrows[a].tail] for a in into])
    rels = [r for r in A.minimal_relations if r.head == v]
    cols = [M.dims[r.tail] for r in rels]
    out = np.zeros((int(offs[-1]), sum(cols)), dtype=np.int64)
    c0 = 0
    for r, width in zip(rels, cols):
        for c, w in r.terms:
            k = into.index(w[0])
            rest = M.word_action(w[1:]) if len(w) > 1 else np.eye(width, dtype=np.int64)
            blk = out[offs[k] : offs[k + 1], c0 : c0 + width]
            out[offs[k] : offs[k + 1], c0 : c0 + width] = (blk + int(c) * rest) % p
        c0 += width
    return out


@dataclass(frozen=True)
class BettiPair:
    beta0: tuple[int, ...]
    beta1: tuple[int, ...]


def betti(M: Representation) -> BettiPair:
    """Betti vectors read off the φ/ψ complex at each vertex."""
    p = M.algebra.p
    b0, b1 = [], []
    for v in range(M.algebra.n):
        phi = _phi(M, v)
        rk = linalg.rank(phi, p)
        b0.append(M.dims[v] - rk)
        b1.append(phi.shape[1] - rk - linalg.rank(_psi(M, v), p))
    return BettiPair(tuple(b0), tuple(b1))


def _cover(M: Representation) -> tuple[list[int], list[np.ndarray]]:
    """Vertices and vectors lifting a basis of the top of M."""
    P0, gens = [], []
    for v in range(M.algebra.n):
        for vec in linalg.image_complement(_phi(M, v), M.algebra.p):
            P0.append(v)
            gens.append(vec)
    return P0, gens


def _cover_maps(M: Representation, P0: Sequence[int], gens: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Per-vertex matrices ``P(P0)(w) → M(w)`` sending ``e_v`` on summand k to ``gens[k]``."""
    A = M.algebra
    p = A.p
    pb = _proj.ProjBasis(A, tuple(P0))
    out = []
    for w in range(A.n):
        m = np.zeros((M.dims[w], len(pb.at[w])), dtype=np.int64)
        for col, (k, b) in enumerate(pb.at[w]):
            m[:, col] = linalg.matmul(M.basis_action(b), gens[k].reshape(-1, 1), p).reshape(-1)
        out.append(m)
    return out


def minimal_presentation(M: Representation) -> Presentation:
    """Projective cover of M followed by the projective cover of its kernel."""
    A = M.algebra
    P0, gens = _cover(M)
    pb = _proj.ProjBasis(A, tuple(P0))
    cov = _cover_maps(M, P0, gens)
    ker = []
    for w in range(A.n):
        n = len(pb.at[w])
        ker.append(linalg.nullspace(cov[w], A.p) if n else np.zeros((0, 0), dtype=np.int64))
        if ker[-1].shape[1] != n:
            ker[-1] = np.zeros((0, n), dtype=np.int64)
    P1, rows = _proj.top_generators(A, P0, ker)
    F = _proj.zeros(A, len(P1), len(P0))
    for j, (w, vec) in enumerate(zip(P1, rows)):
        F[j] = pb.element_to_row(w, vec)
    return Presentation(A, tuple(P1), tuple(P0), F)


def canonical_presentation(M: Representation) -> Presentation:
    """``⊕_a P_{ha} ⊗ M(ta) → ⊕_v P_v ⊗ M(v)``, the start of the standard resolution."""
    A = M.algebra
    p = A.p
    P0 = [v for v in range(A.n) for _ in range(M.dims[v])]
    off0 = np.cumsum([0] + list(M.dims))
    P1, src = [], []
    for a, arr in enumerate(A.quiver.arrows):
        for k in range(M.dims[arr.tail]):
            P1.append(arr.head)
            src.append((a, k))
    F = _proj.zeros(A, len(P1), len(P0))
    for j, (a, k) in enumerate(src):
        arr = A.quiver.arrows[a]
        F[j, off0[arr.tail] + k] = A.arrow_vec[a]
        e = A.idempotent(arr.head)
        for l in range(M.dims[arr.head]):
            F[j, off0[arr.head] + l, e] = (F[j, off0[arr.head] + l, e] - M.maps[a][l, k]) % p
    return Presentation(A, tuple(P1), tuple(P0), F)


# ---------------------------------------------------------------------------
# Hom and Ext


def _vec_map(L: np.ndarray, R: np.ndarray, p: int) -> np.ndarray:
    """Matrix of ``X ↦ L X R`` on row-major vectorizations."""
    return np.kron(L % p, R.T % p) % p


def _hom_complex(M: Representation, N: Representation) -> tuple[np.ndarray, np.ndarray]:
    """The maps d0, d1 of Hom(canonical resolution of M, N)."""
    A = M.algebra
    p = A.p
    q = A.quiver
    c0 = [N.dims[v] * M.dims[v] for v in range(A.n)]
    o0 = np.cumsum([0] + c0)
    c1 = [N.dims[arr.head] * M.dims[arr.tail] for arr in q.arrows]
    o1 = np.cumsum([0] + c1)
    rels = A.minimal_relations
    c2 = [N.dims[r.head] * M.dims[r.tail] for r in rels]
    o2 = np.cumsum([0] + c2)
    d0 = np.zeros((int(o1[-1]), int(o0[-1])), dtype=np.int64)
    for a, arr in enumerate(q.arrows):
        t, h = arr.tail, arr.head
        blk = _vec_map(N.maps[a], np.eye(M.dims[t], dtype=np.int64), p)
        d0[o1[a] : o1[a + 1], o0[t] : o0[t + 1]] += blk
        blk = _vec_map(np.eye(N.dims[h], dtype=np.int64), M.maps[a], p)
        d0[o1[a] : o1[a + 1], o0[h] : o0[h + 1]] -= blk
    d0 %= p
    d1 = np.zeros((int(o2[-1]), int(o1[-1])), dtype=np.int64)
    for ri, r in enumerate(rels):
        for c, w in r.terms:
            for i, a in enumerate(w):
                arr = q.arrows[a]
                left = N.word_action(w[:i]) if i else np.eye(N.dims[r.head], dtype=np.int64)
                right = M.word_action(w[i + 1 :]) if i + 1 < len(w) else np.eye(M.dims[r.tail], dtype=np.int64)
                blk = _vec_map(left, right, p)
                sl = d1[o2[ri] : o2[ri + 1], o1[a] : o1[a + 1]]
                d1[o2[ri] : o2[ri + 1], o1[a] : o1[a + 1]] = (sl + int(c) * blk) % p
    return d0, d1


def hom_dim(M: Representation, N: Representation) -> int:
    d0, _ = _hom_complex(M, N)
    return d0.shape[1] - linalg.rank(d0, M.algebra.p)


def ext1_dim(M: Representation, N: Representation) -> int:
    """``dim Ext¹(M, N)`` as the middle homology of Hom(resolution, N)."""
    p = M.algebra.p
    d0, d1 = _hom_complex(M, N)
    return d1.shape[1] - linalg.rank(d1, p) - linalg.rank(d0, p)


def hom_basis(M: Representation, N: Representation) -> list[list[np.ndarray]]:
    """Basis of Hom(M, N), each element as per-vertex matrices."""
    A = M.algebra
    d0, _ = _hom_complex(M, N)
    out = []
    if d0.shape[1] == 0:
        return out
    ker = linalg.nullspace(d0, A.p) if d0.shape[0] else np.eye(d0.shape[1], dtype=np.int64)
    offs = np.cumsum([0] + [N.dims[v] * M.dims[v] for v in range(A.n)])
    for vec in ker:
        out.append([vec[offs[v] : offs[v + 1]].reshape(N.dims[v], M.dims[v]) for v in range(A.n)])
    return out


def find_isomorphism(M: Representation, N: Representation, rng: np.random.Generator | None = None,
                     trials: int = 3) -> list[np.ndarray] | None:
    """An explicit isomorphism found as a random element of Hom(M, N), or None."""
    if M.dims != N.dims:
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    p = M.algebra.p
    basis = hom_basis(M, N)
    if not basis:
        return [np.zeros((0, 0), dtype=np.int64)] * M.algebra.n if M.is_zero() else None
    for _ in range(trials):
        c = rng.integers(0, p, size=len(basis))
        phi = [linalg.lincomb(c, [b[v] for b in basis], p) for v in range(M.algebra.n)]
        if all(linalg.rank(m, p) == m.shape[0] for m in phi):
            return phi
    return None


def is_isomorphic(M: Representation, N: Representation, rng: np.random.Generator | None = None) -> bool:
    return find_isomorphism(M, N, rng) is not None


def generic_hom_ext(A: AlgebraModel, alpha: Sequence[int], beta: Sequence[int], trials: int = 3,
                    rng: np.random.Generator | None = None) -> tuple[int, int]:
    """Minimum of ``(dim Hom, dim Ext¹)`` over independent pairs of random representations."""
    if not A.is_path_algebra():
        raise HasRelations("generic hom/ext sampling needs a path algebra")
    rng = rng if rng is not None else np.random.default_rng(0)
    vals = []
    for _ in range(max(1, trials)):
        M = random_rep(A, alpha, rng)
        N = random_rep(A, beta, rng)
        vals.append((hom_dim(M, N), ext1_dim(M, N)))
    return min(vals)

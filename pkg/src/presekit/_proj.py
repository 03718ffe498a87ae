"""Matrices over A and the k-linear spaces they act on.

An *A-matrix* is an int64 array of shape ``(rows, cols, dim A)`` whose entry
``F[j, i]`` lies in ``e_{X_j} A e_{Y_i}`` and describes a map
``P(X) → P(Y)``, ``x ↦ x·F`` (right multiplication, row = domain summand).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import AlgebraModel

VList = tuple[int, ...]


def zeros(A: AlgebraModel, rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols, A.dim), dtype=np.int64)


def amatmul(A: AlgebraModel, F: np.ndarray, G: np.ndarray) -> np.ndarray:
    """Product of A-matrices: the composite ``x ↦ (x·F)·G``."""
    n, m, d = F.shape
    r = G.shape[1]
    if n == 0 or r == 0 or m == 0:
        return np.zeros((n, r, d), dtype=np.int64)
    p = A.p
    m1 = linalg.matmul(F.reshape(n * m, d), A.T.reshape(d, d * d), p).reshape(n, m, d, d)
    lhs = m1.transpose(0, 3, 1, 2).reshape(n * d, m * d)
    rhs = G.transpose(0, 2, 1).reshape(m * d, r)
    return linalg.matmul(lhs, rhs, p).reshape(n, d, r).transpose(0, 2, 1).copy()


def _left_tensor(A: AlgebraModel, F: np.ndarray) -> np.ndarray:
    """``out[j, k, b, c]``: coefficient of c in ``F[j, k] · basis_b``."""
    n, m, d = F.shape
    if n * m == 0:
        return np.zeros((n, m, d, d), dtype=np.int64)
    return linalg.matmul(F.reshape(n * m, d), A.T.reshape(d, d * d), A.p).reshape(n, m, d, d)


def _right_tensor(A: AlgebraModel, F: np.ndarray) -> np.ndarray:
    """``out[i, i2, b, c]``: coefficient of c in ``basis_b · F[i, i2]``."""
    n, m, d = F.shape
    if n * m == 0:
        return np.zeros((n, m, d, d), dtype=np.int64)
    tt = np.ascontiguousarray(A.T.transpose(1, 0, 2)).reshape(d, d * d)
    return linalg.matmul(F.reshape(n * m, d), tt, A.p).reshape(n, m, d, d)


class HomSpace:
    """The k-space ``Hom_A(P(X), P(Y)) = ⊕_{k,i} e_{X_k} A e_{Y_i}``."""

    def __init__(self, A: AlgebraModel, X: Sequence[int], Y: Sequence[int]):
        self.A = A
        self.X = tuple(X)
        self.Y = tuple(Y)
        self.blocks: dict[tuple[int, int], tuple[int, np.ndarray]] = {}
        off = 0
        for k, x in enumerate(self.X):
            for i, y in enumerate(self.Y):
                idx = A.elems(x, y)
                self.blocks[(k, i)] = (off, idx)
                off += len(idx)
        self.dim = off
        # flat positions in the (X, Y, dim A) array, in coordinate order
        d = A.dim
        self._flat = np.concatenate(
            [(k * len(self.Y) + i) * d + np.asarray(idx, dtype=np.int64)
             for (k, i), (_, idx) in self.blocks.items()] or [np.zeros(0, dtype=np.int64)])
        # per coordinate: source summand, target summand, basis element
        self.ck, rest = np.divmod(self._flat, len(self.Y) * d) if self.Y else (self._flat, self._flat)
        self.ci, self.cb = np.divmod(rest, d)

    def to_amatrix(self, vec: np.ndarray) -> np.ndarray:
        out = zeros(self.A, len(self.X), len(self.Y))
        out.reshape(-1)[self._flat] = vec[: self.dim]
        return out

    def from_amatrix(self, F: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(F).reshape(-1)[self._flat].astype(np.int64)

    def random(self, rng: np.random.Generator) -> np.ndarray:
        return self.to_amatrix(rng.integers(0, self.A.p, size=self.dim, dtype=np.int64))


@lru_cache(maxsize=8192)
def hom_space(A: AlgebraModel, X: VList, Y: VList) -> HomSpace:
    return HomSpace(A, X, Y)


def left_compose(A: AlgebraModel, F: np.ndarray, Z: VList, X: VList, Y: VList) -> np.ndarray:
    """Matrix of ``G ↦ F·G`` from ``Hom(P(X),P(Y))`` to ``Hom(P(Z),P(Y))``."""
    src = hom_space(A, tuple(X), tuple(Y))
    dst = hom_space(A, tuple(Z), tuple(Y))
    if src.dim == 0 or dst.dim == 0:
        return np.zeros((dst.dim, src.dim), dtype=np.int64)
    m1 = _left_tensor(A, F)
    out = m1[dst.ck[:, None], src.ck[None, :], src.cb[None, :], dst.cb[:, None]]
    out[dst.ci[:, None] != src.ci[None, :]] = 0
    return out


def right_compose(A: AlgebraModel, F: np.ndarray, X: VList, Y: VList, W: VList) -> np.ndarray:
    """Matrix of ``G ↦ G·F`` from ``Hom(P(X),P(Y))`` to ``Hom(P(X),P(W))``."""
    src = hom_space(A, tuple(X), tuple(Y))
    dst = hom_space(A, tuple(X), tuple(W))
    if src.dim == 0 or dst.dim == 0:
        return np.zeros((dst.dim, src.dim), dtype=np.int64)
    w1 = _right_tensor(A, F)
    out = w1[src.ci[None, :], dst.ci[:, None], src.cb[None, :], dst.cb[:, None]]
    out[dst.ck[:, None] != src.ck[None, :]] = 0
    return out


# ---------------------------------------------------------------------------
# projective modules as vertex-graded k-spaces


class ProjBasis:
    """k-basis of ``P(X)`` at each vertex: pairs (summand, basis path)."""

    def __init__(self, A: AlgebraModel, X: Sequence[int]):
        self.A = A
        self.X = tuple(X)
        self.at: list[list[tuple[int, int]]] = []
        for w in range(A.n):
            self.at.append([(k, int(b)) for k, x in enumerate(self.X) for b in A.elems(w, x)])
        self.pos = [{kb: i for i, kb in enumerate(lst)} for lst in self.at]
        self.index = [(np.array([k for k, _ in lst], dtype=np.intp), np.array([b for _, b in lst], dtype=np.intp))
                      for lst in self.at]

    def dims(self) -> list[int]:
        return [len(lst) for lst in self.at]

    def element_to_row(self, w: int, vec: np.ndarray) -> np.ndarray:
        """Coordinates at vertex w ↦ A-matrix row (one entry per summand)."""
        row = zeros(self.A, 1, len(self.X))[0]
        for c, (k, b) in zip(vec, self.at[w]):
            row[k, b] = c
        return row

    def row_to_element(self, w: int, row: np.ndarray) -> np.ndarray:
        return np.array([row[k, b] for k, b in self.at[w]], dtype=np.int64)


@lru_cache(maxsize=None)
def _arrow_left(A: AlgebraModel, a: int) -> np.ndarray:
    return A.left_mul_vec(A.arrow_vec[a])


def proj_arrow_maps(A: AlgebraModel, X: VList) -> list[np.ndarray]:
    """Matrices of the arrows acting on ``P(X)`` by left multiplication."""
    pb = ProjBasis(A, X)
    out = []
    for a, arr in enumerate(A.quiver.arrows):
        lm = _arrow_left(A, a)
        src = pb.at[arr.tail]
        dst = pb.pos[arr.head]
        m = np.zeros((len(pb.at[arr.head]), len(src)), dtype=np.int64)
        for col, (k, b) in enumerate(src):
            img = lm[:, b]
            for c in np.flatnonzero(img):
                m[dst[(k, int(c))], col] = img[c]
        out.append(m)
    return out


@lru_cache(maxsize=4096)
def proj_basis(A: AlgebraModel, X: VList) -> ProjBasis:
    return ProjBasis(A, X)


def vertex_maps(A: AlgebraModel, F: np.ndarray, X: VList, Y: VList) -> list[np.ndarray]:
    """The k-linear components ``P(X)(w) → P(Y)(w)`` of ``x ↦ x·F``."""
    sb = proj_basis(A, tuple(X))
    tb = proj_basis(A, tuple(Y))
    w1 = _right_tensor(A, F)
    out = []
    for w in range(A.n):
        (sk, sp), (tk, tp) = sb.index[w], tb.index[w]
        if len(sk) == 0 or len(tk) == 0:
            out.append(np.zeros((len(tk), len(sk)), dtype=np.int64))
        else:
            out.append(w1[sk[None, :], tk[:, None], sp[None, :], tp[:, None]])
    return out


def top_generators(A: AlgebraModel, X: Sequence[int], sub: list[np.ndarray]) -> tuple[list[int], list[np.ndarray]]:
    """Generators of a submodule of ``P(X)`` given by per-vertex row bases."""
    p = A.p
    arrows = proj_arrow_maps(A, tuple(X))
    verts, gens = [], []
    for w in range(A.n):
        if sub[w].shape[0] == 0:
            continue
        rad = [linalg.matmul(arrows[a], sub[arr.tail].T, p).T
               for a, arr in enumerate(A.quiver.arrows) if arr.head == w and sub[arr.tail].shape[0]]
        span = np.concatenate(rad, axis=0) if rad else np.zeros((0, sub[w].shape[1]), dtype=np.int64)
        rk = linalg.rank(span, p) if span.shape[0] else 0
        for vec in sub[w]:
            trial = np.concatenate([span, vec.reshape(1, -1)], axis=0)
            r2 = linalg.rank(trial, p)
            if r2 > rk:
                span, rk = trial, r2
                verts.append(w)
                gens.append(vec)
    return verts, gens

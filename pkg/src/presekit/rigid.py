"""Rigid presentations: completions, complements, mutation and the exchange graph.

Completions are mapping cones built from a basis of ``E(f, A)`` (positive
side) or of ``Hom(A, f)`` in the homotopy category (negative side).
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import sympy

from . import _proj, decomp, linalg, present
from .algebra import AlgebraModel, Quiver, Relation, build_algebra
from .errors import NotAlmostComplete, NotRigid
from .present import Presentation

Delta = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class RigidCollection:
    """Pairwise non-isomorphic indecomposable rigid presentations with vanishing mutual E."""

    items: tuple[Presentation, ...]

    @property
    def key(self) -> tuple[Delta, ...]:
        return tuple(sorted(f.delta for f in self.items))

    @property
    def algebra(self) -> AlgebraModel:
        return self.items[0].algebra

    def __len__(self) -> int:
        return len(self.items)

    def direct_sum(self) -> Presentation:
        return present.direct_sum(*self.items)

    def is_rigid(self) -> bool:
        return all(present.dim_E(x, y) == 0 for x in self.items for y in self.items)

    def without(self, k: int) -> "RigidCollection":
        return RigidCollection(self.items[:k] + self.items[k + 1 :])

    def __repr__(self) -> str:
        return f"RigidCollection({list(self.key)})"


def _require_rigid(f: Presentation) -> None:
    if not present.is_rigid(f):
        raise NotRigid(f"presentation with delta {f.delta} is not rigid")


def _indecomposables(f: Presentation, rng: np.random.Generator) -> list[Presentation]:
    rep = decomp.decompose(f, rng=rng, descend=True)
    return [g for g, _ in rep.summands]


def _union(groups: Sequence[Sequence[Presentation]], rng: np.random.Generator) -> RigidCollection:
    out: list[Presentation] = []
    for grp in groups:
        for g in grp:
            if not any(h.delta == g.delta and decomp.iso_test(h, g, decomp.MERGE_TRIALS, rng) for h in out):
                out.append(g)
    out.sort(key=lambda g: g.delta)
    return RigidCollection(tuple(out))


def _radical_maps(f: Presentation, g: Presentation, same: bool, pick):
    """Chain maps f → g lying in the radical: all of them between distinct items,
    the trace-zero ones on a single item."""
    maps = present.chain_maps(f, g)
    if not same or not maps:
        return [pick(m) for m in maps]
    A = f.algebra
    p = A.p
    tr = np.array([[sum(int(np.trace(b)) for b in decomp._vertex_blocks(f, *m)) % p] for m in maps], dtype=np.int64)
    null = linalg.nullspace(tr.T, p)
    return [pick(decomp._combine(maps, c, p)) for c in null]


def _approximation(items: Sequence[Presentation], positive: bool) -> list[tuple[int, np.ndarray]]:
    """Generators ``(item, map)`` of a minimal approximation by sums of items.

    For the positive side the space is ``E(f_i, A) = Hom(P1_i, A)`` modulo
    ``f_i``; for the negative side it is ``Hom(A, P0_i)`` modulo ``f_i``.
    Generators form a basis of this space modulo its radical part, the maps
    reached through radical chain maps between items.
    """
    A = items[0].algebra
    p = A.p
    reg = tuple(range(A.n))
    homs, images = [], []
    for f in items:
        if positive:
            homs.append(_proj.hom_space(A, tuple(f.P1), reg))
            images.append(_proj.left_compose(A, f.F, f.P1, f.P0, reg))
        else:
            homs.append(_proj.hom_space(A, reg, tuple(f.P0)))
            images.append(_proj.right_compose(A, f.F, reg, f.P1, f.P0))
    offsets = np.cumsum([0] + [h.dim for h in homs])
    total = int(offsets[-1])
    if total == 0:
        return []

    def embed(j: int, vec: np.ndarray) -> np.ndarray:
        out = np.zeros(total, dtype=np.int64)
        out[offsets[j] : offsets[j + 1]] = vec
        return out

    span = [embed(j, col) for j, m in enumerate(images) for col in m.T]
    for i, f in enumerate(items):
        if not homs[i].dim:
            continue
        Ms = [homs[i].to_amatrix(v) for v in np.eye(homs[i].dim, dtype=np.int64)]
        for j, g in enumerate(items):
            if not homs[j].dim:
                continue
            if positive:
                # g_i ∈ Hom(P1_i, A) precomposed with u1: P1_j → P1_i
                for u in _radical_maps(g, f, i == j, lambda m: m[0]):
                    span.extend(embed(j, homs[j].from_amatrix(_proj.amatmul(A, u, G))) for G in Ms)
            else:
                for u in _radical_maps(f, g, i == j, lambda m: m[1]):
                    span.extend(embed(j, homs[j].from_amatrix(_proj.amatmul(A, G, u))) for G in Ms)
    cols = np.array(span, dtype=np.int64).T if span else np.zeros((total, 0), dtype=np.int64)
    out = []
    for v in linalg.image_complement(cols, p):
        i = int(np.searchsorted(offsets, int(np.argmax(v)), side="right")) - 1
        out.append((i, homs[i].to_amatrix(v[offsets[i] : offsets[i + 1]])))
    return out


def positive_cone(f: Presentation, items: Sequence[Presentation] | None = None) -> Presentation:
    """``[⊕ P1_k → ⊕ P0_k ⊕ A]``, ``x ↦ (−f_k(x), g_k(x))``.

    ``items`` is a decomposition of f; the ``g_k ∈ E(f_k, A)`` form a right
    approximation of ``A[1]`` by sums of items.
    """
    items = list(items) if items else [f]
    A = f.algebra
    p = A.p
    reg = tuple(range(A.n))
    gens = _approximation(items, positive=True)
    P1 = tuple(v for k, _ in gens for v in items[k].P1)
    P0 = tuple(v for k, _ in gens for v in items[k].P0) + reg
    F = _proj.zeros(A, len(P1), len(P0))
    r = c = 0
    for k, g in gens:
        h = items[k]
        F[r : r + len(h.P1), c : c + len(h.P0)] = (-h.F) % p
        F[r : r + len(h.P1), len(P0) - A.n :] = g
        r, c = r + len(h.P1), c + len(h.P0)
    return Presentation(A, P1, P0, F)


def negative_cone(f: Presentation, items: Sequence[Presentation] | None = None) -> Presentation:
    """``[A ⊕ ⊕ P1_k → ⊕ P0_k]`` from generators ``c_k`` of ``Hom(A, P0_k)`` modulo ``f_k``."""
    items = list(items) if items else [f]
    A = f.algebra
    gens = _approximation(items, positive=False)
    P1 = tuple(range(A.n)) + tuple(v for k, _ in gens for v in items[k].P1)
    P0 = tuple(v for k, _ in gens for v in items[k].P0)
    F = _proj.zeros(A, len(P1), len(P0))
    r, c = A.n, 0
    for k, g in gens:
        h = items[k]
        F[: A.n, c : c + len(h.P0)] = g
        F[r : r + len(h.P1), c : c + len(h.P0)] = h.F
        r, c = r + len(h.P1), c + len(h.P0)
    return Presentation(A, P1, P0, F)


def _isotypic_summand(rest: Presentation, rng: np.random.Generator) -> Presentation | None:
    """X when ``rest ≅ X^k`` with X rigid indecomposable.

    Rigid indecomposables have primitive δ (the δ's of a maximal rigid
    collection form a Z-basis), so k is the gcd of δ(rest) and X is the
    general presentation of the quotient.
    """
    g = math.gcd(*rest.delta)
    Y = present.minimize(present.sample(rest.algebra, tuple(x // g for x in rest.delta), rng))
    if not present.is_rigid(Y) or not decomp.is_indecomposable(Y, rng=rng):
        return None
    left, (m,) = decomp.split_off(rest, [Y])
    return Y if m == g and left.is_zero() else None


def _complete(parts: Sequence[Presentation], positive: bool, rng: np.random.Generator) -> RigidCollection:
    f = present.direct_sum(*parts)
    cone = positive_cone(f, parts) if positive else negative_cone(f, parts)
    rest, _ = decomp.split_off(present.minimize(cone), parts)
    if rest.is_zero():
        return _union([parts], rng)
    X = _isotypic_summand(rest, rng)
    return _union([parts, [X] if X is not None else _indecomposables(rest, rng)], rng)


def completion_pos(f: Presentation, rng: np.random.Generator | None = None) -> RigidCollection:
    """``Ind(f) ∪ Ind(f⁺)``: a maximal rigid collection containing the summands of f."""
    rng = rng if rng is not None else np.random.default_rng(0)
    _require_rigid(f)
    return _complete(_indecomposables(f, rng), True, rng)


def completion_neg(f: Presentation, rng: np.random.Generator | None = None) -> RigidCollection:
    rng = rng if rng is not None else np.random.default_rng(0)
    _require_rigid(f)
    return _complete(_indecomposables(f, rng), False, rng)


def is_maximal(c: RigidCollection) -> bool:
    return len(c) == c.algebra.n


def _int_rank(rows: Sequence[Delta]) -> int:
    return sympy.Matrix(rows).rank() if rows else 0


def hyperplane_normal(deltas: Sequence[Delta]) -> tuple[int, ...]:
    """Primitive integer normal of the hyperplane spanned by n−1 independent δ's."""
    m = sympy.Matrix(deltas)
    (v,) = m.nullspace()
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v])
    ints = [int(x * den) for x in v]
    g = int(sympy.igcd(*ints))
    return tuple(x // g for x in ints)


@dataclass(frozen=True, eq=False)
class Complements:
    plus: Presentation
    minus: Presentation
    normal: tuple[int, ...]
    d: int
    e_plus_minus: int

    def to_json(self) -> dict:
        return {
            "plus": list(self.plus.delta),
            "minus": list(self.minus.delta),
            "normal": list(self.normal),
            "d": self.d,
            "e_plus_minus": self.e_plus_minus,
        }


def _new_item(full: RigidCollection, old: RigidCollection, rng) -> Presentation:
    fresh = [g for g in full.items
             if not any(h.delta == g.delta and decomp.iso_test(h, g, decomp.MERGE_TRIALS, rng) for h in old.items)]
    if len(fresh) != 1:
        raise ArithmeticError(f"completion added {len(fresh)} items instead of one")
    return fresh[0]


def complements(c: RigidCollection, rng: np.random.Generator | None = None) -> Complements:
    """The two completions of an almost complete rigid collection, oriented by the normal."""
    rng = rng if rng is not None else np.random.default_rng(0)
    A = c.algebra
    if len(c) != A.n - 1:
        raise NotAlmostComplete(f"need {A.n - 1} items, got {len(c)}")
    deltas = [f.delta for f in c.items]
    if _int_rank(deltas) != A.n - 1:
        raise NotAlmostComplete("item classes are linearly dependent")
    if not c.is_rigid():
        raise NotRigid("collection is not rigid")
    plus = _new_item(_complete(c.items, True, rng), c, rng)
    minus = _new_item(_complete(c.items, False, rng), c, rng)
    nu = hyperplane_normal(deltas) if deltas else (1,)
    side = sum(a * b for a, b in zip(nu, plus.delta))
    if side < 0:
        nu = tuple(-x for x in nu)
    return Complements(plus, minus, nu, present.dim_E(minus, plus), present.dim_E(plus, minus))


def side(normal: Sequence[int], delta: Sequence[int]) -> int:
    s = sum(int(a) * int(b) for a, b in zip(normal, delta))
    return (s > 0) - (s < 0)


def mutate(c: RigidCollection, k: int, rng: np.random.Generator | None = None) -> RigidCollection:
    """Replace item k by the other complement of the remaining items."""
    rng = rng if rng is not None else np.random.default_rng(0)
    rest = c.without(k)
    comp = complements(rest, rng)
    old = c.items[k]
    if comp.plus.delta == old.delta:
        new = comp.minus
    elif comp.minus.delta == old.delta:
        new = comp.plus
    else:
        raise ArithmeticError(f"item {old.delta} is neither complement of the rest")
    items = sorted(rest.items + (new,), key=lambda g: g.delta)
    return RigidCollection(tuple(items))


def initial_cluster(A: AlgebraModel) -> RigidCollection:
    return RigidCollection(tuple(sorted((present.projective(A, v) for v in range(A.n)), key=lambda g: g.delta)))


@dataclass
class ExchangeGraph:
    nodes: list[tuple[Delta, ...]]
    edges: list[tuple[tuple[Delta, ...], tuple[Delta, ...]]]
    depth: int | None
    closed: bool

    def degree(self, key) -> int:
        return sum(key in e for e in self.edges)

    def to_json(self) -> dict:
        return {
            "nodes": [[list(d) for d in k] for k in self.nodes],
            "edges": [[[list(d) for d in a], [list(d) for d in b]] for a, b in self.edges],
            "depth": self.depth,
            "closed": self.closed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def exchange_graph(A: AlgebraModel, depth: int | None = None, rng: np.random.Generator | None = None,
                   max_nodes: int = 10_000, paranoid: bool = False) -> ExchangeGraph:
    """Breadth-first mutation from the projectives; ``depth=None`` runs until closed."""
    rng = rng if rng is not None else np.random.default_rng(0)
    start = initial_cluster(A)
    seen = {start.key: start}
    dist = {start.key: 0}
    edges = set()
    queue = deque([start.key])
    closed = True
    while queue:
        key = queue.popleft()
        if depth is not None and dist[key] >= depth:
            closed = False
            continue
        c = seen[key]
        for k in range(len(c)):
            nb = mutate(c, k, rng)
            if paranoid and nb.key in seen:
                for x, y in zip(sorted(nb.items, key=lambda g: g.delta), seen[nb.key].items):
                    if not decomp.iso_test(x, y, decomp.MERGE_TRIALS, rng):
                        raise ArithmeticError(f"two rigid objects share delta {x.delta}")
            edges.add(tuple(sorted((key, nb.key))))
            if nb.key not in seen:
                if len(seen) >= max_nodes:
                    raise RuntimeError("exchange graph exceeds max_nodes; pass a depth")
                seen[nb.key] = nb
                dist[nb.key] = dist[key] + 1
                queue.append(nb.key)
    return ExchangeGraph(sorted(seen), sorted(edges), depth, closed)


# ---------------------------------------------------------------------------
# universal regularization


def _ideal_span(A: AlgebraModel, gens: Sequence[np.ndarray]) -> np.ndarray:
    """Echelon basis of the two-sided ideal generated by ``gens``."""
    p = A.p
    heads, tails = A.heads, A.tails
    pieces = []
    for g in gens:
        for v in range(A.n):
            for w in range(A.n):
                part = np.where((heads == v) & (tails == w), g, 0) % p
                if part.any():
                    pieces.append(part)
    if not pieces:
        return np.zeros((0, A.dim), dtype=np.int64)
    span = linalg.row_space(np.array(pieces), p)
    lefts = [A.left_mul_vec(x) for x in A.arrow_vec]
    rights = [A.right_mul_vec(x) for x in A.arrow_vec]
    while True:
        new = [linalg.matmul(m, span.T, p).T for m in lefts + rights]
        grown = linalg.row_space(np.concatenate([span] + new, axis=0), p)
        if grown.shape[0] == span.shape[0]:
            return span
        span = grown


def _in_span(span: np.ndarray, vec: np.ndarray, p: int) -> bool:
    if span.shape[0] == 0:
        return not (vec % p).any()
    return linalg.rank(np.concatenate([span, vec.reshape(1, -1)]), p) == linalg.rank(span, p)


@dataclass
class QuotientMap:
    """``A → A/I`` presented on a new quiver, as a coordinate matrix."""

    source: AlgebraModel
    target: AlgebraModel
    vertex_map: dict[int, int]
    matrix: np.ndarray  # target.dim × source.dim

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return linalg.matmul(self.matrix, vec.reshape(-1, 1) % self.source.p, self.source.p).reshape(-1)


def quotient_algebra(A: AlgebraModel, ideal: np.ndarray) -> QuotientMap:
    """``A/I`` as a bound quiver algebra on the surviving vertices and arrows."""
    p = A.p
    q = A.quiver
    alive = [v for v in range(A.n) if not _in_span(ideal, _unit(A, A.idempotent(v)), p)]
    vmap = {v: i for i, v in enumerate(alive)}
    sq = np.concatenate([ideal, np.eye(A.dim, dtype=np.int64)[[i for i in range(A.dim) if A.degree(i) >= 2]]])
    sq = linalg.row_space(sq, p) if sq.shape[0] else sq
    keep = []
    for a, arr in enumerate(q.arrows):
        if arr.tail in vmap and arr.head in vmap and not _in_span(sq, A.arrow_vec[a], p):
            sq = linalg.row_space(np.concatenate([sq, A.arrow_vec[a].reshape(1, -1)]), p)
            keep.append(a)
    Q2 = Quiver(tuple(q.vertices[v] for v in alive),
                tuple(type(q.arrows[a])(q.arrows[a].name, vmap[q.arrows[a].tail], vmap[q.arrows[a].head]) for a in keep))
    L = A.nilpotency + 1
    rels = _kernel_relations(A, Q2, keep, ideal, L)
    B = build_algebra(Q2, rels, L, p)
    images = np.array([_basis_image(A, B, keep, i) for i in range(B.dim)]).reshape(B.dim, A.dim)
    full = np.concatenate([images, ideal], axis=0)
    if linalg.rank(full, p) != A.dim or images.shape[0] + ideal.shape[0] != A.dim:
        raise ArithmeticError("quotient presentation does not match the ideal")
    inv = linalg.inverse(full.T, p)
    return QuotientMap(A, B, vmap, inv[: B.dim].copy())


def _unit(A: AlgebraModel, i: int) -> np.ndarray:
    e = np.zeros(A.dim, dtype=np.int64)
    e[i] = 1
    return e


def _word_image(A: AlgebraModel, word: Sequence[int]) -> np.ndarray:
    out = A.arrow_vec[word[0]]
    for a in word[1:]:
        out = A.mul_vec(out, A.arrow_vec[a])
    return out


def _basis_image(A: AlgebraModel, B: AlgebraModel, keep: Sequence[int], i: int) -> np.ndarray:
    word = B.basis.words[i]
    if not word:
        old = A.quiver.vertex(B.quiver.vertices[B.basis.tails[i]])
        return _unit(A, A.idempotent(old))
    return _word_image(A, [keep[a] for a in word])


def _kernel_mod(imgs: np.ndarray, ideal: np.ndarray, p: int) -> np.ndarray:
    """Coefficient vectors c with ``Σ c_i imgs_i ∈ ideal``."""
    n = imgs.shape[0]
    stack = np.concatenate([imgs, ideal], axis=0).T if ideal.shape[0] else imgs.T
    ker = linalg.nullspace(stack, p)
    if ker.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    return linalg.row_space(ker[:, :n], p)


def _kernel_relations(A: AlgebraModel, Q2: Quiver, keep, ideal, L) -> list[Relation]:
    """Generators of the kernel of ``kQ' → A/I`` on paths of length 2..L.

    Homogeneous kernels are used whenever they account for the whole kernel.
    """
    p = A.p
    groups: dict[tuple[int, int], list] = {}
    for w in (w for k in range(2, L + 1) for w in Q2.paths(k)):
        groups.setdefault((Q2.tail(w), Q2.head(w)), []).append(w)
    out = []

    def emit(vecs, ws):
        for vec in vecs:
            terms = tuple((linalg.symmetric(int(c), p), tuple(Q2.arrows[a].name for a in w))
                          for c, w in zip(vec, ws) if c % p)
            out.append(Relation(terms))

    for ends in sorted(groups):
        ws = groups[ends]
        imgs = np.array([_word_image(A, [keep[a] for a in w]) for w in ws])
        total = _kernel_mod(imgs, ideal, p)
        by_len = {}
        for k in sorted({len(w) for w in ws}):
            idx = [i for i, w in enumerate(ws) if len(w) == k]
            by_len[k] = (idx, _kernel_mod(imgs[idx], ideal, p))
        if sum(kr.shape[0] for _, kr in by_len.values()) == total.shape[0]:
            for idx, kr in by_len.values():
                emit(kr, [ws[i] for i in idx])
        else:
            emit(total, ws)
    return out


def push_presentation(f: Presentation, qm: QuotientMap) -> Presentation:
    """``f ⊗ A/I``: entries projected, summands at dead vertices dropped."""
    B = qm.target
    r1 = [j for j, v in enumerate(f.P1) if v in qm.vertex_map]
    r0 = [i for i, w in enumerate(f.P0) if w in qm.vertex_map]
    F = _proj.zeros(B, len(r1), len(r0))
    for a, j in enumerate(r1):
        for b, i in enumerate(r0):
            F[a, b] = qm.apply(f.F[j, i])
    return Presentation(B, tuple(qm.vertex_map[f.P1[j]] for j in r1), tuple(qm.vertex_map[f.P0[i]] for i in r0), F)


def kernel_elements(f: Presentation) -> list[np.ndarray]:
    """Entries (one algebra element per domain summand) of a basis of Ker f."""
    A = f.algebra
    pb = _proj.ProjBasis(A, f.P1)
    out = []
    for w, m in enumerate(f.vertex_maps):
        n = len(pb.at[w])
        if n == 0:
            continue
        ker = linalg.nullspace(m, A.p) if m.shape[0] else np.eye(n, dtype=np.int64)
        for vec in ker:
            row = pb.element_to_row(w, vec)
            out.extend(row[j] for j in range(len(f.P1)) if row[j].any())
    return out


@dataclass
class Regularization:
    algebra: AlgebraModel
    presentation: Presentation
    stages: list[QuotientMap]

    def to_json(self) -> dict:
        B = self.algebra
        return {
            "vertices": list(B.quiver.vertices),
            "arrows": [[a.name, B.quiver.vertices[a.tail], B.quiver.vertices[a.head]] for a in B.quiver.arrows],
            "relations": [str(r) for r in B.relations],
            "dim": B.dim,
            "stages": len(self.stages),
            "presentation": self.presentation.to_json(),
        }


def regularize(f: Presentation, max_rounds: int = 20) -> Regularization:
    """Quotient by the ideal generated by Ker f until the induced map is injective."""
    stages = []
    for _ in range(max_rounds):
        gens = kernel_elements(f)
        if not gens:
            return Regularization(f.algebra, f, stages)
        qm = quotient_algebra(f.algebra, _ideal_span(f.algebra, gens))
        stages.append(qm)
        f = push_presentation(f, qm)
    raise RuntimeError("regularization did not stabilise")

"""Finite-dimensional algebras A = kQ/I given by a quiver with relations.

Conventions: a word ``(a1, ..., as)`` denotes the product ``a1·a2·…·as``, which
applies ``as`` first.  Its tail is ``t(as)`` and its head is ``h(a1)``.  The
subspace ``e_v A e_w`` is spanned by the paths with head ``v`` and tail ``w``,
and ``Hom(P_v, P_w) = e_v A e_w`` acting by right multiplication.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import Inadmissible, NotNilpotent
from .linalg import P_DEFAULT

_GENERIC_PATH_LIMIT = 20000


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: int
    head: int


@dataclass(frozen=True)
class Quiver:
    """Vertex names plus arrows ``(name, tail, head)`` in declaration order."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    @classmethod
    def from_names(cls, vertices: Sequence[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("vertex names must be unique")
        vidx = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, t, h in arrows:
            if t not in vidx or h not in vidx:
                raise ValueError(f"arrow {name} uses an undeclared vertex")
            out.append(Arrow(name, vidx[t], vidx[h]))
        if len({a.name for a in out}) != len(out):
            raise ValueError("arrow names must be unique")
        if set(vertices) & {a.name for a in out}:
            raise ValueError("arrow and vertex names must differ")
        return cls(vertices, tuple(out))

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, name: str) -> int:
        return self.vertices.index(name)

    def word(self, names: Sequence[str]) -> tuple[int, ...]:
        try:
            return tuple(self.arrow_index[x] for x in names)
        except KeyError as exc:
            raise Inadmissible(f"unknown arrow {exc.args[0]!r}") from None

    def composable(self, word: Sequence[int]) -> bool:
        return all(self.arrows[word[i]].tail == self.arrows[word[i + 1]].head for i in range(len(word) - 1))

    def tail(self, word: Sequence[int]) -> int:
        return self.arrows[word[-1]].tail

    def head(self, word: Sequence[int]) -> int:
        return self.arrows[word[0]].head

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.head, a.tail) for a in self.arrows))

    def has_oriented_2_cycle(self) -> bool:
        pairs = {(a.tail, a.head) for a in self.arrows if a.tail != a.head}
        return any((h, t) in pairs for t, h in pairs)

    def paths(self, length: int) -> list[tuple[int, ...]]:
        """All composable words of the given length, in lexicographic order."""
        if length == 0:
            return [()]
        out: list[tuple[int, ...]] = [(a,) for a in range(len(self.arrows))]
        for _ in range(length - 1):
            out = [(a,) + w for w in out for a in range(len(self.arrows)) if self.arrows[a].tail == self.head(w)]
            out.sort()
        return out


@dataclass(frozen=True)
class Relation:
    """A linear combination of paths: ``terms = ((coeff, (arrow names...)), ...)``."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    @classmethod
    def parse(cls, text: str) -> "Relation":
        """Parse ``"b2*a2 - 3*b1*a1"``; a leading integer factor is the coefficient."""
        src = text.replace(" ", "")
        if not src:
            raise Inadmissible("empty relation")
        if src[0] not in "+-":
            src = "+" + src
        terms = []
        i = 0
        while i < len(src):
            sign = -1 if src[i] == "-" else 1
            j = i + 1
            while j < len(src) and src[j] not in "+-":
                j += 1
            chunk = src[i + 1 : j]
            if not chunk:
                raise Inadmissible(f"malformed relation {text!r}")
            factors = chunk.split("*")
            coeff = sign
            names = []
            for k, fac in enumerate(factors):
                if fac.lstrip("-").isdigit() and k == 0:
                    coeff *= int(fac)
                elif fac and fac.isidentifier():
                    names.append(fac)
                else:
                    raise Inadmissible(f"malformed factor {fac!r} in {text!r}")
            terms.append((coeff, tuple(names)))
            i = j
        return cls(tuple(terms))

    def __str__(self) -> str:
        parts = []
        for c, names in self.terms:
            body = "*".join(names) if names else "1"
            if c == 1:
                parts.append(f"+ {body}")
            elif c == -1:
                parts.append(f"- {body}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {abs(c)}*{body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass(frozen=True)
class AlgElem:
    """Element of ``e_w A e_v``: ``source = v``, ``target = w``."""

    algebra: "AlgebraModel" = field(repr=False, compare=False)
    source: int
    target: int
    coords: tuple[int, ...]

    @property
    def vector(self) -> np.ndarray:
        out = np.zeros(self.algebra.dim, dtype=np.int64)
        out[self.algebra.elems(self.target, self.source)] = self.coords
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return self.algebra.format_vector(self.vector)


class Basis:
    """Normal-form paths: parallel arrays of words, tails and heads."""

    def __init__(self, quiver: Quiver, words: list[tuple[int, ...]], trivial: list[int]):
        # trivial paths first, one per listed vertex, then words by (length, lex)
        self.words: list[tuple[int, ...]] = [()] * len(trivial) + words
        self.tails = [v for v in trivial] + [quiver.tail(w) for w in words]
        self.heads = [v for v in trivial] + [quiver.head(w) for w in words]
        self.index = {(t, w): i for i, (t, w) in enumerate(zip(self.tails, self.words))}

    def __len__(self) -> int:
        return len(self.words)


class AlgebraModel:
    """Basis of normal-form paths together with structure constants.

    ``T[i, j, k]`` is the coefficient of basis element ``k`` in the product of
    basis elements ``i`` and ``j``.
    """

    def __init__(self, quiver: Quiver, relations: Sequence, L: int, p: int, basis: Basis, T: np.ndarray,
                 nilpotency: int):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.L = L
        self.p = p
        self.basis = basis
        self.T = T
        self.nilpotency = nilpotency
        self.dim = len(basis)
        self._elems: dict[tuple[int, int], np.ndarray] = {}
        tails = np.array(basis.tails, dtype=np.int64)
        heads = np.array(basis.heads, dtype=np.int64)
        for v in range(quiver.n):
            for w in range(quiver.n):
                self._elems[(v, w)] = np.flatnonzero((heads == v) & (tails == w))
        self.tails = tails
        self.heads = heads
        self.arrow_vec = np.zeros((len(quiver.arrows), self.dim), dtype=np.int64)
        for a in range(len(quiver.arrows)):
            self.arrow_vec[a] = self.nf_word((a,))

    # -- basic queries --------------------------------------------------------

    @property
    def n(self) -> int:
        return self.quiver.n

    def elems(self, v: int, w: int) -> np.ndarray:
        """Basis indices of ``e_v A e_w`` (head v, tail w)."""
        return self._elems[(v, w)]

    def idempotent(self, v: int) -> int:
        return self.basis.index[(v, ())]

    def paths_from(self, v: int) -> np.ndarray:
        """Basis indices of ``P_v = A e_v``."""
        return np.flatnonzero(self.tails == v)

    def paths_into(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.heads == v)

    def is_path_algebra(self) -> bool:
        return not any(True for _ in self.relations)

    def degree(self, i: int) -> int:
        return len(self.basis.words[i])

    def nf_word(self, word: Sequence[int]) -> np.ndarray:
        """Normal form of a composable word as a coordinate vector."""
        word = tuple(word)
        out = np.zeros(self.dim, dtype=np.int64)
        if not word:
            raise ValueError("use idempotent() for trivial paths")
        if not self.quiver.composable(word):
            return out
        key = (self.quiver.tail(word), word)
        if key in self.basis.index:
            out[self.basis.index[key]] = 1
            return out
        if len(word) >= self.nilpotency:
            return out
        left = self.nf_word(word[:1])
        right = self.nf_word(word[1:])
        return self.mul_vec(left, right)

    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two coordinate vectors."""
        p = self.p
        tmp = linalg.matmul(x.reshape(1, -1), self.T.reshape(self.dim, -1), p).reshape(self.dim, self.dim)
        return linalg.matmul(y.reshape(1, -1), tmp, p).reshape(-1)

    def multiply(self, a: AlgElem, b: AlgElem) -> AlgElem:
        if a.source != b.target:
            return self.element(b.source, a.target, np.zeros(self.dim, dtype=np.int64))
        return self.element(b.source, a.target, self.mul_vec(a.vector, b.vector))

    def element(self, source: int, target: int, vec: np.ndarray) -> AlgElem:
        idx = self.elems(target, source)
        return AlgElem(self, source, target, tuple(int(x) for x in np.asarray(vec)[idx] % self.p))

    def path(self, names: Sequence[str] | str) -> AlgElem:
        """Element given by a path, e.g. ``path("b1*a2")`` or a vertex name."""
        if isinstance(names, str):
            if names in self.quiver.vertices:
                v = self.quiver.vertex(names)
                vec = np.zeros(self.dim, dtype=np.int64)
                vec[self.idempotent(v)] = 1
                return self.element(v, v, vec)
            names = names.split("*")
        word = self.quiver.word(names)
        if not self.quiver.composable(word):
            raise Inadmissible(f"path {'*'.join(names)} is not composable")
        return self.element(self.quiver.tail(word), self.quiver.head(word), self.nf_word(word))

    @cached_property
    def left_mul(self) -> np.ndarray:
        """``left_mul[b] @ y`` is the coordinate vector of ``basis_b · y``."""
        return np.ascontiguousarray(np.transpose(self.T, (0, 2, 1)))

    @cached_property
    def right_mul(self) -> np.ndarray:
        """``right_mul[b] @ y`` is the coordinate vector of ``y · basis_b``."""
        return np.ascontiguousarray(np.transpose(self.T, (1, 2, 0)))

    def left_mul_vec(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y ↦ x·y`` for a coordinate vector ``x``."""
        m = linalg.matmul(x.reshape(1, -1) % self.p, self.left_mul.reshape(self.dim, -1), self.p)
        return m.reshape(self.dim, self.dim)

    def right_mul_vec(self, x: np.ndarray) -> np.ndarray:
        m = linalg.matmul(x.reshape(1, -1) % self.p, self.right_mul.reshape(self.dim, -1), self.p)
        return m.reshape(self.dim, self.dim)

    # -- invariants -----------------------------------------------------------

    def cartan_matrix(self) -> list[list[int]]:
        """Row v, column w: ``dim e_w A e_v``, the dimension vector of ``P_v``."""
        return [[len(self.elems(w, v)) for w in range(self.n)] for v in range(self.n)]

    def projective_dims(self, v: int) -> list[int]:
        return self.cartan_matrix()[v]

    def format_vector(self, vec: np.ndarray) -> str:
        parts = []
        for i in np.flatnonzero(np.asarray(vec) % self.p):
            c = linalg.symmetric(int(vec[i]), self.p)
            word = self.basis.words[i]
            name = "*".join(self.quiver.arrows[a].name for a in word) if word else "e_" + self.quiver.vertices[self.basis.tails[i]]
            parts.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(parts) if parts else "0"

    @cached_property
    def fingerprint(self) -> str:
        """Stable short hash of the defining data."""
        data = {
            "vertices": list(self.quiver.vertices),
            "arrows": [[a.name, a.tail, a.head] for a in self.quiver.arrows],
            "relations": [[[int(c) % self.p, list(w)] for c, w in r.terms] for r in self.relations],
            "p": self.p,
        }
        return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()[:16]

    def check_associative(self) -> bool:
        p = self.p
        d = self.dim
        t = self.T.reshape(d * d, d)
        # (xy)z: sum_k T[i,j,k] T[k,l,m]; x(yz): sum_k T[j,l,k] T[i,k,m]
        lhs = linalg.matmul(t, self.T.reshape(d, d * d), p).reshape(d, d, d, d)
        right = np.zeros((d, d, d, d), dtype=np.int64)
        for i in range(d):
            # x_i (y_j z_l) = sum_k T[j,l,k] T[i,k,m]
            right[i] = linalg.matmul(self.T.reshape(d * d, d), self.T[i], p).reshape(d, d, d)
        return bool(np.array_equal(lhs, right))

    def check_unit(self) -> bool:
        one = np.zeros(self.dim, dtype=np.int64)
        for v in range(self.n):
            one[self.idempotent(v)] = 1
        eye = np.eye(self.dim, dtype=np.int64)
        return bool(np.array_equal(self.left_mul_vec(one), eye) and np.array_equal(self.right_mul_vec(one), eye))

    def euler_form(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        """Ringel form of the quiver ``Σ α_v β_v − Σ_a α_ta β_ha``."""
        return sum(a * b for a, b in zip(alpha, beta)) - sum(alpha[a.tail] * beta[a.head] for a in self.quiver.arrows)

    # -- relations ------------------------------------------------------------

    @cached_property
    def minimal_relations(self) -> list["MinimalRelation"]:
        return _minimal_relations(self)

    def opposite(self) -> "AlgebraModel":
        return opposite(self)

    @cached_property
    def _op(self) -> "AlgebraModel":
        rels = [Relation(tuple((c, tuple(reversed(w))) for c, w in r.terms)) for r in self.relations]
        return build_algebra(self.quiver.opposite(), rels, self.L, self.p)

    @cached_property
    def to_opposite(self) -> np.ndarray:
        """Matrix sending A-coordinates of x to A^op-coordinates of x reversed."""
        op = self._op
        m = np.zeros((op.dim, self.dim), dtype=np.int64)
        for i, (t, w) in enumerate(zip(self.basis.tails, self.basis.words)):
            if not w:
                m[op.idempotent(t), i] = 1
            else:
                m[:, i] = op.nf_word(tuple(reversed(w)))
        return m

    def __repr__(self) -> str:
        return f"AlgebraModel(vertices={list(self.quiver.vertices)}, dim={self.dim})"


@dataclass(frozen=True)
class MinimalRelation:
    """An element of ``I`` as ``(coeff mod p, word)`` terms, with tail and head."""

    terms: tuple[tuple[int, tuple[int, ...]], ...]
    tail: int
    head: int

    def to_relation(self, quiver: Quiver, p: int) -> Relation:
        return Relation(tuple((linalg.symmetric(c, p), tuple(quiver.arrows[a].name for a in w)) for c, w in self.terms))


# ---------------------------------------------------------------------------
# construction


def _normalize(quiver: Quiver, rels: Sequence[Relation], p: int) -> list[MinimalRelation]:
    out = []
    for r in rels:
        acc: dict[tuple[int, ...], int] = {}
        for c, names in r.terms:
            w = quiver.word(names)
            if len(w) < 2:
                raise Inadmissible(f"relation {r} has a term of length < 2")
            if not quiver.composable(w):
                raise Inadmissible(f"relation {r} contains a non-composable path")
            acc[w] = (acc.get(w, 0) + int(c)) % p
        terms = tuple((c, w) for w, c in sorted(acc.items(), key=lambda t: (len(t[0]), t[0])) if c)
        if not terms:
            continue
        ends = {(quiver.tail(w), quiver.head(w)) for _, w in terms}
        if len(ends) != 1:
            raise Inadmissible(f"relation {r} is not homogeneous with respect to the vertices")
        (t, h), = ends
        out.append(MinimalRelation(terms, t, h))
    return out


def build_algebra(quiver: Quiver, rels: Sequence[Relation], L: int, p: int = P_DEFAULT) -> AlgebraModel:
    """Build ``kQ/I`` with normal forms found degree by degree.

    Raises NotNilpotent when a path of length ``L`` survives, and
    Inadmissible for malformed relations.
    """
    rels = tuple(rels)
    norm = _normalize(quiver, rels, p)
    graded = all(len({len(w) for _, w in r.terms}) == 1 for r in norm)
    if graded:
        std, nil, nf = _graded_normal_forms(quiver, norm, L, p)
    else:
        std, nil, nf = _truncated_normal_forms(quiver, norm, L, p)
    basis = Basis(quiver, std, list(range(quiver.n)))
    T = _structure_constants(quiver, basis, nf, p)
    return AlgebraModel(quiver, rels, L, p, basis, T, nil)


def _structure_constants(quiver: Quiver, basis: Basis, nf, p: int) -> np.ndarray:
    d = len(basis)
    T = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            if basis.tails[i] != basis.heads[j]:
                continue
            wi, wj = basis.words[i], basis.words[j]
            if not wi:
                T[i, j, j] = 1
            elif not wj:
                T[i, j, i] = 1
            else:
                for key, c in nf(wi + wj).items():
                    T[i, j, basis.index[key]] = c % p
    return T


def _graded_normal_forms(quiver: Quiver, rels: list[MinimalRelation], L: int, p: int):
    arrows = quiver.arrows
    std: dict[int, list[tuple[int, ...]]] = {1: [(a,) for a in range(len(arrows))]}
    red: dict[int, dict[tuple[int, ...], dict[tuple[int, ...], int]]] = {}
    memo: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    dead = [None]

    def nf_word(w: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        if len(w) == 1:
            return {w: 1}
        if dead[0] is not None and len(w) >= dead[0]:
            return {}
        if w in memo:
            return memo[w]
        rest = nf_word(w[1:])
        out: dict[tuple[int, ...], int] = {}
        table = red.get(len(w), {})
        for n, c in rest.items():
            cand = (w[0],) + n
            for s, e in table.get(cand, {cand: 1}).items():
                out[s] = (out.get(s, 0) + c * e) % p
        out = {k: v for k, v in out.items() if v}
        memo[w] = out
        return out

    if not arrows:
        dead[0] = 1
    d = 2
    while dead[0] is None:
        if d > L:
            break
        prev = std[d - 1]
        if not prev:
            dead[0] = d - 1
            break
        cands = sorted((a,) + n for n in prev for a in range(len(arrows)) if arrows[a].tail == quiver.head(n))
        col = {c: i for i, c in enumerate(reversed(cands))}
        rows = []
        for r in rels:
            k = len(r.terms[0][1])
            if k > d:
                continue
            qs = [()] if k == d else [q for q in std[d - k] if quiver.head(q) == r.tail]
            for q in qs:
                vec = np.zeros(len(cands), dtype=np.int64)
                for c, t in r.terms:
                    w = t + q
                    for n, e in nf_word(w[1:]).items():
                        vec[col[(w[0],) + n]] = (vec[col[(w[0],) + n]] + c * e) % p
                if vec.any():
                    rows.append(vec)
        table: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
        rev = list(reversed(cands))
        if rows:
            R, piv = linalg.rref(np.array(rows), p)
            pivset = set(piv.tolist())
            for i, pc in enumerate(piv):
                table[rev[pc]] = {rev[j]: (-int(R[i, j])) % p for j in range(len(rev)) if j not in pivset and R[i, j]}
            std[d] = [c for c in cands if col[c] not in pivset]
        else:
            std[d] = cands
        red[d] = table
        if not std[d]:
            dead[0] = d
        d += 1
    if dead[0] is None:
        longest = std.get(L) or std[max(std)]
        raise NotNilpotent(
            f"path {'*'.join(arrows[a].name for a in longest[0])} of length {L} does not reduce to 0; raise max_path_length"
        )
    words = [w for k in sorted(std) for w in std[k] if k < dead[0]]

    def nf(w):
        return {(quiver.tail(s), s): c for s, c in nf_word(w).items()}

    return words, dead[0], nf


def _truncated_normal_forms(quiver: Quiver, rels: list[MinimalRelation], L: int, p: int):
    """Fallback for relations mixing path lengths: reduce inside kQ/J^(L+1)."""
    paths = [w for k in range(1, L + 1) for w in quiver.paths(k)]
    if len(paths) > _GENERIC_PATH_LIMIT:
        raise NotNilpotent(f"truncated path space too large ({len(paths)} paths); lower max_path_length")
    order = sorted(paths, key=lambda w: (len(w), w), reverse=True)
    col = {w: i for i, w in enumerate(order)}
    by_head: dict[int, list[tuple[int, ...]]] = {}
    by_tail: dict[int, list[tuple[int, ...]]] = {}
    for w in paths:
        by_head.setdefault(quiver.head(w), []).append(w)
        by_tail.setdefault(quiver.tail(w), []).append(w)
    rows = []
    for r in rels:
        lefts = [()] + by_tail.get(r.head, [])
        rights = [()] + by_head.get(r.tail, [])
        for lw in lefts:
            for rw in rights:
                vec = np.zeros(len(order), dtype=np.int64)
                for c, t in r.terms:
                    w = lw + t + rw
                    if len(w) <= L:
                        vec[col[w]] = (vec[col[w]] + c) % p
                if vec.any():
                    rows.append(vec)
    piv: np.ndarray = np.zeros(0, dtype=np.int64)
    R = np.zeros((0, len(order)), dtype=np.int64)
    if rows:
        R, piv = linalg.rref(np.array(rows), p)
    pivset = set(piv.tolist())
    survivors = [w for w in paths if len(w) == L and col[w] not in pivset]
    if survivors:
        raise NotNilpotent(
            f"path {'*'.join(quiver.arrows[a].name for a in survivors[0])} of length {L} does not reduce to 0; raise max_path_length"
        )
    pivot_row = {int(pc): i for i, pc in enumerate(piv)}
    words = sorted((w for w in paths if col[w] not in pivset), key=lambda w: (len(w), w))
    nil = min([k for k in range(1, L + 1) if all(col[w] in pivset for w in quiver.paths(k))] or [L])

    def nf(w):
        if len(w) > L:
            return {}
        c = col[w]
        if c not in pivset:
            return {(quiver.tail(w), w): 1}
        i = pivot_row[c]
        return {(quiver.tail(order[j]), order[j]): (-int(R[i, j])) % p
                for j in range(len(order)) if j not in pivset and R[i, j]}

    return words, nil, nf


# ---------------------------------------------------------------------------
# minimal relations


def _minimal_relations(A: AlgebraModel) -> list[MinimalRelation]:
    """A basis of ``I/(JI+IJ)``, preferring the supplied relations."""
    q = A.quiver
    p = A.p
    N = A.nilpotency
    paths = [w for k in range(1, N + 1) for w in q.paths(k)]
    col = {w: i for i, w in enumerate(paths)}
    std_cols = {}
    for i, (t, w) in enumerate(zip(A.basis.tails, A.basis.words)):
        if w:
            std_cols[i] = col[w]

    def embed(vec: np.ndarray) -> np.ndarray:
        out = np.zeros(len(paths), dtype=np.int64)
        for i, c in std_cols.items():
            out[c] = vec[i]
        return out

    ideal = []
    for w in paths:
        v = np.zeros(len(paths), dtype=np.int64)
        v[col[w]] = 1
        v = (v - embed(A.nf_word(w))) % p
        if v.any():
            ideal.append(v)
    if not ideal:
        return []
    ideal_basis = linalg.row_space(np.array(ideal), p)

    def shift(vec: np.ndarray, a: int, left: bool) -> np.ndarray:
        out = np.zeros(len(paths), dtype=np.int64)
        for i in np.flatnonzero(vec):
            w = paths[i]
            nw = (a,) + w if left else w + (a,)
            if len(nw) <= N and q.composable(nw):
                out[col[nw]] = (out[col[nw]] + vec[i]) % p
        return out

    gens = [shift(v, a, side) for v in ideal_basis for a in range(len(q.arrows)) for side in (True, False)]
    gens = [g for g in gens if g.any()]
    span = list(linalg.row_space(np.array(gens), p)) if gens else []
    target = ideal_basis.shape[0]
    cur_rank = len(span)
    chosen: list[np.ndarray] = []
    user = []
    for r in _normalize(q, A.relations, p) if A.relations and isinstance(A.relations[0], Relation) else list(A.relations):
        v = np.zeros(len(paths), dtype=np.int64)
        for c, w in r.terms:
            if len(w) <= N:
                v[col[w]] = (v[col[w]] + c) % p
        user.append(v)
    for cand in user + list(ideal_basis):
        if cur_rank == target:
            break
        if not cand.any():
            continue
        stack = np.array(span + [cand])
        rk = linalg.rank(stack, p)
        if rk > cur_rank:
            span.append(cand)
            chosen.append(cand)
            cur_rank = rk
    out = []
    for v in chosen:
        terms = tuple((int(v[i]), paths[i]) for i in np.flatnonzero(v))
        out.append(MinimalRelation(terms, q.tail(terms[0][1]), q.head(terms[0][1])))
    return out


def opposite(A: AlgebraModel) -> AlgebraModel:
    """The opposite algebra, built from the reversed quiver and relations."""
    return A._op


def euler_pairing(delta: Sequence[int], d: Sequence[int]) -> int:
    """The pairing ``Σ δ(v) d(v)`` between δ-vectors and dimension vectors."""
    if len(delta) != len(d):
        raise ValueError("vectors must have equal length")
    return sum(int(a) * int(b) for a, b in zip(delta, d))


def cartan_matrix(A: AlgebraModel) -> list[list[int]]:
    return A.cartan_matrix()


def minimal_relations(A: AlgebraModel) -> list[MinimalRelation]:
    return A.minimal_relations


def multiply(a: AlgElem, b: AlgElem) -> AlgElem:
    return a.algebra.multiply(a, b)

"""Krull-Schmidt decomposition of presentations and classification of δ-vectors.

Splitting follows Fitting's lemma: a random endomorphism of the complex acts
on ``P1 ⊕ P0`` and its primary components are subcomplexes.  Each component
is rewritten as a map between standard projectives ``P(γ1) → P(γ0)``.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _proj, linalg, present
from .algebra import AlgebraModel
from .errors import FieldObstruction, ZeroVector
from .present import Presentation

NONLINEAR_PATIENCE = 8
RESAMPLES = 3
MERGE_TRIALS = 5

Delta = tuple[int, ...]


def chain_endos(f: Presentation) -> list[tuple[np.ndarray, np.ndarray]]:
    """Basis of chain endomorphisms ``(u1, u0)`` of f, without homotopy quotient."""
    return present.chain_maps(f, f)


def _combine(basis, coeffs, p):
    return (linalg.lincomb(coeffs, [b[0] for b in basis], p),
            linalg.lincomb(coeffs, [b[1] for b in basis], p))


def _vertex_blocks(f: Presentation, u1: np.ndarray, u0: np.ndarray) -> list[np.ndarray]:
    A = f.algebra
    return _proj.vertex_maps(A, u1, f.P1, f.P1) + _proj.vertex_maps(A, u0, f.P0, f.P0)


def _block_minpoly_factors(blocks: list[np.ndarray], p: int) -> list[tuple[list[int], int]]:
    """Factored minimal polynomial of the block-diagonal map: the lcm over blocks."""
    mult: dict[tuple[int, ...], int] = {}
    for b in blocks:
        if b.shape[0]:
            for g, k in linalg.minpoly_factor(b, p):
                mult[tuple(g)] = max(mult.get(tuple(g), 0), k)
    return sorted(((list(g), k) for g, k in mult.items()), key=lambda t: (len(t[0]), t[0]))


def _restandardize(A: AlgebraModel, X: tuple[int, ...], sub: list[np.ndarray]) -> tuple[list[int], np.ndarray]:
    """Vertices γ and the A-matrix of an isomorphism ``P(γ) → S ⊂ P(X)``."""
    gamma, gens = _proj.top_generators(A, X, sub)
    pb = _proj.ProjBasis(A, X)
    iota = _proj.zeros(A, len(gamma), len(X))
    for k, (w, vec) in enumerate(zip(gamma, gens)):
        iota[k] = pb.element_to_row(w, vec)
    got = [len(lst) for lst in _proj.ProjBasis(A, gamma).at]
    want = [s.shape[0] for s in sub]
    if got != want:
        raise ArithmeticError(f"lifted top does not generate the summand freely: {got} vs {want}")
    return gamma, iota


def _block_presentation(f: Presentation, sub1: list[np.ndarray], sub0: list[np.ndarray]) -> Presentation:
    """The subcomplex on (sub1, sub0), written over standard projectives."""
    A = f.algebra
    p = A.p
    g1, i1 = _restandardize(A, f.P1, sub1)
    g0, i0 = _restandardize(A, f.P0, sub0)
    img = _proj.amatmul(A, i1, f.F)
    emb = _proj.vertex_maps(A, i0, tuple(g0), f.P0)
    src = _proj.ProjBasis(A, tuple(g0))
    tgt = _proj.ProjBasis(A, f.P0)
    F = _proj.zeros(A, len(g1), len(g0))
    for k, w in enumerate(g1):
        x = linalg.solve(emb[w], tgt.row_to_element(w, img[k]), p)
        if x is None:
            raise ArithmeticError("summand is not closed under the differential")
        F[k] = src.element_to_row(w, x)
    return Presentation(A, tuple(g1), tuple(g0), F)


def _split_once(f: Presentation, rng: np.random.Generator, trials: int) -> tuple[list[Presentation] | None, bool]:
    """Try to split f; returns (parts or None, certified-indecomposable)."""
    A = f.algebra
    p = A.p
    basis = chain_endos(f)
    if len(basis) <= 1:
        return None, True
    linear = nonlinear = 0
    while linear < trials:
        blocks = _vertex_blocks(f, *_combine(basis, rng.integers(0, p, size=len(basis)), p))
        facs = _block_minpoly_factors(blocks, p)
        if len(facs) > 1:
            return [_kernel_part(f, blocks, linalg.poly_pow(g, k, p)) for g, k in facs], False
        if len(facs[0][0]) > 2:
            nonlinear += 1
            if nonlinear >= NONLINEAR_PATIENCE * trials:
                deg = len(facs[0][0]) - 1
                raise FieldObstruction(f"endomorphisms of {f!r} look like a field of degree {deg}", deg)
            continue
        linear += 1
    return None, False


def _fix(rows: np.ndarray, n: int) -> np.ndarray:
    return rows if rows.shape[1] == n else np.zeros((0, n), dtype=np.int64)


def _kernel_part(f: Presentation, blocks: list[np.ndarray], poly: Sequence[int]) -> Presentation:
    """The subcomplex killed by ``poly`` of the endomorphism with these vertex blocks."""
    A = f.algebra
    p = A.p
    n1 = [len(x) for x in _proj.ProjBasis(A, f.P1).at]
    n0 = [len(x) for x in _proj.ProjBasis(A, f.P0).at]
    kers = []
    for b in blocks:
        if b.shape[0] == 0:
            kers.append(np.zeros((0, 0), dtype=np.int64))
        else:
            kers.append(linalg.row_space(linalg.nullspace(linalg.poly_eval_matrix(poly, b, p), p), p))
    sub1 = [_fix(kers[w], n1[w]) for w in range(A.n)]
    sub0 = [_fix(kers[A.n + w], n0[w]) for w in range(A.n)]
    return _block_presentation(f, sub1, sub0)


def _flat_blocks(A: AlgebraModel, pair, src: Presentation, dst: Presentation, transpose: bool) -> np.ndarray:
    u1, u0 = pair
    mats = _proj.vertex_maps(A, u1, src.P1, dst.P1) + _proj.vertex_maps(A, u0, src.P0, dst.P0)
    return np.concatenate([(m.T if transpose else m).reshape(-1) for m in mats])


def split_off(f: Presentation, items: Sequence[Presentation]) -> tuple[Presentation, list[int]]:
    """Remove every summand of f isomorphic to one of ``items``.

    ``items`` must be indecomposable with residue field F_p.  The multiplicity
    of U is the rank of the trace pairing ``Hom(U, f) x Hom(f, U) -> F_p``;
    a dual pair of bases for a full-rank minor gives an endomorphism of f whose
    Fitting decomposition separates ``U^m`` from the rest.  Only Hom spaces
    between f and the small items are formed, so large multiplicities stay cheap.
    """
    A = f.algebra
    p = A.p
    mults = []
    for U in items:
        S = present.chain_maps(U, f)
        R = present.chain_maps(f, U)
        if not S or not R or f.is_zero():
            mults.append(0)
            continue
        smat = np.stack([_flat_blocks(A, s, U, f, False) for s in S])
        rmat = np.stack([_flat_blocks(A, r, f, U, True) for r in R])
        B = linalg.matmul(smat, rmat.T, p)
        _, rows = linalg.rref(B.T, p)
        _, cols = linalg.rref(B[rows], p)
        m = len(rows)
        mults.append(m)
        if m == 0:
            continue
        Minv = linalg.inverse(B[np.ix_(rows, cols)], p)
        x1 = x0 = None
        for k, a in enumerate(rows):
            r = _combine([R[b] for b in cols], Minv[:, k], p)
            y1 = _proj.amatmul(A, r[0], S[a][0])
            y0 = _proj.amatmul(A, r[1], S[a][1])
            x1 = y1 if x1 is None else (x1 + y1) % p
            x0 = y0 if x0 is None else (x0 + y0) % p
        blocks = _vertex_blocks(f, x1, x0)
        facs = _block_minpoly_factors(blocks, p)
        nil = [k for g, k in facs if g == [0, 1]]
        if not nil:
            f = present.zero(A)
            continue
        f = _kernel_part(f, blocks, linalg.poly_pow([0, 1], nil[0], p))
        f = present.minimize(f)
    return f, mults


def _decompose_parts(f: Presentation, rng: np.random.Generator, trials: int,
                     descend: bool) -> list[tuple[Presentation, bool, int]]:
    """Indecomposable pieces as (presentation, certified, residue degree)."""
    if f.is_zero():
        return []
    try:
        parts, cert = _split_once(f, rng, trials)
    except FieldObstruction as exc:
        if not descend:
            raise
        return [(f, False, exc.degree)]
    if parts is None:
        return [(f, cert, 1)]
    out = []
    for g in parts:
        out.extend(_decompose_parts(g, rng, trials, descend))
    return out


def iso_test(f: Presentation, g: Presentation, trials: int = 3, rng: np.random.Generator | None = None) -> bool:
    """True when a sampled chain map ``f → g`` with invertible components exists."""
    if f.beta0 != g.beta0 or f.beta1 != g.beta1:
        return False
    A = f.algebra
    p = A.p
    rng = rng if rng is not None else np.random.default_rng(0)
    basis = present.chain_maps(f, g)
    if not basis:
        return f.is_zero() and g.is_zero()
    for _ in range(max(1, trials)):
        u1, u0 = _combine(basis, rng.integers(0, p, size=len(basis)), p)
        mats = _proj.vertex_maps(A, u1, f.P1, g.P1) + _proj.vertex_maps(A, u0, f.P0, g.P0)
        if all(m.shape[0] == m.shape[1] and linalg.rank(m, p) == m.shape[0] for m in mats):
            return True
    return False


def sort_deltas(deltas) -> list[Delta]:
    return sorted((tuple(int(x) for x in d) for d in deltas), reverse=True)


@dataclass
class DecompositionReport:
    """Summands up to isomorphism with multiplicities.

    ``degrees[i] > 1`` marks a summand indecomposable over F_p whose
    endomorphisms form a field extension of that degree; over the algebraic
    closure it splits into that many conjugates of equal δ.
    """

    summands: list[tuple[Presentation, int]]
    certified: bool
    trials: int
    notes: list[str] = field(default_factory=list)
    degrees: list[int] = field(default_factory=list)

    @property
    def deltas(self) -> list[Delta]:
        out = []
        degs = self.degrees or [1] * len(self.summands)
        for (g, m), d in zip(self.summands, degs):
            if any(x % d for x in g.delta):
                raise FieldObstruction(f"δ {g.delta} is not divisible by the residue degree {d}", d)
            out.extend([tuple(x // d for x in g.delta)] * (m * d))
        return sort_deltas(out)

    def to_json(self) -> dict:
        ordered = sorted(self.summands, key=lambda t: t[0].delta, reverse=True)
        return {
            "deltas": [list(d) for d in self.deltas],
            "summands": [{"delta": list(g.delta), "multiplicity": m, "presentation": g.to_json()} for g, m in ordered],
            "certified": self.certified,
            "trials": self.trials,
            "notes": self.notes,
        }


def decompose(f: Presentation, trials: int = present.DEFAULT_TRIALS,
              rng: np.random.Generator | None = None, descend: bool = False) -> DecompositionReport:
    """Split a presentation into indecomposable summands, grouped up to isomorphism.

    A summand whose endomorphisms never split over F_p raises FieldObstruction,
    unless ``descend`` is set, in which case it is kept and its residue degree
    recorded in the report.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    g = present.minimize(f)
    pieces = _decompose_parts(g, rng, max(1, trials), descend)
    groups: list[list] = []
    for h, cert, deg in pieces:
        for grp in groups:
            if grp[0].delta == h.delta and grp[3] == deg and iso_test(grp[0], h, MERGE_TRIALS, rng):
                grp[1] += 1
                grp[2] = grp[2] and cert
                break
        else:
            groups.append([h, 1, cert, deg])
    summands = [(present.sorted_form(h), m) for h, m, _, _ in groups]
    notes = [] if g.P1 == f.P1 and g.P0 == f.P0 else ["input was not minimal; contractible summands removed"]
    degrees = [d for *_, d in groups]
    if any(d > 1 for d in degrees):
        notes.append("some summands only split over a field extension")
    return DecompositionReport(summands, all(c for _, _, c, _ in groups), trials, notes, degrees)


def is_indecomposable(f: Presentation, trials: int = present.DEFAULT_TRIALS,
                      rng: np.random.Generator | None = None) -> bool:
    """False is certain; True means no split was found in ``trials`` attempts."""
    rng = rng if rng is not None else np.random.default_rng(0)
    g = present.minimize(f)
    if g.is_zero():
        return False
    parts, _ = _split_once(g, rng, max(1, trials))
    return parts is None


def _fineness(parts: list[Delta]):
    return (len(parts), parts)


def canonical_decomposition(A: AlgebraModel, delta: Sequence[int], trials: int = present.DEFAULT_TRIALS,
                            rng: np.random.Generator | None = None) -> list[Delta]:
    """δ-multiset of a general presentation; the finest answer over ``trials`` samples."""
    rng = rng if rng is not None else np.random.default_rng(0)
    delta = tuple(int(x) for x in delta)
    if not any(delta):
        return []
    best = None
    for _ in range(max(1, trials)):
        parts = None
        for _attempt in range(RESAMPLES):
            try:
                parts = decompose(present.sample(A, delta, rng), trials, rng).deltas
                break
            except FieldObstruction:
                continue
        if parts is None:
            # every sample hit a residue extension; count conjugate summands instead
            parts = decompose(present.sample(A, delta, rng), trials, rng, descend=True).deltas
        if best is None or _fineness(parts) > _fineness(best):
            best = parts
    return best


def verify_cdt(A: AlgebraModel, parts: Sequence[Sequence[int]], trials: int = present.DEFAULT_TRIALS,
               rng: np.random.Generator | None = None) -> bool:
    """Each part indecomposable on a sample and ``e(δ_i, δ_j) = 0`` for all ordered i ≠ j."""
    rng = rng if rng is not None else np.random.default_rng(0)
    parts = [tuple(int(x) for x in d) for d in parts]
    for d in set(parts):
        if not any(d) or not is_indecomposable(present.sample(A, d, rng), trials, rng):
            return False
    counts = Counter(parts)
    kinds = sorted(counts)
    for a in kinds:
        for b in kinds:
            if a == b and counts[a] < 2:
                continue
            if present.e_generic(A, a, b, trials, rng) != 0:
                return False
    return True


class DeltaClass(str, enum.Enum):
    DECOMPOSABLE = "decomposable"
    REAL = "real"
    TAME = "tame"
    WILD = "wild"

    def __str__(self) -> str:
        return self.value


def classify(A: AlgebraModel, delta: Sequence[int], trials: int = present.DEFAULT_TRIALS,
             rng: np.random.Generator | None = None) -> DeltaClass:
    rng = rng if rng is not None else np.random.default_rng(0)
    delta = tuple(int(x) for x in delta)
    if not any(delta):
        raise ZeroVector("the zero vector has no class")
    if len(canonical_decomposition(A, delta, trials, rng)) > 1:
        return DeltaClass.DECOMPOSABLE
    return classify_indecomposable(A, delta, trials, rng)


def classify_indecomposable(A: AlgebraModel, delta: Delta, trials: int, rng: np.random.Generator) -> DeltaClass:
    """Real, tame or wild for a δ already known to be indecomposable."""
    if any(present.is_rigid(present.sample(A, delta, rng)) for _ in range(max(1, trials))):
        return DeltaClass.REAL
    return DeltaClass.TAME if present.e_generic(A, delta, delta, trials, rng) == 0 else DeltaClass.WILD


def format_deltas(parts: Sequence[Delta]) -> str:
    """``2*(1,-1,0) + (0,0,-1)`` style rendering."""
    if not parts:
        return "0"
    counts = Counter(tuple(d) for d in parts)
    out = []
    for d in sort_deltas(counts):
        body = "(" + ",".join(str(x) for x in d) + ")"
        out.append(body if counts[d] == 1 else f"{counts[d]}*{body}")
    return " + ".join(out)

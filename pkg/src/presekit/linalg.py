"""Exact linear algebra over F_p and over the rationals.

Matrices are ``numpy.int64`` arrays holding residues in ``[0, p)``.  The
rational mode works on ``fractions.Fraction`` object arrays and is meant as a
slow verification oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor

from . import _kernels

P_DEFAULT = 1_000_000_007


@dataclass(frozen=True)
class FieldCfg:
    """Field choice plus the seed that drives every random choice.

    ``p=None`` selects the rational verification mode.
    """

    p: int | None = P_DEFAULT
    seed: int = 0

    def __post_init__(self) -> None:
        if self.p is not None:
            if self.p <= 1 << 20 or not _is_prime(self.p):
                raise ValueError(f"field characteristic must be a prime > 2^20, got {self.p}")

    @property
    def rational(self) -> bool:
        return self.p is None

    def rng(self, *salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *salt])


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def as_mat(m, p: int) -> np.ndarray:
    """Coerce integer data (any nesting of ints) to a reduced int64 matrix."""
    a = np.array(m, dtype=object)
    if a.ndim != 2:
        a = a.reshape(0, 0) if a.size == 0 else a.reshape(1, -1)
    if a.size == 0:
        return np.zeros(a.shape, dtype=np.int64)
    return np.vectorize(lambda x: int(x) % p, otypes=[np.int64])(a)


def symmetric(x: int, p: int) -> int:
    """Representative of ``x mod p`` in ``(-p/2, p/2]``."""
    x %= p
    return x - p if x > p // 2 else x


# ---------------------------------------------------------------------------
# prime-field core


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form (leftmost pivot, first nonzero row) and pivots."""
    a = np.array(m, dtype=np.int64, copy=True) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    piv = _kernels.rref_inplace(a, p)
    return a, piv


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning ``{x : m x = 0}``, in canonical (reduced) form."""
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(m, p)
    pivset = set(piv.tolist())
    free = np.array([c for c in range(cols) if c not in pivset], dtype=np.int64)
    basis = np.zeros((len(free), cols), dtype=np.int64)
    if len(free):
        basis[np.arange(len(free)), free] = 1
        if len(piv):
            basis[:, piv] = (-r[: len(piv)][:, free].T) % p
    return basis


def row_space(vecs: np.ndarray, p: int) -> np.ndarray:
    """Canonical echelon basis of the row span."""
    if vecs.shape[0] == 0:
        return vecs.reshape(0, vecs.shape[1]).astype(np.int64)
    r, piv = rref(vecs, p)
    return r[: len(piv)]


def image_complement(m: np.ndarray, p: int) -> np.ndarray:
    """Unit vectors spanning a complement of the column space of ``m``."""
    rows = m.shape[0]
    if m.shape[1] == 0 or rows == 0:
        return np.eye(rows, dtype=np.int64)
    _, piv = rref(m.T, p)
    taken = set(piv.tolist())
    out = np.zeros((rows - len(taken), rows), dtype=np.int64)
    for k, i in enumerate(i for i in range(rows) if i not in taken):
        out[k, i] = 1
    return out


def _field(cfg: FieldCfg | int | None) -> FieldCfg | int:
    return FieldCfg() if cfg is None else cfg


def _prime(cfg: FieldCfg | int) -> int | None:
    return cfg if isinstance(cfg, int) else cfg.p


def rank_profile(m, cfg: FieldCfg | int | None = None):
    """Return ``(rank, kernel_basis, image_complement_basis)``.

    Kernel vectors are rows ``x`` with ``m @ x = 0``; the complement vectors,
    together with the columns of ``m``, span the codomain.
    """
    p = _prime(_field(cfg))
    if p is None:
        return _rank_profile_q(m)
    a = as_mat(m, p)
    rk = rank(a, p)
    ker = nullspace(a, p)
    comp = image_complement(a, p)
    return rk, [list(map(int, v)) for v in ker], [list(map(int, v)) for v in comp]


def solve(m: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``m @ x = b`` (``b`` may be a matrix), or None."""
    if m.shape[0] == 0:
        return np.zeros((m.shape[1],) + b.shape[1:], dtype=np.int64)
    b2 = b.reshape(m.shape[0], -1)
    aug = np.concatenate([m, b2], axis=1)
    r, piv = rref(aug, p)
    n = m.shape[1]
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, b2.shape[1]), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x.reshape((n,) + b.shape[1:])


def inverse(m: np.ndarray, p: int) -> np.ndarray | None:
    n = m.shape[0]
    if m.shape != (n, n):
        return None
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    r, piv = rref(np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1), p)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return r[:, n:].copy()


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return _kernels.matmul(a, b, p)


def chain(mats: Sequence[np.ndarray], p: int, n: int) -> np.ndarray:
    """Product ``mats[0] @ mats[1] @ ...``; the n×n identity when empty."""
    if not mats:
        return np.eye(n, dtype=np.int64)
    out = mats[0]
    for m in mats[1:]:
        out = matmul(out, m, p)
    return out


def lincomb(coeffs: Sequence[int], mats: Sequence[np.ndarray], p: int) -> np.ndarray:
    """``Σ c_i·m_i mod p``, reducing after every term so int64 never overflows."""
    out = np.zeros_like(mats[0], dtype=np.int64)
    for c, m in zip(coeffs, mats):
        out = (out + int(c) % p * m % p) % p
    return out


def random_mat(rng: np.random.Generator, rows: int, cols: int, p: int) -> np.ndarray:
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


# ---------------------------------------------------------------------------
# rational mode (verification oracle)


def _rref_q(m) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    piv: list[int] = []
    r = 0
    for c in range(cols):
        k = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return a, piv


def _rank_profile_q(m):
    m = [list(row) for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a, piv = _rref_q(m)
    ker = []
    for c in (c for c in range(cols) if c not in piv):
        v = [Fraction(0)] * cols
        v[c] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -a[i][c]
        ker.append(v)
    _, tpiv = _rref_q([[m[i][j] for i in range(rows)] for j in range(cols)]) if cols else ([], [])
    comp = [[Fraction(int(i == k)) for i in range(rows)] for k in range(rows) if k not in tpiv]
    return len(piv), ker, comp


# ---------------------------------------------------------------------------
# polynomials over F_p: coefficient lists, lowest degree first, monic results


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f = f[:-1]
    return f


def poly_eval_matrix(f: Sequence[int], m: np.ndarray, p: int) -> np.ndarray:
    """Evaluate ``f(m)`` by Horner's rule."""
    n = m.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(list(f)):
        out = (matmul(out, m, p) + int(c) % p * eye) % p
    return out


def poly_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Product of coefficient lists, lowest degree first."""
    prod = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            prod[i + j] = (prod[i + j] + a * b) % p
    return prod


def poly_pow(f: Sequence[int], k: int, p: int) -> list[int]:
    out = [1]
    for _ in range(k):
        out = poly_mul(out, f, p)
    return out


def minpoly(m: np.ndarray, p: int) -> list[int]:
    """Monic minimal polynomial of a square matrix.

    Powers are generated in doubling batches so the work tracks the degree
    of the answer rather than the size of the matrix.
    """
    n = m.shape[0]
    if n == 0:
        return [1]
    cols = [np.eye(n, dtype=np.int64).reshape(-1)]
    cur = np.eye(n, dtype=np.int64)
    batch = 2
    while True:
        while len(cols) < min(batch, n + 1):
            cur = matmul(cur, m, p)
            cols.append(cur.reshape(-1))
        r, piv = rref(np.stack(cols, axis=1), p)
        d = len(piv)
        if d < len(cols):
            # column d is the first power dependent on the lower ones
            return [(-int(r[i, d])) % p for i in range(d)] + [1]
        batch *= 2


def minpoly_factor(m, cfg: FieldCfg | int | None = None) -> list[tuple[list[int], int]]:
    """Factor the minimal polynomial into monic irreducibles with multiplicity.

    Factors are returned sorted by (degree, coefficients).  In rational mode
    only the squarefree decomposition is produced.  ``cfg`` may be a bare
    prime, which skips the size check of :class:`FieldCfg`.
    """
    p = _prime(_field(cfg))
    if p is None:
        return _squarefree_q(m)
    a = np.mod(np.asarray(m, dtype=np.int64), p)
    f = minpoly(a, p)
    return factor_poly(f, p)


def factor_poly(f: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    f = _trim([int(c) % p for c in f])
    if len(f) <= 1:
        return []
    _, facs = gf_factor([ZZ(c) for c in reversed(f)], p, ZZ)
    out = [([int(c) for c in reversed(g)], int(k)) for g, k in facs]
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def _squarefree_q(m) -> list[tuple[list[Fraction], int]]:
    import sympy

    mat = sympy.Matrix(m)
    x = sympy.Symbol("x")
    n = mat.shape[0]
    if n == 0:
        return []
    # minimal polynomial over Q via the same Krylov dependency
    cols = [sympy.eye(n).reshape(n * n, 1)]
    pw = sympy.eye(n)
    for _ in range(n):
        pw = pw * mat
        cols.append(pw.reshape(n * n, 1))
    k = sympy.Matrix.hstack(*cols)
    r, piv = k.rref()
    d = len(piv)
    poly = x**d - sum(r[i, d] * x**i for i in range(d))
    _, parts = sympy.sqf_list(sympy.Poly(poly, x))
    out = []
    for g, e in parts:
        g = g.monic()
        out.append(([Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())], int(e)))
    return out


def primary_split(m, cfg: FieldCfg | int | None = None) -> list[tuple[list[int], np.ndarray]]:
    """Generalized kernels of the primary factors of the minimal polynomial.

    Each basis is returned as the rows of a reduced echelon matrix.
    """
    cfg = _field(cfg)
    p = _prime(cfg)
    a = np.mod(np.asarray(m, dtype=np.int64), p)
    out = []
    for g, k in minpoly_factor(a, cfg):
        gk = poly_eval_matrix(poly_pow(g, k, p), a, p)
        out.append((g, row_space(nullspace(gk, p), p)))
    return out

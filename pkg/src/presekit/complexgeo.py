"""Scanning indecomposable δ-vectors and drawing the resulting flag complex.

Vertices are the δ in a box whose general presentation is indecomposable.
Two vertices span an edge when e vanishes in both orders, and simplices are
the cliques of that graph.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import networkx as nx
import numpy as np

from . import decomp, present
from .algebra import AlgebraModel
from .errors import FieldObstruction, PoleCollision, ZeroVector

Delta = tuple[int, ...]
POLE_TOL = 1e-9
CLASS_COLORS = {"real": "#1f77b4", "tame": "#2ca02c", "wild": "#d62728"}


@dataclass
class ComplexData:
    vertices: list[tuple[Delta, str]]
    edges: list[tuple[int, int]]
    box: int
    trials: int
    seed: int
    algebra_hash: str = ""
    flagged: list[tuple[Delta, str]] = field(default_factory=list)

    @property
    def deltas(self) -> list[Delta]:
        return [d for d, _ in self.vertices]

    def classes(self) -> dict[Delta, str]:
        return dict(self.vertices)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from(self.edges)
        return g

    def cliques(self) -> list[list[int]]:
        """Maximal simplices, each sorted, in lexicographic order."""
        return sorted(sorted(c) for c in nx.find_cliques(self.graph()))

    def real_subcomplex(self) -> "ComplexData":
        keep = [i for i, (_, c) in enumerate(self.vertices) if c == "real"]
        pos = {v: k for k, v in enumerate(keep)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return ComplexData([self.vertices[i] for i in keep], edges, self.box, self.trials, self.seed,
                           self.algebra_hash)

    def ridge_counts(self, dim: int) -> dict[tuple[int, ...], int]:
        """For each ``dim``-simplex, the number of maximal simplices containing it."""
        out: dict[tuple[int, ...], int] = {}
        for c in self.cliques():
            for face in itertools.combinations(c, dim + 1):
                out[face] = out.get(face, 0) + 1
        return out

    def parallel_pairs(self) -> list[tuple[Delta, Delta]]:
        """Distinct vertices that are positive multiples of one another."""
        seen: dict[tuple[float, ...], Delta] = {}
        out = []
        for d in self.deltas:
            key = tuple(round(x, 9) for x in lambda_map(d))
            if key in seen:
                out.append((seen[key], d))
            else:
                seen[key] = d
        return out

    def to_json(self) -> dict:
        return {
            "algebra_hash": self.algebra_hash,
            "box": self.box,
            "trials": self.trials,
            "seed": self.seed,
            "vertices": [{"delta": list(d), "class": c} for d, c in self.vertices],
            "edges": [list(e) for e in self.edges],
            "cliques": self.cliques(),
            "flagged": [{"delta": list(d), "reason": r} for d, r in self.flagged],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "ComplexData":
        return cls([(tuple(v["delta"]), v["class"]) for v in data["vertices"]],
                   [tuple(e) for e in data["edges"]], data["box"], data["trials"], data["seed"],
                   data.get("algebra_hash", ""),
                   [(tuple(v["delta"]), v["reason"]) for v in data.get("flagged", [])])


def box_vectors(n: int, B: int) -> list[Delta]:
    """Nonzero integer vectors with sup norm at most B, in lexicographic order."""
    return [d for d in itertools.product(range(-B, B + 1), repeat=n) if any(d)]


def scan(A: AlgebraModel, B: int, trials: int = present.DEFAULT_TRIALS, seed: int = 0,
         where: Callable[[Delta], bool] | None = None) -> ComplexData:
    if B < 1:
        raise ValueError("box bound must be at least 1")
    rng = np.random.default_rng(seed)
    vertices: list[tuple[Delta, str]] = []
    flagged: list[tuple[Delta, str]] = []
    for d in box_vectors(A.n, B):
        if where is not None and not where(d):
            continue
        try:
            if len(decomp.canonical_decomposition(A, d, trials, rng)) != 1:
                continue
            cls = decomp.classify_indecomposable(A, d, trials, rng)
        except FieldObstruction as exc:
            flagged.append((d, str(exc)))
            continue
        vertices.append((d, str(cls)))
    edges = _compatible_pairs(A, [d for d, _ in vertices], trials, rng)
    return ComplexData(vertices, edges, B, trials, seed, A.fingerprint, flagged)


def _compatible_pairs(A: AlgebraModel, deltas: Sequence[Delta], trials: int,
                      rng: np.random.Generator) -> list[tuple[int, int]]:
    """Pairs with ``e = 0`` both ways; one sample per vertex per round, minima over rounds."""
    n = len(deltas)
    open_pairs = {(i, j) for i in range(n) for j in range(n) if i != j}
    zero: set[tuple[int, int]] = set()
    for _ in range(max(1, trials)):
        if not open_pairs:
            break
        samples = [present.sample(A, d, rng) for d in deltas]
        for i, j in list(open_pairs):
            if present.dim_E(samples[i], samples[j]) == 0:
                zero.add((i, j))
                open_pairs.discard((i, j))
    return sorted((i, j) for i, j in zero if i < j and (j, i) in zero)


def lambda_map(delta: Sequence[float]) -> tuple[float, ...]:
    norm = math.sqrt(sum(float(x) ** 2 for x in delta))
    if norm == 0:
        raise ZeroVector("the zero vector has no direction")
    return tuple(float(x) / norm for x in delta)


def _plane_basis(pole: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the plane orthogonal to ``pole``, from Gram-Schmidt on the standard basis."""
    basis: list[np.ndarray] = []
    for e in np.eye(len(pole)):
        v = e - (e @ pole) * pole
        for b in basis:
            v = v - (v @ b) * b
        if np.linalg.norm(v) > 1e-6:
            basis.append(v / np.linalg.norm(v))
        if len(basis) == len(pole) - 1:
            break
    return np.array(basis)


def stereo_project(points: Sequence[Sequence[float]], pole: Sequence[float],
                   labels: Sequence[object] | None = None) -> list[tuple[float, ...]]:
    """Project unit vectors from ``pole`` onto the plane through 0 orthogonal to it."""
    N = np.asarray(lambda_map(pole))
    basis = _plane_basis(N)
    out = []
    for k, x in enumerate(points):
        x = np.asarray(x, dtype=float)
        t = 1.0 - float(x @ N)
        if t < POLE_TOL:
            who = labels[k] if labels is not None else tuple(x)
            raise PoleCollision(f"point {who} coincides with the pole")
        out.append(tuple(float(c) for c in basis @ (x - (x @ N) * N) / t))
    return out


def _fmt(x: float) -> str:
    s = f"{round(x, 6):.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _svg(coords: list[tuple[float, float]], data: ComplexData, extra: str = "") -> str:
    size, margin = 600.0, 30.0
    span = max([1.0] + [max(abs(x), abs(y)) for x, y in coords])
    scale = (size / 2 - margin) / span

    def px(pt):
        return _fmt(size / 2 + pt[0] * scale), _fmt(size / 2 - pt[1] * scale)

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(size)}" height="{int(size)}" '
             f'viewBox="0 0 {int(size)} {int(size)}">', '<rect width="100%" height="100%" fill="white"/>']
    if extra:
        lines.append(extra)
    for i, j in data.edges:
        (x1, y1), (x2, y2) = px(coords[i]), px(coords[j])
        lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888888" stroke-width="1"/>')
    for (d, cls), pt in zip(data.vertices, coords):
        x, y = px(pt)
        label = ",".join(str(v) for v in d)
        lines.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{CLASS_COLORS.get(cls, "#000000")}">'
                     f'<title>({label}) {cls}</title></circle>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def without_pole(data: ComplexData, pole: Sequence[float]) -> ComplexData:
    """Drop the vertices lying on the pole direction, with their edges."""
    N = np.asarray(lambda_map(pole))
    keep = [i for i, d in enumerate(data.deltas) if 1.0 - float(np.asarray(lambda_map(d)) @ N) >= POLE_TOL]
    pos = {v: k for k, v in enumerate(keep)}
    edges = [(pos[i], pos[j]) for i, j in data.edges if i in pos and j in pos]
    return ComplexData([data.vertices[i] for i in keep], edges, data.box, data.trials, data.seed,
                       data.algebra_hash, data.flagged)


def to_svg(data: ComplexData, pole: Sequence[float] | None = None, drop_pole: bool = False) -> str:
    """Stereographic picture for three vertices, angle plot on the unit circle for two."""
    n = len(data.deltas[0]) if data.vertices else (len(pole) if pole is not None else 0)
    if n == 2:
        circle = '<circle cx="300" cy="300" r="270" fill="none" stroke="#dddddd" stroke-width="1"/>'
        return _svg([lambda_map(d) for d in data.deltas], data, circle)
    if n == 3:
        if pole is None:
            raise ValueError("a pole is required for three vertices")
        if drop_pole:
            data = without_pole(data, pole)
        coords = stereo_project([lambda_map(d) for d in data.deltas], pole, data.deltas)
        return _svg([tuple(c) for c in coords], data)
    raise ValueError("SVG export supports two or three vertices only")

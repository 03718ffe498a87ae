"""TOML algebra files and the bundled fixtures."""

from __future__ import annotations

import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import qp
from .algebra import AlgebraModel, Quiver, Relation, build_algebra
from .errors import Inadmissible
from .linalg import P_DEFAULT
from .present import DEFAULT_TRIALS

FIXTURES = ("a2", "cycpot3", "kron3", "string3", "yinyang3")


@dataclass(frozen=True)
class AlgebraSpec:
    """Parsed contents of an algebra file."""

    quiver: Quiver
    relations: tuple[Relation, ...]
    potential: qp.Potential | None
    prime: int
    max_path_length: int
    seed: int
    trials: int

    def build(self) -> AlgebraModel:
        if self.potential is not None:
            if self.relations:
                raise Inadmissible("give either relations or a potential, not both")
            return qp.jacobian_algebra(self.potential, self.max_path_length, self.prime)
        return build_algebra(self.quiver, list(self.relations), self.max_path_length, self.prime)


def parse(data: dict) -> AlgebraSpec:
    try:
        q = data["quiver"]
        quiver = Quiver.from_names(q["vertices"], [(a["name"], a["tail"], a["head"]) for a in q["arrows"]])
    except KeyError as exc:
        raise ValueError(f"missing key {exc.args[0]!r} in [quiver]") from None
    rels = tuple(Relation.parse(s) for s in data.get("relations", {}).get("items", []))
    opts = data.get("options", {})
    prime = int(opts.get("prime", P_DEFAULT))
    potential = None
    if "potential" in data:
        terms = []
        for t in data["potential"].get("terms", []):
            cycle = t["cycle"]
            names = tuple(cycle.split("*")) if isinstance(cycle, str) else tuple(cycle)
            terms.append((int(t.get("coeff", 1)), names))
        potential = qp.Potential.from_terms(quiver, terms, prime)
    return AlgebraSpec(
        quiver=quiver,
        relations=rels,
        potential=potential,
        prime=prime,
        max_path_length=int(opts.get("max_path_length", 2 * len(quiver.arrows) + 2)),
        seed=int(opts.get("seed", 0)),
        trials=int(opts.get("trials", DEFAULT_TRIALS)),
    )


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("presekit") / "fixtures" / f"{name}.toml"))


def load_spec(source: str | Path) -> AlgebraSpec:
    """Read a TOML file, or a bundled fixture when ``source`` is a fixture name."""
    path = Path(source)
    if not path.exists() and str(source) in FIXTURES:
        path = fixture_path(str(source))
    with open(path, "rb") as fh:
        return parse(tomllib.load(fh))


def load(source: str | Path) -> AlgebraModel:
    return load_spec(source).build()

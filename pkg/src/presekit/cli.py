"""Command-line front end.

Exit status: 0 on success, 2 on a domain error, 1 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import artau, complexgeo, config, decomp, present, qp, repmod, rigid
from .errors import DomainError, NotRigid

VECTOR_FLAGS = ("--d", "--d1", "--d2", "--pole", "--cluster")
_NEGATIVE = re.compile(r"^-\d")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _vector(text: str, n: int | None = None) -> tuple[int, ...]:
    try:
        vec = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"not a comma-separated integer vector: {text!r}") from None
    if n is not None and len(vec) != n:
        raise UsageError(f"vector {text!r} has length {len(vec)}, expected {n}")
    return vec


def _fmt(vec: Sequence[int]) -> str:
    return "(" + ",".join(str(int(x)) for x in vec) + ")"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


class Context:
    """Loaded algebra plus seeded RNG for one invocation."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        try:
            self.spec = config.load_spec(args.algebra)
        except FileNotFoundError:
            raise UsageError(f"no algebra file or fixture named {args.algebra!r}") from None
        self.A = self.spec.build()
        self.seed = self.spec.seed if args.seed is None else args.seed
        self.trials = self.spec.trials if args.trials is None else args.trials
        self.rng = np.random.default_rng(self.seed)

    def delta(self, text: str) -> tuple[int, ...]:
        return _vector(text, self.A.n)

    def rigid_sample(self, delta: Sequence[int]) -> present.Presentation:
        for _ in range(max(1, self.trials)):
            f = present.sample(self.A, delta, self.rng)
            if present.is_rigid(f):
                return f
        raise NotRigid(f"no rigid presentation found in {_fmt(delta)}")

    def emit(self, text: str) -> None:
        out = getattr(self.args, "out", None)
        if out:
            Path(out).write_text(text if text.endswith("\n") else text + "\n")
        else:
            print(text)


# -- subcommands -------------------------------------------------------------


def cmd_check(ctx: Context) -> None:
    A = ctx.A
    names = A.quiver.vertices
    lines = [
        f"vertices: {' '.join(names)}",
        f"arrows: {' '.join(f'{a.name}:{names[a.tail]}->{names[a.head]}' for a in A.quiver.arrows)}",
        f"dim: {A.dim}",
        f"nilpotency: {A.nilpotency}",
        f"cartan: {A.cartan_matrix()}",
        "minimal relations: " + (", ".join(str(r.to_relation(A.quiver, A.p)) for r in A.minimal_relations) or "none"),
        f"associative: {str(A.check_associative()).lower()}",
        f"unit: {str(A.check_unit()).lower()}",
        f"fingerprint: {A.fingerprint}",
    ]
    ctx.emit("\n".join(lines))


def cmd_e(ctx: Context) -> None:
    d1, d2 = ctx.delta(ctx.args.d1), ctx.delta(ctx.args.d2)
    ctx.emit(str(present.e_generic(ctx.A, d1, d2, ctx.trials, ctx.rng)))


def cmd_classify(ctx: Context) -> None:
    ctx.emit(str(decomp.classify(ctx.A, ctx.delta(ctx.args.d), ctx.trials, ctx.rng)))


def cmd_candecomp(ctx: Context) -> None:
    parts = decomp.canonical_decomposition(ctx.A, ctx.delta(ctx.args.d), ctx.trials, ctx.rng)
    ctx.emit(decomp.format_deltas(parts))


def cmd_rigid(ctx: Context) -> None:
    d = ctx.delta(ctx.args.d)
    ok = any(present.is_rigid(present.sample(ctx.A, d, ctx.rng)) for _ in range(max(1, ctx.trials)))
    ctx.emit(str(ok).lower())


def cmd_complete(ctx: Context) -> None:
    f = ctx.rigid_sample(ctx.delta(ctx.args.d))
    c = (rigid.completion_pos if ctx.args.dir == "pos" else rigid.completion_neg)(f, ctx.rng)
    ctx.emit("\n".join(_fmt(d) for d in c.key))


def _cluster(ctx: Context, text: str) -> rigid.RigidCollection:
    deltas = [ctx.delta(part) for part in text.split(";") if part]
    items = tuple(sorted((ctx.rigid_sample(d) for d in deltas), key=lambda g: g.delta))
    c = rigid.RigidCollection(items)
    if not c.is_rigid():
        raise NotRigid("cluster items are not pairwise compatible")
    return c


def cmd_mutate(ctx: Context) -> None:
    c = _cluster(ctx, ctx.args.cluster)
    if not 0 <= ctx.args.at < len(c):
        raise UsageError(f"--at must lie in [0, {len(c)})")
    ctx.emit("\n".join(_fmt(d) for d in rigid.mutate(c, ctx.args.at, ctx.rng).key))


def cmd_exchange(ctx: Context) -> None:
    g = rigid.exchange_graph(ctx.A, ctx.args.depth, ctx.rng)
    if ctx.args.format == "json":
        ctx.emit(_dump(g.to_json()))
        return
    degrees = sorted({g.degree(k) for k in g.nodes})
    ctx.emit(f"nodes: {len(g.nodes)}\nedges: {len(g.edges)}\nclosed: {str(g.closed).lower()}\n"
             f"degrees: {degrees}")


def cmd_tau(ctx: Context) -> None:
    direction = "inverse" if ctx.args.inverse else "forward"
    if ctx.args.rep:
        M = repmod.Representation.from_json(ctx.A, Path(ctx.args.rep).read_text())
        m = artau.positive(M)
        out = artau.tau_inverse(m) if ctx.args.inverse else artau.tau(m)
        ctx.emit(_dump({"dims": list(out.positive.dims), "negative": list(out.negative),
                        "beta0": list(out.beta0), "beta1": list(out.beta1), "delta": list(out.delta),
                        "positive": out.positive.to_json()}))
        return
    if not ctx.args.d:
        raise UsageError("tau needs --d or --rep")
    f = present.sample(ctx.A, ctx.delta(ctx.args.d), ctx.rng)
    g = artau.tau_presentation(f, direction)
    ctx.emit(f"delta: {_fmt(g.delta)}\nbeta1: {_fmt(g.beta1)}\nbeta0: {_fmt(g.beta0)}")


def cmd_regularize(ctx: Context) -> None:
    f = present.Presentation.from_json(ctx.A, Path(ctx.args.pres).read_text())
    ctx.emit(_dump(rigid.regularize(f).to_json()))


def cmd_scan(ctx: Context) -> None:
    data = complexgeo.scan(ctx.A, ctx.args.box, ctx.trials, ctx.seed)
    ctx.emit(_dump(data.to_json()))


def cmd_project(ctx: Context) -> None:
    data = complexgeo.ComplexData.from_json(json.loads(Path(ctx.args.input).read_text()))
    pole = _vector(ctx.args.pole) if ctx.args.pole else None
    if pole is not None and ctx.args.drop_pole:
        data = complexgeo.without_pole(data, pole)
    if ctx.args.svg:
        Path(ctx.args.svg).write_text(complexgeo.to_svg(data, pole))
    points = [complexgeo.lambda_map(d) for d in data.deltas]
    if pole is None:
        if data.vertices and len(data.deltas[0]) != 2:
            raise UsageError("project needs --pole for more than two vertices")
        pts = points
    else:
        pts = complexgeo.stereo_project(points, pole, data.deltas)
    ctx.emit("\n".join(f"{_fmt(d)} {' '.join(f'{round(x, 6) + 0.0:.6f}' for x in pt)}" for d, pt in zip(data.deltas, pts)))


def cmd_qp_build(ctx: Context) -> None:
    S = ctx.spec.potential
    if S is None:
        raise UsageError("the algebra file has no [potential] section")
    rels = qp.jacobian_relations(S)
    ctx.emit(f"potential: {S}\nrelations: {', '.join(str(r) for r in rels)}\ndim: {ctx.A.dim}\n"
             f"cartan: {ctx.A.cartan_matrix()}")


COMMANDS = {
    "check": cmd_check, "e": cmd_e, "classify": cmd_classify, "candecomp": cmd_candecomp,
    "rigid": cmd_rigid, "complete": cmd_complete, "mutate": cmd_mutate, "exchange": cmd_exchange,
    "tau": cmd_tau, "regularize": cmd_regularize, "scan": cmd_scan, "project": cmd_project,
    "qp-build": cmd_qp_build,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-a", "--algebra", required=True, help="TOML file or fixture name")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--trials", type=int, default=None)
    common.add_argument("-o", "--out", default=None, help="write the result to a file")

    parser = _Parser(prog="presekit", description="Presentations over finite-dimensional algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="build the algebra and report invariants")
    p = sub.add_parser("e", parents=[common], help="generic dimension of E")
    p.add_argument("--d1", required=True)
    p.add_argument("--d2", required=True)
    for name, text in (("classify", "real, tame, wild or decomposable"),
                       ("candecomp", "canonical decomposition"), ("rigid", "is the general presentation rigid")):
        sub.add_parser(name, parents=[common], help=text).add_argument("--d", required=True)
    p = sub.add_parser("complete", parents=[common], help="Bongartz-type completion")
    p.add_argument("--d", required=True)
    p.add_argument("--dir", choices=("pos", "neg"), default="pos")
    p = sub.add_parser("mutate", parents=[common], help="mutate a cluster of rigid δ-vectors")
    p.add_argument("--cluster", required=True, help="δ-vectors separated by ';'")
    p.add_argument("--at", type=int, required=True)
    p = sub.add_parser("exchange", parents=[common], help="exchange graph from the projectives")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = sub.add_parser("tau", parents=[common], help="AR-translate of a general presentation or a representation")
    p.add_argument("--d", default=None)
    p.add_argument("--rep", default=None, help="representation JSON file")
    p.add_argument("--inverse", action="store_true")
    sub.add_parser("regularize", parents=[common], help="make a presentation injective").add_argument(
        "--pres", required=True, help="presentation JSON file")
    sub.add_parser("scan", parents=[common], help="indecomposable δ-vectors in a box").add_argument(
        "--box", type=int, required=True)
    p = sub.add_parser("project", parents=[common], help="stereographic projection of a scan")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--pole", default=None)
    p.add_argument("--svg", default=None)
    p.add_argument("--drop-pole", action="store_true", help="omit vertices on the pole direction")
    sub.add_parser("qp-build", parents=[common], help="Jacobian algebra of the potential")
    return parser


def _join_vectors(argv: Sequence[str]) -> list[str]:
    """Let ``--d -1,0,1`` through argparse by rewriting it as ``--d=-1,0,1``."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in VECTOR_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif _NEGATIVE.match(nxt):
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_vectors(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ctx = Context(args)
        COMMANDS[args.command](ctx)
    except UsageError as exc:
        print(f"presekit: error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"presekit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"presekit: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

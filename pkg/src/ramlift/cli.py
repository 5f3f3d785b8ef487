"""Command-line interface.

Exit status: 0 success, 2 computation succeeded but the verdict is negative,
1 any error.  All output is JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import poly as P
from .corpus import FIXTURE_DIR, MissingFixtures, load_corpus
from .graph import OrientedMultigraph, classify, load_graph
from .perm import CapExceeded, env_cap

COMMANDS = ("info", "matching", "lift", "rho", "check", "expected-charpoly", "verify", "corpus")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CommandConfig:
    command: str
    graph: str | None = None
    r: int | None = None
    d: int | None = None
    group: str | None = None
    prop: str | None = None
    factorization: str = "exact"
    oracle: bool = False
    cap: int | None = None
    tol: Fraction | None = None
    output: str | None = None
    only: tuple[str, ...] = ()
    fixtures: str | None = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        needs_graph = {"info", "matching", "lift", "rho", "expected-charpoly", "verify"}
        if self.command in needs_graph and not self.graph:
            raise UsageError(f"{self.command} needs an input file")
        if self.command == "matching" and (self.d is None or self.d < 1):
            raise UsageError("matching needs --d >= 1")
        if self.command == "lift" and self.r is None and self.group is None:
            raise UsageError("lift needs --r or --group")
        if self.r is not None and self.r < 1:
            raise UsageError("--r must be positive")
        if self.cap is not None and self.cap < 1:
            raise UsageError("--cap must be a positive integer")
        if self.tol is not None and self.tol <= 0:
            raise UsageError("--tol must be a positive rational")
        if self.command == "check" and (self.prop not in ("p1", "p2") or not self.group):
            raise UsageError("check needs p1|p2 and --group")
        if self.command == "expected-charpoly" and not self.group:
            raise UsageError("expected-charpoly needs --group")


def _graph(cfg: CommandConfig) -> OrientedMultigraph:
    path = Path(cfg.graph)
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    return load_graph(path)


def _info(cfg):
    g = _graph(cfg)
    out = {"n": g.n, "edges": g.num_edges, "degrees": g.degrees(), **classify(g).to_json()}
    return 0, out


def _matching(cfg):
    from .matching import d_matching_poly, d_matching_poly_oracle

    g = _graph(cfg)
    p = d_matching_poly_oracle(g, cfg.d, cfg.cap) if cfg.oracle else d_matching_poly(g, cfg.d)
    return 0, P.poly_to_json(p)


def _lift(cfg):
    from .search import find_lift, find_lift_group, lift_regular_with_loops

    g = _graph(cfg)
    if cfg.group and not (cfg.group.startswith("std:") and cfg.factorization == "exact"):
        cert = find_lift_group(g, cfg.group, cfg.factorization, cfg.cap, cfg.tol)
    else:
        r = int(cfg.group.split(":")[1]) if cfg.group else cfg.r
        if g.has_loops:
            cert = lift_regular_with_loops(g, r, cfg.cap, cfg.tol)
        else:
            cert = find_lift(g, r, cfg.cap, cfg.tol)
    return (2 if cert.verdict == "fail" else 0), cert.to_json()


def _rho(cfg):
    from .search import rho

    return 0, rho(_graph(cfg), cfg.tol).to_json()


def _check(cfg):
    from .repgroup import check_p1, check_p2, representation_from_descriptor

    rep = representation_from_descriptor(cfg.group)
    report = check_p1(rep) if cfg.prop == "p1" else check_p2(rep)
    out = {"group": cfg.group, "property": cfg.prop, **report.to_json()}
    return (0 if report.passed else 2), out


def _expected(cfg):
    from .search import SearchState, expected_char_poly, group_setup

    g = _graph(cfg)
    rep, fact = group_setup(cfg.group, cfg.factorization)
    state = SearchState.initial(g, rep, [fact] * g.num_edges, cfg.cap, check_rank1=False)
    p = expected_char_poly(state)
    return 0, (p.to_json() if hasattr(p, "to_json") else P.poly_to_json(p))


def _verify(cfg):
    from .search import verify_certificate

    obj = json.loads(Path(cfg.graph).read_text())
    mismatches, cert = verify_certificate(obj, cfg.tol)
    out = {"ok": not mismatches, "mismatches": mismatches, "verdict": cert.verdict}
    if mismatches:
        return 1, out
    return (2 if cert.verdict == "fail" else 0), out


def _corpus(cfg):
    from .acceptance import run_all

    directory = Path(cfg.fixtures) if cfg.fixtures else FIXTURE_DIR
    corpus = load_corpus(directory)
    results = run_all(list(cfg.only) or None, corpus)
    ok = all(r.passed for r in results)
    return (0 if ok else 2), {"passed": ok, "criteria": [r.to_json() for r in results]}


HANDLERS = {
    "info": _info,
    "matching": _matching,
    "lift": _lift,
    "rho": _rho,
    "check": _check,
    "expected-charpoly": _expected,
    "verify": _verify,
    "corpus": _corpus,
}


def run(cfg: CommandConfig) -> tuple[int, dict]:
    cfg.validate()
    return HANDLERS[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramlift", description="Ramanujan coverings and d-matching polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("graph", help="graph JSON or flat text file")
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--tol", type=str, default=None, help="positive rational, e.g. 1/1000 or 2^-40")
        p.add_argument("--output", "-o", default=None, help="also write the JSON here")

    common(sub.add_parser("info", help="structural report"))
    p = sub.add_parser("matching", help="d-matching polynomial")
    common(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="average over all d-coverings instead")
    p = sub.add_parser("lift", help="greedy one-sided Ramanujan covering")
    common(p)
    p.add_argument("--r", type=int)
    p.add_argument("--group", help="cyclic:m | gm1d:m,d | std:r")
    p.add_argument("--factorization", default="exact", help="exact | lazy:<steps>")
    common(sub.add_parser("rho", help="bracket for the universal cover spectral radius"))
    p = sub.add_parser("check", help="(P1)/(P2) of a representation")
    p.add_argument("prop", choices=["p1", "p2"])
    p.add_argument("--group", required=True, help="std:r | perm:r | sign:r | cyclic:m | gm1d:m,d")
    p.add_argument("--output", "-o", default=None)
    p = sub.add_parser("expected-charpoly", help="expected char poly of a uniform labeling")
    common(p)
    p.add_argument("--group", required=True)
    p.add_argument("--factorization", default="exact")
    p = sub.add_parser("verify", help="recompute a certificate")
    p.add_argument("graph", metavar="certificate")
    p.add_argument("--tol", type=str, default=None)
    p.add_argument("--output", "-o", default=None)
    p = sub.add_parser("corpus", help="run the acceptance matrix over the bundled corpus")
    p.add_argument("--only", action="append", default=[], help="criterion id, repeatable")
    p.add_argument("--fixtures", default=None)
    p.add_argument("--output", "-o", default=None)
    return parser


def config_from_args(ns: argparse.Namespace) -> CommandConfig:
    from .search import parse_tol

    tol = getattr(ns, "tol", None)
    cap = getattr(ns, "cap", None)
    return CommandConfig(
        command=ns.command,
        graph=getattr(ns, "graph", None),
        r=getattr(ns, "r", None),
        d=getattr(ns, "d", None),
        group=getattr(ns, "group", None),
        prop=getattr(ns, "prop", None),
        factorization=getattr(ns, "factorization", "exact"),
        oracle=getattr(ns, "oracle", False),
        cap=cap if cap is not None else None,
        tol=parse_tol(tol) if tol else None,
        output=getattr(ns, "output", None),
        only=tuple(getattr(ns, "only", []) or ()),
        fixtures=getattr(ns, "fixtures", None),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        status, payload = run(cfg)
    except (UsageError, CapExceeded, MissingFixtures, ValueError, ArithmeticError, AssertionError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(payload, indent=2) + "\n"
    sys.stdout.write(text)
    if cfg.output:
        Path(cfg.output).write_text(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

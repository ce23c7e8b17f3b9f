"""Command-line entry point: ``vtgraph analyze|coset-graph|audit``.

Exit codes: 0 success, 2 parse error, 3 precondition violation, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .graphcore import (
    Graph,
    GraphFormatError,
    PreconditionError,
    automorphism_group,
    emit_graph6,
    is_connected,
    parse_edge_list,
    parse_graph6,
)
from .permgroup import DEFAULT_CAP, CapExceeded, format_cycles, orbits
from .polycirculant import find_semiregular_bruteforce, theorem1_procedure
from .sabidussi import (
    cayley_by_normal_stabilizer,
    connection_set,
    coset_graph,
    find_regular_subgroup,
    sabidussi_isomorphism,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    graph6: str | None = None
    edges: str | None = None
    cap: int = DEFAULT_CAP
    base: int | None = None
    format: str = "text"
    exhaustive: bool = False

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        if self.base is not None and self.base < 0:
            raise ValueError("base point must be non-negative")

    @property
    def census(self) -> bool:
        return self.input is not None


@dataclass
class Item:
    """One input graph, or the parse error that replaced it."""

    lineno: int
    text: str
    label: str | None = None
    graph: Graph | None = None
    error: str | None = None


def _items(cfg: RunConfig) -> Iterator[Item]:
    if cfg.graph6 is not None:
        try:
            yield Item(1, cfg.graph6, graph=parse_graph6(cfg.graph6))
        except GraphFormatError as exc:
            yield Item(1, cfg.graph6, error=str(exc))
        return
    if cfg.edges is not None:
        with open(cfg.edges) as fh:
            text = fh.read()
        try:
            yield Item(1, cfg.edges, graph=parse_edge_list(text))
        except GraphFormatError as exc:
            yield Item(1, cfg.edges, error=str(exc))
        return
    with open(cfg.input) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            word, _, label = line.partition(" ")
            item = Item(lineno, word, label.strip() or None)
            try:
                item.graph = parse_graph6(word)
            except GraphFormatError as exc:
                item.error = str(exc)
            yield item


def _base(cfg: RunConfig, g: Graph) -> int:
    u = 0 if cfg.base is None else cfg.base
    if u >= g.n:
        raise PreconditionError(f"base point {u} out of range for n={g.n}")
    return u


def analyze(g: Graph, cfg: RunConfig) -> dict:
    out: dict = {"graph6": emit_graph6(g), "n": g.n, "connected": is_connected(g)}
    if not out["connected"]:
        out["error"] = "rejected: disconnected"
        return out
    A = automorphism_group(g, cfg.cap)
    out["aut_order"] = A.order
    out["vertex_transitive"] = len(orbits(A)) == 1
    R = find_regular_subgroup(g, cfg.cap, aut=A)
    V = cayley_by_normal_stabilizer(g, cfg.cap, aut=A)
    out["cayley_regular_subgroup"] = R is not None
    out["cayley_normal_stabilizer"] = V.is_cayley
    out["cayley"] = R is not None and V.is_cayley
    if R is not None:
        out["regular_subgroup_generators"] = [format_cycles(p) for p in R.generators]
    if V.is_cayley:
        out["normal_stabilizer_group_order"] = V.witness.group.order
    oracle = find_semiregular_bruteforce(g, cfg.cap, aut=A)
    out["semiregular_count"] = len(oracle)
    out["semiregular_signatures"] = sorted({(s.r, s.s) for _, s in oracle})
    return out


def _analyze_text(d: dict) -> str:
    lines = [f"graph6: {d['graph6']}", f"n={d['n']}",
             f"connected: {str(d['connected']).lower()}"]
    if "error" in d:
        lines.append(d["error"])
        return "\n".join(lines)
    lines += [
        f"aut_order={d['aut_order']}",
        f"vertex-transitive: {str(d['vertex_transitive']).lower()}",
        f"cayley (regular subgroup): {str(d['cayley_regular_subgroup']).lower()}",
        f"cayley (normal stabilizer): {str(d['cayley_normal_stabilizer']).lower()}",
        f"cayley={str(d['cayley']).lower()}",
        f"semiregular automorphisms: {d['semiregular_count']}; signatures "
        + (", ".join(f"({r},{s})" for r, s in d["semiregular_signatures"]) or "none"),
    ]
    return "\n".join(lines)


def coset_graph_cmd(g: Graph, cfg: RunConfig) -> dict:
    if not is_connected(g):
        raise PreconditionError("graph is disconnected")
    A = automorphism_group(g, cfg.cap)
    if len(orbits(A)) != 1:
        raise PreconditionError("graph is not vertex-transitive")
    u = _base(cfg, g)
    H = coset_graph(A, u, connection_set(g, A, u))
    iso = sabidussi_isomorphism(g, A, u, H)
    return {
        "input_graph6": emit_graph6(g),
        "coset_graph6": emit_graph6(H.graph),
        "base": u,
        "aut_order": A.order,
        "cosets": [format_cycles(c.representative) for c in H.cosets],
        "witness": list(iso.mapping.images),
        "verified": iso.check(g, H.graph),
    }


def _coset_text(d: dict) -> str:
    lines = [d["coset_graph6"]]
    lines += [f"coset {i}: {rep}" for i, rep in enumerate(d["cosets"])]
    lines += [f"vertex {v} -> coset {i}" for v, i in enumerate(d["witness"])]
    lines.append(f"witness verified: {str(d['verified']).lower()}")
    return "\n".join(lines)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _run_single(cfg: RunConfig, item: Item) -> int:
    if item.error is not None:
        print(f"parse error: {item.error}", file=sys.stderr)
        return EXIT_PARSE
    g = item.graph
    try:
        if cfg.command == "analyze":
            d = analyze(g, cfg)
            _emit(cfg, d, _analyze_text(d))
            return EXIT_PRECONDITION if "error" in d else EXIT_OK
        if cfg.command == "coset-graph":
            d = coset_graph_cmd(g, cfg)
            _emit(cfg, d, _coset_text(d))
            return EXIT_OK if d["verified"] else EXIT_PRECONDITION
        report = theorem1_procedure(g, _base(cfg, g), cfg.cap, cfg.exhaustive, label=item.label)
        _emit(cfg, report.to_dict(), report.to_text())
        return EXIT_OK
    except CapExceeded as exc:
        print(f"cap exceeded: {exc} (raise --cap above {exc.cap})", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        if cfg.command == "audit":
            skip = {"graph6": emit_graph6(g), "skipped": str(exc)}
            _emit(cfg, skip, f"graph6: {skip['graph6']}\nskipped: {exc}")
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def _run_census(cfg: RunConfig) -> int:
    tally = Counter()
    first = True
    for item in _items(cfg):
        if not first and cfg.format == "text":
            print("---")
        first = False
        record: dict = {"line": item.lineno}
        if item.label:
            record["label"] = item.label
        text_head = f"# line {item.lineno}" + (f" [{item.label}]" if item.label else "")
        if item.error is not None:
            record["error"] = f"parse error: {item.error}"
            tally["error"] += 1
            _emit(cfg, record, f"{text_head}\nerror: {record['error']}")
            continue
        g = item.graph
        try:
            if cfg.command == "analyze":
                d = analyze(g, cfg)
                body = _analyze_text(d)
                tally["ok" if "error" not in d else "skipped"] += 1
            elif cfg.command == "coset-graph":
                d = coset_graph_cmd(g, cfg)
                body = _coset_text(d)
                tally["ok"] += 1
            else:
                report = theorem1_procedure(g, _base(cfg, g), cfg.cap, cfg.exhaustive,
                                            label=item.label)
                d = report.to_dict()
                body = report.to_text()
                tally["agreement_true" if report.agreement else "agreement_false"] += 1
                tally["oracle_nonempty" if report.oracle_nonempty else "oracle_empty"] += 1
            record.update(d)
            _emit(cfg, record, f"{text_head}\n{body}")
        except PreconditionError as exc:
            record.update({"graph6": emit_graph6(g), "skipped": str(exc)})
            tally["skipped"] += 1
            _emit(cfg, record, f"{text_head}\nskipped: {exc}")
        except CapExceeded as exc:
            record.update({"graph6": emit_graph6(g), "error": f"cap exceeded: {exc}"})
            tally["error"] += 1
            _emit(cfg, record, f"{text_head}\nerror: cap exceeded: {exc}")
    summary = {"summary": dict(sorted(tally.items()))}
    if cfg.format == "text":
        print("===")
        print("summary: " + " ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    else:
        print(json.dumps(summary))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vtgraph", description=(
        "Coset-graph analysis of vertex-transitive graphs and an audit of "
        "semiregular automorphisms built from double cosets."))
    p.add_argument("command", choices=["analyze", "coset-graph", "audit"])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="file of graph6 lines (census mode)")
    src.add_argument("--graph6", metavar="WORD", help="a single graph6 word")
    src.add_argument("--edges", metavar="FILE", help="edge-list file: 'n' then 'x y' lines")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element cap for group materialization")
    p.add_argument("--base", type=int, default=None, help="base vertex u (default 0)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--exhaustive", action="store_true",
                   help="audit: also try every B' subset of size <= 2")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(args.command, args.input, args.graph6, args.edges,
                        args.cap, args.base, args.format, args.exhaustive)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        if cfg.census:
            return _run_census(cfg)
        return _run_single(cfg, next(_items(cfg)))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

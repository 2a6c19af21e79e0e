"""Line-oriented text formats for games, certificates and CNF files.

Game documents::

    # comment
    vertex a 2
    vertex b 2
    edge a b

Certificate documents hold a ``game`` section, one ``strategy <vertex>``
block per player with lines ``<view> -> <guess>`` (view colors joined by
commas, ``-`` for a player without neighbors) and an optional
``provenance`` section of ``step <k> ...`` lines.  Colors are 0-based.
"""

from __future__ import annotations

import re
from pathlib import Path

from hatguess.constructors import Certificate, Step
from hatguess.core import Game, Graph, Strategy
from hatguess.errors import (
    DuplicateVertex,
    IncompleteStrategy,
    InvalidIdentifier,
    NonPositiveHatness,
    ParseError,
    SelfLoop,
    UnknownEndpoint,
)
from hatguess.solver import export_cnf

IDENT = re.compile(r"[A-Za-z0-9_]+\Z")
_INT = re.compile(r"[+-]?[0-9]+\Z")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield n, line.split()


class _GameReader:
    def __init__(self):
        self.vertices: list[str] = []
        self.hats: dict[str, int] = {}
        self.edges: list[tuple[str, str]] = []
        self.seen_edges: set[frozenset] = set()

    def feed(self, n: int, parts: list[str]) -> None:
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 3:
                raise ParseError("expected 'vertex <id> <hatness>'", line=n)
            v, h = parts[1], parts[2]
            if not IDENT.match(v):
                raise InvalidIdentifier(v, line=n)
            if v in self.hats:
                raise DuplicateVertex(v, line=n)
            if not _INT.match(h):
                raise ParseError(f"hatness {h!r} is not a decimal integer", line=n)
            if int(h) < 1:
                raise NonPositiveHatness(v, int(h), line=n)
            self.vertices.append(v)
            self.hats[v] = int(h)
        elif kind == "edge":
            if len(parts) != 3:
                raise ParseError("expected 'edge <id> <id>'", line=n)
            a, b = parts[1], parts[2]
            for x in (a, b):
                if not IDENT.match(x):
                    raise InvalidIdentifier(x, line=n)
                if x not in self.hats:
                    raise UnknownEndpoint(x, (a, b), line=n)
            if a == b:
                raise SelfLoop(a, line=n)
            key = frozenset((a, b))
            if key in self.seen_edges:
                raise ParseError(f"duplicate edge {a} {b}", line=n)
            self.seen_edges.add(key)
            self.edges.append((a, b))
        else:
            raise ParseError(f"unknown record {kind!r}", line=n)

    def game(self, line=None) -> Game:
        if not self.vertices:
            raise ParseError("document declares no vertices", line=line)
        return Game(Graph(self.vertices, self.edges), self.hats)


def parse_game(text: str) -> Game:
    """Parse a game document; errors carry the offending line number."""
    reader = _GameReader()
    last = None
    for n, parts in _lines(text):
        reader.feed(n, parts)
        last = n
    return reader.game(last)


def serialize_game(game: Game) -> str:
    out = [f"vertex {v} {h}" for v, h in zip(game.vertices, game.hatness)]
    out += [f"edge {a} {b}" for a, b in game.graph.sorted_edges()]
    return "\n".join(out) + "\n"


def read_game(path) -> Game:
    return parse_game(Path(path).read_text(encoding="utf-8"))


# -- certificates ----------------------------------------------------------


def _view_text(view) -> str:
    return ",".join(map(str, view)) if view else "-"


def serialize_certificate(cert: Certificate) -> str:
    game, strategy = cert.game, cert.strategy
    out = ["game"]
    out += serialize_game(game).splitlines()
    for v in game.vertices:
        out.append(f"strategy {v}")
        table = strategy.tables[v]
        for k, view in enumerate(game.views(v)):
            out.append(f"{_view_text(view)} -> {table[k]}")
    if cert.provenance:
        out.append("provenance")
        for k, step in enumerate(cert.provenance):
            out.append(f"step {k} {step.to_text()}")
    return "\n".join(out) + "\n"


def _parse_view(token: str, n: int) -> tuple[int, ...]:
    if token == "-":
        return ()
    parts = token.split(",")
    if not all(_INT.match(p) for p in parts):
        raise ParseError(f"bad view {token!r}", line=n)
    return tuple(int(p) for p in parts)


def parse_certificate(text: str) -> Certificate:
    """Read a certificate document.

    The strategy must list every view exactly once; guesses are range-checked
    against the embedded game.
    """
    reader = _GameReader()
    section = None
    game = None
    rows: dict[str, dict[tuple[int, ...], tuple[int, int]]] = {}
    current = None
    steps: list[Step] = []
    for n, parts in _lines(text):
        head = parts[0]
        if head == "game" and len(parts) == 1:
            if section is not None:
                raise ParseError("'game' must be the first section", line=n)
            section = "game"
            continue
        if head == "strategy":
            if section is None:
                raise ParseError("missing 'game' section", line=n)
            if game is None:
                game = reader.game(n)
            if len(parts) != 2:
                raise ParseError("expected 'strategy <vertex>'", line=n)
            current = parts[1]
            if current not in game.graph:
                raise ParseError(f"strategy for unknown vertex {current!r}", line=n)
            if current in rows:
                raise ParseError(f"second strategy block for {current!r}", line=n)
            rows[current] = {}
            section = "strategy"
            continue
        if head == "provenance" and len(parts) == 1:
            if game is None:
                raise ParseError("provenance before strategy", line=n)
            section = "provenance"
            continue
        if section == "game":
            reader.feed(n, parts)
        elif section == "strategy":
            if len(parts) != 3 or parts[1] != "->" or not _INT.match(parts[2]):
                raise ParseError("expected '<view> -> <guess>'", line=n)
            view = _parse_view(parts[0], n)
            try:
                game.view_index(current, view)
            except ValueError as exc:
                raise ParseError(str(exc), line=n) from None
            if view in rows[current]:
                raise ParseError(f"view {parts[0]} listed twice for {current!r}", line=n)
            rows[current][view] = (int(parts[2]), n)
        elif section == "provenance":
            if head != "step" or len(parts) < 3 or not _INT.match(parts[1]):
                raise ParseError("expected 'step <k> <op> ...'", line=n)
            if int(parts[1]) != len(steps):
                raise ParseError(f"step numbers must run 0, 1, ...; got {parts[1]}", line=n)
            try:
                steps.append(Step.from_text(" ".join(parts[2:])))
            except ValueError as exc:
                raise ParseError(str(exc), line=n) from None
        else:
            raise ParseError("document must start with 'game'", line=n)
    if game is None:
        raise ParseError("certificate has no strategy section")
    tables = {}
    for v in game.vertices:
        got = rows.get(v)
        if got is None:
            raise IncompleteStrategy(f"no strategy block for {v!r}")
        table = []
        for view in game.views(v):
            if view not in got:
                raise IncompleteStrategy(f"vertex {v!r} has no entry for view {_view_text(view)}")
            table.append(got[view][0])
        tables[v] = table
    strategy = Strategy(tables)
    strategy.check_shape(game)
    return Certificate(game, strategy, tuple(steps))


def write_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(serialize_certificate(cert), encoding="utf-8")


def read_certificate(path) -> Certificate:
    return parse_certificate(Path(path).read_text(encoding="utf-8"))


def write_cnf(game: Game, path) -> tuple[int, int]:
    """Write the DIMACS encoding; returns (variables, clauses)."""
    doc = export_cnf(game)
    Path(path).write_text(doc.to_dimacs(), encoding="utf-8")
    return doc.num_vars, len(doc.clauses)


__all__ = [
    "IDENT",
    "parse_certificate",
    "parse_game",
    "read_certificate",
    "read_game",
    "serialize_certificate",
    "serialize_game",
    "write_certificate",
    "write_cnf",
]

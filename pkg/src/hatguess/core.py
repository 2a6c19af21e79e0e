"""Graphs, games, colorings, views and strategies.

Everything here is immutable.  Vertex order is the order in which vertices
were declared; it fixes how colorings are enumerated (first vertex is the most
significant digit) and how a player's view is laid out (neighbors in vertex
order).
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from hatguess.errors import (
    DomainMismatch,
    DuplicateVertex,
    EmptySubset,
    GuessOutOfRange,
    IncompleteStrategy,
    NonPositiveHatness,
    SelfLoop,
    UnknownEndpoint,
    UnknownVertex,
    ValidationError,
)

Coloring = tuple[int, ...]
View = tuple[int, ...]


def _edge_key(index, a, b):
    i, j = index[a], index[b]
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph over string identifiers."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _nbrs: dict[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __init__(self, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()):
        verts = tuple(vertices)
        index: dict[str, int] = {}
        for v in verts:
            if not isinstance(v, str) or not v:
                raise ValidationError(f"vertex identifiers must be nonempty strings, got {v!r}")
            if v in index:
                raise DuplicateVertex(v)
            index[v] = len(index)
        edge_set = set()
        for e in edges:
            pair = tuple(e)
            if len(pair) == 1 or (len(pair) == 2 and pair[0] == pair[1]):
                raise SelfLoop(pair[0])
            if len(pair) != 2:
                raise ValidationError(f"edge must have two endpoints, got {pair!r}")
            for x in pair:
                if x not in index:
                    raise UnknownEndpoint(x, pair)
            edge_set.add(frozenset(pair))
        adj: dict[str, list[str]] = {v: [] for v in verts}
        for e in edge_set:
            a, b = tuple(e)
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_index", index)
        object.__setattr__(
            self, "_nbrs", {v: tuple(sorted(ns, key=index.__getitem__)) for v, ns in adj.items()}
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def neighbors(self, v: str) -> tuple[str, ...]:
        try:
            return self._nbrs[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by canonical vertex position."""
        keys = sorted(_edge_key(self._index, *tuple(e)) for e in self.edges)
        return [(self.vertices[i], self.vertices[j]) for i, j in keys]

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            stack = [root]
            comp = []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._nbrs[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp, key=self._index.__getitem__)))
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.components()) == 1

    def induced(self, keep: Iterable[str]) -> Graph:
        keep_set = set(keep)
        for v in keep_set:
            self.index(v)
        verts = [v for v in self.vertices if v in keep_set]
        return Graph(verts, [e for e in self.edges if e <= keep_set])


@dataclass(frozen=True)
class Game:
    """A graph together with a hatness (color count) for every vertex."""

    graph: Graph
    hatness: tuple[int, ...]

    def __init__(self, graph: Graph, hatness: Mapping[str, int] | Sequence[int]):
        if isinstance(hatness, Mapping):
            for v in hatness:
                if v not in graph:
                    raise DomainMismatch(v)
            for v in graph.vertices:
                if v not in hatness:
                    raise DomainMismatch(v)
            hs = tuple(hatness[v] for v in graph.vertices)
        else:
            hs = tuple(hatness)
            if len(hs) != len(graph.vertices):
                culprit = graph.vertices[len(hs)] if len(hs) < len(graph.vertices) else "<extra>"
                raise DomainMismatch(culprit)
        if not graph.vertices:
            raise ValidationError("a game needs at least one vertex")
        for v, h in zip(graph.vertices, hs):
            if isinstance(h, bool) or not isinstance(h, int) or h < 1:
                raise NonPositiveHatness(v, h)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "hatness", hs)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def __len__(self) -> int:
        return len(self.graph.vertices)

    def hat(self, v: str) -> int:
        return self.hatness[self.graph.index(v)]

    def hatness_map(self) -> dict[str, int]:
        return dict(zip(self.graph.vertices, self.hatness))

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.graph.neighbors(v)

    @property
    def num_colorings(self) -> int:
        return math.prod(self.hatness)

    def colorings(self) -> Iterator[Coloring]:
        """All colorings in lexicographic order over the vertex order."""
        return itertools.product(*(range(h) for h in self.hatness))

    def view(self, v: str, coloring: Sequence[int]) -> View:
        idx = self.graph._index
        return tuple(coloring[idx[u]] for u in self.graph.neighbors(v))

    def view_radix(self, v: str) -> tuple[int, ...]:
        return tuple(self.hat(u) for u in self.graph.neighbors(v))

    def num_views(self, v: str) -> int:
        return math.prod(self.view_radix(v))

    def views(self, v: str) -> Iterator[View]:
        return itertools.product(*(range(r) for r in self.view_radix(v)))

    def view_index(self, v: str, view: Sequence[int]) -> int:
        radix = self.view_radix(v)
        if len(view) != len(radix):
            raise ValueError(f"view for {v!r} must have length {len(radix)}")
        k = 0
        for c, r in zip(view, radix):
            if not 0 <= c < r:
                raise ValueError(f"view {tuple(view)!r} out of range for {v!r}")
            k = k * r + c
        return k

    def with_hatness(self, hatness: Mapping[str, int] | Sequence[int]) -> Game:
        return Game(self.graph, hatness)

    def is_constant(self) -> bool:
        return len(set(self.hatness)) <= 1


def validate(game: Game) -> Game:
    """Re-check every graph and hatness invariant; return the game unchanged."""
    if not isinstance(game, Game):
        raise TypeError("validate expects a Game")
    Game(Graph(game.graph.vertices, game.graph.edges), game.hatness_map())
    return game


def make_game(
    vertices: Iterable[str], edges: Iterable[Iterable[str]], hatness: Mapping[str, int] | Sequence[int]
) -> Game:
    return Game(Graph(vertices, edges), hatness)


def _names(n: int, prefix: str) -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def path_game(hatnesses: Sequence[int], prefix: str = "v") -> Game:
    names = _names(len(hatnesses), prefix)
    return make_game(names, zip(names, names[1:]), hatnesses)


def cycle_game(hatnesses: Sequence[int], prefix: str = "v") -> Game:
    n = len(hatnesses)
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    names = _names(n, prefix)
    return make_game(names, [(names[i], names[(i + 1) % n]) for i in range(n)], hatnesses)


def clique_game(hatnesses: Sequence[int], prefix: str = "v") -> Game:
    names = _names(len(hatnesses), prefix)
    return make_game(names, itertools.combinations(names, 2), hatnesses)


class Subgame(NamedTuple):
    game: Game
    proper: bool


def subgame(game: Game, keep: Iterable[str]) -> Subgame:
    """Induced subgame on ``keep`` with hatness restricted."""
    keep_set = set(keep)
    if not keep_set:
        raise EmptySubset("subgame needs at least one vertex")
    g = game.graph.induced(keep_set)
    sub = Game(g, [game.hat(v) for v in g.vertices])
    return Subgame(sub, len(g.vertices) < len(game.vertices))


class GluePlan(NamedTuple):
    game: Game
    # g2 vertex -> identifier in the glued game (v2 maps to v1)
    rename: dict[str, str]


def glue_plan(g1: Game, v1: str, g2: Game, v2: str) -> GluePlan:
    if v1 not in g1.graph:
        raise UnknownVertex(v1)
    if v2 not in g2.graph:
        raise UnknownVertex(v2)
    taken = set(g1.vertices)
    rename = {v2: v1}
    for x in g2.vertices:
        if x == v2:
            continue
        name = x
        while name in taken:
            name += "_2"
        taken.add(name)
        rename[x] = name
    verts = list(g1.vertices) + [rename[x] for x in g2.vertices if x != v2]
    edges = [tuple(e) for e in g1.graph.edges]
    edges += [tuple(rename[x] for x in e) for e in g2.graph.edges]
    hats = g1.hatness_map()
    for x in g2.vertices:
        if x != v2:
            hats[rename[x]] = g2.hat(x)
    hats[v1] = g1.hat(v1) * g2.hat(v2)
    return GluePlan(make_game(verts, edges, hats), rename)


def glue_graphs(g1: Game, v1: str, g2: Game, v2: str) -> Game:
    """Identify ``v1`` and ``v2``; the merged vertex gets hatness h1(v1)*h2(v2).

    Vertices of ``g2`` keep their names unless they collide with a name in
    ``g1``, in which case ``_2`` is appended until unique.
    """
    return glue_plan(g1, v1, g2, v2).game


@dataclass(frozen=True)
class Strategy:
    """Per-vertex guess tables indexed by view index.

    ``tables[v][k]`` is the guess of ``v`` on its ``k``-th view in
    lexicographic order over its neighbors.  ``-1`` marks an unassigned entry
    (only meaningful for partial strategies during search).
    """

    tables: Mapping[str, tuple[int, ...]]

    def __init__(self, tables: Mapping[str, Sequence[int]]):
        object.__setattr__(self, "tables", {v: tuple(t) for v, t in tables.items()})

    def guess(self, game: Game, v: str, view: Sequence[int]) -> int:
        return self.tables[v][game.view_index(v, view)]

    @classmethod
    def from_function(cls, game: Game, fn) -> Strategy:
        """Tabulate ``fn(vertex, view) -> guess`` over every view."""
        return cls({v: [fn(v, view) for view in game.views(v)] for v in game.vertices})

    @classmethod
    def constant(cls, game: Game, guess: int = 0) -> Strategy:
        return cls({v: [guess] * game.num_views(v) for v in game.vertices})

    def check_shape(self, game: Game) -> None:
        """Raise if the strategy is not total or a guess is out of range."""
        for v in game.vertices:
            table = self.tables.get(v)
            if table is None:
                raise IncompleteStrategy(f"no table for vertex {v!r}")
            if len(table) != game.num_views(v):
                raise IncompleteStrategy(
                    f"table for {v!r} has {len(table)} entries, expected {game.num_views(v)}"
                )
            h = game.hat(v)
            for k, g in enumerate(table):
                if g < 0:
                    raise IncompleteStrategy(f"vertex {v!r} view #{k} unassigned")
                if g >= h:
                    raise GuessOutOfRange(f"vertex {v!r} view #{k} guesses {g} >= {h}")


def transport(strategy: Strategy, src: Game, dst: Game, mapping: Mapping[str, str]) -> Strategy:
    """Carry a strategy along an injective vertex map ``src -> dst``.

    Each mapped player keeps the same hatness and sees at least the images of
    its old neighbors; extra neighbors are ignored.  Unmapped ``dst`` players
    guess 0.
    """
    inverse = {}
    for y, x in mapping.items():
        if x not in dst.graph:
            raise UnknownVertex(x)
        if src.hat(y) != dst.hat(x):
            raise ValueError(f"hatness of {y!r} differs from its image {x!r}")
        inverse[x] = y
    tables = {}
    for x in dst.vertices:
        y = inverse.get(x)
        if y is None:
            tables[x] = [0] * dst.num_views(x)
            continue
        dst_nbrs = dst.neighbors(x)
        pos = {u: i for i, u in enumerate(dst_nbrs)}
        try:
            picks = [pos[mapping[u]] for u in src.neighbors(y)]
        except KeyError:
            raise ValueError(f"neighbors of {y!r} are not preserved by the map") from None
        src_table = strategy.tables[y]
        radix = src.view_radix(y)
        out = []
        for view in dst.views(x):
            k = 0
            for i, r in zip(picks, radix):
                k = k * r + view[i]
            out.append(src_table[k])
        tables[x] = out
    return Strategy(tables)

"""Closed-form deciders for paths, triangles, cycles and cactus graphs."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from hatguess.core import Game, Graph, subgame
from hatguess.errors import (
    Disconnected,
    FoldDisagreement,
    NoHatness5Vertex,
    NotACycle,
    NotAPath,
    NotCactus,
    PreconditionViolated,
    UnknownVertex,
)

log = logging.getLogger(__name__)


# -- paths -----------------------------------------------------------------


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def fold(hatnesses) -> tuple[int, ...]:
    """Leaf-deletion fold along a path, starting at its first vertex.

    ``w1 = h1``.  Deleting a leaf of effective hatness ``w`` changes its
    neighbor's hatness from ``h`` to ``h - floor(h / w)`` when the neighbor is
    the last vertex or ``w == 2``; an interior neighbor of a leaf with
    ``w >= 3`` keeps ``h``, because the other players cannot tell which of its
    colors the leaf has ruled out.  Stops at the first ``w_i == 1``; the path
    is winning iff that happens.
    """
    hs = list(hatnesses)
    out = []
    w = None
    for i, h in enumerate(hs):
        if w is None:
            w = h
        elif w == 2 or i == len(hs) - 1:
            w = h - h // w
        else:
            w = h
        out.append(w)
        if w == 1:
            break
    return tuple(out)


@dataclass(frozen=True)
class PathDecision:
    winning: bool
    left: tuple[int, ...]
    right: tuple[int, ...]
    # "fold" when both folds agree, "oracle" when exact_solve settled it
    source: str = "fold"

    def __bool__(self):
        return self.winning


def decide_path(hatnesses, *, fallback: bool = True, limits=None) -> PathDecision:
    """Decide a path game from its hatness sequence (in path order).

    Both fold directions are computed.  If they disagree the exact solver
    decides (``fallback=True``) or :class:`FoldDisagreement` is raised.
    """
    hs = tuple(hatnesses)
    if not hs:
        raise ValueError("decide_path needs a nonempty sequence")
    if any(h < 1 for h in hs):
        raise ValueError("hatness values must be positive")
    left = fold(hs)
    right = fold(reversed(hs))
    lw = left[-1] == 1
    rw = right[-1] == 1
    if lw == rw:
        return PathDecision(lw, left, right)
    if not fallback:
        raise FoldDisagreement(hs, left, right)
    from hatguess.core import path_game
    from hatguess.solver import exact_solve

    log.warning("fold disagreement on %s; falling back to exact_solve", hs)
    verdict = exact_solve(path_game(hs), limits)
    if not verdict.conclusive:
        raise FoldDisagreement(hs, left, right)
    return PathDecision(verdict.winning, left, right, "oracle")


def triangle_winning(h1: int, h2: int, h3: int) -> bool:
    """1/h1 + 1/h2 + 1/h3 >= 1, compared over a common denominator."""
    for h in (h1, h2, h3):
        if h < 1:
            raise ValueError("hatness values must be positive")
    return h2 * h3 + h1 * h3 + h1 * h2 >= h1 * h2 * h3


# -- topology helpers ------------------------------------------------------


def cycle_order(graph: Graph) -> list[str]:
    """Vertices of a cycle graph in cyclic order, starting at the first vertex
    and stepping to its earlier-declared neighbor."""
    n = len(graph.vertices)
    if n < 3 or len(graph.edges) != n or not graph.is_connected():
        raise NotACycle("graph is not a single cycle")
    if any(graph.degree(v) != 2 for v in graph.vertices):
        raise NotACycle("graph is not a single cycle")
    start = graph.vertices[0]
    order = [start]
    prev, cur = start, graph.neighbors(start)[0]
    while cur != start:
        order.append(cur)
        a, b = graph.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
    return order


def is_path_graph(graph: Graph) -> bool:
    n = len(graph.vertices)
    return (
        n >= 1
        and len(graph.edges) == n - 1
        and graph.is_connected()
        and all(graph.degree(v) <= 2 for v in graph.vertices)
    )


def path_order(graph: Graph) -> list[str]:
    """Vertices of a path graph from its earlier-declared endpoint."""
    if not is_path_graph(graph):
        raise NotAPath("graph is not a path")
    if len(graph.vertices) == 1:
        return list(graph.vertices)
    start = next(v for v in graph.vertices if graph.degree(v) == 1)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [u for u in graph.neighbors(cur) if u != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


# -- cycles ----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    # 1..4 for the four cycle conditions, 0 for the hatness-1 convention
    condition: int
    vertices: tuple[str, ...] = ()
    hatnesses: tuple[int, ...] = ()

    def describe(self) -> str:
        if self.condition == 0:
            return "hatness-1 vertex"
        return f"Condition {self.condition}"


@dataclass(frozen=True)
class CycleClassification:
    winning: bool
    witness: Optional[Witness]
    order: tuple[str, ...] = field(default=(), compare=False)


_COND4_PATTERNS = {(2, 3, 3), (3, 3, 2), (3, 2, 3)}


def classify_cycle(game: Game) -> CycleClassification:
    order = tuple(cycle_order(game.graph))
    hs = [game.hat(v) for v in order]
    n = len(order)
    for v, h in zip(order, hs):
        if h == 1:
            return CycleClassification(True, Witness(0, (v,), (1,)), order)
    # a winning proper arc is reported first: it is the most local explanation
    for length in range(1, n):
        for start in range(n):
            idx = [(start + k) % n for k in range(length)]
            arc_h = tuple(hs[i] for i in idx)
            if decide_path(arc_h).winning:
                arc_v = tuple(order[i] for i in idx)
                return CycleClassification(True, Witness(3, arc_v, arc_h), order)
    if (n == 4 or n % 3 == 0) and max(hs) <= 3:
        return CycleClassification(True, Witness(1, order, tuple(hs)), order)
    if n == 3 and triangle_winning(*hs):
        return CycleClassification(True, Witness(2, order, tuple(hs)), order)
    if max(hs) <= 4:
        for start in range(n):
            idx = [(start + k) % n for k in range(3)]
            triple = tuple(hs[i] for i in idx)
            if triple in _COND4_PATTERNS:
                return CycleClassification(
                    True, Witness(4, tuple(order[i] for i in idx), triple), order
                )
    return CycleClassification(False, None, order)


# -- reductions ------------------------------------------------------------


@dataclass(frozen=True)
class ReductionResult:
    game: Game
    removed: tuple[str, ...]
    # vertex -> (old hatness, new hatness)
    updates: dict[str, tuple[int, int]]


def delete2_hatness(ht: int, hu: int, hv: int, hw: int) -> tuple[int, int]:
    """New hatnesses of ``t`` and ``w`` after deleting ``u`` and ``v``."""
    k = _ceil_div(hv, hu)
    new_t = ht - ht // hu
    new_w = _ceil_div(hw * (k - 1), k)
    return new_t, new_w


def reduce_delete2(game: Game, t: str, u: str, v: str, w: str) -> ReductionResult:
    """Delete consecutive cycle vertices ``u, v`` (with h(v) > h(u)).

    If the returned path game is losing, the cycle game is losing.
    """
    for x in (t, u, v, w):
        if x not in game.graph:
            raise UnknownVertex(x)
    order = cycle_order(game.graph)
    if len(order) < 4:
        raise PreconditionViolated("cycle must have length at least 4")
    if len({t, u, v, w}) != 4:
        raise PreconditionViolated("t, u, v, w must be distinct")
    g = game.graph
    if not (g.has_edge(t, u) and g.has_edge(u, v) and g.has_edge(v, w)):
        raise PreconditionViolated(f"{t},{u},{v},{w} are not consecutive on the cycle")
    ht, hu, hv, hw = (game.hat(x) for x in (t, u, v, w))
    if hv <= hu:
        raise PreconditionViolated(f"need h({v}) > h({u}), got {hv} <= {hu}")
    if hu < 2:
        raise PreconditionViolated(f"need h({u}) >= 2")
    new_t, new_w = delete2_hatness(ht, hu, hv, hw)
    reduced = subgame(game, [x for x in game.vertices if x not in (u, v)]).game
    hats = reduced.hatness_map()
    hats[t] = new_t
    hats[w] = new_w
    return ReductionResult(
        reduced.with_hatness(hats), (u, v), {t: (ht, new_t), w: (hw, new_w)}
    )


def reduce_h5_path(game: Game, v: Optional[str] = None) -> list[Game]:
    """Maximal connected proper subpaths of a path holding a hatness-5 vertex.

    The path game is winning iff one of the returned games is winning; every
    connected proper subpath lies inside one of them.
    """
    order = path_order(game.graph)
    if v is None:
        v = next((x for x in game.vertices if game.hat(x) == 5), None)
        if v is None:
            raise NoHatness5Vertex("path has no vertex of hatness 5")
    elif v not in game.graph:
        raise UnknownVertex(v)
    elif game.hat(v) != 5:
        raise NoHatness5Vertex(f"h({v}) = {game.hat(v)}, expected 5")
    if len(order) == 1:
        return []
    return [subgame(game, order[1:]).game, subgame(game, order[:-1]).game]


def decide_h5_path(game: Game, v: Optional[str] = None) -> bool:
    for sub in reduce_h5_path(game, v):
        if decide_path([sub.hat(x) for x in path_order(sub.graph)]).winning:
            return True
    return False


# -- cactus graphs ---------------------------------------------------------


@dataclass(frozen=True)
class Block:
    kind: str  # "edge", "cycle" or "other"
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...] = field(default=(), compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.vertices)


def biconnected_blocks(graph: Graph) -> list[list[tuple[str, str]]]:
    """Edge lists of the biconnected components (iterative Hopcroft-Tarjan)."""
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    blocks = []
    counter = 0
    for root in graph.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(graph.neighbors(root)))]
        edges: list[tuple[str, str]] = []
        while stack:
            x, parent, it = stack[-1]
            descended = False
            for y in it:
                if y == parent:
                    continue
                if y not in disc:
                    edges.append((x, y))
                    disc[y] = low[y] = counter
                    counter += 1
                    stack.append((y, x, iter(graph.neighbors(y))))
                    descended = True
                    break
                if disc[y] < disc[x]:
                    edges.append((x, y))
                    low[x] = min(low[x], disc[y])
            if descended:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] >= disc[p]:
                    comp = []
                    while True:
                        e = edges.pop()
                        comp.append(e)
                        if e == (p, x):
                            break
                    blocks.append(comp)
    return blocks


def _make_block(graph: Graph, edges) -> Block:
    idx = graph._index
    verts = sorted({x for e in edges for x in e}, key=idx.__getitem__)
    canon = tuple(sorted((tuple(sorted(e, key=idx.__getitem__)) for e in edges),
                         key=lambda e: (idx[e[0]], idx[e[1]])))
    if len(edges) == 1:
        return Block("edge", tuple(verts), canon)
    if len(edges) == len(verts):
        sub = Graph(verts, edges)
        return Block("cycle", tuple(cycle_order(sub)), canon)
    return Block("other", tuple(verts), canon)


def _components_with_cycle(graph: Graph, removed) -> int:
    removed = {frozenset(e) for e in removed}
    rest = Graph(graph.vertices, [e for e in graph.edges if e not in removed])
    count = 0
    for comp in rest.components():
        cs = set(comp)
        m = sum(1 for e in rest.edges if e <= cs)
        if m >= len(comp):
            count += 1
    return count


@dataclass(frozen=True)
class CactusReport:
    is_cactus: bool
    blocks: tuple[Block, ...]
    triangle_count: int
    cycle_count: int
    good_cycle: bool
    leaf_cycles: tuple[Block, ...]
    hg: int
    # "Statement 1".."Statement 3" of the cactus theorem, or "single vertex"
    statement: str

    @property
    def cycles(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.kind == "cycle")

    @property
    def triangles(self) -> tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.kind == "cycle" and b.length == 3)


def is_good_cycle_length(n: int) -> bool:
    return n == 4 or n % 3 == 0


def analyze_cactus(graph: Graph) -> CactusReport:
    """Block structure and hat guessing number of a cactus graph."""
    if not graph.is_connected():
        raise Disconnected("cactus analysis needs a connected graph")
    idx = graph._index
    blocks = [_make_block(graph, comp) for comp in biconnected_blocks(graph)]
    blocks.sort(key=lambda b: sorted(idx[v] for v in b.vertices))
    is_cactus = all(b.kind != "other" for b in blocks)
    cycles = [b for b in blocks if b.kind == "cycle"]
    triangles = sum(1 for b in cycles if b.length == 3)
    good = any(is_good_cycle_length(b.length) for b in cycles)
    if is_cactus:
        leaves = tuple(b for b in cycles if _components_with_cycle(graph, b.edges) <= 1)
    else:
        leaves = ()
    if triangles >= 2:
        hg, stmt = 4, "Statement 1"
    elif len(cycles) >= 2 or good:
        hg, stmt = 3, "Statement 2"
    elif graph.edges:
        hg, stmt = 2, "Statement 3"
    else:
        hg, stmt = 1, "single vertex"
    report = CactusReport(
        is_cactus, tuple(blocks), triangles, len(cycles), good, leaves, hg, stmt
    )
    if not is_cactus:
        raise NotCactus("graph has a block that is neither an edge nor a cycle", report)
    return report

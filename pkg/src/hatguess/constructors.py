"""Explicit winning strategies and replayable certificates.

Building blocks are the modular clique strategy, the gluing composition
(merged player sees both halves of a product color) and hatness restriction.
A :class:`Certificate` records the steps that produced its strategy, so the
strategy can be rebuilt from scratch and compared table for table.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from hatguess.classify import analyze_cactus
from hatguess.core import Game, Graph, Strategy, glue_plan, make_game, transport
from hatguess.errors import (
    CertificateInvalid,
    HatGuessError,
    HatnessIncrease,
    PreconditionViolated,
    SumBelowOne,
    SynthesisCapExceeded,
    UnknownVertex,
)
from hatguess.solver import SolveLimits, exact_solve, verify_strategy

SYNTHESIS_CAP = 100_000


# -- cliques ---------------------------------------------------------------


@dataclass(frozen=True)
class ArcTable:
    """Residue arcs ``[start, end)`` in Z_L, one per player, in input order."""

    modulus: int
    hatnesses: tuple[int, ...]
    starts: tuple[int, ...]
    ends: tuple[int, ...]

    @classmethod
    def build(cls, hatnesses: Sequence[int]) -> ArcTable:
        hs = tuple(hatnesses)
        if not hs or any(h < 1 for h in hs):
            raise ValueError("hatnesses must be positive")
        L = math.lcm(*hs)
        starts, ends = [], []
        acc = 0
        for h in hs:
            s = min(acc, L)
            starts.append(s)
            ends.append(min(s + L // h, L))
            acc += L // h
        return cls(L, hs, tuple(starts), tuple(ends))

    def segment(self, i: int) -> int:
        return self.modulus // self.hatnesses[i]

    def covers(self) -> bool:
        return self.ends[-1] == self.modulus

    def owner(self, residue: int) -> Optional[int]:
        for i, (s, e) in enumerate(zip(self.starts, self.ends)):
            if s <= residue < e:
                return i
        return None


def clique_strategy(hatnesses: Sequence[int], vertices: Optional[Sequence[str]] = None) -> Strategy:
    """Winning strategy on the complete graph when ``sum(1/h) >= 1``.

    Player ``i`` adds up everyone else's scaled colors ``c_j * L/h_j`` modulo
    ``L`` and guesses the color that would put the total sum in its own arc.
    Vertices default to ``v0, v1, ...`` as in :func:`hatguess.core.clique_game`.
    """
    hs = tuple(hatnesses)
    if sum(Fraction(1, h) for h in hs) < 1:
        raise SumBelowOne(f"sum of 1/h over {hs} is below 1")
    names = list(vertices) if vertices is not None else [f"v{i}" for i in range(len(hs))]
    if len(names) != len(hs):
        raise ValueError("one vertex name per hatness is required")
    arcs = ArcTable.build(hs)
    L = arcs.modulus
    tables = {}
    for i, name in enumerate(names):
        seg = arcs.segment(i)
        s, e = arcs.starts[i], arcs.ends[i]
        others = [arcs.segment(j) for j in range(len(hs)) if j != i]
        others_h = [hs[j] for j in range(len(hs)) if j != i]
        row = []
        for view in itertools.product(*(range(h) for h in others_h)):
            t = sum(c * w for c, w in zip(view, others)) % L
            guess = 0
            for c in range(hs[i]):
                if s <= (t + c * seg) % L < e:
                    guess = c
                    break
            row.append(guess)
        tables[name] = row
    return Strategy(tables)


# -- composition -----------------------------------------------------------


def _require_valid(game: Game, strategy: Strategy, what: str) -> None:
    try:
        bad = verify_strategy(game, strategy)
    except HatGuessError as exc:
        raise CertificateInvalid(f"{what}: {exc}") from None
    if bad is not None:
        raise CertificateInvalid(f"{what} loses on coloring {bad}")


def _checked(game: Game, strategy: Strategy) -> tuple[Game, Strategy]:
    bad = verify_strategy(game, strategy)
    if bad is not None:  # would mean a construction bug
        raise AssertionError(f"constructed strategy loses on {bad}")
    return game, strategy


def glue_strategies(
    g1: Game, s1: Strategy, v1: str, g2: Game, s2: Strategy, v2: str
) -> tuple[Game, Strategy]:
    """Combine two winning strategies across a glued vertex.

    A color ``c`` of the merged vertex stands for the pair
    ``(c % h1(v1), c // h1(v1))``.  Players from either side decode their half;
    the merged player answers both sub-strategies and encodes the pair.
    """
    _require_valid(g1, s1, "first strategy")
    _require_valid(g2, s2, "second strategy")
    game, rename = glue_plan(g1, v1, g2, v2)
    H1 = g1.hat(v1)
    back = {new: old for old, new in rename.items()}
    side1 = set(g1.vertices)

    def lookup(src: Game, strat: Strategy, x: str, colors: Mapping[str, int]) -> int:
        view = tuple(colors[u] for u in src.neighbors(x))
        return strat.tables[x][src.view_index(x, view)]

    tables = {}
    for x in game.vertices:
        nbrs = game.neighbors(x)
        row = []
        for view in game.views(x):
            seen = dict(zip(nbrs, view))
            if x == v1:
                c1 = {u: seen[u] for u in g1.neighbors(v1)}
                c2 = {u: seen[rename[u]] for u in g2.neighbors(v2)}
                row.append(lookup(g1, s1, v1, c1) + H1 * lookup(g2, s2, v2, c2))
                continue
            if x in side1:
                colors = {u: (c % H1 if u == v1 else c) for u, c in seen.items()}
                row.append(lookup(g1, s1, x, colors))
            else:
                y = back[x]
                colors = {}
                for u, c in seen.items():
                    if u == v1:
                        colors[v2] = c // H1
                    else:
                        colors[back[u]] = c
                row.append(lookup(g2, s2, y, colors))
        tables[x] = row
    return _checked(game, Strategy(tables))


def _hatness_map(game: Game, hatness) -> dict[str, int]:
    if isinstance(hatness, Mapping):
        out = game.hatness_map()
        for v, h in hatness.items():
            if v not in game.graph:
                raise UnknownVertex(v)
            out[v] = h
        return out
    hs = list(hatness)
    if len(hs) != len(game):
        raise ValueError("hatness sequence length does not match the game")
    return dict(zip(game.vertices, hs))


def restrict_hatness(game: Game, strategy: Strategy, hatness) -> tuple[Game, Strategy]:
    """Lower hatnesses pointwise; guesses that no longer fit become 0.

    ``hatness`` is a full sequence or a partial mapping of new values.
    """
    new = _hatness_map(game, hatness)
    for v in game.vertices:
        if new[v] > game.hat(v):
            raise HatnessIncrease(f"h'({v}) = {new[v]} exceeds h({v}) = {game.hat(v)}")
    _require_valid(game, strategy, "strategy")
    small = game.with_hatness(new)
    tables = {}
    for v in small.vertices:
        old = strategy.tables[v]
        h = small.hat(v)
        row = []
        for view in small.views(v):
            g = old[game.view_index(v, view)]
            row.append(g if g < h else 0)
        tables[v] = row
    return _checked(small, Strategy(tables))


# -- certificates ----------------------------------------------------------

# number of input step ids each operation takes
STEP_ARITY = {"clique": 0, "solve": 0, "glue": 2, "restrict": 1, "relabel": 1}


@dataclass(frozen=True)
class Step:
    """One construction step.

    ``inputs`` are indices of earlier steps.  ``args`` are text tokens:

    * ``clique``: ``v:h`` per vertex (complete graph, modular strategy)
    * ``solve``: ``v:h`` per vertex then ``a-b`` per edge (exact solver)
    * ``glue``: ``v1 v2``, the vertices identified in the two inputs
    * ``restrict``: ``v:h`` new hatness per vertex
    * ``relabel``: ``old:new`` per vertex, listed in the new vertex order
    """

    op: str
    inputs: tuple[int, ...] = ()
    args: tuple[str, ...] = ()

    def __post_init__(self):
        if self.op not in STEP_ARITY:
            raise ValueError(f"unknown step {self.op!r}")
        if len(self.inputs) != STEP_ARITY[self.op]:
            raise ValueError(f"step {self.op!r} takes {STEP_ARITY[self.op]} inputs")

    def to_text(self) -> str:
        return " ".join([self.op, *map(str, self.inputs), *self.args])

    @classmethod
    def from_text(cls, text: str) -> Step:
        parts = text.split()
        if not parts:
            raise ValueError("empty step")
        op = parts[0]
        if op not in STEP_ARITY:
            raise ValueError(f"unknown step {op!r}")
        k = STEP_ARITY[op]
        if len(parts) < 1 + k:
            raise ValueError(f"step {op!r} needs {k} inputs")
        return cls(op, tuple(int(x) for x in parts[1 : 1 + k]), tuple(parts[1 + k :]))


def _pairs(tokens) -> list[tuple[str, str]]:
    out = []
    for tok in tokens:
        a, sep, b = tok.partition(":")
        if not sep:
            raise ValueError(f"expected 'name:value', got {tok!r}")
        out.append((a, b))
    return out


def _vertex_tokens(game: Game) -> tuple[str, ...]:
    return tuple(f"{v}:{game.hat(v)}" for v in game.vertices)


def _run_step(step: Step, done: list[tuple[Game, Strategy]], limits: SolveLimits):
    if step.op == "clique":
        pairs = _pairs(step.args)
        names = [a for a, _ in pairs]
        hs = [int(b) for _, b in pairs]
        game = make_game(names, itertools.combinations(names, 2), hs)
        return _checked(game, clique_strategy(hs, names))
    if step.op == "solve":
        verts = [t for t in step.args if ":" in t]
        edges = [tuple(t.split("-")) for t in step.args if ":" not in t]
        pairs = _pairs(verts)
        game = make_game([a for a, _ in pairs], edges, [int(b) for _, b in pairs])
        if game.num_colorings > SYNTHESIS_CAP:
            raise SynthesisCapExceeded(
                f"{game.num_colorings} colorings exceed the synthesis cap of {SYNTHESIS_CAP}"
            )
        verdict = exact_solve(game, limits)
        if not verdict.conclusive:
            raise SynthesisCapExceeded(f"solver gave up ({verdict.limit_hit})")
        if not verdict.winning:
            raise CertificateInvalid("solve step names a losing game")
        return game, verdict.strategy
    if step.op == "glue":
        (g1, s1), (g2, s2) = (done[i] for i in step.inputs)
        v1, v2 = step.args
        return glue_strategies(g1, s1, v1, g2, s2, v2)
    if step.op == "restrict":
        game, strat = done[step.inputs[0]]
        return restrict_hatness(game, strat, {a: int(b) for a, b in _pairs(step.args)})
    # relabel
    game, strat = done[step.inputs[0]]
    mapping = dict(_pairs(step.args))
    if set(mapping) != set(game.vertices):
        raise ValueError("relabel must name every vertex exactly once")
    order = [mapping[a] for a, _ in _pairs(step.args)]
    edges = [tuple(mapping[x] for x in e) for e in game.graph.edges]
    dst = make_game(order, edges, {mapping[v]: game.hat(v) for v in game.vertices})
    return _checked(dst, transport(strat, game, dst, mapping))


def replay(steps: Sequence[Step], limits: SolveLimits | None = None) -> tuple[Game, Strategy]:
    """Execute a step list; the last step is the result."""
    if not steps:
        raise ValueError("empty provenance")
    limits = limits or SolveLimits(max_colorings=SYNTHESIS_CAP)
    done: list[tuple[Game, Strategy]] = []
    for i, step in enumerate(steps):
        if any(not 0 <= j < i for j in step.inputs):
            raise ValueError(f"step {i} refers to a later or missing step")
        done.append(_run_step(step, done, limits))
    return done[-1]


@dataclass(frozen=True)
class Certificate:
    game: Game
    strategy: Strategy
    provenance: tuple[Step, ...]

    def verify(self) -> Optional[tuple[int, ...]]:
        """None when the strategy wins on every coloring."""
        return verify_strategy(self.game, self.strategy)

    def replay(self) -> tuple[Game, Strategy]:
        return replay(self.provenance)


class _Builder:
    """Accumulates steps and their results."""

    def __init__(self):
        self.steps: list[Step] = []
        self.done: list[tuple[Game, Strategy]] = []
        self.limits = SolveLimits(max_colorings=SYNTHESIS_CAP)

    def add(self, step: Step) -> int:
        self.done.append(_run_step(step, self.done, self.limits))
        self.steps.append(step)
        return len(self.steps) - 1

    def clique(self, names, hs) -> int:
        return self.add(Step("clique", (), tuple(f"{v}:{h}" for v, h in zip(names, hs))))

    def solve(self, game: Game) -> int:
        edges = tuple(f"{a}-{b}" for a, b in game.graph.sorted_edges())
        return self.add(Step("solve", (), _vertex_tokens(game) + edges))

    def glue(self, i: int, v1: str, j: int, v2: str) -> int:
        return self.add(Step("glue", (i, j), (v1, v2)))

    def restrict(self, i: int, q: int) -> int:
        game = self.done[i][0]
        return self.add(Step("restrict", (i,), tuple(f"{v}:{q}" for v in game.vertices)))

    def chain(self, path: Sequence[str]) -> int:
        """K2(2,2) links glued end to end: hatness (2, 4, ..., 4, 2)."""
        cur = self.clique(path[:2], (2, 2))
        for a, b in zip(path[1:], path[2:]):
            cur = self.glue(cur, a, self.clique((a, b), (2, 2)), a)
        return cur

    def finish(self, i: int, host: Graph) -> Certificate:
        game = self.done[i][0]
        idx = host._index
        order = sorted(game.vertices, key=idx.__getitem__)
        j = self.add(Step("relabel", (i,), tuple(f"{v}:{v}" for v in order)))
        game, strat = self.done[j]
        return Certificate(game, strat, tuple(self.steps))


def _bfs_path(graph: Graph, sources, targets) -> list[str]:
    """Shortest path from any source to any target (ties: earliest in vertex order)."""
    idx = graph._index
    targets = set(targets)
    start = sorted(sources, key=idx.__getitem__)
    parent = {s: None for s in start}
    queue = deque(start)
    while queue:
        x = queue.popleft()
        if x in targets:
            path = [x]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for y in graph.neighbors(x):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    raise ValueError("no connecting path")


def _closest(graph: Graph, blocks):
    """Pair of blocks at minimum distance and the shortest path joining them."""
    best = None
    for a, b in itertools.combinations(range(len(blocks)), 2):
        path = _bfs_path(graph, blocks[a].vertices, blocks[b].vertices)
        if best is None or len(path) < len(best[2]):
            best = (blocks[a], blocks[b], path)
    return best


def _cycle_game(block, attach: str, first: int, rest: int) -> Game:
    hats = {v: (first if v == attach else rest) for v in block.vertices}
    edges = block.edges
    return make_game(block.vertices, edges, hats)


def cactus_lower_bound_certificate(graph: Graph) -> Certificate:
    """Winning strategy for the constant hatness ``HG(graph)`` on a subgraph.

    Raises :class:`NotCactus` for non-cactus graphs and
    :class:`SynthesisCapExceeded` when a cycle strategy is too large to be
    found by the solver.
    """
    report = analyze_cactus(graph)
    q = report.hg
    if q < 2:
        raise PreconditionViolated("a single vertex has nothing to certify")
    b = _Builder()
    cycles = sorted(report.cycles, key=lambda c: c.length)
    if q == 2:
        u, v = graph.sorted_edges()[0]
        return b.finish(b.clique((u, v), (2, 2)), graph)
    if q == 4:
        t1, t2, path = _closest(graph, list(report.triangles))
        return b.finish(_two_blocks(b, t1, t2, path, rest=4, tri=True), graph)
    # q == 3
    good = [c for c in cycles if c.length == 3 or c.length == 4 or c.length % 3 == 0]
    if good:
        c = good[0]
        if c.length == 3:
            return b.finish(b.clique(c.vertices, (3, 3, 3)), graph)
        return b.finish(b.solve(_cycle_game(c, c.vertices[0], 3, 3)), graph)
    c1, c2, path = _closest(graph, cycles)
    top = _two_blocks(b, c1, c2, path, rest=3, tri=False)
    return b.finish(b.restrict(top, 3), graph)


def _two_blocks(b: _Builder, blk1, blk2, path, *, rest: int, tri: bool) -> int:
    """Two cycles joined through ``path``, each with hatness 2 where the path meets it."""

    def piece(blk, attach):
        if tri:
            others = [v for v in blk.vertices if v != attach]
            return b.clique([attach, *others], (2, 4, 4))
        return b.solve(_cycle_game(blk, attach, 2, rest))

    a, z = path[0], path[-1]
    left = piece(blk1, a)
    if len(path) > 1:
        left = b.glue(left, a, b.chain(path), a)
    return b.glue(left, z, piece(blk2, z), z)

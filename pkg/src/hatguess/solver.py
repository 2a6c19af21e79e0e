"""Exact winnability oracle, strategy verification and CNF export.

The oracle searches for a strategy table that covers every coloring.  The
table is encoded propositionally (one variable per player, view and guess),
and the search is a conflict-driven backtracking procedure run by the kernel
in :mod:`hatguess._backend`.  On top of the plain encoding the oracle adds
color-relabeling symmetry breaking: every player's colors may be permuted
independently without changing winnability, so an entry may only take a
color that is already in use or the smallest unused one.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from hatguess._backend import kernel
from hatguess.core import Coloring, Game, Strategy, validate
from hatguess.errors import TooLarge

log = logging.getLogger(__name__)

MAX_CNF_VARIABLES = 10**7


@dataclass(frozen=True)
class SolveLimits:
    max_colorings: int = 100_000
    max_nodes: int = 50_000_000
    timeout: float = 300.0

    def __post_init__(self):
        for name in ("max_colorings", "max_nodes", "timeout"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class Winning:
    strategy: Strategy
    nodes_explored: int = field(default=0, compare=False)

    winning = True
    conclusive = True


@dataclass(frozen=True)
class Losing:
    nodes_explored: int
    colorings_covered: int

    winning = False
    conclusive = True


@dataclass(frozen=True)
class Inconclusive:
    limit_hit: str
    nodes_explored: int = 0

    winning = None
    conclusive = False


Verdict = Union[Winning, Losing, Inconclusive]


@dataclass
class CnfDocument:
    num_vars: int
    clauses: list[tuple[int, ...]]
    # (variable, vertex, view, color)
    legend: list[tuple[int, str, tuple[int, ...], int]]

    def to_dimacs(self) -> str:
        out = []
        for var, v, view, color in self.legend:
            shown = ",".join(map(str, view)) if view else "-"
            out.append(f"c map {var} {v} {shown} {color}")
        out.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for cl in self.clauses:
            out.append(" ".join(map(str, cl)) + " 0")
        return "\n".join(out) + "\n"


class _Layout:
    """Variable numbering: vertex-major, then view index, then color."""

    def __init__(self, game: Game):
        self.game = game
        self.hats = list(game.hatness)
        index = game.graph._index
        self.nbrs = [[index[u] for u in game.neighbors(v)] for v in game.vertices]
        self.nviews = [game.num_views(v) for v in game.vertices]
        self.base = []
        total = 0
        for v, h in enumerate(self.hats):
            self.base.append(total)
            total += self.nviews[v] * h
        self.num_entry_vars = total

    def var(self, v: int, k: int, c: int) -> int:
        return self.base[v] + k * self.hats[v] + c + 1

    def coverage(self):
        """Yield ``(coloring, entry view indices)`` in canonical order."""
        hats, nbrs = self.hats, self.nbrs
        n = len(hats)
        for col in self.game.colorings():
            ks = []
            for v in range(n):
                k = 0
                for u in nbrs[v]:
                    k = k * hats[u] + col[u]
                ks.append(k)
            yield col, ks


def _strategy_clauses(layout: _Layout) -> list[tuple[int, ...]]:
    clauses = []
    for v, h in enumerate(layout.hats):
        for k in range(layout.nviews[v]):
            xs = [layout.var(v, k, c) for c in range(h)]
            clauses.append(tuple(xs))
            for a in range(h):
                for b in range(a + 1, h):
                    clauses.append((-xs[a], -xs[b]))
    return clauses


def export_cnf(game: Game) -> CnfDocument:
    """Propositional encoding: satisfiable iff the game is winning.

    Variable ``x(v, view, c)`` says that player ``v`` guesses ``c`` on
    ``view``.  Each (player, view) gets one at-least-one clause followed by
    pairwise at-most-one clauses; each coloring gets one coverage clause.
    """
    validate(game)
    layout = _Layout(game)
    if layout.num_entry_vars > MAX_CNF_VARIABLES:
        raise TooLarge(f"{layout.num_entry_vars} variables exceed {MAX_CNF_VARIABLES}")
    clauses = _strategy_clauses(layout)
    for col, ks in layout.coverage():
        clauses.append(tuple(layout.var(v, ks[v], col[v]) for v in range(len(col))))
    legend = []
    for v, name in enumerate(game.vertices):
        for k, view in enumerate(game.views(name)):
            for c in range(layout.hats[v]):
                legend.append((layout.var(v, k, c), name, view, c))
    return CnfDocument(layout.num_entry_vars, clauses, legend)


def _symmetry_clauses(layout: _Layout, entry_order, next_var: int):
    """Value-precedence clauses for per-player color relabeling.

    Entries are taken in ``entry_order``.  A color of player ``v`` is *used*
    before entry ``k`` if an earlier entry of a neighbor has it in its view or
    an earlier entry of ``v`` guesses it.  Entry ``k`` may only guess a used
    color or the smallest unused one.  Any winning strategy can be relabeled
    entry by entry to satisfy this, since swapping two unused colors of ``v``
    leaves every earlier entry fixed.
    """
    hats, nbrs = layout.hats, layout.nbrs
    n = len(hats)
    seen_in_view = [set() for _ in range(n)]
    # used_lit[v][g]: None (never guessed so far) or a variable that is true
    # iff some earlier entry of v guesses g
    used_lit = [[None] * hats[v] for v in range(n)]
    clauses = []
    for v, k, view in entry_order:
        static = seen_in_view[v]

        def used(g):
            return True if g in static else used_lit[v][g]

        for g in range(hats[v]):
            ug = used(g)
            if ug is True:
                continue
            below = [used(x) for x in range(g)]
            if all(b is True for b in below):
                continue
            x = layout.var(v, k, g)
            head = [-x] + ([ug] if ug else [])
            if any(b is None for b in below):
                clauses.append(tuple(head))
            else:
                for b in below:
                    if b is not True:
                        clauses.append(tuple(head + [b]))
        for g in range(hats[v]):
            if g in static:
                continue
            x = layout.var(v, k, g)
            old = used_lit[v][g]
            nv = next_var
            next_var += 1
            if old is None:
                clauses.append((-nv, x))
                clauses.append((nv, -x))
            else:
                clauses.append((-nv, old, x))
                clauses.append((nv, -old))
                clauses.append((nv, -x))
            used_lit[v][g] = nv
        for u, c in zip(nbrs[v], view):
            seen_in_view[u].add(c)
    return clauses, next_var - 1


def _solver_cnf(layout: _Layout, symmetry: bool = True):
    clauses = _strategy_clauses(layout)
    n = len(layout.hats)
    listed = set()
    entry_order = []
    for col, ks in layout.coverage():
        clauses.append(tuple(layout.var(v, ks[v], col[v]) for v in range(n)))
        if symmetry:
            for v in range(n):
                key = (v, ks[v])
                if key not in listed:
                    listed.add(key)
                    entry_order.append((v, ks[v], tuple(col[u] for u in layout.nbrs[v])))
    nvars = layout.num_entry_vars
    if symmetry:
        extra, nvars = _symmetry_clauses(layout, entry_order, nvars + 1)
        clauses.extend(extra)
    return nvars, clauses


def _decode(layout: _Layout, model) -> Strategy:
    tables = {}
    for v, name in enumerate(layout.game.vertices):
        h = layout.hats[v]
        row = []
        for k in range(layout.nviews[v]):
            guess = 0
            for c in range(h):
                if model[layout.var(v, k, c) - 1] == 1:
                    guess = c
                    break
            row.append(guess)
        tables[name] = row
    return Strategy(tables)


def exact_solve(game: Game, limits: SolveLimits | None = None) -> Verdict:
    """Decide winnability exactly.

    Returns :class:`Winning` with a verified strategy, :class:`Losing` once
    the search space is exhausted, or :class:`Inconclusive` if a node or time
    budget ran out.  Raises :class:`TooLarge` if the game has more colorings
    than ``limits.max_colorings``.
    """
    limits = limits or SolveLimits()
    validate(game)
    total = game.num_colorings
    if total > limits.max_colorings:
        raise TooLarge(f"{total} colorings exceed the cap of {limits.max_colorings}")
    layout = _Layout(game)
    nvars, clauses = _solver_cnf(layout)
    status, model, decisions, _props, conflicts = kernel.solve_cnf(
        nvars, clauses, limits.max_nodes, float(limits.timeout)
    )
    nodes = decisions + conflicts
    if status == kernel.SAT:
        strategy = _decode(layout, model)
        bad = verify_strategy(game, strategy)
        if bad is not None:
            raise AssertionError(f"solver returned a strategy that loses on {bad}")
        return Winning(strategy, nodes)
    if status == kernel.UNSAT:
        return Losing(nodes, total)
    limit = "max_nodes" if status == kernel.NODE_LIMIT else "timeout"
    log.info("exact_solve gave up (%s) after %d nodes", limit, nodes)
    return Inconclusive(limit, nodes)


def verify_strategy(game: Game, strategy: Strategy) -> Optional[Coloring]:
    """Return None if the strategy wins on every coloring, else the first losing one."""
    strategy.check_shape(game)
    index = game.graph._index
    nbrs = [[index[u] for u in game.neighbors(v)] for v in game.vertices]
    tables = [strategy.tables[v] for v in game.vertices]
    bad = kernel.first_uncovered(list(game.hatness), nbrs, tables)
    return None if bad is None else tuple(bad)


def is_winning(game: Game, limits: SolveLimits | None = None) -> bool:
    """Boolean convenience wrapper; raises if the search is inconclusive."""
    verdict = exact_solve(game, limits)
    if not verdict.conclusive:
        raise RuntimeError(f"exact_solve inconclusive ({verdict.limit_hit})")
    return verdict.winning

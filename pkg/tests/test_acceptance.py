"""Acceptance criteria 1-10.

Each test records a one-line PASS/FAIL summary (shown in the terminal
summary and on stdout with ``-s``) before asserting.
"""

from __future__ import annotations

import functools
import itertools
import os
import random
import time


from _report import record
from conftest import graph_from
from hatguess.classify import (
    analyze_cactus,
    classify_cycle,
    decide_path,
    fold,
    path_order,
    reduce_delete2,
    triangle_winning,
)
from hatguess.constructors import cactus_lower_bound_certificate
from hatguess.core import Game, Graph, clique_game, cycle_game, glue_plan, path_game
from hatguess.solver import SolveLimits, exact_solve, export_cnf
from oracles import cnf_satisfiable

LIMITS = SolveLimits(max_colorings=100_000, max_nodes=50_000_000, timeout=300.0)


def oracle(game: Game) -> bool | None:
    v = exact_solve(game, LIMITS)
    return v.winning if v.conclusive else None


@functools.lru_cache(maxsize=None)
def cycle_oracle(hs: tuple[int, ...]) -> bool | None:
    return oracle(cycle_game(hs))


@functools.lru_cache(maxsize=None)
def path_oracle(hs: tuple[int, ...]) -> bool | None:
    return oracle(path_game(hs))


def criterion2_set():
    return [h for h in itertools.product(range(2, 6), repeat=4)] + [
        h for h in itertools.product(range(2, 5), repeat=5)
    ]


def criterion3_set():
    return [h for n in range(1, 5) for h in itertools.product(range(2, 6), repeat=n)]


def test_criterion_1_triangles():
    t = time.perf_counter()
    mismatches = 0
    for hs in itertools.product(range(2, 7), repeat=3):
        if triangle_winning(*hs) != oracle(clique_game(hs)):
            mismatches += 1
    dt = time.perf_counter() - t
    ok = mismatches == 0 and dt < 60
    record(1, ok, f"triangles: 125 games, {mismatches} mismatches, {dt:.1f}s (limit 60s)")
    assert ok


def test_criterion_2_cycles():
    t = time.perf_counter()
    mismatches = inconclusive = 0
    games = criterion2_set()
    for hs in games:
        expected = cycle_oracle(hs)
        if expected is None:
            inconclusive += 1
        elif classify_cycle(cycle_game(hs)).winning != expected:
            mismatches += 1
    dt = time.perf_counter() - t
    ok = mismatches == 0 and inconclusive == 0 and dt < 1800
    record(
        2, ok,
        f"cycles: {len(games)} games (256 C4 + 243 C5), {mismatches} mismatches, "
        f"{inconclusive} inconclusive, {dt:.1f}s (limit 1800s)",
    )
    assert ok


def test_criterion_3_paths():
    t = time.perf_counter()
    mismatches = disagreements = 0
    seqs = criterion3_set()
    for hs in seqs:
        left, right = fold(hs), fold(hs[::-1])
        if (left[-1] == 1) != (right[-1] == 1):
            disagreements += 1
        if decide_path(hs).winning != path_oracle(hs):
            mismatches += 1
    dt = time.perf_counter() - t
    ok = mismatches == 0 and disagreements == 0 and dt < 300 and len(seqs) == 340
    record(
        3, ok,
        f"paths: {len(seqs)} sequences, {mismatches} mismatches, "
        f"{disagreements} fold disagreements, {dt:.1f}s (limit 300s)",
    )
    assert ok


def test_criterion_4_bowtie_certificates(bowtie, seven):
    cert5 = cactus_lower_bound_certificate(bowtie)
    t = time.perf_counter()
    bad5 = cert5.verify()
    dt5 = time.perf_counter() - t
    cert7 = cactus_lower_bound_certificate(seven)
    t = time.perf_counter()
    bad7 = cert7.verify()
    dt7 = time.perf_counter() - t
    ok = (
        bad5 is None and bad7 is None and dt5 < 1 and dt7 < 5
        and cert5.game.num_colorings == 1024 and cert7.game.num_colorings == 16384
        and set(cert5.game.hatness) == {4} and set(cert7.game.hatness) == {4}
    )
    record(
        4, ok,
        f"bowtie *4: {cert5.game.num_colorings} colorings, counterexample={bad5}, {dt5:.4f}s (limit 1s); "
        f"7-vertex: {cert7.game.num_colorings} colorings, counterexample={bad7}, {dt7:.4f}s (limit 5s)",
    )
    assert ok


def test_criterion_5_delete2_contrapositive():
    checked = violations = 0
    for hs in criterion2_set():
        n = len(hs)
        g = cycle_game(hs)
        order = list(g.vertices)
        for start in range(n):
            for step in (1, -1):
                t, u, v, w = (order[(start + step * k) % n] for k in range(4))
                if g.hat(v) <= g.hat(u):
                    continue
                reduced = reduce_delete2(g, t, u, v, w).game
                seq = tuple(reduced.hat(x) for x in path_order(reduced.graph))
                if path_oracle(seq) is False:
                    checked += 1
                    if cycle_oracle(hs) is not False:
                        violations += 1
    ok = violations == 0 and checked > 0
    record(5, ok, f"delete-two reduction: {checked} losing reductions checked, {violations} violations")
    assert ok


def test_criterion_6_hatness5_paths():
    t = time.perf_counter()
    checked = violations = 0
    for n in range(1, 6):
        for hs in itertools.product((2, 3, 5), repeat=n):
            if 5 not in hs:
                continue
            subs = [hs[i:j] for i in range(n) for j in range(i + 1, n + 1) if (i, j) != (0, n)]
            some_sub = any(path_oracle(s) for s in subs)
            checked += 1
            if path_oracle(hs) != some_sub:
                violations += 1
    dt = time.perf_counter() - t
    ok = violations == 0 and dt < 600
    record(6, ok, f"hatness-5 paths: {checked} paths, {violations} violations, {dt:.1f}s (limit 600s)")
    assert ok


def _max_winning_q(graph: Graph, cap: int = 6) -> int:
    best = 0
    for q in range(1, cap + 1):
        game = Game(graph, [q] * len(graph.vertices))
        verdict = oracle(game)
        assert verdict is not None
        if not verdict:
            break
        best = q
    return best


def test_criterion_7_cactus_hg(bowtie):
    fixtures = {
        "single vertex": (Graph(["a"]), 1),
        "edge": (graph_from("ab", ["ab"]), 2),
        "3-path": (graph_from("abc", ["ab", "bc"]), 2),
        "triangle": (graph_from("abc", ["ab", "bc", "ca"]), 3),
        "C4": (graph_from("abcd", ["ab", "bc", "cd", "da"]), 3),
        "C5": (graph_from("abcde", ["ab", "bc", "cd", "de", "ea"]), 2),
        "triangle+pendant": (graph_from("abcd", ["ab", "bc", "ca", "cd"]), 3),
    }
    wrong = []
    for name, (g, expected) in fixtures.items():
        hg = analyze_cactus(g).hg
        if hg != expected or _max_winning_q(g) != hg:
            wrong.append(name)
    cert = cactus_lower_bound_certificate(bowtie)
    bow_hg = analyze_cactus(bowtie).hg
    bow_ok = bow_hg == 4 and cert.verify() is None and set(cert.game.hatness) == {4}
    extended = "skipped (set HATGUESS_EXTENDED=1)"
    if os.environ.get("HATGUESS_EXTENDED") == "1":
        v = exact_solve(Game(bowtie, [5] * 5), SolveLimits(max_colorings=10**5, timeout=600.0))
        if v.conclusive:
            extended = f"oracle says {'winning' if v.winning else 'losing'}"
            bow_ok = bow_ok and not v.winning
        else:
            extended = f"oracle did not finish ({v.limit_hit})"
    ok = not wrong and bow_ok
    record(
        7, ok,
        f"cactus HG: {len(fixtures)} fixtures, mismatches={wrong or 'none'}; "
        f"bowtie HG={bow_hg}, *4 certificate verified={cert.verify() is None}, "
        f"*5 losing by classifier, extended oracle {extended}",
    )
    assert ok


def _random_connected(rng: random.Random, n: int, names: str) -> Graph:
    vs = list(names[:n])
    edges = {frozenset((vs[i], vs[rng.randrange(i)])) for i in range(1, n)}
    for a, b in itertools.combinations(vs, 2):
        if rng.random() < 0.3:
            edges.add(frozenset((a, b)))
    return Graph(vs, [tuple(e) for e in edges])


def _random_losing(rng, names, need_two: bool):
    while True:
        n = rng.randint(1, 4)
        g = _random_connected(rng, n, names)
        hs = [rng.randint(2, 4) for _ in range(n)]
        if need_two:
            hs[rng.randrange(n)] = 2
        game = Game(g, hs)
        if oracle(game) is False:
            return game


def test_criterion_8_losing_glue():
    rng = random.Random(20240608)
    violations = inconclusive = 0
    pairs = 0
    while pairs < 100:
        g1 = _random_losing(rng, "abcd", False)
        g2 = _random_losing(rng, "pqrs", True)
        v1 = rng.choice(g1.vertices)
        v2 = rng.choice([v for v in g2.vertices if g2.hat(v) == 2])
        glued = glue_plan(g1, v1, g2, v2).game
        hats = glued.hatness_map()
        hats[v1] = g1.hat(v1)  # merged vertex keeps the first game's hatness
        game = glued.with_hatness(hats)
        pairs += 1
        verdict = oracle(game)
        if verdict is None:
            inconclusive += 1
        elif verdict:
            violations += 1
    ok = violations == 0 and inconclusive == 0
    record(8, ok, f"losing glue: {pairs} pairs, {violations} violations, {inconclusive} inconclusive")
    assert ok


def test_criterion_9_cnf_fidelity():
    games = [clique_game(h) for h in itertools.product(range(2, 7), repeat=3)]
    games += [cycle_game(h) for h in criterion2_set()]
    games += [path_game(h) for h in criterion3_set()]
    checked = mismatches = 0
    for g in games:
        doc = export_cnf(g)
        if doc.num_vars > 20:
            continue
        checked += 1
        if cnf_satisfiable(doc.num_vars, doc.clauses) != oracle(g):
            mismatches += 1
    ok = mismatches == 0 and checked > 0
    record(9, ok, f"CNF fidelity: {checked} games with <= 20 variables, {mismatches} mismatches")
    assert ok


def test_criterion_10_monotonicity():
    rng = random.Random(7)
    violations = inconclusive = 0
    for _ in range(200):
        n = rng.randint(1, 5)
        g = _random_connected(rng, n, "abcde")
        hs = [rng.randint(1, 4) for _ in range(n)]
        smaller = [rng.randint(1, h) for h in hs]
        big, small = oracle(Game(g, hs)), oracle(Game(g, smaller))
        if big is None or small is None:
            inconclusive += 1
        elif big and not small:
            violations += 1
    ok = violations == 0 and inconclusive == 0
    record(10, ok, f"monotonicity: 200 pairs, {violations} violations, {inconclusive} inconclusive")
    assert ok

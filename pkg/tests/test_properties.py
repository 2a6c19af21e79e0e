"""Property-based checks over randomly drawn small games."""

import itertools

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from hatguess import io
from hatguess.classify import decide_path, fold
from hatguess.constructors import clique_strategy, glue_strategies, restrict_hatness
from hatguess.core import Game, Graph, Strategy, clique_game, glue_graphs, path_game, subgame
from hatguess.solver import exact_solve, verify_strategy
from oracles import first_losing_coloring

NAMES = ["a", "b", "c", "d", "e"]


@st.composite
def games(draw, max_vertices=4, max_hat=3, min_hat=1):
    n = draw(st.integers(1, max_vertices))
    vs = NAMES[:n]
    pairs = list(itertools.combinations(vs, 2))
    edges = [p for p in pairs if draw(st.booleans())]
    hs = draw(st.lists(st.integers(min_hat, max_hat), min_size=n, max_size=n))
    return Game(Graph(vs, edges), hs)


def view_tables(game, strategy):
    return {
        v: {view: strategy.tables[v][k] for k, view in enumerate(game.views(v))}
        for v in game.vertices
    }


@settings(max_examples=80, deadline=None)
@given(games(max_vertices=5, max_hat=6))
def test_serialize_round_trip(game):
    assert io.parse_game(io.serialize_game(game)) == game


@settings(max_examples=60, deadline=None)
@given(games())
def test_solver_winning_strategies_verify_independently(game):
    v = exact_solve(game)
    if v.winning:
        assert first_losing_coloring(game, view_tables(game, v.strategy)) is None


@settings(max_examples=60, deadline=None)
@given(games(), st.data())
def test_subgame_monotonicity(game, data):
    keep = data.draw(st.lists(st.sampled_from(game.vertices), min_size=1, unique=True))
    if exact_solve(subgame(game, keep).game).winning:
        assert exact_solve(game).winning


@settings(max_examples=60, deadline=None)
@given(games(), st.data())
def test_restriction_keeps_winning_strategy(game, data):
    v = exact_solve(game)
    if not v.winning:
        return
    smaller = [data.draw(st.integers(1, h)) for h in game.hatness]
    g2, s2 = restrict_hatness(game, v.strategy, smaller)
    assert verify_strategy(g2, s2) is None


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(games(max_vertices=3), games(max_vertices=3), st.data())
def test_glue_of_winning_games_wins(g1, g2, data):
    v1, v2 = exact_solve(g1), exact_solve(g2)
    if not (v1.winning and v2.winning):
        return
    a = data.draw(st.sampled_from(g1.vertices))
    b = data.draw(st.sampled_from(g2.vertices))
    game, strat = glue_strategies(g1, v1.strategy, a, g2, v2.strategy, b)
    assert game == glue_graphs(g1, a, g2, b)
    assert len(game) == len(g1) + len(g2) - 1
    assert len(game.graph.edges) == len(g1.graph.edges) + len(g2.graph.edges)
    assert first_losing_coloring(game, view_tables(game, strat)) is None


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_fold_symmetric_and_matches_oracle(hs):
    assert (fold(hs)[-1] == 1) == (fold(hs[::-1])[-1] == 1)
    assert decide_path(hs, fallback=False).winning == exact_solve(path_game(hs)).winning


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 8), min_size=2, max_size=4))
def test_clique_strategy_wins_iff_unit_sum(hs):
    from fractions import Fraction

    if sum(Fraction(1, h) for h in hs) >= 1:
        g = clique_game(hs)
        assert verify_strategy(g, clique_strategy(hs)) is None


@settings(max_examples=60, deadline=None)
@given(games(max_vertices=3), st.integers(0, 2**32 - 1))
def test_verify_matches_plain_loop(game, seed):
    import random

    rng = random.Random(seed)
    s = Strategy({v: [rng.randrange(game.hat(v)) for _ in range(game.num_views(v))] for v in game.vertices})
    assert verify_strategy(game, s) == first_losing_coloring(game, view_tables(game, s))

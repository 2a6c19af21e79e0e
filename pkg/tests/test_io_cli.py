import io as stdio

import pytest

from hatguess import io
from hatguess.cli import run_cli
from hatguess.constructors import cactus_lower_bound_certificate
from hatguess.core import clique_game, cycle_game, make_game, path_game
from hatguess.errors import (
    DuplicateVertex,
    IncompleteStrategy,
    InvalidIdentifier,
    NonPositiveHatness,
    ParseError,
    SelfLoop,
    UnknownEndpoint,
)

BOWTIE4 = """\
vertex a 4
vertex b 4
vertex c 4
vertex d 4
vertex e 4
edge a b
edge b c
edge a c
edge c d
edge d e
edge c e
"""


def test_parse_k2():
    g = io.parse_game("vertex a 2\nvertex b 2\nedge a b")
    assert g.vertices == ("a", "b") and g.hatness == (2, 2)
    assert g.graph.has_edge("a", "b")


def test_parse_tolerates_whitespace_and_comments():
    g = io.parse_game("# hi\n\n   vertex   a\t3  \r\nvertex b 1\n  edge b a\n")
    assert g.hatness == (3, 1) and len(g.graph.edges) == 1


@pytest.mark.parametrize(
    "text, exc, line",
    [
        ("edge a b", UnknownEndpoint, 1),
        ("vertex a 2\nvertex a 2", DuplicateVertex, 2),
        ("vertex a 2\nedge a a", SelfLoop, 2),
        ("vertex a 0", NonPositiveHatness, 1),
        ("vertex a-b 2", InvalidIdentifier, 1),
        ("vertex a two", ParseError, 1),
        ("vertex a 2\nvertex b 2\nedge a b\nedge b a", ParseError, 4),
        ("node a 2", ParseError, 1),
        ("vertex a", ParseError, 1),
    ],
)
def test_parse_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as e:
        io.parse_game(text)
    assert e.value.line == line
    assert f"line {line}" in str(e.value)


def test_empty_document():
    with pytest.raises(ParseError):
        io.parse_game("# nothing\n")


def test_game_round_trip():
    for g in [path_game([2, 5, 2]), cycle_game([3, 4, 3, 4]), clique_game([2, 4, 4]),
              make_game(["z", "a"], [], (1, 7))]:
        text = io.serialize_game(g)
        assert io.parse_game(text) == g
        assert io.serialize_game(io.parse_game(text)) == text


def test_certificate_round_trip(bowtie):
    cert = cactus_lower_bound_certificate(bowtie)
    text = io.serialize_certificate(cert)
    back = io.parse_certificate(text)
    assert back.game == cert.game
    assert back.strategy.tables == cert.strategy.tables
    assert back.provenance == cert.provenance
    assert back.verify() is None
    assert io.serialize_certificate(back) == text


def test_certificate_empty_view_dash():
    from hatguess.constructors import Certificate
    from hatguess.core import Strategy

    g = make_game(["a"], [], (1,))
    text = io.serialize_certificate(Certificate(g, Strategy({"a": [0]}), ()))
    assert "- -> 0" in text
    assert io.parse_certificate(text).strategy.tables == {"a": (0,)}


def test_certificate_missing_entry():
    text = "game\nvertex a 2\nvertex b 2\nedge a b\nstrategy a\n0 -> 0\nstrategy b\n0 -> 1\n1 -> 0\n"
    with pytest.raises(IncompleteStrategy):
        io.parse_certificate(text)


def test_certificate_bad_lines():
    with pytest.raises(ParseError):
        io.parse_certificate("strategy a\n")
    with pytest.raises(ParseError) as e:
        io.parse_certificate("game\nvertex a 2\nstrategy a\n- => 0\n")
    assert e.value.line == 4


def run(argv):
    out = stdio.StringIO()
    code = run_cli(argv, out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_cli_classify_c4(files):
    path = files("c4.txt", io.serialize_game(cycle_game([3] * 4)))
    code, out = run(["classify", path])
    assert code == 0
    assert out.splitlines()[0] == "WINNING (Theorem 1, Condition 1)"


def test_cli_classify_losing_cycle_and_path(files):
    code, out = run(["classify", files("c5.txt", io.serialize_game(cycle_game([3] * 5)))])
    assert code == 1 and out.startswith("LOSING")
    code, out = run(["classify", files("p.txt", io.serialize_game(path_game([2, 3, 2])))])
    assert code == 0 and out.startswith("WINNING")


def test_cli_classify_refuses_mixed_cactus(files):
    g = make_game("abcd", [("a", "b"), ("b", "c"), ("c", "a"), ("c", "d")], (2, 3, 3, 4))
    code, _ = run(["classify", files("x.txt", io.serialize_game(g))])
    assert code == 65


def test_cli_solve_252(files):
    code, out = run(["solve", files("p.txt", io.serialize_game(path_game([2, 5, 2])))])
    assert code == 1
    assert out.splitlines()[0] == "LOSING"


def test_cli_solve_cert_then_verify(files, tmp_path):
    game = files("c4.txt", io.serialize_game(cycle_game([3] * 4)))
    cert = str(tmp_path / "c4.cert")
    assert run(["solve", game, "--cert", cert])[0] == 0
    code, out = run(["verify", game, "--cert", cert])
    assert (code, out) == (0, "VALID\n")


def test_cli_verify_counterexample(files):
    game = files("k2.txt", "vertex a 2\nvertex b 2\nedge a b\n")
    cert = files("bad.cert", "game\nvertex a 2\nvertex b 2\nedge a b\n"
                 "strategy a\n0 -> 0\n1 -> 0\nstrategy b\n0 -> 0\n1 -> 0\n")
    code, out = run(["verify", game, "--cert", cert])
    assert code == 1
    assert out == "INVALID (counterexample: a=1 b=1)\n"


def test_cli_solve_inconclusive(files):
    path = files("c5.txt", io.serialize_game(cycle_game([3] * 5)))
    code, out = run(["solve", path, "--max-nodes", "5"])
    assert code == 2 and out.startswith("INCONCLUSIVE (max_nodes)")
    code, out = run(["solve", path, "--max-colorings", "10"])
    assert code == 2


def test_cli_hg_bowtie(files, tmp_path):
    game = files("bow.txt", BOWTIE4)
    cert = str(tmp_path / "bow.cert")
    code, out = run(["hg", game, "--cert", cert])
    assert code == 0
    assert out.splitlines()[0] == "HG = 4 (Theorem 2, Statement 1)"
    assert run(["verify", game, "--cert", cert]) == (0, "VALID\n")


def test_cli_reduce(files):
    game = files("c4.txt", io.serialize_game(cycle_game([5, 2, 3, 5])))
    code, out = run(["reduce", game, "--lemma", "delete2", "--at", "v0,v1,v2,v3"])
    assert code == 0
    g = io.parse_game(out)
    assert g.hatness == (3, 3)
    game = files("p.txt", io.serialize_game(path_game([2, 5, 3])))
    code, out = run(["reduce", game, "--lemma", "h5", "--at", "v1"])
    assert code == 0 and out.count("# subpath") == 2


def test_cli_export_cnf(files, tmp_path):
    game = files("k2.txt", "vertex a 2\nvertex b 2\nedge a b\n")
    out_path = tmp_path / "k2.cnf"
    code, out = run(["export-cnf", game, "-o", str(out_path)])
    assert code == 0 and out == "p cnf 8 12\n"
    assert "p cnf 8 12" in out_path.read_text()


def test_cli_usage_and_input_errors(files):
    assert run(["nonsense"])[0] == 64
    assert run([])[0] == 64
    assert run(["solve", "x", "--max-nodes", "-3"])[0] == 64
    assert run(["classify", "/nonexistent/file"])[0] == 65
    assert run(["classify", files("bad.txt", "edge a b\n")])[0] == 65
    game = files("c4.txt", io.serialize_game(cycle_game([5, 2, 3, 5])))
    assert run(["reduce", game, "--lemma", "delete2", "--at", "v0,v1"])[0] == 64


def test_cli_deterministic(files):
    game = files("c5.txt", io.serialize_game(cycle_game([2, 3, 3, 3, 3])))
    assert run(["solve", game]) == run(["solve", game])
    assert run(["classify", game]) == run(["classify", game])

import json
import logging

import pytest

from weylkit.cli import EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, load_cache, main, store_cache
from weylkit.modules import CharacterCache, simple_character
from weylkit.roots import root_system

G2 = root_system("G2")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_module_trivial(capsys):
    code, out, _ = run(capsys, "module", "--type", "G2", "-p", "2", "--weight", "0,0")
    assert code == EXIT_OK
    assert "dimension: 1" in out
    assert "socle layer" in out and "sign convention" in out


def test_module_json_is_deterministic(capsys):
    argv = ["module", "--weight", "3,0", "--json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["format_version"] == 1
    assert data["dimension"] == 77
    assert data["ambiguous"] is True
    assert sum(m for _, m in data["character"]) == data["dimension"]
    assert len(data["socle_layers"]) == 6


def test_maximal_vectors_of_50(capsys):
    code, out, _ = run(capsys, "module", "--weight", "5,0", "--maximal-vectors", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    # eleven independent maximal vectors spread over ten weights
    assert sum(m["dimension"] for m in data["maximal_vectors"]) == 11
    assert len(data["maximal_vectors"]) == 10
    assert {"weight": [4, 0], "dimension": 2} in data["maximal_vectors"]
    assert "socle_layers" not in data


def test_socle_of_22(capsys):
    code, out, _ = run(capsys, "module", "--weight", "2,2", "--socle", "--json")
    layers = json.loads(out)["socle_layers"]
    assert len(layers) == 13 and sorted(layers[0]) == [[0, 0], [0, 1]]


def test_hom_tables(capsys):
    code, out, _ = run(capsys, "hom", "--below", "0,0", "--json")
    assert json.loads(out)["table"] == [[1]]
    code, out, _ = run(capsys, "hom", "--below", "2,2", "--block", "steinberg", "--json")
    data = json.loads(out)
    assert data["order"] == [[1, 1], [3, 1]]
    assert data["table"] == [[1, None], [1, 1]]
    code, out, _ = run(capsys, "hom", "--below", "2,2", "--block", "trivial")
    assert code == EXIT_OK and len(out.splitlines()) == 13


def test_blocks_and_ext(capsys):
    code, out, _ = run(capsys, "blocks", "--below", "2,2")
    assert code == EXIT_OK and out.startswith("2 blocks among 14 weights")
    code, out, _ = run(capsys, "ext", "--weight", "2,0", "--mu", "0,1", "--json")
    assert json.loads(out)["found"] is True
    code, out, _ = run(capsys, "ext", "--weight", "2,0", "--mu", "1,0")
    assert code == EXIT_OK and "no witness" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["module"],
        ["module", "--weight", "-1,0"],
        ["module", "--weight", "1"],
        ["module", "--weight", "x,y"],
        ["module", "--weight", "1,0", "-p", "4"],
        ["module", "--weight", "1,0", "--type", "Q5"],
        ["frobnicate"],
        ["hom", "--below", "1,0", "--block", "steinberg"],
    ],
)
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # raised by argparse itself
        code = exc.code
    err = capsys.readouterr().err
    assert code == EXIT_USAGE and "error" in err


def test_computation_error_exit_code(capsys, monkeypatch):
    import weylkit.cli as cli

    def boom(*a, **k):
        raise cli.EnumerationTooLarge("too many")

    monkeypatch.setattr(cli, "build_report", boom)
    code, _, err = run(capsys, "module", "--weight", "1,0")
    assert code == EXIT_COMPUTE and "too many" in err


def test_verify_shipped_fixture(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_OK
    assert "0 failed" in out and "FAIL" not in out


def test_verify_empty_and_broken_fixtures(capsys, tmp_path):
    empty = tmp_path / "empty.fix"
    empty.write_text("")
    code, out, _ = run(capsys, "verify", "--fixture", str(empty))
    assert code == EXIT_OK and "0 checks" in out

    wrong = tmp_path / "wrong.fix"
    wrong.write_text(
        "format_version 1\n"
        "socle-layers G2 p=2 weight=0,2 : 0,1 | 2,0 | 0,0 | 1,0 | 3,0 | 0,2\n"
        "socle-layers G2 p=2 weight=2,0 : 0,1 1,0 | 1,0 | 2,0\n"
    )
    code, out, _ = run(capsys, "verify", "--fixture", str(wrong))
    assert code == EXIT_VERIFY
    assert out.count("FAIL") == 1
    assert "layer 2: expected 1,0, got 0,0" in out

    bad = tmp_path / "bad.fix"
    bad.write_text("format_version 1\n\nambiguity G2 p=2 weight=3,0 : perhaps\n")
    code, _, err = run(capsys, "verify", "--fixture", str(bad))
    assert code == EXIT_USAGE and "line 3" in err

    code, _, err = run(capsys, "verify", "--fixture", str(tmp_path / "missing.fix"))
    assert code == EXIT_USAGE


def test_cache_round_trip(tmp_path):
    path = tmp_path / "cache.json"
    cache = CharacterCache()
    ch = simple_character((2, 2), 2, G2, cache)
    store_cache(path, cache)
    loaded = load_cache(path)
    assert loaded.get(("G2", 2, (2, 2))) == ch
    # a different prime is never served from this cache
    assert loaded.get(("G2", 3, (2, 2))) is None


def test_second_cached_run_recomputes_nothing(capsys, tmp_path, caplog):
    path = tmp_path / "cache.json"
    argv = ["module", "--weight", "2,0", "--cache", str(path), "-v"]
    with caplog.at_level(logging.INFO, logger="weylkit"):
        run(capsys, *argv)
    assert path.exists()
    caplog.clear()
    with caplog.at_level(logging.INFO, logger="weylkit"):
        run(capsys, *argv)
    messages = [r.getMessage() for r in caplog.records]
    assert not any(m.startswith("computing simple character") for m in messages)
    assert any(m.startswith("simple characters: 0 computed") for m in messages)


def test_corrupt_cache_is_rebuilt(capsys, tmp_path, caplog):
    path = tmp_path / "cache.json"
    path.write_text("{not json")
    with caplog.at_level(logging.WARNING, logger="weylkit"):
        code, _, _ = run(capsys, "module", "--weight", "1,0", "--decompose", "--cache", str(path))
    assert code == EXIT_OK
    assert any("corrupt" in r.getMessage() for r in caplog.records)
    assert json.loads(path.read_text())["format_version"] == 1

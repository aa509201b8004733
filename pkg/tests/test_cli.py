import json
import subprocess
import sys

from topolab import cli
from topolab.suites import SuiteReport


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "topolab.cli"] + args,
        input=stdin,
        capture_output=True,
        text=True,
        timeout=300,
    )
    return proc


def test_gen_space_deterministic():
    a = run_cli(["gen", "space", "--points", "3", "--seed", "7"])
    b = run_cli(["gen", "space", "--points", "3", "--seed", "7"])
    assert a.returncode == 0 and a.stdout == b.stdout
    obj = json.loads(a.stdout)
    assert obj["points"] == 3


def test_gen_empty_space():
    out = run_cli(["gen", "space", "--points", "0"])
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"points": 0, "opens": [[]]}


def test_gen_system_validates():
    from topolab.jsonio import decode_system
    from topolab.systems import validate_system

    out = run_cli(["gen", "system", "--chain", "2", "--points", "3", "--seed", "1"])
    assert out.returncode == 0
    sys_obj = decode_system(json.loads(out.stdout))
    assert validate_system(sys_obj).ok


def test_gen_rejects_oversize():
    assert run_cli(["gen", "space", "--points", "99"]).returncode == 2


def test_env_seed_fallback(monkeypatch, capsys):
    monkeypatch.setenv("TOPOLAB_SEED", "7")
    assert cli.main(["gen", "space", "--points", "3"]) == 0
    with_env = capsys.readouterr().out
    monkeypatch.delenv("TOPOLAB_SEED")
    assert cli.main(["gen", "space", "--points", "3", "--seed", "7"]) == 0
    assert capsys.readouterr().out == with_env


def test_game_solve_stdin():
    sierp = '{"points":2,"opens":[[],[1],[0,1]]}'
    out = run_cli(["game", "solve"], stdin=sierp)
    assert out.returncode == 0
    sol = json.loads(out.stdout)
    assert sol["winner"] == "I"
    assert {"covered": [], "status": "win", "move": [1]} in sol["win_table"]


def test_game_play_transcript():
    d2 = '{"points":2,"opens":[[],[0],[1],[0,1]]}'
    out = run_cli(["game", "play", "--strategy-i", "solver", "--strategy-ii", "echo"], stdin=d2)
    assert out.returncode == 0
    t = json.loads(out.stdout)
    assert t["outcome"] == "I-wins" and len(t["rounds"]) == 2


def test_game_rejects_bad_json():
    assert run_cli(["game", "solve"], stdin="{not json").returncode == 2
    assert run_cli(["game", "solve"], stdin='{"points":2,"opens":[[]]}').returncode == 2


def test_repl_validates_and_finishes(tmp_path):
    space_file = tmp_path / "d2.json"
    space_file.write_text('{"points":2,"opens":[[],[0],[1],[0,1]]}')
    moves = "0\n\n5\n1\n"  # valid, empty, not open, valid
    out = run_cli(["game", "repl", "--in", str(space_file)], stdin=moves)
    assert out.returncode == 0
    assert "must be nonempty" in out.stdout
    assert "not open" in out.stdout
    assert "Player I wins" in out.stdout


def test_repl_requires_file():
    assert run_cli(["game", "repl"], stdin="").returncode == 2


def test_suite_exit_codes_and_determinism():
    args = ["suite", "all", "--max-points", "3", "--samples", "40", "--seed", "42"]
    a = run_cli(args)
    b = run_cli(args)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    payload = json.loads(a.stdout)
    assert payload["violations_total"] == 0
    assert [s["suite"] for s in payload["suites"]] == [
        "quotient",
        "game",
        "systems",
        "roundtrip",
    ]
    assert all(s["cases_run"] > 0 for s in payload["suites"])


def test_suite_text_format():
    out = run_cli(
        ["suite", "game", "--max-points", "2", "--samples", "10", "--format", "text"]
    )
    assert out.returncode == 0
    assert "violations=0" in out.stdout


def test_suite_usage_errors():
    assert run_cli(["suite", "bogus"]).returncode == 2
    assert run_cli(["suite", "all", "--max-points", "9"]).returncode == 2


def test_suite_reports_violations_with_exit_1(monkeypatch, capsys):
    # a deliberately broken report must surface as exit code 1 with witness
    def broken(name, max_points, samples, seed):
        rep = SuiteReport("game", seed, max_points, samples)
        rep.check(False, "injected_failure", {"detail": "mutation smoke test"})
        return [rep]

    monkeypatch.setattr(cli, "run_suite", broken)
    code = cli.main(["suite", "game", "--samples", "1"])
    out = capsys.readouterr().out
    assert code == 1
    payload = json.loads(out)
    assert payload["violations_total"] == 1
    assert payload["suites"][0]["violations"][0]["property"] == "injected_failure"


def test_suite_roundtrip_reparses():
    out = run_cli(["suite", "quotient", "--max-points", "2", "--samples", "5"])
    payload = json.loads(out.stdout)
    from topolab.jsonio import dumps

    assert dumps(payload) == out.stdout

import json

from explora.cli import main
from explora.generators import format_atm, gen_ak, gen_c, gen_fig4
from explora.textio import format_automaton, parse_automaton

from conftest import ATM_CORPUS


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_k_explorable_exit_codes(tmp_path):
    a2 = write(tmp_path, "a2.aut", format_automaton(gen_ak(2)))
    assert main(["k-explorable", "-k", "2", a2]) == 0
    assert main(["k-explorable", "-k", "1", a2]) == 1


def test_explorable_inconclusive_exit_code(tmp_path, capsys):
    c = write(tmp_path, "c.aut", format_automaton(gen_c()))
    assert main(["--json", "explorable", "--max-k", "4", c]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert payload["verdict"] == "not-explorable-up-to: 4"
    assert payload["channel_budget"] == 5
    assert payload["lasso_bound"] == 6
    assert "timings_ms" in payload


def test_explorable_positive_with_witness(tmp_path, capsys):
    a2 = write(tmp_path, "a2.aut", format_automaton(gen_ak(2)))
    out = str(tmp_path / "witness.json")
    assert main(["--json", "explorable", "--max-k", "3", "--witness", out, a2]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["witness_k"] == 2
    moves = json.loads((tmp_path / "witness.json").read_text())
    assert moves


def test_omega_explorable_exit_codes(tmp_path):
    left = write(tmp_path, "l.aut", format_automaton(gen_fig4("left")))
    right = write(tmp_path, "r.aut", format_automaton(gen_fig4("right")))
    assert main(["omega-explorable", left]) == 0
    assert main(["omega-explorable", right]) == 1


def test_omega_unknown_emits_reduction(tmp_path):
    text = """automaton p
alphabet: a b
states: 1
initial: 0
condition: parity 1 4
t 0 a 0 2
t 0 b 0 3
"""
    p = write(tmp_path, "p.aut", text)
    out = str(tmp_path / "reduced.aut")
    assert main(["omega-explorable", "--emit-reduction", out, p]) == 2
    reduced = parse_automaton((tmp_path / "reduced.aut").read_text())
    assert reduced.condition == "buchi"


def test_hd_subcommand(tmp_path):
    c = write(tmp_path, "c.aut", format_automaton(gen_c()))
    assert main(["hd", "--exact", c]) == 1
    det = """automaton d
alphabet: a
states: 1
initial: 0
condition: buchi
t 0 a 0 2
"""
    d = write(tmp_path, "d.aut", det)
    assert main(["hd", "--exact", d]) == 0
    assert main(["hd", "--via-g2", "--witness-k", "1", d]) == 0


def test_pcp_pipeline(tmp_path):
    a2 = write(tmp_path, "a2.aut", format_automaton(gen_ak(2)))
    pcp = str(tmp_path / "a2.pcp")
    assert main(["pcp-reduce", a2, "-o", pcp]) == 0
    assert main(["population", "-k", "2", pcp]) == 0
    assert main(["population", "-k", "1", pcp]) == 1
    nfa_out = str(tmp_path / "prod.aut")
    assert main(["pcp-to-nfa", pcp, "-o", nfa_out]) == 0
    product = parse_automaton((tmp_path / "prod.aut").read_text())
    assert product.condition == "finite"


def test_generate_and_construct(tmp_path):
    out = str(tmp_path / "gen.aut")
    assert main(["generate", "ak", "-k", "2", "-o", out]) == 0
    assert parse_automaton((tmp_path / "gen.aut").read_text()) == gen_ak(2)
    assert main(["generate", "fig4", "left", "-o", out]) == 0
    assert main(["construct", "cond02", "-k", "2", "-o", out]) == 0
    cond = parse_automaton((tmp_path / "gen.aut").read_text())
    assert cond.num_states == 4

    power_out = str(tmp_path / "sq.aut")
    a2 = write(tmp_path, "a2.aut", format_automaton(gen_ak(2)))
    assert main(["construct", "power", "-k", "2", a2, "-o", power_out]) == 0

    name, machine, word, _ = ATM_CORPUS[0]
    atm_path = write(tmp_path, "m.atm", format_atm(machine))
    assert main(["generate", "atm", atm_path, word, "-o", out]) == 0
    reduced = parse_automaton((tmp_path / "gen.aut").read_text())
    assert reduced.condition == "safety"


def test_solve_game(tmp_path, capsys):
    text = """arena
positions: 2
initial: 0
channels: 2
range: 0 1 2
range: 1 1 2
owner: 0 0
e 0 1 2 1
e 1 0 1 2
objective: or p0 p1
"""
    arena = write(tmp_path, "g.arena", text)
    assert main(["solve-game", arena]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["winning_region_0"] == [0, 1]
    assert payload["initial_winner"] == 0


def test_parse_error_exit_code(tmp_path, capsys):
    bad = write(tmp_path, "bad.aut", "automaton x\nalphabet a\n")
    assert main(["k-explorable", "-k", "1", bad]) == 3
    assert "expected" in capsys.readouterr().err


def test_missing_monitor_is_usage_error(tmp_path, capsys):
    text = """automaton nb
alphabet: a
states: 2
initial: 0
condition: buchi
t 0 a 0 1
t 0 a 1 2
t 1 a 1 1
"""
    p = write(tmp_path, "nb.aut", text)
    assert main(["k-explorable", "-k", "1", p]) == 3
    assert "monitor" in capsys.readouterr().err


def test_bad_usage_exit_code():
    assert main(["no-such-command"]) == 3


def test_env_knobs_surface_in_json(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("EXPLORE_CHANNEL_BUDGET", "7")
    monkeypatch.setenv("EXPLORE_LASSO_BOUND", "4")
    a2 = write(tmp_path, "a2.aut", format_automaton(gen_ak(2)))
    assert main(["--json", "k-explorable", "-k", "2", a2]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["channel_budget"] == 7
    assert payload["lasso_bound"] == 4

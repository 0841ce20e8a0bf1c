"""Command-line surface: exact text output, JSON determinism, exit codes,
file outputs, and byte-identical behavior between in-process and server
modes."""

import json

import pytest

from twisted_schur import cli
from twisted_schur.formats import dump_json
from twisted_schur.service.handlers import handle_multiplier

Z2_SPEC = {"family": "cyclic", "params": {"n": 2}}
ALPHA = {"degree": 2, "modulus": 2, "values": {"1,1": 1}}
BAD_ALPHA = {"degree": 2, "modulus": 4, "values": {"1,1": 1}}


def write(tmp_path, name, payload):
    path = tmp_path / name
    if isinstance(payload, str):
        path.write_text(payload, encoding="utf-8")
    else:
        path.write_text(dump_json(payload), encoding="utf-8")
    return str(path)


@pytest.fixture()
def z2(tmp_path):
    return write(tmp_path, "z2.json", Z2_SPEC)


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------

def test_multiplier_text_is_exact(z2, capsys):
    assert cli.main(["multiplier", z2, "--action", "-1"]) == 0
    assert capsys.readouterr().out == "[2]\n"


def test_repgroups_text_table(z2, capsys):
    assert cli.main(["repgroups", z2, "--action", "-1"]) == 0
    out = capsys.readouterr().out
    assert out == ("phi (per element) | A = H^2(G, C*_phi) | "
                   "phi-twisted representation groups\n"
                   "1, -1 | Z2 | 4:Z4\n"
                   "count: 1\n")


def test_cohomology_text_and_reps(z2, capsys):
    assert cli.main(["cohomology", z2, "--degree", "3",
                     "--coeff", "finite:2"]) == 0
    assert capsys.readouterr().out == "[2]\n"
    assert cli.main(["cohomology", z2, "--degree", "3",
                     "--coeff", "sign", "--action", "-1", "--reps"]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "[2]"
    assert len(lines) == 2 and lines[1].startswith("representative 0: ")


def test_lift_text_end_to_end(z2, tmp_path, capsys):
    alpha = write(tmp_path, "alpha.json", ALPHA)
    rep_path = str(tmp_path / "rep.json")
    rg_path = str(tmp_path / "rg.json")
    assert cli.main(["regular-rep", z2, "--action", "-1",
                     "--cocycle", alpha, "--output", rep_path]) == 0
    assert capsys.readouterr().out == \
        f"wrote representation file to {rep_path}\n"
    assert cli.main(["repgroups", z2, "--action", "-1",
                     "--output", rg_path]) == 0
    capsys.readouterr()
    with open(rg_path, encoding="utf-8") as fh:
        witness = json.load(fh)["results"][0]["witness"]
    ext_path = write(tmp_path, "ext.json", witness)
    assert cli.main(["lift", "--rep", rep_path,
                     "--extension", ext_path]) == 0
    assert capsys.readouterr().out == (
        "lift: success\n"
        "detail: lift found: class [1] is in the transgression image\n"
        "alpha class: [1]\n"
        "transgression image: [[0], [1]]\n"
        "character: [1] (order 2)\n")


def test_regular_rep_stdout_json_when_no_output(z2, tmp_path, capsys):
    alpha = write(tmp_path, "alpha.json", ALPHA)
    assert cli.main(["regular-rep", z2, "--action", "-1",
                     "--cocycle", alpha]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["schema"] == "twisted-schur/1"
    assert body["modulus"] == 2
    assert body["maps"]["1"] == {"perm": [1, 0], "exps": [0, 1], "conj": True}


def test_heisenberg_text(capsys):
    assert cli.main(["heisenberg"]) == 0
    out = capsys.readouterr().out
    assert "closure order: 2592" in out
    assert "quotient order: 432" in out
    assert "scalar subgroup order: 6 (generator 1 + z3)" in out
    assert "preserves lambda1: C1 yes, C2 yes, C3 yes, C4 yes" in out


def test_selftest_passes(capsys):
    assert cli.main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("selftest: PASS")
    assert out.count(": PASS") >= 6


# ---------------------------------------------------------------------------
# JSON mode and determinism
# ---------------------------------------------------------------------------

def test_json_mode_matches_handler(z2, capsys):
    assert cli.main(["--format", "json", "multiplier", z2,
                     "--action", "-1"]) == 0
    out = capsys.readouterr().out
    payload = {"group": Z2_SPEC, "action": [-1]}
    assert out == dump_json(handle_multiplier(payload))
    assert out.endswith("\n")
    assert json.loads(out)["invariants"] == [2]


def test_repeat_runs_byte_identical(z2, capsys):
    outs = []
    for _ in range(2):
        assert cli.main(["--format", "json", "repgroups", z2,
                         "--action", "-1"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_malformed_json_file_exits_2(tmp_path, capsys):
    broken = write(tmp_path, "broken.json", "{not json")
    assert cli.main(["multiplier", broken, "--action", "-1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_action_length_mismatch_exits_2(z2, capsys):
    assert cli.main(["multiplier", z2, "--action", "1,1,1"]) == 2
    assert "matches neither" in capsys.readouterr().err


def test_bad_coeff_flag_exits_2(z2, capsys):
    assert cli.main(["cohomology", z2, "--degree", "2",
                     "--coeff", "rational"]) == 2
    capsys.readouterr()
    assert cli.main(["cohomology", z2, "--degree", "2",
                     "--coeff", "sign"]) == 2
    assert "needs --action" in capsys.readouterr().err


def test_non_cocycle_exits_4(z2, tmp_path, capsys):
    bad = write(tmp_path, "badalpha.json", BAD_ALPHA)
    assert cli.main(["regular-rep", z2, "--action", "-1",
                     "--cocycle", bad]) == 4
    assert "not a twisted 2-cocycle" in capsys.readouterr().err


def test_budget_exits_3(z2, capsys):
    assert cli.main(["--max-group-order", "1",
                     "multiplier", z2, "--action", "-1"]) == 3
    assert "error:" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# server mode: a thin client over HTTP with identical bytes
# ---------------------------------------------------------------------------

@pytest.fixture()
def fake_server(monkeypatch):
    import httpx

    from twisted_schur.service import create_app

    transport = httpx.ASGITransport(app=create_app())
    client = httpx.Client(transport=transport, base_url="http://testserver")
    monkeypatch.setattr(
        httpx, "post", lambda url, json=None, timeout=None:
        client.post(url, json=json))
    monkeypatch.setattr(
        httpx, "get", lambda url, timeout=None: client.get(url))
    yield "http://testserver"
    client.close()


def test_server_mode_byte_identical(z2, fake_server, capsys):
    local = []
    remote = []
    for args, sink in ((["--format", "json", "multiplier", z2,
                         "--action", "-1"], local),
                       (["--format", "json", "repgroups", z2,
                         "--action", "-1"], local),
                       (["--format", "json", "--server", fake_server,
                         "multiplier", z2, "--action", "-1"], remote),
                       (["--format", "json", "--server", fake_server,
                         "repgroups", z2, "--action", "-1"], remote)):
        assert cli.main(args) == 0
        sink.append(capsys.readouterr().out)
    assert local == remote


def test_server_mode_error_exit_codes(z2, tmp_path, fake_server, capsys):
    bad = write(tmp_path, "badalpha.json", BAD_ALPHA)
    assert cli.main(["--server", fake_server, "regular-rep", z2,
                     "--action", "-1", "--cocycle", bad]) == 4
    assert "not a twisted 2-cocycle" in capsys.readouterr().err
    empty_group = write(tmp_path, "empty.json", {})
    assert cli.main(["--server", fake_server, "multiplier", empty_group,
                     "--action", "-1"]) == 2
    capsys.readouterr()


def test_server_unreachable_exits_1(z2, capsys):
    assert cli.main(["--server", "http://127.0.0.1:9", "multiplier", z2,
                     "--action", "-1"]) == 1
    assert "cannot reach" in capsys.readouterr().err

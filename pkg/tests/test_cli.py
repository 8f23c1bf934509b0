import io
import json
from pathlib import Path

import pytest

from jkforge.cli import main, runner
from jkforge.cli.demos import DEMOS
from jkforge.cli.scenario import parse
from jkforge.exactcore.errors import ParseError

SCEN = Path(__file__).resolve().parent.parent / "scenarios"


def cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write(tmp_path, text, name="s.jk"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# parsing and binding --------------------------------------------------------------


@pytest.mark.parametrize("text,line,col", [
    ("let S = simplex k 1\nlet d = face T 0\n", 2, 14),
    ("let S = simplex k one\n", 1, 19),
    ("let S = simplex k 1\nassert hom S\n", 2, 12),
    ("let S = frobnicate k\n", 1, 9),
    ("let S = simplex k 1 n=2\n", 1, 19),
    ("let S = simplex k\n", 1, 9),
])
def test_binding_errors_carry_line_and_column(text, line, col):
    with pytest.raises(ParseError) as e:
        runner.bind(parse(text))
    assert (e.value.line, e.value.column) == (line, col)


def test_parse_error_exit_code(capsys):
    code, out = cli("run", str(SCEN / "bad_reference.jk"))
    assert code == 2 and out == ""
    assert "unknown name 'T' (line 3, column 14)" in capsys.readouterr().err


def test_unknown_demo_and_bad_cap_are_input_errors():
    assert cli("demo", "nope")[0] == 2
    assert cli("demo", "simplicial", "--cap", "0")[0] == 2


# running ---------------------------------------------------------------------------


def test_face_mismatch_reports_the_witness():
    code, out = cli("run", str(SCEN / "face_mismatch.jk"))
    assert code == 1
    assert "witness: t: pull1 -> 1*e vs 0" in out
    assert out.rstrip().endswith("result: FAIL at assertion 2")


@pytest.mark.parametrize("name", ["loop_sections.jk", "cube_faces.jk"])
def test_sample_scenarios_pass(name):
    code, out = cli("run", str(SCEN / name))
    assert code == 0, out
    assert out.rstrip().endswith("result: PASS")


def test_time_limit_exits_3(monkeypatch):
    monkeypatch.setenv("JKFORGE_LIMIT_SECONDS", "0.01")
    assert cli("demo", "excision")[0] == 3


def test_failing_construction_reports_the_step(tmp_path):
    p = write(tmp_path, "let c = corner k 3 2\nassert hom c\n")
    code, out = cli("run", p)
    assert code == 1
    assert "result: FAIL at step c" in out


def test_machine_and_text_reports_agree():
    code, text = cli("run", str(SCEN / "face_mismatch.jk"))
    code2, machine = cli("run", str(SCEN / "face_mismatch.jk"), "--report", "machine")
    data = json.loads(machine)
    assert code == code2 == 1
    assert data["result"] == "FAIL" and data["failed_assertion"] == 2
    lines = [ln for ln in text.splitlines() if ln.strip().startswith("[")]
    assert len(lines) == len(data["assertions"])
    for ln, a in zip(lines, data["assertions"]):
        assert ("PASS" in ln) == a["pass"]
        assert a["assertion"] in ln
    assert "seconds" not in data


def test_timing_only_on_request():
    assert "time:" not in cli("demo", "simplicial")[1]
    assert "time:" in cli("demo", "simplicial", "--timing")[1]


def test_ring_override_is_reported():
    code, out = cli("run", str(SCEN / "loop_sections.jk"), "--ring", "Fp:7")
    assert code == 0
    assert out.splitlines()[0].startswith("scenario loop-sections (ring F")


def test_lossy_notes_are_listed_once_per_algebra(tmp_path):
    p = write(tmp_path, "let S = simplex k 1\nlet T = simplex k 1\nassert hom T\n")
    out = cli("run", p)[1]
    notes = [ln for ln in out.splitlines() if "lossy:" in ln]
    assert len(notes) == len(set(notes))


# certificates -------------------------------------------------------------------------


def test_certificate_round_trip_and_tampering(tmp_path):
    cert = tmp_path / "c.json"
    code, _ = cli("run", str(SCEN / "cube_faces.jk"), "--certificate", str(cert))
    assert code == 0
    code, out = cli("verify", str(cert))
    assert code == 0 and out.rstrip().endswith("result: PASS")
    data = json.loads(cert.read_text())
    assert {c["claim"] for c in data["claims"]} >= {"homotopic"}
    # break one link of the first homotopy claim
    claim = next(c for c in data["claims"] if c["claim"] == "homotopic")
    pairs = claim["links"][0]["images"]
    label, vec = next(p for p in pairs if p[1])
    vec.clear()
    cert.write_text(json.dumps(data))
    code, out = cli("verify", str(cert))
    assert code == 1 and out.rstrip().endswith("result: FAIL")
    # a structurally broken certificate is an input error
    pairs[0] = []
    cert.write_text(json.dumps(data))
    assert cli("verify", str(cert))[0] == 2


def test_verify_rejects_non_certificates(tmp_path):
    p = write(tmp_path, "{\"kind\": \"other\"}", "x.json")
    assert cli("verify", p)[0] == 2
    p = write(tmp_path, "not json", "y.json")
    assert cli("verify", p)[0] == 2


# listings ------------------------------------------------------------------------------


def test_list_demos_and_ops():
    code, out = cli("list-demos")
    assert code == 0
    assert [ln.split()[0] for ln in out.splitlines()] == sorted(DEMOS)
    code, out = cli("ops")
    assert code == 0
    for word in ("simplex", "classifying", "homotopic", "excision"):
        assert word in out


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_every_demo_passes(name):
    code, out = cli("demo", name)
    assert code == 0, out
